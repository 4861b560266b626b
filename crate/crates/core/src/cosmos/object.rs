//! Objects of the base category: finite sets and finite categories.
//!
//! Both instances share one representation. A finite set is stored as a
//! discrete category whose morphisms are implicit identities, so every
//! algorithm can be phrased in terms of *cells* (objects and morphisms).

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Display label of an element, object or morphism.
pub type Label = Arc<str>;

/// The two shipped base categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cosmos {
    /// Finite sets and functions.
    FinSet,
    /// Finite categories and functors.
    FinCat,
}

impl Cosmos {
    /// The tag used in instance documents.
    pub fn tag(self) -> &'static str {
        match self {
            Cosmos::FinSet => "finset",
            Cosmos::FinCat => "fincat",
        }
    }

    /// Parses a document tag.
    pub fn from_tag(tag: &str) -> Option<Cosmos> {
        match tag {
            "finset" => Some(Cosmos::FinSet),
            "fincat" => Some(Cosmos::FinCat),
            _ => None,
        }
    }

    /// The terminal object `∗`.
    pub fn terminal(self) -> Obj {
        match self {
            Cosmos::FinSet => Obj::set_unchecked(vec!["*".into()]),
            Cosmos::FinCat => Obj::discrete_cat(vec!["*".into()]),
        }
    }

    /// The initial (empty) object.
    pub fn initial(self) -> Obj {
        match self {
            Cosmos::FinSet => Obj::set_unchecked(Vec::new()),
            Cosmos::FinCat => Obj::discrete_cat(Vec::new()),
        }
    }

    /// A discrete object on the given labels (a plain set, or a discrete category).
    pub fn discrete(self, labels: Vec<Label>) -> Obj {
        match self {
            Cosmos::FinSet => Obj::set_unchecked(labels),
            Cosmos::FinCat => Obj::discrete_cat(labels),
        }
    }

    /// The shipped conservative family: the point for sets, the free-living
    /// arrow for categories.
    pub fn generators(self) -> ConservativeFamily {
        let probes = match self {
            Cosmos::FinSet => vec![self.terminal()],
            Cosmos::FinCat => vec![Obj::walking_arrow()],
        };
        ConservativeFamily {
            cosmos: self,
            probes,
        }
    }
}

/// A family of probe objects detecting isomorphisms.
#[derive(Clone, Debug)]
pub struct ConservativeFamily {
    /// The cosmos the probes live in.
    pub cosmos: Cosmos,
    /// The probes themselves.
    pub probes: Vec<Obj>,
}

/// Explicitly tabulated finite category.
#[derive(Debug)]
pub(crate) struct CatData {
    pub(crate) objs: Vec<Label>,
    pub(crate) mors: Vec<Label>,
    pub(crate) src: Vec<u32>,
    pub(crate) tgt: Vec<u32>,
    pub(crate) ident: Vec<u32>,
    pub(crate) comp: HashMap<(u32, u32), u32>,
}

#[derive(Debug)]
pub(crate) enum Repr {
    /// A finite set; morphisms are the identities, indexed like the elements.
    Set(Vec<Label>),
    /// A finite category given by tables.
    Cat(CatData),
    /// The canonical finite product of the factors, never tabulated.
    /// Cells are indexed in mixed radix with the first factor most significant.
    Product(Vec<Obj>),
}

#[derive(Debug)]
pub(crate) struct ObjData {
    pub(crate) cosmos: Cosmos,
    pub(crate) repr: Repr,
    n_objs: usize,
    n_mors: usize,
    out: OnceLock<Vec<Vec<u32>>>,
    homs: OnceLock<HashMap<(u32, u32), Vec<u32>>>,
}

/// An object of the base category. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Obj(pub(crate) Arc<ObjData>);

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Obj({}, {} objects, {} morphisms)",
            self.cosmos().tag(),
            self.n_objs(),
            self.n_mors()
        )
    }
}

impl Obj {
    fn from_repr(cosmos: Cosmos, repr: Repr) -> Obj {
        let (n_objs, n_mors) = match &repr {
            Repr::Set(e) => (e.len(), e.len()),
            Repr::Cat(c) => (c.objs.len(), c.mors.len()),
            Repr::Product(fs) => (
                fs.iter().fold(1usize, |n, f| n.saturating_mul(f.n_objs())),
                fs.iter().fold(1usize, |n, f| n.saturating_mul(f.n_mors())),
            ),
        };
        Obj(Arc::new(ObjData {
            cosmos,
            repr,
            n_objs,
            n_mors,
            out: OnceLock::new(),
            homs: OnceLock::new(),
        }))
    }

    /// A finite set with the given element labels, which must be distinct.
    pub fn set(labels: Vec<Label>) -> Result<Obj> {
        check_distinct(&labels, "element")?;
        Ok(Obj::set_unchecked(labels))
    }

    pub(crate) fn set_unchecked(labels: Vec<Label>) -> Obj {
        Obj::from_repr(Cosmos::FinSet, Repr::Set(labels))
    }

    /// A discrete finite category; identities are labelled `1_x`.
    pub fn discrete_cat(labels: Vec<Label>) -> Obj {
        let n = labels.len() as u32;
        let mors = labels
            .iter()
            .map(|l| Label::from(format!("1_{l}")))
            .collect();
        let comp = (0..n).map(|i| ((i, i), i)).collect();
        Obj::from_repr(
            Cosmos::FinCat,
            Repr::Cat(CatData {
                objs: labels,
                mors,
                src: (0..n).collect(),
                tgt: (0..n).collect(),
                ident: (0..n).collect(),
                comp,
            }),
        )
    }

    /// The free-living arrow `0 → 1`.
    pub fn walking_arrow() -> Obj {
        let mut comp = HashMap::new();
        comp.insert((0, 0), 0);
        comp.insert((1, 1), 1);
        comp.insert((0, 2), 2);
        comp.insert((2, 1), 2);
        Obj::from_repr(
            Cosmos::FinCat,
            Repr::Cat(CatData {
                objs: vec!["0".into(), "1".into()],
                mors: vec!["1_0".into(), "1_1".into(), "u".into()],
                src: vec![0, 1, 0],
                tgt: vec![0, 1, 1],
                ident: vec![0, 1],
                comp,
            }),
        )
    }

    /// A finite category from tables, validated exhaustively: distinct labels,
    /// well-typed identities, total composition on composable pairs,
    /// unitality and associativity.
    pub fn category(
        objs: Vec<Label>,
        mors: Vec<(Label, u32, u32)>,
        ident: Vec<u32>,
        comp: HashMap<(u32, u32), u32>,
    ) -> Result<Obj> {
        check_distinct(&objs, "object")?;
        let labels: Vec<Label> = mors.iter().map(|m| m.0.clone()).collect();
        check_distinct(&labels, "morphism")?;
        let n = objs.len() as u32;
        let src: Vec<u32> = mors.iter().map(|m| m.1).collect();
        let tgt: Vec<u32> = mors.iter().map(|m| m.2).collect();
        let nm = labels.len() as u32;
        if src.iter().chain(tgt.iter()).any(|&o| o >= n) {
            return Err(Error::Validation("morphism endpoint out of range".into()));
        }
        if ident.len() != objs.len() {
            return Err(Error::Validation("identity table is not total".into()));
        }
        for (o, &m) in ident.iter().enumerate() {
            if m >= nm || src[m as usize] != o as u32 || tgt[m as usize] != o as u32 {
                return Err(Error::Validation(format!(
                    "identity of `{}` is not an endomorphism of it",
                    objs[o]
                )));
            }
        }
        let data = CatData {
            objs,
            mors: labels,
            src,
            tgt,
            ident,
            comp,
        };
        validate_cat(&data)?;
        Ok(Obj::from_repr(Cosmos::FinCat, Repr::Cat(data)))
    }

    pub(crate) fn cat_unchecked(data: CatData) -> Obj {
        Obj::from_repr(Cosmos::FinCat, Repr::Cat(data))
    }

    /// The canonical product of a non-empty list of objects of one cosmos.
    pub(crate) fn product_of(factors: Vec<Obj>) -> Obj {
        debug_assert!(!factors.is_empty());
        let cosmos = factors[0].cosmos();
        debug_assert!(factors.iter().all(|f| f.cosmos() == cosmos));
        Obj::from_repr(cosmos, Repr::Product(factors))
    }

    /// Which base category this object lives in.
    pub fn cosmos(&self) -> Cosmos {
        self.0.cosmos
    }

    /// Number of objects (elements, for a set).
    pub fn n_objs(&self) -> usize {
        self.0.n_objs
    }

    /// Number of morphisms (equal to the element count, for a set).
    pub fn n_mors(&self) -> usize {
        self.0.n_mors
    }

    /// True when the object has no elements/objects.
    pub fn is_empty(&self) -> bool {
        self.0.n_objs == 0
    }

    /// True for finite sets and for categories whose only morphisms are identities.
    pub fn is_discrete(&self) -> bool {
        self.n_mors() == self.n_objs()
    }

    /// Factors, when this object is a canonical product.
    pub fn factors(&self) -> Option<&[Obj]> {
        match &self.0.repr {
            Repr::Product(fs) => Some(fs),
            _ => None,
        }
    }

    /// Label of object `i`.
    pub fn obj_label(&self, i: u32) -> Cow<'_, str> {
        match &self.0.repr {
            Repr::Set(e) => Cow::Borrowed(&e[i as usize]),
            Repr::Cat(c) => Cow::Borrowed(&c.objs[i as usize]),
            Repr::Product(fs) => {
                let parts = split_index(fs, i, |f| f.n_objs());
                let inner: Vec<String> = fs
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.obj_label(p).into_owned())
                    .collect();
                Cow::Owned(format!("({})", inner.join(",")))
            }
        }
    }

    /// Label of morphism `m`.
    pub fn mor_label(&self, m: u32) -> Cow<'_, str> {
        match &self.0.repr {
            Repr::Set(e) => Cow::Borrowed(&e[m as usize]),
            Repr::Cat(c) => Cow::Borrowed(&c.mors[m as usize]),
            Repr::Product(fs) => {
                let parts = split_index(fs, m, |f| f.n_mors());
                let inner: Vec<String> = fs
                    .iter()
                    .zip(parts)
                    .map(|(f, p)| f.mor_label(p).into_owned())
                    .collect();
                Cow::Owned(format!("({})", inner.join(",")))
            }
        }
    }

    /// Index of the object with the given label.
    pub fn find_obj(&self, label: &str) -> Option<u32> {
        (0..self.n_objs() as u32).find(|&i| self.obj_label(i) == label)
    }

    /// Index of the morphism with the given label.
    pub fn find_mor(&self, label: &str) -> Option<u32> {
        (0..self.n_mors() as u32).find(|&i| self.mor_label(i) == label)
    }

    /// Source object of morphism `m`.
    pub fn src(&self, m: u32) -> u32 {
        match &self.0.repr {
            Repr::Set(_) => m,
            Repr::Cat(c) => c.src[m as usize],
            Repr::Product(fs) => {
                let parts = split_index(fs, m, |f| f.n_mors());
                let objs: Vec<u32> = fs.iter().zip(parts).map(|(f, p)| f.src(p)).collect();
                join_index(fs, &objs, |f| f.n_objs())
            }
        }
    }

    /// Target object of morphism `m`.
    pub fn tgt(&self, m: u32) -> u32 {
        match &self.0.repr {
            Repr::Set(_) => m,
            Repr::Cat(c) => c.tgt[m as usize],
            Repr::Product(fs) => {
                let parts = split_index(fs, m, |f| f.n_mors());
                let objs: Vec<u32> = fs.iter().zip(parts).map(|(f, p)| f.tgt(p)).collect();
                join_index(fs, &objs, |f| f.n_objs())
            }
        }
    }

    /// Identity morphism on object `o`.
    pub fn ident(&self, o: u32) -> u32 {
        match &self.0.repr {
            Repr::Set(_) => o,
            Repr::Cat(c) => c.ident[o as usize],
            Repr::Product(fs) => {
                let parts = split_index(fs, o, |f| f.n_objs());
                let ms: Vec<u32> = fs.iter().zip(parts).map(|(f, p)| f.ident(p)).collect();
                join_index(fs, &ms, |f| f.n_mors())
            }
        }
    }

    /// Diagrammatic composite `f ; g` (first `f`, then `g`), if composable.
    pub fn compose(&self, f: u32, g: u32) -> Option<u32> {
        match &self.0.repr {
            Repr::Set(_) => (f == g).then_some(f),
            Repr::Cat(c) => c.comp.get(&(f, g)).copied(),
            Repr::Product(fs) => {
                let a = split_index(fs, f, |x| x.n_mors());
                let b = split_index(fs, g, |x| x.n_mors());
                let mut parts = Vec::with_capacity(fs.len());
                for ((x, p), q) in fs.iter().zip(a).zip(b) {
                    parts.push(x.compose(p, q)?);
                }
                Some(join_index(fs, &parts, |x| x.n_mors()))
            }
        }
    }

    /// True when `m` is the identity on its source.
    pub fn is_identity(&self, m: u32) -> bool {
        self.ident(self.src(m)) == m
    }

    /// Morphisms with source `o`, in index order.
    pub fn out(&self, o: u32) -> &[u32] {
        let table = self.0.out.get_or_init(|| {
            let mut t = vec![Vec::new(); self.n_objs()];
            for m in 0..self.n_mors() as u32 {
                t[self.src(m) as usize].push(m);
            }
            t
        });
        &table[o as usize]
    }

    /// Morphisms `a → b`, in index order.
    pub fn hom(&self, a: u32, b: u32) -> &[u32] {
        let table = self.0.homs.get_or_init(|| {
            let mut t: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
            for m in 0..self.n_mors() as u32 {
                t.entry((self.src(m), self.tgt(m))).or_default().push(m);
            }
            t
        });
        table.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Splits a product object index into its factor indices.
    pub fn split_obj(&self, i: u32) -> Vec<u32> {
        match &self.0.repr {
            Repr::Product(fs) => split_index(fs, i, |f| f.n_objs()),
            _ => vec![i],
        }
    }

    /// Splits a product morphism index into its factor indices.
    pub fn split_mor(&self, m: u32) -> Vec<u32> {
        match &self.0.repr {
            Repr::Product(fs) => split_index(fs, m, |f| f.n_mors()),
            _ => vec![m],
        }
    }

    /// Joins factor object indices into a product object index.
    pub fn join_obj(&self, parts: &[u32]) -> u32 {
        match &self.0.repr {
            Repr::Product(fs) => join_index(fs, parts, |f| f.n_objs()),
            _ => parts[0],
        }
    }

    /// Joins factor morphism indices into a product morphism index.
    pub fn join_mor(&self, parts: &[u32]) -> u32 {
        match &self.0.repr {
            Repr::Product(fs) => join_index(fs, parts, |f| f.n_mors()),
            _ => parts[0],
        }
    }

    /// Iterates over all composable pairs `(f, g, f;g)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.n_mors() as u32).flat_map(move |f| {
            self.out(self.tgt(f)).iter().map(move |&g| {
                let h = self
                    .compose(f, g)
                    .expect("composition is total on composable pairs");
                (f, g, h)
            })
        })
    }

    /// Pointer identity, a cheap sufficient test for equality.
    pub fn same(&self, other: &Obj) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Re-validates the category axioms of an arbitrary object.
    pub fn validate(&self) -> Result<()> {
        if let Repr::Cat(c) = &self.0.repr {
            validate_cat(c)?;
        }
        Ok(())
    }
}

fn split_index(fs: &[Obj], mut i: u32, size: impl Fn(&Obj) -> usize) -> Vec<u32> {
    let mut parts = vec![0u32; fs.len()];
    for (k, f) in fs.iter().enumerate().rev() {
        let n = size(f) as u32;
        parts[k] = i % n;
        i /= n;
    }
    parts
}

fn join_index(fs: &[Obj], parts: &[u32], size: impl Fn(&Obj) -> usize) -> u32 {
    let mut i = 0u32;
    for (f, &p) in fs.iter().zip(parts) {
        i = i * size(f) as u32 + p;
    }
    i
}

fn check_distinct(labels: &[Label], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_ref()) {
            return Err(Error::Validation(format!("duplicate {what} label `{l}`")));
        }
    }
    Ok(())
}

fn validate_cat(c: &CatData) -> Result<()> {
    let nm = c.mors.len() as u32;
    let mut out: Vec<Vec<u32>> = vec![Vec::new(); c.objs.len()];
    for m in 0..nm {
        out[c.src[m as usize] as usize].push(m);
    }
    for f in 0..nm {
        for &g in &out[c.tgt[f as usize] as usize] {
            let h = *c.comp.get(&(f, g)).ok_or_else(|| {
                Error::Validation(format!(
                    "composite `{};{}` is missing",
                    c.mors[f as usize], c.mors[g as usize]
                ))
            })?;
            if h >= nm
                || c.src[h as usize] != c.src[f as usize]
                || c.tgt[h as usize] != c.tgt[g as usize]
            {
                return Err(Error::Validation(format!(
                    "composite `{};{}` has the wrong boundary",
                    c.mors[f as usize], c.mors[g as usize]
                )));
            }
        }
    }
    for (&(f, g), _) in c.comp.iter() {
        if f >= nm || g >= nm || c.tgt[f as usize] != c.src[g as usize] {
            return Err(Error::Validation(
                "composition defined on a non-composable pair".into(),
            ));
        }
    }
    for f in 0..nm {
        let (s, t) = (c.src[f as usize], c.tgt[f as usize]);
        if c.comp[&(c.ident[s as usize], f)] != f || c.comp[&(f, c.ident[t as usize])] != f {
            return Err(Error::Validation(format!(
                "identities are not neutral for `{}`",
                c.mors[f as usize]
            )));
        }
    }
    for f in 0..nm {
        for &g in &out[c.tgt[f as usize] as usize] {
            let fg = c.comp[&(f, g)];
            for &h in &out[c.tgt[g as usize] as usize] {
                if c.comp[&(fg, h)] != c.comp[&(f, c.comp[&(g, h)])] {
                    return Err(Error::Validation(format!(
                        "composition is not associative on `{}`, `{}`, `{}`",
                        c.mors[f as usize], c.mors[g as usize], c.mors[h as usize]
                    )));
                }
            }
        }
    }
    Ok(())
}

impl PartialEq for Obj {
    fn eq(&self, other: &Obj) -> bool {
        if self.same(other) {
            return true;
        }
        if self.cosmos() != other.cosmos()
            || self.n_objs() != other.n_objs()
            || self.n_mors() != other.n_mors()
        {
            return false;
        }
        match (&self.0.repr, &other.0.repr) {
            (Repr::Product(a), Repr::Product(b)) if a.len() == b.len() => {
                return a.iter().zip(b).all(|(x, y)| x == y)
            }
            (Repr::Set(a), Repr::Set(b)) => return a == b,
            _ => {}
        }
        let n = self.n_objs() as u32;
        let nm = self.n_mors() as u32;
        (0..n).all(|i| self.obj_label(i) == other.obj_label(i) && self.ident(i) == other.ident(i))
            && (0..nm).all(|m| {
                self.mor_label(m) == other.mor_label(m)
                    && self.src(m) == other.src(m)
                    && self.tgt(m) == other.tgt(m)
            })
            && self
                .composable_pairs()
                .all(|(f, g, h)| other.compose(f, g) == Some(h))
    }
}

impl Eq for Obj {}

/// Incremental builder for explicit objects. For finite sets the morphism
/// data is ignored and identities are implicit.
pub(crate) struct Builder {
    cosmos: Cosmos,
    objs: Vec<Label>,
    mors: Vec<Label>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    ident: Vec<u32>,
    comp: HashMap<(u32, u32), u32>,
}

impl Builder {
    pub(crate) fn new(cosmos: Cosmos) -> Builder {
        Builder {
            cosmos,
            objs: Vec::new(),
            mors: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            ident: Vec::new(),
            comp: HashMap::new(),
        }
    }

    pub(crate) fn obj(&mut self, label: impl Into<Label>) -> u32 {
        self.objs.push(label.into());
        (self.objs.len() - 1) as u32
    }

    pub(crate) fn mor(&mut self, label: impl Into<Label>, src: u32, tgt: u32) -> u32 {
        self.mors.push(label.into());
        self.src.push(src);
        self.tgt.push(tgt);
        (self.mors.len() - 1) as u32
    }

    pub(crate) fn set_ident(&mut self, ident: Vec<u32>) {
        self.ident = ident;
    }

    pub(crate) fn set_comp(&mut self, f: u32, g: u32, h: u32) {
        self.comp.insert((f, g), h);
    }

    pub(crate) fn finish(self) -> Obj {
        match self.cosmos {
            Cosmos::FinSet => Obj::set_unchecked(self.objs),
            Cosmos::FinCat => Obj::cat_unchecked(CatData {
                objs: self.objs,
                mors: self.mors,
                src: self.src,
                tgt: self.tgt,
                ident: self.ident,
                comp: self.comp,
            }),
        }
    }
}
