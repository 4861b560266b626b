//! Finite `V`-enriched categories.

use std::sync::Arc;

use crate::cosmos::{product, Cosmos, Label, Map, Obj};
use crate::error::{Error, Result};
use crate::report::Report;

struct Inner {
    cosmos: Cosmos,
    objects: Vec<Label>,
    hom: Vec<Obj>,
    comp: Vec<Map>,
    ident: Vec<Map>,
}

/// A finite `V`-category: hom-objects `C(A,B)`, composition maps
/// `c_{A,B,C} : C(A,B) × C(B,C) → C(A,C)` and identities `i_A : ∗ → C(A,A)`.
///
/// Cheap to clone.
#[derive(Clone)]
pub struct VCategory(Arc<Inner>);

impl std::fmt::Debug for VCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "VCategory({}, {:?})",
            self.cosmos().tag(),
            self.0.objects
        )
    }
}

impl VCategory {
    /// Assembles a `V`-category from its structure maps. Only the shapes of
    /// the maps are checked here; the axioms are checked by [`VCategory::validate`].
    pub fn new(
        cosmos: Cosmos,
        objects: Vec<Label>,
        hom: Vec<Obj>,
        comp: Vec<Map>,
        ident: Vec<Map>,
    ) -> Result<VCategory> {
        let n = objects.len();
        if hom.len() != n * n || comp.len() != n * n * n || ident.len() != n {
            return Err(Error::Validation(
                "structure tables have the wrong size".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        if !objects.iter().all(|o| seen.insert(o.clone())) {
            return Err(Error::Validation("duplicate object label".into()));
        }
        let t = cosmos.terminal();
        for a in 0..n {
            if ident[a].dom() != &t || ident[a].cod() != &hom[a * n + a] {
                return Err(Error::Validation(format!(
                    "identity of `{}` has the wrong type",
                    objects[a]
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    let m = &comp[(a * n + b) * n + c];
                    let dom = product(&hom[a * n + b], &hom[b * n + c]).obj;
                    if m.dom() != &dom || m.cod() != &hom[a * n + c] {
                        return Err(Error::Validation(format!(
                            "composition `{},{},{}` has the wrong type",
                            objects[a], objects[b], objects[c]
                        )));
                    }
                }
            }
        }
        if hom.iter().any(|h| h.cosmos() != cosmos) {
            return Err(Error::Validation("hom-object in the wrong cosmos".into()));
        }
        Ok(VCategory(Arc::new(Inner {
            cosmos,
            objects,
            hom,
            comp,
            ident,
        })))
    }

    /// Builds a `V`-category from cell-level composition and identities.
    /// `comp_mor(a, b, c, f, g)` composes morphism cells `f ∈ C(a,b)`,
    /// `g ∈ C(b,c)`; the object part is derived from it through identities.
    pub fn from_cells(
        cosmos: Cosmos,
        objects: Vec<Label>,
        hom: Vec<Obj>,
        comp_mor: impl Fn(usize, usize, usize, u32, u32) -> u32,
        ident_obj: impl Fn(usize) -> u32,
    ) -> Result<VCategory> {
        let n = objects.len();
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = (&hom[a * n + b], &hom[b * n + c], &hom[a * n + c]);
                    let dom = product(x, y).obj;
                    let d = dom.clone();
                    let zz = z.clone();
                    let f = &comp_mor;
                    let m = Map::from_fns(
                        dom,
                        z.clone(),
                        |i| {
                            let p = d.split_obj(i);
                            zz.src(f(a, b, c, x.ident(p[0]), y.ident(p[1])))
                        },
                        |m| {
                            let p = d.split_mor(m);
                            f(a, b, c, p[0], p[1])
                        },
                    );
                    comp.push(m);
                }
            }
        }
        let ident = (0..n)
            .map(|a| Map::point(&hom[a * n + a], ident_obj(a)))
            .collect();
        VCategory::new(cosmos, objects, hom, comp, ident)
    }

    /// An ordinary finite category, viewed as a locally discrete `V`-category:
    /// hom-objects are the (discrete) sets of morphisms.
    pub fn from_category(cosmos: Cosmos, cat: &Obj) -> Result<VCategory> {
        if cat.cosmos() != Cosmos::FinCat {
            return Err(Error::Validation("expected a finite category".into()));
        }
        let n = cat.n_objs();
        let objects: Vec<Label> = (0..n as u32)
            .map(|i| Label::from(cat.obj_label(i).as_ref()))
            .collect();
        let mut hom = Vec::with_capacity(n * n);
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let labels = cat
                    .hom(a, b)
                    .iter()
                    .map(|&m| Label::from(cat.mor_label(m).as_ref()))
                    .collect();
                hom.push(cosmos.discrete(labels));
            }
        }
        let pos =
            |a: u32, b: u32, m: u32| cat.hom(a, b).iter().position(|&k| k == m).unwrap() as u32;
        VCategory::from_cells(
            cosmos,
            objects,
            hom,
            |a, b, c, f, g| {
                let (a, b, c) = (a as u32, b as u32, c as u32);
                let h = cat
                    .compose(cat.hom(a, b)[f as usize], cat.hom(b, c)[g as usize])
                    .unwrap();
                pos(a, c, h)
            },
            |a| pos(a as u32, a as u32, cat.ident(a as u32)),
        )
    }

    /// The cosmos the homs live in.
    pub fn cosmos(&self) -> Cosmos {
        self.0.cosmos
    }

    /// Number of objects.
    pub fn len(&self) -> usize {
        self.0.objects.len()
    }

    /// True when there are no objects.
    pub fn is_empty(&self) -> bool {
        self.0.objects.is_empty()
    }

    /// Object labels.
    pub fn objects(&self) -> &[Label] {
        &self.0.objects
    }

    /// Index of an object label.
    pub fn find(&self, label: &str) -> Result<usize> {
        self.0
            .objects
            .iter()
            .position(|o| o.as_ref() == label)
            .ok_or_else(|| Error::Lookup(label.to_string()))
    }

    /// The hom-object `C(a, b)`.
    pub fn hom(&self, a: usize, b: usize) -> &Obj {
        &self.0.hom[a * self.len() + b]
    }

    /// The composition map `c_{a,b,c}`.
    pub fn comp(&self, a: usize, b: usize, c: usize) -> &Map {
        let n = self.len();
        &self.0.comp[(a * n + b) * n + c]
    }

    /// The identity `i_a : ∗ → C(a, a)`.
    pub fn ident(&self, a: usize) -> &Map {
        &self.0.ident[a]
    }

    /// The object of `C(a, a)` picked by `i_a`.
    pub fn ident_obj(&self, a: usize) -> u32 {
        self.0.ident[a].on_obj(0)
    }

    /// The identity cell of `i_a` at morphism level.
    pub fn ident_mor(&self, a: usize) -> u32 {
        self.hom(a, a).ident(self.ident_obj(a))
    }

    /// Composite of object cells `f ∈ C(a,b)` and `g ∈ C(b,c)`.
    pub fn comp_obj(&self, a: usize, b: usize, c: usize, f: u32, g: u32) -> u32 {
        let m = self.comp(a, b, c);
        m.on_obj(m.dom().join_obj(&[f, g]))
    }

    /// Composite of morphism cells `f ∈ C(a,b)` and `g ∈ C(b,c)`.
    pub fn comp_mor(&self, a: usize, b: usize, c: usize, f: u32, g: u32) -> u32 {
        let m = self.comp(a, b, c);
        m.on_mor(m.dom().join_mor(&[f, g]))
    }

    /// Checks the unit and associativity diagrams exhaustively. Every failing
    /// instance is reported with its witnessing cells.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let n = self.len();
        let lab = |a: usize| self.0.objects[a].as_ref();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if let Err(e) = self.comp(a, b, c).validate() {
                        r.fail(format!(
                            "composition ({},{},{}) is not a map: {e}",
                            lab(a),
                            lab(b),
                            lab(c)
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                for f in 0..h.n_mors() as u32 {
                    if self.comp_mor(a, a, b, self.ident_mor(a), f) != f {
                        r.fail(format!(
                            "left unit fails at ({},{}) on `{}`",
                            lab(a),
                            lab(b),
                            h.mor_label(f)
                        ));
                    }
                    if self.comp_mor(a, b, b, f, self.ident_mor(b)) != f {
                        r.fail(format!(
                            "right unit fails at ({},{}) on `{}`",
                            lab(a),
                            lab(b),
                            h.mor_label(f)
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (x, y, z) = (self.hom(a, b), self.hom(b, c), self.hom(c, d));
                        for f in 0..x.n_mors() as u32 {
                            for g in 0..y.n_mors() as u32 {
                                let fg = self.comp_mor(a, b, c, f, g);
                                for h in 0..z.n_mors() as u32 {
                                    let l = self.comp_mor(a, c, d, fg, h);
                                    let rr =
                                        self.comp_mor(a, b, d, f, self.comp_mor(b, c, d, g, h));
                                    if l != rr {
                                        r.fail(format!(
                                            "associativity fails at ({},{},{},{}) on `{}`, `{}`, `{}`",
                                            lab(a),
                                            lab(b),
                                            lab(c),
                                            lab(d),
                                            x.mor_label(f),
                                            y.mor_label(g),
                                            z.mor_label(h)
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// The opposite `V`-category: `C^op(a, b) = C(b, a)`, with composition
    /// reusing `c` after swapping the factors.
    pub fn opposite(&self) -> VCategory {
        let n = self.len();
        let mut hom = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                hom.push(self.hom(b, a).clone());
            }
        }
        VCategory::from_cells(
            self.cosmos(),
            self.0.objects.clone(),
            hom,
            |a, b, c, f, g| self.comp_mor(c, b, a, g, f),
            |a| self.ident_obj(a),
        )
        .expect("opposite of a well-typed V-category")
    }

    /// The unit `V`-category `𝟙`: one object with hom `∗`.
    pub fn unit(cosmos: Cosmos) -> VCategory {
        VCategory::from_cells(
            cosmos,
            vec!["0".into()],
            vec![cosmos.terminal()],
            |_, _, _, _, _| 0,
            |_| 0,
        )
        .expect("unit V-category")
    }

    /// The `V`-category `𝟚`: objects 0, 1 with `𝟚(1,0)` initial and the other homs `∗`.
    pub fn arrow(cosmos: Cosmos) -> VCategory {
        let t = cosmos.terminal();
        let hom = vec![t.clone(), t.clone(), cosmos.initial(), t];
        VCategory::from_cells(
            cosmos,
            vec!["0".into(), "1".into()],
            hom,
            |_, _, _, _, _| 0,
            |_| 0,
        )
        .expect("arrow V-category")
    }

    /// Relabels the objects along a permutation: object `k` of the result is
    /// object `perm[k]` of `self`, renamed to `labels[k]`.
    pub fn relabel(&self, perm: &[usize], labels: Vec<Label>) -> Result<VCategory> {
        let n = self.len();
        if perm.len() != n || labels.len() != n {
            return Err(Error::Validation("relabeling has the wrong size".into()));
        }
        let mut hom = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                hom.push(self.hom(perm[a], perm[b]).clone());
            }
        }
        VCategory::from_cells(
            self.cosmos(),
            labels,
            hom,
            |a, b, c, f, g| self.comp_mor(perm[a], perm[b], perm[c], f, g),
            |a| self.ident_obj(perm[a]),
        )
    }

    /// Pointer identity.
    pub fn same(&self, other: &VCategory) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for VCategory {
    fn eq(&self, other: &VCategory) -> bool {
        self.same(other)
            || (self.0.cosmos == other.0.cosmos
                && self.0.objects == other.0.objects
                && self.0.hom == other.0.hom
                && self.0.ident == other.0.ident
                && self.0.comp == other.0.comp)
    }
}

impl Eq for VCategory {}

/// Product of two `V`-categories: objects are pairs, homs are products.
pub fn product_vcat(c: &VCategory, d: &VCategory) -> Result<VCategory> {
    if c.cosmos() != d.cosmos() {
        return Err(Error::Validation(
            "product of V-categories over different cosmoses".into(),
        ));
    }
    let (n, m) = (c.len(), d.len());
    let mut objects = Vec::with_capacity(n * m);
    for a in c.objects() {
        for b in d.objects() {
            objects.push(Label::from(format!("({a},{b})")));
        }
    }
    let mut hom = Vec::with_capacity(n * m * n * m);
    for a in 0..n * m {
        for b in 0..n * m {
            hom.push(product(c.hom(a / m, b / m), d.hom(a % m, b % m)).obj);
        }
    }
    let hom2 = hom.clone();
    let nm = n * m;
    VCategory::from_cells(
        c.cosmos(),
        objects,
        hom,
        |a, b, e, f, g| {
            let (hf, hg, he) = (&hom2[a * nm + b], &hom2[b * nm + e], &hom2[a * nm + e]);
            let (pf, pg) = (hf.split_mor(f), hg.split_mor(g));
            he.join_mor(&[
                c.comp_mor(a / m, b / m, e / m, pf[0], pg[0]),
                d.comp_mor(a % m, b % m, e % m, pf[1], pg[1]),
            ])
        },
        |a| {
            let h = &hom2[a * nm + a];
            h.join_obj(&[c.ident_obj(a / m), d.ident_obj(a % m)])
        },
    )
}
