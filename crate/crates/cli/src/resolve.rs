//! Turns a parsed document into library values, resolving every reference
//! and running every validator.

use std::collections::{BTreeMap, HashMap};

use intcat_core::cosmos::{product_n, Cosmos, Label, Map, Obj};
use intcat_core::enriched::{
    constant_presheaf, hom_copresheaf, representable, CoVNat, VCategory, VCopresheaf, VFunctor,
    VNat, VPresheaf,
};
use intcat_core::grothendieck::{groth, GrothResult};
use intcat_core::internal::{internalize, InternalCategory, InternalFunctor, Internalization};
use intcat_core::limits::WeightedLimitProblem;

use crate::document::*;
use crate::error::CliError;

type Res<T> = Result<T, CliError>;

/// A presheaf of either variance.
#[derive(Clone, Debug)]
pub enum Presheaf {
    Contravariant(VPresheaf),
    Covariant(VCopresheaf),
}

/// A transformation of either variance.
#[derive(Clone, Debug)]
pub enum Transformation {
    Contravariant(VNat),
    Covariant(CoVNat),
}

/// An internal category with the construction it came from, when known.
#[derive(Clone, Debug)]
pub struct InternalEntry {
    pub cat: InternalCategory,
    pub internalization: Option<Internalization>,
    pub elements: Option<GrothResult>,
}

/// An internal functor with the internalization it lands in, when known.
#[derive(Clone, Debug)]
pub struct FunctorEntry {
    pub functor: InternalFunctor,
    pub base: Option<Internalization>,
}

/// A resolved problem.
#[derive(Clone, Debug)]
pub enum Problem {
    Representability {
        presheaf: VPresheaf,
        object: Option<usize>,
        element: Option<Map>,
    },
    WeightedLimit {
        weight: VCopresheaf,
        diagram: VFunctor,
        apex: usize,
        cone: Option<WeightedLimitProblem>,
    },
    Tensor {
        vcategory: VCategory,
        object: usize,
        by: Obj,
    },
    Terminal {
        internal: InternalCategory,
        object: u32,
    },
}

/// Every named entity of a document, resolved and validated.
#[derive(Clone, Debug)]
pub struct Instance {
    pub cosmos: Cosmos,
    pub objects: BTreeMap<String, Obj>,
    pub maps: BTreeMap<String, Map>,
    pub vcategories: BTreeMap<String, VCategory>,
    pub presheaves: BTreeMap<String, Presheaf>,
    pub vfunctors: BTreeMap<String, VFunctor>,
    pub vnats: BTreeMap<String, Transformation>,
    pub internal: BTreeMap<String, InternalEntry>,
    pub functors: BTreeMap<String, FunctorEntry>,
    pub problems: BTreeMap<String, Problem>,
}

/// Splits `key` at separators so that every part is one of `labels`.
fn split_key(key: &str, sep: char, parts: usize, labels: &[String]) -> Option<Vec<usize>> {
    fn go(rest: &str, sep: char, parts: usize, labels: &[String], out: &mut Vec<usize>) -> bool {
        if parts == 1 {
            if let Some(k) = labels.iter().position(|l| l == rest) {
                out.push(k);
                return true;
            }
            return false;
        }
        for (pos, ch) in rest.char_indices() {
            if ch != sep {
                continue;
            }
            if let Some(k) = labels.iter().position(|l| l == &rest[..pos]) {
                out.push(k);
                if go(&rest[pos + ch.len_utf8()..], sep, parts - 1, labels, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    let mut out = Vec::with_capacity(parts);
    go(key, sep, parts, labels, &mut out).then_some(out)
}

/// Reads a table keyed by tuples of labels into slots `k0 * n^(p-1) + …`.
fn keyed<'a, T>(
    path: &str,
    table: &'a BTreeMap<String, T>,
    sep: char,
    parts: usize,
    labels: &[String],
) -> Res<HashMap<usize, &'a T>> {
    let n = labels.len();
    let mut out = HashMap::new();
    for (key, v) in table {
        let idx = split_key(key, sep, parts, labels)
            .ok_or_else(|| CliError::unresolved(format!("{path}.{key}"), key.clone()))?;
        let slot = idx.iter().fold(0, |acc, &k| acc * n + k);
        if out.insert(slot, v).is_some() {
            return Err(CliError::invalid(
                format!("{path}.{key}"),
                "duplicate entry",
            ));
        }
    }
    Ok(out)
}

fn labels(v: &[Label]) -> Vec<String> {
    v.iter().map(|l| l.to_string()).collect()
}

fn obj_labels(x: &Obj) -> Vec<String> {
    (0..x.n_objs() as u32)
        .map(|o| x.obj_label(o).into_owned())
        .collect()
}

fn mor_labels(x: &Obj) -> Vec<String> {
    (0..x.n_mors() as u32)
        .map(|m| x.mor_label(m).into_owned())
        .collect()
}

/// Builds a finite category from its spec, adding identity composites.
pub fn category(path: &str, spec: &CategorySpec) -> Res<Obj> {
    let objs = &spec.objects;
    let find_obj = |l: &str, p: String| {
        objs.iter()
            .position(|o| o == l)
            .ok_or_else(|| CliError::unresolved(p, l))
    };
    let mut mors = Vec::with_capacity(spec.morphisms.len());
    for (k, m) in spec.morphisms.iter().enumerate() {
        let p = format!("{path}.morphisms[{k}]");
        mors.push((
            Label::from(m.name.as_str()),
            find_obj(&m.src, format!("{p}.src"))? as u32,
            find_obj(&m.tgt, format!("{p}.tgt"))? as u32,
        ));
    }
    let names: Vec<String> = spec.morphisms.iter().map(|m| m.name.clone()).collect();
    let find_mor = |l: &str, p: String| {
        names
            .iter()
            .position(|m| m == l)
            .ok_or_else(|| CliError::unresolved(p, l))
    };
    let mut ident = vec![u32::MAX; objs.len()];
    for (o, m) in &spec.identities {
        let p = format!("{path}.identities.{o}");
        let k = find_obj(o, p.clone())?;
        ident[k] = find_mor(m, p)? as u32;
    }
    if let Some(o) = ident.iter().position(|&m| m == u32::MAX) {
        return Err(CliError::invalid(
            format!("{path}.identities"),
            format!("no identity for `{}`", objs[o]),
        ));
    }
    let mut comp = HashMap::new();
    for (k, &(_, s, t)) in mors.iter().enumerate() {
        comp.insert((ident[s as usize], k as u32), k as u32);
        comp.insert((k as u32, ident[t as usize]), k as u32);
    }
    for (key, &h) in keyed(
        &format!("{path}.composition"),
        &spec.composition,
        ';',
        2,
        &names,
    )?
    .iter()
    {
        let (f, g) = (key / names.len(), key % names.len());
        let p = format!("{path}.composition");
        comp.insert((f as u32, g as u32), find_mor(h, p)? as u32);
    }
    let labels = objs.iter().map(|o| Label::from(o.as_str())).collect();
    Obj::category(labels, mors, ident, comp).map_err(|e| CliError::invalid(path, e))
}

fn object(cosmos: Cosmos, path: &str, spec: &ObjectSpec) -> Res<Obj> {
    match (spec, cosmos) {
        (ObjectSpec::Set { elements }, Cosmos::FinSet) => {
            Obj::set(elements.iter().map(|e| Label::from(e.as_str())).collect())
                .map_err(|e| CliError::invalid(path, e))
        }
        (ObjectSpec::Set { elements }, Cosmos::FinCat) => {
            let x = Obj::discrete_cat(elements.iter().map(|e| Label::from(e.as_str())).collect());
            x.validate().map_err(|e| CliError::invalid(path, e))?;
            Ok(x)
        }
        (ObjectSpec::Category(c), Cosmos::FinCat) => category(path, c),
        (ObjectSpec::Category(_), Cosmos::FinSet) => Err(CliError::invalid(
            path,
            "a category is not an object of finite sets",
        )),
    }
}

/// Builds a map from its cell tables.
pub fn map_body(path: &str, dom: &Obj, cod: &Obj, body: &MapBody) -> Res<Map> {
    let lookup = |table: &BTreeMap<String, String>,
                  src: Vec<String>,
                  tgt: Vec<String>,
                  what: &str|
     -> Res<Vec<u32>> {
        let mut out = Vec::with_capacity(src.len());
        for s in &src {
            let t = table
                .get(s)
                .ok_or_else(|| CliError::invalid(path, format!("no image for {what} `{s}`")))?;
            let k = tgt
                .iter()
                .position(|x| x == t)
                .ok_or_else(|| CliError::unresolved(format!("{path}.{s}"), t))?;
            out.push(k as u32);
        }
        if let Some(extra) = table.keys().find(|k| !src.contains(k)) {
            return Err(CliError::unresolved(
                format!("{path}.{extra}"),
                extra.clone(),
            ));
        }
        Ok(out)
    };
    let m = match (body, dom.cosmos()) {
        (MapBody::Function { on }, Cosmos::FinSet) => {
            let t = lookup(on, obj_labels(dom), obj_labels(cod), "element")?;
            Map::new(dom.clone(), cod.clone(), t.clone(), t)
        }
        (MapBody::Function { on }, Cosmos::FinCat) if dom.is_discrete() => {
            let t = lookup(on, obj_labels(dom), obj_labels(cod), "object")?;
            let mor = t.iter().map(|&o| cod.ident(o)).collect();
            Map::new(dom.clone(), cod.clone(), t, mor)
        }
        (
            MapBody::Functor {
                on_objects,
                on_morphisms,
            },
            Cosmos::FinCat,
        ) => {
            let o = lookup(on_objects, obj_labels(dom), obj_labels(cod), "object")?;
            let m = lookup(on_morphisms, mor_labels(dom), mor_labels(cod), "morphism")?;
            Map::new(dom.clone(), cod.clone(), o, m)
        }
        _ => {
            return Err(CliError::invalid(
                path,
                "cell tables do not match the cosmos",
            ))
        }
    }
    .map_err(|e| CliError::invalid(path, e))?;
    m.validate().map_err(|e| CliError::invalid(path, e))?;
    Ok(m)
}

struct Resolver<'d> {
    doc: &'d Document,
    inst: Instance,
}

impl Resolver<'_> {
    fn obj_ref(&self, path: &str, r: &str) -> Res<Obj> {
        match r {
            "*" => return Ok(self.inst.cosmos.terminal()),
            "∅" => return Ok(self.inst.cosmos.initial()),
            _ => {}
        }
        if r.contains('×') {
            let parts = r
                .split('×')
                .map(|p| self.obj_ref(path, p.trim()))
                .collect::<Res<Vec<_>>>()?;
            return Ok(product_n(&parts).obj);
        }
        self.inst
            .objects
            .get(r)
            .cloned()
            .ok_or_else(|| CliError::unresolved(path, r))
    }

    fn map_ref(&self, path: &str, r: &str) -> Res<&Map> {
        self.inst
            .maps
            .get(r)
            .ok_or_else(|| CliError::unresolved(path, r))
    }

    fn vcat_ref(&self, path: &str, r: &str) -> Res<VCategory> {
        self.inst
            .vcategories
            .get(r)
            .cloned()
            .ok_or_else(|| CliError::unresolved(path, r))
    }

    fn index(&self, path: &str, c: &VCategory, label: &str) -> Res<usize> {
        c.objects()
            .iter()
            .position(|o| o.as_ref() == label)
            .ok_or_else(|| CliError::unresolved(path, label))
    }

    /// A map reference whose type must be `dom → cod`.
    fn typed_map(&self, path: &str, r: &str, dom: &Obj, cod: &Obj) -> Res<Map> {
        let m = self.map_ref(path, r)?;
        if m.dom() != dom || m.cod() != cod {
            return Err(CliError::invalid(
                path,
                format!("map `{r}` has the wrong domain or codomain"),
            ));
        }
        // Equal objects index their cells identically, so the tables carry over.
        Ok(Map::new(
            dom.clone(),
            cod.clone(),
            m.obj_table().to_vec(),
            m.mor_table().to_vec(),
        )?)
    }

    /// A typed map, or the empty map when the entry is missing and the domain is empty.
    fn typed_or_empty(&self, path: &str, r: Option<&&String>, dom: &Obj, cod: &Obj) -> Res<Map> {
        match r {
            Some(r) => self.typed_map(path, r, dom, cod),
            None if dom.n_objs() == 0 => {
                Ok(Map::new(dom.clone(), cod.clone(), Vec::new(), Vec::new())?)
            }
            None => Err(CliError::invalid(path, "missing entry")),
        }
    }

    fn objects(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.objects {
            if name == "*" || name == "∅" || name.contains('×') {
                return Err(CliError::invalid(
                    format!("objects.{name}"),
                    "reserved name",
                ));
            }
            let x = object(self.inst.cosmos, &format!("objects.{name}"), spec)?;
            self.inst.objects.insert(name.clone(), x);
        }
        Ok(())
    }

    fn maps(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.maps {
            let path = format!("maps.{name}");
            let dom = self.obj_ref(&format!("{path}.dom"), &spec.dom)?;
            let cod = self.obj_ref(&format!("{path}.cod"), &spec.cod)?;
            let m = map_body(&path, &dom, &cod, &spec.body)?;
            self.inst.maps.insert(name.clone(), m);
        }
        Ok(())
    }

    fn vcategories(&mut self) -> Res<()> {
        let cosmos = self.inst.cosmos;
        for (name, spec) in &self.doc.vcategories {
            let path = format!("vcategories.{name}");
            let c = match spec {
                VCategorySpec::Builtin {
                    builtin: BuiltinVCategory::Unit,
                } => VCategory::unit(cosmos),
                VCategorySpec::Builtin {
                    builtin: BuiltinVCategory::Arrow,
                } => VCategory::arrow(cosmos),
                VCategorySpec::FromCategory { from_category } => {
                    let cat = category(&format!("{path}.from_category"), from_category)?;
                    VCategory::from_category(cosmos, &cat)
                        .map_err(|e| CliError::invalid(&path, e))?
                }
                VCategorySpec::Explicit {
                    objects,
                    hom,
                    comp,
                    id,
                } => {
                    let n = objects.len();
                    let homs = keyed(&format!("{path}.hom"), hom, ',', 2, objects)?;
                    let mut hobj = Vec::with_capacity(n * n);
                    for k in 0..n * n {
                        let r = homs.get(&k).ok_or_else(|| {
                            CliError::invalid(
                                format!("{path}.hom"),
                                format!("missing `{},{}`", objects[k / n], objects[k % n]),
                            )
                        })?;
                        hobj.push(self.obj_ref(&format!("{path}.hom"), r)?);
                    }
                    let comps = keyed(&format!("{path}.comp"), comp, ',', 3, objects)?;
                    let mut cmaps = Vec::with_capacity(n * n * n);
                    for k in 0..n * n * n {
                        let (a, b, c) = (k / (n * n), (k / n) % n, k % n);
                        let dom =
                            product_n(&[hobj[a * n + b].clone(), hobj[b * n + c].clone()]).obj;
                        let p = format!("{path}.comp.{},{},{}", objects[a], objects[b], objects[c]);
                        cmaps.push(self.typed_or_empty(
                            &p,
                            comps.get(&k),
                            &dom,
                            &hobj[a * n + c],
                        )?);
                    }
                    let ids = keyed(&format!("{path}.id"), id, ',', 1, objects)?;
                    let mut imaps = Vec::with_capacity(n);
                    for a in 0..n {
                        let p = format!("{path}.id.{}", objects[a]);
                        let r = ids
                            .get(&a)
                            .ok_or_else(|| CliError::invalid(&p, "missing entry"))?;
                        imaps.push(self.typed_map(&p, r, &cosmos.terminal(), &hobj[a * n + a])?);
                    }
                    let labels = objects.iter().map(|o| Label::from(o.as_str())).collect();
                    VCategory::new(cosmos, labels, hobj, cmaps, imaps)
                        .map_err(|e| CliError::invalid(&path, e))?
                }
            };
            c.validate()
                .into_result()
                .map_err(|e| CliError::invalid(&path, e))?;
            self.inst.vcategories.insert(name.clone(), c);
        }
        Ok(())
    }

    fn presheaves(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.presheaves {
            let path = format!("presheaves.{name}");
            let p = match spec {
                PresheafSpec::Representable {
                    base,
                    variance,
                    representable: at,
                } => {
                    let c = self.vcat_ref(&format!("{path}.base"), base)?;
                    let k = self.index(&format!("{path}.representable"), &c, at)?;
                    match variance {
                        Variance::Contravariant => Presheaf::Contravariant(representable(&c, k)?),
                        Variance::Covariant => {
                            Presheaf::Covariant(hom_copresheaf(&VFunctor::identity(&c), k)?)
                        }
                    }
                }
                PresheafSpec::Constant {
                    base,
                    variance,
                    constant,
                } => {
                    let c = self.vcat_ref(&format!("{path}.base"), base)?;
                    let x = self.obj_ref(&format!("{path}.constant"), constant)?;
                    match variance {
                        Variance::Contravariant => {
                            Presheaf::Contravariant(constant_presheaf(&c, &x))
                        }
                        Variance::Covariant => Presheaf::Covariant(VCopresheaf::constant(c, &x)),
                    }
                }
                PresheafSpec::Explicit {
                    base,
                    variance,
                    on,
                    ev,
                } => {
                    let c = self.vcat_ref(&format!("{path}.base"), base)?;
                    let names = labels(c.objects());
                    let n = names.len();
                    let values = keyed(&format!("{path}.on"), on, ',', 1, &names)?;
                    let mut onobj = Vec::with_capacity(n);
                    for a in 0..n {
                        let p = format!("{path}.on.{}", names[a]);
                        let r = values
                            .get(&a)
                            .ok_or_else(|| CliError::invalid(&p, "missing entry"))?;
                        onobj.push(self.obj_ref(&p, r)?);
                    }
                    let evs = keyed(&format!("{path}.ev"), ev, ',', 2, &names)?;
                    let mut maps = Vec::with_capacity(n * n);
                    for k in 0..n * n {
                        let (a, b) = (k / n, k % n);
                        let p = format!("{path}.ev.{},{}", names[a], names[b]);
                        let (dom, cod) = match variance {
                            Variance::Contravariant => (
                                product_n(&[c.hom(a, b).clone(), onobj[b].clone()]).obj,
                                &onobj[a],
                            ),
                            Variance::Covariant => (
                                product_n(&[onobj[a].clone(), c.hom(a, b).clone()]).obj,
                                &onobj[b],
                            ),
                        };
                        maps.push(self.typed_or_empty(&p, evs.get(&k), &dom, cod)?);
                    }
                    match variance {
                        Variance::Contravariant => Presheaf::Contravariant(
                            VPresheaf::new(c, onobj, maps)
                                .map_err(|e| CliError::invalid(&path, e))?,
                        ),
                        Variance::Covariant => Presheaf::Covariant(
                            VCopresheaf::new(c, onobj, maps)
                                .map_err(|e| CliError::invalid(&path, e))?,
                        ),
                    }
                }
            };
            let report = match &p {
                Presheaf::Contravariant(f) => f.validate(),
                Presheaf::Covariant(w) => w.validate(),
            };
            report
                .into_result()
                .map_err(|e| CliError::invalid(&path, e))?;
            self.inst.presheaves.insert(name.clone(), p);
        }
        Ok(())
    }

    fn vfunctors(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.vfunctors {
            let path = format!("vfunctors.{name}");
            let g = match spec {
                VFunctorSpec::Point { target, point } => {
                    let c = self.vcat_ref(&format!("{path}.target"), target)?;
                    let k = self.index(&format!("{path}.point"), &c, point)?;
                    VFunctor::point(&c, k)
                }
                VFunctorSpec::Explicit {
                    source,
                    target,
                    on_objects,
                    hom,
                } => {
                    let i = self.vcat_ref(&format!("{path}.source"), source)?;
                    let c = self.vcat_ref(&format!("{path}.target"), target)?;
                    let names = labels(i.objects());
                    let n = names.len();
                    let on = keyed(&format!("{path}.on_objects"), on_objects, ',', 1, &names)?;
                    let mut obj = Vec::with_capacity(n);
                    for a in 0..n {
                        let p = format!("{path}.on_objects.{}", names[a]);
                        let r = on
                            .get(&a)
                            .ok_or_else(|| CliError::invalid(&p, "missing entry"))?;
                        obj.push(self.index(&p, &c, r)?);
                    }
                    let homs = keyed(&format!("{path}.hom"), hom, ',', 2, &names)?;
                    let mut maps = Vec::with_capacity(n * n);
                    for k in 0..n * n {
                        let (a, b) = (k / n, k % n);
                        let p = format!("{path}.hom.{},{}", names[a], names[b]);
                        maps.push(self.typed_or_empty(
                            &p,
                            homs.get(&k),
                            i.hom(a, b),
                            c.hom(obj[a], obj[b]),
                        )?);
                    }
                    VFunctor::new(i, c, obj, maps).map_err(|e| CliError::invalid(&path, e))?
                }
            };
            g.validate()
                .into_result()
                .map_err(|e| CliError::invalid(&path, e))?;
            self.inst.vfunctors.insert(name.clone(), g);
        }
        Ok(())
    }

    fn vnats(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.vnats {
            let path = format!("vnats.{name}");
            let get = |r: &str, p: String| {
                self.inst
                    .presheaves
                    .get(r)
                    .ok_or_else(|| CliError::unresolved(p, r))
            };
            let (s, t) = (
                get(&spec.source, format!("{path}.source"))?,
                get(&spec.target, format!("{path}.target"))?,
            );
            let (base, at_s, at_t): (
                &VCategory,
                Box<dyn Fn(usize) -> Obj>,
                Box<dyn Fn(usize) -> Obj>,
            ) = match (s, t) {
                (Presheaf::Contravariant(f), Presheaf::Contravariant(g)) => (
                    f.base(),
                    Box::new(|a| f.at(a).clone()),
                    Box::new(|a| g.at(a).clone()),
                ),
                (Presheaf::Covariant(f), Presheaf::Covariant(g)) => (
                    f.base(),
                    Box::new(|a| f.at(a).clone()),
                    Box::new(|a| g.at(a).clone()),
                ),
                _ => {
                    return Err(CliError::invalid(
                        &path,
                        "source and target have different variance",
                    ))
                }
            };
            let names = labels(base.objects());
            let comps = keyed(
                &format!("{path}.components"),
                &spec.components,
                ',',
                1,
                &names,
            )?;
            let mut maps = Vec::with_capacity(names.len());
            for a in 0..names.len() {
                let p = format!("{path}.components.{}", names[a]);
                let r = comps
                    .get(&a)
                    .ok_or_else(|| CliError::invalid(&p, "missing entry"))?;
                maps.push(self.typed_map(&p, r, &at_s(a), &at_t(a))?);
            }
            let nat = match (s, t) {
                (Presheaf::Contravariant(f), Presheaf::Contravariant(g)) => {
                    let a = VNat::new(f.clone(), g.clone(), maps)
                        .map_err(|e| CliError::invalid(&path, e))?;
                    a.validate()
                        .into_result()
                        .map_err(|e| CliError::invalid(&path, e))?;
                    Transformation::Contravariant(a)
                }
                (Presheaf::Covariant(f), Presheaf::Covariant(g)) => {
                    let a = CoVNat::new(f.clone(), g.clone(), maps)
                        .map_err(|e| CliError::invalid(&path, e))?;
                    a.validate()
                        .into_result()
                        .map_err(|e| CliError::invalid(&path, e))?;
                    Transformation::Covariant(a)
                }
                _ => unreachable!("variance checked above"),
            };
            self.inst.vnats.insert(name.clone(), nat);
        }
        Ok(())
    }

    fn contravariant(&self, path: &str, r: &str) -> Res<VPresheaf> {
        match self.inst.presheaves.get(r) {
            Some(Presheaf::Contravariant(f)) => Ok(f.clone()),
            Some(Presheaf::Covariant(_)) => {
                Err(CliError::invalid(path, format!("`{r}` is covariant")))
            }
            None => Err(CliError::unresolved(path, r)),
        }
    }

    fn internal(&mut self) -> Res<()> {
        let is_functor = |s: &InternalSpec| {
            matches!(
                s,
                InternalSpec::Functor { .. } | InternalSpec::Projection { .. }
            )
        };
        for (name, spec) in self.doc.internal.iter().filter(|(_, s)| !is_functor(s)) {
            let path = format!("internal.{name}");
            let entry = match spec {
                InternalSpec::Constant { cst } => {
                    let x = self.obj_ref(&format!("{path}.cst"), cst)?;
                    InternalEntry {
                        cat: InternalCategory::cst(&x),
                        internalization: None,
                        elements: None,
                    }
                }
                InternalSpec::Internalize { internalize: c } => {
                    let int = internalize(&self.vcat_ref(&format!("{path}.internalize"), c)?)?;
                    InternalEntry {
                        cat: int.cat.clone(),
                        internalization: Some(int),
                        elements: None,
                    }
                }
                InternalSpec::Elements { elements } => {
                    let f = self.contravariant(&format!("{path}.elements"), elements)?;
                    let g = groth(f.base(), &f)?;
                    InternalEntry {
                        cat: g.total.clone(),
                        internalization: None,
                        elements: Some(g),
                    }
                }
                InternalSpec::Explicit {
                    a0,
                    a1,
                    s,
                    t,
                    i,
                    composition,
                } => {
                    let a0 = self.obj_ref(&format!("{path}.a0"), a0)?;
                    let a1 = self.obj_ref(&format!("{path}.a1"), a1)?;
                    let s = self.typed_map(&format!("{path}.s"), s, &a1, &a0)?;
                    let t = self.typed_map(&format!("{path}.t"), t, &a1, &a0)?;
                    let i = self.typed_map(&format!("{path}.i"), i, &a0, &a1)?;
                    let names = mor_labels(&a1);
                    let given = keyed(&format!("{path}.composition"), composition, ';', 2, &names)?;
                    let n = names.len();
                    let mut table = HashMap::new();
                    for f in 0..n as u32 {
                        for g in 0..n as u32 {
                            if t.on_mor(f) != s.on_mor(g) {
                                continue;
                            }
                            let h = if let Some(h) = given.get(&((f * n as u32 + g) as usize)) {
                                let p = format!("{path}.composition");
                                names
                                    .iter()
                                    .position(|m| m == *h)
                                    .ok_or_else(|| CliError::unresolved(p, h.as_str()))?
                                    as u32
                            } else if g == i.on_mor(t.on_mor(f)) {
                                f
                            } else if f == i.on_mor(s.on_mor(g)) {
                                g
                            } else {
                                return Err(CliError::invalid(
                                    format!("{path}.composition"),
                                    format!(
                                        "missing `{};{}`",
                                        names[f as usize], names[g as usize]
                                    ),
                                ));
                            };
                            table.insert((f, g), h);
                        }
                    }
                    let cat = InternalCategory::from_cells(a0, a1, s, t, i, |f, g| table[&(f, g)])
                        .map_err(|e| CliError::invalid(&path, e))?;
                    InternalEntry {
                        cat,
                        internalization: None,
                        elements: None,
                    }
                }
                InternalSpec::Functor { .. } | InternalSpec::Projection { .. } => {
                    unreachable!("filtered")
                }
            };
            entry
                .cat
                .validate()
                .into_result()
                .map_err(|e| CliError::invalid(&path, e))?;
            self.inst.internal.insert(name.clone(), entry);
        }
        for (name, spec) in self.doc.internal.iter().filter(|(_, s)| is_functor(s)) {
            let path = format!("internal.{name}");
            let entry = match spec {
                InternalSpec::Projection { projection } => {
                    let f = self.contravariant(&format!("{path}.projection"), projection)?;
                    let g = groth(f.base(), &f)?;
                    FunctorEntry {
                        functor: g.projection.clone(),
                        base: Some(g.base),
                    }
                }
                InternalSpec::Functor {
                    source,
                    target,
                    h0,
                    h1,
                } => {
                    let get = |r: &str, p: String| {
                        self.inst
                            .internal
                            .get(r)
                            .ok_or_else(|| CliError::unresolved(p, r))
                    };
                    let s = get(source, format!("{path}.source"))?;
                    let t = get(target, format!("{path}.target"))?;
                    let m0 = map_body(&format!("{path}.h0"), s.cat.a0(), t.cat.a0(), h0)?;
                    let m1 = map_body(&format!("{path}.h1"), s.cat.a1(), t.cat.a1(), h1)?;
                    let functor = InternalFunctor::new(s.cat.clone(), t.cat.clone(), m0, m1)
                        .map_err(|e| CliError::invalid(&path, e))?;
                    FunctorEntry {
                        functor,
                        base: t.internalization.clone(),
                    }
                }
                _ => unreachable!("filtered"),
            };
            entry
                .functor
                .validate()
                .into_result()
                .map_err(|e| CliError::invalid(&path, e))?;
            self.inst.functors.insert(name.clone(), entry);
        }
        Ok(())
    }

    fn problems(&mut self) -> Res<()> {
        for (name, spec) in &self.doc.problems {
            let path = format!("problems.{name}");
            let p = match spec {
                ProblemSpec::Representability {
                    presheaf,
                    object,
                    element,
                } => {
                    let f = self.contravariant(&format!("{path}.presheaf"), presheaf)?;
                    let object = object
                        .as_ref()
                        .map(|o| self.index(&format!("{path}.object"), f.base(), o))
                        .transpose()?;
                    let element = match (object, element) {
                        (Some(a), Some(x)) => {
                            let k = f.at(a).find_obj(x).ok_or_else(|| {
                                CliError::unresolved(format!("{path}.element"), x)
                            })?;
                            Some(Map::point(f.at(a), k))
                        }
                        (None, Some(_)) => {
                            return Err(CliError::invalid(&path, "an element needs an object"))
                        }
                        _ => None,
                    };
                    Problem::Representability {
                        presheaf: f,
                        object,
                        element,
                    }
                }
                ProblemSpec::WeightedLimit {
                    weight,
                    diagram,
                    apex,
                    cone,
                } => {
                    let w = match self.inst.presheaves.get(weight) {
                        Some(Presheaf::Covariant(w)) => w.clone(),
                        Some(_) => {
                            return Err(CliError::invalid(
                                format!("{path}.weight"),
                                "a weight must be covariant",
                            ))
                        }
                        None => return Err(CliError::unresolved(format!("{path}.weight"), weight)),
                    };
                    let g =
                        self.inst.vfunctors.get(diagram).cloned().ok_or_else(|| {
                            CliError::unresolved(format!("{path}.diagram"), diagram)
                        })?;
                    let l = self.index(&format!("{path}.apex"), &g.target, apex)?;
                    let cone = match cone {
                        None => None,
                        Some(table) => {
                            let names = labels(g.source.objects());
                            let comps = keyed(&format!("{path}.cone"), table, ',', 1, &names)?;
                            let mut maps = Vec::with_capacity(names.len());
                            for i in 0..names.len() {
                                let p = format!("{path}.cone.{}", names[i]);
                                let body = comps
                                    .get(&i)
                                    .ok_or_else(|| CliError::invalid(&p, "missing entry"))?;
                                maps.push(map_body(&p, w.at(i), g.target.hom(l, g.obj[i]), body)?);
                            }
                            Some(
                                WeightedLimitProblem::new(w.clone(), g.clone(), l, maps)
                                    .map_err(|e| CliError::invalid(format!("{path}.cone"), e))?,
                            )
                        }
                    };
                    Problem::WeightedLimit {
                        weight: w,
                        diagram: g,
                        apex: l,
                        cone,
                    }
                }
                ProblemSpec::Tensor {
                    vcategory,
                    object,
                    by,
                } => {
                    let c = self.vcat_ref(&format!("{path}.vcategory"), vcategory)?;
                    let a = self.index(&format!("{path}.object"), &c, object)?;
                    let x = self.obj_ref(&format!("{path}.by"), by)?;
                    Problem::Tensor {
                        vcategory: c,
                        object: a,
                        by: x,
                    }
                }
                ProblemSpec::Terminal { internal, object } => {
                    let e = self.inst.internal.get(internal).ok_or_else(|| {
                        CliError::unresolved(format!("{path}.internal"), internal)
                    })?;
                    let t =
                        e.cat.a0().find_obj(object).ok_or_else(|| {
                            CliError::unresolved(format!("{path}.object"), object)
                        })?;
                    Problem::Terminal {
                        internal: e.cat.clone(),
                        object: t,
                    }
                }
            };
            self.inst.problems.insert(name.clone(), p);
        }
        Ok(())
    }
}

/// Resolves and validates every entity of a document.
pub fn resolve(doc: &Document) -> Res<Instance> {
    let cosmos = match doc.cosmos {
        CosmosTag::Finset => Cosmos::FinSet,
        CosmosTag::Fincat => Cosmos::FinCat,
    };
    let inst = Instance {
        cosmos,
        objects: BTreeMap::new(),
        maps: BTreeMap::new(),
        vcategories: BTreeMap::new(),
        presheaves: BTreeMap::new(),
        vfunctors: BTreeMap::new(),
        vnats: BTreeMap::new(),
        internal: BTreeMap::new(),
        functors: BTreeMap::new(),
        problems: BTreeMap::new(),
    };
    let mut r = Resolver { doc, inst };
    r.objects()?;
    r.maps()?;
    r.vcategories()?;
    r.presheaves()?;
    r.vfunctors()?;
    r.vnats()?;
    r.internal()?;
    r.problems()?;
    Ok(r.inst)
}
