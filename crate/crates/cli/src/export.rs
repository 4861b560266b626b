//! Writes library values back out as an explicit document.

use std::collections::BTreeMap;

use intcat_core::cosmos::{Cosmos, Map, Obj};
use intcat_core::enriched::{VCategory, VCopresheaf, VFunctor, VPresheaf};
use intcat_core::internal::InternalCategory;

use crate::document::*;

/// Accumulates named entities into a document, sharing equal objects.
pub struct Exporter {
    cosmos: Cosmos,
    objects: Vec<(Obj, String)>,
    doc: Document,
}

fn tag(cosmos: Cosmos) -> CosmosTag {
    match cosmos {
        Cosmos::FinSet => CosmosTag::Finset,
        Cosmos::FinCat => CosmosTag::Fincat,
    }
}

/// The cell tables of a map, keyed by labels.
pub fn map_body(m: &Map) -> MapBody {
    let (d, c) = (m.dom(), m.cod());
    let on_objects: BTreeMap<String, String> = (0..d.n_objs() as u32)
        .map(|o| {
            (
                d.obj_label(o).into_owned(),
                c.obj_label(m.on_obj(o)).into_owned(),
            )
        })
        .collect();
    match d.cosmos() {
        Cosmos::FinSet => MapBody::Function { on: on_objects },
        Cosmos::FinCat => MapBody::Functor {
            on_objects,
            on_morphisms: (0..d.n_mors() as u32)
                .map(|f| {
                    (
                        d.mor_label(f).into_owned(),
                        c.mor_label(m.on_mor(f)).into_owned(),
                    )
                })
                .collect(),
        },
    }
}

/// A finite category as a spec, omitting composites with identities.
pub fn category_spec(x: &Obj) -> CategorySpec {
    let nm = x.n_mors() as u32;
    let ol = |o: u32| x.obj_label(o).into_owned();
    let ml = |f: u32| x.mor_label(f).into_owned();
    let mut composition = BTreeMap::new();
    for f in (0..nm).filter(|&f| !x.is_identity(f)) {
        for g in (0..nm).filter(|&g| !x.is_identity(g)) {
            if let Some(h) = x.compose(f, g) {
                composition.insert(format!("{};{}", ml(f), ml(g)), ml(h));
            }
        }
    }
    CategorySpec {
        objects: (0..x.n_objs() as u32).map(ol).collect(),
        morphisms: (0..nm)
            .map(|f| MorphismSpec {
                name: ml(f),
                src: ol(x.src(f)),
                tgt: ol(x.tgt(f)),
            })
            .collect(),
        identities: (0..x.n_objs() as u32)
            .map(|o| (ol(o), ml(x.ident(o))))
            .collect(),
        composition,
    }
}

impl Exporter {
    pub fn new(cosmos: Cosmos) -> Exporter {
        let doc = Document {
            cosmos: tag(cosmos),
            objects: BTreeMap::new(),
            maps: BTreeMap::new(),
            vcategories: BTreeMap::new(),
            presheaves: BTreeMap::new(),
            vfunctors: BTreeMap::new(),
            vnats: BTreeMap::new(),
            internal: BTreeMap::new(),
            problems: BTreeMap::new(),
        };
        Exporter {
            cosmos,
            objects: Vec::new(),
            doc,
        }
    }

    /// A reference to `x`, adding it under `hint` when it is new.
    pub fn obj(&mut self, x: &Obj, hint: &str) -> String {
        if x == &self.cosmos.terminal() {
            return "*".into();
        }
        if x == &self.cosmos.initial() {
            return "∅".into();
        }
        if let Some((_, name)) = self.objects.iter().find(|(y, _)| y == x) {
            return name.clone();
        }
        if let Some(fs) = x.factors() {
            if fs.len() >= 2 && fs.iter().all(|f| f.factors().is_none()) {
                let parts: Vec<String> = fs
                    .iter()
                    .enumerate()
                    .map(|(k, f)| self.obj(f, &format!("{hint}.{k}")))
                    .collect();
                return parts.join("×");
            }
        }
        let mut name = hint.to_string();
        while self.doc.objects.contains_key(&name) {
            name.push('\'');
        }
        let spec = if x.cosmos() == Cosmos::FinSet {
            ObjectSpec::Set {
                elements: (0..x.n_objs() as u32)
                    .map(|o| x.obj_label(o).into_owned())
                    .collect(),
            }
        } else {
            ObjectSpec::Category(category_spec(x))
        };
        self.doc.objects.insert(name.clone(), spec);
        self.objects.push((x.clone(), name.clone()));
        name
    }

    /// Adds `m` under `name`; maps out of an empty object are left implicit.
    pub fn map(&mut self, m: &Map, name: &str) -> Option<String> {
        if m.dom().n_objs() == 0 {
            return None;
        }
        Some(self.map_always(m, name))
    }

    /// Adds `m` under `name` even when its domain is empty.
    pub fn map_always(&mut self, m: &Map, name: &str) -> String {
        let dom = self.obj(m.dom(), &format!("{name}.dom"));
        let cod = self.obj(m.cod(), &format!("{name}.cod"));
        self.doc.maps.insert(
            name.into(),
            MapSpec {
                dom,
                cod,
                body: map_body(m),
            },
        );
        name.into()
    }

    pub fn vcategory(&mut self, name: &str, c: &VCategory) {
        let l = |a: usize| c.objects()[a].to_string();
        let n = c.len();
        let mut hom = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let r = self.obj(c.hom(a, b), &format!("{name}({},{})", l(a), l(b)));
                hom.insert(format!("{},{}", l(a), l(b)), r);
            }
        }
        let mut comp = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let key = format!("{},{},{}", l(a), l(b), l(d));
                    if let Some(r) = self.map(c.comp(a, b, d), &format!("{name}.comp({key})")) {
                        comp.insert(key, r);
                    }
                }
            }
        }
        let mut id = BTreeMap::new();
        for a in 0..n {
            let r = self
                .map(c.ident(a), &format!("{name}.id({})", l(a)))
                .expect("the terminal is inhabited");
            id.insert(l(a), r);
        }
        let objects = c.objects().iter().map(|o| o.to_string()).collect();
        self.doc.vcategories.insert(
            name.into(),
            VCategorySpec::Explicit {
                objects,
                hom,
                comp,
                id,
            },
        );
    }

    fn presheaf_tables(
        &mut self,
        name: &str,
        c: &VCategory,
        at: impl Fn(usize) -> Obj,
        ev: impl Fn(usize, usize) -> Map,
    ) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
        let l = |a: usize| c.objects()[a].to_string();
        let mut on = BTreeMap::new();
        for a in 0..c.len() {
            let r = self.obj(&at(a), &format!("{name}({})", l(a)));
            on.insert(l(a), r);
        }
        let mut evs = BTreeMap::new();
        for a in 0..c.len() {
            for b in 0..c.len() {
                let key = format!("{},{}", l(a), l(b));
                if let Some(r) = self.map(&ev(a, b), &format!("{name}.ev({key})")) {
                    evs.insert(key, r);
                }
            }
        }
        (on, evs)
    }

    /// Adds a contravariant presheaf over the already exported `base`.
    pub fn presheaf(&mut self, name: &str, base: &str, f: &VPresheaf) {
        let (on, ev) = self.presheaf_tables(
            name,
            f.base(),
            |a| f.at(a).clone(),
            |a, b| f.ev(a, b).clone(),
        );
        let spec = PresheafSpec::Explicit {
            base: base.into(),
            variance: Variance::Contravariant,
            on,
            ev,
        };
        self.doc.presheaves.insert(name.into(), spec);
    }

    /// Adds a covariant presheaf over the already exported `base`.
    pub fn copresheaf(&mut self, name: &str, base: &str, w: &VCopresheaf) {
        let (on, ev) = self.presheaf_tables(
            name,
            w.base(),
            |a| w.at(a).clone(),
            |a, b| w.ev(a, b).clone(),
        );
        let spec = PresheafSpec::Explicit {
            base: base.into(),
            variance: Variance::Covariant,
            on,
            ev,
        };
        self.doc.presheaves.insert(name.into(), spec);
    }

    /// Adds a `V`-functor between already exported `V`-categories.
    pub fn vfunctor(&mut self, name: &str, source: &str, target: &str, g: &VFunctor) {
        let (i, c) = (&g.source, &g.target);
        let l = |a: usize| i.objects()[a].to_string();
        let on_objects = (0..i.len())
            .map(|a| (l(a), c.objects()[g.obj[a]].to_string()))
            .collect();
        let mut hom = BTreeMap::new();
        for a in 0..i.len() {
            for b in 0..i.len() {
                let key = format!("{},{}", l(a), l(b));
                if let Some(r) = self.map(g.on_hom(a, b), &format!("{name}.hom({key})")) {
                    hom.insert(key, r);
                }
            }
        }
        let spec = VFunctorSpec::Explicit {
            source: source.into(),
            target: target.into(),
            on_objects,
            hom,
        };
        self.doc.vfunctors.insert(name.into(), spec);
    }

    /// Adds an internal category with explicit structure maps.
    pub fn internal(&mut self, name: &str, a: &InternalCategory) {
        let a0 = self.obj(a.a0(), &format!("{name}0"));
        let a1 = self.obj(a.a1(), &format!("{name}1"));
        let s = self.map_always(a.s(), &format!("{name}.s"));
        let t = self.map_always(a.t(), &format!("{name}.t"));
        let i = self.map_always(a.i(), &format!("{name}.i"));
        let x = a.a1();
        let ml = |f: u32| x.mor_label(f).into_owned();
        let (idf, nm) = (
            |f: u32| a.i().on_mor(a.s().on_mor(f)) == f || a.i().on_mor(a.t().on_mor(f)) == f,
            x.n_mors(),
        );
        let mut composition = BTreeMap::new();
        for f in 0..nm as u32 {
            for g in 0..nm as u32 {
                if idf(f) || idf(g) {
                    continue;
                }
                if let Some(h) = a.compose_mor(f, g) {
                    composition.insert(format!("{};{}", ml(f), ml(g)), ml(h));
                }
            }
        }
        self.doc.internal.insert(
            name.into(),
            InternalSpec::Explicit {
                a0,
                a1,
                s,
                t,
                i,
                composition,
            },
        );
    }

    pub fn problem(&mut self, name: &str, p: ProblemSpec) {
        self.doc.problems.insert(name.into(), p);
    }

    pub fn finish(self) -> Document {
        self.doc
    }
}
