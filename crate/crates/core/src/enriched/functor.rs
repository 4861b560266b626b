//! `V`-functors in evaluation form and `V`-natural transformations.
//!
//! A presheaf `F : C^op → V` is stored through maps
//! `ev^F_{A,B} : C(A,B) × FB → FA`; a functor `W : I → V` through maps
//! `ev^W_{i,j} : Wi × I(i,j) → Wj`. Laws are checked on morphism cells,
//! which determine maps in both shipped cosmoses.

use std::sync::Arc;

use super::vcat::VCategory;
use crate::cosmos::{product, unit_right, Map, Obj};
use crate::error::{Error, Result};
use crate::report::Report;

fn ev_cell(m: &Map, x: u32, y: u32) -> u32 {
    m.on_mor(m.dom().join_mor(&[x, y]))
}

fn ev_cell_obj(m: &Map, x: u32, y: u32) -> u32 {
    m.on_obj(m.dom().join_obj(&[x, y]))
}

struct PresheafInner {
    base: VCategory,
    onobj: Vec<Obj>,
    ev: Vec<Map>,
}

/// A `V`-presheaf `F : C^op → V` in evaluation form. Cheap to clone.
#[derive(Clone)]
pub struct VPresheaf(Arc<PresheafInner>);

impl std::fmt::Debug for VPresheaf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VPresheaf(on {:?})", self.0.base)
    }
}

impl VPresheaf {
    /// Assembles a presheaf; shapes are checked, laws by [`VPresheaf::validate`].
    pub fn new(base: VCategory, onobj: Vec<Obj>, ev: Vec<Map>) -> Result<VPresheaf> {
        let n = base.len();
        if onobj.len() != n || ev.len() != n * n {
            return Err(Error::Validation(
                "presheaf tables have the wrong size".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                let m = &ev[a * n + b];
                if m.dom() != &product(base.hom(a, b), &onobj[b]).obj || m.cod() != &onobj[a] {
                    return Err(Error::Validation(format!(
                        "evaluation `{},{}` has the wrong type",
                        base.objects()[a],
                        base.objects()[b]
                    )));
                }
            }
        }
        Ok(VPresheaf(Arc::new(PresheafInner { base, onobj, ev })))
    }

    /// Builds a presheaf from a cell-level action on morphism cells:
    /// `act(a, b, f, y)` for `f ∈ C(a,b)`, `y ∈ F b`.
    pub fn from_cells(
        base: VCategory,
        onobj: Vec<Obj>,
        act: impl Fn(usize, usize, u32, u32) -> u32,
    ) -> Result<VPresheaf> {
        let n = base.len();
        let mut ev = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (h, fb) = (base.hom(a, b), &onobj[b]);
                let dom = product(h, fb).obj;
                let d = dom.clone();
                let fa = onobj[a].clone();
                let act = &act;
                ev.push(Map::from_fns(
                    dom,
                    onobj[a].clone(),
                    |i| {
                        let p = d.split_obj(i);
                        fa.src(act(a, b, h.ident(p[0]), fb.ident(p[1])))
                    },
                    |m| {
                        let p = d.split_mor(m);
                        act(a, b, p[0], p[1])
                    },
                ));
            }
        }
        VPresheaf::new(base, onobj, ev)
    }

    /// The base `V`-category.
    pub fn base(&self) -> &VCategory {
        &self.0.base
    }

    /// The object `F a`.
    pub fn at(&self, a: usize) -> &Obj {
        &self.0.onobj[a]
    }

    /// The evaluation map `ev^F_{a,b}`.
    pub fn ev(&self, a: usize, b: usize) -> &Map {
        &self.0.ev[a * self.0.base.len() + b]
    }

    /// Action of a morphism cell `f ∈ C(a,b)` on a morphism cell `y ∈ F b`.
    pub fn act(&self, a: usize, b: usize, f: u32, y: u32) -> u32 {
        ev_cell(self.ev(a, b), f, y)
    }

    /// Action on object cells.
    pub fn act_obj(&self, a: usize, b: usize, f: u32, y: u32) -> u32 {
        ev_cell_obj(self.ev(a, b), f, y)
    }

    /// Checks the identity and composition laws exhaustively.
    pub fn validate(&self) -> Report {
        let c = self.base();
        let n = c.len();
        let lab = |a: usize| c.objects()[a].as_ref();
        let mut r = Report::new();
        for a in 0..n {
            for b in 0..n {
                if let Err(e) = self.ev(a, b).validate() {
                    r.fail(format!(
                        "evaluation ({},{}) is not a map: {e}",
                        lab(a),
                        lab(b)
                    ));
                }
            }
        }
        for a in 0..n {
            let fa = self.at(a);
            for y in 0..fa.n_mors() as u32 {
                if self.act(a, a, c.ident_mor(a), y) != y {
                    r.fail(format!(
                        "identity law fails at {} on `{}`",
                        lab(a),
                        fa.mor_label(y)
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let (x, y, z) = (c.hom(a, b), c.hom(b, d), self.at(d));
                    for f in 0..x.n_mors() as u32 {
                        for g in 0..y.n_mors() as u32 {
                            let fg = c.comp_mor(a, b, d, f, g);
                            for w in 0..z.n_mors() as u32 {
                                if self.act(a, d, fg, w) != self.act(a, b, f, self.act(b, d, g, w))
                                {
                                    r.fail(format!(
                                        "composition law fails at ({},{},{}) on `{}`, `{}`, `{}`",
                                        lab(a),
                                        lab(b),
                                        lab(d),
                                        x.mor_label(f),
                                        y.mor_label(g),
                                        z.mor_label(w)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Replaces one evaluation map (used to build corrupted inputs in tests
    /// and by document loaders).
    pub fn with_ev(&self, a: usize, b: usize, m: Map) -> Result<VPresheaf> {
        let n = self.base().len();
        let mut ev = self.0.ev.clone();
        ev[a * n + b] = m;
        VPresheaf::new(self.base().clone(), self.0.onobj.clone(), ev)
    }

    /// Pointer identity.
    pub fn same(&self, other: &VPresheaf) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for VPresheaf {
    fn eq(&self, other: &VPresheaf) -> bool {
        self.same(other)
            || (self.0.base == other.0.base
                && self.0.onobj == other.0.onobj
                && self.0.ev == other.0.ev)
    }
}

struct CopresheafInner {
    base: VCategory,
    onobj: Vec<Obj>,
    ev: Vec<Map>,
}

/// A covariant `V`-functor `W : I → V` in evaluation form
/// `ev^W_{i,j} : Wi × I(i,j) → Wj`. Cheap to clone.
#[derive(Clone)]
pub struct VCopresheaf(Arc<CopresheafInner>);

impl std::fmt::Debug for VCopresheaf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VCopresheaf(on {:?})", self.0.base)
    }
}

impl VCopresheaf {
    /// Assembles a covariant functor; shapes are checked here.
    pub fn new(base: VCategory, onobj: Vec<Obj>, ev: Vec<Map>) -> Result<VCopresheaf> {
        let n = base.len();
        if onobj.len() != n || ev.len() != n * n {
            return Err(Error::Validation(
                "functor tables have the wrong size".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let m = &ev[i * n + j];
                if m.dom() != &product(&onobj[i], base.hom(i, j)).obj || m.cod() != &onobj[j] {
                    return Err(Error::Validation(format!(
                        "evaluation `{},{}` has the wrong type",
                        base.objects()[i],
                        base.objects()[j]
                    )));
                }
            }
        }
        Ok(VCopresheaf(Arc::new(CopresheafInner { base, onobj, ev })))
    }

    /// Builds a covariant functor from its action on morphism cells:
    /// `act(i, j, x, f)` for `x ∈ W i`, `f ∈ I(i,j)`.
    pub fn from_cells(
        base: VCategory,
        onobj: Vec<Obj>,
        act: impl Fn(usize, usize, u32, u32) -> u32,
    ) -> Result<VCopresheaf> {
        let n = base.len();
        let mut ev = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let (wi, h) = (&onobj[i], base.hom(i, j));
                let dom = product(wi, h).obj;
                let d = dom.clone();
                let wj = onobj[j].clone();
                let act = &act;
                ev.push(Map::from_fns(
                    dom,
                    onobj[j].clone(),
                    |k| {
                        let p = d.split_obj(k);
                        wj.src(act(i, j, wi.ident(p[0]), h.ident(p[1])))
                    },
                    |m| {
                        let p = d.split_mor(m);
                        act(i, j, p[0], p[1])
                    },
                ));
            }
        }
        VCopresheaf::new(base, onobj, ev)
    }

    /// The constant functor at `x` (every arrow acts as the identity).
    pub fn constant(base: VCategory, x: &Obj) -> VCopresheaf {
        let n = base.len();
        VCopresheaf::from_cells(base, vec![x.clone(); n], |_, _, y, _| y).expect("constant functor")
    }

    /// The source `V`-category.
    pub fn base(&self) -> &VCategory {
        &self.0.base
    }

    /// The object `W i`.
    pub fn at(&self, i: usize) -> &Obj {
        &self.0.onobj[i]
    }

    /// The evaluation map `ev^W_{i,j}`.
    pub fn ev(&self, i: usize, j: usize) -> &Map {
        &self.0.ev[i * self.0.base.len() + j]
    }

    /// Action on morphism cells `x ∈ W i`, `f ∈ I(i,j)`.
    pub fn act(&self, i: usize, j: usize, x: u32, f: u32) -> u32 {
        ev_cell(self.ev(i, j), x, f)
    }

    /// Action on object cells.
    pub fn act_obj(&self, i: usize, j: usize, x: u32, f: u32) -> u32 {
        ev_cell_obj(self.ev(i, j), x, f)
    }

    /// Checks the identity and composition laws exhaustively.
    pub fn validate(&self) -> Report {
        let c = self.base();
        let n = c.len();
        let lab = |a: usize| c.objects()[a].as_ref();
        let mut r = Report::new();
        for i in 0..n {
            for j in 0..n {
                if let Err(e) = self.ev(i, j).validate() {
                    r.fail(format!(
                        "evaluation ({},{}) is not a map: {e}",
                        lab(i),
                        lab(j)
                    ));
                }
            }
        }
        for i in 0..n {
            let wi = self.at(i);
            for x in 0..wi.n_mors() as u32 {
                if self.act(i, i, x, c.ident_mor(i)) != x {
                    r.fail(format!(
                        "identity law fails at {} on `{}`",
                        lab(i),
                        wi.mor_label(x)
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (w, x, y) = (self.at(i), c.hom(i, j), c.hom(j, k));
                    for a in 0..w.n_mors() as u32 {
                        for f in 0..x.n_mors() as u32 {
                            let af = self.act(i, j, a, f);
                            for g in 0..y.n_mors() as u32 {
                                if self.act(i, k, a, c.comp_mor(i, j, k, f, g))
                                    != self.act(j, k, af, g)
                                {
                                    r.fail(format!(
                                        "composition law fails at ({},{},{}) on `{}`, `{}`, `{}`",
                                        lab(i),
                                        lab(j),
                                        lab(k),
                                        w.mor_label(a),
                                        x.mor_label(f),
                                        y.mor_label(g)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }
}

impl PartialEq for VCopresheaf {
    fn eq(&self, other: &VCopresheaf) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base
                && self.0.onobj == other.0.onobj
                && self.0.ev == other.0.ev)
    }
}

/// A `V`-functor `G : I → C` between `V`-categories, given by its object map
/// and hom maps `G_{i,j} : I(i,j) → C(Gi, Gj)`.
#[derive(Clone, Debug, PartialEq)]
pub struct VFunctor {
    /// Source `V`-category.
    pub source: VCategory,
    /// Target `V`-category.
    pub target: VCategory,
    /// Object map.
    pub obj: Vec<usize>,
    /// Hom maps, indexed by `i * |I| + j`.
    pub hom: Vec<Map>,
}

impl VFunctor {
    /// Assembles a functor; shapes are checked, laws by [`VFunctor::validate`].
    pub fn new(
        source: VCategory,
        target: VCategory,
        obj: Vec<usize>,
        hom: Vec<Map>,
    ) -> Result<VFunctor> {
        let n = source.len();
        if obj.len() != n || hom.len() != n * n || obj.iter().any(|&o| o >= target.len()) {
            return Err(Error::Validation(
                "functor tables have the wrong size".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let m = &hom[i * n + j];
                if m.dom() != source.hom(i, j) || m.cod() != target.hom(obj[i], obj[j]) {
                    return Err(Error::Validation(
                        "functor hom map has the wrong type".into(),
                    ));
                }
            }
        }
        Ok(VFunctor {
            source,
            target,
            obj,
            hom,
        })
    }

    /// The functor `𝟙 → C` picking an object.
    pub fn point(target: &VCategory, c: usize) -> VFunctor {
        let unit = VCategory::unit(target.cosmos());
        let m = Map::point(target.hom(c, c), target.ident_obj(c));
        VFunctor::new(unit, target.clone(), vec![c], vec![m]).expect("point functor")
    }

    /// The identity functor.
    pub fn identity(c: &VCategory) -> VFunctor {
        let n = c.len();
        let mut hom = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                hom.push(Map::identity(c.hom(a, b)));
            }
        }
        VFunctor::new(c.clone(), c.clone(), (0..n).collect(), hom).expect("identity functor")
    }

    /// The hom map `G_{i,j}`.
    pub fn on_hom(&self, i: usize, j: usize) -> &Map {
        &self.hom[i * self.source.len() + j]
    }

    /// Diagrammatic composite `self ; g`.
    pub fn then(&self, g: &VFunctor) -> Result<VFunctor> {
        if self.target != g.source {
            return Err(Error::Composition("functors are not composable".into()));
        }
        let n = self.source.len();
        let mut hom = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                hom.push(self.on_hom(i, j).then(g.on_hom(self.obj[i], self.obj[j]))?);
            }
        }
        VFunctor::new(
            self.source.clone(),
            g.target.clone(),
            self.obj.iter().map(|&o| g.obj[o]).collect(),
            hom,
        )
    }

    /// Checks preservation of identities and composites exhaustively.
    pub fn validate(&self) -> Report {
        let (s, t) = (&self.source, &self.target);
        let n = s.len();
        let lab = |a: usize| s.objects()[a].as_ref();
        let mut r = Report::new();
        for i in 0..n {
            for j in 0..n {
                if let Err(e) = self.on_hom(i, j).validate() {
                    r.fail(format!("hom map ({},{}) is not a map: {e}", lab(i), lab(j)));
                }
            }
        }
        for i in 0..n {
            if self.on_hom(i, i).on_obj(s.ident_obj(i)) != t.ident_obj(self.obj[i]) {
                r.fail(format!("identity of {} is not preserved", lab(i)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y) = (s.hom(i, j), s.hom(j, k));
                    let (gi, gj, gk) = (self.obj[i], self.obj[j], self.obj[k]);
                    for f in 0..x.n_mors() as u32 {
                        for g in 0..y.n_mors() as u32 {
                            let l = self.on_hom(i, k).on_mor(s.comp_mor(i, j, k, f, g));
                            let rr = t.comp_mor(
                                gi,
                                gj,
                                gk,
                                self.on_hom(i, j).on_mor(f),
                                self.on_hom(j, k).on_mor(g),
                            );
                            if l != rr {
                                r.fail(format!(
                                    "composite at ({},{},{}) of `{}`, `{}` is not preserved",
                                    lab(i),
                                    lab(j),
                                    lab(k),
                                    x.mor_label(f),
                                    y.mor_label(g)
                                ));
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// Restriction of a presheaf on the target along this functor.
    pub fn restrict(&self, f: &VPresheaf) -> Result<VPresheaf> {
        if f.base() != &self.target {
            return Err(Error::Validation("presheaf is not on the target".into()));
        }
        let onobj = self.obj.iter().map(|&o| f.at(o).clone()).collect();
        VPresheaf::from_cells(self.source.clone(), onobj, |a, b, h, y| {
            f.act(self.obj[a], self.obj[b], self.on_hom(a, b).on_mor(h), y)
        })
    }
}

/// A `V`-natural transformation between presheaves on one base, by components
/// `ev^α_A : FA → GA`.
#[derive(Clone, Debug, PartialEq)]
pub struct VNat {
    /// Source presheaf.
    pub source: VPresheaf,
    /// Target presheaf.
    pub target: VPresheaf,
    /// Components, one per object.
    pub components: Vec<Map>,
}

impl VNat {
    /// Assembles a transformation; shapes are checked here.
    pub fn new(source: VPresheaf, target: VPresheaf, components: Vec<Map>) -> Result<VNat> {
        if source.base() != target.base() {
            return Err(Error::Validation(
                "transformation between presheaves on different bases".into(),
            ));
        }
        let n = source.base().len();
        if components.len() != n {
            return Err(Error::Validation(
                "transformation needs one component per object".into(),
            ));
        }
        for (a, m) in components.iter().enumerate() {
            if m.dom() != source.at(a) || m.cod() != target.at(a) {
                return Err(Error::Validation(format!(
                    "component at `{}` has the wrong type",
                    source.base().objects()[a]
                )));
            }
        }
        Ok(VNat {
            source,
            target,
            components,
        })
    }

    /// The identity transformation.
    pub fn identity(f: &VPresheaf) -> VNat {
        let comps = (0..f.base().len())
            .map(|a| Map::identity(f.at(a)))
            .collect();
        VNat::new(f.clone(), f.clone(), comps).expect("identity transformation")
    }

    /// Vertical composite `self ; beta`.
    pub fn then(&self, beta: &VNat) -> Result<VNat> {
        if self.target != beta.source {
            return Err(Error::Composition(
                "transformations are not composable".into(),
            ));
        }
        let comps = self
            .components
            .iter()
            .zip(&beta.components)
            .map(|(a, b)| a.then(b))
            .collect::<Result<Vec<_>>>()?;
        VNat::new(self.source.clone(), beta.target.clone(), comps)
    }

    /// Checks the naturality squares exhaustively.
    pub fn validate(&self) -> Report {
        let c = self.source.base();
        let n = c.len();
        let mut r = Report::new();
        for (a, m) in self.components.iter().enumerate() {
            if let Err(e) = m.validate() {
                r.fail(format!("component at {} is not a map: {e}", c.objects()[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (h, fb) = (c.hom(a, b), self.source.at(b));
                for f in 0..h.n_mors() as u32 {
                    for y in 0..fb.n_mors() as u32 {
                        let l = self.components[a].on_mor(self.source.act(a, b, f, y));
                        let rr = self.target.act(a, b, f, self.components[b].on_mor(y));
                        if l != rr {
                            r.fail(format!(
                                "naturality fails at ({},{}) on `{}`, `{}`",
                                c.objects()[a],
                                c.objects()[b],
                                h.mor_label(f),
                                fb.mor_label(y)
                            ));
                        }
                    }
                }
            }
        }
        r
    }

    /// True when every component is an isomorphism.
    pub fn is_iso(&self) -> bool {
        self.components.iter().all(Map::is_iso)
    }
}

/// A `V`-natural transformation between covariant functors `I → V`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoVNat {
    /// Source functor.
    pub source: VCopresheaf,
    /// Target functor.
    pub target: VCopresheaf,
    /// Components, one per object.
    pub components: Vec<Map>,
}

impl CoVNat {
    /// Assembles a transformation; shapes are checked here.
    pub fn new(source: VCopresheaf, target: VCopresheaf, components: Vec<Map>) -> Result<CoVNat> {
        if source.base() != target.base() {
            return Err(Error::Validation(
                "transformation between functors on different bases".into(),
            ));
        }
        let n = source.base().len();
        if components.len() != n {
            return Err(Error::Validation(
                "transformation needs one component per object".into(),
            ));
        }
        for (i, m) in components.iter().enumerate() {
            if m.dom() != source.at(i) || m.cod() != target.at(i) {
                return Err(Error::Validation("component has the wrong type".into()));
            }
        }
        Ok(CoVNat {
            source,
            target,
            components,
        })
    }

    /// Checks the naturality squares `α_j(ev(x, f)) = ev(α_i x, f)` exhaustively.
    pub fn validate(&self) -> Report {
        let c = self.source.base();
        let n = c.len();
        let mut r = Report::new();
        for (i, m) in self.components.iter().enumerate() {
            if let Err(e) = m.validate() {
                r.fail(format!("component at {} is not a map: {e}", c.objects()[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (wi, h) = (self.source.at(i), c.hom(i, j));
                for x in 0..wi.n_mors() as u32 {
                    for f in 0..h.n_mors() as u32 {
                        let l = self.components[j].on_mor(self.source.act(i, j, x, f));
                        let rr = self.target.act(i, j, self.components[i].on_mor(x), f);
                        if l != rr {
                            r.fail(format!(
                                "naturality fails at ({},{}) on `{}`, `{}`",
                                c.objects()[i],
                                c.objects()[j],
                                wi.mor_label(x),
                                h.mor_label(f)
                            ));
                        }
                    }
                }
            }
        }
        r
    }
}

/// The representable presheaf `C(−, c)`, acting by composition.
pub fn representable(cat: &VCategory, c: usize) -> Result<VPresheaf> {
    if c >= cat.len() {
        return Err(Error::Lookup(format!("object #{c}")));
    }
    let onobj = (0..cat.len()).map(|a| cat.hom(a, c).clone()).collect();
    let ev = (0..cat.len())
        .flat_map(|a| (0..cat.len()).map(move |b| (a, b)))
        .map(|(a, b)| cat.comp(a, b, c).clone())
        .collect();
    VPresheaf::new(cat.clone(), onobj, ev)
}

/// The covariant hom functor `C(a, G−) : I → C → V` of a functor `G : I → C`,
/// acting by `(h, f) ↦ c(h, G f)`.
pub fn hom_copresheaf(g: &VFunctor, a: usize) -> Result<VCopresheaf> {
    let c = &g.target;
    if a >= c.len() {
        return Err(Error::Lookup(format!("object #{a}")));
    }
    let onobj = g.obj.iter().map(|&gi| c.hom(a, gi).clone()).collect();
    VCopresheaf::from_cells(g.source.clone(), onobj, |i, j, h, f| {
        c.comp_mor(a, g.obj[i], g.obj[j], h, g.on_hom(i, j).on_mor(f))
    })
}

/// The constant presheaf at `x`.
pub fn constant_presheaf(base: &VCategory, x: &Obj) -> VPresheaf {
    let n = base.len();
    VPresheaf::from_cells(base.clone(), vec![x.clone(); n], |_, _, _, y| y)
        .expect("constant presheaf")
}

/// The pointwise product `F × G` of presheaves on one base.
pub fn product_presheaf(f: &VPresheaf, g: &VPresheaf) -> Result<VPresheaf> {
    if f.base() != g.base() {
        return Err(Error::Validation(
            "product of presheaves on different bases".into(),
        ));
    }
    let n = f.base().len();
    let onobj: Vec<Obj> = (0..n).map(|a| product(f.at(a), g.at(a)).obj).collect();
    let o2 = onobj.clone();
    VPresheaf::from_cells(f.base().clone(), onobj, |a, b, h, y| {
        let p = o2[b].split_mor(y);
        o2[a].join_mor(&[f.act(a, b, h, p[0]), g.act(a, b, h, p[1])])
    })
}

/// The Yoneda transformation `α_x : C(−, c) ⇒ F` of an element `x : ∗ → F c`,
/// with components `ev^F_{A,c} ∘ (id × x)` after `C(A,c) ≅ C(A,c) × ∗`.
pub fn yoneda_nat(f: &VPresheaf, c: usize, x: &Map) -> Result<VNat> {
    let cat = f.base();
    if c >= cat.len() {
        return Err(Error::Lookup(format!("object #{c}")));
    }
    if x.dom() != &cat.cosmos().terminal() || x.cod() != f.at(c) {
        return Err(Error::Validation(
            "element is not a global element of F c".into(),
        ));
    }
    let rep = representable(cat, c)?;
    let comps = (0..cat.len())
        .map(|a| {
            let h = cat.hom(a, c);
            let pair = crate::cosmos::product_map(&Map::identity(h), x);
            unit_right(h).then(&pair)?.then(f.ev(a, c))
        })
        .collect::<Result<Vec<_>>>()?;
    VNat::new(rep, f.clone(), comps)
}

/// Whether `F` is represented by the element `x ∈ F c`.
pub fn is_representable_by(f: &VPresheaf, c: usize, x: &Map) -> Result<bool> {
    Ok(yoneda_nat(f, c, x)?.is_iso())
}

/// An element `(c, x)` of a presheaf: an object and a global element of `F c`.
#[derive(Clone, Debug, PartialEq)]
pub struct EnrichedElement {
    /// The object.
    pub object: usize,
    /// The point `x : ∗ → F c`.
    pub point: Map,
}

/// All representing elements of `F`, in order of objects and then points.
pub fn find_representations(f: &VPresheaf) -> Vec<EnrichedElement> {
    let mut out = Vec::new();
    for c in 0..f.base().len() {
        for x in crate::cosmos::global_elements(f.at(c)) {
            if is_representable_by(f, c, &x).unwrap_or(false) {
                out.push(EnrichedElement {
                    object: c,
                    point: x,
                });
            }
        }
    }
    out
}
