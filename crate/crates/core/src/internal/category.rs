//! Category objects in `V` and internal functors between them.

use std::sync::Arc;

use crate::cosmos::{pullback, Cosmos, Map, Obj, Pullback};
use crate::error::{Error, Result};
use crate::report::Report;

struct Inner {
    a0: Obj,
    a1: Obj,
    s: Map,
    t: Map,
    i: Map,
    composable: Pullback,
    c: Map,
}

/// An internal category `A = (A0, A1, s, t, i, c)` in `V`.
///
/// The composable pairs `A1 ×_{A0} A1` are the canonical pullback of
/// `t` along `s`: a pair `(f, g)` composes to `c(f, g)`, "first `f`, then `g`".
/// Cheap to clone.
#[derive(Clone)]
pub struct InternalCategory(Arc<Inner>);

impl std::fmt::Debug for InternalCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InternalCategory({:?}, {:?})", self.0.a0, self.0.a1)
    }
}

impl InternalCategory {
    /// Assembles an internal category. Shapes are checked here; the axioms
    /// by [`InternalCategory::validate`].
    pub fn new(a0: Obj, a1: Obj, s: Map, t: Map, i: Map, c: Map) -> Result<InternalCategory> {
        let composable = shape_check(&a0, &a1, &s, &t, &i)?;
        if c.dom() != composable.obj() || c.cod() != &a1 {
            return Err(Error::Validation(
                "composition is not defined on the composable pairs".into(),
            ));
        }
        Ok(InternalCategory(Arc::new(Inner {
            a0,
            a1,
            s,
            t,
            i,
            composable,
            c,
        })))
    }

    /// Assembles an internal category from its composition on morphism cells
    /// of `A1`: `comp(f, g)` for `t(f) = s(g)` cellwise.
    pub fn from_cells(
        a0: Obj,
        a1: Obj,
        s: Map,
        t: Map,
        i: Map,
        comp: impl Fn(u32, u32) -> u32,
    ) -> Result<InternalCategory> {
        let composable = shape_check(&a0, &a1, &s, &t, &i)?;
        let pb = &composable;
        let amb = pb.sub.incl.clone();
        let prod = amb.cod().clone();
        let c = Map::from_fns(
            pb.obj().clone(),
            a1.clone(),
            |k| {
                let p = prod.split_obj(amb.on_obj(k));
                a1.src(comp(a1.ident(p[0]), a1.ident(p[1])))
            },
            |k| {
                let p = prod.split_mor(amb.on_mor(k));
                comp(p[0], p[1])
            },
        );
        Ok(InternalCategory(Arc::new(Inner {
            a0,
            a1,
            s,
            t,
            i,
            composable,
            c,
        })))
    }

    /// Object of objects.
    pub fn a0(&self) -> &Obj {
        &self.0.a0
    }

    /// Object of morphisms.
    pub fn a1(&self) -> &Obj {
        &self.0.a1
    }

    /// Source map.
    pub fn s(&self) -> &Map {
        &self.0.s
    }

    /// Target map.
    pub fn t(&self) -> &Map {
        &self.0.t
    }

    /// Identity map.
    pub fn i(&self) -> &Map {
        &self.0.i
    }

    /// Composition map on the composable pairs.
    pub fn c(&self) -> &Map {
        &self.0.c
    }

    /// The cached composable pairs `A1 ×_{A0} A1`.
    pub fn composable(&self) -> &Pullback {
        &self.0.composable
    }

    /// The cosmos.
    pub fn cosmos(&self) -> Cosmos {
        self.0.a0.cosmos()
    }

    /// Composite of morphism cells `f`, `g` of `A1`, if composable.
    pub fn compose_mor(&self, f: u32, g: u32) -> Option<u32> {
        self.0.composable.pair_mor(f, g).map(|k| self.0.c.on_mor(k))
    }

    /// Composite of object cells `f`, `g` of `A1`, if composable.
    pub fn compose_obj(&self, f: u32, g: u32) -> Option<u32> {
        self.0.composable.pair_obj(f, g).map(|k| self.0.c.on_obj(k))
    }

    /// Checks the category axioms cell by cell: boundaries of identities and
    /// composites, unitality and associativity.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (name, m) in [
            ("source", self.s()),
            ("target", self.t()),
            ("identity", self.i()),
            ("composition", self.c()),
        ] {
            if let Err(e) = m.validate() {
                r.fail(format!("{name} is not a map: {e}"));
            }
        }
        if !r.is_valid() {
            return r;
        }
        let (a0, a1) = (self.a0(), self.a1());
        let (s, t, i) = (self.s(), self.t(), self.i());
        for x in 0..a0.n_mors() as u32 {
            if s.on_mor(i.on_mor(x)) != x || t.on_mor(i.on_mor(x)) != x {
                r.fail(format!(
                    "identity on `{}` has the wrong boundary",
                    a0.mor_label(x)
                ));
            }
        }
        let pb = self.composable();
        for k in 0..pb.obj().n_mors() as u32 {
            let (f, g) = (pb.p0.on_mor(k), pb.p1.on_mor(k));
            let h = self.c().on_mor(k);
            if s.on_mor(h) != s.on_mor(f) || t.on_mor(h) != t.on_mor(g) {
                r.fail(format!(
                    "composite of `{}`, `{}` has the wrong boundary",
                    a1.mor_label(f),
                    a1.mor_label(g)
                ));
            }
        }
        for f in 0..a1.n_mors() as u32 {
            let l = self.compose_mor(i.on_mor(s.on_mor(f)), f);
            let rr = self.compose_mor(f, i.on_mor(t.on_mor(f)));
            if l != Some(f) || rr != Some(f) {
                r.fail(format!("unit law fails on `{}`", a1.mor_label(f)));
            }
        }
        let by_src = cells_by(a1, a0, s);
        for k in 0..pb.obj().n_mors() as u32 {
            let (f, g) = (pb.p0.on_mor(k), pb.p1.on_mor(k));
            let fg = self.c().on_mor(k);
            for &h in &by_src[t.on_mor(g) as usize] {
                let l = self.compose_mor(fg, h);
                let rr = self
                    .compose_mor(g, h)
                    .and_then(|gh| self.compose_mor(f, gh));
                if l.is_none() || l != rr {
                    r.fail(format!(
                        "associativity fails on `{}`, `{}`, `{}`",
                        a1.mor_label(f),
                        a1.mor_label(g),
                        a1.mor_label(h)
                    ));
                }
            }
        }
        r
    }

    /// Morphism cells of `A1` grouped by their source cell in `A0`.
    pub fn morphisms_by_source(&self) -> Vec<Vec<u32>> {
        cells_by(self.a1(), self.a0(), self.s())
    }

    /// Morphism cells of `A1` grouped by their target cell in `A0`.
    pub fn morphisms_by_target(&self) -> Vec<Vec<u32>> {
        cells_by(self.a1(), self.a0(), self.t())
    }

    /// The constant internal category `cst X`: all structure maps are identities.
    pub fn cst(x: &Obj) -> InternalCategory {
        let id = Map::identity(x);
        InternalCategory::from_cells(x.clone(), x.clone(), id.clone(), id.clone(), id, |f, _| f)
            .expect("constant internal category")
    }

    /// The terminal internal category `cst ∗`.
    pub fn terminal(cosmos: Cosmos) -> InternalCategory {
        InternalCategory::cst(&cosmos.terminal())
    }

    /// Pointer identity.
    pub fn same(&self, other: &InternalCategory) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for InternalCategory {
    fn eq(&self, other: &InternalCategory) -> bool {
        self.same(other)
            || (self.0.a0 == other.0.a0
                && self.0.a1 == other.0.a1
                && self.0.s == other.0.s
                && self.0.t == other.0.t
                && self.0.i == other.0.i
                && self.0.c == other.0.c)
    }
}

fn cells_by(a1: &Obj, a0: &Obj, m: &Map) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); a0.n_mors()];
    for f in 0..a1.n_mors() as u32 {
        out[m.on_mor(f) as usize].push(f);
    }
    out
}

fn shape_check(a0: &Obj, a1: &Obj, s: &Map, t: &Map, i: &Map) -> Result<Pullback> {
    if a0.cosmos() != a1.cosmos() {
        return Err(Error::Validation(
            "levels live in different cosmoses".into(),
        ));
    }
    for (name, m, d, c) in [
        ("source", s, a1, a0),
        ("target", t, a1, a0),
        ("identity", i, a0, a1),
    ] {
        if m.dom() != d || m.cod() != c {
            return Err(Error::Validation(format!("{name} map has the wrong type")));
        }
    }
    pullback(t, s)
}

/// An internal functor `H = (H0, H1) : A → B`.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalFunctor {
    /// Source internal category.
    pub source: InternalCategory,
    /// Target internal category.
    pub target: InternalCategory,
    /// Map on objects.
    pub h0: Map,
    /// Map on morphisms.
    pub h1: Map,
}

impl InternalFunctor {
    /// Assembles an internal functor; shapes are checked here.
    pub fn new(
        source: InternalCategory,
        target: InternalCategory,
        h0: Map,
        h1: Map,
    ) -> Result<InternalFunctor> {
        if h0.dom() != source.a0()
            || h0.cod() != target.a0()
            || h1.dom() != source.a1()
            || h1.cod() != target.a1()
        {
            return Err(Error::Validation(
                "internal functor components have the wrong type".into(),
            ));
        }
        Ok(InternalFunctor {
            source,
            target,
            h0,
            h1,
        })
    }

    /// The identity internal functor.
    pub fn identity(a: &InternalCategory) -> InternalFunctor {
        InternalFunctor {
            source: a.clone(),
            target: a.clone(),
            h0: Map::identity(a.a0()),
            h1: Map::identity(a.a1()),
        }
    }

    /// The internal functor `cst ∗ → A` at object `x` of `A0`.
    pub fn element(a: &InternalCategory, x: u32) -> InternalFunctor {
        let t = InternalCategory::terminal(a.cosmos());
        let h0 = Map::point(a.a0(), x);
        let h1 = Map::point(a.a1(), a.i().on_obj(x));
        InternalFunctor {
            source: t,
            target: a.clone(),
            h0,
            h1,
        }
    }

    /// The unique internal functor `A → cst ∗`.
    pub fn to_terminal(a: &InternalCategory) -> InternalFunctor {
        let t = InternalCategory::terminal(a.cosmos());
        InternalFunctor {
            source: a.clone(),
            target: t,
            h0: Map::to_terminal(a.a0()),
            h1: Map::to_terminal(a.a1()),
        }
    }

    /// Diagrammatic composite `self ; k`.
    pub fn then(&self, k: &InternalFunctor) -> Result<InternalFunctor> {
        if self.target != k.source {
            return Err(Error::Composition(
                "internal functors are not composable".into(),
            ));
        }
        Ok(InternalFunctor {
            source: self.source.clone(),
            target: k.target.clone(),
            h0: self.h0.then(&k.h0)?,
            h1: self.h1.then(&k.h1)?,
        })
    }

    /// Checks that `H0`, `H1` are maps and that the four squares commute.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (name, m) in [("object map", &self.h0), ("morphism map", &self.h1)] {
            if let Err(e) = m.validate() {
                r.fail(format!("{name} is not a map: {e}"));
            }
        }
        if !r.is_valid() {
            return r;
        }
        let (a, b) = (&self.source, &self.target);
        for f in 0..a.a1().n_mors() as u32 {
            let hf = self.h1.on_mor(f);
            if b.s().on_mor(hf) != self.h0.on_mor(a.s().on_mor(f)) {
                r.fail(format!("source square fails on `{}`", a.a1().mor_label(f)));
            }
            if b.t().on_mor(hf) != self.h0.on_mor(a.t().on_mor(f)) {
                r.fail(format!("target square fails on `{}`", a.a1().mor_label(f)));
            }
        }
        for x in 0..a.a0().n_mors() as u32 {
            if self.h1.on_mor(a.i().on_mor(x)) != b.i().on_mor(self.h0.on_mor(x)) {
                r.fail(format!(
                    "identity square fails on `{}`",
                    a.a0().mor_label(x)
                ));
            }
        }
        let pb = a.composable();
        for k in 0..pb.obj().n_mors() as u32 {
            let (f, g) = (pb.p0.on_mor(k), pb.p1.on_mor(k));
            let l = self.h1.on_mor(a.c().on_mor(k));
            if b.compose_mor(self.h1.on_mor(f), self.h1.on_mor(g)) != Some(l) {
                r.fail(format!(
                    "composition square fails on `{}`, `{}`",
                    a.a1().mor_label(f),
                    a.a1().mor_label(g)
                ));
            }
        }
        r
    }

    /// Strict isomorphism: both levels are isomorphisms in `V`.
    pub fn is_iso(&self) -> bool {
        self.h0.is_iso() && self.h1.is_iso()
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Result<InternalFunctor> {
        Ok(InternalFunctor {
            source: self.target.clone(),
            target: self.source.clone(),
            h0: self.h0.inverse()?,
            h1: self.h1.inverse()?,
        })
    }
}

/// Levelwise pullback of a cospan of internal functors, with its two legs.
#[derive(Clone, Debug)]
pub struct InternalPullback {
    /// The pullback internal category.
    pub cat: InternalCategory,
    /// Leg to the source of the first functor.
    pub leg0: InternalFunctor,
    /// Leg to the source of the second functor.
    pub leg1: InternalFunctor,
    /// The level-0 pullback.
    pub level0: Pullback,
    /// The level-1 pullback.
    pub level1: Pullback,
}

/// The pullback of `h : A → C` and `k : B → C`, computed levelwise; the
/// structure maps are the mediators of the levelwise cones.
pub fn pullback_internal(h: &InternalFunctor, k: &InternalFunctor) -> Result<InternalPullback> {
    if h.target != k.target {
        return Err(Error::Composition(
            "internal functors have different targets".into(),
        ));
    }
    let (a, b) = (&h.source, &k.source);
    let p0 = pullback(&h.h0, &k.h0)?;
    let p1 = pullback(&h.h1, &k.h1)?;
    let s = p0.induce(&p1.p0.then(a.s())?, &p1.p1.then(b.s())?)?;
    let t = p0.induce(&p1.p0.then(a.t())?, &p1.p1.then(b.t())?)?;
    let i = p1.induce(&p0.p0.then(a.i())?, &p0.p1.then(b.i())?)?;
    let (q0, q1) = (p1.p0.clone(), p1.p1.clone());
    let pb1 = p1.clone();
    let cat =
        InternalCategory::from_cells(p0.obj().clone(), p1.obj().clone(), s, t, i, move |f, g| {
            let x = a
                .compose_mor(q0.on_mor(f), q0.on_mor(g))
                .expect("composable in A");
            let y = b
                .compose_mor(q1.on_mor(f), q1.on_mor(g))
                .expect("composable in B");
            pb1.pair_mor(x, y).expect("composite lies in the pullback")
        })?;
    let leg0 = InternalFunctor::new(cat.clone(), a.clone(), p0.p0.clone(), p1.p0.clone())?;
    let leg1 = InternalFunctor::new(cat.clone(), b.clone(), p0.p1.clone(), p1.p1.clone())?;
    Ok(InternalPullback {
        cat,
        leg0,
        leg1,
        level0: p0,
        level1: p1,
    })
}
