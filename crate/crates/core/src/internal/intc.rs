//! Internalization `Int C` of a `V`-category, the underlying `V`-category
//! `Und A` of an internal category, and the transpose bijection between
//! internal functors `Int C → A` and `V`-functors `C → Und A`.

use crate::cosmos::{coproduct, indexed_coproduct_map, subobject, Map, Sub, TaggedCoproduct};
use crate::enriched::{VCategory, VFunctor};
use crate::error::{Error, Result};

use super::category::{InternalCategory, InternalFunctor};

/// `Int C` together with the coproduct tagging of both levels.
#[derive(Clone, Debug)]
pub struct Internalization {
    /// The `V`-category `C`.
    pub vcat: VCategory,
    /// The internal category `Int C`.
    pub cat: InternalCategory,
    /// Level 0, `⊔_A ∗`, tagged by object labels.
    pub objects: TaggedCoproduct,
    /// Level 1, `⊔_{A,B} C(A,B)`, summand `a * n + b` tagged `"A,B"`.
    pub homs: TaggedCoproduct,
}

impl Internalization {
    /// Index of the summand `C(a, b)` in level 1.
    pub fn hom_index(&self, a: usize, b: usize) -> usize {
        a * self.vcat.len() + b
    }

    /// The level-0 cell of object `a`.
    pub fn object_cell(&self, a: usize) -> u32 {
        self.objects.inject_obj(a, 0)
    }

    /// The object of `C` a level-0 cell belongs to.
    pub fn object_of(&self, x: u32) -> usize {
        self.objects.locate_obj(x).0
    }

    /// Splits a level-1 morphism cell into `(a, b, cell of C(a,b))`.
    pub fn locate_hom_mor(&self, m: u32) -> (usize, usize, u32) {
        let (k, l) = self.homs.locate_mor(m);
        let n = self.vcat.len();
        (k / n, k % n, l)
    }

    /// Splits a level-1 object cell into `(a, b, object of C(a,b))`.
    pub fn locate_hom_obj(&self, o: u32) -> (usize, usize, u32) {
        let (k, l) = self.homs.locate_obj(o);
        let n = self.vcat.len();
        (k / n, k % n, l)
    }
}

/// Builds `Int C`: objects `⊔_A ∗`, morphisms `⊔_{A,B} C(A,B)`, with source
/// and target the indexed coproduct maps over the two projections, identity
/// from `i_A`, and composition from `c_{A,B,C}`.
pub fn internalize(c: &VCategory) -> Result<Internalization> {
    let cosmos = c.cosmos();
    let n = c.len();
    let objects = coproduct(
        cosmos,
        c.objects()
            .iter()
            .map(|l| (l.clone(), cosmos.terminal()))
            .collect(),
    );
    let mut fam = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            fam.push((
                format!("{},{}", c.objects()[a], c.objects()[b]).into(),
                c.hom(a, b).clone(),
            ));
        }
    }
    let homs = coproduct(cosmos, fam);
    let to_pt: Vec<Map> = homs.summands.iter().map(Map::to_terminal).collect();
    let src_idx: Vec<usize> = (0..n * n).map(|k| k / n).collect();
    let tgt_idx: Vec<usize> = (0..n * n).map(|k| k % n).collect();
    let s = indexed_coproduct_map(&homs, &objects, &src_idx, &to_pt)?;
    let t = indexed_coproduct_map(&homs, &objects, &tgt_idx, &to_pt)?;
    let diag: Vec<usize> = (0..n).map(|a| a * n + a).collect();
    let ids: Vec<Map> = (0..n).map(|a| c.ident(a).clone()).collect();
    let i = indexed_coproduct_map(&objects, &homs, &diag, &ids)?;
    let h = homs.clone();
    let vc = c.clone();
    let cat = InternalCategory::from_cells(
        objects.total.clone(),
        homs.total.clone(),
        s,
        t,
        i,
        move |f, g| {
            let (k0, x) = h.locate_mor(f);
            let (k1, y) = h.locate_mor(g);
            let (a, b, cc) = (k0 / n, k0 % n, k1 % n);
            h.inject_mor(a * n + cc, vc.comp_mor(a, b, cc, x, y))
        },
    )?;
    Ok(Internalization {
        vcat: c.clone(),
        cat,
        objects,
        homs,
    })
}

/// `Und A` together with the hom-object inclusions into `A1`.
#[derive(Clone, Debug)]
pub struct Underlying {
    /// The internal category `A`.
    pub source: InternalCategory,
    /// The `V`-category `Und A`; its objects are the global elements of `A0`.
    pub vcat: VCategory,
    /// `Und A(a, b)` as a subobject of `A1`, at index `a * n + b`.
    pub homs: Vec<Sub>,
}

impl Underlying {
    /// The hom-object inclusion `Und A(a, b) ↪ A1`.
    pub fn hom_sub(&self, a: usize, b: usize) -> &Sub {
        &self.homs[a * self.vcat.len() + b]
    }
}

/// Builds `Und A`. The hom-object `Und A(a, b)` is the fiber of `(s, t)`
/// over `(a, b)`; composition and identities are restrictions of `c` and `i`.
pub fn underlying(a: &InternalCategory) -> Result<Underlying> {
    let (a0, a1) = (a.a0(), a.a1());
    let n = a0.n_objs();
    let (s, t) = (a.s(), a.t());
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n as u32 {
        let ix = a0.ident(x);
        for y in 0..n as u32 {
            let iy = a0.ident(y);
            homs.push(subobject(
                a1,
                |f| s.on_obj(f) == x && t.on_obj(f) == y,
                |m| s.on_mor(m) == ix && t.on_mor(m) == iy,
            ));
        }
    }
    let objects = (0..n as u32)
        .map(|x| a0.obj_label(x).as_ref().into())
        .collect();
    let hom_objs = homs.iter().map(|h| h.obj.clone()).collect();
    let hs = &homs;
    let vcat = VCategory::from_cells(
        a.cosmos(),
        objects,
        hom_objs,
        |p, q, r, f, g| {
            let (f, g) = (hs[p * n + q].incl.on_mor(f), hs[q * n + r].incl.on_mor(g));
            let h = a.compose_mor(f, g).expect("composable");
            hs[p * n + r]
                .locate_mor(h)
                .expect("composite has the right boundary")
        },
        |p| {
            hs[p * n + p]
                .locate_obj(a.i().on_obj(p as u32))
                .expect("identity has the right boundary")
        },
    )?;
    Ok(Underlying {
        source: a.clone(),
        vcat,
        homs,
    })
}

/// Transposes an internal functor `H : Int C → A` to the `V`-functor
/// `C → Und A` sending `A` to `H0(A)` and acting on homs by the corestriction of `H1`.
pub fn transpose_to_vfunctor(
    int: &Internalization,
    h: &InternalFunctor,
    und: &Underlying,
) -> Result<VFunctor> {
    if h.source != int.cat || h.target != und.source {
        return Err(Error::Validation(
            "transpose needs a functor out of Int C into A".into(),
        ));
    }
    let n = int.vcat.len();
    let obj: Vec<usize> = (0..n)
        .map(|a| h.h0.on_obj(int.object_cell(a)) as usize)
        .collect();
    let mut hom = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let k = int.hom_index(a, b);
            let sub = und.hom_sub(obj[a], obj[b]);
            let through = int.homs.injection(k).then(&h.h1)?;
            hom.push(sub.restrict(&through)?);
        }
    }
    VFunctor::new(int.vcat.clone(), und.vcat.clone(), obj, hom)
}

/// Transposes a `V`-functor `F : C → Und A` back to `Int C → A`: `H0` is the
/// copairing of the points `F(A)`, `H1` the copairing of `F_{A,B}` followed by
/// the hom-object inclusions.
pub fn transpose_to_internal(
    int: &Internalization,
    f: &VFunctor,
    und: &Underlying,
) -> Result<InternalFunctor> {
    if f.source != int.vcat || f.target != und.vcat {
        return Err(Error::Validation(
            "transpose needs a V-functor from C into Und A".into(),
        ));
    }
    let a = &und.source;
    let n = int.vcat.len();
    let points: Vec<Map> = (0..n)
        .map(|x| Map::point(a.a0(), f.obj[x] as u32))
        .collect();
    let h0 = int.objects.copair_into(a.a0(), &points)?;
    let mut comps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            comps.push(f.on_hom(x, y).then(&und.hom_sub(f.obj[x], f.obj[y]).incl)?);
        }
    }
    let h1 = int.homs.copair_into(a.a1(), &comps)?;
    InternalFunctor::new(int.cat.clone(), a.clone(), h0, h1)
}

/// `Int F : Int C → Int D` for a `V`-functor `F : C → D`: level 0 sends the
/// summand of `A` to the summand of `FA`, level 1 acts by `F_{A,B}`.
pub fn internalize_functor(
    f: &VFunctor,
    src: &Internalization,
    tgt: &Internalization,
) -> Result<InternalFunctor> {
    if f.source != src.vcat || f.target != tgt.vcat {
        return Err(Error::Validation(
            "internalizations do not match the functor".into(),
        ));
    }
    let n = src.vcat.len();
    let to_pt: Vec<Map> = src.objects.summands.iter().map(Map::identity).collect();
    let h0 = indexed_coproduct_map(&src.objects, &tgt.objects, &f.obj, &to_pt)?;
    let alpha: Vec<usize> = (0..n * n)
        .map(|k| tgt.hom_index(f.obj[k / n], f.obj[k % n]))
        .collect();
    let h1 = indexed_coproduct_map(&src.homs, &tgt.homs, &alpha, &f.hom)?;
    InternalFunctor::new(src.cat.clone(), tgt.cat.clone(), h0, h1)
}
