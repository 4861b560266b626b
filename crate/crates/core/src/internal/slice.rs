//! Slices, coslices, commas and cocommas, and the internal and enriched
//! terminal-object tests built on them.

use crate::cosmos::{pullback, subobject, Map};
use crate::enriched::VCategory;
use crate::error::{Error, Result};

use super::category::{pullback_internal, InternalCategory, InternalFunctor, InternalPullback};
use super::hom::arrow_object;

/// A comma-shaped internal category with its projection to the base.
#[derive(Clone, Debug)]
pub struct Comma {
    /// The internal category.
    pub cat: InternalCategory,
    /// The projection onto the first factor.
    pub projection: InternalFunctor,
    /// The pullback square it was built from.
    pub square: InternalPullback,
}

/// The slice `A/T`: arrows into `T`, as the pullback of the codomain
/// projection of the arrow object along the element `T`.
pub fn slice(a: &InternalCategory, t: u32) -> Result<Comma> {
    let arr = arrow_object(a)?;
    let square = pullback_internal(&arr.cod, &InternalFunctor::element(a, t))?;
    let projection = square.leg0.then(&arr.dom)?;
    Ok(Comma {
        cat: square.cat.clone(),
        projection,
        square,
    })
}

/// The coslice `T/A`: arrows out of `T`, projected to their targets.
pub fn coslice(a: &InternalCategory, t: u32) -> Result<Comma> {
    let arr = arrow_object(a)?;
    let square = pullback_internal(&arr.dom, &InternalFunctor::element(a, t))?;
    let projection = square.leg0.then(&arr.cod)?;
    Ok(Comma {
        cat: square.cat.clone(),
        projection,
        square,
    })
}

/// A comma `H↓b` or cocomma `b↓H`, built from pairs `(A, y)` with `y` an
/// arrow between `H A` and `b`.
#[derive(Clone, Debug)]
pub struct ArrowComma {
    /// The internal category.
    pub cat: InternalCategory,
    /// The projection onto the source of `H`.
    pub projection: InternalFunctor,
    /// The arrow `y` of each level-0 cell, as a cell of `B1`.
    pub arrow0: Map,
    /// The arrow carried by each level-1 cell `(f, y)`, as a cell of `B1`.
    pub arrow1: Map,
}

fn arrow_comma(h: &InternalFunctor, b: u32, into: bool) -> Result<ArrowComma> {
    let (a, bb) = (&h.source, &h.target);
    if b as usize >= bb.a0().n_objs() {
        return Err(Error::Lookup(format!("object cell #{b}")));
    }
    let one = bb.a0().ident(b);
    let (fixed, free) = if into {
        (bb.t(), bb.s())
    } else {
        (bb.s(), bb.t())
    };
    let arrows = subobject(
        bb.a1(),
        |f| fixed.on_obj(f) == b,
        |m| fixed.on_mor(m) == one,
    );
    let ends = arrows.incl.then(free)?;
    let p0 = pullback(&h.h0, &ends)?;
    // A morphism `(f, y)` meets `y` at the far end of `H f` for a comma and at the near end for a cocomma.
    let meet = if into {
        h.h1.then(bb.t())?
    } else {
        h.h1.then(bb.s())?
    };
    let q = pullback(&meet, &ends)?;
    let b2 = bb.composable();
    let y1 = q.p1.then(&arrows.incl)?;
    let hf = q.p0.then(&h.h1)?;
    let moved = if into {
        b2.induce(&hf, &y1)?
    } else {
        b2.induce(&y1, &hf)?
    };
    let moved = arrows.restrict(&moved.then(bb.c())?)?;
    let (s1, t1) = if into {
        (
            p0.induce(&q.p0.then(a.s())?, &moved)?,
            p0.induce(&q.p0.then(a.t())?, &q.p1)?,
        )
    } else {
        (
            p0.induce(&q.p0.then(a.s())?, &q.p1)?,
            p0.induce(&q.p0.then(a.t())?, &moved)?,
        )
    };
    let i = q.induce(&p0.p0.then(a.i())?, &p0.p1)?;
    let qq = q.clone();
    let cat =
        InternalCategory::from_cells(p0.obj().clone(), q.obj().clone(), s1, t1, i, move |x, y| {
            let f = a
                .compose_mor(qq.p0.on_mor(x), qq.p0.on_mor(y))
                .expect("composable in the source");
            let kept = if into {
                qq.p1.on_mor(y)
            } else {
                qq.p1.on_mor(x)
            };
            qq.pair_mor(f, kept).expect("composite lies in the comma")
        })?;
    let projection = InternalFunctor::new(cat.clone(), a.clone(), p0.p0.clone(), q.p0.clone())?;
    Ok(ArrowComma {
        cat,
        projection,
        arrow0: p0.p1.then(&arrows.incl)?,
        arrow1: y1,
    })
}

/// The comma `H↓b` of `H : A → B` over an element `b` of `B`: objects are
/// `(A, y : H A → b)` and a morphism `(f, y)` runs from `(A, H f ; y)` to `(A', y)`.
pub fn comma(h: &InternalFunctor, b: u32) -> Result<ArrowComma> {
    arrow_comma(h, b, true)
}

/// The cocomma `b↓H`: objects are `(A, y : b → H A)` and a morphism
/// `(f, y)` runs from `(A, y)` to `(A', y ; H f)`.
pub fn cocomma(h: &InternalFunctor, b: u32) -> Result<ArrowComma> {
    arrow_comma(h, b, false)
}

/// `T` is internal terminal when the slice projection `A/T → A` is an
/// isomorphism at both levels.
pub fn is_internal_terminal(a: &InternalCategory, t: u32) -> Result<bool> {
    Ok(slice(a, t)?.projection.is_iso())
}

/// `T` is internal initial when the coslice projection `T/A → A` is an
/// isomorphism at both levels.
pub fn is_internal_initial(a: &InternalCategory, t: u32) -> Result<bool> {
    Ok(coslice(a, t)?.projection.is_iso())
}

/// `t` is `V`-terminal when every hom-object `C(A, t)` is a point.
pub fn is_v_terminal(c: &VCategory, t: usize) -> bool {
    (0..c.len()).all(|a| {
        let h = c.hom(a, t);
        h.n_objs() == 1 && h.n_mors() == 1
    })
}

/// `t` is `V`-initial when every hom-object `C(t, A)` is a point.
pub fn is_v_initial(c: &VCategory, t: usize) -> bool {
    (0..c.len()).all(|a| {
        let h = c.hom(t, a);
        h.n_objs() == 1 && h.n_mors() == 1
    })
}
