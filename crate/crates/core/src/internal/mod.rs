//! Category objects in `V` (double categories when `V` is finite
//! categories): internal functors, `cst`, `Int` and `Und`, internal homs,
//! slices and commas, discrete fibrations, terminal objects, and cone
//! categories with internal limits and colimits.

mod category;
mod cones;
mod fibration;
mod hom;
mod intc;
mod slice;

pub use category::{pullback_internal, InternalCategory, InternalFunctor, InternalPullback};
pub use cones::{
    cocone_category, compute_internal_colimit, cone_category, is_internal_colimit,
    is_internal_limit, Cone, ConeCategory, ConeKind,
};
pub use fibration::{
    composable_square_is_pullback, fibration_with_fibers, is_discrete_fibration,
    is_discrete_opfibration, Fibers, FibrationPacket, Variance,
};
pub use hom::{
    arrow_hom, arrow_object, hom_cst, internal_functors, internal_hom, post_compose, ArrowObject,
    FunctorCells, HomCst, InternalHom, TransformationCells,
};
pub use intc::{
    internalize, internalize_functor, transpose_to_internal, transpose_to_vfunctor, underlying,
    Internalization, Underlying,
};
pub use slice::{
    cocomma, comma, coslice, is_internal_initial, is_internal_terminal, is_v_initial,
    is_v_terminal, slice, ArrowComma, Comma,
};

use crate::cosmos::{Builder, Cosmos, Obj};

/// Tabulates an explicit object from enumerated cells, composing by `comp`.
pub(crate) fn tabulate(
    cosmos: Cosmos,
    objs: Vec<String>,
    mors: Vec<(String, u32, u32)>,
    ident: Vec<u32>,
    comp: impl Fn(u32, u32) -> u32,
) -> Obj {
    let mut b = Builder::new(cosmos);
    for l in objs {
        b.obj(l);
    }
    if cosmos == Cosmos::FinCat {
        let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); ident.len()];
        let mut tgts = Vec::with_capacity(mors.len());
        for (k, (l, s, t)) in mors.into_iter().enumerate() {
            b.mor(l, s, t);
            by_src[s as usize].push(k as u32);
            tgts.push(t);
        }
        for (f, &t) in tgts.iter().enumerate() {
            for &g in &by_src[t as usize] {
                b.set_comp(f as u32, g, comp(f as u32, g));
            }
        }
        b.set_ident(ident);
    }
    b.finish()
}
