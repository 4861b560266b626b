//! The three shipped fixtures, built directly in code. The CLI ships the
//! same instances as JSON documents; its tests check that both agree.

use std::collections::HashMap;

use intcat_core::cosmos::{Cosmos, Label, Map, Obj};
use intcat_core::enriched::{representable, VCategory, VCopresheaf, VFunctor, VPresheaf};
use intcat_core::internal::InternalCategory;

use crate::generate::poset;

fn set(labels: &[&str]) -> Obj {
    Obj::set(labels.iter().map(|&l| Label::from(l)).collect()).expect("distinct labels")
}

/// The walking arrow `0 → 1` over finite sets, a representable presheaf and
/// a presheaf that collapses two elements.
#[derive(Clone, Debug)]
pub struct P1 {
    /// The `V`-category `𝟚`.
    pub cat: VCategory,
    /// `F0 = 𝟚(−, 1)`.
    pub f0: VPresheaf,
    /// `F1` with `F1(0) = {c}`, `F1(1) = {a, b}`, both elements restricting to `c`.
    pub f1: VPresheaf,
    /// The identity of `1`, as an element of `F0(1)`.
    pub x0: Map,
}

/// Builds fixture P1.
pub fn p1() -> P1 {
    let cat = VCategory::arrow(Cosmos::FinSet);
    let f0 = representable(&cat, 1).expect("representable");
    let f1 = VPresheaf::from_cells(
        cat.clone(),
        vec![set(&["c"]), set(&["a", "b"])],
        |a, b, _, y| {
            if a == b {
                y
            } else {
                0
            }
        },
    )
    .expect("collapsing presheaf");
    let x0 = Map::point(f0.at(1), cat.ident_obj(1));
    P1 { cat, f0, f1, x0 }
}

/// The one-object category whose non-identity arrow is idempotent.
pub fn idempotent_monoid() -> Obj {
    let comp = HashMap::from([((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
    Obj::category(
        vec!["o".into()],
        vec![("1".into(), 0, 0), ("v".into(), 0, 0)],
        vec![0],
        comp,
    )
    .expect("idempotent monoid")
}

/// The constant double category on the idempotent monoid: its only object
/// is `V`-terminal in the underlying `V`-category but not internally terminal.
#[derive(Clone, Debug)]
pub struct P2 {
    /// `cst D` for the idempotent monoid `D`.
    pub cat: InternalCategory,
    /// The candidate terminal object, a cell of level 0.
    pub terminal: u32,
}

/// Builds fixture P2.
pub fn p2() -> P2 {
    P2 {
        cat: InternalCategory::cst(&idempotent_monoid()),
        terminal: 0,
    }
}

/// The chain `0 < 1 < 2` over finite sets, the weight `{u, w}` on the unit
/// shape and the diagram picking `1`.
#[derive(Clone, Debug)]
pub struct P3 {
    /// The chain.
    pub cat: VCategory,
    /// The weight, constant at a two-element set.
    pub weight: VCopresheaf,
    /// The diagram `𝟙 → C` at the middle object.
    pub diagram: VFunctor,
    /// The candidate that is a weighted limit.
    pub candidate: usize,
    /// The top object, which carries no cones.
    pub top: usize,
}

/// Builds fixture P3.
pub fn p3() -> P3 {
    let cat = VCategory::from_category(Cosmos::FinSet, &poset(3, |i, j| i <= j)).expect("chain");
    let weight = VCopresheaf::constant(VCategory::unit(Cosmos::FinSet), &set(&["u", "w"]));
    let diagram = VFunctor::point(&cat, 1);
    P3 {
        cat,
        weight,
        diagram,
        candidate: 1,
        top: 2,
    }
}
