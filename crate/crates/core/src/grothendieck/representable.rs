//! The isomorphism `Ψ_c : ∫ C(−, c) ≅ Int C / c` over `Int C`, and the
//! functor from a slice into the elements of a presheaf classified by an
//! element.

use crate::cosmos::Map;
use crate::enriched::{representable, yoneda_nat, VCategory, VPresheaf};
use crate::error::{Error, Result};
use crate::internal::{arrow_object, internalize, slice, Comma, InternalFunctor};

use super::construction::{groth_nat_between, groth_over, GrothResult};
use super::Certified;

/// `Ψ_c` together with both sides.
#[derive(Clone, Debug)]
pub struct Psi {
    /// `∫_C C(−, c)`.
    pub elements: GrothResult,
    /// `Int C / c`.
    pub slice: Comma,
    /// `Ψ_c`.
    pub functor: InternalFunctor,
    /// True when `Ψ_c` is a valid isomorphism over `Int C`.
    pub certificate: bool,
}

/// Builds `Ψ_c`: an element `h : A → c` goes to the arrow `h`, and a
/// morphism `(f, g)` of elements goes to the square with top `f`, right `g`,
/// left `f ; g` and bottom `1_c`.
pub fn psi(c: &VCategory, obj: usize) -> Result<Psi> {
    if obj >= c.len() {
        return Err(Error::Lookup(format!("object #{obj}")));
    }
    let int = internalize(c)?;
    let elements = groth_over(&int, &representable(c, obj)?)?;
    let a = &int.cat;
    let target = int.object_cell(obj);
    let sl = slice(a, target)?;
    let arr = arrow_object(a)?;
    let (l0, l1) = (&sl.square.level0, &sl.square.level1);
    let (sq, a2) = (&arr.squares, a.composable());
    let n = c.len();
    let g = &elements;
    let hom_cell_obj = |a_: usize, h: u32| int.homs.inject_obj(int.hom_index(a_, obj), h);
    let hom_cell_mor = |a_: usize, h: u32| int.homs.inject_mor(int.hom_index(a_, obj), h);
    let id_obj = a.i().on_obj(target);
    let id_mor = a.i().on_mor(a.a0().ident(target));
    let f0 = Map::from_fns(
        g.total.a0().clone(),
        sl.cat.a0().clone(),
        |o| {
            let (k, h) = g.objects.locate_obj(o);
            l0.pair_obj(hom_cell_obj(k, h), 0).expect("arrow into c")
        },
        |m| {
            let (k, h) = g.objects.locate_mor(m);
            l0.pair_mor(hom_cell_mor(k, h), 0).expect("arrow into c")
        },
    );
    let f1 = Map::from_fns(
        g.total.a1().clone(),
        sl.cat.a1().clone(),
        |o| {
            let (k, p) = g.morphisms.locate_obj(o);
            let parts = g.morphisms.summands[k].split_obj(p);
            let f = int.homs.inject_obj(k, parts[0]);
            let h = hom_cell_obj(k % n, parts[1]);
            let fh = a.compose_obj(f, h).expect("composable");
            let square = sq
                .pair_obj(
                    a2.pair_obj(f, h).expect("composable"),
                    a2.pair_obj(fh, id_obj).expect("composable"),
                )
                .expect("square commutes");
            l1.pair_obj(square, 0).expect("square over 1_c")
        },
        |m| {
            let (k, p) = g.morphisms.locate_mor(m);
            let parts = g.morphisms.summands[k].split_mor(p);
            let f = int.homs.inject_mor(k, parts[0]);
            let h = hom_cell_mor(k % n, parts[1]);
            let fh = a.compose_mor(f, h).expect("composable");
            let square = sq
                .pair_mor(
                    a2.pair_mor(f, h).expect("composable"),
                    a2.pair_mor(fh, id_mor).expect("composable"),
                )
                .expect("square commutes");
            l1.pair_mor(square, 0).expect("square over 1_c")
        },
    );
    let functor = InternalFunctor::new(g.total.clone(), sl.cat.clone(), f0, f1)?;
    let over = functor.then(&sl.projection)? == g.projection;
    let certificate = over && functor.validate().is_valid() && functor.is_iso();
    Ok(Psi {
        elements,
        slice: sl,
        functor,
        certificate,
    })
}

/// The functor `Int C / c → ∫_C F` classified by an element `x ∈ F c`:
/// `Ψ_c⁻¹` followed by `∫ α_x`. The certificate records that `Ψ_c` is an
/// isomorphism and that the identity of `c` is sent to `(c, x)`.
pub fn slice_functor_from_element(
    f: &VPresheaf,
    c: usize,
    x: &Map,
) -> Result<Certified<InternalFunctor>> {
    let base = f.base();
    let p = psi(base, c)?;
    let alpha = yoneda_nat(f, c, x)?;
    let target = groth_over(&p.elements.base, f)?;
    let along = groth_nat_between(&alpha, &p.elements, &target)?;
    let functor = p.functor.inverse()?.then(&along)?;
    let int = &p.elements.base;
    let top = int.cat.i().on_obj(int.object_cell(c));
    let hits = match p.slice.square.level0.pair_obj(top, 0) {
        Some(o) => functor.h0.on_obj(o) == target.element_cell(c, x.on_obj(0)),
        None => false,
    };
    Ok(Certified {
        value: functor,
        certificate: p.certificate && hits,
    })
}
