//! Representability of a presheaf by an element, decided directly, through
//! the internal category of elements, through the shifted categories
//! `Und ⟦cst X, ∫F⟧`, and through `Und ∫F` when tensors are available.

use crate::cosmos::{ConservativeFamily, Map};
use crate::enriched::{is_representable_by, VPresheaf};
use crate::error::{Error, Result};
use crate::grothendieck::{groth, GrothResult};
use crate::internal::{hom_cst, is_internal_terminal, is_v_terminal, underlying, InternalCategory};

use super::tensors::{has_v_tensors, presheaf_preserves_tensors};
use super::Verdict;

/// `T` is internal terminal in `A` exactly when, for every probe `X`, the
/// constant functor at `T` is `V`-terminal in `Und ⟦cst X, A⟧`.
/// This evaluates the right-hand side.
pub fn is_shifted_terminal(
    a: &InternalCategory,
    t: u32,
    probes: &ConservativeFamily,
) -> Result<bool> {
    for x in &probes.probes {
        let hc = hom_cst(x, a)?;
        let und = underlying(&hc.cat)?;
        let constant = Map::constant(x, a.a0(), t);
        let k = hc
            .objects
            .name(&constant)
            .ok_or_else(|| Error::Structure("constant map missing from the exponential".into()))?;
        if !is_v_terminal(&und.vcat, k as usize) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn element(f: &VPresheaf, c: usize, x: &Map) -> Result<(GrothResult, u32)> {
    if c >= f.base().len() {
        return Err(Error::Lookup(format!("object #{c}")));
    }
    if x.dom() != &f.base().cosmos().terminal() || x.cod() != f.at(c) {
        return Err(Error::Validation(
            "the element must be a point of F c".into(),
        ));
    }
    let g = groth(f.base(), f)?;
    let cell = g.element_cell(c, x.on_obj(0));
    Ok((g, cell))
}

fn check_tensor_hypotheses(f: &VPresheaf) -> Result<()> {
    let cat = f.base();
    for x in &cat.cosmos().generators().probes {
        if has_v_tensors(cat, x)?.is_none() {
            return Err(Error::HypothesisNotMet(format!(
                "the base lacks V-tensors by the probe with {} objects",
                x.n_objs()
            )));
        }
        if !presheaf_preserves_tensors(f, x)? {
            return Err(Error::HypothesisNotMet(
                "the presheaf does not preserve V-tensors by a probe".into(),
            ));
        }
    }
    Ok(())
}

/// `(c, x)` is internal terminal in `∫F`.
pub fn is_representable_via_elements(f: &VPresheaf, c: usize, x: &Map) -> Result<bool> {
    let (g, cell) = element(f, c, x)?;
    is_internal_terminal(&g.total, cell)
}

/// `(c, x)` is `V`-terminal in `Und ⟦cst X, ∫F⟧` for every probe `X`.
pub fn is_representable_via_shifted(f: &VPresheaf, c: usize, x: &Map) -> Result<bool> {
    let (g, cell) = element(f, c, x)?;
    is_shifted_terminal(&g.total, cell, &f.base().cosmos().generators())
}

/// `(c, x)` is `V`-terminal in `Und ∫F`. Only meaningful when the base has
/// `V`-tensors by every probe and `F` preserves them; otherwise this
/// returns [`Error::HypothesisNotMet`].
pub fn is_representable_via_und_tensors(f: &VPresheaf, c: usize, x: &Map) -> Result<bool> {
    check_tensor_hypotheses(f)?;
    let (g, cell) = element(f, c, x)?;
    Ok(is_v_terminal(&underlying(&g.total)?.vcat, cell as usize))
}

/// The verdicts of all four representability routes for one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationVerdicts {
    /// The Yoneda transformation is an isomorphism.
    pub direct: Verdict,
    /// Internal terminal in the category of elements.
    pub elements: Verdict,
    /// `V`-terminal in every shifted underlying category.
    pub shifted: Verdict,
    /// `V`-terminal in `Und ∫F`, under the tensor hypotheses.
    pub und_tensors: Verdict,
}

impl RepresentationVerdicts {
    /// Whether every applicable route gives the same answer.
    pub fn agree(&self) -> bool {
        super::agree(&[
            &self.direct,
            &self.elements,
            &self.shifted,
            &self.und_tensors,
        ])
    }
}

/// Runs every route, building `∫F` once.
pub fn representation_verdicts(f: &VPresheaf, c: usize, x: &Map) -> Result<RepresentationVerdicts> {
    let (g, cell) = element(f, c, x)?;
    let direct = Verdict::from_route(is_representable_by(f, c, x))?;
    let elements = Verdict::from_route(is_internal_terminal(&g.total, cell))?;
    let shifted = Verdict::from_route(is_shifted_terminal(
        &g.total,
        cell,
        &f.base().cosmos().generators(),
    ))?;
    let und_tensors = Verdict::from_route(
        check_tensor_hypotheses(f)
            .and_then(|()| Ok(is_v_terminal(&underlying(&g.total)?.vcat, cell as usize))),
    )?;
    Ok(RepresentationVerdicts {
        direct,
        elements,
        shifted,
        und_tensors,
    })
}
