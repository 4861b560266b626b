//! Decision procedures for representability, tensors and weighted limits.
//!
//! Every question is answered along several independent routes: the direct
//! enriched definition, internal terminality in a category of elements, the
//! shifted test against the probes of the cosmos, and (when tensors exist)
//! enriched terminality in the underlying `V`-category. Weighted limits
//! additionally have a conical route through internal limits.

mod arrows;
mod representation;
mod tensors;
mod weighted;

use std::fmt;

use crate::error::{Error, Result};

pub use arrows::{ar_x, compare_ar_x, ArComparison};
pub use representation::{
    is_representable_via_elements, is_representable_via_shifted, is_representable_via_und_tensors,
    is_shifted_terminal, representation_verdicts, RepresentationVerdicts,
};
pub use tensors::{
    constant_shape_functor, find_v_tensor, groth_tensor_witness, has_c_internal_tensors,
    has_internal_tensors, has_v_tensors, is_v_tensor, preservation, presheaf_preserves_tensors,
    tensor_bridge_terminal, tensor_comparison, BridgeReport, GrothTensor, Preservation,
    TensorSurvey, TensorWitness,
};
pub use weighted::{
    candidate_cones, cone_translate, is_weighted_limit_conical, is_weighted_limit_direct,
    is_weighted_limit_elements, is_weighted_limit_shifted, is_weighted_limit_und_tensors,
    weighted_cone_cross_check, weighted_cone_internal, weighted_limit_verdicts, ConicalTranslation,
    WeightedCones, WeightedLimitProblem, WeightedVerdicts,
};

/// Outcome of a route: a verdict, or a refusal because the route's
/// hypotheses do not hold for the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The property holds.
    True,
    /// The property fails.
    False,
    /// The route does not apply; the payload names the failed hypothesis.
    NotApplicable(String),
}

impl Verdict {
    /// Turns a route result into a verdict, keeping unmet hypotheses apart
    /// from genuine errors.
    pub fn from_route(r: Result<bool>) -> Result<Verdict> {
        match r {
            Ok(true) => Ok(Verdict::True),
            Ok(false) => Ok(Verdict::False),
            Err(Error::HypothesisNotMet(why)) => Ok(Verdict::NotApplicable(why)),
            Err(e) => Err(e),
        }
    }

    /// The verdict as a boolean, if the route applied.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::NotApplicable(_) => None,
        }
    }

    /// Whether the route applied.
    pub fn is_applicable(&self) -> bool {
        !matches!(self, Verdict::NotApplicable(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("true"),
            Verdict::False => f.write_str("false"),
            Verdict::NotApplicable(_) => f.write_str("not-applicable"),
        }
    }
}

/// Whether all applicable verdicts coincide.
pub fn agree(verdicts: &[&Verdict]) -> bool {
    let mut seen = verdicts.iter().filter_map(|v| v.as_bool());
    match seen.next() {
        Some(first) => seen.all(|b| b == first),
        None => true,
    }
}
