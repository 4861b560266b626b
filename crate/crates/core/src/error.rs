//! Error type shared by every construction in the crate.

use thiserror::Error;

/// Failures raised by constructions and deciders.
///
/// A `false` verdict is never an error; errors mean the question could not
/// be asked (bad input, unmet hypothesis, refused size).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two maps were composed whose codomain and domain differ.
    #[error("composition mismatch: {0}")]
    Composition(String),
    /// An input failed a structural invariant.
    #[error("invalid structure: {0}")]
    Validation(String),
    /// A cone handed to a universal property does not commute.
    #[error("no mediating map: {0}")]
    Mediator(String),
    /// A square handed to the extensivity factorization does not commute.
    #[error("square does not factor through the coproduct summands: {0}")]
    Factorization(String),
    /// A label or name could not be resolved.
    #[error("unknown label `{0}`")]
    Lookup(String),
    /// A route was asked for a verdict outside the hypotheses it is valid under.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    /// A fibration-only construction was applied to a functor that is not one.
    #[error("not a discrete fibration: {0}")]
    FibrationRequired(String),
    /// Extra structure (such as retained coproduct tagging) is missing.
    #[error("structure unavailable: {0}")]
    Structure(String),
    /// An enumeration would exceed the configured size caps.
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
