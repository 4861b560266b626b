//! Finite enriched and internal category theory.
//!
//! The base category `V` is either finite sets or finite categories
//! ([`cosmos`]). On top of it the crate builds `V`-enriched categories and
//! presheaves ([`enriched`]), category objects in `V` ([`internal`]), the
//! internal Grothendieck construction and its inverse ([`grothendieck`]),
//! and decision procedures for representability, tensors and weighted
//! limits ([`limits`]).

pub mod cosmos;
pub mod csp;
pub mod enriched;
pub mod error;
pub mod grothendieck;
pub mod internal;
pub mod limits;
pub mod report;

pub use error::{Error, Result};
