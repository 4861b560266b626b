//! The internal Grothendieck construction `∫_C` from presheaves on a
//! `V`-category to internal discrete fibrations over `Int C`, its inverse
//! `Φ`, the unit and counit isomorphisms, and the identification of the
//! elements of a representable with a slice.

mod construction;
mod equivalence;
mod representable;

pub use construction::{
    change_of_base, groth, groth_cov, groth_nat, groth_nat_between, groth_over, BaseChange,
    GrothResult,
};
pub use equivalence::{counit_epsilon, inverse_fib, inverse_fib_mor, inverse_opfib, unit_eta};
pub use representable::{psi, slice_functor_from_element, Psi};

/// A constructed value together with the verdict of its defining check.
#[derive(Clone, Debug)]
pub struct Certified<T> {
    /// The construction.
    pub value: T,
    /// Whether the construction passed its check.
    pub certificate: bool,
}
