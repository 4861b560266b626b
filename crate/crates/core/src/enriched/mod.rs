//! Finite `V`-enriched categories, `V`-functors in evaluation form,
//! `V`-natural transformations, representables, ends and weighted cones.

mod end;
mod functor;
mod vcat;

pub use end::{functor_hom, weighted_cone_presheaf, ConePresheaf, End};
pub use functor::{
    constant_presheaf, find_representations, hom_copresheaf, is_representable_by, product_presheaf,
    representable, yoneda_nat, CoVNat, EnrichedElement, VCopresheaf, VFunctor, VNat, VPresheaf,
};
pub use vcat::{product_vcat, VCategory};
