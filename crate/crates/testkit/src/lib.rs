//! Seeded instance generators, shipped fixtures and brute-force oracles.
//!
//! Every generator is a pure function of its [`GenConfig`]: the same seed
//! reproduces the same instance cell for cell. Generated instances are built
//! from recipes that are valid by construction (posets, locally discrete
//! categories, products, representables, restriction), and every output is
//! run through its validator before it is handed out.
//!
//! The oracles enumerate raw cell tables and check the defining equations
//! directly, so they never go through the ends, internal homs or cone
//! categories they are used to check.

mod config;
pub mod fixtures;
mod generate;
pub mod oracle;
mod relabel;

pub use config::{cells, GenConfig, RecipeWeights, MAX_CELLS, MAX_OBJECTS};
pub use generate::{
    gen_copresheaf, gen_fibration, gen_internal, gen_presheaf, gen_vcategory, gen_vfunctor,
    gen_weighted, Generator, RepresentationInstance, WeightedInstance,
};
pub use relabel::{relabel_internal, relabel_obj, Relabeling};
