//! Generator configuration and size caps.

use intcat_core::cosmos::{Cosmos, Obj};
use intcat_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest number of objects of a generated `V`-category.
pub const MAX_OBJECTS: usize = 4;

/// Largest number of cells of a generated hom-object or presheaf value.
pub const MAX_CELLS: usize = 6;

/// Cell count used by the caps: elements of a set, morphisms (identities
/// included) of a category.
pub fn cells(x: &Obj) -> usize {
    x.n_mors()
}

/// Relative weights of the generator recipes. A zero weight disables a recipe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeWeights {
    /// Random finite posets.
    pub poset: u32,
    /// Small non-posetal categories, enriched by their discrete hom-sets.
    pub locally_discrete: u32,
    /// Binary products of generated `V`-categories.
    pub product: u32,
    /// Constant presheaves.
    pub constant: u32,
    /// Representable presheaves.
    pub representable: u32,
    /// Pointwise products of generated presheaves.
    pub product_presheaf: u32,
    /// Restrictions of generated presheaves along generated `V`-functors.
    pub restriction: u32,
}

impl Default for RecipeWeights {
    fn default() -> Self {
        RecipeWeights {
            poset: 4,
            locally_discrete: 2,
            product: 1,
            constant: 2,
            representable: 3,
            product_presheaf: 2,
            restriction: 1,
        }
    }
}

/// Seed, cosmos and caps of one generator run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    /// The seed; equal configurations produce identical instances.
    pub seed: u64,
    /// The base cosmos.
    pub cosmos: Cosmos,
    /// Objects per `V`-category, at most [`MAX_OBJECTS`].
    pub max_objects: usize,
    /// Cells per hom-object or presheaf value, at most [`MAX_CELLS`].
    pub max_cells: usize,
    /// Recipe weights.
    pub weights: RecipeWeights,
}

impl GenConfig {
    /// Default caps and weights.
    pub fn new(seed: u64, cosmos: Cosmos) -> GenConfig {
        GenConfig {
            seed,
            cosmos,
            max_objects: 3,
            max_cells: 4,
            weights: RecipeWeights::default(),
        }
    }

    /// Replaces the object and cell caps.
    pub fn with_caps(mut self, max_objects: usize, max_cells: usize) -> GenConfig {
        self.max_objects = max_objects;
        self.max_cells = max_cells;
        self
    }

    /// Replaces the recipe weights.
    pub fn with_weights(mut self, weights: RecipeWeights) -> GenConfig {
        self.weights = weights;
        self
    }

    /// Checks the caps and that every recipe family has a positive weight.
    pub fn validate(&self) -> Result<()> {
        if self.max_objects == 0 || self.max_objects > MAX_OBJECTS {
            return Err(Error::CapExceeded(format!(
                "object cap {} outside 1..={MAX_OBJECTS}",
                self.max_objects
            )));
        }
        if self.max_cells < 2 || self.max_cells > MAX_CELLS {
            return Err(Error::CapExceeded(format!(
                "cell cap {} outside 2..={MAX_CELLS}",
                self.max_cells
            )));
        }
        let w = &self.weights;
        if w.poset + w.locally_discrete + w.product == 0 {
            return Err(Error::Validation(
                "no V-category recipe has positive weight".into(),
            ));
        }
        if w.constant + w.representable + w.product_presheaf + w.restriction == 0 {
            return Err(Error::Validation(
                "no presheaf recipe has positive weight".into(),
            ));
        }
        Ok(())
    }

    /// The random source for this configuration, salted by a stream tag so
    /// that independent generators on one seed do not share draws.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }
}
