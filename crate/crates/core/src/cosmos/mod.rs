//! The base category `V`: finite sets or finite categories, with canonical
//! finite limits, coproducts and exponentials.

mod coproduct;
mod exponential;
mod limits;
mod map;
mod object;

pub use coproduct::{
    coproduct, extensive_factor, fiber_decompose, indexed_coproduct_map, FiberDecomposition,
    TaggedCoproduct,
};
pub use exponential::{
    exponential, global_elements, maps_between, natural_transformations, Exponential,
    EXPONENTIAL_CAP,
};
pub use limits::{
    equalizer, product, product_map, product_n, pullback, subobject, unit_left, unit_right,
    Equalizer, Product, Pullback, Sub,
};
pub use map::{map_equal, Map};
pub(crate) use object::Builder;
pub use object::{ConservativeFamily, Cosmos, Label, Obj};
