//! The instance document: a single UTF-8 JSON file naming cosmos objects,
//! maps, `V`-categories, presheaves, functors, transformations, internal
//! categories and problems. Named tables are sorted on output, so emitting
//! a parsed document is canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Which base category the document lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CosmosTag {
    /// Finite sets.
    Finset,
    /// Finite categories.
    Fincat,
}

/// A whole document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub cosmos: CosmosTag,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub vcategories: BTreeMap<String, VCategorySpec>,
    #[serde(default)]
    pub presheaves: BTreeMap<String, PresheafSpec>,
    #[serde(default)]
    pub vfunctors: BTreeMap<String, VFunctorSpec>,
    #[serde(default)]
    pub vnats: BTreeMap<String, VNatSpec>,
    #[serde(default)]
    pub internal: BTreeMap<String, InternalSpec>,
    #[serde(default)]
    pub problems: BTreeMap<String, ProblemSpec>,
}

/// A morphism of a finite category given by name and endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// A finite category. Composites with an identity may be omitted; the key
/// `"f;g"` means `f` then `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: BTreeMap<String, String>,
}

/// An object of the cosmos.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectSpec {
    /// A finite set.
    Set { elements: Vec<String> },
    /// A finite category.
    Category(CategorySpec),
}

/// The cell tables of a map with implicit domain and codomain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapBody {
    /// A function, by element.
    Function { on: BTreeMap<String, String> },
    /// A functor, on objects and on morphisms.
    Functor {
        on_objects: BTreeMap<String, String>,
        on_morphisms: BTreeMap<String, String>,
    },
}

/// A map between named objects. Object references are names, the terminal
/// object `*`, the initial object `∅`, or binary products `X×Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSpec {
    pub dom: String,
    pub cod: String,
    #[serde(flatten)]
    pub body: MapBody,
}

/// A built-in `V`-category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinVCategory {
    /// One object, hom `*`.
    Unit,
    /// Objects `0`, `1`, with `𝟚(1,0)` empty.
    Arrow,
}

/// A `V`-category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VCategorySpec {
    /// Hom-objects, composition `"A,B,C"` and identities by reference.
    Explicit {
        objects: Vec<String>,
        hom: BTreeMap<String, String>,
        comp: BTreeMap<String, String>,
        id: BTreeMap<String, String>,
    },
    /// An ordinary finite category with discrete hom-objects.
    FromCategory { from_category: CategorySpec },
    /// A built-in.
    Builtin { builtin: BuiltinVCategory },
}

/// Whether a presheaf is contravariant (`C^op → V`) or covariant (`C → V`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    #[default]
    Contravariant,
    Covariant,
}

fn is_contravariant(v: &Variance) -> bool {
    *v == Variance::Contravariant
}

/// A presheaf `F : C^op → V`, or with `"variance": "covariant"` a functor
/// `W : C → V`. Evaluation maps `"A,B"` are `C(A,B) × F B → F A`, or
/// `W A × C(A,B) → W B` in the covariant case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresheafSpec {
    Explicit {
        base: String,
        #[serde(default, skip_serializing_if = "is_contravariant")]
        variance: Variance,
        on: BTreeMap<String, String>,
        ev: BTreeMap<String, String>,
    },
    /// `C(−, A)`, or `C(A, −)` when covariant.
    Representable {
        base: String,
        #[serde(default, skip_serializing_if = "is_contravariant")]
        variance: Variance,
        representable: String,
    },
    /// Constant at an object.
    Constant {
        base: String,
        #[serde(default, skip_serializing_if = "is_contravariant")]
        variance: Variance,
        constant: String,
    },
}

/// A `V`-functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VFunctorSpec {
    Explicit {
        source: String,
        target: String,
        on_objects: BTreeMap<String, String>,
        hom: BTreeMap<String, String>,
    },
    /// The functor from the unit `V`-category picking an object.
    Point { target: String, point: String },
}

/// A `V`-natural transformation between two presheaves of one variance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VNatSpec {
    pub source: String,
    pub target: String,
    pub components: BTreeMap<String, String>,
}

/// An internal category or internal functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InternalSpec {
    /// Levels, structure maps by reference, and composition on cells of
    /// `A1` (`"f;g"` means `f` then `g`).
    Explicit {
        a0: String,
        a1: String,
        s: String,
        t: String,
        i: String,
        composition: BTreeMap<String, String>,
    },
    /// `cst X`.
    Constant { cst: String },
    /// `Int C`.
    Internalize { internalize: String },
    /// The category of elements of a presheaf.
    Elements { elements: String },
    /// An internal functor with explicit level maps.
    Functor {
        source: String,
        target: String,
        h0: MapBody,
        h1: MapBody,
    },
    /// The projection of a category of elements onto `Int C`.
    Projection { projection: String },
}

/// A named question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// Is `F` represented by `(object, element)`? Without a candidate, all
    /// candidates are searched.
    Representability {
        presheaf: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        object: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        element: Option<String>,
    },
    /// Is `(apex, cone)` a weighted limit of `diagram` by `weight`? Without
    /// a cone, every cone at the apex is tried.
    WeightedLimit {
        weight: String,
        diagram: String,
        apex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cone: Option<BTreeMap<String, MapBody>>,
    },
    /// Does `object ⊗ by` exist in the `V`-category?
    Tensor {
        vcategory: String,
        object: String,
        by: String,
    },
    /// Is the level-0 cell `object` terminal in the internal category?
    Terminal { internal: String, object: String },
}

/// Parses a document, reporting the line, column and field path of the
/// first error.
pub fn parse(text: &str) -> Result<Document, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse {
            line: inner.line(),
            column: inner.column(),
            path,
            message: inner.to_string(),
        }
    })?;
    Ok(doc)
}

/// Emits a document in canonical form: two-space indentation, sorted
/// tables, a trailing newline.
pub fn emit(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
