//! `V`-tensors in a `V`-category and their preservation by presheaves,
//! internal tensors (colimits of functors out of `cst X`), the tensor
//! witness in a category of elements, and the report comparing internal and
//! enriched terminality under these hypotheses.

use crate::cosmos::{exponential, maps_between, ConservativeFamily, Exponential, Map, Obj};
use crate::enriched::{VCategory, VPresheaf};
use crate::error::{Error, Result};
use crate::grothendieck::{groth, Certified, GrothResult};
use crate::internal::{
    compute_internal_colimit, is_internal_colimit, is_internal_terminal, is_v_terminal, underlying,
    Cone, FibrationPacket, InternalCategory, InternalFunctor,
};

use super::representation::is_shifted_terminal;

/// A candidate tensor `c ⊗ X` with its unit `γ : X → C(c, c⊗X)`.
#[derive(Clone, Debug)]
pub struct TensorWitness {
    /// The object `c`.
    pub base: usize,
    /// The cosmos object `X`.
    pub exponent: Obj,
    /// The candidate object `c ⊗ X`.
    pub tensor: usize,
    /// The unit `γ`.
    pub unit: Map,
    /// Whether the comparison maps are isomorphisms at every object.
    pub verdict: bool,
}

fn comparison_into(
    c: &VCategory,
    e: &Exponential,
    base: usize,
    tensor: usize,
    unit: &Map,
    a: usize,
) -> Result<Map> {
    e.curry_with(
        c.hom(tensor, a),
        |x, h| c.comp_obj(base, tensor, a, unit.on_obj(x), h),
        |m, h| c.comp_mor(base, tensor, a, unit.on_mor(m), h),
    )
}

/// The comparison `C(c⊗X, A) → [X, C(c, A)]`, `h ↦ (x ↦ γ(x) ; h)`.
pub fn tensor_comparison(
    c: &VCategory,
    base: usize,
    x: &Obj,
    tensor: usize,
    unit: &Map,
    a: usize,
) -> Result<Map> {
    check_unit(c, base, x, tensor, unit)?;
    comparison_into(c, &exponential(x, c.hom(base, a))?, base, tensor, unit, a)
}

fn check_unit(c: &VCategory, base: usize, x: &Obj, tensor: usize, unit: &Map) -> Result<()> {
    let n = c.len();
    if base >= n || tensor >= n {
        return Err(Error::Lookup(format!("object #{}", base.max(tensor))));
    }
    if unit.dom() != x || unit.cod() != c.hom(base, tensor) {
        return Err(Error::Validation(
            "the unit must be a map X → C(c, c⊗X)".into(),
        ));
    }
    Ok(())
}

fn is_tensor_with(
    c: &VCategory,
    exps: &[Exponential],
    base: usize,
    tensor: usize,
    unit: &Map,
) -> Result<bool> {
    for (a, e) in exps.iter().enumerate() {
        if !comparison_into(c, e, base, tensor, unit, a)?.is_iso() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `(c⊗X, γ)` is a `V`-tensor of `c` by `X`: the comparison
/// `C(c⊗X, A) → [X, C(c, A)]` is an isomorphism for every object `A`.
pub fn is_v_tensor(c: &VCategory, base: usize, x: &Obj, tensor: usize, unit: &Map) -> Result<bool> {
    check_unit(c, base, x, tensor, unit)?;
    let exps = (0..c.len())
        .map(|a| exponential(x, c.hom(base, a)))
        .collect::<Result<Vec<_>>>()?;
    is_tensor_with(c, &exps, base, tensor, unit)
}

/// Searches every candidate object and unit for a tensor of `c` by `X`,
/// trying `c` itself first.
pub fn find_v_tensor(c: &VCategory, base: usize, x: &Obj) -> Result<Option<TensorWitness>> {
    if base >= c.len() {
        return Err(Error::Lookup(format!("object #{base}")));
    }
    let exps = (0..c.len())
        .map(|a| exponential(x, c.hom(base, a)))
        .collect::<Result<Vec<_>>>()?;
    let order = std::iter::once(base).chain((0..c.len()).filter(|&d| d != base));
    for d in order {
        for unit in maps_between(x, c.hom(base, d))? {
            if is_tensor_with(c, &exps, base, d, &unit)? {
                return Ok(Some(TensorWitness {
                    base,
                    exponent: x.clone(),
                    tensor: d,
                    unit,
                    verdict: true,
                }));
            }
        }
    }
    Ok(None)
}

/// One tensor witness per object, or `None` when some object has no tensor by `X`.
pub fn has_v_tensors(c: &VCategory, x: &Obj) -> Result<Option<Vec<TensorWitness>>> {
    let mut out = Vec::with_capacity(c.len());
    for base in 0..c.len() {
        match find_v_tensor(c, base, x)? {
            Some(w) => out.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// How a presheaf acts on a tensor: `F(c⊗X) → [X, Fc]`, `y ↦ (x ↦ F(γ x)(y))`.
/// An isomorphism `φ : [X, Fc] ≅ F(c⊗X)` with `ev^F ∘ (γ × φ) = ev_X` exists
/// exactly when this comparison is invertible, and then `φ` is its inverse.
#[derive(Clone, Debug)]
pub struct Preservation {
    /// The exponential `[X, Fc]`.
    pub exponential: Exponential,
    /// The comparison `F(c⊗X) → [X, Fc]`.
    pub comparison: Map,
    /// `φ`, when the comparison is invertible.
    pub iso: Option<Map>,
}

/// Computes the preservation data of `F` at a tensor witness.
pub fn preservation(f: &VPresheaf, w: &TensorWitness) -> Result<Preservation> {
    let (c, d, gamma) = (w.base, w.tensor, &w.unit);
    check_unit(f.base(), c, &w.exponent, d, gamma)?;
    let e = exponential(&w.exponent, f.at(c))?;
    let comparison = e.curry_with(
        f.at(d),
        |x, y| f.act_obj(c, d, gamma.on_obj(x), y),
        |m, y| f.act(c, d, gamma.on_mor(m), y),
    )?;
    let iso = if comparison.is_iso() {
        Some(comparison.inverse()?)
    } else {
        None
    };
    Ok(Preservation {
        exponential: e,
        comparison,
        iso,
    })
}

/// Whether `F` preserves the `V`-tensors by `X` of its base. Fails with
/// [`Error::HypothesisNotMet`] when the base lacks them.
pub fn presheaf_preserves_tensors(f: &VPresheaf, x: &Obj) -> Result<bool> {
    let tensors = has_v_tensors(f.base(), x)?.ok_or_else(|| {
        Error::HypothesisNotMet("the base has no V-tensors by this object".into())
    })?;
    for w in &tensors {
        if preservation(f, w)?.iso.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The internal functor `cst X → A` corresponding to `g : X → A0`.
pub fn constant_shape_functor(a: &InternalCategory, g: &Map) -> Result<InternalFunctor> {
    if g.cod() != a.a0() {
        return Err(Error::Validation("the map must land in A0".into()));
    }
    InternalFunctor::new(
        InternalCategory::cst(g.dom()),
        a.clone(),
        g.clone(),
        g.then(a.i())?,
    )
}

/// Internal colimits of the functors `cst X → A` that were examined.
#[derive(Clone, Debug)]
pub struct TensorSurvey {
    /// The exponent `X`.
    pub exponent: Obj,
    /// Each examined `G : X → A0` with its internal colimit, if any.
    pub entries: Vec<(Map, Option<Cone>)>,
}

impl TensorSurvey {
    /// Whether every examined functor has an internal colimit.
    pub fn complete(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_some())
    }

    /// Descriptions of the functors without a colimit.
    pub fn missing(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|(_, c)| c.is_none())
            .map(|(g, _)| describe(g))
            .collect()
    }
}

fn describe(g: &Map) -> String {
    let (x, a) = (g.dom(), g.cod());
    let objs: Vec<String> = (0..x.n_objs() as u32)
        .map(|o| a.obj_label(g.on_obj(o)).into_owned())
        .collect();
    let mors: Vec<String> = (0..x.n_mors() as u32)
        .filter(|&m| !x.is_identity(m))
        .map(|m| a.mor_label(g.on_mor(m)).into_owned())
        .collect();
    if mors.is_empty() {
        format!(
            "no internal colimit for the diagram at [{}]",
            objs.join(",")
        )
    } else {
        format!(
            "no internal colimit for the diagram at [{}] along [{}]",
            objs.join(","),
            mors.join(",")
        )
    }
}

/// Checks every `G : X → A0` for an internal colimit of `cst X → A`.
pub fn has_internal_tensors(a: &InternalCategory, x: &Obj) -> Result<TensorSurvey> {
    let mut entries = Vec::new();
    for g in maps_between(x, a.a0())? {
        let colimit = compute_internal_colimit(&constant_shape_functor(a, &g)?)?;
        entries.push((g, colimit));
    }
    Ok(TensorSurvey {
        exponent: x.clone(),
        entries,
    })
}

/// Checks every `G : X → P⁻¹A`, for every object `A` of the base, for an
/// internal colimit of the induced functor `cst X → A`.
pub fn has_c_internal_tensors(packet: &FibrationPacket, x: &Obj) -> Result<TensorSurvey> {
    let fibers = packet.require_fibers()?;
    let a = &packet.functor.source;
    let mut entries = Vec::new();
    for (k, incl) in fibers.inclusions.iter().enumerate() {
        for g in maps_between(x, fibers.fiber(k))? {
            let g = g.then(incl)?;
            let colimit = compute_internal_colimit(&constant_shape_functor(a, &g)?)?;
            entries.push((g, colimit));
        }
    }
    Ok(TensorSurvey {
        exponent: x.clone(),
        entries,
    })
}

/// The colimit of `G : cst X → ∫F` built from a tensor and its preservation.
#[derive(Clone, Debug)]
pub struct GrothTensor {
    /// `∫F`.
    pub elements: GrothResult,
    /// `G` as an internal functor.
    pub diagram: InternalFunctor,
    /// The cocone `(φG, γ × φG)`.
    pub cocone: Cone,
    /// The tensor used.
    pub tensor: TensorWitness,
}

/// Builds the cocone `(φG, γ × φG)` under `G : cst X → ∫F` for a map
/// `g : X → Fc`, and certifies that it is an internal colimit.
pub fn groth_tensor_witness(
    f: &VPresheaf,
    c: usize,
    x: &Obj,
    g: &Map,
) -> Result<Certified<GrothTensor>> {
    let cat = f.base();
    if c >= cat.len() {
        return Err(Error::Lookup(format!("object #{c}")));
    }
    if g.dom() != x || g.cod() != f.at(c) {
        return Err(Error::Validation("G must be a map X → Fc".into()));
    }
    let tensor = find_v_tensor(cat, c, x)?
        .ok_or_else(|| Error::HypothesisNotMet("no V-tensor of the object by X".into()))?;
    let pres = preservation(f, &tensor)?;
    let phi = pres.iso.as_ref().ok_or_else(|| {
        Error::HypothesisNotMet("the presheaf does not preserve the tensor".into())
    })?;
    let k = pres
        .exponential
        .name(g)
        .ok_or_else(|| Error::Structure("G missing from the exponential".into()))?;
    let y = phi.on_obj(k);
    let d = tensor.tensor;
    let n = cat.len();
    let elements = groth(cat, f)?;
    let h0 = Map::new(
        x.clone(),
        elements.total.a0().clone(),
        (0..x.n_objs() as u32)
            .map(|o| elements.objects.inject_obj(c, g.on_obj(o)))
            .collect(),
        (0..x.n_mors() as u32)
            .map(|m| elements.objects.inject_mor(c, g.on_mor(m)))
            .collect(),
    )?;
    let diagram = constant_shape_functor(&elements.total, &h0)?;
    let slot = c * n + d;
    let summand = &elements.morphisms.summands[slot];
    let yid = f.at(d).ident(y);
    let cocone = Cone {
        apex: elements.element_cell(d, y),
        obj: (0..x.n_objs() as u32)
            .map(|o| {
                elements
                    .morphisms
                    .inject_obj(slot, summand.join_obj(&[tensor.unit.on_obj(o), y]))
            })
            .collect(),
        mor: (0..x.n_mors() as u32)
            .map(|m| {
                elements
                    .morphisms
                    .inject_mor(slot, summand.join_mor(&[tensor.unit.on_mor(m), yid]))
            })
            .collect(),
    };
    let certificate = is_internal_colimit(&diagram, &cocone)?;
    Ok(Certified {
        value: GrothTensor {
            elements,
            diagram,
            cocone,
            tensor,
        },
        certificate,
    })
}

/// Internal terminality, enriched terminality in `Und A` and the shifted
/// verdict of one element, together with the tensor hypotheses under which
/// the first two must coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    /// Whether the required tensors exist for every probe.
    pub hypotheses: bool,
    /// The diagrams lacking a colimit, when the hypotheses fail.
    pub missing: Vec<String>,
    /// `T` is internal terminal in `A`.
    pub internal_terminal: bool,
    /// `T` is `V`-terminal in `Und A`.
    pub v_terminal: bool,
    /// `T` passes the shifted test for every probe.
    pub shifted: bool,
    /// Some two verdicts differ.
    pub divergence: bool,
    /// A divergence that contradicts the hypotheses: it should never be set.
    pub unexpected: bool,
}

/// Compares the terminal-object verdicts of `T` in `A`. With a fibration
/// packet, the hypothesis is the existence of tensors fiberwise; without
/// one, of all internal tensors.
pub fn tensor_bridge_terminal(
    a: &InternalCategory,
    packet: Option<&FibrationPacket>,
    t: u32,
    probes: &ConservativeFamily,
) -> Result<BridgeReport> {
    if let Some(p) = packet {
        if &p.functor.source != a {
            return Err(Error::Validation(
                "the fibration does not start at this internal category".into(),
            ));
        }
    }
    let mut missing = Vec::new();
    for x in &probes.probes {
        let survey = match packet {
            Some(p) => has_c_internal_tensors(p, x)?,
            None => has_internal_tensors(a, x)?,
        };
        missing.extend(survey.missing());
    }
    let hypotheses = missing.is_empty();
    let internal_terminal = is_internal_terminal(a, t)?;
    let v_terminal = is_v_terminal(&underlying(a)?.vcat, t as usize);
    let shifted = is_shifted_terminal(a, t, probes)?;
    let divergence = internal_terminal != v_terminal || internal_terminal != shifted;
    let unexpected =
        internal_terminal != shifted || (hypotheses && internal_terminal != v_terminal);
    Ok(BridgeReport {
        hypotheses,
        missing,
        internal_terminal,
        v_terminal,
        shifted,
        divergence,
        unexpected,
    })
}
