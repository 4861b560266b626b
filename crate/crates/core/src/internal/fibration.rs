//! Internal discrete fibrations and opfibrations, their fibers, and the
//! fiber actions extracted through extensivity.

use crate::cosmos::{
    coproduct, extensive_factor, fiber_decompose, product, pullback, Map, Obj, Pullback,
    TaggedCoproduct,
};
use crate::error::{Error, Result};

use super::category::InternalFunctor;
use super::intc::Internalization;

/// Which way the fibration lifts morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// Discrete fibration: morphisms lift uniquely given their target.
    Fibration,
    /// Discrete opfibration: morphisms lift uniquely given their source.
    Opfibration,
}

/// Fibers of a fibration over `Int C` and the actions between them.
#[derive(Clone, Debug)]
pub struct Fibers {
    /// The fibers `P⁻¹A`, tagged by the objects of `C`.
    pub coproduct: TaggedCoproduct,
    /// Inclusions `P⁻¹A → A0`.
    pub inclusions: Vec<Map>,
    /// The isomorphism `⊔ P⁻¹A → A0`.
    pub iso: Map,
    /// For a fibration, `C(A,B) × P⁻¹B → P⁻¹A`; for an opfibration,
    /// `P⁻¹A × C(A,B) → P⁻¹B`; at index `a * n + b`.
    pub actions: Vec<Map>,
}

impl Fibers {
    /// The fiber over object `a`.
    pub fn fiber(&self, a: usize) -> &Obj {
        &self.coproduct.summands[a]
    }
}

/// An internal functor together with its discrete-(op)fibration certificate
/// and, over an internalization, its fibers.
#[derive(Clone, Debug)]
pub struct FibrationPacket {
    /// The functor `P : A → B`.
    pub functor: InternalFunctor,
    /// Fibration or opfibration.
    pub variance: Variance,
    /// The base as an internalization, when known.
    pub base: Option<Internalization>,
    /// True when the defining square is a pullback.
    pub certificate: bool,
    /// The pullback `B1 ×_{B0} A0` of the target (or source) map along `P0`.
    pub square: Pullback,
    /// The comparison `A1 → B1 ×_{B0} A0`.
    pub comparison: Map,
    /// Fibers and actions; present when certified and the base is known.
    pub fibers: Option<Fibers>,
}

impl FibrationPacket {
    /// The fibers, or an error naming why they are unavailable.
    pub fn require_fibers(&self) -> Result<&Fibers> {
        if !self.certificate {
            return Err(Error::FibrationRequired(
                "the defining square is not a pullback".into(),
            ));
        }
        self.fibers
            .as_ref()
            .ok_or_else(|| Error::Structure("fibers need the base as an internalization".into()))
    }

    /// The base internalization, or a structure error.
    pub fn require_base(&self) -> Result<&Internalization> {
        self.base
            .as_ref()
            .ok_or_else(|| Error::Structure("the base is not an internalization".into()))
    }
}

fn check_base(p: &InternalFunctor, base: Option<&Internalization>) -> Result<()> {
    match base {
        Some(b) if b.cat != p.target => Err(Error::Structure(
            "the functor does not land in the given internalization".into(),
        )),
        _ => Ok(()),
    }
}

fn certify(p: &InternalFunctor, variance: Variance) -> Result<(Pullback, Map, bool)> {
    let (a, b) = (&p.source, &p.target);
    let (ea, eb) = match variance {
        Variance::Fibration => (a.t(), b.t()),
        Variance::Opfibration => (a.s(), b.s()),
    };
    let square = pullback(eb, &p.h0)?;
    let comparison = square.induce(&p.h1, ea)?;
    let certificate = comparison.is_iso();
    Ok((square, comparison, certificate))
}

/// Decides whether `P` is an internal discrete fibration: the comparison
/// `(P1, t) : A1 → B1 ×_{B0} A0` must be an isomorphism. Over an
/// internalization the fibers are the pullbacks of `P0` along the injections.
pub fn is_discrete_fibration(
    p: &InternalFunctor,
    base: Option<&Internalization>,
) -> Result<FibrationPacket> {
    packet(p, base, Variance::Fibration, None)
}

/// The dual of [`is_discrete_fibration`], using source maps.
pub fn is_discrete_opfibration(
    p: &InternalFunctor,
    base: Option<&Internalization>,
) -> Result<FibrationPacket> {
    packet(p, base, Variance::Opfibration, None)
}

/// Like [`is_discrete_fibration`], but with fibers supplied as explicit
/// subobjects of `A0` (one per object of `C`) instead of canonical pullbacks.
/// The copairing of the inclusions must be an isomorphism lying over `P0`.
pub fn fibration_with_fibers(
    p: &InternalFunctor,
    base: &Internalization,
    variance: Variance,
    fibers: Vec<Obj>,
    inclusions: Vec<Map>,
) -> Result<FibrationPacket> {
    packet(p, Some(base), variance, Some((fibers, inclusions)))
}

fn packet(
    p: &InternalFunctor,
    base: Option<&Internalization>,
    variance: Variance,
    given: Option<(Vec<Obj>, Vec<Map>)>,
) -> Result<FibrationPacket> {
    check_base(p, base)?;
    let (square, comparison, certificate) = certify(p, variance)?;
    let fibers = match base {
        Some(int) if certificate => Some(extract_fibers(
            p,
            int,
            variance,
            &square,
            &comparison,
            given,
        )?),
        _ => None,
    };
    Ok(FibrationPacket {
        functor: p.clone(),
        variance,
        base: base.cloned(),
        certificate,
        square,
        comparison,
        fibers,
    })
}

fn extract_fibers(
    p: &InternalFunctor,
    int: &Internalization,
    variance: Variance,
    square: &Pullback,
    comparison: &Map,
    given: Option<(Vec<Obj>, Vec<Map>)>,
) -> Result<Fibers> {
    let a = &p.source;
    let n = int.vcat.len();
    let cosmos = a.cosmos();
    let (fib_cp, inclusions, iso) = match given {
        None => {
            let fd = fiber_decompose(&p.h0, &int.objects)?;
            let incl: Vec<Map> = fd.fibers.iter().map(|f| f.p0.clone()).collect();
            (fd.coproduct, incl, fd.iso)
        }
        Some((objs, incl)) => {
            if objs.len() != n || incl.len() != n {
                return Err(Error::Validation("one fiber per object is required".into()));
            }
            let cp = coproduct(cosmos, int.objects.tags.iter().cloned().zip(objs).collect());
            let iso = cp.copair_into(a.a0(), &incl)?;
            if !iso.is_iso() {
                return Err(Error::Validation(
                    "fiber inclusions do not cover A0 exactly".into(),
                ));
            }
            for (k, m) in incl.iter().enumerate() {
                if m.then(&p.h0)? != Map::constant(m.dom(), &int.objects.total, int.object_cell(k))
                {
                    return Err(Error::Validation(format!(
                        "fiber `{}` does not lie over its object",
                        int.objects.tags[k]
                    )));
                }
            }
            (cp, incl, iso)
        }
    };
    let lift = comparison.inverse()?;
    let back = iso.inverse()?;
    let mut family = Vec::with_capacity(n * n);
    let mut pieces = Vec::with_capacity(n * n);
    let mut alpha = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let k = int.hom_index(x, y);
            let hom = &int.homs.summands[k];
            let (first, second, fixed) = match variance {
                Variance::Fibration => (hom, fib_cp.summands[y].clone(), y),
                Variance::Opfibration => (&fib_cp.summands[x].clone(), hom.clone(), x),
            };
            let pr = product(first, &second);
            let (hom_leg, fib_leg) = match variance {
                Variance::Fibration => (pr.proj(0), pr.proj(1)),
                Variance::Opfibration => (pr.proj(1), pr.proj(0)),
            };
            let into_square = square.induce(
                &hom_leg.then(&int.homs.injection(k))?,
                &fib_leg.then(&inclusions[fixed])?,
            )?;
            family.push((int.homs.tags[k].clone(), pr.obj.clone()));
            pieces.push(into_square.then(&lift)?);
            alpha.push(match variance {
                Variance::Fibration => x,
                Variance::Opfibration => y,
            });
        }
    }
    let total = coproduct(cosmos, family);
    let to_a1 = total.copair_into(a.a1(), &pieces)?;
    let end = match variance {
        Variance::Fibration => a.s(),
        Variance::Opfibration => a.t(),
    };
    let h = to_a1.then(end)?.then(&back)?;
    let actions = extensive_factor(&h, &total, &fib_cp, &alpha)?;
    Ok(Fibers {
        coproduct: fib_cp,
        inclusions,
        iso,
        actions,
    })
}

/// The square of composable pairs over `t ∘ π1`: for a certified fibration
/// the comparison `A1 ×_{A0} A1 → (B1 ×_{B0} B1) ×_{B0} A0` is an isomorphism.
pub fn composable_square_is_pullback(p: &InternalFunctor) -> Result<bool> {
    let (a, b) = (&p.source, &p.target);
    let (pa, pb) = (a.composable(), b.composable());
    let p2 = pb.induce(&pa.p0.then(&p.h1)?, &pa.p1.then(&p.h1)?)?;
    let down = pb.p1.then(b.t())?;
    let square = pullback(&down, &p.h0)?;
    let comparison = square.induce(&p2, &pa.p1.then(a.t())?)?;
    Ok(comparison.is_iso())
}
