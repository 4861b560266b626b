//! The inverse `Φ` of the Grothendieck construction on discrete fibrations
//! over `Int C`, and the unit `η : Φ∫ ≅ 1` and counit `ε : ∫Φ ≅ 1`.

use crate::cosmos::{extensive_factor, product, Map};
use crate::enriched::{VCopresheaf, VNat, VPresheaf};
use crate::error::{Error, Result};
use crate::internal::{FibrationPacket, InternalFunctor, Variance};

use super::construction::{groth_over, GrothResult};
use super::Certified;

/// `Φ(P)`: the presheaf of fibers of a discrete fibration over `Int C`,
/// acting through the fiber actions recorded in the packet.
pub fn inverse_fib(packet: &FibrationPacket) -> Result<VPresheaf> {
    if packet.variance != Variance::Fibration {
        return Err(Error::FibrationRequired(
            "an opfibration corresponds to a copresheaf".into(),
        ));
    }
    let fibers = packet.require_fibers()?;
    let base = packet.require_base()?;
    VPresheaf::new(
        base.vcat.clone(),
        fibers.coproduct.summands.clone(),
        fibers.actions.clone(),
    )
}

/// The copresheaf of fibers of a discrete opfibration over `Int C`.
pub fn inverse_opfib(packet: &FibrationPacket) -> Result<VCopresheaf> {
    if packet.variance != Variance::Opfibration {
        return Err(Error::FibrationRequired(
            "a fibration corresponds to a presheaf".into(),
        ));
    }
    let fibers = packet.require_fibers()?;
    let base = packet.require_base()?;
    VCopresheaf::new(
        base.vcat.clone(),
        fibers.coproduct.summands.clone(),
        fibers.actions.clone(),
    )
}

/// `Φ(H) : Φ(P) ⇒ Φ(Q)` for `H : A → A'` with `P = H ; Q`. The component at
/// `A` is the unique map of fibers through which `H0` factors.
pub fn inverse_fib_mor(
    h: &InternalFunctor,
    p: &FibrationPacket,
    q: &FibrationPacket,
) -> Result<VNat> {
    if h.source != p.functor.source || h.target != q.functor.source {
        return Err(Error::Validation(
            "functor does not run between the fibrations".into(),
        ));
    }
    if h.then(&q.functor)? != p.functor {
        return Err(Error::Validation(
            "functor does not lie over the base".into(),
        ));
    }
    let (fp, fq) = (p.require_fibers()?, q.require_fibers()?);
    let n = p.require_base()?.vcat.len();
    let total = fp.iso.then(&h.h0)?.then(&fq.iso.inverse()?)?;
    let comps = extensive_factor(
        &total,
        &fp.coproduct,
        &fq.coproduct,
        &(0..n).collect::<Vec<_>>(),
    )?;
    VNat::new(inverse_fib(p)?, inverse_fib(q)?, comps)
}

/// `η_F : Φ(∫F) ⇒ F`, with components read off the fiber inclusions into
/// `⊔ FA`. The certificate requires a valid, componentwise invertible
/// transformation.
pub fn unit_eta(elements: &GrothResult, f: &VPresheaf) -> Result<Certified<VNat>> {
    let fibers = elements.packet.require_fibers()?;
    let n = f.base().len();
    let comps = extensive_factor(
        &fibers.iso,
        &fibers.coproduct,
        &elements.objects,
        &(0..n).collect::<Vec<_>>(),
    )?;
    let nat = VNat::new(inverse_fib(&elements.packet)?, f.clone(), comps)?;
    let certificate = nat.validate().is_valid() && nat.is_iso();
    Ok(Certified {
        value: nat,
        certificate,
    })
}

/// `ε_P : ∫Φ(P) → A`, sending the summand of `A` to its fiber and
/// `C(A,B) × P⁻¹B` to the unique lifts. The certificate requires a valid
/// isomorphism lying over `Int C`.
pub fn counit_epsilon(packet: &FibrationPacket) -> Result<Certified<InternalFunctor>> {
    let base = packet.require_base()?;
    let fibers = packet.require_fibers()?;
    let phi = inverse_fib(packet)?;
    let elements = groth_over(base, &phi)?;
    let a = &packet.functor.source;
    let n = base.vcat.len();
    let h0 = elements.objects.copair_into(a.a0(), &fibers.inclusions)?;
    let lift = packet.comparison.inverse()?;
    let pieces = (0..n * n)
        .map(|k| {
            let pr = product(&base.homs.summands[k], fibers.fiber(k % n));
            let into = packet.square.induce(
                &pr.proj(0).then(&base.homs.injection(k))?,
                &pr.proj(1).then(&fibers.inclusions[k % n])?,
            )?;
            into.then(&lift)
        })
        .collect::<Result<Vec<Map>>>()?;
    let h1 = elements.morphisms.copair_into(a.a1(), &pieces)?;
    let eps = InternalFunctor::new(elements.total.clone(), a.clone(), h0, h1)?;
    let over = eps.then(&packet.functor)? == elements.projection;
    let certificate = over && eps.validate().is_valid() && eps.is_iso();
    Ok(Certified {
        value: eps,
        certificate,
    })
}
