//! `∫_C F` for presheaves and copresheaves, `∫_C α` for transformations, and
//! the change-of-base functor `∫_F G` with its pullback certificate.

use crate::cosmos::{
    coproduct, indexed_coproduct_map, product, product_map, Map, Product, TaggedCoproduct,
};
use crate::enriched::{VCategory, VCopresheaf, VFunctor, VNat, VPresheaf};
use crate::error::{Error, Result};
use crate::internal::{
    fibration_with_fibers, internalize, internalize_functor, pullback_internal, FibrationPacket,
    InternalCategory, InternalFunctor, InternalPullback, Internalization, Variance,
};

/// An internal category of elements with its projection and coproduct tagging.
#[derive(Clone, Debug)]
pub struct GrothResult {
    /// The base `Int C`.
    pub base: Internalization,
    /// The internal category of elements.
    pub total: InternalCategory,
    /// The projection to `Int C`.
    pub projection: InternalFunctor,
    /// Level 0, `⊔_A FA`, one summand per object of `C`.
    pub objects: TaggedCoproduct,
    /// Level 1 at index `a * n + b`: `C(A,B) × FB` for presheaves,
    /// `WA × C(A,B)` for copresheaves.
    pub morphisms: TaggedCoproduct,
    /// The projection's (op)fibration packet, with the summands as fibers.
    pub packet: FibrationPacket,
}

impl GrothResult {
    /// The level-0 cell of the element `x ∈ FA`.
    pub fn element_cell(&self, a: usize, x: u32) -> u32 {
        self.objects.inject_obj(a, x)
    }

    /// Splits a level-0 cell into `(A, x)`.
    pub fn locate_element(&self, o: u32) -> (usize, u32) {
        self.objects.locate_obj(o)
    }
}

/// Builds `∫_C F` after checking that `F` is a valid presheaf on `C`.
pub fn groth(c: &VCategory, f: &VPresheaf) -> Result<GrothResult> {
    if f.base() != c {
        return Err(Error::Validation(
            "presheaf is not on the given V-category".into(),
        ));
    }
    f.validate().into_result()?;
    groth_over(&internalize(c)?, f)
}

/// Builds `∫_C F` over an existing internalization of its base.
pub fn groth_over(int: &Internalization, f: &VPresheaf) -> Result<GrothResult> {
    let c = &int.vcat;
    if f.base() != c {
        return Err(Error::Validation(
            "presheaf is not on the internalized V-category".into(),
        ));
    }
    let cosmos = c.cosmos();
    let n = c.len();
    let objects = coproduct(
        cosmos,
        (0..n)
            .map(|a| (c.objects()[a].clone(), f.at(a).clone()))
            .collect(),
    );
    let prods: Vec<Product> = (0..n * n)
        .map(|k| product(c.hom(k / n, k % n), f.at(k % n)))
        .collect();
    let morphisms = coproduct(
        cosmos,
        (0..n * n)
            .map(|k| (int.homs.tags[k].clone(), prods[k].obj.clone()))
            .collect(),
    );
    let src_idx: Vec<usize> = (0..n * n).map(|k| k / n).collect();
    let tgt_idx: Vec<usize> = (0..n * n).map(|k| k % n).collect();
    let evs: Vec<Map> = (0..n * n).map(|k| f.ev(k / n, k % n).clone()).collect();
    let s = indexed_coproduct_map(&morphisms, &objects, &src_idx, &evs)?;
    let seconds: Vec<Map> = prods.iter().map(|p| p.proj(1)).collect();
    let t = indexed_coproduct_map(&morphisms, &objects, &tgt_idx, &seconds)?;
    let diag: Vec<usize> = (0..n).map(|a| a * n + a).collect();
    let units = (0..n)
        .map(|a| {
            prods[a * n + a].pair(&[
                Map::to_terminal(f.at(a)).then(c.ident(a))?,
                Map::identity(f.at(a)),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let i = indexed_coproduct_map(&objects, &morphisms, &diag, &units)?;
    let m = morphisms.clone();
    let vc = c.clone();
    let total = InternalCategory::from_cells(
        objects.total.clone(),
        morphisms.total.clone(),
        s,
        t,
        i,
        move |x, y| {
            let (k0, p) = m.locate_mor(x);
            let (k1, q) = m.locate_mor(y);
            let (a, b, cc) = (k0 / n, k0 % n, k1 % n);
            let (hp, hq) = (m.summands[k0].split_mor(p), m.summands[k1].split_mor(q));
            let h = vc.comp_mor(a, b, cc, hp[0], hq[0]);
            m.inject_mor(a * n + cc, m.summands[a * n + cc].join_mor(&[h, hq[1]]))
        },
    )?;
    let points: Vec<Map> = (0..n).map(|a| Map::to_terminal(f.at(a))).collect();
    let same: Vec<usize> = (0..n * n).collect();
    let h0 = indexed_coproduct_map(&objects, &int.objects, &(0..n).collect::<Vec<_>>(), &points)?;
    let firsts: Vec<Map> = prods.iter().map(|p| p.proj(0)).collect();
    let h1 = indexed_coproduct_map(&morphisms, &int.homs, &same, &firsts)?;
    let projection = InternalFunctor::new(total.clone(), int.cat.clone(), h0, h1)?;
    let inclusions = (0..n).map(|a| objects.injection(a)).collect();
    let packet = fibration_with_fibers(
        &projection,
        int,
        Variance::Fibration,
        objects.summands.clone(),
        inclusions,
    )?;
    Ok(GrothResult {
        base: int.clone(),
        total,
        projection,
        objects,
        morphisms,
        packet,
    })
}

/// Builds `∫_I W` for a copresheaf `W : I → V`: level 1 is `⊔ Wi × I(i,j)`,
/// the source is the tag-preserving projection and the target is `ev^W`.
/// The projection is packaged as a discrete opfibration.
pub fn groth_cov(w: &VCopresheaf) -> Result<GrothResult> {
    w.validate().into_result()?;
    let c = w.base();
    let int = internalize(c)?;
    let cosmos = c.cosmos();
    let n = c.len();
    let objects = coproduct(
        cosmos,
        (0..n)
            .map(|a| (c.objects()[a].clone(), w.at(a).clone()))
            .collect(),
    );
    let prods: Vec<Product> = (0..n * n)
        .map(|k| product(w.at(k / n), c.hom(k / n, k % n)))
        .collect();
    let morphisms = coproduct(
        cosmos,
        (0..n * n)
            .map(|k| (int.homs.tags[k].clone(), prods[k].obj.clone()))
            .collect(),
    );
    let src_idx: Vec<usize> = (0..n * n).map(|k| k / n).collect();
    let tgt_idx: Vec<usize> = (0..n * n).map(|k| k % n).collect();
    let firsts: Vec<Map> = prods.iter().map(|p| p.proj(0)).collect();
    let s = indexed_coproduct_map(&morphisms, &objects, &src_idx, &firsts)?;
    let evs: Vec<Map> = (0..n * n).map(|k| w.ev(k / n, k % n).clone()).collect();
    let t = indexed_coproduct_map(&morphisms, &objects, &tgt_idx, &evs)?;
    let diag: Vec<usize> = (0..n).map(|a| a * n + a).collect();
    let units = (0..n)
        .map(|a| {
            prods[a * n + a].pair(&[
                Map::identity(w.at(a)),
                Map::to_terminal(w.at(a)).then(c.ident(a))?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let i = indexed_coproduct_map(&objects, &morphisms, &diag, &units)?;
    let m = morphisms.clone();
    let vc = c.clone();
    let total = InternalCategory::from_cells(
        objects.total.clone(),
        morphisms.total.clone(),
        s,
        t,
        i,
        move |x, y| {
            let (k0, p) = m.locate_mor(x);
            let (k1, q) = m.locate_mor(y);
            let (a, b, cc) = (k0 / n, k0 % n, k1 % n);
            let (hp, hq) = (m.summands[k0].split_mor(p), m.summands[k1].split_mor(q));
            let h = vc.comp_mor(a, b, cc, hp[1], hq[1]);
            m.inject_mor(a * n + cc, m.summands[a * n + cc].join_mor(&[hp[0], h]))
        },
    )?;
    let points: Vec<Map> = (0..n).map(|a| Map::to_terminal(w.at(a))).collect();
    let h0 = indexed_coproduct_map(&objects, &int.objects, &(0..n).collect::<Vec<_>>(), &points)?;
    let seconds: Vec<Map> = prods.iter().map(|p| p.proj(1)).collect();
    let h1 = indexed_coproduct_map(
        &morphisms,
        &int.homs,
        &(0..n * n).collect::<Vec<_>>(),
        &seconds,
    )?;
    let projection = InternalFunctor::new(total.clone(), int.cat.clone(), h0, h1)?;
    let inclusions = (0..n).map(|a| objects.injection(a)).collect();
    let packet = fibration_with_fibers(
        &projection,
        &int,
        Variance::Opfibration,
        objects.summands.clone(),
        inclusions,
    )?;
    Ok(GrothResult {
        base: int,
        total,
        projection,
        objects,
        morphisms,
        packet,
    })
}

/// `∫_C α : ∫_C F → ∫_C G`, built from fresh internal categories of elements.
pub fn groth_nat(alpha: &VNat) -> Result<InternalFunctor> {
    alpha.validate().into_result()?;
    let int = internalize(alpha.source.base())?;
    let gf = groth_over(&int, &alpha.source)?;
    let gg = groth_over(&int, &alpha.target)?;
    groth_nat_between(alpha, &gf, &gg)
}

/// `∫_C α` between given internal categories of elements of its source and
/// target. Fails if the triangle over `Int C` does not commute.
pub fn groth_nat_between(
    alpha: &VNat,
    source: &GrothResult,
    target: &GrothResult,
) -> Result<InternalFunctor> {
    let c = alpha.source.base();
    let n = c.len();
    if source.objects.summands.len() != n || target.objects.summands.len() != n {
        return Err(Error::Validation(
            "elements are not over the transformation's base".into(),
        ));
    }
    let h0 = indexed_coproduct_map(
        &source.objects,
        &target.objects,
        &(0..n).collect::<Vec<_>>(),
        &alpha.components,
    )?;
    let comps: Vec<Map> = (0..n * n)
        .map(|k| {
            product_map(
                &Map::identity(c.hom(k / n, k % n)),
                &alpha.components[k % n],
            )
        })
        .collect();
    let h1 = indexed_coproduct_map(
        &source.morphisms,
        &target.morphisms,
        &(0..n * n).collect::<Vec<_>>(),
        &comps,
    )?;
    let h = InternalFunctor::new(source.total.clone(), target.total.clone(), h0, h1)?;
    if h.then(&target.projection)? != source.projection {
        return Err(Error::Validation(
            "transformation does not commute with the projections".into(),
        ));
    }
    Ok(h)
}

/// The change-of-base functor `∫_F G : ∫_C (G ∘ F) → ∫_D G` and its square
/// over `Int F` and the projections.
#[derive(Clone, Debug)]
pub struct BaseChange {
    /// `∫_F G`.
    pub functor: InternalFunctor,
    /// `∫_C (G ∘ F)`.
    pub source: GrothResult,
    /// `∫_D G`.
    pub target: GrothResult,
    /// `Int F : Int C → Int D`.
    pub base_functor: InternalFunctor,
    /// The levelwise pullback of `Int F` and the projection of `∫_D G`.
    pub square: InternalPullback,
    /// True when the comparison into the pullback is an isomorphism at both levels.
    pub certificate: bool,
}

/// Builds `∫_F G` and certifies that its square is a pullback.
pub fn change_of_base(f: &VFunctor, g: &VPresheaf) -> Result<BaseChange> {
    if g.base() != &f.target {
        return Err(Error::Validation(
            "presheaf is not on the functor's target".into(),
        ));
    }
    f.validate().into_result()?;
    g.validate().into_result()?;
    let (c, d) = (&f.source, &f.target);
    let (ic, id) = (internalize(c)?, internalize(d)?);
    let source = groth_over(&ic, &f.restrict(g)?)?;
    let target = groth_over(&id, g)?;
    let n = c.len();
    let ids: Vec<Map> = source.objects.summands.iter().map(Map::identity).collect();
    let h0 = indexed_coproduct_map(&source.objects, &target.objects, &f.obj, &ids)?;
    let alpha: Vec<usize> = (0..n * n)
        .map(|k| id.hom_index(f.obj[k / n], f.obj[k % n]))
        .collect();
    let comps: Vec<Map> = (0..n * n)
        .map(|k| product_map(f.on_hom(k / n, k % n), &Map::identity(g.at(f.obj[k % n]))))
        .collect();
    let h1 = indexed_coproduct_map(&source.morphisms, &target.morphisms, &alpha, &comps)?;
    let functor = InternalFunctor::new(source.total.clone(), target.total.clone(), h0, h1)?;
    let base_functor = internalize_functor(f, &ic, &id)?;
    let square = pullback_internal(&base_functor, &target.projection)?;
    let m0 = square.level0.induce(&source.projection.h0, &functor.h0)?;
    let m1 = square.level1.induce(&source.projection.h1, &functor.h1)?;
    let certificate = m0.is_iso() && m1.is_iso();
    Ok(BaseChange {
        functor,
        source,
        target,
        base_functor,
        square,
        certificate,
    })
}
