//! Weighted limits `(L, λ)` of a diagram `G : I → C` with weight
//! `W : I → V`, decided through the presheaf of weighted cones
//! `E = V^I(W, C(−, G))` and, independently, as a conical internal limit
//! of `Int G ∘ π_W : ∫W → Int C`.

use crate::cosmos::{Cosmos, Exponential, Label, Map};
use crate::enriched::{
    functor_hom, hom_copresheaf, weighted_cone_presheaf, CoVNat, ConePresheaf, End, VCategory,
    VCopresheaf, VFunctor,
};
use crate::error::{Error, Result};
use crate::grothendieck::{groth, groth_cov, Certified, GrothResult};
use crate::internal::{
    comma, cone_category, internalize, internalize_functor, is_internal_terminal, is_v_terminal,
    underlying, Cone, ConeCategory, InternalFunctor,
};

use super::representation::is_shifted_terminal;
use super::tensors::has_v_tensors;
use super::Verdict;

/// A candidate weighted limit: weight `W`, diagram `G`, apex `L` and the
/// cone `λ : W ⇒ C(L, G−)` in covariant evaluation form.
#[derive(Clone, Debug)]
pub struct WeightedLimitProblem {
    /// The weight `W : I → V`.
    pub weight: VCopresheaf,
    /// The diagram `G : I → C`.
    pub diagram: VFunctor,
    /// The apex `L`, an object of `C`.
    pub apex: usize,
    /// `λ`, with components `Wi → C(L, Gi)`.
    pub cone: CoVNat,
}

impl WeightedLimitProblem {
    /// Assembles a problem, checking shapes and the naturality of `λ`.
    pub fn new(
        weight: VCopresheaf,
        diagram: VFunctor,
        apex: usize,
        components: Vec<Map>,
    ) -> Result<Self> {
        if weight.base() != &diagram.source {
            return Err(Error::Validation(
                "weight and diagram have different shapes".into(),
            ));
        }
        if apex >= diagram.target.len() {
            return Err(Error::Lookup(format!("object #{apex}")));
        }
        let target = hom_copresheaf(&diagram, apex)?;
        let cone = CoVNat::new(weight.clone(), target, components)?;
        cone.validate().into_result()?;
        Ok(WeightedLimitProblem {
            weight,
            diagram,
            apex,
            cone,
        })
    }

    /// The `V`-category `C` the diagram lands in.
    pub fn category(&self) -> &VCategory {
        &self.diagram.target
    }
}

/// The presheaf of weighted cones and its internal category of elements,
/// which serves as the internal category of weighted cones over `Int C`.
#[derive(Clone, Debug)]
pub struct WeightedCones {
    /// `E = V^I(W, C(−, G))` with its ends.
    pub cones: ConePresheaf,
    /// `∫_C E`.
    pub elements: GrothResult,
}

impl WeightedCones {
    /// The point of `E(L)` naming `λ`.
    pub fn point_of(&self, p: &WeightedLimitProblem) -> Result<u32> {
        let end = &self.cones.ends[p.apex];
        let fam = p
            .cone
            .components
            .iter()
            .zip(&end.factors)
            .map(|(m, e)| {
                e.name(m).ok_or_else(|| {
                    Error::Structure("component missing from the exponential".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        end.locate(&fam)
            .ok_or_else(|| Error::Validation("the cone is not a point of the end".into()))
    }

    /// The level-0 cell of `(L, λ)` in `∫_C E`.
    pub fn cell_of(&self, p: &WeightedLimitProblem) -> Result<u32> {
        Ok(self.elements.element_cell(p.apex, self.point_of(p)?))
    }
}

/// Builds the internal category of weighted cones as `∫_C E`.
pub fn weighted_cone_internal(w: &VCopresheaf, g: &VFunctor) -> Result<WeightedCones> {
    let cones = weighted_cone_presheaf(w, g)?;
    let elements = groth(&g.target, &cones.presheaf)?;
    Ok(WeightedCones { cones, elements })
}

fn lambda_star(p: &WeightedLimitProblem, ends: &[End]) -> Result<Vec<Map>> {
    let c = p.category();
    let l = p.apex;
    (0..c.len())
        .map(|a| {
            let end = &ends[a];
            let z = c.hom(a, l);
            let maps = p
                .cone
                .components
                .iter()
                .enumerate()
                .map(|(i, lam)| {
                    let gi = p.diagram.obj[i];
                    end.factors[i].curry_with(
                        z,
                        |w, h| c.comp_obj(a, l, gi, h, lam.on_obj(w)),
                        |m, h| c.comp_mor(a, l, gi, h, lam.on_mor(m)),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            end.induce_from(z, &maps)
        })
        .collect()
}

/// Every component `λ*_A : C(A, L) → V^I(W, C(A, G−))` is an isomorphism.
pub fn is_weighted_limit_direct(p: &WeightedLimitProblem) -> Result<bool> {
    let shape = &p.diagram.source;
    let c = p.category();
    let ends = (0..c.len())
        .map(|a| functor_hom(&p.weight, &hom_copresheaf(&p.diagram, a)?))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(ends.iter().all(|e| e.arity() == shape.len()));
    Ok(lambda_star(p, &ends)?.iter().all(Map::is_iso))
}

/// `(L, λ)` is internal terminal in the internal category of weighted cones.
pub fn is_weighted_limit_elements(p: &WeightedLimitProblem) -> Result<bool> {
    let wc = weighted_cone_internal(&p.weight, &p.diagram)?;
    is_internal_terminal(&wc.elements.total, wc.cell_of(p)?)
}

/// `(L, λ)` passes the shifted terminal test in the weighted cones.
pub fn is_weighted_limit_shifted(p: &WeightedLimitProblem) -> Result<bool> {
    let wc = weighted_cone_internal(&p.weight, &p.diagram)?;
    is_shifted_terminal(
        &wc.elements.total,
        wc.cell_of(p)?,
        &p.category().cosmos().generators(),
    )
}

fn check_tensors(c: &VCategory) -> Result<()> {
    for x in &c.cosmos().generators().probes {
        if has_v_tensors(c, x)?.is_none() {
            return Err(Error::HypothesisNotMet(format!(
                "the category lacks V-tensors by the probe with {} objects",
                x.n_objs()
            )));
        }
    }
    Ok(())
}

/// `(L, λ)` is `V`-terminal in `Und` of the weighted cones. Requires
/// `V`-tensors by every probe; the cone presheaf preserves them automatically.
pub fn is_weighted_limit_und_tensors(p: &WeightedLimitProblem) -> Result<bool> {
    check_tensors(p.category())?;
    let wc = weighted_cone_internal(&p.weight, &p.diagram)?;
    Ok(is_v_terminal(
        &underlying(&wc.elements.total)?.vcat,
        wc.cell_of(p)? as usize,
    ))
}

/// The weighted limit problem recast as a cone over `Int G ∘ π_W`.
#[derive(Clone, Debug)]
pub struct ConicalTranslation {
    /// `∫_I W` with its projection `π_W`.
    pub weight_elements: GrothResult,
    /// The category of cones over `Int G ∘ π_W`.
    pub cones: ConeCategory,
    /// The cone `(L, κ)`: on the `Wi` summand `κ` is `λ_i` followed by the
    /// inclusion of `C(L, Gi)`.
    pub cone: Cone,
    /// The level-0 index of `(L, κ)` in the cone category.
    pub index: u32,
}

/// Translates `(L, λ)` into a cone over `Int G ∘ π_W` and locates it.
pub fn cone_translate(p: &WeightedLimitProblem) -> Result<ConicalTranslation> {
    let weight_elements = groth_cov(&p.weight)?;
    let int_c = internalize(p.category())?;
    let int_g = internalize_functor(&p.diagram, &weight_elements.base, &int_c)?;
    let diagram = weight_elements.projection.then(&int_g)?;
    let (l, objs) = (p.apex, &weight_elements.objects);
    let lam = &p.cone.components;
    let slot = |i: usize| int_c.hom_index(l, p.diagram.obj[i]);
    let total0 = weight_elements.total.a0();
    let cone = Cone {
        apex: int_c.object_cell(l),
        obj: (0..total0.n_objs() as u32)
            .map(|o| {
                let (i, w) = objs.locate_obj(o);
                int_c.homs.inject_obj(slot(i), lam[i].on_obj(w))
            })
            .collect(),
        mor: (0..total0.n_mors() as u32)
            .map(|m| {
                let (i, w) = objs.locate_mor(m);
                int_c.homs.inject_mor(slot(i), lam[i].on_mor(w))
            })
            .collect(),
    };
    let cones = cone_category(&diagram)?;
    let index = cones.locate(&cone).ok_or_else(|| {
        Error::Validation("the translated cone is not a cone over Int G ∘ π_W".into())
    })?;
    Ok(ConicalTranslation {
        weight_elements,
        cones,
        cone,
        index,
    })
}

/// `(L, κ)` is an internal limit of `Int G ∘ π_W`.
pub fn is_weighted_limit_conical(p: &WeightedLimitProblem) -> Result<bool> {
    let t = cone_translate(p)?;
    is_internal_terminal(&t.cones.cat, t.index)
}

/// The verdicts of all five weighted-limit routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedVerdicts {
    /// `λ*` is an isomorphism.
    pub direct: Verdict,
    /// Internal terminal among weighted cones.
    pub elements: Verdict,
    /// Shifted terminal among weighted cones.
    pub shifted: Verdict,
    /// `V`-terminal in `Und` of the weighted cones, under tensor hypotheses.
    pub und_tensors: Verdict,
    /// Internal limit of `Int G ∘ π_W`.
    pub conical: Verdict,
}

impl WeightedVerdicts {
    /// Whether every applicable route gives the same answer.
    pub fn agree(&self) -> bool {
        super::agree(&[
            &self.direct,
            &self.elements,
            &self.shifted,
            &self.und_tensors,
            &self.conical,
        ])
    }
}

/// Runs every route, sharing the weighted cones.
pub fn weighted_limit_verdicts(p: &WeightedLimitProblem) -> Result<WeightedVerdicts> {
    let wc = weighted_cone_internal(&p.weight, &p.diagram)?;
    let cell = wc.cell_of(p)?;
    let total = &wc.elements.total;
    let direct =
        Verdict::from_route(lambda_star(p, &wc.cones.ends).map(|m| m.iter().all(Map::is_iso)))?;
    let elements = Verdict::from_route(is_internal_terminal(total, cell))?;
    let shifted = Verdict::from_route(is_shifted_terminal(
        total,
        cell,
        &p.category().cosmos().generators(),
    ))?;
    let und_tensors = Verdict::from_route(
        check_tensors(p.category())
            .and_then(|()| Ok(is_v_terminal(&underlying(total)?.vcat, cell as usize))),
    )?;
    let conical = Verdict::from_route(is_weighted_limit_conical(p))?;
    Ok(WeightedVerdicts {
        direct,
        elements,
        shifted,
        und_tensors,
        conical,
    })
}

fn compose_named(
    ey: &Exponential,
    ez: &Exponential,
    exz: &Exponential,
    a: u32,
    b: u32,
) -> Result<u32> {
    let missing = || Error::Structure("composite missing from the exponential".into());
    let x = &ey.base;
    match x.cosmos() {
        Cosmos::FinSet => exz
            .name(&ey.functor(a).then(&ez.functor(b))?)
            .ok_or_else(missing),
        Cosmos::FinCat => {
            let (yo, zo) = (ey.obj.clone(), ez.obj.clone());
            let src = exz
                .name(&ey.functor(yo.src(a)).then(&ez.functor(zo.src(b)))?)
                .ok_or_else(missing)?;
            let tgt = exz
                .name(&ey.functor(yo.tgt(a)).then(&ez.functor(zo.tgt(b)))?)
                .ok_or_else(missing)?;
            let comps: Vec<u32> = (0..x.n_objs() as u32)
                .map(|o| ez.apply_mor(ey.apply_mor(x.ident(o), a), b))
                .collect();
            exz.name_nat(src, tgt, &comps).ok_or_else(missing)
        }
    }
}

/// Cross-checks the weighted cones against a comma computed inside a
/// finite full sub-`V`-category `D` of `(V^I)^op` on the functors
/// `C(A, G−)` and `W`: the comparison from `Int H ↓ W` (with
/// `H : C → D`, `A ↦ C(A, G−)`) to `∫_C E` must be an isomorphism over `Int C`.
pub fn weighted_cone_cross_check(
    w: &VCopresheaf,
    g: &VFunctor,
    wc: &WeightedCones,
) -> Result<Certified<InternalFunctor>> {
    let c = &g.target;
    let n = c.len();
    let cosmos = c.cosmos();
    let mut funs: Vec<VCopresheaf> = wc.cones.homs.clone();
    funs.push(w.clone());
    let m = n + 1;
    let shape = w.base().len();
    // `hom[k * m + l]` is `V^I(F_l, F_k)`.
    let mut ends: Vec<End> = Vec::with_capacity(m * m);
    for k in 0..m {
        for l in 0..m {
            ends.push(if l == n && k < n {
                wc.cones.ends[k].clone()
            } else {
                functor_hom(&funs[l], &funs[k])?
            });
        }
    }
    let mut labels: Vec<Label> = c
        .objects()
        .iter()
        .map(|a| format!("hom:{a}").into())
        .collect();
    labels.push("weight".into());
    let e = &ends;
    let composite = |k: usize, l: usize, q: usize, a: u32, b: u32| -> Result<u32> {
        let (ekl, elq, ekq) = (&e[k * m + l], &e[l * m + q], &e[k * m + q]);
        let fa = ekl.mor_family(a);
        let fb = elq.mor_family(b);
        let fam = (0..shape)
            .map(|i| {
                compose_named(
                    &elq.factors[i],
                    &ekl.factors[i],
                    &ekq.factors[i],
                    fb[i],
                    fa[i],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        match cosmos {
            Cosmos::FinSet => ekq.locate(&fam),
            Cosmos::FinCat => {
                let q_obj = &ekq.obj;
                (0..q_obj.n_mors() as u32).find(|&r| ekq.mor_family(r) == fam.as_slice())
            }
        }
        .ok_or_else(|| Error::Structure("composite transformation missing from the end".into()))
    };
    let identity = |k: usize| -> Result<u32> {
        let ekk = &e[k * m + k];
        let fam = (0..shape)
            .map(|i| {
                let f = &ekk.factors[i];
                f.name(&Map::identity(&f.base))
                    .ok_or_else(|| Error::Structure("identity missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ekk.locate(&fam)
            .ok_or_else(|| Error::Structure("identity transformation missing from the end".into()))
    };
    let idents = (0..m).map(identity).collect::<Result<Vec<_>>>()?;
    let mut failure: Option<Error> = None;
    let d = {
        let fail = std::cell::RefCell::new(&mut failure);
        VCategory::from_cells(
            cosmos,
            labels,
            ends.iter().map(|x| x.obj.clone()).collect(),
            |k, l, q, a, b| {
                composite(k, l, q, a, b).unwrap_or_else(|err| {
                    fail.borrow_mut().get_or_insert(err);
                    0
                })
            },
            |k| idents[k],
        )?
    };
    if let Some(err) = failure {
        return Err(err);
    }
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let end = &ends[a * m + b];
            let z = c.hom(a, b);
            let maps = (0..shape)
                .map(|i| {
                    let gi = g.obj[i];
                    end.factors[i].curry_with(
                        z,
                        |u, h| c.comp_obj(a, b, gi, h, u),
                        |um, h| c.comp_mor(a, b, gi, h, um),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            homs.push(end.induce_from(z, &maps)?);
        }
    }
    let h = VFunctor::new(c.clone(), d.clone(), (0..n).collect(), homs)?;
    let int_c = &wc.elements.base;
    let int_d = internalize(&d)?;
    let int_h = internalize_functor(&h, int_c, &int_d)?;
    let target = int_d.object_cell(n);
    let cm = comma(&int_h, target)?;
    let leg0 = &cm.projection;
    let el = &wc.elements;
    let bad = || Error::Structure("comma cell does not lie over the weight".into());
    let at_obj = |o: u32| -> Result<(usize, u32)> {
        let a = int_c.object_of(leg0.h0.on_obj(o));
        let (k, l, e) = int_d.locate_hom_obj(cm.arrow0.on_obj(o));
        if k != a || l != n {
            return Err(bad());
        }
        Ok((a, e))
    };
    let at_mor = |mm: u32| -> Result<(usize, u32)> {
        let a = int_c.object_of(leg0.h0.on_obj(cm.cat.a0().src(mm)));
        let (k, l, e) = int_d.locate_hom_mor(cm.arrow0.on_mor(mm));
        if k != a || l != n {
            return Err(bad());
        }
        Ok((a, e))
    };
    let (c0, c1) = (cm.cat.a0(), cm.cat.a1());
    let h0 = Map::new(
        c0.clone(),
        el.total.a0().clone(),
        (0..c0.n_objs() as u32)
            .map(|o| at_obj(o).map(|(a, e)| el.objects.inject_obj(a, e)))
            .collect::<Result<_>>()?,
        (0..c0.n_mors() as u32)
            .map(|x| at_mor(x).map(|(a, e)| el.objects.inject_mor(a, e)))
            .collect::<Result<_>>()?,
    )?;
    let t = cm.cat.t();
    let level1_obj = |u: u32| -> Result<u32> {
        let (a, b, f) = int_c.locate_hom_obj(leg0.h1.on_obj(u));
        let (bb, y) = at_obj(t.on_obj(u))?;
        if bb != b {
            return Err(bad());
        }
        let slot = a * n + b;
        Ok(el
            .morphisms
            .inject_obj(slot, el.morphisms.summands[slot].join_obj(&[f, y])))
    };
    let level1_mor = |u: u32| -> Result<u32> {
        let (a, b, f) = int_c.locate_hom_mor(leg0.h1.on_mor(u));
        let (bb, y) = at_mor(t.on_mor(u))?;
        if bb != b {
            return Err(bad());
        }
        let slot = a * n + b;
        Ok(el
            .morphisms
            .inject_mor(slot, el.morphisms.summands[slot].join_mor(&[f, y])))
    };
    let h1 = Map::new(
        c1.clone(),
        el.total.a1().clone(),
        (0..c1.n_objs() as u32)
            .map(level1_obj)
            .collect::<Result<_>>()?,
        (0..c1.n_mors() as u32)
            .map(level1_mor)
            .collect::<Result<_>>()?,
    )?;
    let functor = InternalFunctor::new(cm.cat.clone(), el.total.clone(), h0, h1)?;
    let certificate = functor.validate().is_valid()
        && functor.is_iso()
        && functor.then(&el.projection)? == cm.projection;
    Ok(Certified {
        value: functor,
        certificate,
    })
}

/// Every cone `λ : W ⇒ C(L, G−)` at apex `L`, one per point of the end
/// `V^I(W, C(L, G−))`.
pub fn candidate_cones(
    w: &VCopresheaf,
    g: &VFunctor,
    apex: usize,
) -> Result<Vec<WeightedLimitProblem>> {
    if apex >= g.target.len() {
        return Err(Error::Lookup(format!("object #{apex}")));
    }
    let end = functor_hom(w, &hom_copresheaf(g, apex)?)?;
    (0..end.obj.n_objs() as u32)
        .map(|k| {
            let comps = (0..end.arity()).map(|i| end.component(k, i)).collect();
            WeightedLimitProblem::new(w.clone(), g.clone(), apex, comps)
        })
        .collect()
}
