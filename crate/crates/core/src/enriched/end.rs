//! Ends `V^I(F, G)` of pairs of functors `I → V`, and the weighted-cone
//! presheaf `V^I(W, C(−, G))`.
//!
//! The end is the equalizer of the two maps
//! `∏_i [Fi, Gi] ⇉ ∏_{i,j} [Fi × I(i,j), Gj]`. Only the factors `[Fi, Gi]`
//! are materialized; the codomain product is compared through its
//! evaluation, cell by cell, which is exactly equality of the uncurried maps.

use std::collections::HashMap;

use super::functor::{hom_copresheaf, CoVNat, VCopresheaf, VFunctor, VPresheaf};
use crate::cosmos::{exponential, product, Builder, Exponential, Map, Obj};
use crate::csp::Csp;
use crate::error::{Error, Result};

/// The end `V^I(F, G)` as an explicit subobject of `∏_i [Fi, Gi]`.
#[derive(Clone, Debug)]
pub struct End {
    /// The end object.
    pub obj: Obj,
    /// The factor exponentials `[Fi, Gi]`.
    pub factors: Vec<Exponential>,
    objects: Vec<Vec<u32>>,
    morphisms: Vec<Vec<u32>>,
    object_index: HashMap<Vec<u32>, u32>,
    morphism_index: HashMap<Vec<u32>, u32>,
}

/// Computes the end of `f, g : I → V`.
pub fn functor_hom(f: &VCopresheaf, g: &VCopresheaf) -> Result<End> {
    if f.base() != g.base() {
        return Err(Error::Validation(
            "end of functors with different sources".into(),
        ));
    }
    let cat = f.base();
    let n = cat.len();
    let factors: Vec<Exponential> = (0..n)
        .map(|i| exponential(f.at(i), g.at(i)))
        .collect::<Result<_>>()?;

    // objects: families of maps α_i : Fi → Gi with ev^G(α_i x, u) = α_j(ev^F(x, u))
    let objects = {
        let mut csp = Csp::new();
        for e in &factors {
            csp.var_range(e.obj.n_objs());
        }
        for i in 0..n {
            for j in 0..n {
                let (fi, h) = (f.at(i), cat.hom(i, j));
                let (ei, ej) = (&factors[i], &factors[j]);
                csp.constrain(i.max(j), move |v| {
                    (0..fi.n_mors() as u32).all(|x| {
                        (0..h.n_mors() as u32).all(|u| {
                            g.act(i, j, ei.functor_mor(v[i], x), u)
                                == ej.functor_mor(v[j], f.act(i, j, x, u))
                        })
                    })
                });
            }
        }
        csp.solutions()?
    };
    let object_index: HashMap<Vec<u32>, u32> = objects
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, v)| (v, k as u32))
        .collect();

    let cosmos = cat.cosmos();
    let mut b = Builder::new(cosmos);
    for fam in &objects {
        let parts: Vec<String> = fam
            .iter()
            .enumerate()
            .map(|(i, &k)| factors[i].obj.obj_label(k).into_owned())
            .collect();
        b.obj(format!("({})", parts.join(",")));
    }

    // morphisms: families of transformations θ_i : α_i ⇒ β_i with
    // ev^G((θ_i)_x, 1_u) = (θ_j)_{ev^F(x, u)} on objects x, u
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    if cosmos == crate::cosmos::Cosmos::FinCat {
        let mut ident = vec![0u32; objects.len()];
        for (sa, alpha) in objects.iter().enumerate() {
            for (sb, beta) in objects.iter().enumerate() {
                let mut csp = Csp::new();
                for i in 0..n {
                    let e = &factors[i].obj;
                    csp.var_list(e.hom(alpha[i], beta[i]).to_vec());
                }
                for i in 0..n {
                    for j in 0..n {
                        let (fi, h) = (f.at(i), cat.hom(i, j));
                        let (ei, ej) = (&factors[i], &factors[j]);
                        csp.constrain(i.max(j), move |v| {
                            let (ti, tj) = (ei.components(v[i]), ej.components(v[j]));
                            (0..fi.n_objs() as u32).all(|x| {
                                (0..h.n_objs() as u32).all(|u| {
                                    g.act(i, j, ti[x as usize], h.ident(u))
                                        == tj[f.act_obj(i, j, x, u) as usize]
                                })
                            })
                        });
                    }
                }
                for fam in csp.solutions()? {
                    let k = morphisms.len() as u32;
                    let parts: Vec<String> = fam
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| factors[i].obj.mor_label(m).into_owned())
                        .collect();
                    b.mor(format!("({})", parts.join(",")), sa as u32, sb as u32);
                    if sa == sb
                        && fam
                            .iter()
                            .enumerate()
                            .all(|(i, &m)| m == factors[i].obj.ident(alpha[i]))
                    {
                        ident[sa] = k;
                    }
                    morphism_index.insert(fam.clone(), k);
                    morphisms.push(fam);
                }
            }
        }
        b.set_ident(ident);
        let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); objects.len()];
        for (k, fam) in morphisms.iter().enumerate() {
            let s = object_index[&src_family(&factors, fam)];
            by_src[s as usize].push(k as u32);
        }
        for (k, fam) in morphisms.iter().enumerate() {
            let t = object_index[&tgt_family(&factors, fam)];
            for &k2 in &by_src[t as usize] {
                let other = &morphisms[k2 as usize];
                let comp: Vec<u32> = fam
                    .iter()
                    .zip(other)
                    .enumerate()
                    .map(|(i, (&p, &q))| factors[i].obj.compose(p, q).expect("composable"))
                    .collect();
                b.set_comp(k as u32, k2, morphism_index[&comp]);
            }
        }
    }
    Ok(End {
        obj: b.finish(),
        factors,
        objects,
        morphisms,
        object_index,
        morphism_index,
    })
}

fn src_family(factors: &[Exponential], fam: &[u32]) -> Vec<u32> {
    fam.iter()
        .enumerate()
        .map(|(i, &m)| factors[i].obj.src(m))
        .collect()
}

fn tgt_family(factors: &[Exponential], fam: &[u32]) -> Vec<u32> {
    fam.iter()
        .enumerate()
        .map(|(i, &m)| factors[i].obj.tgt(m))
        .collect()
}

impl End {
    /// Number of factors (objects of the shape).
    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// The family of factor objects of end object `k`.
    pub fn family(&self, k: u32) -> &[u32] {
        &self.objects[k as usize]
    }

    /// The family of factor morphisms of end morphism `k`.
    pub fn mor_family(&self, k: u32) -> &[u32] {
        match self.obj.cosmos() {
            crate::cosmos::Cosmos::FinSet => &self.objects[k as usize],
            crate::cosmos::Cosmos::FinCat => &self.morphisms[k as usize],
        }
    }

    /// Component `i` of end object `k`, as a map `Fi → Gi`.
    pub fn component(&self, k: u32, i: usize) -> Map {
        self.factors[i].functor(self.objects[k as usize][i])
    }

    /// The projection `V^I(F, G) → [Fi, Gi]`.
    pub fn proj(&self, i: usize) -> Map {
        Map::from_fns(
            self.obj.clone(),
            self.factors[i].obj.clone(),
            |k| self.objects[k as usize][i],
            |m| self.mor_family(m)[i],
        )
    }

    /// The end object with the given family of factor objects.
    pub fn locate(&self, fam: &[u32]) -> Option<u32> {
        self.object_index.get(fam).copied()
    }

    /// The unique map `z → V^I(F, G)` whose projections are the given maps
    /// `z → [Fi, Gi]`; fails if the induced family is not in the end.
    pub fn induce(&self, maps: &[Map]) -> Result<Map> {
        if maps.len() != self.arity() {
            return Err(Error::Mediator("one map per factor is required".into()));
        }
        let z = match maps.first() {
            Some(m) => m.dom().clone(),
            None => {
                return Err(Error::Mediator(
                    "the end of an empty shape needs a domain".into(),
                ))
            }
        };
        self.induce_from(&z, maps)
    }

    /// As [`End::induce`] with an explicit domain (needed for empty shapes).
    pub fn induce_from(&self, z: &Obj, maps: &[Map]) -> Result<Map> {
        for (i, m) in maps.iter().enumerate() {
            if m.dom() != z || m.cod() != &self.factors[i].obj {
                return Err(Error::Mediator("factor map has the wrong type".into()));
            }
        }
        let objs = (0..z.n_objs() as u32)
            .map(|o| {
                let fam: Vec<u32> = maps.iter().map(|m| m.on_obj(o)).collect();
                self.locate(&fam).ok_or_else(|| {
                    Error::Mediator(format!("`{}` does not land in the end", z.obj_label(o)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mors = match z.cosmos() {
            crate::cosmos::Cosmos::FinSet => objs.clone(),
            crate::cosmos::Cosmos::FinCat => (0..z.n_mors() as u32)
                .map(|m| {
                    let fam: Vec<u32> = maps.iter().map(|x| x.on_mor(m)).collect();
                    self.morphism_index.get(&fam).copied().ok_or_else(|| {
                        Error::Mediator(format!("`{}` does not land in the end", z.mor_label(m)))
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Map::new(z.clone(), self.obj.clone(), objs, mors)
            .map_err(|e| Error::Mediator(e.to_string()))
    }

    /// The transformation `F ⇒ G` named by end object `k`.
    pub fn transformation(&self, f: &VCopresheaf, g: &VCopresheaf, k: u32) -> Result<CoVNat> {
        let comps = (0..self.arity()).map(|i| self.component(k, i)).collect();
        CoVNat::new(f.clone(), g.clone(), comps)
    }
}

/// The presheaf `E = V^I(W, C(−, G)) : C^op → V` of `W`-weighted cones over
/// `G`, together with the ends computing it at every object.
#[derive(Clone, Debug)]
pub struct ConePresheaf {
    /// The presheaf `E`.
    pub presheaf: VPresheaf,
    /// `E(A)` as an end, for every object `A` of `C`.
    pub ends: Vec<End>,
    /// The hom functors `C(A, G−)`.
    pub homs: Vec<VCopresheaf>,
}

/// Builds the weighted-cone presheaf of a weight `w : I → V` and a diagram `g : I → C`.
///
/// The action `C(A,B) × E(B) → E(A)` is induced into the end `E(A)` from the
/// curried composites `(h, α) ↦ (x ↦ c_{A,B,Gi}(h, α_i x))`.
pub fn weighted_cone_presheaf(w: &VCopresheaf, g: &VFunctor) -> Result<ConePresheaf> {
    if w.base() != &g.source {
        return Err(Error::Validation(
            "weight and diagram have different shapes".into(),
        ));
    }
    let c = &g.target;
    let n = c.len();
    let homs: Vec<VCopresheaf> = (0..n)
        .map(|a| hom_copresheaf(g, a))
        .collect::<Result<_>>()?;
    let ends: Vec<End> = homs
        .iter()
        .map(|h| functor_hom(w, h))
        .collect::<Result<_>>()?;
    let shape = w.base().len();
    let mut ev = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let z = product(c.hom(a, b), &ends[b].obj).obj;
            let (ea, eb) = (&ends[a], &ends[b]);
            let maps = (0..shape)
                .map(|i| {
                    let gi = g.obj[i];
                    let (xa, xb) = (&ea.factors[i], &eb.factors[i]);
                    xa.curry_with(
                        &z,
                        |x, zo| {
                            let p = z.split_obj(zo);
                            let alpha = eb.family(p[1])[i];
                            c.comp_obj(a, b, gi, p[0], xb.apply_obj(x, alpha))
                        },
                        |m, zm| {
                            let p = z.split_mor(zm);
                            let theta = eb.mor_family(p[1])[i];
                            c.comp_mor(a, b, gi, p[0], xb.apply_mor(m, theta))
                        },
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            ev.push(ea.induce_from(&z, &maps)?);
        }
    }
    let presheaf = VPresheaf::new(c.clone(), ends.iter().map(|e| e.obj.clone()).collect(), ev)?;
    Ok(ConePresheaf {
        presheaf,
        ends,
        homs,
    })
}
