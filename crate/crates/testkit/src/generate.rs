//! Seeded generators of valid instances.

use std::collections::HashMap;

use intcat_core::cosmos::{global_elements, maps_between, Cosmos, Label, Map, Obj};
use intcat_core::enriched::{
    constant_presheaf, hom_copresheaf, product_presheaf, product_vcat, representable, VCategory,
    VCopresheaf, VFunctor, VPresheaf,
};
use intcat_core::grothendieck::groth;
use intcat_core::internal::{
    internalize, is_discrete_fibration, FibrationPacket, InternalCategory,
};
use intcat_core::limits::{candidate_cones, WeightedLimitProblem};
use intcat_core::{Error, Result};
use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::config::{cells, GenConfig};
use crate::relabel::relabel_internal;

const FUNCTOR_ATTEMPTS: usize = 40;

/// A finite category from its non-identity morphisms and composition table.
/// `mors` lists `(label, src, tgt)`; `comp` lists non-identity composites.
fn category(objs: &[&str], mors: &[(&str, u32, u32)], comp: &[(&str, &str, &str)]) -> Obj {
    let n = objs.len() as u32;
    let mut all: Vec<(Label, u32, u32)> = (0..n)
        .map(|o| (Label::from(format!("1_{}", objs[o as usize])), o, o))
        .collect();
    all.extend(mors.iter().map(|&(l, s, t)| (Label::from(l), s, t)));
    let idx = |l: &str| {
        all.iter()
            .position(|m| m.0.as_ref() == l)
            .expect("declared morphism") as u32
    };
    let mut table = HashMap::new();
    for (k, m) in all.iter().enumerate() {
        let k = k as u32;
        table.insert((m.1, k), k);
        table.insert((k, m.2), k);
    }
    for &(f, g, h) in comp {
        table.insert((idx(f), idx(g)), idx(h));
    }
    let ident = (0..n).collect();
    Obj::category(
        objs.iter().map(|&o| Label::from(o)).collect(),
        all,
        ident,
        table,
    )
    .expect("catalog category")
}

/// Small categories that are not posets.
fn catalog() -> Vec<Obj> {
    vec![
        category(&["o"], &[("s", 0, 0)], &[("s", "s", "1_o")]),
        category(&["o"], &[("e", 0, 0)], &[("e", "e", "e")]),
        category(&["0", "1"], &[("f", 0, 1), ("g", 0, 1)], &[]),
        category(
            &["0", "1"],
            &[("u", 0, 1), ("v", 1, 0)],
            &[("u", "v", "1_0"), ("v", "u", "1_1")],
        ),
        category(
            &["0", "1", "2"],
            &[("f", 0, 1), ("g", 1, 2), ("h", 0, 2), ("k", 0, 2)],
            &[("f", "g", "h")],
        ),
    ]
}

/// The poset on `0..n` with the given order relation, as a category.
pub(crate) fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Obj {
    let mut mors = Vec::new();
    let mut idx = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if le(i, j) {
                idx.insert((i, j), mors.len() as u32);
                mors.push((Label::from(format!("{i}<{j}")), i as u32, j as u32));
            }
        }
    }
    let ident = (0..n).map(|i| idx[&(i, i)]).collect();
    let mut comp = HashMap::new();
    for (&(i, j), &f) in &idx {
        for k in 0..n {
            if let Some(&g) = idx.get(&(j, k)) {
                comp.insert((f, g), idx[&(i, k)]);
            }
        }
    }
    Obj::category(
        (0..n).map(|i| Label::from(i.to_string())).collect(),
        mors,
        ident,
        comp,
    )
    .expect("poset")
}

/// A representability question `(F, c, x)` with `x` a global element of `F c`.
#[derive(Clone, Debug)]
pub struct RepresentationInstance {
    /// The presheaf `F`.
    pub presheaf: VPresheaf,
    /// The candidate object.
    pub object: usize,
    /// The candidate element `x : ∗ → F c`.
    pub element: Map,
}

/// A weight, a diagram, and every cone over them at every apex.
#[derive(Clone, Debug)]
pub struct WeightedInstance {
    /// The weight `W : I → V`.
    pub weight: VCopresheaf,
    /// The diagram `G : I → C`.
    pub diagram: VFunctor,
    /// One problem per apex and cone.
    pub problems: Vec<WeightedLimitProblem>,
}

/// A stateful generator; successive draws continue one random stream.
#[derive(Clone, Debug)]
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    /// A generator for a validated configuration.
    pub fn new(cfg: GenConfig) -> Result<Generator> {
        cfg.validate()?;
        let rng = cfg.rng(0);
        Ok(Generator { cfg, rng })
    }

    fn with_stream(cfg: &GenConfig, stream: u64) -> Result<Generator> {
        cfg.validate()?;
        Ok(Generator {
            cfg: cfg.clone(),
            rng: cfg.rng(stream),
        })
    }

    /// The configuration.
    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    fn cosmos(&self) -> Cosmos {
        self.cfg.cosmos
    }

    /// A small object of the cosmos, used for constant presheaves and weights.
    pub fn small_object(&mut self) -> Obj {
        let cosmos = self.cosmos();
        let discrete =
            |k: usize| cosmos.discrete((0..k).map(|i| Label::from(format!("e{i}"))).collect());
        let mut pool = vec![
            discrete(1),
            discrete(1),
            discrete(2),
            discrete(2),
            discrete(0),
        ];
        if self.cfg.max_cells >= 3 {
            pool.push(discrete(3));
        }
        if cosmos == Cosmos::FinCat {
            pool.push(Obj::walking_arrow());
            pool.push(catalog()[1].clone());
            pool.push(catalog()[0].clone());
        }
        pool.retain(|x| cells(x) <= self.cfg.max_cells);
        pool.choose(&mut self.rng).expect("nonempty pool").clone()
    }

    /// A random poset on at most `max_n` points, transitively closed.
    pub fn poset(&mut self, max_n: usize) -> Obj {
        let n = self.rng.gen_range(1..=max_n.max(1));
        let mut le = vec![vec![false; n]; n];
        for i in 0..n {
            le[i][i] = true;
            for j in i + 1..n {
                le[i][j] = self.rng.gen_bool(0.5);
            }
        }
        let perm = {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut self.rng);
            p
        };
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][m] && le[m][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        poset(n, |i, j| le[perm[i]][perm[j]])
    }

    /// A random `V`-category within the caps.
    pub fn vcategory(&mut self) -> VCategory {
        self.vcategory_capped(self.cfg.max_objects, 1)
    }

    /// A random `V`-category with at most `max_objects` objects.
    pub fn vcategory_capped(&mut self, max_objects: usize, depth: usize) -> VCategory {
        let w = &self.cfg.weights;
        let product = if depth > 0 && max_objects >= 2 {
            w.product
        } else {
            0
        };
        let dist = WeightedIndex::new([w.poset, w.locally_discrete, product]);
        let pick = match dist {
            Ok(d) => d.sample(&mut self.rng),
            Err(_) => 0,
        };
        let cosmos = self.cosmos();
        match pick {
            1 => {
                let mut pool: Vec<Obj> = catalog()
                    .into_iter()
                    .filter(|c| c.n_objs() <= max_objects && max_hom(c) <= self.cfg.max_cells)
                    .collect();
                if pool.is_empty() {
                    pool.push(self.poset(max_objects));
                }
                let cat = pool.choose(&mut self.rng).expect("nonempty").clone();
                VCategory::from_category(cosmos, &cat).expect("locally discrete")
            }
            2 => {
                let a = self.vcategory_capped(max_objects / 2, depth - 1);
                let b = self.vcategory_capped(max_objects / a.len().max(1), depth - 1);
                match product_vcat(&a, &b) {
                    Ok(p) if p.len() <= max_objects && homs_within(&p, self.cfg.max_cells) => p,
                    _ => a,
                }
            }
            _ => {
                let p = self.poset(max_objects);
                VCategory::from_category(cosmos, &p).expect("poset")
            }
        }
    }

    /// A random `V`-functor `I → C`. Falls back to a constant functor when
    /// no random attempt satisfies the functor laws.
    pub fn vfunctor(&mut self, i: &VCategory, c: &VCategory) -> VFunctor {
        let n = i.len();
        if c.is_empty() {
            return VFunctor::new(i.clone(), c.clone(), vec![], vec![]).expect("empty functor");
        }
        'attempt: for _ in 0..FUNCTOR_ATTEMPTS {
            let obj: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..c.len())).collect();
            let mut hom = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    let choices = match maps_between(i.hom(a, b), c.hom(obj[a], obj[b])) {
                        Ok(v) => v,
                        Err(_) => continue 'attempt,
                    };
                    match choices.choose(&mut self.rng) {
                        Some(m) => hom.push(m.clone()),
                        None => continue 'attempt,
                    }
                }
            }
            if let Ok(g) = VFunctor::new(i.clone(), c.clone(), obj, hom) {
                if g.validate().is_valid() {
                    return g;
                }
            }
        }
        let k = self.rng.gen_range(0..c.len());
        constant_functor(i, c, k)
    }

    /// A random presheaf on `c`.
    pub fn presheaf(&mut self, c: &VCategory) -> VPresheaf {
        self.presheaf_depth(c, 2)
    }

    fn presheaf_depth(&mut self, c: &VCategory, depth: usize) -> VPresheaf {
        let w = &self.cfg.weights;
        let deep = |x: u32| if depth > 0 { x } else { 0 };
        let weights = [
            w.constant,
            w.representable,
            deep(w.product_presheaf),
            deep(w.restriction),
        ];
        let pick = WeightedIndex::new(weights)
            .map(|d| d.sample(&mut self.rng))
            .unwrap_or(0);
        match pick {
            1 if !c.is_empty() => {
                let k = self.rng.gen_range(0..c.len());
                representable(c, k).expect("representable")
            }
            2 => {
                let p = self.presheaf_depth(c, depth - 1);
                let q = self.presheaf_depth(c, depth - 1);
                match product_presheaf(&p, &q) {
                    Ok(r) if (0..c.len()).all(|a| cells(r.at(a)) <= self.cfg.max_cells) => r,
                    _ => p,
                }
            }
            3 => {
                let g = self.vfunctor(c, c);
                let q = self.presheaf_depth(c, depth - 1);
                g.restrict(&q).expect("restriction")
            }
            _ => {
                let x = self.small_object();
                constant_presheaf(c, &x)
            }
        }
    }

    /// A random copresheaf on `i`: a constant, a covariant representable, or
    /// a hom functor `C(a, G−)` along a random `G : I → C`.
    pub fn copresheaf(&mut self, i: &VCategory) -> VCopresheaf {
        match self.rng.gen_range(0..3) {
            1 if !i.is_empty() => {
                let k = self.rng.gen_range(0..i.len());
                hom_copresheaf(&VFunctor::identity(i), k).expect("representable")
            }
            2 => {
                let c = self.vcategory_capped(2, 0);
                let g = self.vfunctor(i, &c);
                let a = self.rng.gen_range(0..c.len());
                hom_copresheaf(&g, a).expect("hom functor")
            }
            _ => {
                let x = self.small_object();
                VCopresheaf::constant(i.clone(), &x)
            }
        }
    }

    /// A random internal category: `Int C`, `cst X`, or a category of
    /// elements, possibly relabeled.
    pub fn internal(&mut self) -> InternalCategory {
        let a = match self.rng.gen_range(0..3) {
            0 => {
                let c = self.vcategory();
                internalize(&c).expect("internalization").cat
            }
            1 => InternalCategory::cst(&self.small_object()),
            _ => {
                let c = self.vcategory_capped(2, 0);
                let f = self.presheaf(&c);
                groth(&c, &f).expect("elements").total
            }
        };
        if self.rng.gen_bool(0.5) {
            relabel_internal(&a, &mut self.rng)
                .map(|r| r.cat)
                .unwrap_or(a)
        } else {
            a
        }
    }

    /// A presheaf on `c` together with the projection from a relabeled copy
    /// of its category of elements, certified as a discrete fibration.
    pub fn fibration(&mut self, c: &VCategory) -> Result<(VPresheaf, FibrationPacket)> {
        let f = self.presheaf(c);
        let g = groth(c, &f)?;
        let r = relabel_internal(&g.total, &mut self.rng)?;
        let p = r.inverse.then(&g.projection)?;
        let packet = is_discrete_fibration(&p, Some(&g.base))?;
        Ok((f, packet))
    }

    /// A presheaf on a random `V`-category and every `(c, x)` question over it.
    pub fn representation_instances(&mut self) -> Vec<RepresentationInstance> {
        let c = self.vcategory();
        let f = self.presheaf(&c);
        let mut out = Vec::new();
        for a in 0..c.len() {
            for x in global_elements(f.at(a)) {
                out.push(RepresentationInstance {
                    presheaf: f.clone(),
                    object: a,
                    element: x,
                });
            }
        }
        out
    }

    /// A weight on a shape with at most two objects, a diagram into a random
    /// `V`-category, and every cone at every apex.
    pub fn weighted(&mut self) -> Result<WeightedInstance> {
        let c = self.vcategory();
        let shape = self.vcategory_capped(2, 0);
        let weight = self.copresheaf(&shape);
        let diagram = self.vfunctor(&shape, &c);
        let mut problems = Vec::new();
        for l in 0..c.len() {
            problems.extend(candidate_cones(&weight, &diagram, l)?);
        }
        Ok(WeightedInstance {
            weight,
            diagram,
            problems,
        })
    }
}

fn max_hom(c: &Obj) -> usize {
    let n = c.n_objs() as u32;
    (0..n)
        .flat_map(|a| (0..n).map(move |b| c.hom(a, b).len()))
        .max()
        .unwrap_or(0)
}

fn homs_within(c: &VCategory, cap: usize) -> bool {
    (0..c.len()).all(|a| (0..c.len()).all(|b| cells(c.hom(a, b)) <= cap))
}

/// The functor sending everything to object `k` and its identity.
pub(crate) fn constant_functor(i: &VCategory, c: &VCategory, k: usize) -> VFunctor {
    let n = i.len();
    let hom = (0..n * n)
        .map(|q| Map::constant(i.hom(q / n, q % n), c.hom(k, k), c.ident_obj(k)))
        .collect();
    VFunctor::new(i.clone(), c.clone(), vec![k; n], hom).expect("constant functor")
}

fn checked<T>(what: &str, value: T, report: intcat_core::report::Report) -> Result<T> {
    if report.is_valid() {
        Ok(value)
    } else {
        Err(Error::Validation(format!(
            "generated {what} is invalid: {report}"
        )))
    }
}

/// A random `V`-category for `cfg`.
pub fn gen_vcategory(cfg: &GenConfig) -> Result<VCategory> {
    let c = Generator::with_stream(cfg, 1)?.vcategory();
    let r = c.validate();
    checked("V-category", c, r)
}

/// A random presheaf on `c` for `cfg`.
pub fn gen_presheaf(cfg: &GenConfig, c: &VCategory) -> Result<VPresheaf> {
    let f = Generator::with_stream(cfg, 2)?.presheaf(c);
    let r = f.validate();
    checked("presheaf", f, r)
}

/// A random copresheaf on `i` for `cfg`.
pub fn gen_copresheaf(cfg: &GenConfig, i: &VCategory) -> Result<VCopresheaf> {
    let w = Generator::with_stream(cfg, 3)?.copresheaf(i);
    let r = w.validate();
    checked("copresheaf", w, r)
}

/// A random `V`-functor `i → c` for `cfg`.
pub fn gen_vfunctor(cfg: &GenConfig, i: &VCategory, c: &VCategory) -> Result<VFunctor> {
    let g = Generator::with_stream(cfg, 4)?.vfunctor(i, c);
    let r = g.validate();
    checked("V-functor", g, r)
}

/// A random internal category for `cfg`.
pub fn gen_internal(cfg: &GenConfig) -> Result<InternalCategory> {
    let a = Generator::with_stream(cfg, 5)?.internal();
    let r = a.validate();
    checked("internal category", a, r)
}

/// A random discrete fibration over `Int c` for `cfg`: the projection from
/// a relabeled category of elements of a generated presheaf.
pub fn gen_fibration(cfg: &GenConfig, c: &VCategory) -> Result<FibrationPacket> {
    let (_, packet) = Generator::with_stream(cfg, 6)?.fibration(c)?;
    let r = packet.functor.validate();
    checked("fibration", packet, r)
}

/// A random weighted-limit instance for `cfg`.
pub fn gen_weighted(cfg: &GenConfig) -> Result<WeightedInstance> {
    let inst = Generator::with_stream(cfg, 7)?.weighted()?;
    let mut r = inst.weight.validate();
    r.absorb("diagram", inst.diagram.validate());
    checked("weighted instance", inst, r)
}
