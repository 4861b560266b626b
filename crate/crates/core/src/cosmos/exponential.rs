//! Exponential objects `[X, Y]`: function sets and functor categories,
//! with evaluation and currying.

use std::collections::HashMap;

use super::limits::product;
use super::map::Map;
use super::object::{Builder, Cosmos, Obj};
use crate::csp::Csp;
use crate::error::{Error, Result};

/// Largest number of cells an exponential may have before construction refuses.
pub const EXPONENTIAL_CAP: usize = 200_000;

/// Object and morphism tables of a map `X → Y`, in canonical order.
type Tables = (Vec<u32>, Vec<u32>);

/// Enumerates all maps `x → y` (functions, or functors) in lexicographic
/// order of their (object table, morphism table).
pub fn maps_between(x: &Obj, y: &Obj) -> Result<Vec<Map>> {
    Ok(enumerate_functors(x, y)?
        .into_iter()
        .map(|(o, m)| Map::from_tables(x.clone(), y.clone(), o, m))
        .collect())
}

fn enumerate_functors(x: &Obj, y: &Obj) -> Result<Vec<Tables>> {
    if x.cosmos() != y.cosmos() {
        return Err(Error::Validation("maps between different cosmoses".into()));
    }
    let no = x.n_objs();
    let mut csp = Csp::new();
    for _ in 0..no {
        csp.var_range(y.n_objs());
    }
    if x.cosmos() == Cosmos::FinSet {
        let sols = csp.with_limit(EXPONENTIAL_CAP).solutions()?;
        return Ok(sols.into_iter().map(|s| (s.clone(), s)).collect());
    }
    for m in 0..x.n_mors() as u32 {
        let (s, t) = (x.src(m) as usize, x.tgt(m) as usize);
        let yy = y.clone();
        let idm = x.is_identity(m);
        csp.var_dynamic(move |p| {
            if idm {
                vec![yy.ident(p[s])]
            } else {
                yy.hom(p[s], p[t]).to_vec()
            }
        });
    }
    for (f, g, h) in x.composable_pairs() {
        let (vf, vg, vh) = (no + f as usize, no + g as usize, no + h as usize);
        let trigger = vf.max(vg).max(vh);
        let yy = y.clone();
        csp.constrain(trigger, move |v| yy.compose(v[vf], v[vg]) == Some(v[vh]));
    }
    let sols = csp.with_limit(EXPONENTIAL_CAP).solutions()?;
    Ok(sols
        .into_iter()
        .map(|mut s| {
            let m = s.split_off(no);
            (s, m)
        })
        .collect())
}

/// Enumerates the natural transformations `f ⇒ g` between parallel maps,
/// as component lists ordered lexicographically.
pub fn natural_transformations(f: &Map, g: &Map) -> Vec<Vec<u32>> {
    let (x, y) = (f.dom(), f.cod());
    let mut csp = Csp::new();
    for o in 0..x.n_objs() as u32 {
        csp.var_list(y.hom(f.on_obj(o), g.on_obj(o)).to_vec());
    }
    for m in 0..x.n_mors() as u32 {
        if x.is_identity(m) {
            continue;
        }
        let (s, t) = (x.src(m) as usize, x.tgt(m) as usize);
        let (fm, gm) = (f.on_mor(m), g.on_mor(m));
        let yy = y.clone();
        csp.constrain(s.max(t), move |v| {
            yy.compose(fm, v[t]) == yy.compose(v[s], gm)
        });
    }
    csp.solutions().unwrap_or_default()
}

/// The exponential `[X, Y]` with its enumerated objects and morphisms.
#[derive(Clone, Debug)]
pub struct Exponential {
    /// The exponent `X`.
    pub base: Obj,
    /// The target `Y`.
    pub target: Obj,
    /// The object `[X, Y]`.
    pub obj: Obj,
    functors: Vec<Tables>,
    nats: Vec<(u32, u32, Vec<u32>)>,
    functor_index: HashMap<Tables, u32>,
    nat_index: HashMap<(u32, u32, Vec<u32>), u32>,
}

/// Builds the exponential `[x, y]`.
pub fn exponential(x: &Obj, y: &Obj) -> Result<Exponential> {
    let functors = enumerate_functors(x, y)?;
    let functor_index: HashMap<Tables, u32> = functors
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, f)| (f, k as u32))
        .collect();
    let cosmos = x.cosmos();
    let mut b = Builder::new(cosmos);
    let labels: Vec<String> = (0..functors.len())
        .map(|k| functor_label(&functors, y, x, k))
        .collect();
    for l in &labels {
        b.obj(l.as_str());
    }
    let mut nats = Vec::new();
    let mut nat_index = HashMap::new();
    if cosmos == Cosmos::FinCat {
        let fmaps: Vec<Map> = functors
            .iter()
            .map(|(o, m)| Map::from_tables(x.clone(), y.clone(), o.clone(), m.clone()))
            .collect();
        let mut ident = vec![0u32; functors.len()];
        for (a, fa) in fmaps.iter().enumerate() {
            for (c, gc) in fmaps.iter().enumerate() {
                for comps in natural_transformations(fa, gc) {
                    if nats.len() >= EXPONENTIAL_CAP {
                        return Err(Error::CapExceeded(
                            "exponential has too many morphisms".into(),
                        ));
                    }
                    let k = nats.len() as u32;
                    let cl: Vec<String> =
                        comps.iter().map(|&m| y.mor_label(m).into_owned()).collect();
                    b.mor(
                        format!("{}=>{}:[{}]", labels[a], labels[c], cl.join(",")),
                        a as u32,
                        c as u32,
                    );
                    if a == c
                        && comps
                            .iter()
                            .enumerate()
                            .all(|(o, &m)| m == y.ident(fa.on_obj(o as u32)))
                    {
                        ident[a] = k;
                    }
                    nat_index.insert((a as u32, c as u32, comps.clone()), k);
                    nats.push((a as u32, c as u32, comps));
                }
            }
        }
        b.set_ident(ident);
        let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); functors.len()];
        for (k, n) in nats.iter().enumerate() {
            by_src[n.0 as usize].push(k as u32);
        }
        for (k, (a, c, p)) in nats.iter().enumerate() {
            for &k2 in &by_src[*c as usize] {
                let (_, e, q) = &nats[k2 as usize];
                let comps: Vec<u32> = p
                    .iter()
                    .zip(q)
                    .map(|(&u, &v)| y.compose(u, v).expect("components compose"))
                    .collect();
                let h = nat_index[&(*a, *e, comps)];
                b.set_comp(k as u32, k2, h);
            }
        }
    }
    Ok(Exponential {
        base: x.clone(),
        target: y.clone(),
        obj: b.finish(),
        functors,
        nats,
        functor_index,
        nat_index,
    })
}

fn functor_label(functors: &[Tables], y: &Obj, x: &Obj, k: usize) -> String {
    let (o, m) = &functors[k];
    let objs: Vec<String> = o.iter().map(|&i| y.obj_label(i).into_owned()).collect();
    if x.is_discrete() {
        format!("[{}]", objs.join(","))
    } else {
        let mors: Vec<String> = (0..x.n_mors() as u32)
            .filter(|&j| !x.is_identity(j))
            .map(|j| y.mor_label(m[j as usize]).into_owned())
            .collect();
        format!("[{}|{}]", objs.join(","), mors.join(","))
    }
}

impl Exponential {
    /// The map `X → Y` named by object `k` of `[X, Y]`.
    pub fn functor(&self, k: u32) -> Map {
        let (o, m) = &self.functors[k as usize];
        Map::from_tables(self.base.clone(), self.target.clone(), o.clone(), m.clone())
    }

    /// Components of the natural transformation named by morphism `k`.
    pub fn components(&self, k: u32) -> &[u32] {
        match self.base.cosmos() {
            Cosmos::FinSet => &[],
            Cosmos::FinCat => &self.nats[k as usize].2,
        }
    }

    /// The object of `[X, Y]` naming the map `f`.
    pub fn name(&self, f: &Map) -> Option<u32> {
        if f.dom() != &self.base || f.cod() != &self.target {
            return None;
        }
        let key = (f.obj_table().to_vec(), f.mor_table().to_vec());
        self.functor_index.get(&key).copied()
    }

    /// The morphism of `[X, Y]` naming the transformation `a ⇒ c` with the given components.
    pub fn name_nat(&self, a: u32, c: u32, comps: &[u32]) -> Option<u32> {
        match self.base.cosmos() {
            Cosmos::FinSet => (a == c).then_some(a),
            Cosmos::FinCat => self.nat_index.get(&(a, c, comps.to_vec())).copied(),
        }
    }

    /// Image of morphism `m` of `X` under the map named by object `k`.
    pub fn functor_mor(&self, k: u32, m: u32) -> u32 {
        self.functors[k as usize].1[m as usize]
    }

    /// Evaluation on a pair of cells: object `x` of `X` at object `k` of `[X, Y]`.
    pub fn apply_obj(&self, x: u32, k: u32) -> u32 {
        self.functors[k as usize].0[x as usize]
    }

    /// Evaluation on morphisms: `m : x → x'` against `α : F ⇒ G` gives `F(m) ; α_{x'}`.
    pub fn apply_mor(&self, m: u32, k: u32) -> u32 {
        match self.base.cosmos() {
            Cosmos::FinSet => self.functors[k as usize].0[m as usize],
            Cosmos::FinCat => {
                let (f, _, comps) = &self.nats[k as usize];
                let fm = self.functors[*f as usize].1[m as usize];
                let t = self.base.tgt(m);
                self.target
                    .compose(fm, comps[t as usize])
                    .expect("naturality square")
            }
        }
    }

    /// The evaluation map `X × [X, Y] → Y`.
    pub fn eval(&self) -> Map {
        let dom = product(&self.base, &self.obj).obj;
        let d = dom.clone();
        Map::from_fns(
            dom,
            self.target.clone(),
            |i| {
                let p = d.split_obj(i);
                self.apply_obj(p[0], p[1])
            },
            |m| {
                let p = d.split_mor(m);
                self.apply_mor(p[0], p[1])
            },
        )
    }

    /// Currying from cell functions: `fo(x, z)` and `fm(m, n)` describe a map
    /// `X × Z → Y`; the result is its transpose `Z → [X, Y]`.
    pub fn curry_with(
        &self,
        z: &Obj,
        fo: impl Fn(u32, u32) -> u32,
        fm: impl Fn(u32, u32) -> u32,
    ) -> Result<Map> {
        let x = &self.base;
        let name_of = |zo: u32| -> Result<u32> {
            let o: Vec<u32> = (0..x.n_objs() as u32).map(|i| fo(i, zo)).collect();
            let m: Vec<u32> = match x.cosmos() {
                Cosmos::FinSet => o.clone(),
                Cosmos::FinCat => (0..x.n_mors() as u32).map(|j| fm(j, z.ident(zo))).collect(),
            };
            self.functor_index
                .get(&(o, m))
                .copied()
                .ok_or_else(|| Error::Validation("curried component is not a map".into()))
        };
        let objs: Vec<u32> = (0..z.n_objs() as u32).map(name_of).collect::<Result<_>>()?;
        let mors: Vec<u32> = match x.cosmos() {
            Cosmos::FinSet => objs.clone(),
            Cosmos::FinCat => (0..z.n_mors() as u32)
                .map(|n| {
                    let (a, c) = (objs[z.src(n) as usize], objs[z.tgt(n) as usize]);
                    let comps: Vec<u32> =
                        (0..x.n_objs() as u32).map(|i| fm(x.ident(i), n)).collect();
                    self.nat_index
                        .get(&(a, c, comps))
                        .copied()
                        .ok_or_else(|| Error::Validation("curried component is not natural".into()))
                })
                .collect::<Result<_>>()?,
        };
        Ok(Map::from_tables(z.clone(), self.obj.clone(), objs, mors))
    }

    /// The transpose `Z → [X, Y]` of `f : X × Z → Y`.
    pub fn curry(&self, f: &Map) -> Result<Map> {
        let dom = f.dom();
        let fs = dom
            .factors()
            .filter(|fs| fs.len() == 2 && fs[0] == self.base)
            .ok_or_else(|| Error::Validation("curry needs a map out of X × Z".into()))?;
        if f.cod() != &self.target {
            return Err(Error::Validation("curry needs a map into Y".into()));
        }
        let z = fs[1].clone();
        self.curry_with(
            &z,
            |i, zo| f.on_obj(dom.join_obj(&[i, zo])),
            |m, n| f.on_mor(dom.join_mor(&[m, n])),
        )
    }
}

/// All global elements `∗ → x`, one per object, in index order.
pub fn global_elements(x: &Obj) -> Vec<Map> {
    (0..x.n_objs() as u32).map(|o| Map::point(x, o)).collect()
}
