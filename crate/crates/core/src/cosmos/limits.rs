//! Canonical finite limits: products, subobjects, pullbacks and equalizers.
//!
//! Every construction returns one deterministic representative whose cells are
//! ordered lexicographically, so that maps built through different routes can
//! be compared by plain structural equality.

use std::collections::HashMap;

use super::map::Map;
use super::object::{Builder, Obj};
use crate::error::{Error, Result};

/// The canonical product of a non-empty family, with projections on demand.
#[derive(Clone, Debug)]
pub struct Product {
    /// The product object; cells are tuples in lexicographic order.
    pub obj: Obj,
}

/// Canonical product of a non-empty list of objects.
pub fn product_n(factors: &[Obj]) -> Product {
    Product {
        obj: Obj::product_of(factors.to_vec()),
    }
}

/// Canonical binary product `x × y`.
pub fn product(x: &Obj, y: &Obj) -> Product {
    product_n(&[x.clone(), y.clone()])
}

impl Product {
    /// The factors.
    pub fn factors(&self) -> &[Obj] {
        self.obj.factors().expect("product object")
    }

    /// Projection onto factor `k`.
    pub fn proj(&self, k: usize) -> Map {
        let o = &self.obj;
        Map::from_fns(
            o.clone(),
            self.factors()[k].clone(),
            |i| o.split_obj(i)[k],
            |m| o.split_mor(m)[k],
        )
    }

    /// The tupling `⟨f_0, …, f_n⟩ : z → ∏` of maps out of a common domain.
    pub fn pair(&self, maps: &[Map]) -> Result<Map> {
        let fs = self.factors();
        if maps.len() != fs.len() {
            return Err(Error::Mediator("wrong number of components".into()));
        }
        let dom = maps[0].dom().clone();
        for (m, f) in maps.iter().zip(fs) {
            if m.dom() != &dom || m.cod() != f {
                return Err(Error::Mediator("component has the wrong type".into()));
            }
        }
        let o = &self.obj;
        let mut po = vec![0u32; fs.len()];
        let mut pm = vec![0u32; fs.len()];
        Ok(Map::from_tables(
            dom.clone(),
            o.clone(),
            (0..dom.n_objs() as u32)
                .map(|i| {
                    for (k, m) in maps.iter().enumerate() {
                        po[k] = m.on_obj(i);
                    }
                    o.join_obj(&po)
                })
                .collect(),
            (0..dom.n_mors() as u32)
                .map(|i| {
                    for (k, m) in maps.iter().enumerate() {
                        pm[k] = m.on_mor(i);
                    }
                    o.join_mor(&pm)
                })
                .collect(),
        ))
    }
}

/// `f × g : a × b → c × d`.
pub fn product_map(f: &Map, g: &Map) -> Map {
    let dom = product(f.dom(), g.dom()).obj;
    let cod = product(f.cod(), g.cod()).obj;
    let (d, c) = (dom.clone(), cod.clone());
    Map::from_fns(
        dom,
        cod,
        |i| {
            let p = d.split_obj(i);
            c.join_obj(&[f.on_obj(p[0]), g.on_obj(p[1])])
        },
        |m| {
            let p = d.split_mor(m);
            c.join_mor(&[f.on_mor(p[0]), g.on_mor(p[1])])
        },
    )
}

/// The canonical isomorphism `x → x × ∗`.
pub fn unit_right(x: &Obj) -> Map {
    let cod = product(x, &x.cosmos().terminal()).obj;
    let c = cod.clone();
    Map::from_fns(
        x.clone(),
        cod,
        |i| c.join_obj(&[i, 0]),
        |m| c.join_mor(&[m, 0]),
    )
}

/// The canonical isomorphism `x → ∗ × x`.
pub fn unit_left(x: &Obj) -> Map {
    let cod = product(&x.cosmos().terminal(), x).obj;
    let c = cod.clone();
    Map::from_fns(
        x.clone(),
        cod,
        |i| c.join_obj(&[0, i]),
        |m| c.join_mor(&[0, m]),
    )
}

/// A subobject carved out of an ambient object by a set of cells closed
/// under boundaries, identities and composition.
#[derive(Clone, Debug)]
pub struct Sub {
    /// The subobject, tabulated explicitly; cells keep ambient order and labels.
    pub obj: Obj,
    /// The inclusion into the ambient object.
    pub incl: Map,
    obj_rev: HashMap<u32, u32>,
    mor_rev: HashMap<u32, u32>,
}

impl Sub {
    /// Builds the subobject on the given ambient cells (each list ascending).
    pub(crate) fn new(amb: &Obj, objs: Vec<u32>, mors: Vec<u32>) -> Sub {
        let cosmos = amb.cosmos();
        let mut b = Builder::new(cosmos);
        let obj_rev: HashMap<u32, u32> = objs
            .iter()
            .enumerate()
            .map(|(k, &o)| (o, k as u32))
            .collect();
        for &o in &objs {
            b.obj(amb.obj_label(o).as_ref());
        }
        let mors = if amb.is_discrete() || cosmos == super::Cosmos::FinSet {
            objs.iter().map(|&o| amb.ident(o)).collect()
        } else {
            mors
        };
        let mor_rev: HashMap<u32, u32> = mors
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, k as u32))
            .collect();
        if cosmos == super::Cosmos::FinCat {
            let mut by_src: Vec<Vec<u32>> = vec![Vec::new(); objs.len()];
            for (k, &m) in mors.iter().enumerate() {
                let s = obj_rev[&amb.src(m)];
                let t = obj_rev[&amb.tgt(m)];
                b.mor(amb.mor_label(m).as_ref(), s, t);
                by_src[s as usize].push(k as u32);
            }
            b.set_ident(objs.iter().map(|&o| mor_rev[&amb.ident(o)]).collect());
            for (k, &m) in mors.iter().enumerate() {
                let t = obj_rev[&amb.tgt(m)];
                for &k2 in &by_src[t as usize] {
                    let h = amb
                        .compose(m, mors[k2 as usize])
                        .expect("composable in the ambient object");
                    let h = *mor_rev.get(&h).expect("subobject closed under composition");
                    b.set_comp(k as u32, k2, h);
                }
            }
        }
        let obj = b.finish();
        let incl = Map::from_tables(obj.clone(), amb.clone(), objs, mors);
        Sub {
            obj,
            incl,
            obj_rev,
            mor_rev,
        }
    }

    /// Position of an ambient object in the subobject.
    pub fn locate_obj(&self, o: u32) -> Option<u32> {
        self.obj_rev.get(&o).copied()
    }

    /// Position of an ambient morphism in the subobject.
    pub fn locate_mor(&self, m: u32) -> Option<u32> {
        self.mor_rev.get(&m).copied()
    }

    /// The unique factorization of `f` through the inclusion, if it exists.
    pub fn restrict(&self, f: &Map) -> Result<Map> {
        if f.cod() != self.incl.cod() {
            return Err(Error::Mediator(
                "map does not land in the ambient object".into(),
            ));
        }
        let mut obj = Vec::with_capacity(f.dom().n_objs());
        for i in 0..f.dom().n_objs() as u32 {
            obj.push(self.locate_obj(f.on_obj(i)).ok_or_else(|| {
                Error::Mediator(format!(
                    "object `{}` leaves the subobject",
                    f.dom().obj_label(i)
                ))
            })?);
        }
        let mut mor = Vec::with_capacity(f.dom().n_mors());
        for m in 0..f.dom().n_mors() as u32 {
            mor.push(self.locate_mor(f.on_mor(m)).ok_or_else(|| {
                Error::Mediator(format!(
                    "morphism `{}` leaves the subobject",
                    f.dom().mor_label(m)
                ))
            })?);
        }
        Ok(Map::from_tables(
            f.dom().clone(),
            self.obj.clone(),
            obj,
            mor,
        ))
    }
}

/// The canonical pullback of a cospan, with its legs.
#[derive(Clone, Debug)]
pub struct Pullback {
    /// The pullback as a subobject of the product of the two domains.
    pub sub: Sub,
    /// Leg to the domain of `f`.
    pub p0: Map,
    /// Leg to the domain of `g`.
    pub p1: Map,
    prod: Obj,
}

impl Pullback {
    /// The pullback object.
    pub fn obj(&self) -> &Obj {
        &self.sub.obj
    }

    /// Index of the pair `(x, y)` of objects, if it lies in the pullback.
    pub fn pair_obj(&self, x: u32, y: u32) -> Option<u32> {
        self.sub.locate_obj(self.prod.join_obj(&[x, y]))
    }

    /// Index of the pair `(m, n)` of morphisms, if it lies in the pullback.
    pub fn pair_mor(&self, m: u32, n: u32) -> Option<u32> {
        self.sub.locate_mor(self.prod.join_mor(&[m, n]))
    }

    /// The unique map `⟨a, b⟩` into the pullback; errors if the cone does not commute.
    pub fn induce(&self, a: &Map, b: &Map) -> Result<Map> {
        if a.dom() != b.dom() {
            return Err(Error::Mediator("cone legs have different domains".into()));
        }
        let pair = product(self.p0.cod(), self.p1.cod()).pair(&[a.clone(), b.clone()])?;
        let pair = Map::from_tables(
            pair.dom().clone(),
            self.prod.clone(),
            pair.obj_table().to_vec(),
            pair.mor_table().to_vec(),
        );
        self.sub.restrict(&pair).map_err(|e| match e {
            Error::Mediator(m) => Error::Mediator(format!("pullback cone does not commute: {m}")),
            other => other,
        })
    }
}

/// Canonical pullback of `f: x → z` and `g: y → z`: pairs `(a, b)` with
/// `f(a) = g(b)`, ordered lexicographically.
pub fn pullback(f: &Map, g: &Map) -> Result<Pullback> {
    if f.cod() != g.cod() {
        return Err(Error::Composition(
            "pullback of maps with different codomains".into(),
        ));
    }
    let (x, y) = (f.dom(), g.dom());
    let prod = product(x, y).obj;
    if prod.n_objs() > u32::MAX as usize || prod.n_mors() > u32::MAX as usize {
        return Err(Error::CapExceeded(format!(
            "pullback of {} by {} cells does not fit a cell index",
            x.n_mors(),
            y.n_mors()
        )));
    }
    let mut by_obj: HashMap<u32, Vec<u32>> = HashMap::new();
    for b in 0..y.n_objs() as u32 {
        by_obj.entry(g.on_obj(b)).or_default().push(b);
    }
    let mut objs = Vec::new();
    for a in 0..x.n_objs() as u32 {
        if let Some(bs) = by_obj.get(&f.on_obj(a)) {
            objs.extend(bs.iter().map(|&b| prod.join_obj(&[a, b])));
        }
    }
    let mut mors = Vec::new();
    if !x.is_discrete() || !y.is_discrete() {
        let mut by_mor: HashMap<u32, Vec<u32>> = HashMap::new();
        for n in 0..y.n_mors() as u32 {
            by_mor.entry(g.on_mor(n)).or_default().push(n);
        }
        for m in 0..x.n_mors() as u32 {
            if let Some(ns) = by_mor.get(&f.on_mor(m)) {
                mors.extend(ns.iter().map(|&n| prod.join_mor(&[m, n])));
            }
        }
    } else {
        mors = objs.iter().map(|&o| prod.ident(o)).collect();
    }
    let sub = Sub::new(&prod, objs, mors);
    let pr = product(x, y);
    let p0 = sub
        .incl
        .then(&pr.proj(0))
        .expect("inclusion into the product");
    let p1 = sub
        .incl
        .then(&pr.proj(1))
        .expect("inclusion into the product");
    Ok(Pullback { sub, p0, p1, prod })
}

/// The canonical equalizer of a parallel pair, with its inclusion.
#[derive(Clone, Debug)]
pub struct Equalizer {
    /// The equalizing subobject.
    pub sub: Sub,
}

impl Equalizer {
    /// The equalizer object.
    pub fn obj(&self) -> &Obj {
        &self.sub.obj
    }

    /// The inclusion into the domain of the pair.
    pub fn incl(&self) -> &Map {
        &self.sub.incl
    }

    /// The unique factorization of `h` through the equalizer.
    pub fn induce(&self, h: &Map) -> Result<Map> {
        self.sub.restrict(h)
    }
}

/// Canonical equalizer of `f, g: x → y`: the cells of `x` on which they agree.
pub fn equalizer(f: &Map, g: &Map) -> Result<Equalizer> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::Composition(
            "equalizer of maps that are not parallel".into(),
        ));
    }
    let x = f.dom();
    let objs = (0..x.n_objs() as u32)
        .filter(|&i| f.on_obj(i) == g.on_obj(i))
        .collect();
    let mors = (0..x.n_mors() as u32)
        .filter(|&m| f.on_mor(m) == g.on_mor(m))
        .collect();
    Ok(Equalizer {
        sub: Sub::new(x, objs, mors),
    })
}

/// Subobject of `x` on the cells selected by predicates, which must describe
/// a subobject (closed under boundaries, identities and composition).
pub fn subobject(x: &Obj, keep_obj: impl Fn(u32) -> bool, keep_mor: impl Fn(u32) -> bool) -> Sub {
    let objs = (0..x.n_objs() as u32).filter(|&i| keep_obj(i)).collect();
    let mors = (0..x.n_mors() as u32).filter(|&m| keep_mor(m)).collect();
    Sub::new(x, objs, mors)
}
