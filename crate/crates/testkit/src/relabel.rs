//! Random relabelings: isomorphic copies of objects and internal categories
//! with permuted cells and fresh labels.

use std::collections::HashMap;

use intcat_core::cosmos::{Cosmos, Label, Map, Obj};
use intcat_core::internal::{InternalCategory, InternalFunctor};
use intcat_core::Result;
use rand::seq::SliceRandom;
use rand::Rng;

fn permutation(n: usize, rng: &mut impl Rng) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    p.shuffle(rng);
    p
}

/// An isomorphic copy of `x` whose cells are shuffled and primed, together
/// with the isomorphism `x → copy`.
pub fn relabel_obj(x: &Obj, rng: &mut impl Rng) -> Result<(Obj, Map)> {
    let po = permutation(x.n_objs(), rng);
    let mut inv_o = vec![0u32; po.len()];
    for (old, &new) in po.iter().enumerate() {
        inv_o[new as usize] = old as u32;
    }
    match x.cosmos() {
        Cosmos::FinSet => {
            let labels = inv_o
                .iter()
                .map(|&o| Label::from(format!("{}'", x.obj_label(o))))
                .collect();
            let copy = Obj::set(labels)?;
            let iso = Map::new(x.clone(), copy.clone(), po.clone(), po)?;
            Ok((copy, iso))
        }
        Cosmos::FinCat => {
            let pm = permutation(x.n_mors(), rng);
            let mut inv_m = vec![0u32; pm.len()];
            for (old, &new) in pm.iter().enumerate() {
                inv_m[new as usize] = old as u32;
            }
            let objs = inv_o
                .iter()
                .map(|&o| Label::from(format!("{}'", x.obj_label(o))))
                .collect();
            let mors = inv_m
                .iter()
                .map(|&m| {
                    (
                        Label::from(format!("{}'", x.mor_label(m))),
                        po[x.src(m) as usize],
                        po[x.tgt(m) as usize],
                    )
                })
                .collect();
            let ident = inv_o.iter().map(|&o| pm[x.ident(o) as usize]).collect();
            let comp: HashMap<(u32, u32), u32> = x
                .composable_pairs()
                .map(|(f, g, h)| ((pm[f as usize], pm[g as usize]), pm[h as usize]))
                .collect();
            let copy = Obj::category(objs, mors, ident, comp)?;
            let iso = Map::new(x.clone(), copy.clone(), po, pm)?;
            Ok((copy, iso))
        }
    }
}

/// An isomorphic copy of an internal category and the comparison functor.
#[derive(Clone, Debug)]
pub struct Relabeling {
    /// The copy.
    pub cat: InternalCategory,
    /// The isomorphism from the original onto the copy.
    pub iso: InternalFunctor,
    /// Its inverse.
    pub inverse: InternalFunctor,
}

/// Transports the structure maps of `a` along random relabelings of both levels.
pub fn relabel_internal(a: &InternalCategory, rng: &mut impl Rng) -> Result<Relabeling> {
    let (a0, phi0) = relabel_obj(a.a0(), rng)?;
    let (a1, phi1) = relabel_obj(a.a1(), rng)?;
    let (psi0, psi1) = (phi0.inverse()?, phi1.inverse()?);
    let s = psi1.then(a.s())?.then(&phi0)?;
    let t = psi1.then(a.t())?.then(&phi0)?;
    let i = psi0.then(a.i())?.then(&phi1)?;
    let cat = InternalCategory::from_cells(a0, a1, s, t, i, |f, g| {
        let h = a
            .compose_mor(psi1.on_mor(f), psi1.on_mor(g))
            .expect("composable after transport");
        phi1.on_mor(h)
    })?;
    let iso = InternalFunctor::new(a.clone(), cat.clone(), phi0, phi1)?;
    let inverse = InternalFunctor::new(cat.clone(), a.clone(), psi0, psi1)?;
    Ok(Relabeling { cat, iso, inverse })
}
