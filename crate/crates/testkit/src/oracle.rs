//! Brute-force oracles. Each one enumerates raw cell tables and keeps the
//! ones satisfying the defining equations; none of them builds an end, an
//! internal hom or a cone category.

use std::collections::BTreeSet;

use intcat_core::cosmos::{product_n, Cosmos, Map, Obj};
use intcat_core::enriched::{hom_copresheaf, VCategory, VCopresheaf, VFunctor};
use intcat_core::internal::InternalCategory;
use intcat_core::{Error, Result};

/// Largest number of candidate tables an oracle is willing to scan.
pub const ORACLE_CAP: u128 = 4_000_000;

/// The object and morphism tables of a map.
pub type Tables = (Vec<u32>, Vec<u32>);

fn refuse(what: &str, bound: u128) -> Error {
    Error::CapExceeded(format!(
        "{what}: {bound} candidates exceed the oracle cap {ORACLE_CAP}"
    ))
}

fn pow(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Every map `x → y` as raw tables: all functions for sets, and for
/// categories every object assignment with every boundary-respecting
/// morphism assignment that preserves identities and composites.
pub fn enumerate_maps(x: &Obj, y: &Obj) -> Result<Vec<Tables>> {
    if x.cosmos() != y.cosmos() {
        return Err(Error::Validation("maps between different cosmoses".into()));
    }
    let bound = pow(y.n_objs(), x.n_objs()).saturating_mul(match x.cosmos() {
        Cosmos::FinSet => 1,
        Cosmos::FinCat => pow(y.n_mors(), x.n_mors()),
    });
    if bound > ORACLE_CAP * 8 {
        return Err(refuse("maps", bound));
    }
    let mut out = Vec::new();
    let mut obj = vec![0u32; x.n_objs()];
    for_each_table(&mut obj, y.n_objs() as u32, &mut |obj| match x.cosmos() {
        Cosmos::FinSet => out.push((obj.to_vec(), obj.to_vec())),
        Cosmos::FinCat => {
            let mut mor = vec![0u32; x.n_mors()];
            morphism_tables(x, y, obj, 0, &mut mor, &mut out);
        }
    });
    Ok(out)
}

fn for_each_table(slots: &mut [u32], range: u32, visit: &mut impl FnMut(&[u32])) {
    fn go(slots: &mut [u32], k: usize, range: u32, visit: &mut impl FnMut(&[u32])) {
        if k == slots.len() {
            visit(slots);
            return;
        }
        for v in 0..range {
            slots[k] = v;
            go(slots, k + 1, range, visit);
        }
    }
    go(slots, 0, range, visit);
}

fn morphism_tables(
    x: &Obj,
    y: &Obj,
    obj: &[u32],
    m: usize,
    mor: &mut Vec<u32>,
    out: &mut Vec<Tables>,
) {
    if m == x.n_mors() {
        let ids =
            (0..x.n_objs() as u32).all(|o| mor[x.ident(o) as usize] == y.ident(obj[o as usize]));
        let comps = ids
            && x.composable_pairs().all(|(f, g, h)| {
                y.compose(mor[f as usize], mor[g as usize]) == Some(mor[h as usize])
            });
        if comps {
            out.push((obj.to_vec(), mor.clone()));
        }
        return;
    }
    let (s, t) = (obj[x.src(m as u32) as usize], obj[x.tgt(m as u32) as usize]);
    for v in 0..y.n_mors() as u32 {
        if y.src(v) == s && y.tgt(v) == t {
            mor[m] = v;
            morphism_tables(x, y, obj, m + 1, mor, out);
        }
    }
}

/// Counts the `V`-natural transformations `F ⇒ G` between copresheaves by
/// enumerating families of component maps and checking every naturality
/// square cell by cell.
pub fn oracle_nat_enum(f: &VCopresheaf, g: &VCopresheaf) -> Result<usize> {
    if f.base() != g.base() {
        return Err(Error::Validation("copresheaves on different bases".into()));
    }
    let base = f.base();
    let n = base.len();
    let mut choices = Vec::with_capacity(n);
    let mut bound = 1u128;
    for i in 0..n {
        let c = enumerate_maps(f.at(i), g.at(i))?;
        bound = bound.saturating_mul(c.len() as u128);
        choices.push(c);
    }
    if bound > ORACLE_CAP {
        return Err(refuse("natural transformations", bound));
    }
    let natural = |i: usize, j: usize, a: &Tables, b: &Tables| {
        let hom = base.hom(i, j);
        let (fi, x) = (f.at(i), hom);
        (0..fi.n_mors() as u32).all(|c| {
            (0..x.n_mors() as u32)
                .all(|h| g.act(i, j, a.1[c as usize], h) == b.1[f.act(i, j, c, h) as usize])
        }) && (0..fi.n_objs() as u32).all(|c| {
            (0..x.n_objs() as u32)
                .all(|h| g.act_obj(i, j, a.0[c as usize], h) == b.0[f.act_obj(i, j, c, h) as usize])
        })
    };
    let mut picked: Vec<usize> = Vec::with_capacity(n);
    let mut count = 0;
    fn go(
        k: usize,
        n: usize,
        choices: &[Vec<Tables>],
        picked: &mut Vec<usize>,
        count: &mut usize,
        natural: &dyn Fn(usize, usize, &Tables, &Tables) -> bool,
    ) {
        if k == n {
            *count += 1;
            return;
        }
        for c in 0..choices[k].len() {
            picked.push(c);
            let ok = (0..=k).all(|i| {
                let (a, b) = (&choices[i][picked[i]], &choices[k][picked[k]]);
                natural(i, k, a, b) && natural(k, i, b, a)
            });
            if ok {
                go(k + 1, n, choices, picked, count, natural);
            }
            picked.pop();
        }
    }
    go(0, n, &choices, &mut picked, &mut count, &natural);
    Ok(count)
}

/// Counts internal functors `I → A` by enumerating pairs of level maps and
/// checking that they commute with sources, targets, identities and composition.
pub fn oracle_functor_enum(i: &InternalCategory, a: &InternalCategory) -> Result<usize> {
    if i.cosmos() != a.cosmos() {
        return Err(Error::Validation(
            "internal categories over different cosmoses".into(),
        ));
    }
    let h0s = enumerate_maps(i.a0(), a.a0())?;
    let h1s = enumerate_maps(i.a1(), a.a1())?;
    let bound = (h0s.len() as u128).saturating_mul(h1s.len() as u128);
    if bound > ORACLE_CAP {
        return Err(refuse("internal functors", bound));
    }
    let i1 = i.a1();
    let pairs: Vec<(u32, u32, u32)> = (0..i1.n_mors() as u32)
        .flat_map(|f| (0..i1.n_mors() as u32).map(move |g| (f, g)))
        .filter_map(|(f, g)| i.compose_mor(f, g).map(|h| (f, g, h)))
        .collect();
    let obj_pairs: Vec<(u32, u32, u32)> = (0..i1.n_objs() as u32)
        .flat_map(|f| (0..i1.n_objs() as u32).map(move |g| (f, g)))
        .filter_map(|(f, g)| i.compose_obj(f, g).map(|h| (f, g, h)))
        .collect();
    let mut count = 0;
    for h0 in &h0s {
        for h1 in &h1s {
            let bounds = (0..i1.n_mors()).all(|m| {
                a.s().on_mor(h1.1[m]) == h0.1[i.s().on_mor(m as u32) as usize]
                    && a.t().on_mor(h1.1[m]) == h0.1[i.t().on_mor(m as u32) as usize]
            }) && (0..i1.n_objs()).all(|m| {
                a.s().on_obj(h1.0[m]) == h0.0[i.s().on_obj(m as u32) as usize]
                    && a.t().on_obj(h1.0[m]) == h0.0[i.t().on_obj(m as u32) as usize]
            });
            if !bounds {
                continue;
            }
            let i0 = i.a0();
            let units = (0..i0.n_mors())
                .all(|o| h1.1[i.i().on_mor(o as u32) as usize] == a.i().on_mor(h0.1[o]))
                && (0..i0.n_objs())
                    .all(|o| h1.0[i.i().on_obj(o as u32) as usize] == a.i().on_obj(h0.0[o]));
            let comps = units
                && pairs.iter().all(|&(f, g, h)| {
                    a.compose_mor(h1.1[f as usize], h1.1[g as usize]) == Some(h1.1[h as usize])
                })
                && obj_pairs.iter().all(|&(f, g, h)| {
                    a.compose_obj(h1.0[f as usize], h1.0[g as usize]) == Some(h1.0[h as usize])
                });
            if comps {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// One family `{ev_{i,j} : Wi × I(i,j) × X → C(A, Gj)}`, as the tables of
/// its maps in the order `i * n + j`.
pub type Family = Vec<Tables>;

/// The two descriptions of the slice hom-sets, enumerated separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceBijection {
    /// Families compatible with composition in `I × ΣX` (action of `C(A, G−)`).
    pub enriched: BTreeSet<Family>,
    /// Families compatible with composition in `∫W × Int ΣX` (composition of `C` after `G`).
    pub internal: BTreeSet<Family>,
}

impl SliceBijection {
    /// True when both sides hold exactly the same families.
    pub fn agrees(&self) -> bool {
        self.enriched == self.internal
    }
}

/// Which composite closes the lower triangle of the compatibility diagram.
#[derive(Clone, Copy)]
enum Side {
    Enriched,
    Internal,
}

/// Enumerates both family descriptions for `(W, G, A, X)`: maps
/// `Wi × I(i,j) × X → C(A, Gj)` agreeing with composition in `I` and with
/// the action of `W`, and closing the lower triangle either through the
/// action of `C(A, G−)` or through composition in `C` after `G`.
pub fn oracle_isoofslices(
    w: &VCopresheaf,
    g: &VFunctor,
    a: usize,
    x: &Obj,
) -> Result<SliceBijection> {
    let shape = w.base();
    if shape != &g.source {
        return Err(Error::Validation(
            "weight and diagram have different shapes".into(),
        ));
    }
    let n = shape.len();
    let mut doms = Vec::with_capacity(n * n);
    let mut choices = Vec::with_capacity(n * n);
    let mut bound = 1u128;
    for i in 0..n {
        for j in 0..n {
            let dom = product_n(&[w.at(i).clone(), shape.hom(i, j).clone(), x.clone()]).obj;
            let c = enumerate_maps(&dom, g.target.hom(a, g.obj[j]))?;
            bound = bound.saturating_mul(c.len() as u128);
            doms.push(dom);
            choices.push(c);
        }
    }
    if bound > ORACLE_CAP {
        return Err(refuse("slice families", bound));
    }
    let action = hom_copresheaf(g, a)?;
    let mut out = [BTreeSet::new(), BTreeSet::new()];
    for (slot, side) in [Side::Enriched, Side::Internal].into_iter().enumerate() {
        let ctx = SliceCtx {
            w,
            g,
            a,
            x,
            doms: &doms,
            action: &action,
            side,
        };
        let mut picked = Vec::with_capacity(n * n);
        ctx.search(&choices, &mut picked, &mut out[slot]);
    }
    let [enriched, internal] = out;
    Ok(SliceBijection { enriched, internal })
}

struct SliceCtx<'a> {
    w: &'a VCopresheaf,
    g: &'a VFunctor,
    a: usize,
    x: &'a Obj,
    doms: &'a [Obj],
    action: &'a VCopresheaf,
    side: Side,
}

impl SliceCtx<'_> {
    fn n(&self) -> usize {
        self.w.base().len()
    }

    fn search(&self, choices: &[Vec<Tables>], picked: &mut Vec<usize>, out: &mut BTreeSet<Family>) {
        let n = self.n();
        let k = picked.len();
        if k == n * n {
            out.insert(
                picked
                    .iter()
                    .enumerate()
                    .map(|(p, &c)| choices[p][c].clone())
                    .collect(),
            );
            return;
        }
        for c in 0..choices[k].len() {
            picked.push(c);
            let fam: Vec<&Tables> = picked
                .iter()
                .enumerate()
                .map(|(p, &c)| &choices[p][c])
                .collect();
            let ok = (0..n)
                .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l))))
                .filter(|&(i, j, l)| {
                    let slots = [i * n + j, j * n + l, i * n + l];
                    slots.iter().all(|&s| s < fam.len()) && slots.contains(&k)
                })
                .all(|(i, j, l)| self.compatible(&fam, i, j, l));
            if ok {
                self.search(choices, picked, out);
            }
            picked.pop();
        }
    }

    /// Checks the compatibility diagram at `(i, j, l)` on every object and
    /// morphism cell of `Wi × I(i,j) × I(j,l) × X`.
    fn compatible(&self, fam: &[&Tables], i: usize, j: usize, l: usize) -> bool {
        let n = self.n();
        let shape = self.w.base();
        let c = &self.g.target;
        let (gj, gl) = (self.g.obj[j], self.g.obj[l]);
        let (dij, djl, dil) = (
            &self.doms[i * n + j],
            &self.doms[j * n + l],
            &self.doms[i * n + l],
        );
        let (eij, ejl, eil) = (fam[i * n + j], fam[j * n + l], fam[i * n + l]);
        let (wi, hij, hjl) = (self.w.at(i), shape.hom(i, j), shape.hom(j, l));
        for level in [Level::Obj, Level::Mor] {
            for cw in 0..level.count(wi) {
                for f in 0..level.count(hij) {
                    for h in 0..level.count(hjl) {
                        for cx in 0..level.count(self.x) {
                            let fh = level.compose_shape(shape, i, j, l, f, h);
                            let left = level.ev(eil, level.join(dil, &[cw, fh, cx]));
                            let wf = level.act_weight(self.w, i, j, cw, f);
                            let upper = level.ev(ejl, level.join(djl, &[wf, h, cx]));
                            let first = level.ev(eij, level.join(dij, &[cw, f, cx]));
                            let lower = match self.side {
                                Side::Enriched => level.act_weight(self.action, j, l, first, h),
                                Side::Internal => {
                                    let gh = level.apply(self.g.on_hom(j, l), h);
                                    level.compose_target(c, self.a, gj, gl, first, gh)
                                }
                            };
                            if left != upper || left != lower {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy)]
enum Level {
    Obj,
    Mor,
}

impl Level {
    fn count(self, x: &Obj) -> u32 {
        match self {
            Level::Obj => x.n_objs() as u32,
            Level::Mor => x.n_mors() as u32,
        }
    }

    fn ev(self, t: &Tables, k: u32) -> u32 {
        match self {
            Level::Obj => t.0[k as usize],
            Level::Mor => t.1[k as usize],
        }
    }

    fn join(self, d: &Obj, parts: &[u32]) -> u32 {
        match self {
            Level::Obj => d.join_obj(parts),
            Level::Mor => d.join_mor(parts),
        }
    }

    fn compose_shape(self, s: &VCategory, i: usize, j: usize, l: usize, f: u32, h: u32) -> u32 {
        match self {
            Level::Obj => s.comp_obj(i, j, l, f, h),
            Level::Mor => s.comp_mor(i, j, l, f, h),
        }
    }

    fn compose_target(self, c: &VCategory, a: usize, b: usize, d: usize, f: u32, h: u32) -> u32 {
        match self {
            Level::Obj => c.comp_obj(a, b, d, f, h),
            Level::Mor => c.comp_mor(a, b, d, f, h),
        }
    }

    fn act_weight(self, w: &VCopresheaf, i: usize, j: usize, x: u32, f: u32) -> u32 {
        match self {
            Level::Obj => w.act_obj(i, j, x, f),
            Level::Mor => w.act(i, j, x, f),
        }
    }

    fn apply(self, m: &Map, k: u32) -> u32 {
        match self {
            Level::Obj => m.on_obj(k),
            Level::Mor => m.on_mor(k),
        }
    }
}
