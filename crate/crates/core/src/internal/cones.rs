//! Internal categories of cones `Δ↓G` and cocones `G↓Δ` over an internal
//! diagram `G : I → A`, and internal limits and colimits as terminal and
//! initial objects in them.
//!
//! The cells are enumerated directly. A cone with apex `a` is a functor
//! `θ : I0 → A1` with `s θ = a`, `t θ = G0` and `θ(s f) ; G1(f) = θ(t f)` for
//! every cell `f` of `I1`; a level-1 cell is an arrow `u` of `A` with cones
//! `ρ`, `ρ'` at its endpoints such that `u ; ρ' = ρ` pointwise.

use std::collections::HashMap;

use crate::cosmos::{Cosmos, Map};
use crate::csp::Csp;
use crate::error::{Error, Result};

use super::category::{InternalCategory, InternalFunctor};
use super::slice::{is_internal_initial, is_internal_terminal};
use super::tabulate;

/// Cones or cocones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    /// Cones `Δa ⇒ G`.
    Cone,
    /// Cocones `G ⇒ Δa`.
    Cocone,
}

/// A (co)cone: an apex in `A0` and the components `θ : I0 → A1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    /// The apex, an object of `A0`.
    pub apex: u32,
    /// `θ` on objects of `I0`.
    pub obj: Vec<u32>,
    /// `θ` on morphisms of `I0`.
    pub mor: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ConeMor {
    src: u32,
    tgt: u32,
    alpha: u32,
    comps: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Cell {
    u: u32,
    src: u32,
    tgt: u32,
}

/// The internal category of (co)cones with its projection to `A`.
#[derive(Clone, Debug)]
pub struct ConeCategory {
    /// The diagram `G : I → A`.
    pub diagram: InternalFunctor,
    /// Cones or cocones.
    pub kind: ConeKind,
    /// The internal category of (co)cones.
    pub cat: InternalCategory,
    /// The projection to `A` taking a (co)cone to its apex.
    pub projection: InternalFunctor,
    cones: Vec<Cone>,
    index: HashMap<Cone, u32>,
}

impl ConeCategory {
    /// The (co)cones, in level-0 object order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Level-0 object index of a (co)cone.
    pub fn locate(&self, cone: &Cone) -> Option<u32> {
        self.index.get(cone).copied()
    }

    /// The (co)cone at level-0 object `k`.
    pub fn cone(&self, k: u32) -> &Cone {
        &self.cones[k as usize]
    }
}

/// `Δ↓G`, the internal category of cones over `G`.
pub fn cone_category(g: &InternalFunctor) -> Result<ConeCategory> {
    build(g, ConeKind::Cone)
}

/// `G↓Δ`, the internal category of cocones under `G`.
pub fn cocone_category(g: &InternalFunctor) -> Result<ConeCategory> {
    build(g, ConeKind::Cocone)
}

fn enumerate_cones(g: &InternalFunctor, kind: ConeKind, apex: u32) -> Result<Vec<Cone>> {
    let (i, a) = (&g.source, &g.target);
    let (i0, i1, a0, a1) = (i.a0(), i.a1(), a.a0(), a.a1());
    let n0 = i0.n_objs();
    let one = a0.ident(apex);
    let cone = kind == ConeKind::Cone;
    let mut csp = Csp::new();
    for y in 0..n0 as u32 {
        let gy = g.h0.on_obj(y);
        let (want_s, want_t) = if cone { (apex, gy) } else { (gy, apex) };
        csp.var_list(
            (0..a1.n_objs() as u32)
                .filter(|&f| a.s().on_obj(f) == want_s && a.t().on_obj(f) == want_t)
                .collect(),
        );
    }
    for m in 0..i0.n_mors() as u32 {
        let (s, t, id) = (i0.src(m) as usize, i0.tgt(m) as usize, i0.is_identity(m));
        let gm = g.h0.on_mor(m);
        let (want_s, want_t) = if cone { (one, gm) } else { (gm, one) };
        let (a1c, asrc, atgt) = (a1.clone(), a.s().clone(), a.t().clone());
        csp.var_dynamic(move |p| {
            if id {
                return vec![a1c.ident(p[s])];
            }
            a1c.hom(p[s], p[t])
                .iter()
                .copied()
                .filter(|&x| asrc.on_mor(x) == want_s && atgt.on_mor(x) == want_t)
                .collect()
        });
    }
    for (f, gg, h) in i0.composable_pairs() {
        let (vf, vg, vh) = (n0 + f as usize, n0 + gg as usize, n0 + h as usize);
        let a1c = a1.clone();
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a1c.compose(v[vf], v[vg]) == Some(v[vh])
        });
    }
    for x in 0..i1.n_objs() as u32 {
        let (s, t) = (i.s().on_obj(x) as usize, i.t().on_obj(x) as usize);
        let gx = g.h1.on_obj(x);
        csp.constrain(s.max(t), move |v| {
            if cone {
                a.compose_obj(v[s], gx) == Some(v[t])
            } else {
                a.compose_obj(gx, v[t]) == Some(v[s])
            }
        });
    }
    for m in 0..i1.n_mors() as u32 {
        let (s, t) = (n0 + i.s().on_mor(m) as usize, n0 + i.t().on_mor(m) as usize);
        let gm = g.h1.on_mor(m);
        csp.constrain(s.max(t), move |v| {
            if cone {
                a.compose_mor(v[s], gm) == Some(v[t])
            } else {
                a.compose_mor(gm, v[t]) == Some(v[s])
            }
        });
    }
    Ok(csp
        .with_limit(crate::cosmos::EXPONENTIAL_CAP)
        .solutions()?
        .into_iter()
        .map(|mut s| {
            let mor = s.split_off(n0);
            Cone { apex, obj: s, mor }
        })
        .collect())
}

fn cone_morphisms(
    g: &InternalFunctor,
    kind: ConeKind,
    c: &Cone,
    d: &Cone,
    alpha: u32,
) -> Vec<Vec<u32>> {
    let (i, a) = (&g.source, &g.target);
    let (i0, i1, a0, a1) = (i.a0(), i.a1(), a.a0(), a.a1());
    let cone = kind == ConeKind::Cone;
    let mut csp = Csp::new();
    for y in 0..i0.n_objs() {
        let fixed = a0.ident(g.h0.on_obj(y as u32));
        let (want_s, want_t) = if cone { (alpha, fixed) } else { (fixed, alpha) };
        csp.var_list(
            a1.hom(c.obj[y], d.obj[y])
                .iter()
                .copied()
                .filter(|&m| a.s().on_mor(m) == want_s && a.t().on_mor(m) == want_t)
                .collect(),
        );
    }
    for m in 0..i0.n_mors() as u32 {
        if i0.is_identity(m) {
            continue;
        }
        let (s, t) = (i0.src(m) as usize, i0.tgt(m) as usize);
        let (p, q) = (c.mor[m as usize], d.mor[m as usize]);
        let a1c = a1.clone();
        csp.constrain(s.max(t), move |v| {
            a1c.compose(p, v[t]) == a1c.compose(v[s], q)
        });
    }
    let ia = a.i().on_mor(alpha);
    for x in 0..i1.n_objs() as u32 {
        let (s, t) = (i.s().on_obj(x) as usize, i.t().on_obj(x) as usize);
        let gid = a1.ident(g.h1.on_obj(x));
        csp.constrain(s.max(t), move |v| {
            if cone {
                a.compose_mor(v[s], gid) == a.compose_mor(ia, v[t])
            } else {
                a.compose_mor(v[s], ia) == a.compose_mor(gid, v[t])
            }
        });
    }
    csp.solutions().unwrap_or_default()
}

fn cone_label(a: &InternalCategory, c: &Cone) -> String {
    let o: Vec<String> = c
        .obj
        .iter()
        .map(|&x| a.a1().obj_label(x).into_owned())
        .collect();
    if a.cosmos() == Cosmos::FinSet {
        return format!("{}:[{}]", a.a0().obj_label(c.apex), o.join(","));
    }
    let m: Vec<String> = c
        .mor
        .iter()
        .map(|&x| a.a1().mor_label(x).into_owned())
        .collect();
    format!(
        "{}:[{};{}]",
        a.a0().obj_label(c.apex),
        o.join(","),
        m.join(",")
    )
}

fn build(g: &InternalFunctor, kind: ConeKind) -> Result<ConeCategory> {
    let a = g.target.clone();
    let (a0, a1) = (a.a0(), a.a1());
    let cosmos = a.cosmos();
    let cone = kind == ConeKind::Cone;

    let mut cones = Vec::new();
    let mut by_apex: Vec<Vec<u32>> = vec![Vec::new(); a0.n_objs()];
    for apex in 0..a0.n_objs() as u32 {
        for c in enumerate_cones(g, kind, apex)? {
            by_apex[apex as usize].push(cones.len() as u32);
            cones.push(c);
        }
    }
    let index: HashMap<Cone, u32> = cones
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, c)| (c, k as u32))
        .collect();

    let mut mors0: Vec<ConeMor> = Vec::new();
    for (p, c) in cones.iter().enumerate() {
        for (q, d) in cones.iter().enumerate() {
            for &alpha in a0.hom(c.apex, d.apex) {
                for comps in cone_morphisms(g, kind, c, d, alpha) {
                    mors0.push(ConeMor {
                        src: p as u32,
                        tgt: q as u32,
                        alpha,
                        comps,
                    });
                }
            }
        }
    }
    let mor0_index: HashMap<ConeMor, u32> = mors0
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k as u32))
        .collect();
    let mut mors0_by_alpha: HashMap<u32, Vec<u32>> = HashMap::new();
    for (k, m) in mors0.iter().enumerate() {
        mors0_by_alpha.entry(m.alpha).or_default().push(k as u32);
    }
    let ident0: Vec<u32> = cones
        .iter()
        .enumerate()
        .map(|(p, c)| {
            let m = ConeMor {
                src: p as u32,
                tgt: p as u32,
                alpha: a0.ident(c.apex),
                comps: c.obj.iter().map(|&x| a1.ident(x)).collect(),
            };
            mor0_index[&m]
        })
        .collect();
    let compose0 = |f: u32, h: u32| -> u32 {
        let (x, y) = (&mors0[f as usize], &mors0[h as usize]);
        let m = ConeMor {
            src: x.src,
            tgt: y.tgt,
            alpha: a0.compose(x.alpha, y.alpha).expect("composable"),
            comps: x
                .comps
                .iter()
                .zip(&y.comps)
                .map(|(&p, &q)| a1.compose(p, q).expect("composable"))
                .collect(),
        };
        mor0_index[&m]
    };
    let level0 = tabulate(
        cosmos,
        cones.iter().map(|c| cone_label(&a, c)).collect(),
        mors0
            .iter()
            .map(|m| {
                let l: Vec<String> = m
                    .comps
                    .iter()
                    .map(|&x| a1.mor_label(x).into_owned())
                    .collect();
                (
                    format!(
                        "{}=>{}:{}[{}]",
                        m.src,
                        m.tgt,
                        a0.mor_label(m.alpha),
                        l.join(",")
                    ),
                    m.src,
                    m.tgt,
                )
            })
            .collect(),
        ident0.clone(),
        compose0,
    );

    // Whiskering a (co)cone by an arrow `u` of `A`: `u ; ρ` for cones, `ρ ; u` for cocones.
    let whisker_obj = |u: u32, c: &Cone| -> Option<Cone> {
        let iu = a1.ident(u);
        let apex = if cone {
            a.s().on_obj(u)
        } else {
            a.t().on_obj(u)
        };
        let obj = c
            .obj
            .iter()
            .map(|&x| {
                if cone {
                    a.compose_obj(u, x)
                } else {
                    a.compose_obj(x, u)
                }
            })
            .collect::<Option<Vec<u32>>>()?;
        let mor = c
            .mor
            .iter()
            .map(|&x| {
                if cone {
                    a.compose_mor(iu, x)
                } else {
                    a.compose_mor(x, iu)
                }
            })
            .collect::<Option<Vec<u32>>>()?;
        Some(Cone { apex, obj, mor })
    };

    let mut cells: Vec<Cell> = Vec::new();
    for u in 0..a1.n_objs() as u32 {
        let known = if cone {
            a.t().on_obj(u)
        } else {
            a.s().on_obj(u)
        };
        for &k in &by_apex[known as usize] {
            let other = whisker_obj(u, &cones[k as usize])
                .and_then(|c| index.get(&c).copied())
                .ok_or_else(|| Error::Validation("whiskered cone is not a cone".into()))?;
            let (src, tgt) = if cone { (other, k) } else { (k, other) };
            cells.push(Cell { u, src, tgt });
        }
    }
    cells.sort_by_key(|c| (c.u, c.src, c.tgt));
    let cell_index: HashMap<Cell, u32> = cells
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, c)| (c, k as u32))
        .collect();

    let mut cell_mors: Vec<Cell> = Vec::new();
    if cosmos == Cosmos::FinSet {
        cell_mors = cells.clone();
    } else {
        for um in 0..a1.n_mors() as u32 {
            let known_alpha = if cone {
                a.t().on_mor(um)
            } else {
                a.s().on_mor(um)
            };
            for &k in mors0_by_alpha
                .get(&known_alpha)
                .map(Vec::as_slice)
                .unwrap_or(&[])
            {
                let r = &mors0[k as usize];
                let comps = r
                    .comps
                    .iter()
                    .map(|&x| {
                        if cone {
                            a.compose_mor(um, x)
                        } else {
                            a.compose_mor(x, um)
                        }
                    })
                    .collect::<Option<Vec<u32>>>();
                let Some(comps) = comps else { continue };
                let usrc = a1.src(um);
                let utgt = a1.tgt(um);
                let (known_src, known_tgt) = (r.src, r.tgt);
                let other_alpha = if cone {
                    a.s().on_mor(um)
                } else {
                    a.t().on_mor(um)
                };
                let find = |u: u32, kc: u32| -> Option<u32> {
                    let c = whisker_obj(u, &cones[kc as usize])?;
                    index.get(&c).copied()
                };
                let (Some(os), Some(ot)) = (find(usrc, known_src), find(utgt, known_tgt)) else {
                    return Err(Error::Validation("whiskered cone is not a cone".into()));
                };
                let m = ConeMor {
                    src: os,
                    tgt: ot,
                    alpha: other_alpha,
                    comps,
                };
                let other = *mor0_index.get(&m).ok_or_else(|| {
                    Error::Validation("whiskered cone morphism is not a cone morphism".into())
                })?;
                let (src, tgt) = if cone { (other, k) } else { (k, other) };
                cell_mors.push(Cell { u: um, src, tgt });
            }
        }
        cell_mors.sort_by_key(|c| (c.u, c.src, c.tgt));
    }
    let cell_mor_index: HashMap<Cell, u32> = cell_mors
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, c)| (c, k as u32))
        .collect();
    let cell_obj_of = |m: &Cell, end_src: bool| -> u32 {
        let u = if end_src { a1.src(m.u) } else { a1.tgt(m.u) };
        let (s, t) = if end_src {
            (level0.src(m.src), level0.src(m.tgt))
        } else {
            (level0.tgt(m.src), level0.tgt(m.tgt))
        };
        cell_index[&Cell { u, src: s, tgt: t }]
    };
    let ident1: Vec<u32> = cells
        .iter()
        .map(|c| {
            cell_mor_index[&Cell {
                u: a1.ident(c.u),
                src: ident0[c.src as usize],
                tgt: ident0[c.tgt as usize],
            }]
        })
        .collect();
    let level1 = tabulate(
        cosmos,
        cells
            .iter()
            .map(|c| format!("{}:{}->{}", a1.obj_label(c.u), c.src, c.tgt))
            .collect(),
        cell_mors
            .iter()
            .map(|m| {
                (
                    format!("{}:{}->{}", a1.mor_label(m.u), m.src, m.tgt),
                    cell_obj_of(m, true),
                    cell_obj_of(m, false),
                )
            })
            .collect(),
        ident1,
        |f, h| {
            let (x, y) = (&cell_mors[f as usize], &cell_mors[h as usize]);
            let m = Cell {
                u: a1.compose(x.u, y.u).expect("composable"),
                src: level0.compose(x.src, y.src).expect("composable"),
                tgt: level0.compose(x.tgt, y.tgt).expect("composable"),
            };
            cell_mor_index[&m]
        },
    );
    let s = Map::from_fns(
        level1.clone(),
        level0.clone(),
        |o| cells[o as usize].src,
        |m| cell_mors[m as usize].src,
    );
    let t = Map::from_fns(
        level1.clone(),
        level0.clone(),
        |o| cells[o as usize].tgt,
        |m| cell_mors[m as usize].tgt,
    );
    let iden = Map::from_fns(
        level0.clone(),
        level1.clone(),
        |o| {
            cell_index[&Cell {
                u: a.i().on_obj(cones[o as usize].apex),
                src: o,
                tgt: o,
            }]
        },
        |m| {
            let alpha = if cosmos == Cosmos::FinSet {
                a0.ident(cones[m as usize].apex)
            } else {
                mors0[m as usize].alpha
            };
            cell_mor_index[&Cell {
                u: a.i().on_mor(alpha),
                src: m,
                tgt: m,
            }]
        },
    );
    let cat = InternalCategory::from_cells(level0.clone(), level1.clone(), s, t, iden, |f, h| {
        let (x, y) = (&cell_mors[f as usize], &cell_mors[h as usize]);
        let m = Cell {
            u: a.compose_mor(x.u, y.u).expect("composable"),
            src: x.src,
            tgt: y.tgt,
        };
        cell_mor_index[&m]
    })?;
    let p0 = Map::from_fns(
        level0.clone(),
        a0.clone(),
        |o| cones[o as usize].apex,
        |m| {
            if cosmos == Cosmos::FinSet {
                cones[m as usize].apex
            } else {
                mors0[m as usize].alpha
            }
        },
    );
    let p1 = Map::from_fns(
        level1.clone(),
        a1.clone(),
        |o| cells[o as usize].u,
        |m| cell_mors[m as usize].u,
    );
    let projection = InternalFunctor::new(cat.clone(), a.clone(), p0, p1)?;
    Ok(ConeCategory {
        diagram: g.clone(),
        kind,
        cat,
        projection,
        cones,
        index,
    })
}

/// `(L, κ)` is an internal limit of `G` when it is internal terminal in `Δ↓G`.
/// Returns `false` when `(L, κ)` is not a cone at all.
pub fn is_internal_limit(g: &InternalFunctor, cone: &Cone) -> Result<bool> {
    let cc = cone_category(g)?;
    match cc.locate(cone) {
        Some(k) => is_internal_terminal(&cc.cat, k),
        None => Ok(false),
    }
}

/// `(L, κ)` is an internal colimit of `G` when it is internal initial in `G↓Δ`.
pub fn is_internal_colimit(g: &InternalFunctor, cocone: &Cone) -> Result<bool> {
    let cc = cocone_category(g)?;
    match cc.locate(cocone) {
        Some(k) => is_internal_initial(&cc.cat, k),
        None => Ok(false),
    }
}

/// Searches the cocones under `G : cst X → A` in order and returns the first
/// internal initial one.
pub fn compute_internal_colimit(g: &InternalFunctor) -> Result<Option<Cone>> {
    let src = &g.source;
    if src.s() != &Map::identity(src.a1()) || src.a0() != src.a1() {
        return Err(Error::Validation(
            "internal colimits are computed for constant shapes only".into(),
        ));
    }
    let cc = cocone_category(g)?;
    for k in 0..cc.cat.a0().n_objs() as u32 {
        if is_internal_initial(&cc.cat, k)? {
            return Ok(Some(cc.cone(k).clone()));
        }
    }
    Ok(None)
}
