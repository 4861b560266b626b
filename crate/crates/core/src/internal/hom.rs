//! Internal hom-objects `⟦I, A⟧` of `Cat(V)`.
//!
//! The generic construction enumerates the cells of the two equalizer
//! subobjects directly: level 0 holds the internal functors `I → A` with the
//! internal natural transformations between their components, level 1 the
//! triples `(H, K, θ)` with `θ : I0 → A1` an internal transformation `H ⇒ K`.
//! The closed forms for `⟦cst X, A⟧` and `⟦𝟚, A⟧` are built separately so the
//! two can be compared.

use std::collections::HashMap;

use crate::cosmos::{exponential, pullback, Cosmos, Exponential, Map, Obj, Pullback};
use crate::csp::Csp;
use crate::error::{Error, Result};

use super::category::{InternalCategory, InternalFunctor};
use super::intc::Internalization;
use super::tabulate;

/// Cell tables of an internal functor `I → A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorCells {
    /// `H0` on objects of `I0`.
    pub h0o: Vec<u32>,
    /// `H0` on morphisms of `I0`.
    pub h0m: Vec<u32>,
    /// `H1` on objects of `I1`.
    pub h1o: Vec<u32>,
    /// `H1` on morphisms of `I1`.
    pub h1m: Vec<u32>,
}

/// A morphism of `⟦I, A⟧_0`: components of `α0 : H0 ⇒ H0'` and `α1 : H1 ⇒ H1'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct FunctorMor {
    src: u32,
    tgt: u32,
    a0: Vec<u32>,
    a1: Vec<u32>,
}

/// An object of `⟦I, A⟧_1`: an internal transformation `θ : H ⇒ K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransformationCells {
    /// Index of `H` in level 0.
    pub source: u32,
    /// Index of `K` in level 0.
    pub target: u32,
    /// `θ` on objects of `I0`.
    pub obj: Vec<u32>,
    /// `θ` on morphisms of `I0`.
    pub mor: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct TransMor {
    src: u32,
    tgt: u32,
    alpha: u32,
    beta: u32,
    comps: Vec<u32>,
}

/// The internal hom `⟦I, A⟧` with the enumerated cells of both levels.
#[derive(Clone, Debug)]
pub struct InternalHom {
    /// The exponent `I`.
    pub source: InternalCategory,
    /// The target `A`.
    pub target: InternalCategory,
    /// The internal category `⟦I, A⟧`.
    pub cat: InternalCategory,
    functors: Vec<FunctorCells>,
    functor_mors: Vec<FunctorMor>,
    transformations: Vec<TransformationCells>,
    trans_mors: Vec<TransMor>,
}

fn compose_in(a1: &Obj, f: u32, g: u32) -> u32 {
    a1.compose(f, g).expect("composable in the object")
}

/// Enumerates the internal functors `I → A` in lexicographic order of their
/// cell tables.
pub fn internal_functors(i: &InternalCategory, a: &InternalCategory) -> Result<Vec<FunctorCells>> {
    let (i0, i1, a0, a1) = (i.a0(), i.a1(), a.a0(), a.a1());
    let (n0o, n0m, n1o, n1m) = (i0.n_objs(), i0.n_mors(), i1.n_objs(), i1.n_mors());
    let v0m = n0o;
    let v1o = v0m + n0m;
    let v1m = v1o + n1o;
    let mut by_st: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for f in 0..a1.n_objs() as u32 {
        by_st
            .entry((a.s().on_obj(f), a.t().on_obj(f)))
            .or_default()
            .push(f);
    }
    let mut csp = Csp::new();
    for _ in 0..n0o {
        csp.var_range(a0.n_objs());
    }
    for m in 0..n0m as u32 {
        let (s, t, id) = (i0.src(m) as usize, i0.tgt(m) as usize, i0.is_identity(m));
        let a0 = a0.clone();
        csp.var_dynamic(move |p| {
            if id {
                vec![a0.ident(p[s])]
            } else {
                a0.hom(p[s], p[t]).to_vec()
            }
        });
    }
    for f in 0..n1o as u32 {
        let (s, t) = (i.s().on_obj(f) as usize, i.t().on_obj(f) as usize);
        let by_st = &by_st;
        csp.var_dynamic(move |p| by_st.get(&(p[s], p[t])).cloned().unwrap_or_default());
    }
    for m in 0..n1m as u32 {
        let (s, t, id) = (
            v1o + i1.src(m) as usize,
            v1o + i1.tgt(m) as usize,
            i1.is_identity(m),
        );
        let (ms, mt) = (
            v0m + i.s().on_mor(m) as usize,
            v0m + i.t().on_mor(m) as usize,
        );
        let (a1, asrc, atgt) = (a1.clone(), a.s().clone(), a.t().clone());
        csp.var_dynamic(move |p| {
            if id {
                return vec![a1.ident(p[s])];
            }
            a1.hom(p[s], p[t])
                .iter()
                .copied()
                .filter(|&x| asrc.on_mor(x) == p[ms] && atgt.on_mor(x) == p[mt])
                .collect()
        });
    }
    for (f, g, h) in i0.composable_pairs() {
        let (vf, vg, vh) = (v0m + f as usize, v0m + g as usize, v0m + h as usize);
        let a0 = a0.clone();
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a0.compose(v[vf], v[vg]) == Some(v[vh])
        });
    }
    for (f, g, h) in i1.composable_pairs() {
        let (vf, vg, vh) = (v1m + f as usize, v1m + g as usize, v1m + h as usize);
        let a1 = a1.clone();
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a1.compose(v[vf], v[vg]) == Some(v[vh])
        });
    }
    for y in 0..n0o as u32 {
        let vy = v1o + i.i().on_obj(y) as usize;
        let ai = a.i().clone();
        let yy = y as usize;
        csp.constrain(vy.max(yy), move |v| v[vy] == ai.on_obj(v[yy]));
    }
    for m in 0..n0m as u32 {
        let vy = v1m + i.i().on_mor(m) as usize;
        let vm = v0m + m as usize;
        let ai = a.i().clone();
        csp.constrain(vy.max(vm), move |v| v[vy] == ai.on_mor(v[vm]));
    }
    let pb = i.composable();
    for k in 0..pb.obj().n_objs() as u32 {
        let (f, g, h) = (pb.p0.on_obj(k), pb.p1.on_obj(k), i.c().on_obj(k));
        let (vf, vg, vh) = (v1o + f as usize, v1o + g as usize, v1o + h as usize);
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a.compose_obj(v[vf], v[vg]) == Some(v[vh])
        });
    }
    for k in 0..pb.obj().n_mors() as u32 {
        let (f, g, h) = (pb.p0.on_mor(k), pb.p1.on_mor(k), i.c().on_mor(k));
        let (vf, vg, vh) = (v1m + f as usize, v1m + g as usize, v1m + h as usize);
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a.compose_mor(v[vf], v[vg]) == Some(v[vh])
        });
    }
    let sols = csp.with_limit(crate::cosmos::EXPONENTIAL_CAP).solutions()?;
    Ok(sols
        .into_iter()
        .map(|s| FunctorCells {
            h0o: s[..v0m].to_vec(),
            h0m: s[v0m..v1o].to_vec(),
            h1o: s[v1o..v1m].to_vec(),
            h1m: s[v1m..].to_vec(),
        })
        .collect())
}

fn functor_mors(
    i: &InternalCategory,
    a: &InternalCategory,
    h: &FunctorCells,
    k: &FunctorCells,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    let (i0, i1, a0, a1) = (i.a0(), i.a1(), a.a0(), a.a1());
    let n0 = i0.n_objs();
    let mut csp = Csp::new();
    for y in 0..n0 {
        csp.var_list(a0.hom(h.h0o[y], k.h0o[y]).to_vec());
    }
    for x in 0..i1.n_objs() as u32 {
        let (s, t) = (i.s().on_obj(x) as usize, i.t().on_obj(x) as usize);
        let cands = a1.hom(h.h1o[x as usize], k.h1o[x as usize]).to_vec();
        let (asrc, atgt) = (a.s().clone(), a.t().clone());
        csp.var_dynamic(move |p| {
            cands
                .iter()
                .copied()
                .filter(|&m| asrc.on_mor(m) == p[s] && atgt.on_mor(m) == p[t])
                .collect()
        });
    }
    for m in 0..i0.n_mors() as u32 {
        if i0.is_identity(m) {
            continue;
        }
        let (s, t) = (i0.src(m) as usize, i0.tgt(m) as usize);
        let (hm, km) = (h.h0m[m as usize], k.h0m[m as usize]);
        let a0 = a0.clone();
        csp.constrain(s.max(t), move |v| {
            a0.compose(hm, v[t]) == a0.compose(v[s], km)
        });
    }
    for m in 0..i1.n_mors() as u32 {
        if i1.is_identity(m) {
            continue;
        }
        let (s, t) = (n0 + i1.src(m) as usize, n0 + i1.tgt(m) as usize);
        let (hm, km) = (h.h1m[m as usize], k.h1m[m as usize]);
        let a1 = a1.clone();
        csp.constrain(s.max(t), move |v| {
            a1.compose(hm, v[t]) == a1.compose(v[s], km)
        });
    }
    for y in 0..n0 {
        let vy = n0 + i.i().on_obj(y as u32) as usize;
        let ai = a.i().clone();
        csp.constrain(vy.max(y), move |v| v[vy] == ai.on_mor(v[y]));
    }
    let pb = i.composable();
    for q in 0..pb.obj().n_objs() as u32 {
        let (f, g, c) = (pb.p0.on_obj(q), pb.p1.on_obj(q), i.c().on_obj(q));
        let (vf, vg, vc) = (n0 + f as usize, n0 + g as usize, n0 + c as usize);
        csp.constrain(vf.max(vg).max(vc), move |v| {
            a.compose_mor(v[vf], v[vg]) == Some(v[vc])
        });
    }
    csp.solutions()
        .unwrap_or_default()
        .into_iter()
        .map(|mut s| {
            let a1 = s.split_off(n0);
            (s, a1)
        })
        .collect()
}

fn transformations(
    i: &InternalCategory,
    a: &InternalCategory,
    h: &FunctorCells,
    k: &FunctorCells,
) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let (i0, i1, a1) = (i.a0(), i.a1(), a.a1());
    let n0 = i0.n_objs();
    let mut csp = Csp::new();
    for y in 0..n0 {
        let cands: Vec<u32> = (0..a1.n_objs() as u32)
            .filter(|&f| a.s().on_obj(f) == h.h0o[y] && a.t().on_obj(f) == k.h0o[y])
            .collect();
        csp.var_list(cands);
    }
    for m in 0..i0.n_mors() as u32 {
        let (s, t, id) = (i0.src(m) as usize, i0.tgt(m) as usize, i0.is_identity(m));
        let (hm, km) = (h.h0m[m as usize], k.h0m[m as usize]);
        let (a1c, asrc, atgt) = (a1.clone(), a.s().clone(), a.t().clone());
        csp.var_dynamic(move |p| {
            if id {
                return vec![a1c.ident(p[s])];
            }
            a1c.hom(p[s], p[t])
                .iter()
                .copied()
                .filter(|&x| asrc.on_mor(x) == hm && atgt.on_mor(x) == km)
                .collect()
        });
    }
    for (f, g, hh) in i0.composable_pairs() {
        let (vf, vg, vh) = (n0 + f as usize, n0 + g as usize, n0 + hh as usize);
        let a1c = a1.clone();
        csp.constrain(vf.max(vg).max(vh), move |v| {
            a1c.compose(v[vf], v[vg]) == Some(v[vh])
        });
    }
    for x in 0..i1.n_objs() as u32 {
        let (s, t) = (i.s().on_obj(x) as usize, i.t().on_obj(x) as usize);
        let (hx, kx) = (h.h1o[x as usize], k.h1o[x as usize]);
        csp.constrain(s.max(t), move |v| {
            a.compose_obj(v[s], kx) == a.compose_obj(hx, v[t])
        });
    }
    for m in 0..i1.n_mors() as u32 {
        let (s, t) = (n0 + i.s().on_mor(m) as usize, n0 + i.t().on_mor(m) as usize);
        let (hm, km) = (h.h1m[m as usize], k.h1m[m as usize]);
        csp.constrain(s.max(t), move |v| {
            a.compose_mor(v[s], km) == a.compose_mor(hm, v[t])
        });
    }
    Ok(csp
        .with_limit(crate::cosmos::EXPONENTIAL_CAP)
        .solutions()?
        .into_iter()
        .map(|mut s| {
            let m = s.split_off(n0);
            (s, m)
        })
        .collect())
}

fn cells_label(x: &Obj, objs: &[u32], mors: &[u32]) -> String {
    let o: Vec<String> = objs.iter().map(|&c| x.obj_label(c).into_owned()).collect();
    if x.cosmos() == Cosmos::FinSet {
        return o.join(",");
    }
    let m: Vec<String> = mors.iter().map(|&c| x.mor_label(c).into_owned()).collect();
    format!("{};{}", o.join(","), m.join(","))
}

fn functor_label(a: &InternalCategory, h: &FunctorCells) -> String {
    format!(
        "<{}|{}>",
        cells_label(a.a0(), &h.h0o, &h.h0m),
        cells_label(a.a1(), &h.h1o, &h.h1m)
    )
}

/// Builds `⟦I, A⟧` by enumerating both equalizer subobjects.
pub fn internal_hom(i: &InternalCategory, a: &InternalCategory) -> Result<InternalHom> {
    if i.cosmos() != a.cosmos() {
        return Err(Error::Validation(
            "internal hom across different cosmoses".into(),
        ));
    }
    let cosmos = a.cosmos();
    let a1 = a.a1();
    let functors = internal_functors(i, a)?;
    let nf = functors.len();

    let mut functor_mors = Vec::new();
    let mut fm_index: HashMap<FunctorMor, u32> = HashMap::new();
    for (p, h) in functors.iter().enumerate() {
        for (q, k) in functors.iter().enumerate() {
            for (a0c, a1c) in functor_mors_between(i, a, h, k) {
                let fm = FunctorMor {
                    src: p as u32,
                    tgt: q as u32,
                    a0: a0c,
                    a1: a1c,
                };
                fm_index.insert(fm.clone(), functor_mors.len() as u32);
                functor_mors.push(fm);
            }
        }
    }
    let ident0: Vec<u32> = functors
        .iter()
        .enumerate()
        .map(|(p, h)| {
            let fm = FunctorMor {
                src: p as u32,
                tgt: p as u32,
                a0: h.h0o.iter().map(|&x| a.a0().ident(x)).collect(),
                a1: h.h1o.iter().map(|&x| a1.ident(x)).collect(),
            };
            fm_index[&fm]
        })
        .collect();
    let level0 = tabulate(
        cosmos,
        functors.iter().map(|h| functor_label(a, h)).collect(),
        functor_mors
            .iter()
            .map(|m| {
                let l: Vec<String> = m.a1.iter().map(|&x| a1.mor_label(x).into_owned()).collect();
                (
                    format!("{}=>{}:[{}]", m.src, m.tgt, l.join(",")),
                    m.src,
                    m.tgt,
                )
            })
            .collect(),
        ident0.clone(),
        |f, g| {
            let (x, y) = (&functor_mors[f as usize], &functor_mors[g as usize]);
            let fm = FunctorMor {
                src: x.src,
                tgt: y.tgt,
                a0: x
                    .a0
                    .iter()
                    .zip(&y.a0)
                    .map(|(&p, &q)| compose_in(a.a0(), p, q))
                    .collect(),
                a1: x
                    .a1
                    .iter()
                    .zip(&y.a1)
                    .map(|(&p, &q)| compose_in(a1, p, q))
                    .collect(),
            };
            fm_index[&fm]
        },
    );

    let mut trans = Vec::new();
    let mut tr_index: HashMap<TransformationCells, u32> = HashMap::new();
    for p in 0..nf {
        for q in 0..nf {
            for (obj, mor) in transformations(i, a, &functors[p], &functors[q])? {
                let t = TransformationCells {
                    source: p as u32,
                    target: q as u32,
                    obj,
                    mor,
                };
                tr_index.insert(t.clone(), trans.len() as u32);
                trans.push(t);
            }
        }
    }
    let mut trans_mors = Vec::new();
    let mut tm_index: HashMap<TransMor, u32> = HashMap::new();
    let mut fm_by_pair: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for (k, m) in functor_mors.iter().enumerate() {
        fm_by_pair.entry((m.src, m.tgt)).or_default().push(k as u32);
    }
    for (p, th) in trans.iter().enumerate() {
        for (q, th2) in trans.iter().enumerate() {
            let alphas = fm_by_pair
                .get(&(th.source, th2.source))
                .cloned()
                .unwrap_or_default();
            let betas = fm_by_pair
                .get(&(th.target, th2.target))
                .cloned()
                .unwrap_or_default();
            for &al in &alphas {
                for &be in &betas {
                    for comps in trans_mors_between(
                        i,
                        a,
                        th,
                        th2,
                        &functor_mors[al as usize],
                        &functor_mors[be as usize],
                    ) {
                        let tm = TransMor {
                            src: p as u32,
                            tgt: q as u32,
                            alpha: al,
                            beta: be,
                            comps,
                        };
                        tm_index.insert(tm.clone(), trans_mors.len() as u32);
                        trans_mors.push(tm);
                    }
                }
            }
        }
    }
    let ident1: Vec<u32> = trans
        .iter()
        .enumerate()
        .map(|(p, th)| {
            let tm = TransMor {
                src: p as u32,
                tgt: p as u32,
                alpha: ident0[th.source as usize],
                beta: ident0[th.target as usize],
                comps: th.obj.iter().map(|&x| a1.ident(x)).collect(),
            };
            tm_index[&tm]
        })
        .collect();
    let level0_c = level0.clone();
    let level1 = tabulate(
        cosmos,
        trans
            .iter()
            .map(|t| {
                format!(
                    "{}=>{}:[{}]",
                    t.source,
                    t.target,
                    cells_label(a1, &t.obj, &t.mor)
                )
            })
            .collect(),
        trans_mors
            .iter()
            .map(|m| {
                let l: Vec<String> = m
                    .comps
                    .iter()
                    .map(|&x| a1.mor_label(x).into_owned())
                    .collect();
                (
                    format!(
                        "{}=>{}:[{}]@{},{}",
                        m.src,
                        m.tgt,
                        l.join(","),
                        m.alpha,
                        m.beta
                    ),
                    m.src,
                    m.tgt,
                )
            })
            .collect(),
        ident1.clone(),
        |f, g| {
            let (x, y) = (&trans_mors[f as usize], &trans_mors[g as usize]);
            let tm = TransMor {
                src: x.src,
                tgt: y.tgt,
                alpha: level0_c.compose(x.alpha, y.alpha).expect("composable"),
                beta: level0_c.compose(x.beta, y.beta).expect("composable"),
                comps: x
                    .comps
                    .iter()
                    .zip(&y.comps)
                    .map(|(&p, &q)| compose_in(a1, p, q))
                    .collect(),
            };
            tm_index[&tm]
        },
    );

    let s = Map::from_fns(
        level1.clone(),
        level0.clone(),
        |o| trans[o as usize].source,
        |m| {
            if cosmos == Cosmos::FinSet {
                trans[m as usize].source
            } else {
                trans_mors[m as usize].alpha
            }
        },
    );
    let t = Map::from_fns(
        level1.clone(),
        level0.clone(),
        |o| trans[o as usize].target,
        |m| {
            if cosmos == Cosmos::FinSet {
                trans[m as usize].target
            } else {
                trans_mors[m as usize].beta
            }
        },
    );
    let id_trans = |p: u32| -> TransformationCells {
        let h = &functors[p as usize];
        TransformationCells {
            source: p,
            target: p,
            obj: h.h0o.iter().map(|&x| a.i().on_obj(x)).collect(),
            mor: h.h0m.iter().map(|&x| a.i().on_mor(x)).collect(),
        }
    };
    let iden = Map::from_fns(
        level0.clone(),
        level1.clone(),
        |p| tr_index[&id_trans(p)],
        |m| {
            if cosmos == Cosmos::FinSet {
                return tr_index[&id_trans(m)];
            }
            let fm = &functor_mors[m as usize];
            let tm = TransMor {
                src: tr_index[&id_trans(fm.src)],
                tgt: tr_index[&id_trans(fm.tgt)],
                alpha: m,
                beta: m,
                comps: fm.a0.iter().map(|&x| a.i().on_mor(x)).collect(),
            };
            tm_index[&tm]
        },
    );
    let cat = InternalCategory::from_cells(level0.clone(), level1.clone(), s, t, iden, |f, g| {
        let comp_trans = |x: &TransformationCells, y: &TransformationCells| TransformationCells {
            source: x.source,
            target: y.target,
            obj: x
                .obj
                .iter()
                .zip(&y.obj)
                .map(|(&p, &q)| a.compose_obj(p, q).expect("composable"))
                .collect(),
            mor: x
                .mor
                .iter()
                .zip(&y.mor)
                .map(|(&p, &q)| a.compose_mor(p, q).expect("composable"))
                .collect(),
        };
        if cosmos == Cosmos::FinSet {
            return tr_index[&comp_trans(&trans[f as usize], &trans[g as usize])];
        }
        let (x, y) = (&trans_mors[f as usize], &trans_mors[g as usize]);
        let src = tr_index[&comp_trans(&trans[x.src as usize], &trans[y.src as usize])];
        let tgt = tr_index[&comp_trans(&trans[x.tgt as usize], &trans[y.tgt as usize])];
        let tm = TransMor {
            src,
            tgt,
            alpha: x.alpha,
            beta: y.beta,
            comps: x
                .comps
                .iter()
                .zip(&y.comps)
                .map(|(&p, &q)| a.compose_mor(p, q).expect("composable"))
                .collect(),
        };
        tm_index[&tm]
    })?;
    Ok(InternalHom {
        source: i.clone(),
        target: a.clone(),
        cat,
        functors,
        functor_mors,
        transformations: trans,
        trans_mors,
    })
}

fn functor_mors_between(
    i: &InternalCategory,
    a: &InternalCategory,
    h: &FunctorCells,
    k: &FunctorCells,
) -> Vec<(Vec<u32>, Vec<u32>)> {
    functor_mors(i, a, h, k)
}

fn trans_mors_between(
    i: &InternalCategory,
    a: &InternalCategory,
    th: &TransformationCells,
    th2: &TransformationCells,
    alpha: &FunctorMor,
    beta: &FunctorMor,
) -> Vec<Vec<u32>> {
    let (i0, i1, a1) = (i.a0(), i.a1(), a.a1());
    let n0 = i0.n_objs();
    let mut csp = Csp::new();
    for y in 0..n0 {
        let (al, be) = (alpha.a0[y], beta.a0[y]);
        csp.var_list(
            a1.hom(th.obj[y], th2.obj[y])
                .iter()
                .copied()
                .filter(|&m| a.s().on_mor(m) == al && a.t().on_mor(m) == be)
                .collect(),
        );
    }
    for m in 0..i0.n_mors() as u32 {
        if i0.is_identity(m) {
            continue;
        }
        let (s, t) = (i0.src(m) as usize, i0.tgt(m) as usize);
        let (p, q) = (th.mor[m as usize], th2.mor[m as usize]);
        let a1 = a1.clone();
        csp.constrain(s.max(t), move |v| {
            a1.compose(p, v[t]) == a1.compose(v[s], q)
        });
    }
    for x in 0..i1.n_objs() as u32 {
        let (s, t) = (i.s().on_obj(x) as usize, i.t().on_obj(x) as usize);
        let (al, be) = (alpha.a1[x as usize], beta.a1[x as usize]);
        csp.constrain(s.max(t), move |v| {
            a.compose_mor(v[s], be) == a.compose_mor(al, v[t])
        });
    }
    csp.solutions().unwrap_or_default()
}

impl InternalHom {
    /// Number of internal functors `I → A`, the global elements of `⟦I, A⟧_0`.
    pub fn functor_count(&self) -> usize {
        self.functors.len()
    }

    /// Cell tables of the functor named by object `k` of level 0.
    pub fn functor_cells(&self, k: u32) -> &FunctorCells {
        &self.functors[k as usize]
    }

    /// The internal functor named by object `k` of level 0.
    pub fn functor(&self, k: u32) -> InternalFunctor {
        let h = &self.functors[k as usize];
        InternalFunctor {
            source: self.source.clone(),
            target: self.target.clone(),
            h0: Map::from_tables(
                self.source.a0().clone(),
                self.target.a0().clone(),
                h.h0o.clone(),
                h.h0m.clone(),
            ),
            h1: Map::from_tables(
                self.source.a1().clone(),
                self.target.a1().clone(),
                h.h1o.clone(),
                h.h1m.clone(),
            ),
        }
    }

    /// The object of level 0 naming an internal functor, if it is one.
    pub fn name(&self, h: &InternalFunctor) -> Option<u32> {
        let cells = FunctorCells {
            h0o: h.h0.obj_table().to_vec(),
            h0m: h.h0.mor_table().to_vec(),
            h1o: h.h1.obj_table().to_vec(),
            h1m: h.h1.mor_table().to_vec(),
        };
        self.functors
            .iter()
            .position(|f| *f == cells)
            .map(|p| p as u32)
    }

    /// Cells of the transformation named by object `k` of level 1.
    pub fn transformation(&self, k: u32) -> &TransformationCells {
        &self.transformations[k as usize]
    }

    /// Canonical comparison with the closed form `⟦cst X, A⟧ = ([X, A0], [X, A1])`:
    /// a functor goes to its object component, a transformation to `θ`.
    pub fn compare_with_hom_cst(&self, closed: &HomCst) -> Result<InternalFunctor> {
        let cosmos = self.cat.cosmos();
        let (l0, l1) = (self.cat.a0(), self.cat.a1());
        let e0 = &closed.objects;
        let e1 = &closed.morphisms;
        let fam0 = |k: u32| {
            let h = &self.functors[k as usize];
            e0.name(&Map::from_tables(
                e0.base.clone(),
                e0.target.clone(),
                h.h0o.clone(),
                h.h0m.clone(),
            ))
        };
        let mut o0 = Vec::new();
        for k in 0..l0.n_objs() as u32 {
            o0.push(
                fam0(k)
                    .ok_or_else(|| Error::Validation("functor component is not a map".into()))?,
            );
        }
        let m0: Vec<u32> = match cosmos {
            Cosmos::FinSet => o0.clone(),
            Cosmos::FinCat => self
                .functor_mors
                .iter()
                .map(|m| e0.name_nat(o0[m.src as usize], o0[m.tgt as usize], &m.a0))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Validation("component is not natural".into()))?,
        };
        let mut o1 = Vec::new();
        for t in &self.transformations {
            let th = Map::from_tables(
                e1.base.clone(),
                e1.target.clone(),
                t.obj.clone(),
                t.mor.clone(),
            );
            o1.push(
                e1.name(&th)
                    .ok_or_else(|| Error::Validation("θ is not a map".into()))?,
            );
        }
        let m1: Vec<u32> = match cosmos {
            Cosmos::FinSet => o1.clone(),
            Cosmos::FinCat => self
                .trans_mors
                .iter()
                .map(|m| e1.name_nat(o1[m.src as usize], o1[m.tgt as usize], &m.comps))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Validation("component is not natural".into()))?,
        };
        InternalFunctor::new(
            self.cat.clone(),
            closed.cat.clone(),
            Map::new(l0.clone(), e0.obj.clone(), o0, m0)?,
            Map::new(l1.clone(), e1.obj.clone(), o1, m1)?,
        )
    }

    /// Canonical comparison with the closed form of the arrow object, for
    /// `I = Int 𝟚`: a functor goes to the image of the arrow, a transformation
    /// to its naturality square.
    pub fn compare_with_arrows(
        &self,
        two: &Internalization,
        arr: &ArrowObject,
    ) -> Result<InternalFunctor> {
        let cosmos = self.cat.cosmos();
        let (l0, l1) = (self.cat.a0(), self.cat.a1());
        let u = two.homs.inject_obj(two.hom_index(0, 1), 0) as usize;
        let (c0, c1) = (two.object_cell(0) as usize, two.object_cell(1) as usize);
        let a2 = self.target.composable();
        let q = &arr.squares;
        let o0: Vec<u32> = self.functors.iter().map(|h| h.h1o[u]).collect();
        let m0: Vec<u32> = match cosmos {
            Cosmos::FinSet => o0.clone(),
            Cosmos::FinCat => self.functor_mors.iter().map(|m| m.a1[u]).collect(),
        };
        let square_obj = |t: &TransformationCells| -> Option<u32> {
            let (h, k) = (
                &self.functors[t.source as usize],
                &self.functors[t.target as usize],
            );
            let top_right = a2.pair_obj(t.obj[c0], k.h1o[u])?;
            let left_bottom = a2.pair_obj(h.h1o[u], t.obj[c1])?;
            q.pair_obj(top_right, left_bottom)
        };
        let o1: Vec<u32> = self
            .transformations
            .iter()
            .map(square_obj)
            .collect::<Option<_>>()
            .ok_or_else(|| {
                Error::Validation("transformation is not a commutative square".into())
            })?;
        let m1: Vec<u32> = match cosmos {
            Cosmos::FinSet => o1.clone(),
            Cosmos::FinCat => self
                .trans_mors
                .iter()
                .map(|m| {
                    let (al, be) = (
                        &self.functor_mors[m.alpha as usize],
                        &self.functor_mors[m.beta as usize],
                    );
                    let top_right = a2.pair_mor(m.comps[c0], be.a1[u])?;
                    let left_bottom = a2.pair_mor(al.a1[u], m.comps[c1])?;
                    q.pair_mor(top_right, left_bottom)
                })
                .collect::<Option<_>>()
                .ok_or_else(|| {
                    Error::Validation("transformation is not a commutative square".into())
                })?,
        };
        InternalFunctor::new(
            self.cat.clone(),
            arr.cat.clone(),
            Map::new(l0.clone(), arr.cat.a0().clone(), o0, m0)?,
            Map::new(l1.clone(), arr.cat.a1().clone(), o1, m1)?,
        )
    }
}

/// Post-composition `[X, Y] → [X, Z]` with `g : Y → Z`.
pub fn post_compose(ey: &Exponential, ez: &Exponential, g: &Map) -> Result<Map> {
    ez.curry_with(
        &ey.obj,
        |x, k| g.on_obj(ey.apply_obj(x, k)),
        |m, n| g.on_mor(ey.apply_mor(m, n)),
    )
}

/// The closed form `⟦cst X, A⟧ = ([X, A0], [X, A1])` with pointwise structure.
#[derive(Clone, Debug)]
pub struct HomCst {
    /// The exponent `X`.
    pub exponent: Obj,
    /// The internal category.
    pub cat: InternalCategory,
    /// `[X, A0]`.
    pub objects: Exponential,
    /// `[X, A1]`.
    pub morphisms: Exponential,
}

/// Builds `⟦cst X, A⟧` in closed form.
pub fn hom_cst(x: &Obj, a: &InternalCategory) -> Result<HomCst> {
    let e0 = exponential(x, a.a0())?;
    let e1 = exponential(x, a.a1())?;
    let s = post_compose(&e1, &e0, a.s())?;
    let t = post_compose(&e1, &e0, a.t())?;
    let i = post_compose(&e0, &e1, a.i())?;
    let comp = pullback(&t, &s)?;
    let c = e1.curry_with(
        comp.obj(),
        |xo, p| {
            let (f, g) = (comp.p0.on_obj(p), comp.p1.on_obj(p));
            a.compose_obj(e1.apply_obj(xo, f), e1.apply_obj(xo, g))
                .expect("pointwise composable")
        },
        |m, n| {
            let (f, g) = (comp.p0.on_mor(n), comp.p1.on_mor(n));
            a.compose_mor(e1.apply_mor(m, f), e1.apply_mor(m, g))
                .expect("pointwise composable")
        },
    )?;
    let cat = InternalCategory::new(e0.obj.clone(), e1.obj.clone(), s, t, i, c)?;
    Ok(HomCst {
        exponent: x.clone(),
        cat,
        objects: e0,
        morphisms: e1,
    })
}

/// The closed form of the arrow object: level 0 is `A1`, level 1 the
/// commutative squares, with the domain and codomain projections to `A`.
#[derive(Clone, Debug)]
pub struct ArrowObject {
    /// The internal category of arrows.
    pub cat: InternalCategory,
    /// Squares `((top, right), (left, bottom))` with equal composites.
    pub squares: Pullback,
    /// Projection to sources (`top` on squares).
    pub dom: InternalFunctor,
    /// Projection to targets (`bottom` on squares).
    pub cod: InternalFunctor,
}

/// Builds the arrow object of `A` in closed form.
pub fn arrow_object(a: &InternalCategory) -> Result<ArrowObject> {
    let a2 = a.composable().clone();
    let q = pullback(a.c(), a.c())?;
    let first = a2.p0.clone();
    let second = a2.p1.clone();
    let left = q.p1.then(&first)?;
    let right = q.p0.then(&second)?;
    let top = q.p0.then(&first)?;
    let bottom = q.p1.then(&second)?;
    let id1 = Map::identity(a.a1());
    let upper = a2.induce(&a.s().then(a.i())?, &id1)?;
    let lower = a2.induce(&id1, &a.t().then(a.i())?)?;
    let i = q.induce(&upper, &lower)?;
    let qq = q.clone();
    let cat =
        InternalCategory::from_cells(a.a1().clone(), q.obj().clone(), left, right, i, |f, g| {
            let (tr1, lb1) = (qq.p0.on_mor(f), qq.p1.on_mor(f));
            let (tr2, lb2) = (qq.p0.on_mor(g), qq.p1.on_mor(g));
            let (h1, k1, f1) = (a2.p0.on_mor(tr1), a2.p1.on_mor(lb1), a2.p0.on_mor(lb1));
            let (h2, g2, k2) = (a2.p0.on_mor(tr2), a2.p1.on_mor(tr2), a2.p1.on_mor(lb2));
            let h = a.compose_mor(h1, h2).expect("tops compose");
            let k = a.compose_mor(k1, k2).expect("bottoms compose");
            let tr = a2.pair_mor(h, g2).expect("composable");
            let lb = a2.pair_mor(f1, k).expect("composable");
            qq.pair_mor(tr, lb).expect("pasted square commutes")
        })?;
    let dom = InternalFunctor::new(cat.clone(), a.clone(), a.s().clone(), top)?;
    let cod = InternalFunctor::new(cat.clone(), a.clone(), a.t().clone(), bottom)?;
    Ok(ArrowObject {
        cat,
        squares: q,
        dom,
        cod,
    })
}

/// `⟦𝟚, A⟧` by the generic construction, with `𝟚` internalized.
pub fn arrow_hom(a: &InternalCategory) -> Result<(Internalization, InternalHom)> {
    let two = super::intc::internalize(&crate::enriched::VCategory::arrow(a.cosmos()))?;
    let hom = internal_hom(&two.cat, a)?;
    Ok((two, hom))
}

impl InternalHom {
    /// The diagonal `Δ : A → ⟦I, A⟧` sending an object to the constant functor.
    pub fn diagonal(&self) -> Result<InternalFunctor> {
        let (i, a) = (&self.source, &self.target);
        let (n0o, n0m, n1o, n1m) = (
            i.a0().n_objs(),
            i.a0().n_mors(),
            i.a1().n_objs(),
            i.a1().n_mors(),
        );
        let cosmos = a.cosmos();
        let missing = || Error::Validation("constant functor missing from the internal hom".into());
        let delta0 = |x: u32| -> Result<u32> {
            let one = a.a0().ident(x);
            let cells = FunctorCells {
                h0o: vec![x; n0o],
                h0m: vec![one; n0m],
                h1o: vec![a.i().on_obj(x); n1o],
                h1m: vec![a.i().on_mor(one); n1m],
            };
            self.functors
                .iter()
                .position(|f| *f == cells)
                .map(|p| p as u32)
                .ok_or_else(missing)
        };
        let o0: Vec<u32> = (0..a.a0().n_objs() as u32)
            .map(delta0)
            .collect::<Result<_>>()?;
        let m0: Vec<u32> = match cosmos {
            Cosmos::FinSet => o0.clone(),
            Cosmos::FinCat => (0..a.a0().n_mors() as u32)
                .map(|al| {
                    let fm = FunctorMor {
                        src: o0[a.a0().src(al) as usize],
                        tgt: o0[a.a0().tgt(al) as usize],
                        a0: vec![al; n0o],
                        a1: vec![a.i().on_mor(al); n1o],
                    };
                    self.functor_mors
                        .iter()
                        .position(|m| *m == fm)
                        .map(|p| p as u32)
                        .ok_or_else(missing)
                })
                .collect::<Result<_>>()?,
        };
        let delta1 = |u: u32| -> Result<u32> {
            let t = TransformationCells {
                source: o0[a.s().on_obj(u) as usize],
                target: o0[a.t().on_obj(u) as usize],
                obj: vec![u; n0o],
                mor: vec![a.a1().ident(u); n0m],
            };
            self.transformations
                .iter()
                .position(|x| *x == t)
                .map(|p| p as u32)
                .ok_or_else(missing)
        };
        let o1: Vec<u32> = (0..a.a1().n_objs() as u32)
            .map(delta1)
            .collect::<Result<_>>()?;
        let m1: Vec<u32> = match cosmos {
            Cosmos::FinSet => o1.clone(),
            Cosmos::FinCat => (0..a.a1().n_mors() as u32)
                .map(|um| {
                    let tm = TransMor {
                        src: o1[a.a1().src(um) as usize],
                        tgt: o1[a.a1().tgt(um) as usize],
                        alpha: m0[a.s().on_mor(um) as usize],
                        beta: m0[a.t().on_mor(um) as usize],
                        comps: vec![um; n0o],
                    };
                    self.trans_mors
                        .iter()
                        .position(|m| *m == tm)
                        .map(|p| p as u32)
                        .ok_or_else(missing)
                })
                .collect::<Result<_>>()?,
        };
        InternalFunctor::new(
            a.clone(),
            self.cat.clone(),
            Map::new(a.a0().clone(), self.cat.a0().clone(), o0, m0)?,
            Map::new(a.a1().clone(), self.cat.a1().clone(), o1, m1)?,
        )
    }
}
