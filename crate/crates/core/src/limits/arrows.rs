//! `Ar_X C`: the `V`-category with the objects of `C` and hom-objects
//! `[X, C(A, B)]`, composed pointwise, and its comparison with
//! `Und ⟦cst X, Int C⟧`.

use crate::cosmos::{exponential, product, Cosmos, Exponential, Map, Obj};
use crate::enriched::{VCategory, VFunctor};
use crate::error::{Error, Result};
use crate::internal::{hom_cst, internalize, post_compose, underlying, Underlying};

fn build(c: &VCategory, x: &Obj) -> Result<(VCategory, Vec<Exponential>)> {
    let n = c.len();
    let exps = (0..n * n)
        .map(|k| exponential(x, c.hom(k / n, k % n)))
        .collect::<Result<Vec<_>>>()?;
    let mut comp = Vec::with_capacity(n * n * n);
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let (e1, e2, e3) = (&exps[p * n + q], &exps[q * n + r], &exps[p * n + r]);
                let z = product(&e1.obj, &e2.obj).obj;
                let m = e3.curry_with(
                    &z,
                    |xo, zo| {
                        let s = z.split_obj(zo);
                        c.comp_obj(p, q, r, e1.apply_obj(xo, s[0]), e2.apply_obj(xo, s[1]))
                    },
                    |xm, zm| {
                        let s = z.split_mor(zm);
                        c.comp_mor(p, q, r, e1.apply_mor(xm, s[0]), e2.apply_mor(xm, s[1]))
                    },
                )?;
                comp.push(m);
            }
        }
    }
    let pt = c.cosmos().terminal();
    let ident = (0..n)
        .map(|p| exps[p * n + p].curry_with(&pt, |_, _| c.ident_obj(p), |_, _| c.ident_mor(p)))
        .collect::<Result<Vec<_>>>()?;
    let homs = exps.iter().map(|e| e.obj.clone()).collect();
    let ar = VCategory::new(c.cosmos(), c.objects().to_vec(), homs, comp, ident)?;
    Ok((ar, exps))
}

/// Builds `Ar_X C`.
pub fn ar_x(c: &VCategory, x: &Obj) -> Result<VCategory> {
    Ok(build(c, x)?.0)
}

fn is_connected(x: &Obj) -> bool {
    let n = x.n_objs();
    if n == 0 {
        return false;
    }
    if x.cosmos() == Cosmos::FinSet {
        return n == 1;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for m in 0..x.n_mors() as u32 {
        let (a, b) = (
            root(&mut parent, x.src(m) as usize),
            root(&mut parent, x.tgt(m) as usize),
        );
        parent[a] = b;
    }
    let r = root(&mut parent, 0);
    (0..n).all(|i| root(&mut parent, i) == r)
}

/// `Ar_X C`, `Und ⟦cst X, Int C⟧` and the comparison functor between them.
#[derive(Clone, Debug)]
pub struct ArComparison {
    /// `Ar_X C`.
    pub ar: VCategory,
    /// `Und ⟦cst X, Int C⟧`.
    pub und: Underlying,
    /// Sends `A` to the constant functor at `A` and `u : X → C(A, B)` to `u`
    /// followed by the summand inclusion.
    pub functor: VFunctor,
    /// Whether the comparison is bijective on objects and invertible on homs.
    pub iso: bool,
}

/// Compares `Ar_X C` with `Und ⟦cst X, Int C⟧`. The two agree only when
/// `[X, −]` preserves coproducts, so `X` must be connected.
pub fn compare_ar_x(c: &VCategory, x: &Obj) -> Result<ArComparison> {
    if !is_connected(x) {
        return Err(Error::HypothesisNotMet(
            "the exponent must be connected".into(),
        ));
    }
    let (ar, exps) = build(c, x)?;
    let int = internalize(c)?;
    let hc = hom_cst(x, &int.cat)?;
    let und = underlying(&hc.cat)?;
    let n = c.len();
    let obj = (0..n)
        .map(|a| {
            hc.objects
                .name(&Map::constant(x, int.cat.a0(), int.object_cell(a)))
                .map(|k| k as usize)
                .ok_or_else(|| Error::Structure("constant functor missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut homs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let incl = post_compose(
                &exps[a * n + b],
                &hc.morphisms,
                &int.homs.injection(int.hom_index(a, b)),
            )?;
            homs.push(und.hom_sub(obj[a], obj[b]).restrict(&incl)?);
        }
    }
    let functor = VFunctor::new(ar.clone(), und.vcat.clone(), obj, homs)?;
    let mut hit = vec![false; und.vcat.len()];
    let bijective = und.vcat.len() == n
        && functor
            .obj
            .iter()
            .all(|&o| !std::mem::replace(&mut hit[o], true));
    let iso = bijective && functor.validate().is_valid() && functor.hom.iter().all(Map::is_iso);
    Ok(ArComparison {
        ar,
        und,
        functor,
        iso,
    })
}
