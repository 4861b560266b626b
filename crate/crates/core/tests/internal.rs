use std::collections::HashMap;

use intcat_core::cosmos::*;
use intcat_core::enriched::*;
use intcat_core::internal::*;
use itertools::Itertools;
use proptest::prelude::*;

fn set(labels: &[&str]) -> Obj {
    Obj::set(labels.iter().map(|&l| Label::from(l)).collect()).unwrap()
}

/// The poset category on `0..n` where `i ≤ j` iff `le(i, j)`, assumed reflexive and transitive.
fn poset(n: usize, le: impl Fn(usize, usize) -> bool) -> Obj {
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
    .unwrap()
}

fn idempotent_monoid() -> Obj {
    let comp = HashMap::from([((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
    Obj::category(
        vec!["o".into()],
        vec![("1".into(), 0, 0), ("v".into(), 0, 0)],
        vec![0],
        comp,
    )
    .unwrap()
}

fn two(cosmos: Cosmos) -> Internalization {
    internalize(&VCategory::arrow(cosmos)).unwrap()
}

fn int_of(cat: &Obj) -> Internalization {
    internalize(&VCategory::from_category(Cosmos::FinSet, cat).unwrap()).unwrap()
}

/// Counts ordinary functors between two finite categories by brute force.
fn count_functors(c: &Obj, d: &Obj) -> usize {
    let (no, nm) = (c.n_objs(), c.n_mors());
    let mut count = 0;
    for on_obj in (0..no)
        .map(|_| 0..d.n_objs() as u32)
        .multi_cartesian_product()
    {
        let choices: Vec<Vec<u32>> = (0..nm as u32)
            .map(|f| {
                let (a, b) = (on_obj[c.src(f) as usize], on_obj[c.tgt(f) as usize]);
                (0..d.n_mors() as u32)
                    .filter(|&g| d.src(g) == a && d.tgt(g) == b)
                    .collect()
            })
            .collect();
        for on_mor in choices
            .iter()
            .map(|v| v.iter().copied())
            .multi_cartesian_product()
        {
            let ids =
                (0..no as u32).all(|x| on_mor[c.ident(x) as usize] == d.ident(on_obj[x as usize]));
            let comps = c.composable_pairs().into_iter().all(|(f, g, h)| {
                d.compose(on_mor[f as usize], on_mor[g as usize]) == Some(on_mor[h as usize])
            });
            if ids && comps {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn internalizations_are_valid() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let t = two(cosmos);
        assert!(t.cat.validate().is_valid());
        assert_eq!(t.cat.a0().n_objs(), 2);
        assert_eq!(t.cat.a1().n_objs(), 3);
    }
    let chain = int_of(&poset(3, |i, j| i <= j));
    assert!(chain.cat.validate().is_valid());
    assert_eq!(chain.cat.a1().n_objs(), 6);
    let p2 = InternalCategory::cst(&idempotent_monoid());
    assert!(p2.validate().is_valid());
    assert!(InternalCategory::terminal(Cosmos::FinCat)
        .validate()
        .is_valid());
}

#[test]
fn underlying_of_a_constant_is_discrete() {
    let x = set(&["p", "q", "r"]);
    let und = underlying(&InternalCategory::cst(&x)).unwrap();
    assert_eq!(und.vcat.len(), 3);
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(und.vcat.hom(a, b).n_objs(), usize::from(a == b));
        }
    }
    assert!(und.vcat.validate().is_valid());
}

#[test]
fn underlying_recovers_the_homs() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let t = two(cosmos);
        let und = underlying(&t.cat).unwrap();
        assert!(und.vcat.validate().is_valid());
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(und.vcat.hom(a, b).n_objs(), t.vcat.hom(a, b).n_objs());
                assert_eq!(und.vcat.hom(a, b).n_mors(), t.vcat.hom(a, b).n_mors());
            }
        }
    }
}

#[test]
fn transpose_round_trips() {
    let t = two(Cosmos::FinSet);
    let chain = int_of(&poset(3, |i, j| i <= j));
    let und = underlying(&chain.cat).unwrap();
    let functors = internal_functors(&t.cat, &chain.cat).unwrap();
    assert_eq!(functors.len(), 6);
    let hom = internal_hom(&t.cat, &chain.cat).unwrap();
    for k in 0..hom.functor_count() as u32 {
        let h = hom.functor(k);
        assert!(h.validate().is_valid());
        let f = transpose_to_vfunctor(&t, &h, &und).unwrap();
        assert!(f.validate().is_valid());
        let back = transpose_to_internal(&t, &f, &und).unwrap();
        assert_eq!(back.h0, h.h0);
        assert_eq!(back.h1, h.h1);
    }
}

#[test]
fn functor_counts_match_brute_force() {
    let cats = [
        poset(1, |_, _| true),
        poset(2, |i, j| i <= j),
        poset(2, |i, j| i == j),
        poset(3, |i, j| i <= j),
        poset(3, |i, j| i == j || i == 0),
    ];
    for c in &cats {
        for d in &cats {
            let got = internal_functors(&int_of(c).cat, &int_of(d).cat)
                .unwrap()
                .len();
            assert_eq!(got, count_functors(c, d));
        }
    }
}

#[test]
fn functors_out_of_a_constant_are_functions() {
    let x = set(&["p", "q"]);
    let a = two(Cosmos::FinSet);
    let n = internal_functors(&InternalCategory::cst(&x), &a.cat)
        .unwrap()
        .len();
    assert_eq!(n, 4);
}

#[test]
fn closed_form_homs_agree_with_the_generic_hom() {
    let x = set(&["p", "q"]);
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let a = two(cosmos);
        let xx = if cosmos == Cosmos::FinSet {
            x.clone()
        } else {
            Cosmos::FinCat.discrete(vec!["p".into(), "q".into()])
        };
        let i = InternalCategory::cst(&xx);
        let generic = internal_hom(&i, &a.cat).unwrap();
        assert!(generic.cat.validate().is_valid());
        let closed = hom_cst(&xx, &a.cat).unwrap();
        assert!(closed.cat.validate().is_valid());
        let cmp = generic.compare_with_hom_cst(&closed).unwrap();
        assert!(cmp.validate().is_valid());
        assert!(cmp.is_iso());
    }
}

#[test]
fn arrow_object_agrees_with_the_generic_hom() {
    for a in [
        two(Cosmos::FinSet).cat,
        InternalCategory::cst(&idempotent_monoid()),
        two(Cosmos::FinCat).cat,
    ] {
        let arr = arrow_object(&a).unwrap();
        assert!(arr.cat.validate().is_valid());
        assert!(arr.dom.validate().is_valid());
        assert!(arr.cod.validate().is_valid());
        let (t, generic) = arrow_hom(&a).unwrap();
        let cmp = generic.compare_with_arrows(&t, &arr).unwrap();
        assert!(cmp.validate().is_valid());
        assert!(cmp.is_iso());
    }
}

#[test]
fn slices_of_the_arrow() {
    let t = two(Cosmos::FinSet);
    let top = t.object_cell(1);
    let sl = slice(&t.cat, top).unwrap();
    assert!(sl.cat.validate().is_valid());
    assert!(sl.projection.validate().is_valid());
    assert_eq!(sl.cat.a0().n_objs(), 2);
    assert_eq!(sl.cat.a1().n_objs(), 3);
    assert!(is_internal_terminal(&t.cat, top).unwrap());
    assert!(!is_internal_terminal(&t.cat, t.object_cell(0)).unwrap());
    assert!(is_internal_initial(&t.cat, t.object_cell(0)).unwrap());
    assert!(!is_internal_initial(&t.cat, top).unwrap());
    assert!(is_v_terminal(&t.vcat, 1));
    assert!(!is_v_terminal(&t.vcat, 0));
}

#[test]
fn idempotent_monoid_is_v_terminal_but_not_internal_terminal() {
    let a = InternalCategory::cst(&idempotent_monoid());
    let und = underlying(&a).unwrap();
    assert_eq!(und.vcat.len(), 1);
    assert!(is_v_terminal(&und.vcat, 0));
    assert!(!is_internal_terminal(&a, 0).unwrap());
}

#[test]
fn terminal_category_has_a_terminal_object() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let t = InternalCategory::terminal(cosmos);
        assert!(is_internal_terminal(&t, 0).unwrap());
        assert!(is_internal_initial(&t, 0).unwrap());
    }
}

#[test]
fn fibration_certificates() {
    let t = two(Cosmos::FinSet);
    let id = InternalFunctor::identity(&t.cat);
    assert!(is_discrete_fibration(&id, Some(&t)).unwrap().certificate);
    assert!(is_discrete_opfibration(&id, Some(&t)).unwrap().certificate);
    let sl = slice(&t.cat, t.object_cell(1)).unwrap();
    let packet = is_discrete_fibration(&sl.projection, Some(&t)).unwrap();
    assert!(packet.certificate);
    assert!(composable_square_is_pullback(&sl.projection).unwrap());
    let fibers = packet.require_fibers().unwrap();
    assert_eq!(fibers.fiber(0).n_objs(), 1);
    assert_eq!(fibers.fiber(1).n_objs(), 1);
    assert_eq!(fibers.actions[t.hom_index(0, 1)].dom().n_objs(), 1);
    let bottom = slice(&t.cat, t.object_cell(0)).unwrap();
    assert!(
        is_discrete_fibration(&bottom.projection, Some(&t))
            .unwrap()
            .certificate
    );
    assert!(
        !is_discrete_opfibration(&bottom.projection, Some(&t))
            .unwrap()
            .certificate
    );
    let co = coslice(&t.cat, t.object_cell(0)).unwrap();
    assert!(
        is_discrete_opfibration(&co.projection, Some(&t))
            .unwrap()
            .certificate
    );
    let bang = InternalFunctor::to_terminal(&t.cat);
    let p = is_discrete_fibration(&bang, None).unwrap();
    assert!(!p.certificate);
    assert!(p.require_fibers().is_err());
}

#[test]
fn explicit_fibers_must_cover() {
    let t = two(Cosmos::FinSet);
    let id = InternalFunctor::identity(&t.cat);
    let pts: Vec<Obj> = (0..2).map(|_| Cosmos::FinSet.terminal()).collect();
    let incl: Vec<Map> = (0..2)
        .map(|k| Map::point(t.cat.a0(), t.object_cell(k)))
        .collect();
    let ok =
        fibration_with_fibers(&id, &t, Variance::Fibration, pts.clone(), incl.clone()).unwrap();
    assert!(ok.require_fibers().is_ok());
    let swapped = vec![incl[1].clone(), incl[0].clone()];
    assert!(fibration_with_fibers(&id, &t, Variance::Fibration, pts, swapped).is_err());
}

#[test]
fn cones_over_a_point_are_the_slice() {
    let t = two(Cosmos::FinSet);
    let one = InternalCategory::terminal(Cosmos::FinSet);
    for x in 0..2 {
        let g = InternalFunctor::new(
            one.clone(),
            t.cat.clone(),
            Map::point(t.cat.a0(), x),
            Map::point(t.cat.a1(), t.cat.i().on_obj(x)),
        )
        .unwrap();
        let cones = cone_category(&g).unwrap();
        assert!(cones.cat.validate().is_valid());
        let sl = slice(&t.cat, x).unwrap();
        assert_eq!(cones.cat.a0().n_objs(), sl.cat.a0().n_objs());
        assert_eq!(cones.cat.a1().n_objs(), sl.cat.a1().n_objs());
        let cocones = cocone_category(&g).unwrap();
        let co = coslice(&t.cat, x).unwrap();
        assert_eq!(cocones.cat.a0().n_objs(), co.cat.a0().n_objs());
        assert_eq!(cocones.cat.a1().n_objs(), co.cat.a1().n_objs());
    }
}

#[test]
fn fused_cones_agree_with_the_comma() {
    let t = two(Cosmos::FinSet);
    let chain = int_of(&poset(3, |i, j| i <= j));
    let hom = internal_hom(&t.cat, &chain.cat).unwrap();
    let delta = hom.diagonal().unwrap();
    assert!(delta.validate().is_valid());
    for k in 0..hom.functor_count() as u32 {
        let g = hom.functor(k);
        let fused = cone_category(&g).unwrap();
        let generic = comma(&delta, k).unwrap();
        assert_eq!(fused.cat.a0().n_objs(), generic.cat.a0().n_objs());
        assert_eq!(fused.cat.a1().n_objs(), generic.cat.a1().n_objs());
        let fused = cocone_category(&g).unwrap();
        let generic = cocomma(&delta, k).unwrap();
        assert_eq!(fused.cat.a0().n_objs(), generic.cat.a0().n_objs());
        assert_eq!(fused.cat.a1().n_objs(), generic.cat.a1().n_objs());
    }
}

#[test]
fn colimits_of_constant_shapes() {
    let x = set(&["p", "q"]);
    let shape = InternalCategory::cst(&x);
    let discrete = int_of(&poset(2, |i, j| i == j));
    let g = InternalFunctor::new(
        shape.clone(),
        discrete.cat.clone(),
        Map::function(x.clone(), discrete.cat.a0().clone(), vec![0, 1]).unwrap(),
        Map::function(
            x.clone(),
            discrete.cat.a1().clone(),
            vec![discrete.cat.i().on_obj(0), discrete.cat.i().on_obj(1)],
        )
        .unwrap(),
    )
    .unwrap();
    assert!(cocone_category(&g).unwrap().cones().is_empty());
    assert_eq!(compute_internal_colimit(&g).unwrap(), None);

    let t = two(Cosmos::FinSet);
    let g = InternalFunctor::new(
        shape,
        t.cat.clone(),
        Map::function(x.clone(), t.cat.a0().clone(), vec![0, 1]).unwrap(),
        Map::function(
            x,
            t.cat.a1().clone(),
            vec![t.cat.i().on_obj(0), t.cat.i().on_obj(1)],
        )
        .unwrap(),
    )
    .unwrap();
    let colim = compute_internal_colimit(&g).unwrap().unwrap();
    assert_eq!(colim.apex, t.object_cell(1));
    assert!(is_internal_colimit(&g, &colim).unwrap());
}

#[test]
fn internal_pullbacks_are_valid() {
    let t = two(Cosmos::FinSet);
    let sl = slice(&t.cat, t.object_cell(1)).unwrap();
    let co = coslice(&t.cat, t.object_cell(0)).unwrap();
    let pb = pullback_internal(&sl.projection, &co.projection).unwrap();
    assert!(pb.cat.validate().is_valid());
    assert!(pb.leg0.validate().is_valid());
    assert_eq!(pb.cat.a0().n_objs(), 2);
}

fn small_poset() -> impl Strategy<Value = Obj> {
    (1usize..=3, prop::collection::vec(any::<bool>(), 3)).prop_map(|(n, bits)| {
        let mut le = vec![vec![false; n]; n];
        let mut k = 0;
        for i in 0..n {
            le[i][i] = true;
            for j in i + 1..n {
                le[i][j] = bits[k % bits.len()];
                k += 1;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][m] && le[m][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        poset(n, |i, j| le[i][j])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn internalization_round_trips_through_underlying(c in small_poset()) {
        let int = int_of(&c);
        prop_assert!(int.cat.validate().is_valid());
        let und = underlying(&int.cat).unwrap();
        prop_assert!(und.vcat.validate().is_valid());
        let id = InternalFunctor::identity(&int.cat);
        let f = transpose_to_vfunctor(&int, &id, &und).unwrap();
        prop_assert!(f.validate().is_valid());
        let back = transpose_to_internal(&int, &f, &und).unwrap();
        prop_assert_eq!(back.h0, id.h0);
        prop_assert_eq!(back.h1, id.h1);
    }

    #[test]
    fn slices_are_discrete_fibrations(c in small_poset()) {
        let int = int_of(&c);
        for x in 0..c.n_objs() {
            let sl = slice(&int.cat, int.object_cell(x)).unwrap();
            prop_assert!(sl.cat.validate().is_valid());
            prop_assert!(is_discrete_fibration(&sl.projection, Some(&int)).unwrap().certificate);
            let terminal = (0..c.n_objs() as u32).all(|y| c.hom(y, x as u32).len() == 1);
            prop_assert_eq!(is_internal_terminal(&int.cat, int.object_cell(x)).unwrap(), terminal);
        }
    }
}
