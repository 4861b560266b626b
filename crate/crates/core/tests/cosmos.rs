use std::collections::HashMap;

use intcat_core::cosmos::*;
use intcat_core::Error;
use proptest::prelude::*;

fn set(labels: &[&str]) -> Obj {
    Obj::set(labels.iter().map(|&l| Label::from(l)).collect()).unwrap()
}

/// The poset category on `0..n` where `i ≤ j` iff `le[i][j]`, assumed reflexive and transitive.
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
        vec![("1".into(), 0, 0), ("e".into(), 0, 0)],
        vec![0],
        comp,
    )
    .unwrap()
}

#[test]
fn identity_is_iso_and_constants_are_not() {
    let x = set(&["a", "b"]);
    assert!(Map::identity(&x).is_iso());
    let c = Map::function(x.clone(), set(&["x"]), vec![0, 0]).unwrap();
    assert!(!c.is_iso());
    let arrow = Obj::walking_arrow();
    let collapse = Map::to_terminal(&arrow);
    assert!(!collapse.is_iso());
    assert_eq!(arrow.n_objs(), 2);
    assert_eq!(collapse.cod().n_objs(), 1);
}

#[test]
fn composition_checks_types() {
    let x = set(&["a"]);
    let y = set(&["b", "c"]);
    let f = Map::identity(&x);
    let g = Map::identity(&y);
    assert!(matches!(f.then(&g), Err(Error::Composition(_))));
}

#[test]
fn global_elements_count_points() {
    assert_eq!(global_elements(&set(&["a", "b", "c"])).len(), 3);
    let pts = global_elements(&Obj::walking_arrow());
    assert_eq!(pts.len(), 2);
    let t = Cosmos::FinCat.terminal();
    assert_eq!(maps_between(&t, &Obj::walking_arrow()).unwrap().len(), 2);
    assert!(global_elements(&Cosmos::FinSet.initial()).is_empty());
    assert!(global_elements(&Cosmos::FinCat.initial()).is_empty());
}

#[test]
fn finite_limit_sizes() {
    let p = product(&set(&["a", "b"]), &set(&["x", "y", "z"]));
    assert_eq!(p.obj.n_objs(), 6);
    let f = Map::function(set(&["a", "b"]), set(&["x"]), vec![0, 0]).unwrap();
    let g = Map::function(set(&["c"]), set(&["x"]), vec![0]).unwrap();
    let pb = pullback(&f, &g).unwrap();
    assert_eq!(pb.obj().n_objs(), 2);
    assert_eq!(pb.obj().obj_label(1), "(b,c)");
    let e = equalizer(&f, &f).unwrap();
    assert_eq!(e.obj().n_objs(), 2);
    assert_eq!(e.incl(), &Map::identity(f.dom()));
}

#[test]
fn pullback_induce_rejects_noncommuting_cones() {
    let x = set(&["a", "b"]);
    let f = Map::identity(&x);
    let pb = pullback(&f, &f).unwrap();
    let p0 = Map::point(&x, 0);
    let p1 = Map::point(&x, 1);
    assert!(matches!(pb.induce(&p0, &p1), Err(Error::Mediator(_))));
    let m = pb.induce(&p0, &p0).unwrap();
    assert_eq!(m.then(&pb.p0).unwrap(), p0);
}

#[test]
fn coproduct_examples() {
    let x = set(&["a"]);
    let tc = coproduct(Cosmos::FinSet, vec![("only".into(), x.clone())]);
    assert_eq!(tc.total.n_objs(), 1);
    assert!(tc.injection(0).is_iso());
    let tc = coproduct(
        Cosmos::FinSet,
        vec![("L".into(), set(&["a"])), ("R".into(), set(&["b", "c"]))],
    );
    assert_eq!(tc.total.n_objs(), 3);
    assert_eq!(tc.total.obj_label(2), "R:c");
    let t = Cosmos::FinSet.terminal();
    let two = coproduct(
        Cosmos::FinSet,
        vec![("0".into(), t.clone()), ("1".into(), t.clone())],
    );
    let one = coproduct(Cosmos::FinSet, vec![("*".into(), t.clone())]);
    let fold = indexed_coproduct_map(&two, &one, &[0, 0], &[Map::identity(&t), Map::identity(&t)])
        .unwrap();
    assert_eq!(fold.obj_table(), &[0, 0]);
    assert!(indexed_coproduct_map(&two, &one, &[0], &[Map::identity(&t)]).is_err());
}

#[test]
fn fiber_decomposition_examples() {
    let tc = coproduct(
        Cosmos::FinSet,
        vec![("A".into(), set(&["a"])), ("B".into(), set(&["b"]))],
    );
    let g = Map::function(set(&["p", "q", "r"]), tc.total.clone(), vec![0, 0, 1]).unwrap();
    let fd = fiber_decompose(&g, &tc).unwrap();
    assert_eq!(fd.fibers[0].obj().n_objs(), 2);
    assert_eq!(fd.fibers[1].obj().n_objs(), 1);
    assert!(fd.iso.is_iso());

    let inj = tc.injection(1);
    let fd = fiber_decompose(&inj, &tc).unwrap();
    assert_eq!(fd.fibers[0].obj().n_objs(), 0);
    assert!(fd.fibers[1].p0.is_iso());

    let id = Map::identity(&tc.total);
    let parts = extensive_factor(&id, &tc, &tc, &[0, 1]).unwrap();
    assert!(parts
        .iter()
        .zip(&tc.summands)
        .all(|(p, s)| p == &Map::identity(s)));
    assert!(matches!(
        extensive_factor(&id, &tc, &tc, &[1, 0]),
        Err(Error::Factorization(_))
    ));
}

#[test]
fn exponential_examples() {
    let two = set(&["0", "1"]);
    let three = set(&["a", "b", "c"]);
    assert_eq!(exponential(&two, &three).unwrap().obj.n_objs(), 9);
    let t = Cosmos::FinSet.terminal();
    assert_eq!(exponential(&three, &t).unwrap().obj.n_objs(), 1);
    let d = Cosmos::FinCat.discrete(vec!["x".into(), "y".into()]);
    let e = exponential(&Obj::walking_arrow(), &d).unwrap();
    assert_eq!((e.obj.n_objs(), e.obj.n_mors()), (2, 2));
    let arrow = Obj::walking_arrow();
    let e = exponential(&arrow, &arrow).unwrap();
    // functors 2 → 2: the three monotone maps; transformations: the pointwise order.
    assert_eq!(e.obj.n_objs(), 3);
    assert_eq!(e.obj.n_mors(), 6);
    e.obj.validate().unwrap();
    e.eval().validate().unwrap();
}

#[test]
fn generators_are_the_shipped_probes() {
    let g = Cosmos::FinSet.generators();
    assert_eq!(g.probes.len(), 1);
    assert_eq!(g.probes[0].n_objs(), 1);
    let g = Cosmos::FinCat.generators();
    assert_eq!(g.probes, vec![Obj::walking_arrow()]);
}

#[test]
fn validation_rejects_nonassociative_tables() {
    // (a;b);b = a;b = a but a;(b;b) = a;a = b.
    let mut comp = HashMap::new();
    for m in 0..3u32 {
        comp.insert((0, m), m);
        comp.insert((m, 0), m);
    }
    comp.insert((1, 1), 2);
    comp.insert((1, 2), 1);
    comp.insert((2, 1), 1);
    comp.insert((2, 2), 1);
    let mors = vec![("1".into(), 0, 0), ("a".into(), 0, 0), ("b".into(), 0, 0)];
    let r = Obj::category(vec!["o".into()], mors, vec![0], comp);
    assert!(matches!(r, Err(Error::Validation(_))));
}

fn small_object() -> impl Strategy<Value = Obj> {
    prop_oneof![
        (0usize..4).prop_map(|n| {
            let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            Obj::set(labels.into_iter().map(Label::from).collect()).unwrap()
        }),
        (1usize..4, any::<u8>()).prop_map(|(n, bits)| {
            let rel = move |i: usize, j: usize| i == j || (i < j && bits & (1 << (i * 3 + j)) != 0);
            // transitive closure of the strict upper relation
            let mut le = vec![vec![false; n]; n];
            for (i, row) in le.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = rel(i, j);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][k] && le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            poset(n, |i, j| le[i][j])
        }),
        Just(idempotent_monoid()),
        Just(Obj::walking_arrow()),
    ]
}

fn same_cosmos_pair() -> impl Strategy<Value = (Obj, Obj)> {
    (small_object(), small_object()).prop_filter("same cosmos", |(x, y)| x.cosmos() == y.cosmos())
}

fn map_strategy() -> impl Strategy<Value = Map> {
    (
        same_cosmos_pair(),
        any::<prop::sample::Index>(),
        any::<bool>(),
    )
        .prop_filter_map("some map exists", |((x, y), i, endo)| {
            let ms = if endo {
                maps_between(&x, &x)
            } else {
                maps_between(&x, &y)
            }
            .ok()?;
            (!ms.is_empty()).then(|| ms[i.index(ms.len())].clone())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probes_detect_isomorphisms(f in map_strategy()) {
        for g in f.dom().cosmos().generators().probes {
            let before = maps_between(&g, f.dom()).unwrap();
            let after = maps_between(&g, f.cod()).unwrap();
            let mut hit = vec![false; after.len()];
            let mut injective = true;
            for p in &before {
                let q = p.then(&f).unwrap();
                let k = after.iter().position(|a| a == &q).unwrap();
                injective &= !hit[k];
                hit[k] = true;
            }
            let bijective = injective && hit.iter().all(|&h| h);
            prop_assert_eq!(bijective, f.is_iso());
        }
    }

    #[test]
    fn extensivity_roundtrip(f in map_strategy()) {
        let (x, y) = (f.dom().clone(), f.cod().clone());
        let cosmos = x.cosmos();
        let src = coproduct(cosmos, vec![("x".into(), x.clone()), ("y".into(), y.clone())]);
        let tgt = coproduct(cosmos, vec![("a".into(), y.clone()), ("b".into(), y.clone())]);
        let g = src
            .copair(&[f.then(&tgt.injection(1)).unwrap(), tgt.injection(0)])
            .unwrap();
        let fd = fiber_decompose(&g, &tgt).unwrap();
        prop_assert!(fd.iso.is_iso());
        let back = fd
            .coproduct
            .copair(
                &fd.components
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.then(&tgt.injection(i)).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        prop_assert_eq!(fd.iso.then(&g).unwrap(), back);
        prop_assert_eq!(fd.fibers[0].obj().n_objs(), y.n_objs());
        prop_assert_eq!(fd.fibers[1].obj().n_objs(), x.n_objs());
    }

    #[test]
    fn pullback_of_injection_is_a_summand(f in map_strategy(), k in 1usize..3) {
        let cosmos = f.cod().cosmos();
        let mut family: Vec<(Label, Obj)> = vec![("main".into(), f.cod().clone())];
        for i in 1..k {
            family.push((Label::from(format!("x{i}")), f.dom().clone()));
        }
        let tc = coproduct(cosmos, family);
        let g = f.then(&tc.injection(0)).unwrap();
        let pb = pullback(&g, &tc.injection(0)).unwrap();
        prop_assert!(pb.p0.is_iso());
    }

    #[test]
    fn exponential_triangle(f in map_strategy()) {
        // view f : x → y as a map x × ∗ → y and curry it
        let x = f.dom().clone();
        let t = x.cosmos().terminal();
        let e = exponential(&x, f.cod()).unwrap();
        let xt = product(&x, &t).obj;
        let uncurried = product(&x, &t).proj(0).then(&f).unwrap();
        let named = e.curry(&uncurried).unwrap();
        let back = product_map(&Map::identity(&x), &named).then(&e.eval()).unwrap();
        prop_assert_eq!(back.dom(), &xt);
        prop_assert_eq!(&back, &uncurried);
        prop_assert_eq!(e.name(&f), Some(named.on_obj(0)));
        let star = exponential(&t, f.cod()).unwrap();
        prop_assert_eq!(star.obj.n_objs(), f.cod().n_objs());
        prop_assert_eq!(star.obj.n_mors(), f.cod().n_mors());
    }

    #[test]
    fn curry_of_eval_is_identity(xy in same_cosmos_pair()) {
        let (x, y) = xy;
        let e = exponential(&x, &y).unwrap();
        prop_assume!(e.obj.n_mors() < 400);
        prop_assert_eq!(e.curry(&e.eval()).unwrap(), Map::identity(&e.obj));
    }
}
