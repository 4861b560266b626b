use std::collections::HashMap;

use intcat_core::cosmos::*;
use intcat_core::enriched::*;
use intcat_core::grothendieck::*;
use intcat_core::internal::*;
use intcat_core::limits::*;
use intcat_core::Error;
use proptest::prelude::*;

fn set(labels: &[&str]) -> Obj {
    Obj::set(labels.iter().map(|&l| Label::from(l)).collect()).unwrap()
}

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

fn chain(cosmos: Cosmos, n: usize) -> VCategory {
    VCategory::from_category(cosmos, &poset(n, |i, j| i <= j)).unwrap()
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

/// One object whose endo-hom is the idempotent monoid, composed by multiplication.
fn idempotent_2cat() -> VCategory {
    let d = idempotent_monoid();
    VCategory::from_cells(
        Cosmos::FinCat,
        vec!["o".into()],
        vec![d.clone()],
        |_, _, _, f, g| f.max(g),
        |_| 0,
    )
    .unwrap()
}

fn f1(c: &VCategory) -> VPresheaf {
    VPresheaf::from_cells(
        c.clone(),
        vec![set(&["c"]), set(&["a", "b"])],
        |a, b, _f, y| if a == b { y } else { 0 },
    )
    .unwrap()
}

fn ident_point(c: &VCategory, a: usize) -> Map {
    Map::point(c.hom(a, a), c.ident_obj(a))
}

#[test]
fn representables_are_represented_on_every_route() {
    for c in [
        chain(Cosmos::FinSet, 3),
        chain(Cosmos::FinCat, 3),
        VCategory::arrow(Cosmos::FinSet),
    ] {
        for k in 0..c.len() {
            let f = representable(&c, k).unwrap();
            let v = representation_verdicts(&f, k, &ident_point(&c, k)).unwrap();
            assert_eq!(v.direct, Verdict::True);
            assert_eq!(v.elements, Verdict::True);
            assert_eq!(v.shifted, Verdict::True);
            assert_eq!(v.und_tensors, Verdict::True);
        }
    }
}

#[test]
fn the_collapsing_presheaf_has_no_representation() {
    let c = VCategory::arrow(Cosmos::FinSet);
    let f = f1(&c);
    assert!(find_representations(&f).is_empty());
    for a in 0..2 {
        for x in global_elements(f.at(a)) {
            let v = representation_verdicts(&f, a, &x).unwrap();
            assert_eq!(v.direct, Verdict::False);
            assert_eq!(v.elements, Verdict::False);
            assert_eq!(v.shifted, Verdict::False);
            assert_eq!(v.und_tensors, Verdict::False);
        }
    }
    let f0 = representable(&c, 1).unwrap();
    assert!(is_representable_via_elements(&f0, 1, &ident_point(&c, 1)).unwrap());
    assert!(is_representable_via_shifted(&f0, 1, &ident_point(&c, 1)).unwrap());
    assert!(!is_representable_via_elements(&f0, 0, &Map::point(f0.at(0), 0)).unwrap());
}

#[test]
fn unit_tensors_exist_by_the_point() {
    let c = chain(Cosmos::FinSet, 3);
    let pt = Cosmos::FinSet.terminal();
    for b in 0..3 {
        assert!(is_v_tensor(&c, b, &pt, b, &ident_point(&c, b)).unwrap());
        let w = find_v_tensor(&c, b, &pt).unwrap().unwrap();
        assert_eq!(w.tensor, b);
    }
    assert_eq!(has_v_tensors(&c, &pt).unwrap().unwrap().len(), 3);
    assert!(!is_v_tensor(&c, 0, &pt, 1, &Map::point(c.hom(0, 1), 0)).unwrap());
}

#[test]
fn locally_discrete_categories_have_tensors_by_the_arrow() {
    let c = chain(Cosmos::FinCat, 3);
    let two = Obj::walking_arrow();
    for b in 0..3 {
        let gamma = Map::constant(&two, c.hom(b, b), c.ident_obj(b));
        assert!(is_v_tensor(&c, b, &two, b, &gamma).unwrap());
    }
    let table = has_v_tensors(&c, &two).unwrap().unwrap();
    assert!(table.iter().all(|w| w.verdict && w.tensor == w.base));
    let f = product_presheaf(
        &representable(&c, 1).unwrap(),
        &constant_presheaf(&c, &Obj::discrete_cat(vec!["p".into(), "q".into()])),
    )
    .unwrap();
    assert!(presheaf_preserves_tensors(&f, &two).unwrap());
    for a in 0..3 {
        for x in global_elements(f.at(a)) {
            let v = representation_verdicts(&f, a, &x).unwrap();
            assert!(v.und_tensors.is_applicable());
            assert!(v.agree(), "{v:?}");
        }
    }
}

#[test]
fn a_noninvertible_endomorphism_blocks_tensors() {
    let c = idempotent_2cat();
    assert!(has_v_tensors(&c, &Obj::walking_arrow()).unwrap().is_none());
    let f = representable(&c, 0).unwrap();
    let v = representation_verdicts(&f, 0, &ident_point(&c, 0)).unwrap();
    assert_eq!(v.direct, Verdict::True);
    assert_eq!(v.elements, Verdict::True);
    assert_eq!(v.shifted, Verdict::True);
    assert!(matches!(v.und_tensors, Verdict::NotApplicable(_)));
    assert!(matches!(
        is_representable_via_und_tensors(&f, 0, &ident_point(&c, 0)),
        Err(Error::HypothesisNotMet(_))
    ));
    assert!(matches!(
        presheaf_preserves_tensors(&f, &Obj::walking_arrow()),
        Err(Error::HypothesisNotMet(_))
    ));
}

#[test]
fn preservation_matches_a_search_over_isomorphisms() {
    let c = chain(Cosmos::FinCat, 2);
    let two = Obj::walking_arrow();
    let presheaves = [
        representable(&c, 0).unwrap(),
        representable(&c, 1).unwrap(),
        constant_presheaf(&c, &two),
        constant_presheaf(&c, &Obj::discrete_cat(vec!["p".into(), "q".into()])),
    ];
    for f in &presheaves {
        for w in has_v_tensors(&c, &two).unwrap().unwrap() {
            let p = preservation(f, &w).unwrap();
            let e = &p.exponential;
            let ev = e.eval();
            let searched = maps_between(&e.obj, f.at(w.tensor))
                .unwrap()
                .into_iter()
                .any(|phi| {
                    phi.is_iso()
                        && (0..ev.dom().n_mors() as u32).all(|m| {
                            let parts = ev.dom().split_mor(m);
                            f.act(
                                w.base,
                                w.tensor,
                                w.unit.on_mor(parts[0]),
                                phi.on_mor(parts[1]),
                            ) == ev.on_mor(m)
                        })
                });
            assert_eq!(p.iso.is_some(), searched);
        }
    }
}

#[test]
fn the_constant_double_category_on_an_idempotent() {
    let a = InternalCategory::cst(&idempotent_monoid());
    let r = tensor_bridge_terminal(&a, None, 0, &Cosmos::FinCat.generators()).unwrap();
    assert!(!r.hypotheses);
    assert!(!r.missing.is_empty());
    assert!(r.v_terminal);
    assert!(!r.internal_terminal);
    assert!(!r.shifted);
    assert!(r.divergence);
    assert!(!r.unexpected);
}

#[test]
fn the_terminal_internal_category_passes_every_test() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let a = InternalCategory::terminal(cosmos);
        let r = tensor_bridge_terminal(&a, None, 0, &cosmos.generators()).unwrap();
        assert!(r.hypotheses && r.internal_terminal && r.v_terminal && r.shifted);
        assert!(!r.divergence);
    }
}

#[test]
fn sets_have_internal_tensors_by_the_point() {
    let a = InternalCategory::cst(&set(&["p", "q", "r"]));
    let s = has_internal_tensors(&a, &Cosmos::FinSet.terminal()).unwrap();
    assert_eq!(s.entries.len(), 3);
    assert!(s.complete());
    for (g, cone) in &s.entries {
        assert_eq!(cone.as_ref().unwrap().apex, g.on_obj(0));
    }
}

#[test]
fn elements_of_preserving_presheaves_have_fiberwise_tensors() {
    let c = chain(Cosmos::FinCat, 3);
    let two = Obj::walking_arrow();
    let f = product_presheaf(
        &representable(&c, 2).unwrap(),
        &constant_presheaf(&c, &poset(2, |i, j| i == j)),
    )
    .unwrap();
    let g = groth(&c, &f).unwrap();
    assert!(has_c_internal_tensors(&g.packet, &two).unwrap().complete());
    for a in 0..3 {
        for gm in maps_between(&two, f.at(a)).unwrap() {
            let w = groth_tensor_witness(&f, a, &two, &gm).unwrap();
            assert!(w.certificate);
        }
        for t in 0..f.at(a).n_objs() as u32 {
            let cell = g.element_cell(a, t);
            let r = tensor_bridge_terminal(
                &g.total,
                Some(&g.packet),
                cell,
                &Cosmos::FinCat.generators(),
            )
            .unwrap();
            assert!(r.hypotheses);
            assert!(!r.divergence);
        }
    }
    let set_base = chain(Cosmos::FinSet, 2);
    let fs = f1(&VCategory::arrow(Cosmos::FinSet));
    let gs = groth(fs.base(), &fs).unwrap();
    assert!(
        has_c_internal_tensors(&gs.packet, &Cosmos::FinSet.terminal())
            .unwrap()
            .complete()
    );
    let w = groth_tensor_witness(
        &representable(&set_base, 1).unwrap(),
        0,
        &Cosmos::FinSet.terminal(),
        &Map::point(set_base.hom(0, 1), 0),
    )
    .unwrap();
    assert!(w.certificate);
}

/// The chain ⊥ < x < ⊤ with weight a two-element set at the one-object shape, diagram at x.
fn chain_problem_parts() -> (VCopresheaf, VFunctor) {
    let c = chain(Cosmos::FinSet, 3);
    let unit = VCategory::unit(Cosmos::FinSet);
    (
        VCopresheaf::constant(unit, &set(&["u", "w"])),
        VFunctor::point(&c, 1),
    )
}

#[test]
fn weighted_power_in_a_chain() {
    let (w, g) = chain_problem_parts();
    let at_x = candidate_cones(&w, &g, 1).unwrap();
    assert_eq!(at_x.len(), 1);
    let p = &at_x[0];
    assert!(p.cone.components[0]
        .obj_table()
        .iter()
        .all(|&k| k == g.target.ident_obj(1)));
    let v = weighted_limit_verdicts(p).unwrap();
    for r in [
        &v.direct,
        &v.elements,
        &v.shifted,
        &v.und_tensors,
        &v.conical,
    ] {
        assert_eq!(r, &Verdict::True);
    }
    assert!(is_weighted_limit_direct(p).unwrap());
    assert!(is_weighted_limit_elements(p).unwrap());
    assert!(is_weighted_limit_shifted(p).unwrap());
    assert!(is_weighted_limit_und_tensors(p).unwrap());
    assert!(is_weighted_limit_conical(p).unwrap());
    assert!(candidate_cones(&w, &g, 2).unwrap().is_empty());
    for p in candidate_cones(&w, &g, 0).unwrap() {
        let v = weighted_limit_verdicts(&p).unwrap();
        assert_eq!(v.direct, Verdict::False);
        assert!(v.agree());
    }
    let wc = weighted_cone_internal(&w, &g).unwrap();
    for a in 0..3 {
        assert_eq!(
            wc.cones.presheaf.at(a).n_objs(),
            g.target.hom(a, 1).n_objs()
        );
    }
    assert!(weighted_cone_cross_check(&w, &g, &wc).unwrap().certificate);
}

#[test]
fn cones_over_a_point_form_a_slice() {
    for c in [chain(Cosmos::FinSet, 3), chain(Cosmos::FinCat, 3)] {
        let unit = VCategory::unit(c.cosmos());
        let w = VCopresheaf::constant(unit, &c.cosmos().terminal());
        for k in 0..3 {
            let g = VFunctor::point(&c, k);
            let wc = weighted_cone_internal(&w, &g).unwrap();
            let sl = slice(&wc.elements.base.cat, wc.elements.base.object_cell(k)).unwrap();
            assert_eq!(wc.elements.total.a0().n_objs(), sl.cat.a0().n_objs());
            assert_eq!(wc.elements.total.a1().n_objs(), sl.cat.a1().n_objs());
            assert!(weighted_cone_cross_check(&w, &g, &wc).unwrap().certificate);
        }
    }
}

#[test]
fn empty_shapes_ask_for_a_terminal_object() {
    let c = chain(Cosmos::FinSet, 3);
    let empty = VCategory::new(Cosmos::FinSet, vec![], vec![], vec![], vec![]).unwrap();
    let w = VCopresheaf::new(empty.clone(), vec![], vec![]).unwrap();
    let g = VFunctor::new(empty, c.clone(), vec![], vec![]).unwrap();
    for l in 0..3 {
        let ps = candidate_cones(&w, &g, l).unwrap();
        assert_eq!(ps.len(), 1);
        let v = weighted_limit_verdicts(&ps[0]).unwrap();
        assert!(v.agree());
        assert_eq!(v.direct.as_bool(), Some(is_v_terminal(&c, l)));
    }
}

#[test]
fn conical_limits_of_discrete_pairs_are_meets() {
    let c = VCategory::from_category(Cosmos::FinSet, &poset(4, |i, j| i == j || i == 0 || j == 3))
        .unwrap();
    let shape = VCategory::from_category(Cosmos::FinSet, &poset(2, |i, j| i == j)).unwrap();
    let g = monotone(&shape, &c, vec![1, 2]);
    let w = VCopresheaf::constant(shape, &Cosmos::FinSet.terminal());
    let mut limits = Vec::new();
    for l in 0..4 {
        for p in candidate_cones(&w, &g, l).unwrap() {
            let v = weighted_limit_verdicts(&p).unwrap();
            assert!(v.agree(), "{v:?}");
            if v.direct == Verdict::True {
                limits.push(l);
            }
        }
    }
    assert_eq!(limits, vec![0]);
}

/// The unique map between hom-objects of posets (empty or a point).
fn unique(dom: &Obj, cod: &Obj) -> Map {
    if dom.n_objs() == 0 {
        Map::new(dom.clone(), cod.clone(), vec![], vec![]).unwrap()
    } else {
        Map::constant(dom, cod, 0)
    }
}

fn monotone(shape: &VCategory, c: &VCategory, obj: Vec<usize>) -> VFunctor {
    let n = shape.len();
    let hom = (0..n * n)
        .map(|k| unique(shape.hom(k / n, k % n), c.hom(obj[k / n], obj[k % n])))
        .collect();
    VFunctor::new(shape.clone(), c.clone(), obj, hom).unwrap()
}

#[test]
fn weighted_limits_over_the_arrow_in_categories() {
    let c = chain(Cosmos::FinCat, 3);
    let shape = VCategory::arrow(Cosmos::FinCat);
    let g = monotone(&shape, &c, vec![1, 2]);
    let w = VCopresheaf::constant(shape, &Obj::walking_arrow());
    let mut limits = Vec::new();
    for l in 0..3 {
        for p in candidate_cones(&w, &g, l).unwrap() {
            let v = weighted_limit_verdicts(&p).unwrap();
            assert!(v.und_tensors.is_applicable());
            assert!(v.agree(), "{v:?}");
            if v.direct == Verdict::True {
                limits.push(l);
            }
        }
    }
    assert_eq!(limits, vec![1]);
    let wc = weighted_cone_internal(&w, &g).unwrap();
    assert!(weighted_cone_cross_check(&w, &g, &wc).unwrap().certificate);
}

#[test]
fn shifted_arrows_match_the_internal_hom() {
    let pt = Cosmos::FinSet.terminal();
    for c in [chain(Cosmos::FinSet, 3), VCategory::arrow(Cosmos::FinSet)] {
        let cmp = compare_ar_x(&c, &pt).unwrap();
        assert!(cmp.iso);
    }
    let two = Obj::walking_arrow();
    for c in [chain(Cosmos::FinCat, 3), idempotent_2cat()] {
        let cmp = compare_ar_x(&c, &two).unwrap();
        assert!(cmp.iso);
        assert!(cmp.ar.validate().is_valid());
    }
    assert!(matches!(
        compare_ar_x(&chain(Cosmos::FinSet, 2), &set(&["p", "q"])),
        Err(Error::HypothesisNotMet(_))
    ));
}

fn closed_poset(n: usize, bits: u32) -> Obj {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            le[i][j] = bits >> k & 1 == 1;
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
}

fn discrete_set(cosmos: Cosmos, k: usize) -> Obj {
    cosmos.discrete((0..k).map(|i| Label::from(format!("e{i}"))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn representability_routes_agree(n in 1usize..4, bits in 0u32..8, k in 0usize..3, s in 1usize..3, cat in any::<bool>()) {
        let cosmos = if cat { Cosmos::FinCat } else { Cosmos::FinSet };
        let c = VCategory::from_category(cosmos, &closed_poset(n, bits)).unwrap();
        let k = k % n;
        let f = product_presheaf(&representable(&c, k).unwrap(), &constant_presheaf(&c, &discrete_set(cosmos, s))).unwrap();
        for a in 0..n {
            for x in global_elements(f.at(a)) {
                let v = representation_verdicts(&f, a, &x).unwrap();
                prop_assert!(v.agree(), "{:?}", v);
                prop_assert!(v.und_tensors.is_applicable());
            }
        }
    }

    #[test]
    fn weighted_routes_agree_and_limits_are_unique(
        n in 1usize..4, bits in 0u32..8, targets in proptest::collection::vec(0usize..3, 1..3),
        sizes in proptest::collection::vec(0usize..3, 2..3), cat in any::<bool>(),
    ) {
        let cosmos = if cat { Cosmos::FinCat } else { Cosmos::FinSet };
        let c = VCategory::from_category(cosmos, &closed_poset(n, bits)).unwrap();
        let m = targets.len();
        let shape = VCategory::from_category(cosmos, &poset(m, |i, j| i == j)).unwrap();
        let g = monotone(&shape, &c, targets.iter().map(|t| t % n).collect());
        let w = VCopresheaf::from_cells(
            shape.clone(),
            (0..m).map(|i| discrete_set(cosmos, sizes[i % 2])).collect(),
            |_, _, y, _| y,
        )
        .unwrap();
        let mut apexes = Vec::new();
        for l in 0..n {
            for p in candidate_cones(&w, &g, l).unwrap() {
                let v = weighted_limit_verdicts(&p).unwrap();
                prop_assert!(v.agree(), "{:?}", v);
                if v.direct == Verdict::True {
                    apexes.push(l);
                }
            }
        }
        // A poset has no nontrivial isomorphisms, so limits are unique on the nose.
        prop_assert!(apexes.len() <= 1);
    }
}
