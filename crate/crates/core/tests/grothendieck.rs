use std::collections::HashMap;

use intcat_core::cosmos::*;
use intcat_core::enriched::*;
use intcat_core::grothendieck::*;
use intcat_core::internal::*;
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

fn two() -> VCategory {
    VCategory::arrow(Cosmos::FinSet)
}

/// The presheaf on the arrow with `F1 = {a, b}`, `F0 = {c}`.
fn f1(c: &VCategory) -> VPresheaf {
    VPresheaf::from_cells(
        c.clone(),
        vec![set(&["c"]), set(&["a", "b"])],
        |a, b, _f, y| if a == b { y } else { 0 },
    )
    .unwrap()
}

#[test]
fn elements_of_the_collapsing_presheaf() {
    let c = two();
    let g = groth(&c, &f1(&c)).unwrap();
    assert!(g.total.validate().is_valid());
    assert!(g.projection.validate().is_valid());
    assert_eq!(g.total.a0().n_objs(), 3);
    assert_eq!(g.total.a1().n_objs(), 5);
    assert!(g.packet.certificate);
    assert!(composable_square_is_pullback(&g.projection).unwrap());
    assert!(!is_internal_terminal(&g.total, g.element_cell(1, 0)).unwrap());
    assert!(!is_internal_terminal(&g.total, g.element_cell(1, 1)).unwrap());
}

#[test]
fn elements_of_the_point_presheaf_are_the_base() {
    for c in [two(), VCategory::arrow(Cosmos::FinCat)] {
        let star = constant_presheaf(&c, &c.cosmos().terminal());
        let g = groth(&c, &star).unwrap();
        assert!(g.projection.is_iso());
        let eta = unit_eta(&g, &star).unwrap();
        assert!(eta.certificate);
        assert!(eta
            .value
            .components
            .iter()
            .all(|m| m.is_iso() && m.dom().n_objs() == 1));
    }
}

#[test]
fn elements_are_pairs_with_matching_action() {
    let c = VCategory::from_category(Cosmos::FinSet, &poset(3, |i, j| i <= j)).unwrap();
    let f = product_presheaf(
        &representable(&c, 2).unwrap(),
        &constant_presheaf(&c, &set(&["p", "q"])),
    )
    .unwrap();
    let g = groth(&c, &f).unwrap();
    let t = &g.total;
    for m in 0..t.a1().n_objs() as u32 {
        let (k, p) = g.morphisms.locate_obj(m);
        let (a, b) = (k / 3, k % 3);
        let parts = g.morphisms.summands[k].split_obj(p);
        assert_eq!(
            t.s().on_obj(m),
            g.element_cell(a, f.act_obj(a, b, parts[0], parts[1]))
        );
        assert_eq!(t.t().on_obj(m), g.element_cell(b, parts[1]));
    }
}

#[test]
fn transformations_give_functors_over_the_base() {
    let c = two();
    let f = f1(&c);
    let star = constant_presheaf(&c, &Cosmos::FinSet.terminal());
    let id = VNat::identity(&f);
    let gid = groth_nat(&id).unwrap();
    assert_eq!(gid.h0, Map::identity(gid.source.a0()));
    assert_eq!(gid.h1, Map::identity(gid.source.a1()));
    let bang = VNat::new(
        f.clone(),
        star.clone(),
        (0..2).map(|a| Map::to_terminal(f.at(a))).collect(),
    )
    .unwrap();
    let composite = groth_nat(&id.then(&bang).unwrap()).unwrap();
    assert_eq!(
        composite,
        groth_nat(&id)
            .unwrap()
            .then(&groth_nat(&bang).unwrap())
            .unwrap()
    );
    assert!(composite.validate().is_valid());
}

#[test]
fn covariant_elements_of_a_set_over_the_point() {
    let unit = VCategory::unit(Cosmos::FinSet);
    let w = VCopresheaf::constant(unit, &set(&["p", "q"]));
    let g = groth_cov(&w).unwrap();
    assert!(g.total.validate().is_valid());
    assert_eq!(g.total.a0().n_objs(), 2);
    assert_eq!(g.total.a1().n_objs(), 2);
    assert!(g.packet.certificate);
    assert_eq!(g.packet.variance, Variance::Opfibration);
    let back = inverse_opfib(&g.packet).unwrap();
    assert!(back.validate().is_valid());
    assert_eq!(back.at(0).n_objs(), 2);
}

#[test]
fn covariant_elements_are_opfibrations() {
    let c = two();
    let w = hom_copresheaf(&VFunctor::identity(&c), 0).unwrap();
    let g = groth_cov(&w).unwrap();
    assert!(g.total.validate().is_valid());
    assert!(g.packet.certificate);
    assert!(
        is_discrete_opfibration(&g.projection, Some(&g.base))
            .unwrap()
            .certificate
    );
}

#[test]
fn change_of_base_along_a_point() {
    let c = two();
    let f = f1(&c);
    let pick = VFunctor::point(&c, 1);
    let bc = change_of_base(&pick, &f).unwrap();
    assert!(bc.certificate);
    assert!(bc.functor.validate().is_valid());
    assert_eq!(bc.source.total.a0().n_objs(), 2);
    assert_eq!(bc.source.total.a1().n_objs(), 2);
    let ident = change_of_base(&VFunctor::identity(&c), &f).unwrap();
    assert!(ident.certificate);
    assert_eq!(ident.functor.h0, Map::identity(ident.source.total.a0()));
    assert_eq!(ident.functor.h1, Map::identity(ident.source.total.a1()));
    let pulled = pullback_internal(&bc.base_functor, &bc.target.projection).unwrap();
    assert!(
        is_discrete_fibration(&pulled.leg0, None)
            .unwrap()
            .certificate
    );
}

#[test]
fn fibers_of_identity_and_slices() {
    let c = two();
    let int = internalize(&c).unwrap();
    let id = is_discrete_fibration(&InternalFunctor::identity(&int.cat), Some(&int)).unwrap();
    let phi = inverse_fib(&id).unwrap();
    assert!(phi.validate().is_valid());
    assert!((0..2).all(|a| phi.at(a).n_objs() == 1));
    for x in 0..2 {
        let sl = slice(&int.cat, int.object_cell(x)).unwrap();
        let p = is_discrete_fibration(&sl.projection, Some(&int)).unwrap();
        let phi = inverse_fib(&p).unwrap();
        assert!(phi.validate().is_valid());
        let rep = representable(&c, x).unwrap();
        for a in 0..2 {
            assert_eq!(phi.at(a).n_objs(), rep.at(a).n_objs());
        }
        let eps = counit_epsilon(&p).unwrap();
        assert!(eps.certificate);
    }
}

#[test]
fn unit_and_counit_on_the_collapsing_presheaf() {
    let c = two();
    let f = f1(&c);
    let g = groth(&c, &f).unwrap();
    let phi = inverse_fib(&g.packet).unwrap();
    assert!(phi.validate().is_valid());
    let eta = unit_eta(&g, &f).unwrap();
    assert!(eta.certificate);
    let eps = counit_epsilon(&g.packet).unwrap();
    assert!(eps.certificate);
    assert!(inverse_fib(
        &is_discrete_fibration(&InternalFunctor::to_terminal(&g.total), None).unwrap()
    )
    .is_err());
}

#[test]
fn counit_is_natural() {
    let c = two();
    let f = f1(&c);
    let star = constant_presheaf(&c, &Cosmos::FinSet.terminal());
    let bang = VNat::new(
        f.clone(),
        star.clone(),
        (0..2).map(|a| Map::to_terminal(f.at(a))).collect(),
    )
    .unwrap();
    let int = internalize(&c).unwrap();
    let (gf, gs) = (
        groth_over(&int, &f).unwrap(),
        groth_over(&int, &star).unwrap(),
    );
    let h = groth_nat_between(&bang, &gf, &gs).unwrap();
    let phi_h = inverse_fib_mor(&h, &gf.packet, &gs.packet).unwrap();
    assert!(phi_h.validate().is_valid());
    let (phi_f, phi_s) = (
        inverse_fib(&gf.packet).unwrap(),
        inverse_fib(&gs.packet).unwrap(),
    );
    let lifted = groth_nat_between(
        &phi_h,
        &groth_over(&int, &phi_f).unwrap(),
        &groth_over(&int, &phi_s).unwrap(),
    )
    .unwrap();
    let eps_f = counit_epsilon(&gf.packet).unwrap().value;
    let eps_s = counit_epsilon(&gs.packet).unwrap().value;
    assert_eq!(lifted.then(&eps_s).unwrap(), eps_f.then(&h).unwrap());
}

#[test]
fn fincat_unit_and_counit() {
    let c = VCategory::arrow(Cosmos::FinCat);
    let d0 = idempotent_monoid();
    for f in [constant_presheaf(&c, &d0), representable(&c, 1).unwrap()] {
        let g = groth(&c, &f).unwrap();
        assert!(g.total.validate().is_valid());
        assert!(g.packet.certificate);
        assert!(unit_eta(&g, &f).unwrap().certificate);
        assert!(counit_epsilon(&g.packet).unwrap().certificate);
    }
}

#[test]
fn representable_elements_are_slices() {
    for c in [
        two(),
        VCategory::unit(Cosmos::FinSet),
        VCategory::arrow(Cosmos::FinCat),
    ] {
        for x in 0..c.len() {
            let p = psi(&c, x).unwrap();
            assert!(p.certificate);
        }
    }
    let p = psi(&two(), 1).unwrap();
    assert_eq!(p.slice.cat.a0().n_objs(), 2);
    assert_eq!(p.elements.total.a0().n_objs(), 2);
}

#[test]
fn slices_classify_elements() {
    let c = two();
    let f = f1(&c);
    for y in 0..2 {
        let x = Map::point(f.at(1), y);
        let s = slice_functor_from_element(&f, 1, &x).unwrap();
        assert!(s.certificate);
        assert!(s.value.validate().is_valid());
    }
}

fn small_poset() -> impl Strategy<Value = Obj> {
    (1usize..=3, prop::collection::vec(any::<bool>(), 3)).prop_map(|(n, bits)| {
        let mut le = vec![vec![false; n]; n];
        let mut k = 0;
        for i in 0..n {
            le[i][i] = true;
            for j in i + 1..n {
                le[i][j] = bits[k];
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
    fn equivalence_round_trips(cat in small_poset(), pick in 0usize..3, width in 1usize..3) {
        let c = VCategory::from_category(Cosmos::FinSet, &cat).unwrap();
        let x = pick % c.len();
        let labels: Vec<Label> = (0..width).map(|i| Label::from(format!("e{i}"))).collect();
        let f = product_presheaf(&representable(&c, x).unwrap(), &constant_presheaf(&c, &Obj::set(labels).unwrap())).unwrap();
        let g = groth(&c, &f).unwrap();
        prop_assert!(g.total.validate().is_valid());
        prop_assert!(g.packet.certificate);
        prop_assert!(composable_square_is_pullback(&g.projection).unwrap());
        prop_assert!(unit_eta(&g, &f).unwrap().certificate);
        prop_assert!(counit_epsilon(&g.packet).unwrap().certificate);
        prop_assert!(psi(&c, x).unwrap().certificate);
    }
}
