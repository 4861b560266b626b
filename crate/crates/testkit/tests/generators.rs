use intcat_core::cosmos::{Cosmos, Obj};
use intcat_core::enriched::{product_presheaf, representable, VFunctor};
use intcat_core::grothendieck::groth;
use intcat_core::internal::{is_discrete_fibration, InternalFunctor};
use intcat_core::Error;
use intcat_testkit::fixtures::{p1, p2, p3};
use intcat_testkit::*;
use proptest::prelude::*;

const COSMOSES: [Cosmos; 2] = [Cosmos::FinSet, Cosmos::FinCat];

fn only_posets() -> RecipeWeights {
    RecipeWeights {
        locally_discrete: 0,
        product: 0,
        ..RecipeWeights::default()
    }
}

#[test]
fn configs_outside_the_caps_are_refused() {
    let base = GenConfig::new(0, Cosmos::FinSet);
    assert!(matches!(
        base.clone().with_caps(5, 4).validate(),
        Err(Error::CapExceeded(_))
    ));
    assert!(matches!(
        base.clone().with_caps(3, 7).validate(),
        Err(Error::CapExceeded(_))
    ));
    let none = RecipeWeights {
        poset: 0,
        locally_discrete: 0,
        product: 0,
        ..RecipeWeights::default()
    };
    assert!(base.clone().with_weights(none).validate().is_err());
    assert!(gen_vcategory(&base.with_caps(0, 4)).is_err());
}

#[test]
fn poset_recipe_gives_posets() {
    for seed in 0..40 {
        let cfg = GenConfig::new(seed, Cosmos::FinSet).with_weights(only_posets());
        let c = gen_vcategory(&cfg).unwrap();
        assert!((1..=3).contains(&c.len()));
        for a in 0..c.len() {
            assert_eq!(c.hom(a, a).n_objs(), 1);
            for b in 0..c.len() {
                assert!(c.hom(a, b).n_objs() <= 1);
                if a != b {
                    assert!(
                        c.hom(a, b).n_objs() + c.hom(b, a).n_objs() <= 1,
                        "antisymmetry"
                    );
                }
            }
        }
    }
}

#[test]
fn products_of_representables_are_valid() {
    for cosmos in COSMOSES {
        for seed in 0..20 {
            let c = gen_vcategory(&GenConfig::new(seed, cosmos)).unwrap();
            for a in 0..c.len() {
                for b in 0..c.len() {
                    let p = product_presheaf(
                        &representable(&c, a).unwrap(),
                        &representable(&c, b).unwrap(),
                    )
                    .unwrap();
                    assert!(p.validate().is_valid());
                }
            }
        }
    }
}

#[test]
fn generated_fibrations_are_certified() {
    for cosmos in COSMOSES {
        for seed in 0..30 {
            let cfg = GenConfig::new(seed, cosmos);
            let c = gen_vcategory(&cfg).unwrap();
            let p = gen_fibration(&cfg, &c).unwrap();
            assert!(p.certificate, "seed {seed}");
            assert!(p.require_fibers().is_ok());
        }
    }
}

#[test]
fn relabeled_internal_categories_are_isomorphic() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for seed in 0..20 {
        let a = gen_internal(&GenConfig::new(seed, Cosmos::FinCat)).unwrap();
        let r = relabel_internal(&a, &mut rng).unwrap();
        assert!(r.cat.validate().is_valid());
        assert!(r.iso.validate().is_valid());
        assert!(r.iso.is_iso());
        let back = r.iso.then(&r.inverse).unwrap();
        assert_eq!(back, InternalFunctor::identity(&a));
    }
}

#[test]
fn relabeling_an_object_keeps_its_shape() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let x = Obj::walking_arrow();
    let (y, iso) = relabel_obj(&x, &mut rng).unwrap();
    assert_eq!((y.n_objs(), y.n_mors()), (2, 3));
    assert!(iso.is_iso());
    assert!(y.find_obj("0'").is_some());
}

#[test]
fn weighted_instances_carry_valid_cones() {
    let mut total = 0;
    for cosmos in COSMOSES {
        for seed in 0..15 {
            let inst = gen_weighted(&GenConfig::new(seed, cosmos)).unwrap();
            for p in &inst.problems {
                assert!(p.cone.validate().is_valid());
            }
            total += inst.problems.len();
        }
    }
    assert!(total > 0);
}

#[test]
fn fixtures_are_valid() {
    let f = p1();
    assert!(f.f0.validate().is_valid() && f.f1.validate().is_valid());
    assert!(groth(&f.cat, &f.f1).unwrap().packet.certificate);
    let d = p2();
    assert!(d.cat.validate().is_valid());
    assert_eq!(d.cat.a1().n_mors(), 2);
    let w = p3();
    assert!(w.weight.validate().is_valid());
    assert_eq!(w.diagram, VFunctor::point(&w.cat, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equal_seeds_reproduce_instances(seed in any::<u64>(), cat in any::<bool>()) {
        let cfg = GenConfig::new(seed, if cat { Cosmos::FinCat } else { Cosmos::FinSet });
        let c = gen_vcategory(&cfg).unwrap();
        prop_assert_eq!(&c, &gen_vcategory(&cfg).unwrap());
        prop_assert_eq!(gen_presheaf(&cfg, &c).unwrap(), gen_presheaf(&cfg, &c).unwrap());
        prop_assert_eq!(gen_internal(&cfg).unwrap(), gen_internal(&cfg).unwrap());
        let mut g1 = Generator::new(cfg.clone()).unwrap();
        let mut g2 = Generator::new(cfg).unwrap();
        for _ in 0..3 {
            let (a, b) = (g1.vcategory(), g2.vcategory());
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(g1.presheaf(&a), g2.presheaf(&b));
        }
    }

    #[test]
    fn generated_instances_pass_their_validators(seed in any::<u64>(), cat in any::<bool>()) {
        let cosmos = if cat { Cosmos::FinCat } else { Cosmos::FinSet };
        let cfg = GenConfig::new(seed, cosmos);
        let c = gen_vcategory(&cfg).unwrap();
        prop_assert!(c.len() <= cfg.max_objects);
        for a in 0..c.len() {
            for b in 0..c.len() {
                prop_assert!(cells(c.hom(a, b)) <= cfg.max_cells);
            }
        }
        let f = gen_presheaf(&cfg, &c).unwrap();
        for a in 0..c.len() {
            prop_assert!(cells(f.at(a)) <= cfg.max_cells);
        }
        prop_assert!(gen_copresheaf(&cfg, &c).is_ok());
        prop_assert!(gen_vfunctor(&cfg, &c, &c).is_ok());
        let a = gen_internal(&cfg).unwrap();
        prop_assert!(a.validate().is_valid());
        let packet = gen_fibration(&cfg, &c).unwrap();
        prop_assert!(packet.certificate);
        prop_assert!(is_discrete_fibration(&packet.functor, None).unwrap().certificate);
    }
}
