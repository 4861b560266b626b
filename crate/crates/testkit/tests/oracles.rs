use intcat_core::cosmos::{exponential, global_elements, maps_between, Cosmos, Label, Obj};
use intcat_core::enriched::{functor_hom, hom_copresheaf, VCategory, VCopresheaf, VFunctor};
use intcat_core::internal::{internal_hom, InternalCategory};
use intcat_core::Error;
use intcat_testkit::fixtures::{idempotent_monoid, p3};
use intcat_testkit::oracle::*;
use intcat_testkit::*;

fn set(k: usize) -> Obj {
    Obj::set((0..k).map(|i| Label::from(format!("e{i}"))).collect()).unwrap()
}

#[test]
fn constant_point_functors_have_one_transformation() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        let c = VCategory::arrow(cosmos);
        let f = VCopresheaf::constant(c, &cosmos.terminal());
        assert_eq!(oracle_nat_enum(&f, &f).unwrap(), 1);
    }
}

#[test]
fn raw_map_enumeration_matches_the_exponential() {
    let xs = [
        set(0),
        set(2),
        set(3),
        Obj::walking_arrow(),
        idempotent_monoid(),
    ];
    for x in &xs {
        for y in &xs {
            if x.cosmos() != y.cosmos() {
                continue;
            }
            let raw = enumerate_maps(x, y).unwrap().len();
            assert_eq!(raw, maps_between(x, y).unwrap().len());
            assert_eq!(raw, global_elements(&exponential(x, y).unwrap().obj).len());
        }
    }
}

#[test]
fn functors_out_of_the_point_are_global_elements() {
    for seed in 0..20 {
        let a = gen_internal(&GenConfig::new(seed, Cosmos::FinCat)).unwrap();
        let one = InternalCategory::terminal(Cosmos::FinCat);
        assert_eq!(
            oracle_functor_enum(&one, &a).unwrap(),
            global_elements(a.a0()).len()
        );
    }
}

#[test]
fn transformation_counts_match_ends() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        for seed in 0..25 {
            let cfg = GenConfig::new(seed, cosmos).with_caps(2, 4);
            let i = gen_vcategory(&cfg).unwrap();
            let f = gen_copresheaf(&cfg, &i).unwrap();
            let g = gen_copresheaf(&GenConfig::new(seed + 1000, cosmos), &i).unwrap();
            let end = functor_hom(&f, &g).unwrap();
            assert_eq!(
                oracle_nat_enum(&f, &g).unwrap(),
                global_elements(&end.obj).len(),
                "seed {seed}"
            );
        }
    }
}

#[test]
fn internal_functor_counts_match_the_internal_hom() {
    let mut checked = 0;
    for seed in 0..20 {
        let cfg = GenConfig::new(seed, Cosmos::FinCat).with_caps(2, 3);
        let i = gen_internal(&cfg).unwrap();
        let a = gen_internal(&GenConfig::new(seed + 500, Cosmos::FinCat).with_caps(2, 3)).unwrap();
        let Ok(raw) = oracle_functor_enum(&i, &a) else {
            continue;
        };
        checked += 1;
        let hom = internal_hom(&i, &a).unwrap();
        assert_eq!(raw, hom.functor_count());
        assert_eq!(raw, global_elements(hom.cat.a0()).len());
    }
    assert!(checked >= 10);
}

#[test]
fn slice_families_agree_on_the_chain_fixture() {
    let p = p3();
    for a in 0..3 {
        for x in [set(1), set(2)] {
            let r = oracle_isoofslices(&p.weight, &p.diagram, a, &x).unwrap();
            assert!(r.agrees());
            let end = functor_hom(&p.weight, &hom_copresheaf(&p.diagram, a).unwrap()).unwrap();
            assert_eq!(r.enriched.len(), maps_between(&x, &end.obj).unwrap().len());
        }
    }
}

#[test]
fn slice_families_over_the_arrow_shape() {
    let c = VCategory::from_category(Cosmos::FinCat, &Obj::walking_arrow()).unwrap();
    let shape = VCategory::arrow(Cosmos::FinCat);
    let w = VCopresheaf::constant(shape.clone(), &Obj::walking_arrow());
    let g = VFunctor::new(
        shape.clone(),
        c.clone(),
        vec![0, 1],
        (0..4)
            .map(|q| {
                let (i, j) = (q / 2, q % 2);
                let dom = shape.hom(i, j);
                if dom.n_objs() == 0 {
                    intcat_core::cosmos::Map::from_initial(c.hom(i, j))
                } else {
                    intcat_core::cosmos::Map::constant(dom, c.hom(i, j), 0)
                }
            })
            .collect(),
    )
    .unwrap();
    assert!(g.validate().is_valid());
    for a in 0..2 {
        let r = oracle_isoofslices(&w, &g, a, &Cosmos::FinCat.terminal()).unwrap();
        assert!(r.agrees());
    }
}

#[test]
fn oversized_searches_are_refused() {
    let big = set(6);
    let shape = VCategory::from_category(
        Cosmos::FinSet,
        &intcat_testkit::fixtures::idempotent_monoid(),
    )
    .unwrap();
    let shape =
        intcat_core::enriched::product_vcat(&VCategory::arrow(Cosmos::FinSet), &shape).unwrap();
    let w = VCopresheaf::constant(shape, &big);
    assert!(matches!(
        oracle_nat_enum(&w, &w),
        Err(Error::CapExceeded(_))
    ));
    assert!(matches!(
        enumerate_maps(&set(12), &set(12)),
        Err(Error::CapExceeded(_))
    ));
}
