use std::collections::HashMap;

use intcat_core::cosmos::*;
use intcat_core::enriched::*;

fn arrow_category() -> Obj {
    let comp = HashMap::from([((0, 0), 0), ((1, 1), 1), ((0, 2), 2), ((2, 1), 2)]);
    Obj::category(
        vec!["0".into(), "1".into()],
        vec![
            ("id0".into(), 0, 0),
            ("id1".into(), 1, 1),
            ("f".into(), 0, 1),
        ],
        vec![0, 1],
        comp,
    )
    .unwrap()
}

fn two() -> VCategory {
    VCategory::from_category(Cosmos::FinSet, &arrow_category()).unwrap()
}

fn f1(c: &VCategory) -> VPresheaf {
    let s = |l: &[&str]| Obj::set(l.iter().map(|&x| Label::from(x)).collect()).unwrap();
    VPresheaf::from_cells(c.clone(), vec![s(&["c"]), s(&["a", "b"])], |a, b, _f, y| {
        if a == b {
            y
        } else {
            0
        }
    })
    .unwrap()
}

#[test]
fn unit_and_arrow_categories_are_valid() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        assert!(VCategory::unit(cosmos).validate().is_valid());
        let a = VCategory::arrow(cosmos);
        assert!(a.validate().is_valid());
        assert_eq!(a.hom(0, 1), &cosmos.terminal());
        assert!(a.hom(1, 0).is_empty());
        let op = a.opposite();
        assert!(op.validate().is_valid());
        assert_eq!(op.hom(1, 0).n_objs(), 1);
        assert!(op.hom(0, 1).is_empty());
        assert_eq!(op.opposite(), a);
    }
    assert!(two().validate().is_valid());
}

#[test]
fn representables_of_the_arrow() {
    let c = two();
    let f0 = representable(&c, 1).unwrap();
    assert!(f0.validate().is_valid());
    assert_eq!(f0.at(0).obj_label(0), "f");
    assert_eq!(f0.at(1).obj_label(0), "id1");
    let x = Map::point(f0.at(1), 0);
    assert!(is_representable_by(&f0, 1, &x).unwrap());
    assert_eq!(find_representations(&f0).len(), 1);
    let unit = VCategory::unit(Cosmos::FinCat);
    let r = representable(&unit, 0).unwrap();
    assert_eq!(r.at(0), &Cosmos::FinCat.terminal());
}

#[test]
fn f1_is_valid_and_not_representable() {
    let c = two();
    let f = f1(&c);
    assert!(f.validate().is_valid());
    assert!(find_representations(&f).is_empty());
}

#[test]
fn corrupted_evaluation_is_reported() {
    let c = two();
    let f = f1(&c);
    // ev_{0,0} sending c to itself is forced by the identity law; break
    // composition instead by making ev_{1,1} swap a and b
    let swap = Map::function(
        product(c.hom(1, 1), f.at(1)).obj,
        f.at(1).clone(),
        vec![1, 0],
    )
    .unwrap();
    let bad = f.with_ev(1, 1, swap).unwrap();
    let report = bad.validate();
    assert!(!report.is_valid());
    assert!(report.failures.iter().any(|l| l.contains("identity law")));
    assert!(report
        .failures
        .iter()
        .any(|l| l.contains("composition law fails at (1,1,1)")));
}

#[test]
fn ends_count_transformations() {
    let c = two();
    let star = Cosmos::FinSet.terminal();
    let k = VCopresheaf::constant(c.clone(), &star);
    let e = functor_hom(&k, &k).unwrap();
    assert_eq!(e.obj.n_objs(), 1);
    let unit = VCategory::unit(Cosmos::FinSet);
    let s2 = Obj::set(vec!["p".into(), "q".into()]).unwrap();
    let s3 = Obj::set(vec!["x".into(), "y".into(), "z".into()]).unwrap();
    let w = VCopresheaf::constant(unit.clone(), &s2);
    let v = VCopresheaf::constant(unit, &s3);
    let e = functor_hom(&w, &v).unwrap();
    assert_eq!(e.obj.n_objs(), 9);
}

#[test]
fn weighted_cones_over_a_point() {
    let c = two();
    let unit = VCategory::unit(Cosmos::FinSet);
    let w = VCopresheaf::constant(unit, &Cosmos::FinSet.terminal());
    let g = VFunctor::point(&c, 1);
    let cones = weighted_cone_presheaf(&w, &g).unwrap();
    assert!(cones.presheaf.validate().is_valid());
    let rep = representable(&c, 1).unwrap();
    for a in 0..2 {
        assert_eq!(cones.presheaf.at(a).n_objs(), rep.at(a).n_objs());
    }
}

#[test]
fn fincat_weighted_cones_validate() {
    let arrow = Obj::walking_arrow();
    let c = VCategory::from_category(Cosmos::FinCat, &arrow_category()).unwrap();
    let unit = VCategory::unit(Cosmos::FinCat);
    let w = VCopresheaf::constant(unit, &arrow);
    let g = VFunctor::point(&c, 1);
    let cones = weighted_cone_presheaf(&w, &g).unwrap();
    assert!(cones.presheaf.validate().is_valid());
    // [𝟚, discrete] is discrete of the same size
    assert_eq!(cones.presheaf.at(0).n_objs(), 1);
    assert_eq!(cones.presheaf.at(0).n_mors(), 1);
}
