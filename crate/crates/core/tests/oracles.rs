//! Frozen values for the fixtures, through the public API only.

use mirrorkit_core::algebra::Algebra;
use mirrorkit_core::field::{Field, Rat};
use mirrorkit_core::format::parse_with;
use mirrorkit_core::homology::{dominant_dimension, global_dimension, tor_corner};
use mirrorkit_core::invariants::{cartan_matrix, simple_count};
use mirrorkit_core::mirror::mirror_at;
use mirrorkit_core::module::Ring;
use mirrorkit_core::quiver::Presentation;
use mirrorkit_core::rewrite::algebra_of;
use mirrorkit_core::strat::gendo_symmetric;
use mirrorkit_core::tower::build_tower;
use mirrorkit_core::verdict::Dim;

fn load(name: &str, k: Option<Field>) -> Presentation {
    let path = format!("{}/../../fixtures/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_with(&std::fs::read_to_string(path).unwrap(), k).unwrap()
}

fn algebra(name: &str, k: Option<Field>) -> Algebra {
    algebra_of(&load(name, k), 30).unwrap().1.algebra
}

#[test]
fn example1_dimensions() {
    let pres = load("example1.quiver", None);
    let a = algebra_of(&pres, 30).unwrap().1.algebra;
    assert_eq!(a.dim(), 24);
    let e = a.family_sum(pres.idempotent("e").unwrap());
    let m = mirror_at(&a, &e).unwrap();
    assert_eq!((m.tensor.dim(), m.algebra.dim()), (18, 42));
    assert_eq!(a.corner(&e).unwrap().algebra.dim(), 5);
    assert_eq!(simple_count(&m.algebra).unwrap(), 7);
    let one_minus_e = a.sub(&a.unit, &e);
    assert_eq!(a.corner(&one_minus_e).unwrap().algebra.dim(), 9);
    assert_eq!(m.reduced().unwrap().algebra().dim(), 9 + 18);
}

#[test]
fn f2_over_several_fields() {
    for k in [None, Some(Field::Prime(2)), Some(Field::Prime(3)), Some(Field::Prime(7))] {
        let a = algebra("f2.quiver", k);
        assert_eq!(a.dim(), 5);
        assert_eq!(cartan_matrix(&a).unwrap(), vec![vec![2, 1], vec![1, 1]]);
        let m = mirror_at(&a, &a.family_sum(&[0])).unwrap();
        assert_eq!(m.algebra.dim(), 10, "{:?}", k);
        assert_eq!(simple_count(&m.algebra).unwrap(), 3);
        let s = m.reduced().unwrap();
        assert_eq!(s.algebra().dim(), 6);
        assert_eq!(cartan_matrix(s.algebra()).unwrap(), vec![vec![2, 1], vec![1, 2]]);
    }
}

#[test]
fn f2_homological_values() {
    let a = algebra("f2.quiver", None);
    let (tor, ideal) = tor_corner(&a, &a.family_sum(&[0]), 4).unwrap();
    assert_eq!(tor, vec![5, 1, 1, 1, 1]);
    assert_eq!(ideal, 4);
    let ring = Ring::new(a.clone()).unwrap();
    assert_eq!(dominant_dimension(&ring, 8).unwrap().verdict.certified(), Some(&2));
    assert_eq!(global_dimension(&ring, 8, 8, 0).unwrap().certified(), Some(&Dim::Finite(2)));
    let g = gendo_symmetric(&a, 8, 8, 0).unwrap();
    assert_eq!(g.certified().unwrap().subset, vec![0]);
}

#[test]
fn f2_tower_dimensions() {
    let a = algebra("f2.quiver", None);
    let t = build_tower(&a, &[0], 2, 400, 8, 0).unwrap();
    let dims: Vec<[usize; 4]> =
        t.levels.iter().map(|l| [l.a.dim(), l.r.algebra.dim(), l.b.dim(), l.s.algebra().dim()]).collect();
    assert_eq!(dims, vec![[5, 10, 5, 6], [15, 30, 9, 10]]);
    assert_eq!((t.lambda.dim(), t.b0.dim()), (2, 1));
}

#[test]
fn tower_budget_stops_early() {
    let a = algebra("f2.quiver", None);
    let t = build_tower(&a, &[0], 3, 12, 8, 0).unwrap();
    assert_eq!(t.levels.len(), 1);
    assert!(t.stopped.is_some());
    let t = build_tower(&a, &[0], 3, 20, 8, 0).unwrap();
    assert_eq!(t.levels.len(), 2);
    assert!(t.stopped.unwrap().contains("R2"));
}

#[test]
fn scaled_level_gives_same_dimensions() {
    let a = algebra("example1.quiver", None);
    let e = a.family_sum(&[3, 4]);
    let lambda = a.scale(&Rat::new(-5, 3), &e);
    let m = mirrorkit_core::mirror::mirror_reflective(&a, &e, &lambda).unwrap();
    assert_eq!(m.algebra.dim(), 42);
    assert!(m.property_suite().unwrap().iter().all(|c| c.passed));
}
