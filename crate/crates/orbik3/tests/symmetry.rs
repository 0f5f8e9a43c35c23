use orbik3::lattice::{add, sub};
use orbik3::orbifold::*;
use orbik3::scalar::rat;
use orbik3::symmetry::*;

#[test]
fn translation_on_v1() {
    let a1 = lattice_action(&AffineSymmetry::alpha1());
    let v = v_generators();
    let shifted = l12().translate(Label::new(1, 0));
    let expect = add(&sub(&v[0], &v[2]), &e_sum(&shifted.points(), &rat(1, 1)));
    assert_eq!(a1.apply_e(&v[0]), expect);
}

#[test]
fn rotation_on_v() {
    let o = orbifold();
    let b = lattice_action(&AffineSymmetry::beta());
    let v = v_generators();
    assert!(o.r.contains(&add(&b.apply_e(&v[0]), &v[1])).unwrap());
    assert!(o.r.contains(&add(&b.apply_e(&v[2]), &v[2])).unwrap());
}

#[test]
fn identity_action() {
    assert_eq!(lattice_action(&AffineSymmetry::identity()), LatticeAction::identity());
}

#[test]
fn beta_checks() {
    let o = orbifold();
    let rep = verify_symmetry(o, &AffineSymmetry::beta());
    assert!(rep.passed(), "{:?}", rep.failures);
    assert_eq!(rep.disc_signs, vec![Some(1), Some(-1), Some(1)]);
}

#[test]
fn translations_act_trivially_on_discriminant() {
    let o = orbifold();
    for g in [AffineSymmetry::alpha1(), AffineSymmetry::alpha2()] {
        let rep = verify_symmetry(o, &g);
        assert!(rep.passed());
        assert_eq!(rep.disc_signs, vec![Some(1); 3]);
    }
}

#[test]
fn all_elements_are_symmetries() {
    let o = orbifold();
    for g in group_elements() {
        assert!(verify_symmetry(o, &g).passed(), "{g}");
    }
}

#[test]
fn swap_is_not_a_symmetry() {
    let o = orbifold();
    let bad = LatticeAction::swap_e(e_index(Label::new(0, 0), 1), e_index(Label::new(0, 1), 1));
    let rep = verify_action(o, &bad);
    assert!(!rep.p_preserved);
    assert!(!rep.passed());
}

#[test]
fn faithful_and_homomorphic() {
    let rep = verify_faithfulness();
    assert!(rep.passed(), "{rep:?}");
    assert_ne!(lattice_action(&AffineSymmetry::alpha1()), lattice_action(&AffineSymmetry::alpha2()));
    let b2 = AffineSymmetry::beta().compose(&AffineSymmetry::beta());
    assert_eq!(b2.apply(Label::new(0, 1)), Label::new(0, 2));
    assert_eq!(b2.apply(Label::new(0, 2)), Label::new(0, 1));
}

#[test]
fn roots_orthogonal_to_sigma() {
    let o = orbifold();
    let rep = verify_sigma_perp_roots(o);
    assert_eq!(rep.rank, 19);
    assert_eq!(rep.roots, 54);
    assert!(rep.passed(), "{rep:?}");
}
