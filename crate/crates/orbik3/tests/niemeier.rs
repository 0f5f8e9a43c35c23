use orbik3::lattice::is_integral_vec;
use orbik3::niemeier::*;
use orbik3::orbifold::{e, Label};
use orbik3::perm::Permutation;
use orbik3::scalar::rint;
use orbik3::symmetry::{lattice_action, AffineSymmetry};

#[test]
fn niemeier_lattice() {
    let n = niemeier();
    let rep = verify_n(n);
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.roots, 72);
}

#[test]
fn embedding() {
    let rep = embed_and_verify_iota(niemeier());
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn gluing_reproduces_n() {
    let n = niemeier();
    let ng = gluing_in_n();
    let rep = verify_gluing_in_n(n, &ng);
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.q_p, vec!["4/3"; 3]);
    assert_eq!(rep.q_k, vec!["2/3"; 3]);
}

#[test]
fn generator_lifts() {
    let n = niemeier();
    for g in Generator::ALL {
        let rep = lift_symmetry(n, g);
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn lift_tables() {
    let a1 = alpha1_lift();
    assert_eq!(a1.apply(&et(1, 2)), et(4, 2));
    for j in 10..=12 {
        for l in 1..=2 {
            assert_eq!(a1.apply(&et(j, l)), et(j, l));
        }
    }
    let b = beta_lift();
    assert_eq!(b.apply(&et(12, 1)), et(12, 2));
    assert_eq!(b.apply(&et(6, 2)), et(6, 1));
    assert_eq!(project_to_m12(&SignedPerm::identity(24)).unwrap(), Permutation::identity(12));
}

#[test]
fn iota_intertwines_beta() {
    let b = lattice_action(&AffineSymmetry::beta());
    let t = Label::new(0, 1);
    assert_eq!(iota(&b.apply_e(&e(t, 1))), beta_lift().apply(&iota(&e(t, 1))));
}

#[test]
fn lifted_group() {
    let rep = verify_lift_group();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn beta_extension_swaps_block_12() {
    let rep = verify_beta_extension(&gluing_in_n());
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn extended_e6() {
    let rep = extended_e6_checks();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn glue_classes() {
    let n = niemeier();
    assert!(n.contains(&n.w[0]));
    let mut x = n.w[0].clone();
    x[0] += rint(1);
    assert!(n.contains(&x));
    assert!(is_integral_vec(&orbik3::lattice::sub(&x, &n.w[0])));
    x[23] += orbik3::scalar::rat(1, 3);
    assert!(!n.contains(&x));
}
