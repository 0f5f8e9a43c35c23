use orbik3::codes::build_c12;
use orbik3::mathieu::*;
use orbik3::niemeier::Generator;
use orbik3::perm::{PermGroup, Permutation};
use orbik3::BigInt;

#[test]
fn m12_order() {
    assert_eq!(m12().order(), BigInt::from(95040));
}

#[test]
fn m12_order_by_closure() {
    // independent of the stabilizer chain: breadth-first closure
    let els = m12().elements(100_000).unwrap();
    assert_eq!(els.len(), 95040);
}

#[test]
fn theta_group_has_order_36() {
    assert_eq!(theta_group().order(), BigInt::from(36));
    assert_eq!(theta_group().elements(100).unwrap().len(), 36);
}

#[test]
fn small_group() {
    let g = PermGroup::new(12, &[Permutation::parse(12, "(1,2)").unwrap()]).unwrap();
    assert_eq!(g.order(), BigInt::from(2));
}

#[test]
fn sign_lifts() {
    let code = build_c12();
    let gens = m12_generators();
    for (i, p) in gens.iter().enumerate() {
        let s = lift_to_c12_automorphism(&code, p).unwrap();
        if i == 2 {
            assert_eq!(flipped(&s), C_SIGN_FLIPS.to_vec());
        } else {
            assert!(flipped(&s).is_empty());
        }
    }
    assert_eq!(lift_to_c12_automorphism(&code, &Permutation::identity(12)), Some([1; 12]));
}

#[test]
fn theta_membership() {
    let g = m12();
    for x in Generator::ALL {
        assert!(g.contains(&theta(x)));
    }
    assert!(theta(Generator::Beta).pow(4).is_identity());
    assert!(!g.contains(&Permutation::parse(12, "(1,2)").unwrap()));
    let rep = verify_m12(&build_c12());
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn vartheta_images() {
    for g in Generator::ALL {
        assert_eq!(vartheta(g).unwrap().to_string(), stated_vartheta(g));
    }
    assert!(extend_to_m24(&Permutation::identity(12)).unwrap().is_identity());
}

#[test]
fn mixing() {
    let a1 = vartheta(Generator::Alpha1).unwrap();
    assert_eq!(a1.image_of(3), 8);
    assert_eq!(a1.image_of(5), 22);
    assert!(mixes(&a1, &OCTAD_28));
    assert!(!mixes(&Permutation::identity(24), &OCTAD_28));
    let rep = verify_m24();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.complement, vec![5, 7, 10, 11, 14, 15, 17, 19, 20, 21, 22, 24]);
}

#[test]
fn full_m24_generation() {
    let rep = extended_generation_check(1).unwrap();
    assert!(rep.passed(), "{rep:?}");
}
