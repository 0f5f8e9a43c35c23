use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use orbik3::codes::{octads, BinaryWord};
use orbik3::lattice::{Lattice, SublatticeHandle};
use orbik3::perm::{PermGroup, Permutation};
use orbik3::symmetry::{group_elements, lattice_action};
use orbik3::{genus, mathieu, orbifold, Cyclo, Rat, Series};

fn cyclo(c: [i64; 8]) -> Cyclo {
    Cyclo::from_coefficients(c.map(|x| Rat::from_integer(x.into())))
}

fn small_cyclo() -> impl Strategy<Value = Cyclo> {
    prop::array::uniform8(-5i64..=5).prop_map(cyclo)
}

fn genus_n4() -> &'static Series {
    static G: OnceLock<Series> = OnceLock::new();
    G.get_or_init(|| genus::orbifold_genus(4).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_homomorphic(i in 0usize..36, j in 0usize..36) {
        let els = group_elements();
        let (g, h) = (&els[i], &els[j]);
        prop_assert_eq!(lattice_action(&g.compose(h)), lattice_action(g).compose(&lattice_action(h)));
    }

    #[test]
    fn five_points_lie_in_one_octad(pts in prop::sample::subsequence((1..=24usize).collect::<Vec<_>>(), 5)) {
        let w = BinaryWord::from_support(&pts).unwrap();
        prop_assert_eq!(octads().iter().filter(|o| o.0 & w.0 == w.0).count(), 1);
    }

    #[test]
    fn elliptic_transformation(a in 0i64..=4, b in -12i64..=12) {
        let s = genus_n4();
        let a2 = a + b + 1;
        prop_assume!(a2 <= 4);
        let lhs = if a2 < 0 { Cyclo::zero() } else { s.coefficient(24 * a2, 2 * (b + 2)) };
        prop_assert_eq!(lhs, s.coefficient(24 * a, 2 * b));
    }

    #[test]
    fn genus_is_even_in_z(a in 0i64..=4, b in 0i64..=10) {
        let s = genus_n4();
        prop_assert_eq!(s.coefficient(24 * a, 2 * b), s.coefficient(24 * a, -2 * b));
    }

    #[test]
    fn smith_form_matches_discriminant(entries in prop::collection::vec(-4i64..=4, 16), diag in prop::array::uniform4(1i64..=4)) {
        let k = orbifold::build_k();
        let rows: Vec<Vec<BigInt>> = (0..4)
            .map(|i| (0..4).map(|j| BigInt::from(entries[4 * i + j] + if i == j { diag[i] } else { 0 })).collect())
            .collect();
        let Ok(h) = SublatticeHandle::new(&k, rows) else { return Ok(()) };
        let m = h.lattice().unwrap();
        let idx = h.index().unwrap();
        let disc = m.discriminant().abs();
        prop_assert_eq!(&disc, &(k.discriminant().abs() * Rat::from_integer(&idx * &idx)));
        prop_assert_eq!(Rat::from_integer(m.discriminant_group().unwrap().order()), disc);
    }

    #[test]
    fn lattice_json_round_trip(entries in prop::collection::vec(-3i64..=3, 6)) {
        let g = |i: usize, j: usize| -> i64 {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            if i == j { 2 * (entries[i].abs() + 1) } else { entries[3 + i + j - 1] }
        };
        let gram = orbik3::QMatrix::from_fn(3, 3, |i, j| Rat::from_integer(g(i, j).into()));
        let l = Lattice::from_gram(gram).unwrap();
        prop_assert_eq!(Lattice::from_json(&l.to_json()).unwrap(), l);
    }

    #[test]
    fn group_order_ignores_generator_order(gens in Just(mathieu::m12_generators()).prop_shuffle(), extra in 0usize..4) {
        let mut g = gens.clone();
        g.push(gens[extra % gens.len()].then(&gens[(extra + 1) % gens.len()]));
        prop_assert_eq!(PermGroup::new(12, &g).unwrap().order(), BigInt::from(95040));
    }

    #[test]
    fn permutation_inverse(images in Just((0..12usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(images).unwrap();
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(p.pow(p.order()), Permutation::identity(12));
    }

    #[test]
    fn cyclotomic_ring_axioms(a in small_cyclo(), b in small_cyclo(), c in small_cyclo()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inverse().unwrap()), Cyclo::one());
        }
    }

    #[test]
    fn zeta_powers(k in -60i64..60) {
        prop_assert_eq!(Cyclo::zeta_pow(k).mul(&Cyclo::zeta_pow(-k)), Cyclo::one());
        prop_assert_eq!(Cyclo::zeta_pow(k + 24), Cyclo::zeta_pow(k));
        prop_assert_eq!(Cyclo::zeta_pow(k + 12), Cyclo::zeta_pow(k).neg());
    }
}
