use std::collections::HashSet;

use orbik3::codes::*;
use orbik3::perm::Permutation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ternary_golay() {
    let c = build_c12();
    assert_eq!(c.size(), 729);
    assert_eq!(c.min_weight(), 6);
    assert!(c.contains(&TernaryWord::zero()));
}

#[test]
fn binary_golay_census() {
    let c = build_c24();
    assert_eq!(c.size(), 4096);
    let e: Vec<(u32, usize)> = c.weight_enumerator().into_iter().collect();
    assert_eq!(e, vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    assert!(c.contains(&BinaryWord(ALL_ONES)));
    for w in c.words().take(200) {
        assert!(c.contains(&w.complement()));
    }
}

#[test]
fn sample_word_scores() {
    let w = build_c24().generators[0];
    let a = MogArray::from_word(&w);
    assert_eq!(a.scores(), [f4::OMEGA2, 1, 0, f4::OMEGA, 0, f4::OMEGA]);
    assert!(mog_membership(&a));
    assert!(mog_membership(&MogArray([[false; 6]; 4])));
    for l in 1..=24 {
        let single = BinaryWord::from_support(&[l]).unwrap();
        assert!(!mog_membership(&MogArray::from_word(&single)));
    }
}

#[test]
fn mog_agrees_with_span() {
    let c = c24();
    for w in c.words() {
        assert!(mog_membership(&MogArray::from_word(&w)));
        assert_eq!(MogArray::from_word(&w).to_word(), w);
    }
    for i in 0..24 {
        for j in i..24 {
            let w = BinaryWord((1 << i) | (1 << j));
            assert_eq!(mog_membership(&MogArray::from_word(&w)), c.contains(&w));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20_000 {
        let w = BinaryWord(rng.gen::<u32>() & ALL_ONES);
        assert_eq!(mog_membership(&MogArray::from_word(&w)), c.contains(&w));
    }
}

#[test]
fn octad_completion() {
    let o = octad_complete(&[2, 4, 6, 8, 9]).unwrap();
    assert!(o.has(18));
    assert_eq!(domino_number(&o), Some(5));
    let rest: Vec<usize> = o.support().into_iter().filter(|l| ![2, 4, 6, 8, 9, 18].contains(l)).collect();
    assert_eq!(rest, vec![11, 17]);

    let first = domino_octads()[0];
    let s = first.support();
    assert_eq!(octad_complete(&s[3..8]).unwrap(), first);

    let o = octad_complete(&[1, 2, 3, 4, 5]).unwrap();
    let brute: Vec<_> = octads().iter().filter(|w| (1..=5).all(|l| w.has(l))).collect();
    assert_eq!(brute, vec![&o]);
    assert!(octad_complete(&[1, 2, 3]).is_err());
}

#[test]
fn steiner_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let mut pts = HashSet::new();
        while pts.len() < 5 {
            pts.insert(rng.gen_range(1..=24usize));
        }
        let pts: Vec<usize> = pts.into_iter().collect();
        let o = octad_complete(&pts).unwrap();
        assert!(pts.iter().all(|&p| o.has(p)));
    }
}

#[test]
fn domino_fixture() {
    let rep = verify_domino_list();
    assert_eq!(rep.count, 29);
    assert!(rep.passed(), "{rep:?}");
    let list = domino_octads();
    assert_eq!(list[27].support(), vec![3, 5, 6, 9, 15, 19, 23, 24]);
    assert_eq!(list[0].support(), vec![2, 7, 8, 10, 12, 17, 18, 22]);
    let grid = MogArray::from_word(&list[0]).render();
    assert!(grid.lines().skip(1).take(2).all(|l| l.ends_with("|••|")));
}

#[test]
fn code_automorphisms() {
    let c = c24();
    assert!(c.is_code_automorphism(&Permutation::identity(24)).unwrap());
    let t = Permutation::parse(24, "(1,2)").unwrap();
    assert!(c.automorphism_witness(&t).unwrap().is_some());
    assert!(c.is_code_automorphism(&Permutation::identity(12)).is_err());
}

#[test]
fn empty_grid() {
    let g = MogArray::from_word(&BinaryWord(0)).render();
    assert!(!g.contains('•'));
    assert_eq!(g.lines().count(), 7);
}
