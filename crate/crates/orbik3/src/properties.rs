//! Seeded samplers for the invariants that are checked by random instances.

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::codes::{octads, BinaryWord};
use crate::lattice::SublatticeHandle;
use crate::matrix::Matrix;
use crate::perm::{PermGroup, Permutation};
use crate::symmetry::{group_elements, lattice_action};
use crate::{genus, orbifold, Rat};

/// `action(g∘h) = action(g)∘action(h)` on `samples` random pairs.
pub fn homomorphy<R: Rng>(rng: &mut R, samples: usize) -> Result<usize, String> {
    let els = group_elements();
    for _ in 0..samples {
        let g = els.choose(rng).unwrap();
        let h = els.choose(rng).unwrap();
        if lattice_action(&g.compose(h)) != lattice_action(g).compose(&lattice_action(h)) {
            return Err(format!("{g} ∘ {h}"));
        }
    }
    Ok(samples)
}

pub fn random_five_set<R: Rng>(rng: &mut R) -> Vec<usize> {
    let mut labels: Vec<usize> = (1..=24).collect();
    labels.shuffle(rng);
    labels.truncate(5);
    labels.sort_unstable();
    labels
}

/// Every sampled 5-set lies in exactly one octad.
pub fn steiner<R: Rng>(rng: &mut R, samples: usize) -> Result<usize, Vec<usize>> {
    for _ in 0..samples {
        let pts = random_five_set(rng);
        let w = BinaryWord::from_support(&pts).unwrap();
        if octads().iter().filter(|o| o.0 & w.0 == w.0).count() != 1 {
            return Err(pts);
        }
    }
    Ok(samples)
}

/// Elliptic transformation of the orbifold genus through `order`.
pub fn elliptic(order: i64) -> Result<usize, String> {
    let s = genus::orbifold_genus(order).map_err(|e| e.to_string())?;
    genus::elliptic_check(&s).map_err(|(a, b)| format!("c({a},{b})"))
}

fn random_full_rank<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigInt>> {
    loop {
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let x: i64 = if rng.gen_bool(0.7) { 0 } else { rng.gen_range(-3..=3) };
                        BigInt::from(x + (i == j) as i64 * rng.gen_range(1..=3))
                    })
                    .collect()
            })
            .collect();
        if crate::intmat::to_rational(&Matrix::from_rows(rows.clone())).rank() == n {
            return rows;
        }
    }
}

/// For random full-rank sublattices `M` of T, K and P: the Smith form of
/// the Gram of `M` has order `|disc M| = |disc L|·[L:M]²`.
pub fn snf_consistency<R: Rng>(rng: &mut R, samples: usize) -> Result<usize, String> {
    let parents = [orbifold::torus_invariant_lattice(), orbifold::build_k(), orbifold::build_p()];
    for i in 0..samples {
        let parent = &parents[i % parents.len()];
        let h = SublatticeHandle::new(parent, random_full_rank(rng, parent.rank())).map_err(|e| e.to_string())?;
        let m = h.lattice().map_err(|e| e.to_string())?;
        let idx = h.index().map_err(|e| e.to_string())?;
        let disc = m.discriminant().abs();
        let expected = parent.discriminant().abs() * Rat::from_integer(&idx * &idx);
        let snf = m.discriminant_group().map_err(|e| e.to_string())?.order();
        if disc != expected || Rat::from_integer(snf) != disc {
            return Err(format!("rank {} sublattice of index {idx}", parent.rank()));
        }
    }
    Ok(samples)
}

/// The order from Schreier–Sims does not depend on the order or
/// redundancy of the generators.
pub fn order_invariance<R: Rng>(rng: &mut R, degree: usize, gens: &[Permutation], samples: usize) -> Result<BigInt, String> {
    let base = PermGroup::new(degree, gens).map_err(|e| e.to_string())?.order();
    for _ in 0..samples {
        let mut g = gens.to_vec();
        let extra = g.choose(rng).unwrap().then(g.choose(rng).unwrap());
        g.push(extra);
        g.shuffle(rng);
        let o = PermGroup::new(degree, &g).map_err(|e| e.to_string())?.order();
        if o != base {
            return Err(format!("order {o} != {base}"));
        }
    }
    Ok(base)
}
