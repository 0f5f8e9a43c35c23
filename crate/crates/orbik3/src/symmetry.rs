//! The group (Z3)² ⋊ Z4 acting on F3² and on `H²(X, Z)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{add, scale, sub, Lattice, QMatrix, QVec, Rat};
use crate::matrix::Matrix;
use crate::orbifold::{e_index, h2_vec, k_generators, p_generators, Label, OrbifoldK3, E_DIM, H2_DIM, K_DIM};
use crate::scalar::rint;

/// `t ↦ β̃^k t + τ` with `β̃(t1, t2) = (−t2, t1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineSymmetry {
    pub linear_power: u8,
    pub translation: [u8; 2],
}

fn rot(t: Label) -> Label {
    Label::new(-(t.t2 as i64), t.t1 as i64)
}

impl AffineSymmetry {
    pub fn new(linear_power: u8, translation: Label) -> Self {
        AffineSymmetry { linear_power: linear_power % 4, translation: [translation.t1, translation.t2] }
    }

    pub fn identity() -> Self {
        Self::new(0, Label::new(0, 0))
    }

    pub fn alpha1() -> Self {
        Self::new(0, Label::new(1, 0))
    }

    pub fn alpha2() -> Self {
        Self::new(0, Label::new(0, 1))
    }

    pub fn beta() -> Self {
        Self::new(1, Label::new(0, 0))
    }

    pub fn tau(&self) -> Label {
        Label::new(self.translation[0] as i64, self.translation[1] as i64)
    }

    pub fn linear(&self, t: Label) -> Label {
        (0..self.linear_power).fold(t, |t, _| rot(t))
    }

    pub fn apply(&self, t: Label) -> Label {
        self.linear(t).plus(self.tau())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.linear_power + other.linear_power, self.linear(other.tau()).plus(self.tau()))
    }

    pub fn inverse(&self) -> Self {
        let k = (4 - self.linear_power) % 4;
        let lin = Self::new(k, Label::new(0, 0));
        Self::new(k, lin.linear(self.tau()).times(-1))
    }

    pub fn order(&self) -> usize {
        let mut g = *self;
        let mut n = 1;
        while g != Self::identity() {
            g = g.compose(self);
            n += 1;
        }
        n
    }

    pub fn point_map(&self) -> [Label; 9] {
        let mut m = [Label::new(0, 0); 9];
        for t in Label::all() {
            m[t.index()] = self.apply(t);
        }
        m
    }
}

impl fmt::Display for AffineSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β^{}+({},{})", self.linear_power, self.translation[0], self.translation[1])
    }
}

/// All 36 elements, ordered by `(linear_power, t1, t2)`.
pub fn group_elements() -> Vec<AffineSymmetry> {
    let mut v = Vec::with_capacity(36);
    for k in 0..4 {
        for t in Label::all() {
            v.push(AffineSymmetry::new(k, t));
        }
    }
    v
}

/// A signed permutation of the 18 symbols `E_t^(j)` together with an
/// integer matrix on `κ1..κ4` (row `i` is the image of `κ_{i+1}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeAction {
    pub e_target: [usize; E_DIM],
    pub e_sign: [i8; E_DIM],
    pub kappa: [[i64; K_DIM]; K_DIM],
}

impl LatticeAction {
    pub fn identity() -> Self {
        let mut kappa = [[0; K_DIM]; K_DIM];
        for (i, row) in kappa.iter_mut().enumerate() {
            row[i] = 1;
        }
        LatticeAction { e_target: std::array::from_fn(|i| i), e_sign: [1; E_DIM], kappa }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut e_target = [0; E_DIM];
        let mut e_sign = [1; E_DIM];
        for i in 0..E_DIM {
            let mid = other.e_target[i];
            e_target[i] = self.e_target[mid];
            e_sign[i] = other.e_sign[i] * self.e_sign[mid];
        }
        let mut kappa = [[0; K_DIM]; K_DIM];
        for i in 0..K_DIM {
            for j in 0..K_DIM {
                kappa[i][j] = (0..K_DIM).map(|m| other.kappa[i][m] * self.kappa[m][j]).sum();
            }
        }
        LatticeAction { e_target, e_sign, kappa }
    }

    /// Image of a κ-vector.
    pub fn apply_k(&self, v: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); K_DIM];
        for i in 0..K_DIM {
            for j in 0..K_DIM {
                out[j] += &v[i] * rint(self.kappa[i][j]);
            }
        }
        out
    }

    /// Image of an E-vector.
    pub fn apply_e(&self, v: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); E_DIM];
        for i in 0..E_DIM {
            if self.e_sign[i] > 0 {
                out[self.e_target[i]] += &v[i];
            } else {
                out[self.e_target[i]] -= &v[i];
            }
        }
        out
    }

    /// Image of a `(κ | E)` vector.
    pub fn apply(&self, v: &[Rat]) -> QVec {
        h2_vec(&self.apply_k(&v[..K_DIM]), &self.apply_e(&v[K_DIM..]))
    }

    /// Row `i` is the image of the `i`-th coordinate vector.
    pub fn to_matrix(&self) -> QMatrix {
        let mut m = Matrix::zeros(H2_DIM, H2_DIM);
        for i in 0..K_DIM {
            for j in 0..K_DIM {
                m[(i, j)] = rint(self.kappa[i][j]);
            }
        }
        for i in 0..E_DIM {
            m[(K_DIM + i, K_DIM + self.e_target[i])] = rint(self.e_sign[i] as i64);
        }
        m
    }

    /// Swaps two E-symbols and leaves everything else fixed.
    pub fn swap_e(a: usize, b: usize) -> Self {
        let mut g = Self::identity();
        g.e_target.swap(a, b);
        g
    }
}

pub fn lattice_action(g: &AffineSymmetry) -> LatticeAction {
    let odd = g.linear_power % 2 == 1;
    let mut e_target = [0; E_DIM];
    for t in Label::all() {
        for j in 1..=2 {
            let j2 = if odd { 3 - j } else { j };
            e_target[e_index(t, j)] = e_index(g.apply(t), j2);
        }
    }
    let mut act = LatticeAction { e_target, e_sign: [1; E_DIM], ..LatticeAction::identity() };
    if odd {
        act.kappa[2] = [0, 0, 0, 1];
        act.kappa[3] = [0, 0, 1, 0];
    }
    act
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub gram_preserved: bool,
    pub p_preserved: bool,
    pub k_preserved: bool,
    pub glue_preserved: bool,
    /// Sign by which the action multiplies the class of `k_j + p_j`.
    pub disc_signs: Vec<Option<i8>>,
    pub failures: Vec<String>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_symmetry(o: &OrbifoldK3, g: &AffineSymmetry) -> SymmetryReport {
    verify_action(o, &lattice_action(g))
}

pub fn verify_action(o: &OrbifoldK3, act: &LatticeAction) -> SymmetryReport {
    let mut failures = Vec::new();
    let m = act.to_matrix();
    let gram = crate::orbifold::h2_gram();
    let gram_preserved = gram.congruence(&m) == gram;
    if !gram_preserved {
        failures.push("Gram not preserved".to_string());
    }

    let mut p_preserved = true;
    let pb = o.p.basis().expect("P has a basis");
    for i in 0..pb.rows() {
        let img = act.apply_e(pb.row(i));
        if !o.p.contains(&img).unwrap() {
            p_preserved = false;
            failures.push(format!("P basis vector {i} leaves P"));
        }
    }

    let k_gram = crate::orbifold::k_gram();
    let km = Matrix::from_fn(K_DIM, K_DIM, |i, j| rint(act.kappa[i][j]));
    let k_preserved = k_gram.congruence(&km) == k_gram && km.det().abs().is_one();
    if !k_preserved {
        failures.push("K not preserved".to_string());
    }

    let (kg, pg) = (k_generators(), p_generators());
    let mut glue_preserved = true;
    let mut disc_signs = Vec::new();
    for j in 0..3 {
        let img_k = act.apply_k(&kg[j]);
        let img_p = act.apply_e(&pg[j]);
        if !o.h2x.contains(&h2_vec(&img_k, &img_p)).unwrap() {
            glue_preserved = false;
            failures.push(format!("k{0}+p{0} leaves H²(X,Z)", j + 1));
        }
        let sign = [1i8, -1].into_iter().find(|&s| {
            let s = rint(s as i64);
            let dk = sub(&img_k, &scale(&s, &kg[j]));
            let dp = sub(&img_p, &scale(&s, &pg[j]));
            o.k.contains(&dk).unwrap() && o.p.contains(&dp).unwrap()
        });
        disc_signs.push(sign);
    }
    SymmetryReport { gram_preserved, p_preserved, k_preserved, glue_preserved, disc_signs, failures }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulnessReport {
    pub distinct_affine: usize,
    pub distinct_actions: usize,
    pub homomorphism: bool,
    pub sigma_fixed: bool,
}

impl FaithfulnessReport {
    pub fn passed(&self) -> bool {
        self.distinct_affine == 36 && self.distinct_actions == 36 && self.homomorphism && self.sigma_fixed
    }
}

pub fn verify_faithfulness() -> FaithfulnessReport {
    use std::collections::HashSet;
    let els = group_elements();
    let acts: Vec<LatticeAction> = els.iter().map(lattice_action).collect();
    let distinct_affine = els.iter().map(|g| g.point_map()).collect::<HashSet<_>>().len();
    let distinct_actions = acts.iter().collect::<HashSet<_>>().len();
    let mut homomorphism = true;
    for (g, ag) in els.iter().zip(&acts) {
        for (h, ah) in els.iter().zip(&acts) {
            homomorphism &= lattice_action(&g.compose(h)) == ag.compose(ah);
        }
    }
    let sigma = sigma_basis();
    let sigma_fixed = acts.iter().all(|a| sigma.iter().all(|s| &a.apply_k(s) == s));
    FaithfulnessReport { distinct_affine, distinct_actions, homomorphism, sigma_fixed }
}

/// `κ1, κ2, κ3 + κ4`.
pub fn sigma_basis() -> Vec<QVec> {
    use crate::orbifold::kappa;
    vec![kappa(1), kappa(2), add(&kappa(3), &kappa(4))]
}

/// The rank-19 lattice generated by P and `k2 + p2`.
pub fn sigma_perp(o: &OrbifoldK3) -> Lattice {
    let pl = crate::orbifold::p_in_h2(o);
    let b = pl.basis().unwrap();
    let mut gens: Vec<QVec> = (0..b.rows()).map(|i| b.row(i).to_vec()).collect();
    gens.push(h2_vec(&k_generators()[1], &p_generators()[1]));
    Lattice::generated_by(&crate::orbifold::h2_gram(), &gens).expect("independent")
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaPerpReport {
    pub rank: usize,
    pub roots: usize,
    pub roots_in_p: usize,
    pub in_h2x: bool,
    pub orthogonal_to_sigma: bool,
}

impl SigmaPerpReport {
    pub fn passed(&self) -> bool {
        self.rank == 19 && self.roots > 0 && self.roots == self.roots_in_p && self.in_h2x && self.orthogonal_to_sigma
    }
}

pub fn verify_sigma_perp_roots(o: &OrbifoldK3) -> SigmaPerpReport {
    let l = sigma_perp(o);
    let neg = l.scaled(&rint(-1));
    let vecs = neg.short_vectors(&rint(2)).unwrap();
    let pl = crate::orbifold::p_in_h2(o);
    let mut roots_in_p = 0;
    for c in &vecs {
        let v = l.to_ambient_int(c).unwrap();
        if pl.contains(&v).unwrap() {
            roots_in_p += 1;
        }
    }
    let b = l.basis().unwrap();
    let in_h2x = (0..b.rows()).all(|i| o.h2x.contains(b.row(i)).unwrap());
    let gram = crate::orbifold::h2_gram();
    let orthogonal_to_sigma = sigma_basis().iter().all(|s| {
        let s = h2_vec(s, &vec![Rat::zero(); E_DIM]);
        (0..b.rows()).all(|i| gram.bilinear(&s, b.row(i)).is_zero())
    });
    SigmaPerpReport { rank: l.rank(), roots: vecs.len(), roots_in_p, in_h2x, orthogonal_to_sigma }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_structure() {
        let els = group_elements();
        assert_eq!(els.len(), 36);
        assert_eq!(AffineSymmetry::beta().order(), 4);
        let b = AffineSymmetry::beta();
        assert_eq!(b.compose(&AffineSymmetry::alpha1()).compose(&b.inverse()), AffineSymmetry::alpha2());
        for g in &els {
            assert_eq!(g.compose(&g.inverse()), AffineSymmetry::identity());
        }
    }

    #[test]
    fn serialises_plainly() {
        let s = serde_json::to_string(&AffineSymmetry::new(3, Label::new(1, 2))).unwrap();
        assert_eq!(s, r#"{"linear_power":3,"translation":[1,2]}"#);
    }
}
