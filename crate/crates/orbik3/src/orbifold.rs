//! The fixed-point plane F3², the root lattice R ≅ A2^9, the lattices P,
//! P* and K, and the glued lattice H²(X, Z) of the Z3-orbifold K3 surface.
//!
//! Coordinates: the Kummer-like part lives in an 18-dimensional space with
//! basis `E_t^(j)` (index `2·(3 t1 + t2) + j − 1`) and Gram `A2(−1)^9`; the
//! K part in a 4-dimensional space with basis `κ1..κ4`. The glued lattice
//! uses `(κ1..κ4 | E_t^(j))` with the block Gram.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::GlueError;
use crate::gluing::{glue, GlueMap, GluedLattice};
use crate::lattice::{
    add, qmatrix, qvec, scale, sub, zvec_to_q, DiscriminantData, Lattice, QMatrix, QVec, Rat, SublatticeHandle,
};
use crate::matrix::Matrix;
use crate::scalar::{rat, rint};

pub const E_DIM: usize = 18;
pub const K_DIM: usize = 4;
pub const H2_DIM: usize = 22;

/// A point `t = (t1, t2)` of F3², entries in `{0, 1, 2}` with `2 ≡ −1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub t1: u8,
    pub t2: u8,
}

impl Label {
    pub fn new(t1: i64, t2: i64) -> Self {
        Label { t1: t1.rem_euclid(3) as u8, t2: t2.rem_euclid(3) as u8 }
    }

    pub fn index(self) -> usize {
        3 * self.t1 as usize + self.t2 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Label::new((i / 3) as i64, (i % 3) as i64)
    }

    pub fn all() -> Vec<Label> {
        (0..9).map(Label::from_index).collect()
    }

    pub fn plus(self, o: Label) -> Label {
        Label::new(self.t1 as i64 + o.t1 as i64, self.t2 as i64 + o.t2 as i64)
    }

    pub fn times(self, k: i64) -> Label {
        Label::new(self.t1 as i64 * k, self.t2 as i64 * k)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.t1, self.t2)
    }
}

/// The four directions of F3² up to sign.
pub const DIRECTIONS: [(u8, u8); 4] = [(0, 1), (1, 0), (1, 2), (1, 1)];

/// An affine line `{p + s·d : s ∈ F3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineLine {
    pub point: Label,
    pub direction: (u8, u8),
}

impl AffineLine {
    pub fn new(point: Label, direction: (u8, u8)) -> Self {
        // normalise the base point to the smallest point of the line
        let d = Label::new(direction.0 as i64, direction.1 as i64);
        let pts = [point, point.plus(d), point.plus(d.times(2))];
        let point = *pts.iter().min().unwrap();
        let dir = DIRECTIONS.iter().copied().find(|&e| {
            let e = Label::new(e.0 as i64, e.1 as i64);
            e == d || e == d.times(2)
        });
        AffineLine { point, direction: dir.expect("nonzero direction") }
    }

    pub fn points(&self) -> [Label; 3] {
        let d = Label::new(self.direction.0 as i64, self.direction.1 as i64);
        let mut p = [self.point, self.point.plus(d), self.point.plus(d.times(2))];
        p.sort();
        p
    }

    pub fn contains(&self, t: Label) -> bool {
        self.points().contains(&t)
    }

    /// Index of the parallel class in [`DIRECTIONS`].
    pub fn class(&self) -> usize {
        DIRECTIONS.iter().position(|&d| d == self.direction).unwrap()
    }

    pub fn translate(&self, tau: Label) -> AffineLine {
        AffineLine::new(self.point.plus(tau), self.direction)
    }

    /// The three lines parallel to this one (including itself).
    pub fn parallels(&self) -> Vec<AffineLine> {
        let mut v: Vec<AffineLine> = (0..3)
            .map(|s| {
                let shift = if self.direction == (0, 1) { Label::new(s, 0) } else { Label::new(0, s) };
                self.translate(shift)
            })
            .collect();
        v.sort_by_key(|l| l.point);
        v
    }
}

impl fmt::Display for AffineLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.points();
        write!(f, "{{{},{},{}}}", p[0], p[1], p[2])
    }
}

/// All 12 affine lines, grouped by parallel class.
pub fn all_lines() -> Vec<AffineLine> {
    let mut out = Vec::new();
    for d in DIRECTIONS {
        let l = AffineLine::new(Label::new(0, 0), d);
        out.extend(l.parallels());
    }
    out
}

/// `{(0,0),(0,1),(0,2)}`
pub fn l12() -> AffineLine {
    AffineLine::new(Label::new(0, 0), (0, 1))
}

/// `{(0,0),(1,0),(2,0)}`
pub fn l34() -> AffineLine {
    AffineLine::new(Label::new(0, 0), (1, 0))
}

/// `{(0,0),(1,2),(2,1)}`
pub fn l01() -> AffineLine {
    AffineLine::new(Label::new(0, 0), (1, 2))
}

/// `{(0,0),(1,1),(2,2)}`
pub fn l00() -> AffineLine {
    AffineLine::new(Label::new(0, 0), (1, 1))
}

pub fn e_index(t: Label, j: usize) -> usize {
    debug_assert!(j == 1 || j == 2);
    2 * t.index() + j - 1
}

/// `E_t^(j)` in the 18-dimensional E-space.
pub fn e(t: Label, j: usize) -> QVec {
    let mut v = vec![Rat::zero(); E_DIM];
    v[e_index(t, j)] = Rat::one();
    v
}

/// `E_t = E_t^(1) + 2 E_t^(2)`.
pub fn e_comp(t: Label) -> QVec {
    let mut v = vec![Rat::zero(); E_DIM];
    v[e_index(t, 1)] = rint(1);
    v[e_index(t, 2)] = rint(2);
    v
}

/// `c · Σ_{t ∈ pts} E_t`.
pub fn e_sum(pts: &[Label], c: &Rat) -> QVec {
    let mut v = vec![Rat::zero(); E_DIM];
    for &t in pts {
        v = add(&v, &e_comp(t));
    }
    scale(c, &v)
}

/// `(1/3) Σ_{t ∈ L} E_t`.
pub fn third_line(l: &AffineLine) -> QVec {
    e_sum(&l.points(), &rat(1, 3))
}

pub fn a2_neg() -> QMatrix {
    qmatrix(&[&[-2, 1], &[1, -2]])
}

pub fn e_space_gram() -> QMatrix {
    let mut g = a2_neg();
    for _ in 1..9 {
        g = g.direct_sum(&a2_neg());
    }
    g
}

pub fn k_gram() -> QMatrix {
    qmatrix(&[&[2, 1, 0, 0], &[1, 2, 0, 0], &[0, 0, 0, 3], &[0, 0, 3, 0]])
}

/// Block Gram of `(κ1..κ4 | E_t^(j))`.
pub fn h2_gram() -> QMatrix {
    k_gram().direct_sum(&e_space_gram())
}

pub fn embed_k(v: &[Rat]) -> QVec {
    v.iter().cloned().chain(std::iter::repeat_n(Rat::zero(), E_DIM)).collect()
}

pub fn embed_e(v: &[Rat]) -> QVec {
    std::iter::repeat_n(Rat::zero(), K_DIM).chain(v.iter().cloned()).collect()
}

pub fn kappa(i: usize) -> QVec {
    let mut v = vec![Rat::zero(); K_DIM];
    v[i - 1] = Rat::one();
    v
}

/// A vector of `K ⊗ Q` together with the push-forward expression it
/// represents.
#[derive(Clone, Debug)]
pub struct KVector {
    pub coords: QVec,
    pub provenance: &'static str,
}

/// Images of the torus classes, in κ-coordinates.
pub fn torus_images() -> Vec<KVector> {
    vec![
        KVector { coords: qvec(&[-1, -1, 0, 0]), provenance: "π*(μ13 − μ24)" },
        KVector { coords: qvec(&[1, -2, 0, 0]), provenance: "π*(μ14 + μ23 − μ24)" },
        KVector { coords: qvec(&[0, 0, 1, 0]), provenance: "π*μ12" },
        KVector { coords: qvec(&[0, 0, 0, 1]), provenance: "π*μ34" },
    ]
}

/// `π*(μ12 − μ34 + μ14 + μ23 − μ24)`
pub fn kappa_type_iii() -> KVector {
    KVector { coords: qvec(&[1, -2, 1, -1]), provenance: "π*(μ12 − μ34 + μ14 + μ23 − μ24)" }
}

/// `π*(μ12 − μ34 + μ14 + μ23 − μ13)`
pub fn kappa_type_iv() -> KVector {
    KVector { coords: qvec(&[2, -1, 1, -1]), provenance: "π*(μ12 − μ34 + μ14 + μ23 − μ13)" }
}

/// `π*(H²(T, Z)^{Z3})` with the Gram of its push-forward basis.
pub fn torus_invariant_lattice() -> Lattice {
    let rows: Vec<QVec> = torus_images().into_iter().map(|k| k.coords).collect();
    Lattice::from_basis(&k_gram(), Matrix::from_rows(rows)).expect("independent")
}

pub fn build_k() -> Lattice {
    Lattice::from_basis(&k_gram(), Matrix::identity(K_DIM)).expect("identity basis")
}

/// `k1, k2, k3` in κ-coordinates.
pub fn k_generators() -> Vec<QVec> {
    let third = rat(1, 3);
    vec![
        scale(&third, &qvec(&[2, -1, 1, 1])),
        scale(&third, &qvec(&[0, 0, 1, -1])),
        scale(&third, &qvec(&[2, -1, -1, -1])),
    ]
}

/// The 18 generators `E_t^(j)` of R.
pub fn root_generators() -> Vec<QVec> {
    Label::all().into_iter().flat_map(|t| [e(t, 1), e(t, 2)]).collect()
}

pub fn build_r() -> Lattice {
    Lattice::from_basis(&e_space_gram(), Matrix::identity(E_DIM)).expect("identity basis")
}

/// `v1, v2, v3`.
pub fn v_generators() -> Vec<QVec> {
    let third = rat(1, 3);
    let shift = |l: AffineLine, tau: Label| l.translate(tau).points();
    let v1 = sub(&third_line(&l12()), &e_sum(&shift(l12(), Label::new(1, 0)), &third));
    let v2 = sub(&third_line(&l34()), &e_sum(&shift(l34(), Label::new(0, 1)), &third));
    let v3 = e_sum(&Label::all(), &third);
    vec![v1, v2, v3]
}

/// `p1, p2, p3`.
pub fn p_generators() -> Vec<QVec> {
    vec![
        add(&third_line(&l34()), &third_line(&l00())),
        add(&third_line(&l12()), &third_line(&l34())),
        add(&third_line(&l12()), &third_line(&l00())),
    ]
}

pub fn build_p() -> Lattice {
    let mut gens = root_generators();
    gens.extend(v_generators());
    Lattice::generated_by(&e_space_gram(), &gens).expect("P generators")
}

pub fn build_p_dual() -> Lattice {
    let mut gens = root_generators();
    gens.extend(all_lines().iter().map(third_line));
    Lattice::generated_by(&e_space_gram(), &gens).expect("P* generators")
}

/// Discriminant data of P on the generators `p1, p2, p3`.
pub fn p_discriminant(p: &Lattice) -> DiscriminantData {
    let lifts = p_generators().iter().map(|v| p.coords(v).unwrap().unwrap()).collect();
    DiscriminantData::with_generators(p, lifts).expect("p_j generate P*/P")
}

/// Discriminant data of K on the generators `k1, k2, k3`.
pub fn k_discriminant(k: &Lattice) -> DiscriminantData {
    let lifts = k_generators().iter().map(|v| k.coords(v).unwrap().unwrap()).collect();
    DiscriminantData::with_generators(k, lifts).expect("k_j generate K*/K")
}

/// `γ(k_j + K) = p_j + P`.
pub fn k3_glue_map(k: &Lattice, p: &Lattice) -> GlueMap {
    let images = p_generators().iter().map(|v| p.coords(v).unwrap().unwrap()).collect();
    GlueMap::new(k_discriminant(k), p_discriminant(p), images)
}

/// Everything built once.
pub struct OrbifoldK3 {
    pub r: Lattice,
    pub p: Lattice,
    pub p_dual: Lattice,
    pub k: Lattice,
    pub glued: GluedLattice,
    /// H²(X, Z) in `(κ | E)` coordinates.
    pub h2x: Lattice,
}

pub fn build_h2x() -> Result<OrbifoldK3, GlueError> {
    let (r, p, p_dual, k) = (build_r(), build_p(), build_p_dual(), build_k());
    let gamma = k3_glue_map(&k, &p);
    let glued = glue(&k, &p, &gamma)?;
    let h2x = glued.embed_direct_sum()?;
    Ok(OrbifoldK3 { r, p, p_dual, k, glued, h2x })
}

/// Shared instance of [`build_h2x`].
pub fn orbifold() -> &'static OrbifoldK3 {
    static CELL: OnceLock<OrbifoldK3> = OnceLock::new();
    CELL.get_or_init(|| build_h2x().expect("K and P glue"))
}

/// `(κ part, E part)` joined into a 22-vector.
pub fn h2_vec(k: &[Rat], e: &[Rat]) -> QVec {
    k.iter().chain(e).cloned().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MinNormReport {
    pub below_two: usize,
    pub norm_two: usize,
    pub norm_two_in_r: usize,
    pub norm_two_outside_p: usize,
    /// Every norm-2 vector of `P* ∖ P` is supported on the points of an
    /// affine line.
    pub line_shaped: bool,
}

impl MinNormReport {
    pub fn passed(&self) -> bool {
        self.below_two == 0 && self.norm_two > 0 && self.line_shaped
    }
}

/// Enumerates `P*(−1)` up to norm 2.
pub fn verify_min_norm_in_p_dual(o: &OrbifoldK3) -> MinNormReport {
    let pd = o.p_dual.scaled(&rint(-1));
    let two = rint(2);
    let vecs = pd.short_vectors(&two).expect("definite");
    let mut rep = MinNormReport { below_two: 0, norm_two: 0, norm_two_in_r: 0, norm_two_outside_p: 0, line_shaped: true };
    let lines = all_lines();
    for c in &vecs {
        let q = zvec_to_q(c);
        let norm = pd.inner_coords(&q, &q);
        if norm < two {
            rep.below_two += 1;
            continue;
        }
        rep.norm_two += 1;
        let v = pd.to_ambient(&q).unwrap();
        if o.r.contains(&v).unwrap() {
            rep.norm_two_in_r += 1;
            continue;
        }
        if o.p.contains(&v).unwrap() {
            continue;
        }
        rep.norm_two_outside_p += 1;
        let support: Vec<Label> = Label::all()
            .into_iter()
            .filter(|&t| !v[e_index(t, 1)].is_zero() || !v[e_index(t, 2)].is_zero())
            .collect();
        let ok = support.len() == 3 && lines.iter().any(|l| support.iter().all(|&t| l.contains(t)));
        rep.line_shaped &= ok;
    }
    rep
}

/// The four families of glue vectors: for each type, the κ-part and the
/// direction class of the lines, with the sign of the E-part.
pub fn gluelist_families() -> Vec<(&'static str, QVec, AffineLine, Rat)> {
    let third = rat(1, 3);
    vec![
        ("i", scale(&third, &kappa(3)), l12(), third.clone()),
        ("ii", scale(&third, &kappa(4)), l34(), -third.clone()),
        ("iii", scale(&third, &kappa_type_iii().coords), l01(), third.clone()),
        ("iv", scale(&third, &kappa_type_iv().coords), l00(), third),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct GluelistReport {
    pub members: usize,
    pub total: usize,
    pub wrong_sign_rejected: bool,
    pub differences_in_p: bool,
}

impl GluelistReport {
    pub fn passed(&self) -> bool {
        self.members == self.total && self.wrong_sign_rejected && self.differences_in_p
    }
}

pub fn verify_gluelist(o: &OrbifoldK3) -> GluelistReport {
    let mut members = 0;
    let mut total = 0;
    let mut differences_in_p = true;
    for (_, kpart, line, sign) in gluelist_families() {
        let family: Vec<QVec> = line
            .parallels()
            .iter()
            .map(|l| h2_vec(&kpart, &scale(&sign, &e_sum(&l.points(), &Rat::one()))))
            .collect();
        for v in &family {
            total += 1;
            if o.h2x.contains(v).unwrap() {
                members += 1;
            }
        }
        for a in &family {
            for b in &family {
                let d = sub(a, b);
                let e_part = &d[K_DIM..];
                differences_in_p &= d[..K_DIM].iter().all(|x| x.is_zero()) && o.p.contains(e_part).unwrap();
            }
        }
    }
    // type (ii) with the opposite sign
    let third = rat(1, 3);
    let wrong = h2_vec(&scale(&third, &kappa(4)), &third_line(&l34()));
    let wrong_sign_rejected = !o.h2x.contains(&wrong).unwrap();
    GluelistReport { members, total, wrong_sign_rejected, differences_in_p }
}

/// `g1, g2, g3, g4, g4′` in `(κ | E)` coordinates.
pub fn g_vectors() -> Vec<QVec> {
    let third = rat(1, 3);
    let pts = |xs: &[(i64, i64)]| xs.iter().map(|&(a, b)| Label::new(a, b)).collect::<Vec<_>>();
    vec![
        h2_vec(&scale(&third, &kappa(3)), &e_sum(&pts(&[(0, 0), (0, 1), (0, 2)]), &third)),
        h2_vec(&scale(&third, &kappa(4)), &e_sum(&pts(&[(0, 1), (1, 1), (2, 1)]), &-third.clone())),
        h2_vec(&scale(&third, &kappa_type_iii().coords), &e_sum(&pts(&[(0, 1), (1, 0), (2, 2)]), &third)),
        h2_vec(&scale(&third, &kappa_type_iv().coords), &e_sum(&pts(&[(0, 0), (1, 1), (2, 2)]), &third)),
        h2_vec(&scale(&third, &kappa_type_iv().coords), &e_sum(&pts(&[(0, 2), (1, 0), (2, 1)]), &third)),
    ]
}

/// `T_X = span{κ1, κ2}` and the Kähler class `ω = κ3 + κ4`.
pub fn transcendental_and_kahler() -> (Lattice, QVec) {
    let tx = Lattice::from_basis(&k_gram(), Matrix::from_rows(vec![kappa(1), kappa(2)])).expect("independent");
    (tx, add(&kappa(3), &kappa(4)))
}

/// `K` as a sublattice of `H²(X, Z)`.
pub fn k_in_h2x(o: &OrbifoldK3) -> SublatticeHandle {
    let gens: Vec<QVec> = (1..=4).map(|i| embed_k(&kappa(i))).collect();
    SublatticeHandle::from_ambient(&o.h2x, &gens).unwrap().expect("K ⊂ H²(X,Z)")
}

/// `P` embedded in the 22-dimensional coordinates.
pub fn p_in_h2(o: &OrbifoldK3) -> Lattice {
    let b = o.p.basis().unwrap();
    let rows = (0..b.rows()).map(|i| embed_e(b.row(i))).collect();
    Lattice::from_basis(&h2_gram(), Matrix::from_rows(rows)).unwrap()
}

/// Symbol names of the 22 coordinates.
pub fn h2_labels() -> Vec<String> {
    let mut v: Vec<String> = (1..=4).map(|i| format!("κ{i}")).collect();
    for t in Label::all() {
        for j in 1..=2 {
            v.push(format!("E_{t}^({j})"));
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_of_the_plane() {
        let lines = all_lines();
        assert_eq!(lines.len(), 12);
        for c in 0..4 {
            assert_eq!(lines.iter().filter(|l| l.class() == c).count(), 3);
        }
        assert_eq!(l01().to_string(), "{00,12,21}");
        assert_eq!(l12().to_string(), "{00,01,02}");
    }

    #[test]
    fn composite_norm() {
        let g = e_space_gram();
        let t = Label::new(1, 2);
        assert_eq!(g.bilinear(&e_comp(t), &e_comp(t)), rint(-6));
        for l in all_lines() {
            let v = third_line(&l);
            assert_eq!(g.bilinear(&v, &v), rint(-2));
        }
    }
}
