//! The Niemeier lattice N of root type A2^12, the embedding of P(−1) into
//! it, lifts of the orbifold symmetries and the extended-E6 checks.
//!
//! Coordinates: `Ẽ_j^(ℓ)` sits at index `2(j−1) + (ℓ−1)`, `j ∈ 1..=12`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::codes::{build_c12, TernaryCode, TernaryWord};
use crate::gluing::{extend_automorphism, glue, GlueMap, GluedLattice};
use crate::lattice::{add, is_integral_vec, qmatrix, scale, sub, DiscriminantData, Lattice, QVec, SublatticeHandle};
use crate::matrix::Matrix;
use crate::orbifold::{build_p, e, e_index, e_space_gram, e_sum, l12, l34, p_generators, v_generators, Label, E_DIM};
use crate::perm::Permutation;
use crate::scalar::{rat, rint};
use crate::symmetry::{group_elements, lattice_action, AffineSymmetry, LatticeAction};
use crate::{QMatrix, Rat};

pub const N_DIM: usize = 24;

pub fn n_index(block: usize, l: usize) -> usize {
    debug_assert!((1..=12).contains(&block) && (l == 1 || l == 2));
    2 * (block - 1) + l - 1
}

/// `Ẽ_j^(ℓ)`.
pub fn et(block: usize, l: usize) -> QVec {
    let mut v = vec![Rat::zero(); N_DIM];
    v[n_index(block, l)] = Rat::one();
    v
}

/// `Ẽ_j = Ẽ_j^(1) + 2 Ẽ_j^(2)`.
pub fn et_comp(block: usize) -> QVec {
    add(&et(block, 1), &scale(&rint(2), &et(block, 2)))
}

pub fn n_gram() -> QMatrix {
    let a2 = qmatrix(&[&[2, -1], &[-1, 2]]);
    let mut g = a2.clone();
    for _ in 1..12 {
        g = g.direct_sum(&a2);
    }
    g
}

/// `(1/3) Σ_j c_j Ẽ_j` for a ternary word `c`.
pub fn glue_vector(w: &TernaryWord) -> QVec {
    let mut v = vec![Rat::zero(); N_DIM];
    for (j, &c) in w.0.iter().enumerate() {
        v = add(&v, &scale(&rat(c as i64, 3), &et_comp(j + 1)));
    }
    v
}

/// Glue class of a vector of `⊕ A2*`, or `None` if it is not in the dual
/// of R̃.
pub fn glue_word(v: &[Rat]) -> Option<TernaryWord> {
    let mut w = [0i8; 12];
    for (j, slot) in w.iter_mut().enumerate() {
        let (a, b) = (&v[2 * j], &v[2 * j + 1]);
        let c = a * rint(3);
        if !c.is_integer() || !(b - a * rint(2)).is_integer() {
            return None;
        }
        let c = c.to_integer() % num_bigint::BigInt::from(3);
        let c: i64 = c.try_into().unwrap();
        *slot = match c.rem_euclid(3) {
            0 => 0,
            1 => 1,
            _ => -1,
        };
    }
    Some(TernaryWord(w))
}

pub struct NiemeierN {
    pub code: TernaryCode,
    /// `w1..w6`.
    pub w: Vec<QVec>,
    pub lattice: Lattice,
    /// R̃, the A2^12 root lattice.
    pub roots_lattice: Lattice,
    roots: OnceLock<Vec<QVec>>,
}

impl NiemeierN {
    /// Membership from the glue code: the class word must be a codeword.
    pub fn contains(&self, v: &[Rat]) -> bool {
        glue_word(v).is_some_and(|w| self.code.contains(&w))
    }

    /// Norm-2 vectors as ambient coordinates.
    pub fn roots(&self) -> &[QVec] {
        self.roots.get_or_init(|| {
            let vs = self.lattice.short_vectors(&rint(2)).expect("definite");
            vs.iter().map(|c| self.lattice.to_ambient_int(c).unwrap()).collect()
        })
    }
}

pub fn build_n() -> NiemeierN {
    let code = build_c12();
    let w: Vec<QVec> = code.generators.iter().map(glue_vector).collect();
    let g = n_gram();
    let roots_lattice = Lattice::from_basis(&g, Matrix::identity(N_DIM)).expect("identity basis");
    let mut gens: Vec<QVec> = (0..N_DIM).map(|i| crate::lattice::zvec_to_q(&crate::lattice::unit(N_DIM, i))).collect();
    gens.extend(w.iter().cloned());
    let lattice = Lattice::generated_by(&g, &gens).expect("N generators");
    NiemeierN { code, w, lattice, roots_lattice, roots: OnceLock::new() }
}

/// Shared instance of [`build_n`].
pub fn niemeier() -> &'static NiemeierN {
    static CELL: OnceLock<NiemeierN> = OnceLock::new();
    CELL.get_or_init(build_n)
}

#[derive(Clone, Debug, Serialize)]
pub struct NReport {
    pub even: bool,
    pub abs_disc: String,
    pub rank: usize,
    pub w1_norm: String,
    pub roots: usize,
    pub roots_in_r: bool,
    pub code_membership_agrees: bool,
}

impl NReport {
    pub fn passed(&self) -> bool {
        self.even && self.abs_disc == "1" && self.rank == 24 && self.w1_norm == "4" && self.roots == 72 && self.roots_in_r
            && self.code_membership_agrees
    }
}

pub fn verify_n(n: &NiemeierN) -> NReport {
    let g = n_gram();
    let roots = n.roots();
    let basis = n.lattice.basis().unwrap();
    let agrees = (0..basis.rows()).all(|i| n.contains(basis.row(i)))
        && !n.contains(&scale(&rat(1, 3), &et_comp(1)))
        && n.code.words().iter().all(|c| n.lattice.contains(&glue_vector(c)).unwrap());
    NReport {
        even: n.lattice.is_even(),
        abs_disc: n.lattice.discriminant().abs().to_string(),
        rank: n.lattice.rank(),
        w1_norm: g.bilinear(&n.w[0], &n.w[0]).to_string(),
        roots: roots.len(),
        roots_in_r: roots.iter().all(|r| is_integral_vec(r)),
        code_membership_agrees: agrees,
    }
}

/// Block images of `E_t` under ι, with sign, indexed by `t.index()`.
pub const IOTA_BLOCKS: [(i8, usize); 9] = [(1, 6), (1, 4), (1, 7), (-1, 5), (-1, 3), (-1, 2), (1, 8), (1, 1), (1, 9)];

/// ι on the E-space.
pub fn iota(v: &[Rat]) -> QVec {
    let mut out = vec![Rat::zero(); N_DIM];
    for t in Label::all() {
        let (s, b) = IOTA_BLOCKS[t.index()];
        for l in 1..=2 {
            out[n_index(b, l)] = &v[e_index(t, l)] * rint(s as i64);
        }
    }
    out
}

/// `P̃ = ι(P)` inside the ambient of N.
pub fn p_tilde() -> Lattice {
    let p = build_p();
    let b = p.basis().unwrap();
    let gens: Vec<QVec> = (0..b.rows()).map(|i| iota(b.row(i))).collect();
    Lattice::generated_by(&n_gram(), &gens).expect("ι(P)")
}

/// `K̃ = A2,10 ⊕ A2,11 ⊕ A2,12`.
pub fn k_tilde() -> Lattice {
    let rows: Vec<QVec> = (10..=12).flat_map(|j| [et(j, 1), et(j, 2)]).collect();
    Lattice::from_basis(&n_gram(), Matrix::from_rows(rows)).expect("blocks 10-12")
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub isometry: bool,
    pub v_images: [bool; 3],
    pub span_matches: bool,
    pub primitive: bool,
    pub complement_is_blocks: bool,
    pub in_n: bool,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.isometry && self.v_images.iter().all(|&b| b) && self.span_matches && self.primitive && self.complement_is_blocks
            && self.in_n
    }
}

pub fn embed_and_verify_iota(n: &NiemeierN) -> EmbeddingReport {
    let ge = e_space_gram();
    let gn = n_gram();
    let m = Matrix::from_rows((0..E_DIM).map(|i| iota(Matrix::<Rat>::identity(E_DIM).row(i))).collect());
    let isometry = gn.congruence(&m) == ge.neg();

    let v = v_generators();
    let w = &n.w;
    let v3 = add(&add(&add(&w[0], &w[1]), &w[2]), &sub(&sub(&et_comp(1), &et_comp(2)), &et_comp(3)));
    let v_images = [iota(&v[0]) == w[0], iota(&v[1]) == w[1], iota(&v[2]) == v3];

    let pt = p_tilde();
    let mut gens: Vec<QVec> = (1..=9).flat_map(|j| [et(j, 1), et(j, 2)]).collect();
    gens.extend(w[..3].iter().cloned());
    let span = Lattice::generated_by(&gn, &gens).unwrap();
    let span_matches = span.same_as(&pt).unwrap();

    let pb = pt.basis().unwrap();
    let rows: Vec<QVec> = (0..pb.rows()).map(|i| pb.row(i).to_vec()).collect();
    let in_n = rows.iter().all(|r| n.contains(r));
    let h = SublatticeHandle::from_ambient(&n.lattice, &rows).unwrap();
    let (primitive, complement_is_blocks) = match h {
        Some(h) => {
            let c = h.orthogonal_complement().unwrap().lattice().unwrap();
            (h.is_primitive(), c.same_as(&k_tilde()).unwrap())
        }
        None => (false, false),
    };
    EmbeddingReport { isometry, v_images, span_matches, primitive, complement_is_blocks, in_n }
}

/// `p̃_j = ι(p_j)`.
pub fn p_tilde_generators() -> Vec<QVec> {
    p_generators().iter().map(|p| iota(p)).collect()
}

/// Images `γ̃(p̃_j)` as ambient vectors.
pub fn gamma_tilde_images() -> Vec<QVec> {
    let third = rat(1, 3);
    vec![scale(&third, &et_comp(10)), scale(&-third.clone(), &et_comp(12)), scale(&-third, &et_comp(11))]
}

/// `p̃_j + γ̃(p̃_j)` differs from these combinations of `w1..w6` by a root
/// lattice vector.
pub const GLUE_CERTIFICATES: [[i64; 6]; 3] = [[0, 1, 1, 1, 0, 0], [1, 1, 0, 0, 0, -1], [1, 0, 1, 0, -1, 0]];

pub fn w_combination(n: &NiemeierN, c: &[i64; 6]) -> QVec {
    c.iter().zip(&n.w).fold(vec![Rat::zero(); N_DIM], |acc, (&k, w)| add(&acc, &scale(&rint(k), w)))
}

pub struct NGluing {
    pub p_tilde: Lattice,
    pub k_tilde: Lattice,
    pub gamma: GlueMap,
    pub glued: GluedLattice,
}

pub fn gluing_in_n() -> NGluing {
    let pt = p_tilde();
    let kt = k_tilde();
    let lifts: Vec<QVec> = p_tilde_generators().iter().map(|v| pt.coords(v).unwrap().unwrap()).collect();
    let src = DiscriminantData::with_generators(&pt, lifts).expect("p̃_j generate");
    let third = rat(1, 3);
    let k_lifts: Vec<QVec> = (10..=12).map(|j| kt.coords(&scale(&third, &et_comp(j))).unwrap().unwrap()).collect();
    let tgt = DiscriminantData::with_generators(&kt, k_lifts).expect("(1/3)Ẽ_j generate");
    let images: Vec<QVec> = gamma_tilde_images().iter().map(|v| kt.coords(v).unwrap().unwrap()).collect();
    let gamma = GlueMap::new(src, tgt, images);
    let glued = glue(&pt, &kt, &gamma).expect("compatible forms");
    NGluing { p_tilde: pt, k_tilde: kt, gamma, glued }
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingReport {
    pub certificates: [bool; 3],
    pub images_in_n: [bool; 3],
    pub compatible: bool,
    pub q_p: Vec<String>,
    pub q_k: Vec<String>,
    pub equals_n: bool,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().chain(&self.images_in_n).all(|&b| b) && self.compatible && self.equals_n
    }
}

pub fn verify_gluing_in_n(n: &NiemeierN, ng: &NGluing) -> GluingReport {
    let pg = p_tilde_generators();
    let imgs = gamma_tilde_images();
    let mut certificates = [false; 3];
    let mut images_in_n = [false; 3];
    for j in 0..3 {
        let x = add(&pg[j], &imgs[j]);
        images_in_n[j] = n.contains(&x);
        certificates[j] = is_integral_vec(&sub(&x, &w_combination(n, &GLUE_CERTIFICATES[j])));
    }
    let compatible = ng.gamma.check_compatible().unwrap_or(false);
    let q = |d: &DiscriminantData| d.q_values.iter().map(|x| crate::scalar::mod_rational(x, 2).to_string()).collect();
    let equals_n = ng.glued.embed_shared().map(|l| l.same_as(&n.lattice).unwrap()).unwrap_or(false);
    GluingReport {
        certificates,
        images_in_n,
        compatible,
        q_p: q(&ng.gamma.source),
        q_k: q(&ng.gamma.target),
        equals_n,
    }
}

/// A signed permutation of coordinates: coordinate `i` goes to
/// `target[i]` with sign `sign[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPerm {
    pub target: Vec<usize>,
    pub sign: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { target: (0..n).collect(), sign: vec![1; n] }
    }

    /// From a block table `(sign, target block, swap ℓ)` on the 12 A2 blocks.
    pub fn from_blocks(table: &[(i8, usize, bool); 12]) -> Self {
        let mut s = SignedPerm::identity(N_DIM);
        for (j, &(sg, b, swap)) in table.iter().enumerate() {
            for l in 1..=2 {
                let tl = if swap { 3 - l } else { l };
                s.target[n_index(j + 1, l)] = n_index(b, tl);
                s.sign[n_index(j + 1, l)] = sg;
            }
        }
        s
    }

    pub fn apply(&self, v: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.target[i]] = x * rint(self.sign[i] as i64);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.target.len();
        let mut s = SignedPerm::identity(n);
        for i in 0..n {
            let t = other.target[i];
            s.target[i] = self.target[t];
            s.sign[i] = self.sign[t] * other.sign[i];
        }
        s
    }

    /// Row-coordinate matrix on the ambient basis.
    pub fn to_matrix(&self) -> QMatrix {
        let n = self.target.len();
        Matrix::from_fn(n, n, |i, j| if self.target[i] == j { rint(self.sign[i] as i64) } else { Rat::zero() })
    }

    /// Induced permutation of the A2 blocks, if the map respects them.
    pub fn block_permutation(&self) -> Option<Permutation> {
        let imgs: Vec<usize> = (0..12).map(|j| self.target[2 * j] / 2).collect();
        if (0..12).any(|j| self.target[2 * j + 1] / 2 != imgs[j]) {
            return None;
        }
        Permutation::from_images(imgs).ok()
    }
}

fn blocks(signed: [(i8, usize); 9], swap: bool) -> [(i8, usize, bool); 12] {
    let mut t = [(1, 0, false); 12];
    for (j, (s, b)) in signed.into_iter().enumerate() {
        t[j] = (s, b, swap);
    }
    t[9] = (1, 10, false);
    t[10] = (1, 11, false);
    t[11] = (1, 12, swap);
    t
}

/// `α̃¹_*`.
pub fn alpha1_lift() -> SignedPerm {
    SignedPerm::from_blocks(&blocks(
        [(1, 4), (-1, 9), (-1, 1), (-1, 3), (-1, 8), (-1, 5), (-1, 2), (1, 6), (1, 7)],
        false,
    ))
}

/// `α̃²_*`.
pub fn alpha2_lift() -> SignedPerm {
    SignedPerm::from_blocks(&blocks([(1, 9), (1, 5), (1, 2), (1, 7), (1, 3), (1, 4), (1, 6), (1, 1), (1, 8)], false))
}

/// `β̃_*`.
pub fn beta_lift() -> SignedPerm {
    SignedPerm::from_blocks(&blocks([(1, 9), (1, 3), (-1, 1), (1, 8), (-1, 4), (1, 6), (-1, 5), (1, 7), (-1, 2)], true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    Alpha1,
    Alpha2,
    Beta,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Alpha1, Generator::Alpha2, Generator::Beta];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Alpha1 => "alpha1",
            Generator::Alpha2 => "alpha2",
            Generator::Beta => "beta",
        }
    }

    pub fn symmetry(self) -> AffineSymmetry {
        match self {
            Generator::Alpha1 => AffineSymmetry::alpha1(),
            Generator::Alpha2 => AffineSymmetry::alpha2(),
            Generator::Beta => AffineSymmetry::beta(),
        }
    }

    pub fn lift(self) -> SignedPerm {
        match self {
            Generator::Alpha1 => alpha1_lift(),
            Generator::Alpha2 => alpha2_lift(),
            Generator::Beta => beta_lift(),
        }
    }

    /// Stated images of `w1..w6` modulo R̃, as coefficient rows over the w's.
    pub fn w_images(self) -> [[i64; 6]; 6] {
        match self {
            Generator::Alpha1 => [
                [0, -1, -1, 0, 0, 0],
                [0, 1, 0, 0, 0, 0],
                [1, 1, -1, 0, 0, 0],
                [0, -1, 1, 1, 0, 0],
                [0, 0, 1, 0, 1, 0],
                [0, -1, -1, 0, 0, 1],
            ],
            Generator::Alpha2 => [
                [1, 0, 0, 0, 0, 0],
                [-1, 0, -1, 0, 0, 0],
                [1, 1, -1, 0, 0, 0],
                [0, 0, -1, 1, 0, 0],
                [1, 0, -1, 0, 1, 0],
                [-1, 0, -1, 0, 0, 1],
            ],
            Generator::Beta => [
                [0, -1, 0, 0, 0, 0],
                [-1, 1, 1, 0, 0, 0],
                [0, -1, 1, 0, 0, 0],
                [0, 0, 1, 1, 0, 0],
                [0, -1, 1, 0, 1, 0],
                [0, 1, 1, 0, 0, -1],
            ],
        }
    }

    /// Stated block permutation.
    pub fn theta(self) -> &'static str {
        match self {
            Generator::Alpha1 => "(1,4,3)(2,9,7)(5,8,6)",
            Generator::Alpha2 => "(1,9,8)(2,5,3)(4,7,6)",
            Generator::Beta => "(1,9,2,3)(4,8,7,5)",
        }
    }
}

/// `ι ∘ g_* = L ∘ ι` on every `E_t^(j)`.
pub fn intertwines(g: &LatticeAction, lift: &SignedPerm) -> bool {
    Label::all()
        .into_iter()
        .all(|t| (1..=2).all(|j| iota(&g.apply_e(&e(t, j))) == lift.apply(&iota(&e(t, j)))))
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub generator: &'static str,
    pub gram_preserved: bool,
    pub intertwines: bool,
    pub w_images: [bool; 6],
    pub n_preserved: bool,
    pub roots_to_roots: bool,
    pub theta: String,
    pub theta_matches: bool,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.gram_preserved && self.intertwines && self.w_images.iter().all(|&b| b) && self.n_preserved
            && self.roots_to_roots && self.theta_matches
    }
}

/// Induced permutation of the 12 blocks.
pub fn project_to_m12(l: &SignedPerm) -> Option<Permutation> {
    l.block_permutation()
}

pub fn lift_symmetry(n: &NiemeierN, g: Generator) -> LiftReport {
    let lift = g.lift();
    let gn = n_gram();
    let m = lift.to_matrix();
    let act = lattice_action(&g.symmetry());
    let mut w_images = [false; 6];
    for (i, c) in g.w_images().iter().enumerate() {
        w_images[i] = is_integral_vec(&sub(&lift.apply(&n.w[i]), &w_combination(n, c)));
    }
    let basis = n.lattice.basis().unwrap();
    let n_preserved = (0..basis.rows()).all(|i| n.contains(&lift.apply(basis.row(i))))
        && n.w.iter().all(|w| n.contains(&lift.apply(w)));
    let roots = n.roots();
    let roots_to_roots = roots.iter().all(|r| {
        let x = lift.apply(r);
        gn.bilinear(&x, &x) == rint(2) && n.contains(&x)
    });
    let theta = project_to_m12(&lift).map(|p| p.to_string()).unwrap_or_default();
    LiftReport {
        generator: g.name(),
        gram_preserved: gn.congruence(&m) == gn,
        intertwines: intertwines(&act, &lift),
        w_images,
        n_preserved,
        roots_to_roots,
        theta_matches: theta == g.theta(),
        theta,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftGroupReport {
    pub order: usize,
    pub consistent: bool,
    pub intertwines_all: bool,
    pub projection_injective: bool,
    pub projection_multiplicative: bool,
}

impl LiftGroupReport {
    pub fn passed(&self) -> bool {
        self.order == 36 && self.consistent && self.intertwines_all && self.projection_injective
            && self.projection_multiplicative
    }
}

/// Lifts of all 36 symmetries, by extending along words in the generators.
pub fn lift_group() -> Result<HashMap<AffineSymmetry, SignedPerm>, AffineSymmetry> {
    let mut map = HashMap::from([(AffineSymmetry::identity(), SignedPerm::identity(N_DIM))]);
    let mut queue = vec![AffineSymmetry::identity()];
    while let Some(h) = queue.pop() {
        let lh = map[&h].clone();
        for g in Generator::ALL {
            let k = h.compose(&g.symmetry());
            let lk = lh.compose(&g.lift());
            match map.get(&k) {
                Some(existing) if existing != &lk => return Err(k),
                Some(_) => {}
                None => {
                    map.insert(k, lk);
                    queue.push(k);
                }
            }
        }
    }
    Ok(map)
}

pub fn verify_lift_group() -> LiftGroupReport {
    let map = match lift_group() {
        Ok(m) => m,
        Err(_) => {
            return LiftGroupReport {
                order: 0,
                consistent: false,
                intertwines_all: false,
                projection_injective: false,
                projection_multiplicative: false,
            }
        }
    };
    let intertwines_all = map.iter().all(|(g, l)| intertwines(&lattice_action(g), l));
    let thetas: HashMap<AffineSymmetry, Permutation> =
        map.iter().map(|(g, l)| (*g, project_to_m12(l).expect("block map"))).collect();
    let mut distinct: Vec<&Permutation> = thetas.values().collect();
    distinct.sort();
    distinct.dedup();
    let els = group_elements();
    let projection_multiplicative =
        els.iter().all(|g| els.iter().all(|h| thetas[&g.compose(h)] == thetas[g].compose(&thetas[h])));
    LiftGroupReport {
        order: map.len(),
        consistent: true,
        intertwines_all,
        projection_injective: distinct.len() == map.len(),
        projection_multiplicative,
    }
}

/// Row-coordinate matrix of a signed permutation restricted to a lattice
/// it preserves, in that lattice's basis.
pub fn restrict(l: &Lattice, s: &SignedPerm) -> Option<QMatrix> {
    let b = l.basis()?;
    let rows: Option<Vec<QVec>> = (0..b.rows()).map(|i| l.coords(&s.apply(b.row(i))).ok().flatten()).collect();
    Some(Matrix::from_rows(rows?))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub found: bool,
    pub matches_lift: bool,
    pub swaps_block_12: bool,
    pub preserves_glue: bool,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.found && self.matches_lift && self.swaps_block_12 && self.preserves_glue
    }
}

/// Extends `β̃_*` restricted to P̃ across the gluing and compares with the
/// stated action on blocks 10–12.
pub fn verify_beta_extension(ng: &NGluing) -> ExtensionReport {
    let lift = beta_lift();
    let phi = restrict(&ng.p_tilde, &lift).expect("β̃ preserves P̃");
    let psi = extend_automorphism(&phi, &ng.glued).ok().flatten();
    let expected = restrict(&ng.k_tilde, &lift).expect("β̃ preserves K̃");
    match psi {
        None => ExtensionReport { found: false, matches_lift: false, swaps_block_12: false, preserves_glue: false },
        Some(psi) => {
            let swapped = SignedPerm::from_blocks(&{
                let mut t = [(1i8, 0usize, false); 12];
                for (j, slot) in t.iter_mut().enumerate() {
                    *slot = (1, j + 1, j == 11);
                }
                t
            });
            let swap = restrict(&ng.k_tilde, &swapped).unwrap();
            ExtensionReport {
                found: true,
                matches_lift: psi == expected,
                swaps_block_12: psi == swap,
                preserves_glue: ng.glued.preserved_by(&phi, &psi).unwrap_or(false),
            }
        }
    }
}

/// Adjacency of the extended E6 diagram on `(centre, a1, a2, b1, b2, c1, c2)`.
pub fn extended_e6_adjacency() -> [[u8; 7]; 7] {
    let mut a = [[0u8; 7]; 7];
    for (x, y) in [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)] {
        a[x][y] = 1;
        a[y][x] = 1;
    }
    a
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedE6Report {
    pub e6_gram: bool,
    pub v1_identity: bool,
    pub v2_identity: bool,
    pub v3_identity: bool,
    pub beta_pairing: String,
    pub beta_pairing_integral: bool,
}

impl ExtendedE6Report {
    pub fn passed(&self) -> bool {
        self.e6_gram && self.v1_identity && self.v2_identity && self.v3_identity && self.beta_pairing == "1/3"
            && !self.beta_pairing_integral
    }
}

/// `r̂ = −(1/3) Σ_{L} E_t`.
pub fn r_hat(pts: &[Label]) -> QVec {
    e_sum(pts, &rat(-1, 3))
}

/// Checks in `P*(−1)`, whose Gram is the positive A2^9 form.
pub fn extended_e6_checks() -> ExtendedE6Report {
    let g = e_space_gram().neg();
    let line = l12();
    let r = r_hat(&line.points());
    let mut vecs = vec![r.clone()];
    for t in line.points() {
        vecs.push(e(t, 1));
        vecs.push(e(t, 2));
    }
    let gram: Vec<Vec<Rat>> = vecs.iter().map(|x| vecs.iter().map(|y| g.bilinear(x, y)).collect()).collect();
    let e6_gram = isomorphic_to_extended_e6(&gram);

    let v = v_generators();
    let r1 = r_hat(&line.translate(Label::new(1, 0)).points());
    let r2 = r_hat(&line.translate(Label::new(2, 0)).points());
    let v1_identity = v[0] == sub(&r1, &r);
    let v3_identity = v[2] == scale(&-Rat::one(), &add(&add(&r, &r1), &r2));
    let check = (0..3).fold(vec![Rat::zero(); E_DIM], |acc, i| {
        let ei = scale(&rat(1, 3), &sub(&crate::orbifold::e_comp(Label::new(i, 0)), &crate::orbifold::e_comp(Label::new(i, 1))));
        add(&acc, &ei)
    });
    let v2_identity = v[1] == check && l34().contains(Label::new(1, 0));

    let b = lattice_action(&AffineSymmetry::beta());
    let pairing = g.bilinear(&b.apply_e(&r), &r);
    ExtendedE6Report {
        e6_gram,
        v1_identity,
        v2_identity,
        v3_identity,
        beta_pairing_integral: pairing.is_integer(),
        beta_pairing: pairing.to_string(),
    }
}

fn isomorphic_to_extended_e6(gram: &[Vec<Rat>]) -> bool {
    let target = extended_e6_adjacency();
    let entry = |a: u8, i: usize, j: usize| if i == j { rint(2) } else { rint(-(a as i64)) };
    let mut perm: Vec<usize> = (0..7).collect();
    permutations(&mut perm, 0, &mut |p| {
        (0..7).all(|i| (0..7).all(|j| gram[p[i]][p[j]] == entry(target[i][j], i, j)))
    })
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}
