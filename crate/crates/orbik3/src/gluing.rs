//! Gluing of a primitive sublattice and its complement along an
//! anti-isometry of discriminant groups, and extension of automorphisms
//! across the glue.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::GlueError;
use crate::lattice::{
    fincke_pohst, is_integral_vec, zvec_to_q, DiscriminantData, Lattice, QMatrix, QVec, Rat, ZVec,
};
use crate::matrix::Matrix;
use crate::scalar::{mod_rational, rat, rint};

/// `γ: Λ*/Λ → V*/V` given on generator lifts. Images are dual vectors of `V`
/// in `V`-basis coordinates.
#[derive(Clone, Debug)]
pub struct GlueMap {
    pub source: DiscriminantData,
    pub target: DiscriminantData,
    pub images: Vec<QVec>,
}

impl GlueMap {
    pub fn new(source: DiscriminantData, target: DiscriminantData, images: Vec<QVec>) -> Self {
        GlueMap { source, target, images }
    }

    /// Identity between two trivial groups.
    pub fn trivial(source: DiscriminantData, target: DiscriminantData) -> Self {
        GlueMap { source, target, images: Vec::new() }
    }

    /// Errors when `γ` is not a group isomorphism; otherwise reports whether
    /// `q_Λ = −q_V∘γ` and `b_Λ = −b_V∘γ` hold on the generators.
    pub fn check_compatible(&self) -> Result<bool, GlueError> {
        self.check_isomorphism()?;
        Ok(self.form_violation().is_none())
    }

    /// First generator (or pair) where the forms fail to match.
    pub fn form_violation(&self) -> Option<String> {
        let k = self.images.len();
        for i in 0..k {
            let ql = &self.source.q_values[i];
            let qv = self.target.q(&self.images[i]);
            if mod_rational(&(ql + qv), 2) != Rat::zero() {
                return Some(format!("q on generator {}", i + 1));
            }
            for j in i + 1..k {
                let bl = &self.source.b_matrix[(i, j)];
                let bv = self.target.b(&self.images[i], &self.images[j]);
                if mod_rational(&(bl + bv), 1) != Rat::zero() {
                    return Some(format!("b on generators {} and {}", i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn check_isomorphism(&self) -> Result<(), GlueError> {
        let k = self.source.generator_lifts.len();
        if self.images.len() != k {
            return Err(GlueError::NotIsomorphism(format!("{} images for {} generators", self.images.len(), k)));
        }
        if self.source.order() != self.target.order() {
            return Err(GlueError::NotIsomorphism(format!(
                "group orders {} and {}",
                self.source.order(),
                self.target.order()
            )));
        }
        let mut coords = Vec::with_capacity(k);
        for (i, img) in self.images.iter().enumerate() {
            let c = self.target.class_of(img)?;
            let d = &self.source.elementary_divisors[i];
            let dc: Vec<BigInt> = c.iter().map(|x| x * d).collect();
            if !self.target.class_of(&self.target.lift(&dc))?.iter().all(|x| x.is_zero()) {
                return Err(GlueError::NotIsomorphism(format!("order of image {} does not divide {}", i + 1, d)));
            }
            coords.push(c);
        }
        // the images must generate the target
        let divs = &self.target.elementary_divisors;
        let mut seen: HashSet<ZVec> = HashSet::new();
        let orders: Vec<u64> = self.source.elementary_divisors.iter().map(|d| d.to_u64().unwrap_or(0)).collect();
        let total: u64 = orders.iter().product();
        for idx in 0..total {
            let mut rest = idx;
            let mut c = vec![BigInt::zero(); divs.len()];
            for (g, o) in coords.iter().zip(&orders) {
                let a = BigInt::from(rest % o);
                rest /= o;
                for (j, x) in g.iter().enumerate() {
                    c[j] = (&c[j] + &a * x).mod_floor(&divs[j]);
                }
            }
            seen.insert(c);
        }
        if BigInt::from(seen.len()) != self.target.order() {
            return Err(GlueError::NotIsomorphism("images do not generate the target".into()));
        }
        Ok(())
    }

    /// `γ` applied to the coset of a dual vector of `Λ`, returned as a lift.
    pub fn apply(&self, y: &[Rat]) -> Result<QVec, GlueError> {
        let c = self.source.class_of(y)?;
        let n = self.target.gram().rows();
        let mut out = vec![Rat::zero(); n];
        for (a, img) in c.iter().zip(&self.images) {
            let a = Rat::from_integer(a.clone());
            for (o, x) in out.iter_mut().zip(img) {
                *o += &a * x;
            }
        }
        Ok(out)
    }
}

/// The lattice `{(λ, v) ∈ Λ* ⊕ V* : γ([λ]) = [v]}` in the coordinates of
/// `Λ ⊕ V` (basis coordinates of the two components side by side).
#[derive(Clone, Debug)]
pub struct GluedLattice {
    pub lambda: Lattice,
    pub v: Lattice,
    pub glue: GlueMap,
    pub glue_vectors: Vec<(QVec, QVec)>,
    pub lattice: Lattice,
}

pub fn glue(lambda: &Lattice, v: &Lattice, gamma: &GlueMap) -> Result<GluedLattice, GlueError> {
    if !gamma.check_compatible()? {
        return Err(GlueError::FormMismatch(gamma.form_violation().unwrap_or_default()));
    }
    let (a, b) = (lambda.rank(), v.rank());
    let ambient = lambda.gram().direct_sum(v.gram());
    let mut gens: Vec<QVec> = Vec::new();
    for i in 0..a + b {
        let mut e = vec![Rat::zero(); a + b];
        e[i] = Rat::one();
        gens.push(e);
    }
    let glue_vectors: Vec<(QVec, QVec)> = gamma
        .source
        .generator_lifts
        .iter()
        .zip(&gamma.images)
        .map(|(l, w)| (l.clone(), w.clone()))
        .collect();
    for (l, w) in &glue_vectors {
        gens.push(l.iter().chain(w).cloned().collect());
    }
    let lattice = Lattice::generated_by(&ambient, &gens)?;
    Ok(GluedLattice { lambda: lambda.clone(), v: v.clone(), glue: gamma.clone(), glue_vectors, lattice })
}

/// JSON form of a glued lattice; glue vectors are in the coordinates of
/// `Λ*` and `V*` respectively.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GluedDoc {
    pub lambda: crate::lattice::LatticeDoc,
    pub v: crate::lattice::LatticeDoc,
    pub glue_vectors: Vec<[Vec<String>; 2]>,
}

impl GluedLattice {
    pub fn to_doc(&self) -> GluedDoc {
        let s = |x: &QVec| x.iter().map(crate::scalar::rat_to_string).collect();
        GluedDoc {
            lambda: self.lambda.to_doc(),
            v: self.v.to_doc(),
            glue_vectors: self.glue_vectors.iter().map(|(l, w)| [s(l), s(w)]).collect(),
        }
    }

    fn split(&self, x: &[Rat]) -> (QVec, QVec) {
        let a = self.lambda.rank();
        (x[..a].to_vec(), x[a..].to_vec())
    }

    /// Membership by the defining criterion: `λ ∈ Λ*`, `v ∈ V*` and
    /// `γ([λ]) = [v]`.
    pub fn criterion(&self, l: &[Rat], w: &[Rat]) -> Result<bool, GlueError> {
        let in_dual = |g: &QMatrix, y: &[Rat]| is_integral_vec(&g.mul_vec(y));
        if !in_dual(self.lambda.gram(), l) || !in_dual(self.v.gram(), w) {
            return Ok(false);
        }
        let img = self.glue.apply(l)?;
        Ok(self.glue.target.same_class(&img, w)?)
    }

    /// Membership by linear algebra in the generated lattice.
    pub fn contains(&self, l: &[Rat], w: &[Rat]) -> Result<bool, GlueError> {
        let x: QVec = l.iter().chain(w).cloned().collect();
        Ok(self.lattice.contains(&x)?)
    }

    /// Basis of the glued lattice as `(λ, v)` coordinate pairs.
    pub fn basis_pairs(&self) -> Vec<(QVec, QVec)> {
        let b = self.lattice.basis().expect("glued lattice has a basis");
        (0..b.rows()).map(|i| self.split(b.row(i))).collect()
    }

    /// The glued lattice inside `ambient(Λ) ⊕ ambient(V)`.
    pub fn embed_direct_sum(&self) -> Result<Lattice, GlueError> {
        let (bl, al) = component(&self.lambda)?;
        let (bv, av) = component(&self.v)?;
        let ambient = al.direct_sum(av);
        let rows: Vec<QVec> = self
            .basis_pairs()
            .iter()
            .map(|(l, w)| bl.vec_mul(l).into_iter().chain(bv.vec_mul(w)).collect())
            .collect();
        Ok(Lattice::from_basis(&ambient, Matrix::from_rows(rows))?)
    }

    /// The glued lattice inside the ambient space shared by `Λ` and `V`.
    pub fn embed_shared(&self) -> Result<Lattice, GlueError> {
        let (bl, al) = component(&self.lambda)?;
        let (bv, av) = component(&self.v)?;
        if al != av {
            return Err(GlueError::AmbientMismatch);
        }
        let rows: Vec<QVec> = self
            .basis_pairs()
            .iter()
            .map(|(l, w)| bl.vec_mul(l).iter().zip(bv.vec_mul(w)).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Lattice::from_basis(al, Matrix::from_rows(rows))?)
    }

    /// True when `φ ⊕ ψ` (acting on row coordinates) maps every basis vector
    /// of the glued lattice into it.
    pub fn preserved_by(&self, phi: &QMatrix, psi: &QMatrix) -> Result<bool, GlueError> {
        for (l, w) in self.basis_pairs() {
            if !self.contains(&phi.vec_mul(&l), &psi.vec_mul(&w))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every glue vector pairs integrally with every generator.
    pub fn glue_vectors_integral(&self) -> bool {
        let amb = self.lambda.gram().direct_sum(self.v.gram());
        let vecs: Vec<QVec> = self
            .glue_vectors
            .iter()
            .map(|(l, w)| l.iter().chain(w).cloned().collect())
            .collect();
        let basis = self.lattice.basis().unwrap();
        vecs.iter().all(|x| {
            (0..basis.rows()).all(|i| amb.bilinear(x, basis.row(i)).is_integer())
                && vecs.iter().all(|y| amb.bilinear(x, y).is_integer())
        })
    }
}

fn component(l: &Lattice) -> Result<(&QMatrix, &QMatrix), GlueError> {
    match (l.basis(), l.ambient()) {
        (Some(b), Some(a)) => Ok((b, a)),
        _ => Err(GlueError::AmbientMismatch),
    }
}

/// Row-coordinate isometry test: `M G Mᵀ = G` with integral `M`.
pub fn is_isometry(g: &QMatrix, m: &QMatrix) -> bool {
    m.rows() == g.rows()
        && m.cols() == g.cols()
        && (0..m.rows()).all(|i| is_integral_vec(m.row(i)))
        && &g.congruence(m) == g
}

/// First automorphism of a definite lattice (as an integral matrix acting on
/// row coordinates) accepted by `accept`, in a fixed search order that
/// tries signed basis vectors first (sign `preferred_sign` before the
/// other one), then the remaining short vectors. `None` if no automorphism
/// qualifies.
pub fn find_automorphism(
    l: &Lattice,
    preferred_sign: i64,
    accept: impl FnMut(&QMatrix) -> bool,
) -> Result<Option<QMatrix>, GlueError> {
    search_automorphism(l, preferred_sign, false, accept)
}

fn search_automorphism(
    l: &Lattice,
    preferred_sign: i64,
    signed_only: bool,
    mut accept: impl FnMut(&QMatrix) -> bool,
) -> Result<Option<QMatrix>, GlueError> {
    let (p, n) = l.signature()?;
    let g = if n == 0 {
        l.gram().clone()
    } else if p == 0 {
        l.gram().neg()
    } else {
        return Err(crate::error::LatticeError::Indefinite.into());
    };
    let r = g.rows();
    let max = (0..r).map(|i| g[(i, i)].clone()).max().unwrap_or_else(Rat::zero);
    let short = if signed_only { Vec::new() } else { fincke_pohst(&g, &max) };
    let mut pool: Vec<QVec> = Vec::new();
    for sign in [preferred_sign, -preferred_sign] {
        for i in 0..r {
            let mut e = vec![Rat::zero(); r];
            e[i] = rint(sign);
            pool.push(e);
        }
    }
    for v in short {
        let v = zvec_to_q(&v);
        if !pool.contains(&v) {
            pool.push(v);
        }
    }
    let norms: Vec<Rat> = pool.iter().map(|v| g.bilinear(v, v)).collect();
    let mut rows: Vec<QVec> = Vec::with_capacity(r);
    let mut found = None;
    backtrack(&g, &pool, &norms, &mut rows, &mut accept, &mut found);
    Ok(found)
}

fn backtrack(
    g: &QMatrix,
    pool: &[QVec],
    norms: &[Rat],
    rows: &mut Vec<QVec>,
    accept: &mut impl FnMut(&QMatrix) -> bool,
    found: &mut Option<QMatrix>,
) {
    let i = rows.len();
    if i == g.rows() {
        let m = Matrix::from_rows(rows.clone());
        if accept(&m) {
            *found = Some(m);
        }
        return;
    }
    for (cand, norm) in pool.iter().zip(norms) {
        if found.is_some() {
            return;
        }
        if norm != &g[(i, i)] {
            continue;
        }
        if (0..i).any(|j| g.bilinear(cand, &rows[j]) != g[(i, j)]) {
            continue;
        }
        rows.push(cand.clone());
        backtrack(g, pool, norms, rows, accept, found);
        rows.pop();
    }
}

/// Number of automorphisms of a definite lattice (brute force; small ranks).
pub fn automorphism_count(l: &Lattice) -> Result<usize, GlueError> {
    let mut count = 0usize;
    find_automorphism(l, 1, |_| {
        count += 1;
        false
    })?;
    Ok(count)
}

/// Given an isometry `φ` of `Λ` (row coordinates), find an isometry `ψ` of
/// `V` with `γ∘φ̄ = ψ̄∘γ`, so that `φ ⊕ ψ` preserves the glued lattice.
/// Signed permutations of the basis of `V` are tried first, with the sign of
/// `tr φ` preferred; the full short-vector search is the fallback.
pub fn extend_automorphism(phi: &QMatrix, glued: &GluedLattice) -> Result<Option<QMatrix>, GlueError> {
    if !is_isometry(glued.lambda.gram(), phi) {
        return Err(GlueError::NotIsometry);
    }
    let gamma = &glued.glue;
    let mut wanted = Vec::new();
    for y in &gamma.source.generator_lifts {
        wanted.push(gamma.apply(&phi.vec_mul(y))?);
    }
    let trace: Rat = (0..phi.rows()).map(|i| phi[(i, i)].clone()).sum();
    let sign = if trace < Rat::zero() { -1 } else { 1 };
    let accept = |psi: &QMatrix| {
        gamma
            .images
            .iter()
            .zip(&wanted)
            .all(|(img, w)| gamma.target.same_class(&psi.vec_mul(img), w).unwrap_or(false))
    };
    if let Some(psi) = search_automorphism(&glued.v, sign, true, accept)? {
        return Ok(Some(psi));
    }
    search_automorphism(&glued.v, sign, false, accept)
}

/// The hyperbolic plane Γ^{1,1} in `R^{1,1}` with `υ0 = (1/2, 1/2)` and
/// `υ = (1, −1)`, split as `span{υ0+υ} ⊕ span{υ0−υ}`.
pub struct HyperbolicExample {
    pub ambient: QMatrix,
    pub gamma11: Lattice,
    pub lambda: Lattice,
    pub v: Lattice,
    pub glue: GlueMap,
}

pub fn hyperbolic_example() -> Result<HyperbolicExample, GlueError> {
    let ambient = Matrix::from_rows(vec![vec![rint(1), rint(0)], vec![rint(0), rint(-1)]]);
    let u0 = vec![rat(1, 2), rat(1, 2)];
    let u = vec![rint(1), rint(-1)];
    let plus: QVec = u0.iter().zip(&u).map(|(a, b)| a + b).collect();
    let minus: QVec = u0.iter().zip(&u).map(|(a, b)| a - b).collect();
    let gamma11 = Lattice::from_basis(&ambient, Matrix::from_rows(vec![u0, u]))?;
    let lambda = Lattice::from_basis(&ambient, Matrix::from_rows(vec![plus]))?;
    let v = Lattice::from_basis(&ambient, Matrix::from_rows(vec![minus]))?;
    let half = vec![rat(1, 2)];
    let src = DiscriminantData::with_generators(&lambda, vec![half.clone()])?;
    let tgt = DiscriminantData::with_generators(&v, vec![half.clone()])?;
    let glue = GlueMap::new(src, tgt, vec![half]);
    Ok(HyperbolicExample { ambient, gamma11, lambda, v, glue })
}

/// Sanity helper: `−id` as a row-coordinate matrix.
pub fn minus_identity(n: usize) -> QMatrix {
    Matrix::identity(n).neg()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::qmatrix;

    #[test]
    fn hyperbolic_round_trip() {
        let ex = hyperbolic_example().unwrap();
        assert!(ex.glue.check_compatible().unwrap());
        let g = glue(&ex.lambda, &ex.v, &ex.glue).unwrap();
        let embedded = g.embed_shared().unwrap();
        assert!(embedded.same_as(&ex.gamma11).unwrap());
        let c = embedded.classify().unwrap();
        assert!(c.even && c.unimodular);
        assert_eq!(c.signature, (1, 1));
        let psi = extend_automorphism(&minus_identity(1), &g).unwrap().unwrap();
        assert_eq!(psi, minus_identity(1));
    }

    #[test]
    fn a2_has_twelve_automorphisms() {
        let a2 = Lattice::from_gram(qmatrix(&[&[2, -1], &[-1, 2]])).unwrap();
        assert_eq!(automorphism_count(&a2).unwrap(), 12);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a2 = Lattice::from_gram(qmatrix(&[&[2, -1], &[-1, 2]])).unwrap();
        let h = Lattice::from_gram(qmatrix(&[&[0, 1], &[1, 0]])).unwrap();
        let g = GlueMap::trivial(a2.discriminant_group().unwrap(), h.discriminant_group().unwrap());
        assert!(matches!(g.check_compatible(), Err(GlueError::NotIsomorphism(_))));
    }
}
