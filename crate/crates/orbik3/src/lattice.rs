//! Integral lattices with exact rational Gram matrices: classification,
//! discriminant groups and forms, sublattices, complements and short vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::intmat::{self, ZMatrix};
use crate::matrix::{dot, Matrix};
use crate::scalar::{mod_rational, rat_from_str, rat_to_string};

pub type Rat = BigRational;
pub type QMatrix = Matrix<Rat>;
pub type QVec = Vec<Rat>;
pub type ZVec = Vec<BigInt>;

/// Largest discriminant group for which explicit coset tables are built.
const MAX_TABLE: u64 = 1 << 20;

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

pub fn zvec_to_q(xs: &[BigInt]) -> QVec {
    xs.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn qmatrix(rows: &[&[i64]]) -> QMatrix {
    Matrix::from_rows(rows.iter().map(|r| qvec(r)).collect())
}

pub fn add(u: &[Rat], v: &[Rat]) -> QVec {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Rat], v: &[Rat]) -> QVec {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(s: &Rat, v: &[Rat]) -> QVec {
    v.iter().map(|a| s * a).collect()
}

pub fn is_integral_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub integral: bool,
    pub even: bool,
    pub unimodular: bool,
    pub signature: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    gram: QMatrix,
    basis: Option<QMatrix>,
    ambient: Option<QMatrix>,
    ambient_signature: Option<(usize, usize)>,
}

impl Lattice {
    pub fn from_gram(gram: QMatrix) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Lattice { gram, basis: None, ambient: None, ambient_signature: None })
    }

    /// Lattice spanned by the rows of `basis` inside an ambient space with
    /// inner product `ambient`.
    pub fn from_basis(ambient: &QMatrix, basis: QMatrix) -> Result<Self, LatticeError> {
        if !ambient.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if basis.cols() != ambient.rows() {
            return Err(LatticeError::DimensionMismatch { expected: ambient.rows(), found: basis.cols() });
        }
        if basis.rank() != basis.rows() {
            return Err(LatticeError::DependentGenerators);
        }
        let gram = ambient.congruence(&basis);
        Ok(Lattice {
            gram,
            basis: Some(basis),
            ambient: Some(ambient.clone()),
            ambient_signature: ambient.signature(),
        })
    }

    /// Lattice generated (over Z) by arbitrary ambient vectors.
    pub fn generated_by(ambient: &QMatrix, gens: &[QVec]) -> Result<Self, LatticeError> {
        for g in gens {
            if g.len() != ambient.rows() {
                return Err(LatticeError::DimensionMismatch { expected: ambient.rows(), found: g.len() });
            }
        }
        let basis = basis_of_span(&Matrix::from_rows(gens.to_vec()), ambient.rows());
        Lattice::from_basis(ambient, basis)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn basis(&self) -> Option<&QMatrix> {
        self.basis.as_ref()
    }

    pub fn ambient(&self) -> Option<&QMatrix> {
        self.ambient.as_ref()
    }

    pub fn ambient_signature(&self) -> Option<(usize, usize)> {
        self.ambient_signature
    }

    fn basis_or_err(&self) -> Result<&QMatrix, LatticeError> {
        self.basis.as_ref().ok_or(LatticeError::NoAmbient)
    }

    fn ambient_or_err(&self) -> Result<&QMatrix, LatticeError> {
        self.ambient.as_ref().ok_or(LatticeError::NoAmbient)
    }

    pub fn discriminant(&self) -> Rat {
        self.gram.det()
    }

    pub fn is_integral(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.row(i).iter().all(|x| x.is_integer()))
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[(i, i)].to_integer().is_even())
    }

    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        self.gram.signature().ok_or(LatticeError::Degenerate)
    }

    pub fn classify(&self) -> Result<Classification, LatticeError> {
        let signature = self.signature()?;
        let integral = self.is_integral();
        Ok(Classification {
            integral,
            even: self.is_even(),
            unimodular: integral && self.discriminant().abs().is_one(),
            signature,
        })
    }

    /// Ambient vector of basis coordinates.
    pub fn to_ambient(&self, coords: &[Rat]) -> Result<QVec, LatticeError> {
        Ok(self.basis_or_err()?.vec_mul(coords))
    }

    pub fn to_ambient_int(&self, coords: &[BigInt]) -> Result<QVec, LatticeError> {
        self.to_ambient(&zvec_to_q(coords))
    }

    /// Rational basis coordinates of an ambient vector, or `None` when it is
    /// outside the rational span.
    pub fn coords(&self, v: &[Rat]) -> Result<Option<QVec>, LatticeError> {
        let b = self.basis_or_err()?;
        if v.len() != b.cols() {
            return Err(LatticeError::DimensionMismatch { expected: b.cols(), found: v.len() });
        }
        Ok(b.solve_rows(v))
    }

    pub fn int_coords(&self, v: &[Rat]) -> Result<Option<ZVec>, LatticeError> {
        Ok(self
            .coords(v)?
            .filter(|c| is_integral_vec(c))
            .map(|c| c.iter().map(|x| x.to_integer()).collect()))
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool, LatticeError> {
        Ok(self.int_coords(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, LatticeError> {
        let ob = other.basis_or_err()?;
        for i in 0..ob.rows() {
            if !self.contains(ob.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as subsets of the ambient space.
    pub fn same_as(&self, other: &Lattice) -> Result<bool, LatticeError> {
        Ok(self.rank() == other.rank() && self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Ambient inner product.
    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Result<Rat, LatticeError> {
        Ok(self.ambient_or_err()?.bilinear(u, v))
    }

    /// Inner product of basis-coordinate vectors.
    pub fn inner_coords(&self, u: &[Rat], v: &[Rat]) -> Rat {
        self.gram.bilinear(u, v)
    }

    /// The rescaled lattice `L(k)`.
    pub fn scaled(&self, k: &Rat) -> Lattice {
        Lattice {
            gram: self.gram.scale(k),
            basis: self.basis.clone(),
            ambient: self.ambient.as_ref().map(|a| a.scale(k)),
            ambient_signature: self.ambient_signature.map(|(p, n)| if k.is_negative() { (n, p) } else { (p, n) }),
        }
    }

    /// The dual lattice, with the same ambient embedding.
    pub fn dual(&self) -> Result<Lattice, LatticeError> {
        let inv = self.gram.inverse().ok_or(LatticeError::Degenerate)?;
        let basis = match &self.basis {
            Some(b) => Some(inv.mul(b)),
            None => None,
        };
        Ok(Lattice {
            gram: inv.clone(),
            basis,
            ambient: self.ambient.clone(),
            ambient_signature: self.ambient_signature,
        })
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantData, LatticeError> {
        DiscriminantData::of(self)
    }

    /// All nonzero lattice vectors with `|⟨v,v⟩| ≤ bound`, as basis
    /// coordinates, sorted.
    pub fn short_vectors(&self, bound: &Rat) -> Result<Vec<ZVec>, LatticeError> {
        let (p, n) = self.signature()?;
        let gram = if n == 0 {
            self.gram.clone()
        } else if p == 0 {
            self.gram.neg()
        } else {
            return Err(LatticeError::Indefinite);
        };
        Ok(fincke_pohst(&gram, bound))
    }

    /// Vectors with `|⟨v,v⟩| < bound`.
    pub fn vectors_below(&self, bound: &Rat) -> Result<Vec<ZVec>, LatticeError> {
        let all = self.short_vectors(bound)?;
        Ok(all
            .into_iter()
            .filter(|v| &self.gram.bilinear(&zvec_to_q(v), &zvec_to_q(v)).abs() < bound)
            .collect())
    }

    pub fn to_doc(&self) -> LatticeDoc {
        let m2s = |m: &QMatrix| m.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect()).collect();
        LatticeDoc {
            rank: self.rank(),
            gram: m2s(&self.gram),
            basis: self.basis.as_ref().map(m2s),
            ambient_signature: self.ambient_signature.map(|(p, n)| [p, n]),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("lattice document serializes")
    }

    pub fn from_doc(doc: &LatticeDoc) -> Result<Self, LatticeError> {
        let parse = |rows: &Vec<Vec<String>>| -> Result<QMatrix, LatticeError> {
            let mut out = Vec::new();
            for r in rows {
                let mut row = Vec::new();
                for s in r {
                    row.push(rat_from_str(s).ok_or_else(|| LatticeError::Format(format!("bad rational {s:?}")))?);
                }
                out.push(row);
            }
            let width = out.first().map_or(0, |r| r.len());
            if out.iter().any(|r| r.len() != width) {
                return Err(LatticeError::Format("ragged matrix".into()));
            }
            Ok(Matrix::from_rows(out))
        };
        let gram = parse(&doc.gram)?;
        if gram.rows() != doc.rank {
            return Err(LatticeError::RankMismatch { expected: doc.rank, found: gram.rows() });
        }
        let mut l = Lattice::from_gram(gram)?;
        if let Some(b) = &doc.basis {
            let b = parse(b)?;
            if b.rows() != doc.rank {
                return Err(LatticeError::RankMismatch { expected: doc.rank, found: b.rows() });
            }
            l.basis = Some(b);
        }
        l.ambient_signature = doc.ambient_signature.map(|[p, n]| (p, n));
        Ok(l)
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let doc: LatticeDoc = serde_json::from_str(s).map_err(|e| LatticeError::Format(e.to_string()))?;
        Lattice::from_doc(&doc)
    }
}

/// JSON form of a lattice; rationals are `"a/b"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ambient_signature: Option<[usize; 2]>,
}

/// Z-basis (HNF rows) of the lattice spanned by the rows of `gens`.
pub fn basis_of_span(gens: &QMatrix, dim: usize) -> QMatrix {
    if gens.rows() == 0 {
        return Matrix::zeros(0, dim);
    }
    let (z, den) = intmat::clear_denominators(gens);
    let h = intmat::hnf(&z);
    let den = Rat::from_integer(den);
    h.map(|x| Rat::from_integer(x.clone()) / &den)
}

/// Discriminant group `L*/L` with explicit generator lifts (basis
/// coordinates in `L ⊗ Q`), together with the forms `q` (mod 2Z) and `b`
/// (mod Z).
#[derive(Clone, Debug)]
pub struct DiscriminantData {
    pub elementary_divisors: Vec<BigInt>,
    pub generator_lifts: Vec<QVec>,
    pub q_values: Vec<Rat>,
    pub b_matrix: QMatrix,
    gram: QMatrix,
    snf_rows: ZMatrix,
    snf_divs: Vec<BigInt>,
    table: Option<HashMap<ZVec, ZVec>>,
}

impl DiscriminantData {
    /// Smith-normal-form generators: lift `i` is `(1/d_i) V e_i` for
    /// `U G V = D`.
    pub fn of(l: &Lattice) -> Result<Self, LatticeError> {
        if !l.is_integral() {
            return Err(LatticeError::NonIntegral);
        }
        if l.discriminant().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        let g = l.gram().map(|x| x.to_integer());
        let s = intmat::smith(&g);
        let n = l.rank();
        let idx: Vec<usize> = (0..n).filter(|&i| !s.diagonal[i].is_one()).collect();
        let snf_rows = s.u.select_rows(&idx);
        let snf_divs: Vec<BigInt> = idx.iter().map(|&i| s.diagonal[i].clone()).collect();
        let lifts: Vec<QVec> = idx
            .iter()
            .map(|&i| {
                let d = Rat::from_integer(s.diagonal[i].clone());
                (0..n).map(|r| Rat::from_integer(s.v[(r, i)].clone()) / &d).collect()
            })
            .collect();
        Ok(Self::assemble(l.gram().clone(), snf_rows, snf_divs.clone(), snf_divs, lifts, None))
    }

    /// Use the given dual vectors as generators; they must form a basis of
    /// the group as a direct sum of cyclic groups.
    pub fn with_generators(l: &Lattice, lifts: Vec<QVec>) -> Result<Self, LatticeError> {
        let base = Self::of(l)?;
        let order = base.order();
        if order > BigInt::from(MAX_TABLE) {
            return Err(LatticeError::GroupTooLarge(order.to_string()));
        }
        let mut classes = Vec::new();
        let mut orders = Vec::new();
        for y in &lifts {
            let c = base.snf_class(y)?;
            orders.push(class_order(&c, &base.snf_divs));
            classes.push(c);
        }
        let prod: BigInt = orders.iter().product();
        if prod != order {
            return Err(LatticeError::BadGenerators);
        }
        let mut table = HashMap::new();
        let total = prod.to_u64().unwrap_or(0);
        for k in 0..total {
            let mut rest = k;
            let mut coeffs = Vec::with_capacity(orders.len());
            for o in &orders {
                let o = o.to_u64().unwrap();
                coeffs.push(BigInt::from(rest % o));
                rest /= o;
            }
            let mut c = vec![BigInt::zero(); base.snf_divs.len()];
            for (a, cls) in coeffs.iter().zip(&classes) {
                for (j, x) in cls.iter().enumerate() {
                    c[j] = (&c[j] + a * x).mod_floor(&base.snf_divs[j]);
                }
            }
            if table.insert(c, coeffs).is_some() {
                return Err(LatticeError::BadGenerators);
            }
        }
        Ok(Self::assemble(base.gram, base.snf_rows, base.snf_divs, orders, lifts, Some(table)))
    }

    fn assemble(
        gram: QMatrix,
        snf_rows: ZMatrix,
        snf_divs: Vec<BigInt>,
        orders: Vec<BigInt>,
        lifts: Vec<QVec>,
        table: Option<HashMap<ZVec, ZVec>>,
    ) -> Self {
        let k = lifts.len();
        let q_values = lifts.iter().map(|y| mod_rational(&gram.bilinear(y, y), 2)).collect();
        let b_matrix = Matrix::from_fn(k, k, |i, j| mod_rational(&gram.bilinear(&lifts[i], &lifts[j]), 1));
        DiscriminantData {
            elementary_divisors: orders,
            generator_lifts: lifts,
            q_values,
            b_matrix,
            gram,
            snf_rows,
            snf_divs,
            table,
        }
    }

    pub fn order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    /// Smith coordinates of the coset of a dual vector.
    fn snf_class(&self, y: &[Rat]) -> Result<ZVec, LatticeError> {
        let x = self.gram.mul_vec(y);
        if !is_integral_vec(&x) {
            return Err(LatticeError::NotInDual);
        }
        let x: ZVec = x.iter().map(|a| a.to_integer()).collect();
        Ok((0..self.snf_rows.rows())
            .map(|i| dot(self.snf_rows.row(i), &x).mod_floor(&self.snf_divs[i]))
            .collect())
    }

    /// Coordinates of the coset `y + L` with respect to the generator lifts.
    pub fn class_of(&self, y: &[Rat]) -> Result<ZVec, LatticeError> {
        let c = self.snf_class(y)?;
        Ok(match &self.table {
            Some(t) => t.get(&c).cloned().ok_or(LatticeError::BadGenerators)?,
            None => c,
        })
    }

    pub fn lift(&self, coeffs: &[BigInt]) -> QVec {
        let n = self.gram.rows();
        let mut out = vec![Rat::zero(); n];
        for (c, y) in coeffs.iter().zip(&self.generator_lifts) {
            let c = Rat::from_integer(c.clone());
            for (o, a) in out.iter_mut().zip(y) {
                *o += &c * a;
            }
        }
        out
    }

    /// `q(y)` modulo 2.
    pub fn q(&self, y: &[Rat]) -> Rat {
        mod_rational(&self.gram.bilinear(y, y), 2)
    }

    /// `b(y, z)` modulo 1.
    pub fn b(&self, y: &[Rat], z: &[Rat]) -> Rat {
        mod_rational(&self.gram.bilinear(y, z), 1)
    }

    pub fn same_class(&self, y: &[Rat], z: &[Rat]) -> Result<bool, LatticeError> {
        Ok(self.class_of(&sub(y, z))?.iter().all(|c| c.is_zero()))
    }
}

fn class_order(c: &[BigInt], divs: &[BigInt]) -> BigInt {
    c.iter().zip(divs).fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d))))
}

/// Sublattice given by integer coordinates with respect to the parent basis.
#[derive(Clone, Debug)]
pub struct SublatticeHandle {
    pub parent: Lattice,
    pub generators: ZMatrix,
}

impl SublatticeHandle {
    pub fn new(parent: &Lattice, gens: Vec<ZVec>) -> Result<Self, LatticeError> {
        let n = parent.rank();
        for g in &gens {
            if g.len() != n {
                return Err(LatticeError::DimensionMismatch { expected: n, found: g.len() });
            }
        }
        let generators = if gens.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(gens) };
        if intmat::to_rational(&generators).rank() != generators.rows() {
            return Err(LatticeError::DependentGenerators);
        }
        Ok(SublatticeHandle { parent: parent.clone(), generators })
    }

    /// Sublattice generated by ambient vectors of the parent. The vectors
    /// may be dependent; a basis is extracted.
    pub fn from_ambient(parent: &Lattice, vs: &[QVec]) -> Result<Option<Self>, LatticeError> {
        let mut rows = Vec::new();
        for v in vs {
            match parent.int_coords(v)? {
                Some(c) => rows.push(c),
                None => return Ok(None),
            }
        }
        let n = parent.rank();
        let basis = if rows.is_empty() { Matrix::zeros(0, n) } else { intmat::hnf(&Matrix::from_rows(rows)) };
        Ok(Some(SublatticeHandle { parent: parent.clone(), generators: basis }))
    }

    pub fn rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn lattice(&self) -> Result<Lattice, LatticeError> {
        let m = intmat::to_rational(&self.generators);
        match (self.parent.basis(), self.parent.ambient()) {
            (Some(b), Some(a)) => {
                let basis = if m.rows() == 0 { Matrix::zeros(0, b.cols()) } else { m.mul(b) };
                Lattice::from_basis(a, basis)
            }
            _ => Lattice::from_gram(self.parent.gram().congruence(&m)),
        }
    }

    pub fn gram(&self) -> QMatrix {
        self.parent.gram().congruence(&intmat::to_rational(&self.generators))
    }

    pub fn is_primitive(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        intmat::smith(&self.generators).diagonal.iter().all(|d| d.is_one())
    }

    /// Smallest primitive sublattice containing this one.
    pub fn saturation(&self) -> Self {
        if self.rank() == 0 {
            return self.clone();
        }
        let s = intmat::smith(&self.generators);
        let vinv = intmat::to_rational(&s.v).inverse().expect("unimodular");
        let rows: Vec<ZVec> = (0..s.rank()).map(|i| vinv.row(i).iter().map(|x| x.to_integer()).collect()).collect();
        SublatticeHandle { parent: self.parent.clone(), generators: intmat::hnf(&Matrix::from_rows(rows)) }
    }

    /// `|Γ/Λ|` for a full-rank sublattice, after asserting
    /// `|disc Λ| = |disc Γ|·|Γ/Λ|²`.
    pub fn index(&self) -> Result<BigInt, LatticeError> {
        let n = self.parent.rank();
        if self.rank() != n {
            return Err(LatticeError::RankMismatch { expected: n, found: self.rank() });
        }
        let index = intmat::to_rational(&self.generators).det().abs().to_integer();
        let sub = self.gram().det().abs();
        let expected = self.parent.discriminant().abs() * Rat::from_integer(&index * &index);
        if sub != expected {
            return Err(LatticeError::IndexIdentity { sub: rat_to_string(&sub), expected: rat_to_string(&expected) });
        }
        Ok(index)
    }

    /// `{v ∈ Γ : ⟨v, s⟩ = 0 for all s ∈ S}`; always primitive.
    pub fn orthogonal_complement(&self) -> Result<Self, LatticeError> {
        let n = self.parent.rank();
        if self.rank() == 0 {
            return SublatticeHandle::new(&self.parent, (0..n).map(|i| unit(n, i)).collect());
        }
        let a = intmat::to_rational(&self.generators).mul(self.parent.gram());
        let (z, _) = intmat::clear_denominators(&a);
        SublatticeHandle::new(&self.parent, intmat::integer_kernel(&z))
    }

    pub fn same_as(&self, other: &SublatticeHandle) -> bool {
        self.rank() == other.rank()
            && (self.rank() == 0 || intmat::hnf(&self.generators) == intmat::hnf(&other.generators))
    }
}

pub fn unit(n: usize, i: usize) -> ZVec {
    (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
}

/// Exact pair reduction of a positive-definite Gram matrix. Returns the
/// unimodular transform `T` (rows = new basis in old coordinates) and the new
/// Gram `T G Tᵀ`.
pub fn pair_reduce(g: &QMatrix) -> (ZMatrix, QMatrix) {
    let n = g.rows();
    let mut t = ZMatrix::identity(n);
    let mut g = g.clone();
    let two = Rat::from_integer(2.into());
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || (&two * g[(i, j)].abs()) <= g[(j, j)] {
                    continue;
                }
                let q = (&g[(i, j)] / &g[(j, j)]).round();
                // b_i -= q b_j
                let qi = q.to_integer();
                for c in 0..n {
                    let tj = t[(j, c)].clone();
                    t[(i, c)] -= &qi * tj;
                }
                let gij = g[(i, j)].clone();
                let gjj = g[(j, j)].clone();
                let new_ii = &g[(i, i)] - &two * &q * &gij + &q * &q * &gjj;
                for c in 0..n {
                    if c != i {
                        let v = &g[(i, c)] - &q * &g[(j, c)];
                        g[(i, c)] = v.clone();
                        g[(c, i)] = v;
                    }
                }
                g[(i, i)] = new_ii;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // shortest vectors first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g[(a, a)].cmp(&g[(b, b)]));
    let t = t.select_rows(&order);
    let g = Matrix::from_fn(n, n, |i, j| g[(order[i], order[j])].clone());
    (t, g)
}

/// Enumerate all nonzero `x ∈ Z^n` with `xᵀ G x ≤ bound` for positive
/// definite `G`. Exact; output sorted.
pub fn fincke_pohst(gram: &QMatrix, bound: &Rat) -> Vec<ZVec> {
    let n = gram.rows();
    if n == 0 || bound.is_negative() {
        return Vec::new();
    }
    let (t, g) = pair_reduce(gram);
    // G = Uᵀ D U with U unit upper triangular
    let mut d = vec![Rat::zero(); n];
    let mut u = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        let mut di = g[(i, i)].clone();
        for k in 0..i {
            di -= &d[k] * &u[k][i] * &u[k][i];
        }
        d[i] = di.clone();
        u[i][i] = Rat::one();
        for j in i + 1..n {
            let mut s = g[(i, j)].clone();
            for k in 0..i {
                s -= &d[k] * &u[k][i] * &u[k][j];
            }
            u[i][j] = s / &di;
        }
    }
    let search = Search { n, d, u, bound: bound.clone() };
    let top = n - 1;
    let s = search.range(top, &Rat::zero(), bound);
    let values: Vec<i64> = s.collect();
    let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(values.len().max(1));
    let chunks: Vec<Vec<i64>> = (0..threads).map(|k| values.iter().copied().skip(k).step_by(threads).collect()).collect();
    let mut found: Vec<Vec<i64>> = std::thread::scope(|sc| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                let search = &search;
                sc.spawn(move || {
                    let mut out = Vec::new();
                    let mut x = vec![0i64; n];
                    for &v in chunk {
                        x[top] = v;
                        let used = &search.d[top] * Rat::from_integer((v * v).into());
                        let rest = &search.bound - used;
                        if rest.is_negative() {
                            continue;
                        }
                        search.descend(top, &mut x, &rest, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("enumeration thread")).collect()
    });
    // back to the original coordinates: v = x T
    let tq = t.map(|x| x.to_i64().expect("small transform"));
    let mut out: Vec<ZVec> = found
        .drain(..)
        .filter(|x| x.iter().any(|&c| c != 0))
        .map(|x| {
            (0..n)
                .map(|c| BigInt::from((0..n).map(|r| x[r] as i128 * tq[(r, c)] as i128).sum::<i128>()))
                .collect()
        })
        .collect();
    out.sort();
    out
}

struct Search {
    n: usize,
    d: Vec<Rat>,
    u: Vec<Vec<Rat>>,
    bound: Rat,
}

impl Search {
    /// Integers `x` with `d_i (x - c)² ≤ budget`.
    fn range(&self, i: usize, c: &Rat, budget: &Rat) -> impl Iterator<Item = i64> {
        let r = budget / &self.d[i];
        let s = r.floor().to_integer().sqrt().to_i64().expect("small radius");
        let cf = c.floor().to_integer().to_i64().expect("small center");
        let (d, c, b) = (self.d[i].clone(), c.clone(), budget.clone());
        (cf - s - 1..=cf + s + 2).filter(move |&x| {
            let diff = Rat::from_integer(x.into()) - &c;
            &d * &diff * &diff <= b
        })
    }

    /// Coordinates `i..n` of `x` are fixed; enumerate the rest.
    fn descend(&self, i: usize, x: &mut Vec<i64>, budget: &Rat, out: &mut Vec<Vec<i64>>) {
        if i == 0 {
            out.push(x.clone());
            return;
        }
        let k = i - 1;
        let mut c = Rat::zero();
        for j in i..self.n {
            if x[j] != 0 {
                c -= &self.u[k][j] * Rat::from_integer(x[j].into());
            }
        }
        let vals: Vec<i64> = self.range(k, &c, budget).collect();
        for v in vals {
            let diff = Rat::from_integer(v.into()) - &c;
            let rest = budget - &self.d[k] * &diff * &diff;
            x[k] = v;
            self.descend(k, x, &rest, out);
        }
        x[k] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    fn a2() -> Lattice {
        Lattice::from_gram(qmatrix(&[&[2, -1], &[-1, 2]])).unwrap()
    }

    #[test]
    fn a2_invariants() {
        let l = a2();
        assert_eq!(l.discriminant(), rint(3));
        let c = l.classify().unwrap();
        assert!(c.even && !c.unimodular);
        assert_eq!(c.signature, (2, 0));
        let d = l.discriminant_group().unwrap();
        assert_eq!(d.elementary_divisors, vec![BigInt::from(3)]);
        assert_eq!(d.q_values[0], rat(2, 3));
        assert_eq!(l.short_vectors(&rint(2)).unwrap().len(), 6);
    }

    #[test]
    fn hyperbolic_plane() {
        let h = Lattice::from_gram(qmatrix(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(h.discriminant(), rint(-1));
        assert!(h.discriminant_group().unwrap().is_trivial());
        assert_eq!(h.short_vectors(&rint(2)), Err(LatticeError::Indefinite));
    }

    #[test]
    fn negative_definite_short_vectors() {
        let l = a2().scaled(&rint(-1));
        assert_eq!(l.short_vectors(&rint(2)).unwrap().len(), 6);
        assert!(l.vectors_below(&rint(2)).unwrap().is_empty());
    }

    #[test]
    fn sublattice_operations() {
        let z2 = Lattice::from_gram(qmatrix(&[&[1, 0], &[0, 1]])).unwrap();
        let s = SublatticeHandle::new(&z2, vec![vec![2.into(), 4.into()]]).unwrap();
        assert!(!s.is_primitive());
        let sat = s.saturation();
        assert!(sat.is_primitive());
        assert_eq!(sat.generators.row(0), &[BigInt::from(1), BigInt::from(2)]);
        let c = s.orthogonal_complement().unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.gram()[(0, 0)], rint(5));
        let full = SublatticeHandle::new(&z2, vec![vec![2.into(), 0.into()], vec![0.into(), 3.into()]]).unwrap();
        assert_eq!(full.index().unwrap(), BigInt::from(6));
    }

    #[test]
    fn json_round_trip() {
        let amb = qmatrix(&[&[1, 0], &[0, -1]]);
        let l = Lattice::from_basis(&amb, Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 2)], vec![rint(1), rint(-1)]]))
            .unwrap();
        let back = Lattice::from_json(&l.to_json()).unwrap();
        assert_eq!(back.gram(), l.gram());
        assert_eq!(back.basis(), l.basis());
        assert_eq!(back.ambient_signature(), Some((1, 1)));
    }
}
