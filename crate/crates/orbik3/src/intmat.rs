//! Integer matrix normal forms: Hermite (row style) and Smith with
//! unimodular transforms, plus integral kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;

pub type ZMatrix = Matrix<BigInt>;

/// Smith normal form `U A V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: ZMatrix,
    pub v: ZMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative, each dividing the next
    /// (zeros last).
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith(a: &ZMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = ZMatrix::identity(m);
    let mut v = ZMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, v, d, steps);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row(&mut d, i, t, &-q.clone());
                add_row(&mut u, i, t, &-q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                add_col(&mut d, j, t, &-q.clone());
                add_col(&mut v, j, t, &-q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..n {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..m {
                u[(t, j)] = -u[(t, j)].clone();
            }
        }
    }
    finish(u, v, d, steps)
}

fn finish(u: ZMatrix, v: ZMatrix, d: ZMatrix, steps: usize) -> Smith {
    let diagonal = (0..steps).map(|i| d[(i, i)].abs()).collect();
    Smith { u, v, diagonal }
}

/// row[dst] += f * row[src]
fn add_row(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
    for j in 0..m.cols() {
        let s = &m[(src, j)];
        if !s.is_zero() {
            let x = s.clone() * f;
            m[(dst, j)] += x;
        }
    }
}

/// col[dst] += f * col[src]
fn add_col(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
    for i in 0..m.rows() {
        let s = &m[(i, src)];
        if !s.is_zero() {
            let x = s.clone() * f;
            m[(i, dst)] += x;
        }
    }
}

/// Row-style Hermite normal form with zero rows removed. Two integer
/// matrices have the same row lattice iff their HNFs coincide.
pub fn hnf(a: &ZMatrix) -> ZMatrix {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !m[(i, c)].is_zero()
                    && best.is_none_or(|b| m[(i, c)].abs() < m[(b, c)].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].div_floor(&m[(r, c)]);
                add_row(&mut m, i, r, &-q);
                done &= m[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            for j in 0..cols {
                m[(r, j)] = -m[(r, j)].clone();
            }
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            if !q.is_zero() {
                add_row(&mut m, i, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Primitive basis of the integral right kernel `{x ∈ Z^n : A x = 0}`,
/// returned as rows.
pub fn integer_kernel(a: &ZMatrix) -> Vec<Vec<BigInt>> {
    let s = smith(a);
    let r = s.rank();
    (r..a.cols()).map(|k| (0..a.cols()).map(|i| s.v[(i, k)].clone()).collect()).collect()
}

/// Lowest common multiple of the denominators of a list of rationals.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a rational matrix to an integer one, returning the scale factor.
pub fn clear_denominators(m: &Matrix<BigRational>) -> (ZMatrix, BigInt) {
    let den = common_denominator((0..m.rows()).flat_map(|i| m.row(i).iter()));
    let z = m.map(|x| (x * BigRational::from_integer(den.clone())).to_integer());
    (z, den)
}

/// Integer coordinates `x` with `x · B = v` if they exist. `B` must have
/// independent rows.
pub fn integral_combination(b: &Matrix<BigRational>, v: &[BigRational]) -> Option<Vec<BigInt>> {
    let x = b.solve_rows(v)?;
    if x.iter().all(|c| c.is_integer()) {
        Some(x.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

pub fn to_rational(m: &ZMatrix) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[test]
    fn smith_of_a2_gram() {
        let a = z(&[&[2, -1], &[-1, 2]]);
        let s = smith(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(3)]);
        let d = s.u.mul(&a).mul(&s.v);
        assert_eq!(d, z(&[&[1, 0], &[0, 3]]));
    }

    #[test]
    fn smith_divisibility_fix() {
        let a = z(&[&[2, 0], &[0, 3]]);
        let s = smith(&a);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let d = s.u.mul(&a).mul(&s.v);
        assert_eq!(d, z(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn hermite_is_canonical() {
        let a = z(&[&[2, 4], &[1, 3], &[3, 7]]);
        let b = z(&[&[1, 1], &[0, 2]]);
        assert_eq!(hnf(&a), hnf(&b));
        assert_eq!(hnf(&a).rows(), 2);
    }

    #[test]
    fn kernel_rows_are_primitive() {
        let a = z(&[&[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        let km = Matrix::from_rows(k);
        assert_eq!(smith(&km).diagonal, vec![BigInt::one(), BigInt::one()]);
    }
}
