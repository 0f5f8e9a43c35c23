//! Dense matrices over a ring, with field algorithms (elimination,
//! determinant, inverse, kernel, signature) for any [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};


use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        l.finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Submatrix made of the given rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Vertical concatenation; panics on column mismatch.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    *o = o.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        dot(u, &self.mul_vec(v))
    }

    /// `B M B^T` for a matrix `B` whose rows are coordinate vectors.
    pub fn congruence(&self, b: &Self) -> Self {
        b.mul(self).mul(&b.transpose())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Standard dot product.
pub fn dot<T: Ring>(u: &[T], v: &[T]) -> T {
    assert_eq!(u.len(), v.len(), "dot product length mismatch");
    let mut acc = T::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc + a.clone() * b.clone();
        }
    }
    acc
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Field> Matrix<T> {
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, r, c) else { continue };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_exact_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let s = m[(r, j)].clone();
                    if !s.is_exact_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = pick_pivot(&m, c, c) else { return T::zero() };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m[(i, c)].is_exact_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() / piv.clone();
                for j in c..n {
                    let s = m[(c, j)].clone();
                    if !s.is_exact_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * s;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| e.reduced[(i, n + j)].clone()))
    }

    /// Some `x` with `x · self = v`, i.e. `v` as a combination of the rows.
    pub fn solve_rows(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.cols);
        let t = self.transpose();
        let aug = Matrix::from_fn(t.rows, t.cols + 1, |i, j| {
            if j < t.cols {
                t[(i, j)].clone()
            } else {
                v[i].clone()
            }
        });
        let e = aug.rref();
        if e.pivots.last() == Some(&t.cols) {
            return None;
        }
        let mut x = vec![T::zero(); t.cols];
        for (r, &c) in e.pivots.iter().enumerate() {
            x[c] = e.reduced[(r, t.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![T::zero(); self.cols];
                x[f] = T::one();
                for (r, &c) in e.pivots.iter().enumerate() {
                    x[c] = -e.reduced[(r, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Signature `(positive, negative)` of a symmetric matrix by congruence
    /// diagonalisation with symmetric pivots. Returns `None` if degenerate.
    pub fn signature(&self) -> Option<(usize, usize)> {
        assert!(self.is_symmetric(), "signature of a non-symmetric matrix");
        let mut m = self.clone();
        let (mut pos, mut neg) = (0, 0);
        let mut n = m.rows;
        while n > 0 {
            let k = n - 1;
            // Move a nonzero diagonal entry to position k, creating one if
            // necessary by a congruence x_i -> x_i + x_j.
            let diag = (0..n).find(|&i| !m[(i, i)].is_exact_zero());
            let piv = match diag {
                Some(i) => i,
                None => {
                    let off = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .find(|&(i, j)| i != j && !m[(i, j)].is_exact_zero());
                    let (i, j) = off?;
                    for c in 0..n {
                        let v = m[(j, c)].clone();
                        m[(i, c)] = m[(i, c)].clone() + v;
                    }
                    for r in 0..n {
                        let v = m[(r, j)].clone();
                        m[(r, i)] = m[(r, i)].clone() + v;
                    }
                    i
                }
            };
            m.swap_rows(piv, k);
            m.swap_cols(piv, k);
            let d = m[(k, k)].clone();
            if d > T::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in 0..k {
                if m[(i, k)].is_exact_zero() {
                    continue;
                }
                let f = m[(i, k)].clone() / d.clone();
                for j in 0..k {
                    let s = m[(k, j)].clone();
                    if !s.is_exact_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * s;
                    }
                }
            }
            n = k;
        }
        Some((pos, neg))
    }
}

fn pick_pivot<T: Field>(m: &Matrix<T>, from: usize, c: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in from..m.rows {
        let x = &m[(i, c)];
        if x.is_exact_zero() {
            continue;
        }
        match best {
            None => best = Some(i),
            Some(b) if x.abs() > m[(b, c)].abs() => best = Some(i),
            _ => {}
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rint;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rint(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = q(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a.det(), rint(3));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn signatures() {
        assert_eq!(q(&[&[0, 1], &[1, 0]]).signature(), Some((1, 1)));
        assert_eq!(q(&[&[-2, 1], &[1, -2]]).signature(), Some((0, 2)));
        assert_eq!(q(&[&[1, 1], &[1, 1]]).signature(), None);
        let f: Matrix<f64> = Matrix::from_rows(vec![vec![0.0, 3.0], vec![3.0, 0.0]]);
        assert_eq!(f.signature(), Some((1, 1)));
    }

    #[test]
    fn kernel_and_solve() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let b = q(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(b.solve_rows(&[rint(2), rint(3), rint(5)]), Some(vec![rint(2), rint(3)]));
        assert_eq!(b.solve_rows(&[rint(1), rint(1), rint(1)]), None);
    }
}
