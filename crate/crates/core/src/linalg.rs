//! Dense exact matrices over the rationals.
//!
//! # Key Operations
//!
//! - [`RationalMatrix::rref`]: Gauss-Jordan elimination with pivot columns
//! - [`RationalMatrix::nullspace`]: one basis vector per free column
//! - [`solve_affine`]: particular solution (free variables zero) plus kernel
//! - [`RationalMatrix::inverse`], [`RationalMatrix::det`]
//!
//! # Design Notes
//!
//! Pivots are always the first nonzero entry in column order, so every basis
//! produced here depends only on the input, never on arithmetic history.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{format_rational, int, parse_rational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Parse rows of rational strings such as `"-3/2"`.
    pub fn parse_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn block_diag(blocks: &[&RationalMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// `[[a, b], [c, d]]` from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.rows;
        for m in [a, b, c, d] {
            if m.rows != n || m.cols != n {
                return Err(Error::Dimension("blocks must be square and equal-sized".into()));
            }
        }
        let mut out = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = a[(i, j)].clone();
                out[(i, n + j)] = b[(i, j)].clone();
                out[(n + i, j)] = c[(i, j)].clone();
                out[(n + i, n + j)] = d[(i, j)].clone();
            }
        }
        Ok(out)
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Sub-block `rows r0..r0+h`, `cols c0..c0+w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        let mut m = Self::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn checked_zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.checked_zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_zip(other, |a, b| a - b)
    }

    /// Reduced row-echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &factor;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in column order.
    /// Each vector has a 1 in its free column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] / &pivot;
                for j in c..n {
                    let v = &m[(c, j)] * &factor;
                    m[(i, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Entries as rational strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect()
    }
}

/// Solve `A v = b`. Returns the particular solution with every free variable
/// zero, or `None` when the system is inconsistent.
pub fn solve_affine(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows {
        return Err(Error::Dimension("right-hand side length".into()));
    }
    let mut aug = RationalMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut v = vec![Rational::zero(); a.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = r[(row, a.cols)].clone();
    }
    Ok(Some(v))
}

/// Canonical basis of the span of `vectors`: the nonzero rows of their RREF.
pub fn reduced_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = RationalMatrix::from_rows(vectors.to_vec()).expect("equal-length vectors");
    debug_assert_eq!(m.cols, len);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let before = RationalMatrix::from_rows(rows.clone()).expect("vectors").rank();
    rows.push(v.to_vec());
    RationalMatrix::from_rows(rows).expect("vectors").rank() == before
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;
    fn neg(self) -> RationalMatrix {
        self.scale(&int(-1))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::frac;

    #[test]
    fn rref_and_nullspace() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(
            r,
            RationalMatrix::from_rows(vec![
                vec![int(1), int(0), int(1)],
                vec![int(0), int(1), int(1)],
                vec![int(0), int(0), int(0)],
            ])
            .unwrap()
        );
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![int(-1), int(-1), int(1)]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn inverse_and_det() {
        let m = RationalMatrix::from_i64(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.det().unwrap(), int(5));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RationalMatrix::identity(2));
        assert_eq!(inv[(0, 0)], frac(3, 5));
        let sing = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
        assert_eq!(sing.det().unwrap(), int(0));
        let perm = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(perm.det().unwrap(), int(-1));
    }

    #[test]
    fn affine_solve() {
        let a = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_affine(&a, &[int(2), int(2)]).unwrap(), Some(vec![int(2), int(0)]));
        assert_eq!(solve_affine(&a, &[int(2), int(3)]).unwrap(), None);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![int(1), int(0), int(1)]];
        assert!(in_span(&basis, &[int(2), int(0), int(2)]));
        assert!(!in_span(&basis, &[int(0), int(1), int(0)]));
        assert!(in_span(&[], &[int(0), int(0)]));
    }

    #[test]
    fn symmetry_predicates() {
        assert!(RationalMatrix::from_i64(&[&[1, 2], &[2, 1]]).is_symmetric());
        assert!(RationalMatrix::from_i64(&[&[0, 2], &[-2, 0]]).is_antisymmetric());
        assert!(!RationalMatrix::from_i64(&[&[1, 2], &[-2, 0]]).is_antisymmetric());
    }

    #[test]
    fn string_round_trip() {
        let m = RationalMatrix::parse_rows(&[vec!["1/2", "-3"], vec!["0", "7/4"]]).unwrap();
        assert_eq!(RationalMatrix::parse_rows(&m.to_strings()).unwrap(), m);
        assert!(RationalMatrix::parse_rows(&[vec!["1"], vec!["1", "2"]]).is_err());
    }
}
