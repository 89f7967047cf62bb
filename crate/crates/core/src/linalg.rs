//! Dense linear algebra over a [`Scalar`] field.
//!
//! Elimination is fraction-free (Bareiss) with exact pivot tests on the exact
//! backend and partial pivoting by magnitude on the float backend.

use std::cmp::Ordering;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Largest entry magnitude, with its position.
    pub fn max_entry(&self) -> (f64, Option<(usize, usize)>) {
        let mut best = (0.0, None);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m = self[(i, j)].magnitude();
                if m > best.0 || (best.1.is_none() && !self[(i, j)].is_zero()) {
                    best = (m, Some((i, j)));
                }
            }
        }
        best
    }

    /// First entry that is not a negligible residual.
    pub fn first_non_negligible(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !self[(i, j)].negligible())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn pivot_in_column(&self, col: usize, from: usize) -> Option<usize> {
        if F::EXACT {
            (from..self.rows).find(|&i| !self[(i, col)].is_zero())
        } else {
            (from..self.rows)
                .filter(|&i| !self[(i, col)].is_zero())
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .magnitude()
                        .partial_cmp(&self[(b, col)].magnitude())
                        .unwrap_or(Ordering::Equal)
                })
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.pivot_in_column(c, r) else {
                for i in r..self.rows {
                    self[(i, c)] = F::zero();
                }
                continue;
            };
            self.swap_rows(p, r);
            let piv = self[(r, c)].clone();
            let prev_inv = prev.inv()?;
            for i in r + 1..self.rows {
                let lead = self[(i, c)].clone();
                if lead.is_zero() {
                    if piv != prev {
                        let factor = piv.clone() * prev_inv.clone();
                        for j in c + 1..self.cols {
                            let v = self[(i, j)].clone() * factor.clone();
                            self[(i, j)] = v;
                        }
                    }
                    self[(i, c)] = F::zero();
                    continue;
                }
                for j in c + 1..self.cols {
                    let v = (piv.clone() * self[(i, j)].clone()
                        - lead.clone() * self[(r, j)].clone())
                        * prev_inv.clone();
                    self[(i, j)] = v;
                }
                self[(i, c)] = F::zero();
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        // back substitution with normalized pivots
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = self[(k, c)].inv()?;
            for j in c..self.cols {
                let v = self[(k, j)].clone() * inv.clone();
                self[(k, j)] = v;
            }
            self[(k, c)] = F::one();
            for i in 0..k {
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * self[(k, j)].clone();
                    self[(i, j)] = v;
                }
                self[(i, c)] = F::zero();
            }
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Result<Vec<Vec<F>>> {
        let mut m = self.clone();
        let pivots = m.rref()?;
        Ok(nullspace_from_rref(&m, &pivots))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Argument("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let pivots = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Argument("singular matrix".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Signs of the leading principal minors of a symmetric matrix, computed
    /// by fraction-free elimination without pivoting. Returns `None` when an
    /// entry is not real.
    pub fn leading_minor_signs(&self) -> Option<Vec<Ordering>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = F::one();
        let mut signs = Vec::with_capacity(n);
        for k in 0..n {
            let piv = a[(k, k)].clone();
            let s = piv.real_sign()?;
            signs.push(s);
            if s == Ordering::Equal {
                signs.extend(std::iter::repeat_n(Ordering::Equal, n - k - 1));
                return Some(signs);
            }
            let prev_inv = prev.inv().ok()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (piv.clone() * a[(i, j)].clone() - a[(i, k)].clone() * a[(k, j)].clone())
                        * prev_inv.clone();
                    a[(i, j)] = v;
                }
            }
            prev = piv;
        }
        Some(signs)
    }

    /// Exact positive definiteness via Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        self.leading_minor_signs()
            .is_some_and(|s| s.iter().all(|o| *o == Ordering::Greater))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn axpy<F: Scalar>(y: &mut [F], a: &F, x: &[F]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + a.clone() * xi.clone();
        }
    }
}

pub fn scaled<F: Scalar>(a: &F, x: &[F]) -> Vec<F> {
    x.iter().map(|v| a.clone() * v.clone()).collect()
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn nullspace_from_rref<F: Scalar>(m: &Matrix<F>, pivots: &[usize]) -> Vec<Vec<F>> {
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![F::zero(); n];
            v[free] = F::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -m[(k, free)].clone();
            }
            v
        })
        .collect()
}

/// Incrementally maintained reduced row echelon basis of a row space.
///
/// Used for stacked constraint systems whose rows are generated on the fly;
/// only independent rows are stored.
#[derive(Clone, Debug)]
pub struct RowSpace<F> {
    width: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> RowSpace<F> {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn reduce(&self, row: &mut [F]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, r);
                row[p] = F::zero();
            }
        }
    }

    /// Inserts a row; returns true if it enlarged the space.
    pub fn insert(&mut self, mut row: Vec<F>) -> Result<bool> {
        assert_eq!(row.len(), self.width);
        self.reduce(&mut row);
        let Some(p) = pick_pivot(&row) else {
            return Ok(false);
        };
        let inv = row[p].inv()?;
        for v in row.iter_mut() {
            *v = v.clone() * inv.clone();
        }
        row[p] = F::one();
        for v in row.iter_mut() {
            if v.is_zero() {
                *v = F::zero();
            }
        }
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(r, &f, &row);
                r[p] = F::zero();
            }
        }
        self.rows.push(row);
        self.pivots.push(p);
        Ok(true)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut row = v.to_vec();
        self.reduce(&mut row);
        row.iter().all(Zero::is_zero)
    }

    /// Rows sorted by pivot column (a reduced echelon basis).
    pub fn basis(&self) -> Vec<Vec<F>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    /// Basis of the orthogonal complement `{x : r·x = 0 for all rows r}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let basis = self.basis();
        let mut pivots = self.pivots.clone();
        pivots.sort_unstable();
        let m = Matrix::from_rows(if basis.is_empty() {
            vec![vec![F::zero(); self.width]]
        } else {
            basis
        });
        if self.rows.is_empty() {
            return (0..self.width)
                .map(|c| {
                    let mut v = vec![F::zero(); self.width];
                    v[c] = F::one();
                    v
                })
                .collect();
        }
        nullspace_from_rref(&m, &pivots)
    }
}

fn pick_pivot<F: Scalar>(row: &[F]) -> Option<usize> {
    if F::EXACT {
        row.iter().position(|v| !v.is_zero())
    } else {
        // first entry of near-maximal size keeps the choice stable
        let max = row.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        if max == 0.0 || row.iter().all(Zero::is_zero) {
            return None;
        }
        row.iter().position(|v| v.magnitude() > 0.5 * max)
    }
}

/// Reduced echelon basis of the span of `vectors`.
pub fn span_basis<F: Scalar>(vectors: &[Vec<F>], width: usize) -> Result<Vec<Vec<F>>> {
    let mut rs = RowSpace::new(width);
    for v in vectors {
        rs.insert(v.clone())?;
        if rs.is_full() {
            break;
        }
    }
    Ok(rs.basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Approx, Surd};

    fn m(rows: &[&[i64]]) -> Matrix<Surd> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Surd::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank().unwrap(), 2);
        let ns = a.nullspace().unwrap();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&a.apply(&ns[0])));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn definiteness() {
        assert!(m(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!m(&[&[0, 0], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn rowspace_matches_rref() {
        let rows = [vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 2, 1, 0]];
        let mut rs = RowSpace::new(4);
        for r in &rows {
            rs.insert(r.iter().map(|&x| Surd::from_int(x)).collect()).unwrap();
        }
        assert_eq!(rs.rank(), 2);
        let ns = rs.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let r: Vec<Surd> = r.iter().map(|&x| Surd::from_int(x)).collect();
                assert!(dot(&r, v).is_zero());
            }
        }
    }

    #[test]
    fn float_backend_rank() {
        let a: Matrix<Approx<f64>> = Matrix::from_rows(vec![
            vec![Approx::new(1.0, 0.0), Approx::new(2.0, 0.0)],
            vec![Approx::new(0.5, 0.0), Approx::new(1.0, 0.0)],
        ]);
        assert_eq!(a.rank().unwrap(), 1);
    }
}
