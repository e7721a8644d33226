//! Small dense linear algebra over any [`Scalar`].
//!
//! Only what the exact identity suite needs lives here (elimination, inverse,
//! rank, definiteness). Spectral work on `f64` goes through nalgebra.

use nalgebra::DMatrix;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(
            self.cols,
            v.len(),
            "shape mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<S>) -> Mat<S> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat<S>) -> Mat<S> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    fn zip(&self, other: &Mat<S>, f: impl Fn(S, S) -> S) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    /// Square submatrix on the given row and column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Mat<S> {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => return S::one(),
            1 => return self[(0, 0)].clone(),
            2 => {
                return self[(0, 0)].clone() * self[(1, 1)].clone()
                    - self[(0, 1)].clone() * self[(1, 0)].clone()
            }
            3 => {
                let m = |i, j| self[(i, j)].clone();
                return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
            }
            _ => {}
        }
        let mut a = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = pivot_row(&a, c, c) else {
                return S::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det = det * piv.clone();
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let factor = a[(r, c)].clone() / piv.clone();
                for k in c..n {
                    let v = a[(r, k)].clone() - factor.clone() * a[(c, k)].clone();
                    a[(r, k)] = v;
                }
            }
        }
        det
    }

    /// Solve `self * X = rhs` by Gauss–Jordan elimination; `None` if singular.
    pub fn solve_mat(&self, rhs: &Mat<S>) -> Option<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut b = rhs.clone();
        for c in 0..n {
            let p = pivot_row(&a, c, c)?;
            if a[(p, c)].negligible(scale, 1e-14) {
                return None;
            }
            if p != c {
                a.swap_rows(p, c);
                b.swap_rows(p, c);
            }
            let piv = a[(c, c)].clone();
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let factor = a[(r, c)].clone() / piv.clone();
                for k in c..n {
                    let v = a[(r, k)].clone() - factor.clone() * a[(c, k)].clone();
                    a[(r, k)] = v;
                }
                for k in 0..b.cols {
                    let v = b[(r, k)].clone() - factor.clone() * b[(c, k)].clone();
                    b[(r, k)] = v;
                }
            }
        }
        for r in 0..n {
            let piv = a[(r, r)].clone();
            for k in 0..b.cols {
                let v = b[(r, k)].clone() / piv.clone();
                b[(r, k)] = v;
            }
        }
        Some(b)
    }

    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        let b = Mat::from_columns(&[rhs.to_vec()]);
        self.solve_mat(&b).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Mat<S>> {
        self.solve_mat(&Mat::identity(self.rows))
    }

    /// Rank by row reduction; in floating point, pivots below
    /// `rel_tol * max|a_ij|` count as zero.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = pivot_row(&a, rank, c) else {
                continue;
            };
            if a[(p, c)].negligible(scale, rel_tol) {
                continue;
            }
            a.swap_rows(p, rank);
            let piv = a[(rank, c)].clone();
            for r in rank + 1..self.rows {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let factor = a[(r, c)].clone() / piv.clone();
                for k in c..self.cols {
                    let v = a[(r, k)].clone() - factor.clone() * a[(rank, k)].clone();
                    a[(r, k)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Positive definiteness of a symmetric matrix via the pivots of an
    /// unpivoted LDLᵀ elimination (a Cholesky test that also works exactly).
    pub fn is_positive_definite(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        for c in 0..n {
            let piv = a[(c, c)].clone();
            if piv <= S::zero() {
                return false;
            }
            for r in c + 1..n {
                let factor = a[(r, c)].clone() / piv.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a[(r, k)].clone() - factor.clone() * a[(c, k)].clone();
                    a[(r, k)] = v;
                }
            }
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

/// Row at or below `start` with the largest pivot in column `c`
/// (first nonzero in exact arithmetic would do, but this is harmless there).
fn pivot_row<S: Scalar>(a: &Mat<S>, start: usize, c: usize) -> Option<usize> {
    let mut best: Option<(usize, S)> = None;
    for r in start..a.rows {
        let v = a[(r, c)].abs();
        if v.is_zero() {
            continue;
        }
        if S::EXACT {
            return Some(r);
        }
        match &best {
            Some((_, bv)) if *bv >= v => {}
            _ => best = Some((r, v)),
        }
    }
    best.map(|(r, _)| r)
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Inertia of a real symmetric matrix: (positive, negative, near-zero)
/// eigenvalue counts, with the zero threshold relative to the largest |λ|.
pub fn inertia(m: &DMatrix<f64>, rel_tol: f64) -> (usize, usize, usize) {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let scale = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut counts = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l.abs() <= rel_tol * scale {
            counts.2 += 1;
        } else if l > 0.0 {
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
    }
    counts
}

/// Smallest |eigenvalue| of a symmetric matrix.
pub fn min_abs_eigenvalue(m: &DMatrix<f64>) -> f64 {
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    eig.eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &x| a.min(x.abs()))
}
