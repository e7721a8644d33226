use crate::algebra::{basis::DIM, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::linalg::Mat;

use super::ext::ExtForm;

/// An affine rational subtorus o + span_ℤ(u₁,…,u_k) of T⁷, oriented by the
/// ordered spanning set. The spanning vectors form a primitive sublattice, so
/// s ↦ o + Σ sᵃuₐ embeds [0,1)^k once and ∫_N α = α(u₁,…,u_k).
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSubtorus {
    spanning: Vec<[i64; DIM]>,
    offset: [f64; DIM],
}

/// Bareiss elimination; exact for integer matrices.
fn int_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl AffineSubtorus {
    pub fn new(spanning: Vec<[i64; DIM]>, offset: [f64; DIM]) -> Result<Self> {
        let k = spanning.len();
        if !matches!(k, 3 | 4 | 7) {
            return Err(G2Error::InvalidSubtorus(format!(
                "dimension {k} is not 3, 4 or 7"
            )));
        }
        // gcd of the maximal minors is 1 iff the vectors extend to a ℤ⁷ basis
        let mut g = 0i128;
        for rows in combinations(DIM, k) {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|&r| spanning.iter().map(|u| u[r] as i128).collect())
                .collect();
            g = gcd(g, int_det(&minor));
        }
        if g == 0 {
            return Err(G2Error::InvalidSubtorus(
                "spanning vectors are linearly dependent".into(),
            ));
        }
        if g != 1 {
            return Err(G2Error::InvalidSubtorus(format!(
                "spanning set is not primitive (index {g})"
            )));
        }
        Ok(AffineSubtorus { spanning, offset })
    }

    /// Span of coordinate vectors, 0-based, in the given order.
    pub fn coordinate(indices: &[usize]) -> Result<Self> {
        let spanning = indices
            .iter()
            .map(|&i| {
                let mut u = [0; DIM];
                u[i] = 1;
                u
            })
            .collect();
        Self::new(spanning, [0.0; DIM])
    }

    /// The whole torus, ordered so that its orientation is the one φ induces.
    pub fn whole(fs: &G2Structure<f64>) -> Self {
        let order: Vec<usize> = if fs.orientation() > 0 {
            (0..DIM).collect()
        } else {
            vec![1, 0, 2, 3, 4, 5, 6]
        };
        Self::coordinate(&order).expect("unimodular")
    }

    pub fn with_offset(&self, offset: [f64; DIM]) -> Self {
        AffineSubtorus {
            spanning: self.spanning.clone(),
            offset,
        }
    }

    pub fn translated(&self, v: &[f64]) -> Self {
        let mut o = self.offset;
        for i in 0..DIM {
            o[i] += v[i];
        }
        self.with_offset(o)
    }

    /// Same subtorus with the opposite orientation.
    pub fn reversed(&self) -> Self {
        let mut spanning = self.spanning.clone();
        spanning.swap(0, 1);
        AffineSubtorus {
            spanning,
            offset: self.offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.spanning.len()
    }

    pub fn spanning(&self) -> &[[i64; DIM]] {
        &self.spanning
    }

    pub fn spanning_f64(&self) -> Vec<Vec<f64>> {
        self.spanning
            .iter()
            .map(|u| u.iter().map(|&x| x as f64).collect())
            .collect()
    }

    pub fn offset(&self) -> &[f64; DIM] {
        &self.offset
    }

    /// Offset reduced to [0,1)⁷.
    pub fn reduced_offset(&self) -> [f64; DIM] {
        self.offset.map(|x| x - x.floor())
    }

    pub fn same_spanning(&self, other: &Self) -> bool {
        self.spanning == other.spanning
    }

    /// Induced metric hₐᵦ = g(uₐ, u_b).
    pub fn induced_metric(&self, fs: &G2Structure<f64>) -> Mat<f64> {
        let u = self.spanning_f64();
        let g = fs.metric().as_mat();
        let k = self.dim();
        Mat::from_fn(k, k, |a, b| {
            let gu = g.mul_vec(&u[b]);
            u[a].iter().zip(&gu).map(|(x, y)| x * y).sum()
        })
    }

    pub fn volume(&self, fs: &G2Structure<f64>) -> f64 {
        self.induced_metric(fs).det().sqrt()
    }

    /// ∫_N α for a constant k-form, with the spanning-set orientation.
    pub fn integrate(&self, alpha: &KForm<f64>) -> f64 {
        assert_eq!(alpha.degree(), self.dim());
        alpha.evaluate(&self.spanning_f64())
    }

    /// α restricted to N in subtorus coordinates.
    pub fn restrict(&self, alpha: &KForm<f64>) -> ExtForm {
        ExtForm::pullback(alpha, &self.spanning_f64())
    }

    /// A g-orthonormal basis of the tangent space.
    pub fn orthonormal_tangent(&self, fs: &G2Structure<f64>) -> Vec<Vec<f64>> {
        gram_schmidt(fs, self.spanning_f64())
    }

    /// A g-orthonormal basis of the g-orthogonal complement.
    pub fn normal_basis(&self, fs: &G2Structure<f64>) -> Vec<Vec<f64>> {
        let mut vecs = self.orthonormal_tangent(fs);
        let k = vecs.len();
        for i in 0..DIM {
            let mut e = vec![0.0; DIM];
            e[i] = 1.0;
            vecs.push(e);
        }
        gram_schmidt(fs, vecs).split_off(k)
    }
}

fn g_dot(fs: &G2Structure<f64>, a: &[f64], b: &[f64]) -> f64 {
    let gb = fs.metric().as_mat().mul_vec(b);
    a.iter().zip(&gb).map(|(x, y)| x * y).sum()
}

/// Gram–Schmidt in the metric g, dropping vectors that are dependent on
/// their predecessors.
fn gram_schmidt(fs: &G2Structure<f64>, vecs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in vecs {
        let scale = g_dot(fs, &v, &v).sqrt();
        let mut w = v;
        for _ in 0..2 {
            for q in &out {
                let c = g_dot(fs, &w, q);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = g_dot(fs, &w, &w).sqrt();
        if n > 1e-10 * scale.max(1e-300) {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}
