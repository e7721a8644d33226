use super::basis::DIM;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Symmetric 2-tensor h_ij on ℝ⁷ (lower indices unless a method says otherwise).
#[derive(Clone, Debug, PartialEq)]
pub struct Sym2Tensor<S = f64> {
    entries: Mat<S>,
}

impl<S: Scalar> Sym2Tensor<S> {
    pub fn zero() -> Self {
        Sym2Tensor {
            entries: Mat::zeros(DIM, DIM),
        }
    }

    pub fn identity() -> Self {
        Sym2Tensor {
            entries: Mat::identity(DIM),
        }
    }

    /// Builds from the upper triangle of `f` (f(i, j) for i ≤ j).
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Mat::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in i..DIM {
                let v = f(i, j);
                m[(j, i)] = v.clone();
                m[(i, j)] = v;
            }
        }
        Sym2Tensor { entries: m }
    }

    /// Accepts a 7×7 matrix only if it is exactly symmetric.
    pub fn from_mat(m: Mat<S>) -> Option<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return None;
        }
        for i in 0..DIM {
            for j in 0..i {
                if m[(i, j)] != m[(j, i)] {
                    return None;
                }
            }
        }
        Some(Sym2Tensor { entries: m })
    }

    /// Symmetrises (m + mᵀ)/2.
    pub fn symmetrize(m: &Mat<S>) -> Self {
        let half = S::from_ratio(1, 2);
        Self::from_fn(|i, j| (m[(i, j)].clone() + m[(j, i)].clone()) * half.clone())
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[(i, j)]
    }

    pub fn as_mat(&self) -> &Mat<S> {
        &self.entries
    }

    pub fn scale(&self, c: &S) -> Self {
        Sym2Tensor {
            entries: self.entries.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Sym2Tensor {
            entries: self.entries.add(&other.entries),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Sym2Tensor {
            entries: self.entries.sub(&other.entries),
        }
    }

    /// Raise both indices with an inverse metric: g^{ia} h_ab g^{bj}.
    pub fn raised(&self, ginv: &Sym2Tensor<S>) -> Mat<S> {
        ginv.entries.mul(&self.entries).mul(&ginv.entries)
    }

    /// Tr_g h = g^{ij} h_ij.
    pub fn trace_with(&self, ginv: &Sym2Tensor<S>) -> S {
        let mut acc = S::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                acc = acc + ginv.get(i, j).clone() * self.get(i, j).clone();
            }
        }
        acc
    }

    /// Tr_g(h k) = h_ij k^{ij}.
    pub fn trace_product(&self, other: &Self, ginv: &Sym2Tensor<S>) -> S {
        let up = other.raised(ginv);
        let mut acc = S::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                acc = acc + self.get(i, j).clone() * up[(i, j)].clone();
            }
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Sym2Tensor<T> {
        Sym2Tensor {
            entries: self.entries.map(f),
        }
    }

    pub fn to_f64(&self) -> Sym2Tensor<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.max_abs()
    }

    /// Upper-triangle coordinates (28 of them), row-major.
    pub fn upper(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(28);
        for i in 0..DIM {
            for j in i..DIM {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    pub fn from_upper(v: &[S]) -> Self {
        assert_eq!(v.len(), 28);
        let mut it = v.iter();
        let mut m = Mat::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in i..DIM {
                let x = it.next().unwrap().clone();
                m[(j, i)] = x.clone();
                m[(i, j)] = x;
            }
        }
        Sym2Tensor { entries: m }
    }
}
