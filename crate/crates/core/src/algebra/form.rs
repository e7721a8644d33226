use std::ops::{Add, Neg, Sub};

use super::basis::{self, DIM};
use crate::error::{G2Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// A constant-coefficient alternating k-tensor on ℝ⁷, stored densely in
/// lexicographic multi-index order: α = Σ_{i₁<…<i_k} α_I e^{i₁…i_k}.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm<S = f64> {
    degree: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "degree {degree} exceeds {DIM}");
        KForm {
            degree,
            coeffs: vec![S::zero(); basis::binomial(DIM, degree)],
        }
    }

    pub fn new(degree: usize, coeffs: Vec<S>) -> Result<Self> {
        if degree > DIM {
            return Err(G2Error::DegreeOverflow(degree));
        }
        let expected = basis::binomial(DIM, degree);
        if coeffs.len() != expected {
            return Err(G2Error::InvalidLength {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(KForm { degree, coeffs })
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(u8) -> S) -> Self {
        KForm {
            degree,
            coeffs: basis::masks(degree).iter().map(|&m| f(m)).collect(),
        }
    }

    /// Constant 0-form.
    pub fn constant(c: S) -> Self {
        KForm {
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// e^{i₁} ∧ … ∧ e^{i_k} for 0-based indices in any order.
    pub fn basis(idx: &[usize]) -> Self {
        let sign = basis::sort_sign(idx);
        assert!(sign != 0, "repeated index in {idx:?}");
        let mut out = Self::zero(idx.len());
        out.coeffs[basis::position(basis::mask_of(idx))] = S::from_i64(sign as i64);
        out
    }

    /// The unit top form e^{1…7}.
    pub fn top_unit() -> Self {
        Self::constant(S::one()).with_degree_top()
    }

    fn with_degree_top(self) -> Self {
        KForm {
            degree: DIM,
            coeffs: self.coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, mask: u8) -> &S {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        &self.coeffs[basis::position(mask)]
    }

    pub fn set(&mut self, mask: u8, value: S) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        self.coeffs[basis::position(mask)] = value;
    }

    /// Component of the fully antisymmetric tensor at an arbitrary index tuple.
    pub fn component(&self, idx: &[usize]) -> S {
        debug_assert_eq!(idx.len(), self.degree);
        match basis::sort_sign(idx) {
            0 => S::zero(),
            1 => self.coeffs[basis::position(basis::mask_of(idx))].clone(),
            _ => -self.coeffs[basis::position(basis::mask_of(idx))].clone(),
        }
    }

    /// Coefficient of e^{1…7}; only meaningful for top-degree forms.
    pub fn top(&self) -> S {
        assert_eq!(
            self.degree, DIM,
            "top coefficient of a {}-form",
            self.degree
        );
        self.coeffs[0].clone()
    }

    pub fn scale(&self, c: &S) -> Self {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + c.clone() * b.clone())
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        let degree = self.degree + other.degree;
        if degree > DIM {
            return Err(G2Error::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree);
        for (a, &ma) in self.coeffs.iter().zip(basis::masks(self.degree)) {
            if a.is_zero() {
                continue;
            }
            for (b, &mb) in other.coeffs.iter().zip(basis::masks(other.degree)) {
                if b.is_zero() || ma & mb != 0 {
                    continue;
                }
                let p = basis::position(ma | mb);
                let term = a.clone() * b.clone();
                out.coeffs[p] = if basis::wedge_sign(ma, mb) > 0 {
                    out.coeffs[p].clone() + term
                } else {
                    out.coeffs[p].clone() - term
                };
            }
        }
        Ok(out)
    }

    /// Interior product v ⌟ α with a vector given in the standard basis.
    pub fn interior(&self, v: &[S]) -> Result<Self> {
        if self.degree == 0 {
            return Err(G2Error::DegreeUnderflow);
        }
        assert_eq!(v.len(), DIM);
        let mut out = Self::zero(self.degree - 1);
        for (a, &m) in self.coeffs.iter().zip(basis::masks(self.degree)) {
            if a.is_zero() {
                continue;
            }
            for (pos_in_m, i) in basis::indices(m).enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let p = basis::position(m & !(1 << i));
                let term = a.clone() * v[i].clone();
                out.coeffs[p] = if pos_in_m % 2 == 0 {
                    out.coeffs[p].clone() + term
                } else {
                    out.coeffs[p].clone() - term
                };
            }
        }
        Ok(out)
    }

    /// e_i ⌟ α.
    pub fn interior_basis(&self, i: usize) -> Result<Self> {
        let mut v = vec![S::zero(); DIM];
        v[i] = S::one();
        self.interior(&v)
    }

    /// Pullback A*α, i.e. (A*α)(w₁,…,w_k) = α(Aw₁,…,Aw_k) for a 7×7 matrix A.
    pub fn pullback(&self, a: &Mat<S>) -> Self {
        let k = self.degree;
        Self::from_fn(k, |mj| {
            let cols: Vec<usize> = basis::indices(mj).collect();
            let mut acc = S::zero();
            for (c, &mi) in self.coeffs.iter().zip(basis::masks(k)) {
                if c.is_zero() {
                    continue;
                }
                let rows: Vec<usize> = basis::indices(mi).collect();
                acc = acc + c.clone() * a.minor(&rows, &cols).det();
            }
            acc
        })
    }

    /// α(v₁,…,v_k) for k vectors in the standard basis.
    pub fn evaluate(&self, vectors: &[Vec<S>]) -> S {
        assert_eq!(vectors.len(), self.degree);
        let cols: Vec<usize> = (0..self.degree).collect();
        let v = Mat::from_columns(vectors);
        let mut acc = S::zero();
        for (c, &m) in self.coeffs.iter().zip(basis::masks(self.degree)) {
            if c.is_zero() {
                continue;
            }
            let rows: Vec<usize> = basis::indices(m).collect();
            acc = acc + c.clone() * v.minor(&rows, &cols).det();
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> KForm<T> {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> KForm<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    /// Coefficient-wise dot product (the flat inner product for g = identity).
    pub fn euclidean_dot(&self, other: &Self) -> S {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Nonzero terms as `(label, coefficient)` pairs with 1-based labels.
    pub fn terms(&self) -> Vec<(String, S)> {
        self.coeffs
            .iter()
            .zip(basis::masks(self.degree))
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &m)| (basis::label(m), c.clone()))
            .collect()
    }
}

impl KForm<f64> {
    /// Euclidean coefficient norm.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl<S: Scalar> Add for &KForm<S> {
    type Output = KForm<S>;
    fn add(self, rhs: &KForm<S>) -> KForm<S> {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: &KForm<S>) -> KForm<S> {
        assert_eq!(self.degree, rhs.degree, "degree mismatch");
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Add for KForm<S> {
    type Output = KForm<S>;
    fn add(self, rhs: KForm<S>) -> KForm<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for KForm<S> {
    type Output = KForm<S>;
    fn sub(self, rhs: KForm<S>) -> KForm<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> KForm<S> {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| -x.clone()).collect(),
        }
    }
}

impl<S: Scalar> Neg for KForm<S> {
    type Output = KForm<S>;
    fn neg(self) -> KForm<S> {
        -&self
    }
}
