use crate::algebra::{basis, KForm};
use crate::linalg::Mat;

/// An inhomogeneous constant form on ℝ^d (d ≤ 8), indexed by bitmask.
///
/// Used on subtori and on swept cylinders [0,1]×N, where the sweep
/// coordinate is index 0 and the subtorus coordinates follow.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtForm {
    dim: usize,
    coeffs: Vec<f64>,
}

impl ExtForm {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 8, "dimension {dim} exceeds 8");
        ExtForm {
            dim,
            coeffs: vec![0.0; 1 << dim],
        }
    }

    pub fn scalar(dim: usize, c: f64) -> Self {
        let mut out = Self::zero(dim);
        out.coeffs[0] = c;
        out
    }

    /// e^{i₁}∧…∧e^{i_k} for 0-based indices in any order.
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut out = Self::zero(dim);
        let sign = basis::sort_sign(idx);
        assert!(sign != 0, "repeated index");
        out.coeffs[basis::mask_of(idx) as usize] = sign as f64;
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, mask: u8) -> f64 {
        self.coeffs[mask as usize]
    }

    pub fn set(&mut self, mask: u8, value: f64) {
        self.coeffs[mask as usize] = value;
    }

    /// Coefficient of the top monomial e^{0…d−1}.
    pub fn top(&self) -> f64 {
        self.coeffs[(1usize << self.dim) - 1]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn scale(&self, c: f64) -> Self {
        ExtForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    pub fn axpy(&self, c: f64, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        ExtForm {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (ma, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (mb, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 || ma & mb != 0 {
                    continue;
                }
                out.coeffs[ma | mb] += basis::wedge_sign(ma as u8, mb as u8) as f64 * a * b;
            }
        }
        out
    }

    /// Degree-k part.
    pub fn part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, &c) in self.coeffs.iter().enumerate() {
            if m.count_ones() as usize == k {
                out.coeffs[m] = c;
            }
        }
        out
    }

    /// Power series exp(x); terminates because positive-degree parts are nilpotent.
    pub fn exp(&self) -> Self {
        let c0 = self.coeffs[0];
        let mut nil = self.clone();
        nil.coeffs[0] = 0.0;
        let mut out = Self::scalar(self.dim, 1.0);
        let mut term = Self::scalar(self.dim, 1.0);
        for n in 1..=self.dim {
            term = term.wedge(&nil).scale(1.0 / n as f64);
            if term.max_abs() == 0.0 {
                break;
            }
            out = out.add(&term);
        }
        out.scale(c0.exp())
    }

    /// Prepend a new coordinate at index 0, shifting the others up.
    pub fn shifted(&self) -> Self {
        let mut out = Self::zero(self.dim + 1);
        for (m, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[m << 1] = c;
        }
        out
    }

    /// Pullback of an ambient constant form along the linear map sending the
    /// i-th coordinate vector to `vectors[i]` (each a vector in ℝ⁷).
    pub fn pullback(alpha: &KForm<f64>, vectors: &[Vec<f64>]) -> Self {
        let d = vectors.len();
        let k = alpha.degree();
        let mut out = Self::zero(d);
        if k > d {
            return out;
        }
        let w = Mat::from_columns(vectors);
        for m in 0..(1usize << d) {
            if m.count_ones() as usize != k {
                continue;
            }
            let cols: Vec<usize> = basis::indices(m as u8).collect();
            let mut acc = 0.0;
            for (c, &mi) in alpha.coeffs().iter().zip(basis::masks(k)) {
                if *c == 0.0 {
                    continue;
                }
                let rows: Vec<usize> = basis::indices(mi).collect();
                acc += c * w.minor(&rows, &cols).det();
            }
            out.coeffs[m] = acc;
        }
        out
    }

    /// Homogeneous 2-form from its strictly upper-triangular coefficients f_ab, a < b.
    pub fn two_form(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut out = Self::zero(dim);
        for a in 0..dim {
            for b in a + 1..dim {
                out.coeffs[(1 << a) | (1 << b)] = f(a, b);
            }
        }
        out
    }

    /// Pointwise inner product for the metric with inverse `hinv` (d×d).
    pub fn inner(&self, other: &Self, hinv: &Mat<f64>) -> f64 {
        let mut acc = 0.0;
        for (mi, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let rows: Vec<usize> = basis::indices(mi as u8).collect();
            for (mj, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 || mi.count_ones() != mj.count_ones() {
                    continue;
                }
                let cols: Vec<usize> = basis::indices(mj as u8).collect();
                let g = if rows.is_empty() {
                    1.0
                } else {
                    hinv.minor(&rows, &cols).det()
                };
                acc += a * b * g;
            }
        }
        acc
    }

    /// Hodge star for the metric with inverse `hinv` and volume form
    /// `vol_coeff`·e^{0…d−1}.
    pub fn hodge(&self, hinv: &Mat<f64>, vol_coeff: f64) -> Self {
        let full = (1usize << self.dim) - 1;
        let mut out = Self::zero(self.dim);
        for mi in 0..=full {
            // (∗b)_{Iᶜ} = ε(I, Iᶜ)·vol·⟨e^I, b⟩
            let e = {
                let mut e = Self::zero(self.dim);
                e.coeffs[mi] = 1.0;
                e
            };
            let ip = e.inner(self, hinv);
            if ip != 0.0 {
                let mc = full & !mi;
                out.coeffs[mc] += basis::wedge_sign(mi as u8, mc as u8) as f64 * vol_coeff * ip;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_symplectic_form() {
        // exp(ω) for ω = e01 + e23 has top part e0123.
        let w = ExtForm::basis(4, &[0, 1]).add(&ExtForm::basis(4, &[2, 3]));
        let e = w.exp();
        assert!((e.top() - 1.0).abs() < 1e-15);
        assert!((e.coeff(0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hodge_in_four_dimensions() {
        let id = Mat::identity(4);
        let s = ExtForm::basis(4, &[0, 1]).hodge(&id, 1.0);
        assert_eq!(s, ExtForm::basis(4, &[2, 3]));
    }
}
