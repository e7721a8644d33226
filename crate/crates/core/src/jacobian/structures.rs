use crate::algebra::basis;
use crate::algebra::{G2Structure, KForm};
use crate::error::Result;
use crate::linalg::Mat;

/// Tangent vector (η, θ) ∈ H³ ⊕ H⁴ to the universal Jacobian.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianVector {
    pub eta: KForm<f64>,
    pub theta: KForm<f64>,
}

/// Tangent vector (η, μ) ∈ H³ ⊕ H³ in the tangent-bundle model.
#[derive(Clone, Debug, PartialEq)]
pub struct TildeJacobianVector {
    pub eta: KForm<f64>,
    pub mu: KForm<f64>,
}

impl JacobianVector {
    pub fn new(eta: KForm<f64>, theta: KForm<f64>) -> Self {
        assert_eq!((eta.degree(), theta.degree()), (3, 4));
        JacobianVector { eta, theta }
    }

    pub fn zero() -> Self {
        Self::new(KForm::zero(3), KForm::zero(4))
    }

    /// The i-th vector of the standard basis: e^I for i < 35, then e^J.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        if i < 35 {
            v.eta.set(basis::masks(3)[i], 1.0);
        } else {
            v.theta.set(basis::masks(4)[i - 35], 1.0);
        }
        v
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.eta
            .coeffs()
            .iter()
            .chain(self.theta.coeffs())
            .copied()
            .collect()
    }

    pub fn from_vec(v: &[f64]) -> Self {
        Self::new(
            KForm::new(3, v[..35].to_vec()).unwrap(),
            KForm::new(4, v[35..].to_vec()).unwrap(),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.eta.max_abs().max(self.theta.max_abs())
    }
}

impl TildeJacobianVector {
    pub fn new(eta: KForm<f64>, mu: KForm<f64>) -> Self {
        assert_eq!((eta.degree(), mu.degree()), (3, 3));
        TildeJacobianVector { eta, mu }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::new(KForm::zero(3), KForm::zero(3));
        let m = basis::masks(3)[i % 35];
        if i < 35 {
            v.eta.set(m, 1.0);
        } else {
            v.mu.set(m, 1.0);
        }
        v
    }

    pub fn max_abs(&self) -> f64 {
        self.eta.max_abs().max(self.mu.max_abs())
    }
}

/// ω((η₁,θ₁),(η₂,θ₂)) = ∫η₁∧θ₂ − ∫η₂∧θ₁.
pub fn omega(fs: &G2Structure<f64>, v1: &JacobianVector, v2: &JacobianVector) -> f64 {
    fs.integrate_wedge(&v1.eta, &v2.theta).unwrap()
        - fs.integrate_wedge(&v2.eta, &v1.theta).unwrap()
}

/// 𝒢_𝒥 = ∫η₁∧⋆η₂ + ∫θ₁∧⋆θ₂.
pub fn metric_j(fs: &G2Structure<f64>, v1: &JacobianVector, v2: &JacobianVector) -> Result<f64> {
    Ok(fs.star_pairing(&v1.eta, &v2.eta)?
        + fs.integrate_wedge(&v1.theta, &fs.star_op(&v2.theta)?)?)
}

/// J(η, θ) = (−⋆θ, ⋆η).
pub fn complex_structure(fs: &G2Structure<f64>, v: &JacobianVector) -> Result<JacobianVector> {
    Ok(JacobianVector::new(
        -&fs.star_op(&v.theta)?,
        fs.star_op(&v.eta)?,
    ))
}

/// ω̃ = ∫η₁∧⋆μ₂ − ∫η₂∧⋆μ₁.
pub fn omega_tilde(
    fs: &G2Structure<f64>,
    v1: &TildeJacobianVector,
    v2: &TildeJacobianVector,
) -> Result<f64> {
    Ok(fs.star_pairing(&v1.eta, &v2.mu)? - fs.star_pairing(&v2.eta, &v1.mu)?)
}

/// 𝒢̃ = ∫η₁∧⋆η₂ + ∫μ₁∧⋆μ₂.
pub fn metric_tilde(
    fs: &G2Structure<f64>,
    v1: &TildeJacobianVector,
    v2: &TildeJacobianVector,
) -> Result<f64> {
    Ok(fs.star_pairing(&v1.eta, &v2.eta)? + fs.star_pairing(&v1.mu, &v2.mu)?)
}

/// J̃(η, μ) = (−μ, η).
pub fn complex_structure_tilde(v: &TildeJacobianVector) -> TildeJacobianVector {
    TildeJacobianVector::new(-&v.mu, v.eta.clone())
}

/// The fibrewise identification θ = ⋆μ.
pub fn untilde(fs: &G2Structure<f64>, v: &TildeJacobianVector) -> Result<JacobianVector> {
    Ok(JacobianVector::new(v.eta.clone(), fs.star_op(&v.mu)?))
}

/// α_{(φ,D)}(η, θ) = ½∫φ∧θ − ½∫D∧η; dα = ω.
pub fn alpha(fs: &G2Structure<f64>, d: &KForm<f64>, v: &JacobianVector) -> f64 {
    0.5 * fs.integrate_wedge(fs.phi(), &v.theta).unwrap()
        - 0.5 * fs.integrate_wedge(d, &v.eta).unwrap()
}

/// α̃_{(φ,C)}(η, μ) = ½∫μ∧ψ − ½∫C∧⋆η; dα̃ = ω̃.
pub fn alpha_tilde(fs: &G2Structure<f64>, c: &KForm<f64>, v: &TildeJacobianVector) -> Result<f64> {
    Ok(0.5 * fs.integrate_wedge(&v.mu, fs.psi())? - 0.5 * fs.star_pairing(c, &v.eta)?)
}

/// ½∫φ∧⋆μ − ½∫C∧⋆η. Since ∫φ∧⋆μ = (4/3)∫μ∧ψ, its exterior derivative
/// is (7/6)ω̃ rather than ω̃.
pub fn alpha_tilde_star_form(
    fs: &G2Structure<f64>,
    c: &KForm<f64>,
    v: &TildeJacobianVector,
) -> Result<f64> {
    Ok(0.5 * fs.star_pairing(fs.phi(), &v.mu)? - 0.5 * fs.star_pairing(c, &v.eta)?)
}

fn matrix70(f: impl Fn(usize, usize) -> Result<f64>) -> Result<Mat<f64>> {
    let mut out = Mat::zeros(70, 70);
    for i in 0..70 {
        for j in 0..70 {
            out[(i, j)] = f(i, j)?;
        }
    }
    Ok(out)
}

pub fn omega_matrix(fs: &G2Structure<f64>) -> Mat<f64> {
    let b: Vec<JacobianVector> = (0..70).map(JacobianVector::basis).collect();
    matrix70(|i, j| Ok(omega(fs, &b[i], &b[j]))).unwrap()
}

pub fn metric_j_matrix(fs: &G2Structure<f64>) -> Result<Mat<f64>> {
    let b: Vec<JacobianVector> = (0..70).map(JacobianVector::basis).collect();
    matrix70(|i, j| metric_j(fs, &b[i], &b[j]))
}

/// Column j is J applied to the j-th basis vector.
pub fn complex_structure_matrix(fs: &G2Structure<f64>) -> Result<Mat<f64>> {
    let cols: Vec<Vec<f64>> = (0..70)
        .map(|j| complex_structure(fs, &JacobianVector::basis(j)).map(|v| v.to_vec()))
        .collect::<Result<_>>()?;
    Ok(Mat::from_columns(&cols))
}

pub fn omega_tilde_matrix(fs: &G2Structure<f64>) -> Result<Mat<f64>> {
    let b: Vec<TildeJacobianVector> = (0..70).map(TildeJacobianVector::basis).collect();
    matrix70(|i, j| omega_tilde(fs, &b[i], &b[j]))
}

pub fn metric_tilde_matrix(fs: &G2Structure<f64>) -> Result<Mat<f64>> {
    let b: Vec<TildeJacobianVector> = (0..70).map(TildeJacobianVector::basis).collect();
    matrix70(|i, j| metric_tilde(fs, &b[i], &b[j]))
}
