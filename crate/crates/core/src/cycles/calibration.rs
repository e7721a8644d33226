use crate::algebra::{basis::DIM, G2Structure};
use crate::linalg::Mat;

use super::ext::ExtForm;
use super::subtorus::AffineSubtorus;

/// Pointwise quantities below this count as zero.
pub const CALIBRATION_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct AssociativeReport {
    /// φ(u₁,u₂,u₃) on the ordered spanning set.
    pub phi_value: f64,
    pub volume: f64,
    /// φ restricted to N equals +vol_N.
    pub calibrated: bool,
    /// φ restricted to N equals −vol_N: associative with the other orientation.
    pub reverse_calibrated: bool,
    /// max |(X⌟ψ)(ê₁,ê₂,ê₃)| over a g-orthonormal normal basis X and a
    /// g-orthonormal tangent frame ê.
    pub psi_criterion: f64,
}

impl AssociativeReport {
    pub fn is_associative(&self) -> bool {
        self.calibrated
    }

    /// Orientation-free criterion (X⌟ψ)|_N = 0.
    pub fn is_associative_unoriented(&self) -> bool {
        self.psi_criterion < CALIBRATION_TOL
    }
}

pub fn is_associative(n: &AffineSubtorus, fs: &G2Structure<f64>) -> AssociativeReport {
    assert_eq!(n.dim(), 3, "associativity needs a 3-subtorus");
    let phi_value = n.integrate(fs.phi());
    let volume = n.volume(fs);
    let tol = CALIBRATION_TOL * volume.max(1.0);
    let frame = n.orthonormal_tangent(fs);
    let psi_criterion = n
        .normal_basis(fs)
        .iter()
        .map(|x| {
            let mut v = vec![x.clone()];
            v.extend(frame.iter().cloned());
            fs.psi().evaluate(&v).abs()
        })
        .fold(0.0, f64::max);
    AssociativeReport {
        phi_value,
        volume,
        calibrated: (phi_value - volume).abs() < tol,
        reverse_calibrated: (phi_value + volume).abs() < tol,
        psi_criterion,
    }
}

/// |χ(ê₁,ê₂,ê₃)|_g for the vector-valued 3-form with g(χ(u,v,w), X) = ψ(X,u,v,w),
/// on a g-orthonormal frame of N. Zero exactly on associative planes.
pub fn assoc_chi_criterion(n: &AffineSubtorus, fs: &G2Structure<f64>) -> f64 {
    let frame = n.orthonormal_tangent(fs);
    let w: Vec<f64> = (0..DIM)
        .map(|i| {
            let mut e = vec![0.0; DIM];
            e[i] = 1.0;
            let mut v = vec![e];
            v.extend(frame.iter().cloned());
            fs.psi().evaluate(&v)
        })
        .collect();
    let gw = fs.inverse_metric().as_mat().mul_vec(&w);
    w.iter()
        .zip(&gw)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoassociativeReport {
    /// max |φ(êₐ,ê_b,ê_c)| over a g-orthonormal tangent frame.
    pub phi_restriction: f64,
    /// ψ(u₁,…,u₄) on the ordered spanning set.
    pub psi_value: f64,
    pub volume: f64,
    /// |ψ(u₁,…,u₄) − vol_L| for the spanning-set orientation.
    pub psi_defect: f64,
    /// Whether the spanning-set orientation is the one ψ calibrates.
    pub orientation_calibrated: bool,
}

impl CoassociativeReport {
    pub fn is_coassociative(&self) -> bool {
        self.phi_restriction < CALIBRATION_TOL
    }
}

pub fn is_coassociative(l: &AffineSubtorus, fs: &G2Structure<f64>) -> CoassociativeReport {
    assert_eq!(l.dim(), 4, "coassociativity needs a 4-subtorus");
    let frame = l.orthonormal_tangent(fs);
    let mut phi_restriction = 0.0f64;
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                let v = fs
                    .phi()
                    .evaluate(&[frame[a].clone(), frame[b].clone(), frame[c].clone()]);
                phi_restriction = phi_restriction.max(v.abs());
            }
        }
    }
    let psi_value = l.integrate(fs.psi());
    let volume = l.volume(fs);
    CoassociativeReport {
        phi_restriction,
        psi_value,
        volume,
        psi_defect: (psi_value - volume).abs(),
        orientation_calibrated: psi_value > 0.0,
    }
}

/// Anti-self-dual part of a 2-form on a 4-subtorus, with self-duality taken
/// for the orientation ψ calibrates. Returns (f⁻, |f⁻|).
pub fn anti_self_dual_part(
    l: &AffineSubtorus,
    fs: &G2Structure<f64>,
    f: &ExtForm,
) -> (ExtForm, f64) {
    let h = l.induced_metric(fs);
    let hinv = h.inverse().unwrap_or_else(|| Mat::identity(4));
    let orient = if l.integrate(fs.psi()) >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let star = f.hodge(&hinv, orient * h.det().sqrt());
    let asd = f.axpy(-1.0, &star).scale(0.5);
    let norm = asd.inner(&asd, &hinv).max(0.0).sqrt();
    (asd, norm)
}
