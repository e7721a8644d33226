//! The pointwise identities relating φ, ψ, g and symmetric tensors, each as
//! an executable check.

use super::basis::{self, DIM};
use super::form::KForm;
use super::structure::{metric_data, metric_from_phi, FormType, G2Structure};
use super::sym2::Sym2Tensor;
use crate::error::{G2Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Dense 7³ array of φ_ijk.
pub fn full_tensor3<S: Scalar>(a: &KForm<S>) -> Vec<S> {
    assert_eq!(a.degree(), 3);
    let mut out = vec![S::zero(); 343];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                out[(i * DIM + j) * DIM + k] = a.component(&[i, j, k]);
            }
        }
    }
    out
}

/// Dense 7⁴ array of ψ_ijkl.
pub fn full_tensor4<S: Scalar>(a: &KForm<S>) -> Vec<S> {
    assert_eq!(a.degree(), 4);
    let mut out = vec![S::zero(); 2401];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                for l in 0..DIM {
                    out[((i * DIM + j) * DIM + k) * DIM + l] = a.component(&[i, j, k, l]);
                }
            }
        }
    }
    out
}

#[inline]
fn t3(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

/// η_ijk = h_il g^lm φ_mjk + h_jl g^lm φ_imk + h_kl g^lm φ_ijm.
pub fn sym2_to_form<S: Scalar>(fs: &G2Structure<S>, h: &Sym2Tensor<S>) -> KForm<S> {
    let phi = full_tensor3(fs.phi());
    let m = h.as_mat().mul(fs.inverse_metric().as_mat());
    KForm::from_fn(3, |mask| {
        let idx: Vec<usize> = basis::indices(mask).collect();
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let mut acc = S::zero();
        for p in 0..DIM {
            let terms = [
                (&m[(i, p)], &phi[t3(p, j, k)]),
                (&m[(j, p)], &phi[t3(i, p, k)]),
                (&m[(k, p)], &phi[t3(i, j, p)]),
            ];
            for (a, b) in terms {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone();
                }
            }
        }
        acc
    })
}

/// Relative size of the π₇ component, |π₇a| / |a|.
pub fn seven_fraction<S: Scalar>(fs: &G2Structure<S>, a: &KForm<S>) -> Result<f64> {
    let p7 = fs.project(a, FormType::Seven)?;
    let n = fs.norm_sq(a).to_f64().sqrt();
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok(fs.norm_sq(&p7).to_f64().abs().sqrt() / n)
}

/// Tolerance on the relative π₇ part accepted by the inverse map.
pub const SEVEN_TOL: f64 = 1e-9;

/// Inverse of [`sym2_to_form`] on Λ³₁ ⊕ Λ³₂₇.
pub fn form_to_sym2<S: Scalar>(fs: &G2Structure<S>, eta: &KForm<S>) -> Result<Sym2Tensor<S>> {
    if eta.degree() != 3 {
        return Err(G2Error::UnsupportedDegree(eta.degree()));
    }
    let p7 = fs.project(eta, FormType::Seven)?;
    let frac = seven_fraction(fs, eta)?;
    let exact_nonzero = S::EXACT && !p7.is_zero();
    if exact_nonzero || (!S::EXACT && frac > SEVEN_TOL) {
        return Err(G2Error::HasSevenComponent { norm: frac });
    }
    // Least squares through the normal equations of the 35×28 forward map.
    let cols: Vec<Vec<S>> = (0..28)
        .map(|c| {
            let mut e = vec![S::zero(); 28];
            e[c] = S::one();
            sym2_to_form(fs, &Sym2Tensor::from_upper(&e)).into_coeffs()
        })
        .collect();
    let a = Mat::from_columns(&cols);
    let at = a.transpose();
    let normal = at.mul(&a);
    let rhs = at.mul_vec(eta.coeffs());
    let x = normal.solve(&rhs).expect("forward map is injective");
    Ok(Sym2Tensor::from_upper(&x))
}

/// Outcome of an identity check: a certificate in exact mode, a residual otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub exact: bool,
    pub max_residual: f64,
    pub evaluations: usize,
    /// True iff exact and the residual is identically zero.
    pub certified: bool,
}

impl IdentityReport {
    pub fn passes(&self, tol: f64) -> bool {
        if self.exact {
            self.certified
        } else {
            self.max_residual < tol
        }
    }
}

/// φ_ijk φ_abc g^kc = g_ia g_jb − g_ib g_ja − ψ_ijab for all 7⁴ index tuples.
pub fn check_contraction_identity<S: Scalar>(fs: &G2Structure<S>) -> IdentityReport {
    let phi = full_tensor3(fs.phi());
    let psi = full_tensor4(fs.psi());
    let g = fs.metric().as_mat();
    let ginv = fs.inverse_metric().as_mat();
    // w[i][j][c] = φ_ijk g^kc
    let mut w = vec![S::zero(); 343];
    for i in 0..DIM {
        for j in 0..DIM {
            for c in 0..DIM {
                let mut acc = S::zero();
                for k in 0..DIM {
                    let a = &phi[t3(i, j, k)];
                    if !a.is_zero() && !ginv[(k, c)].is_zero() {
                        acc = acc + a.clone() * ginv[(k, c)].clone();
                    }
                }
                w[t3(i, j, c)] = acc;
            }
        }
    }
    let mut worst = 0.0f64;
    let mut all_zero = true;
    for i in 0..DIM {
        for j in 0..DIM {
            for a in 0..DIM {
                for b in 0..DIM {
                    let mut lhs = S::zero();
                    for c in 0..DIM {
                        let x = &w[t3(i, j, c)];
                        let y = &phi[t3(a, b, c)];
                        if !x.is_zero() && !y.is_zero() {
                            lhs = lhs + x.clone() * y.clone();
                        }
                    }
                    let rhs = g[(i, a)].clone() * g[(j, b)].clone()
                        - g[(i, b)].clone() * g[(j, a)].clone()
                        - psi[((i * DIM + j) * DIM + a) * DIM + b].clone();
                    let r = lhs - rhs;
                    if !r.is_zero() {
                        all_zero = false;
                        worst = worst.max(r.to_f64().abs());
                    }
                }
            }
        }
    }
    IdentityReport {
        name: "contraction identity",
        exact: S::EXACT,
        max_residual: worst,
        evaluations: 2401,
        certified: S::EXACT && all_zero,
    }
}

/// (e_i⌟φ)∧(e_j⌟φ)∧φ = −6 g_ij vol on all 28 basis pairs.
pub fn check_defining_identity<S: Scalar>(fs: &G2Structure<S>) -> IdentityReport {
    let contracted: Vec<KForm<S>> = (0..DIM)
        .map(|i| fs.phi().interior_basis(i).unwrap())
        .collect();
    let vol = fs.vol().top();
    let mut worst = 0.0f64;
    let mut all_zero = true;
    for i in 0..DIM {
        for j in i..DIM {
            let lhs = contracted[i]
                .wedge(&contracted[j])
                .unwrap()
                .wedge(fs.phi())
                .unwrap()
                .top();
            let rhs = S::from_i64(-6) * fs.metric().get(i, j).clone() * vol.clone();
            let r = lhs - rhs;
            if !r.is_zero() {
                all_zero = false;
                worst = worst.max(r.to_f64().abs());
            }
        }
    }
    IdentityReport {
        name: "defining wedge identity",
        exact: S::EXACT,
        max_residual: worst,
        evaluations: 28,
        certified: S::EXACT && all_zero,
    }
}

/// Norms and projector ranks at a structure.
#[derive(Clone, Debug, PartialEq)]
pub struct NormsAndRanks<S> {
    pub phi_norm_sq: S,
    pub psi_norm_sq: S,
    pub ranks3: [usize; 3],
    pub ranks4: [usize; 3],
    pub ranks2: [usize; 2],
}

pub fn norms_and_ranks<S: Scalar>(fs: &G2Structure<S>) -> NormsAndRanks<S> {
    let rank = |k: usize, t: FormType| fs.projector_matrix(k, t).expect("supported").rank(1e-10);
    use FormType::*;
    NormsAndRanks {
        phi_norm_sq: fs.norm_sq(fs.phi()),
        psi_norm_sq: fs.norm_sq(fs.psi()),
        ranks3: [rank(3, One), rank(3, Seven), rank(3, TwentySeven)],
        ranks4: [rank(4, One), rank(4, Seven), rank(4, TwentySeven)],
        ranks2: [rank(2, Seven), rank(2, Fourteen)],
    }
}

/// Residuals of idempotence and mutual g-orthogonality of the projectors.
pub fn projector_defects(fs: &G2Structure<f64>) -> (f64, f64) {
    let mut idem = 0.0f64;
    let mut orth = 0.0f64;
    use FormType::*;
    for (k, types) in [
        (3, vec![One, Seven, TwentySeven]),
        (4, vec![One, Seven, TwentySeven]),
        (2, vec![Seven, Fourteen]),
    ] {
        let ps: Vec<&Mat<f64>> = types
            .iter()
            .map(|&t| fs.projector_matrix(k, t).unwrap())
            .collect();
        let g = fs.gram(k);
        for (a, p) in ps.iter().enumerate() {
            idem = idem.max(p.mul(p).sub(p).max_abs());
            for q in &ps[a + 1..] {
                // g-orthogonality of the images: pᵀ G q = 0
                orth = orth.max(p.transpose().mul(g).mul(q).max_abs());
            }
        }
    }
    (idem, orth)
}

/// Finite-difference check of d/dt ∗_{φ_t}φ_t = ⋆η along φ_t = φ + tη.
#[derive(Clone, Debug, PartialEq)]
pub struct StarDerivativeReport {
    pub degree: usize,
    pub fd_value: KForm<f64>,
    pub closed_form: KForm<f64>,
    pub relative_error: f64,
    pub step: f64,
}

fn rel_err(fd: &KForm<f64>, exact: &KForm<f64>) -> f64 {
    let diff = (fd - exact).coeff_norm();
    diff / exact.coeff_norm().max(1e-300)
}

/// Step along `dir` scaled so that its length is `h` times |φ|.
fn scaled_step(fs: &G2Structure<f64>, dir: &KForm<f64>, h: f64) -> f64 {
    let pn = fs.norm_sq(fs.phi()).sqrt();
    let dn = fs.norm_sq(dir).abs().sqrt().max(1e-300);
    h * pn / dn
}

pub fn check_star_derivative(
    fs: &G2Structure<f64>,
    eta: &KForm<f64>,
    h: f64,
) -> Result<StarDerivativeReport> {
    if eta.degree() != 3 {
        return Err(G2Error::UnsupportedDegree(eta.degree()));
    }
    let t = scaled_step(fs, eta, h);
    let psi_at = |s: f64| -> Result<KForm<f64>> {
        let phi = fs.phi().axpy(&s, eta);
        metric_from_phi(&phi)
            .map(|f| f.psi().clone())
            .map_err(|_| G2Error::StepLeavesPositiveCone { step: t })
    };
    let fd = (&psi_at(t)? - &psi_at(-t)?).scale(&(0.5 / t));
    let closed = fs.star_op(eta)?;
    Ok(StarDerivativeReport {
        degree: 3,
        relative_error: rel_err(&fd, &closed),
        fd_value: fd,
        closed_form: closed,
        step: t,
    })
}

/// The φ whose dual 4-form is `psi`, by Newton iteration from `guess`.
///
/// The Jacobian of φ ↦ ∗φ is the 3-form ⋆; only convergence depends on it.
pub fn phi_from_psi(psi: &KForm<f64>, guess: &G2Structure<f64>) -> Result<G2Structure<f64>> {
    let mut fs = guess.clone();
    let scale = psi.coeff_norm();
    for iter in 0..40 {
        let r = psi - fs.psi();
        let rn = r.coeff_norm();
        if rn <= 1e-15 * scale {
            return Ok(fs);
        }
        let j = fs.star_op_matrix(3)?;
        let delta = j.solve(r.coeffs()).ok_or(G2Error::SingularLinearization)?;
        let phi = fs.phi() + &KForm::new(3, delta)?;
        fs = metric_from_phi(&phi).map_err(|_| G2Error::NewtonDiverged {
            iterations: iter,
            residual: rn,
        })?;
    }
    let residual = (psi - fs.psi()).coeff_norm();
    if residual <= 1e-12 * scale {
        Ok(fs)
    } else {
        Err(G2Error::MaxIterations {
            iterations: 40,
            residual,
        })
    }
}

/// Degree-4 analogue: along ψ_t = ψ + tθ, d/dt ∗_{ψ_t}ψ_t = ⋆θ with the
/// 3/4 coefficient. The family is realised by inverting φ ↦ ψ with Newton.
pub fn check_star_derivative_dual(
    fs: &G2Structure<f64>,
    theta: &KForm<f64>,
    h: f64,
) -> Result<StarDerivativeReport> {
    if theta.degree() != 4 {
        return Err(G2Error::UnsupportedDegree(theta.degree()));
    }
    let pn = fs.norm_sq(fs.psi()).sqrt();
    let t = h * pn / fs.norm_sq(theta).abs().sqrt().max(1e-300);
    let phi_at = |s: f64| -> Result<KForm<f64>> {
        let target = fs.psi().axpy(&s, theta);
        phi_from_psi(&target, fs)
            .map(|f| f.phi().clone())
            .map_err(|_| G2Error::StepLeavesPositiveCone { step: t })
    };
    let fd = (&phi_at(t)? - &phi_at(-t)?).scale(&(0.5 / t));
    let closed = fs.star_op(theta)?;
    Ok(StarDerivativeReport {
        degree: 4,
        relative_error: rel_err(&fd, &closed),
        fd_value: fd,
        closed_form: closed,
        step: t,
    })
}

/// FD of g⁻¹ and vol along φ + t·η(h) against −2h^{ab} and Tr(h)·vol.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricVariationReport {
    pub inverse_metric_error: f64,
    pub volume_error: f64,
    pub volume_rate: f64,
    pub trace: f64,
}

pub fn check_metric_volume_variation(
    fs: &G2Structure<f64>,
    h: &Sym2Tensor<f64>,
    step: f64,
) -> Result<MetricVariationReport> {
    let eta = sym2_to_form(fs, h);
    let t = scaled_step(fs, &eta, step);
    let at = |s: f64| {
        metric_data(&fs.phi().axpy(&s, &eta))
            .map_err(|_| G2Error::StepLeavesPositiveCone { step: t })
    };
    let plus = at(t)?;
    let minus = at(-t)?;
    let d_ginv = plus
        .inverse_metric
        .as_mat()
        .sub(minus.inverse_metric.as_mat())
        .scale(&(0.5 / t));
    let expected = h.raised(fs.inverse_metric()).scale(&-2.0);
    let ginv_err = d_ginv.sub(&expected).max_abs() / expected.max_abs().max(1.0);
    // vol coefficient is s·λ; the orientation is constant along the family
    let d_vol = (plus.lambda - minus.lambda) * 0.5 / t;
    let trace = h.trace_with(fs.inverse_metric());
    let vol = fs.total_volume();
    Ok(MetricVariationReport {
        inverse_metric_error: ginv_err,
        volume_error: (d_vol - trace * vol).abs() / vol.max(1.0),
        volume_rate: d_vol / vol,
        trace,
    })
}

/// ⟨⟨η(h₁), η(h₂)⟩⟩ against ∫ Tr h₁ Tr h₂ + 2 Tr(h₁h₂).
pub fn trace_formula_sides<S: Scalar>(
    fs: &G2Structure<S>,
    h1: &Sym2Tensor<S>,
    h2: &Sym2Tensor<S>,
) -> (S, S) {
    let e1 = sym2_to_form(fs, h1);
    let e2 = sym2_to_form(fs, h2);
    let lhs = fs.l2_pairing(&e1, &e2).expect("both degree 3");
    let ginv = fs.inverse_metric();
    let rhs = (h1.trace_with(ginv) * h2.trace_with(ginv)
        + S::from_i64(2) * h1.trace_product(h2, ginv))
        * fs.total_volume();
    (lhs, rhs)
}

/// GL-equivariance residual: metric_from_phi(A*φ) against A*(g, vol).
pub fn equivariance_defect(fs: &G2Structure<f64>, a: &Mat<f64>) -> Result<f64> {
    let pulled = metric_from_phi(&fs.phi().pullback(a))?;
    let g_expected = a.transpose().mul(fs.metric().as_mat()).mul(a);
    let vol_expected = fs.vol().pullback(a);
    let dg = pulled.metric().as_mat().sub(&g_expected).max_abs() / g_expected.max_abs();
    let dv = (pulled.vol() - &vol_expected).max_abs() / vol_expected.max_abs();
    Ok(dg.max(dv))
}
