use super::structures::*;
use crate::algebra::identities::check_star_derivative;
use crate::algebra::{metric_from_phi, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::fd;
use crate::moduli::{yukawa, FlatChart, ModuliPoint};

/// Step along `dir` that moves φ by the relative amount `rel`.
fn step_for(fs: &G2Structure<f64>, dir: &KForm<f64>, rel: f64) -> f64 {
    rel * (fs.norm_sq(fs.phi()) / fs.norm_sq(dir)).sqrt()
}

fn structure_at(phi: &KForm<f64>, step: f64) -> Result<G2Structure<f64>> {
    metric_from_phi(phi).map_err(|_| G2Error::StepLeavesPositiveCone { step })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianGraphReport {
    /// ω((η₁,⋆η₁),(η₂,⋆η₂)).
    pub isotropy: f64,
    /// Relative FD error of d/dt ∗φ_t against ⋆η₁.
    pub tangency_error: f64,
}

/// The graph {(φ, ∗φ)} is ω-Lagrangian: its tangent vectors are (η, ⋆η).
pub fn check_lagrangian_graph(
    p: &ModuliPoint,
    eta1: &KForm<f64>,
    eta2: &KForm<f64>,
    rel_step: f64,
) -> Result<LagrangianGraphReport> {
    let fs = p.structure();
    let v1 = JacobianVector::new(eta1.clone(), fs.star_op(eta1)?);
    let v2 = JacobianVector::new(eta2.clone(), fs.star_op(eta2)?);
    let tangency = check_star_derivative(fs, eta1, rel_step)?;
    Ok(LagrangianGraphReport {
        isotropy: omega(fs, &v1, &v2),
        tangency_error: tangency.relative_error,
    })
}

/// ∂𝒢ᵢⱼ/∂xˡ against ∂𝒢ₗⱼ/∂xⁱ for a list of index triples (i, j, l).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosednessReport {
    pub triples: Vec<(usize, usize, usize)>,
    /// |∂ₗ𝒢ᵢⱼ − ∂ᵢ𝒢ₗⱼ| / max(1, |∂ₗ𝒢ᵢⱼ|) per triple.
    pub asymmetries: Vec<f64>,
    pub max_asymmetry: f64,
}

/// FD derivative of 𝒢(a, b) = ∫a∧⋆b along `dir`.
fn metric_derivative(
    fs: &G2Structure<f64>,
    a: &KForm<f64>,
    b: &KForm<f64>,
    dir: &KForm<f64>,
    rel: f64,
) -> Result<f64> {
    let h = step_for(fs, dir, rel);
    fd::first(
        |t| structure_at(&fs.phi().axpy(&t, dir), h)?.star_pairing(a, b),
        h,
    )
}

/// dω̃ = 0 and integrability of J̃ both reduce to the symmetry of
/// ∂𝒢ᵢⱼ/∂xˡ in i and l; this checks it by finite differences.
pub fn closedness_and_integrability(
    chart: &FlatChart,
    p: &ModuliPoint,
    triples: &[(usize, usize, usize)],
    rel_step: f64,
) -> Result<ClosednessReport> {
    let fs = p.structure();
    let e = |i: usize| chart.basis_form(i);
    let mut asymmetries = Vec::with_capacity(triples.len());
    for &(i, j, l) in triples {
        let a = metric_derivative(fs, e(i), e(j), e(l), rel_step)?;
        let b = metric_derivative(fs, e(l), e(j), e(i), rel_step)?;
        asymmetries.push((a - b).abs() / a.abs().max(1.0));
    }
    let max_asymmetry = asymmetries.iter().copied().fold(0.0, f64::max);
    Ok(ClosednessReport {
        triples: triples.to_vec(),
        asymmetries,
        max_asymmetry,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicFormReport {
    pub fd_value: f64,
    pub twice_yukawa: f64,
    pub relative_error: f64,
}

/// c(η₁,η₂,η₃) = d/dt 𝒢_{φ+tη₃}(η₁,η₂) against 2𝒴.
pub fn cubic_form_check(
    p: &ModuliPoint,
    eta1: &KForm<f64>,
    eta2: &KForm<f64>,
    eta3: &KForm<f64>,
    rel_step: f64,
) -> Result<CubicFormReport> {
    let fs = p.structure();
    let twice_yukawa = 2.0 * yukawa(fs, eta1, eta2, eta3)?;
    let fd_value = metric_derivative(fs, eta1, eta2, eta3, rel_step)?;
    Ok(CubicFormReport {
        fd_value,
        twice_yukawa,
        relative_error: (fd_value - twice_yukawa).abs() / twice_yukawa.abs().max(1.0),
    })
}

/// FD exterior derivative of a primitive against the symplectic form.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimitiveReport {
    pub d_primitive: f64,
    pub symplectic: f64,
}

impl PrimitiveReport {
    pub fn defect(&self) -> f64 {
        (self.d_primitive - self.symplectic).abs()
    }
}

/// dα(v₁, v₂) = v₁·α(v₂) − v₂·α(v₁) at (φ, D), constant vector fields.
pub fn check_alpha(
    phi: &KForm<f64>,
    d: &KForm<f64>,
    v1: &JacobianVector,
    v2: &JacobianVector,
    h: f64,
) -> Result<PrimitiveReport> {
    let along = |v: &JacobianVector, w: &JacobianVector| {
        fd::first(
            |t| {
                Ok(alpha(
                    &structure_at(&phi.axpy(&t, &v.eta), h)?,
                    &d.axpy(&t, &v.theta),
                    w,
                ))
            },
            h,
        )
    };
    let fs = metric_from_phi(phi)?;
    Ok(PrimitiveReport {
        d_primitive: along(v1, v2)? - along(v2, v1)?,
        symplectic: omega(&fs, v1, v2),
    })
}

/// Which tilde primitive to differentiate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TildePrimitive {
    /// ½∫μ∧ψ − ½∫C∧⋆η, exact for ω̃.
    Exact,
    /// ½∫φ∧⋆μ − ½∫C∧⋆η, whose derivative is (7/6)ω̃.
    StarForm,
}

pub fn check_alpha_tilde(
    phi: &KForm<f64>,
    c: &KForm<f64>,
    v1: &TildeJacobianVector,
    v2: &TildeJacobianVector,
    which: TildePrimitive,
    h: f64,
) -> Result<PrimitiveReport> {
    let prim = |fs: &G2Structure<f64>, c: &KForm<f64>, w: &TildeJacobianVector| match which {
        TildePrimitive::Exact => alpha_tilde(fs, c, w),
        TildePrimitive::StarForm => alpha_tilde_star_form(fs, c, w),
    };
    let along = |v: &TildeJacobianVector, w: &TildeJacobianVector| {
        fd::first(
            |t| {
                prim(
                    &structure_at(&phi.axpy(&t, &v.eta), h)?,
                    &c.axpy(&t, &v.mu),
                    w,
                )
            },
            h,
        )
    };
    let fs = metric_from_phi(phi)?;
    Ok(PrimitiveReport {
        d_primitive: along(v1, v2)? - along(v2, v1)?,
        symplectic: omega_tilde(&fs, v1, v2)?,
    })
}
