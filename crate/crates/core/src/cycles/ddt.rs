use std::f64::consts::PI;

use crate::algebra::{basis, FormType, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::linalg::Mat;

/// Which curvature equation to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DtMode {
    /// f∧ψ + f³/(24π²) = 0: the critical-point equation of the top-degree
    /// functional (the deformed equation).
    Deformed,
    /// f∧ψ = 0, whose solution set is exactly Λ²₁₄.
    Ordinary,
}

/// Residual of the curvature equation for the real curvature form f with
/// F_A = i·f. In terms of F the deformed equation reads F∧ψ − F³/(24π²) = 0,
/// which equals i·(f∧ψ + f³/(24π²)).
pub fn ddt_residual(f: &KForm<f64>, fs: &G2Structure<f64>, mode: DtMode) -> Result<KForm<f64>> {
    if f.degree() != 2 {
        return Err(G2Error::DegreeMismatch {
            left: f.degree(),
            right: 2,
        });
    }
    let linear = f.wedge(fs.psi())?;
    Ok(match mode {
        DtMode::Ordinary => linear,
        DtMode::Deformed => {
            let cube = f.wedge(f)?.wedge(f)?;
            linear.axpy(&(1.0 / (24.0 * PI * PI)), &cube)
        }
    })
}

/// Linearisation δ ↦ δ∧ψ + f²∧δ/(8π²) as a 7×21 matrix.
fn linearisation(f: &KForm<f64>, fs: &G2Structure<f64>, mode: DtMode) -> Result<Mat<f64>> {
    let f2 = f.wedge(f)?;
    let cols: Vec<Vec<f64>> = basis::masks(2)
        .iter()
        .map(|&m| {
            let d = KForm::from_fn(2, |x| (x == m) as u8 as f64);
            let mut col = d.wedge(fs.psi())?;
            if mode == DtMode::Deformed {
                col = col.axpy(&(1.0 / (8.0 * PI * PI)), &f2.wedge(&d)?);
            }
            Ok(col.into_coeffs())
        })
        .collect::<Result<_>>()?;
    Ok(Mat::from_columns(&cols))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Divergence is declared once the residual exceeds this multiple of the
    /// starting residual.
    pub blowup: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tolerance: 1e-12,
            max_iterations: 25,
            blowup: 1e6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonTrace {
    pub solution: KForm<f64>,
    /// max |residual coefficient| before each step and after the last.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

/// Minimum-norm Newton iteration in Λ² (21 unknowns, 7 equations):
/// δ = −Lᵀ(LLᵀ)⁻¹r.
pub fn ddt_newton(
    seed: &KForm<f64>,
    fs: &G2Structure<f64>,
    mode: DtMode,
    opts: NewtonOptions,
) -> Result<NewtonTrace> {
    let mut f = seed.clone();
    let mut r = ddt_residual(&f, fs, mode)?;
    let r0 = r.max_abs().max(1e-300);
    let mut residuals = vec![r.max_abs()];
    for it in 0..opts.max_iterations {
        if r.max_abs() < opts.tolerance {
            return Ok(NewtonTrace {
                solution: f,
                residuals,
                iterations: it,
            });
        }
        let l = linearisation(&f, fs, mode)?;
        let llt = l.mul(&l.transpose());
        let scale = llt.max_abs().max(1e-300);
        let y = llt
            .solve(r.coeffs())
            .ok_or(G2Error::SingularLinearization)?;
        if llt
            .to_nalgebra()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .any(|e| e.abs() < 1e-14 * scale)
        {
            return Err(G2Error::SingularLinearization);
        }
        let step = l.transpose().mul_vec(&y);
        f = KForm::new(
            2,
            f.coeffs().iter().zip(&step).map(|(a, b)| a - b).collect(),
        )?;
        r = ddt_residual(&f, fs, mode)?;
        let rn = r.max_abs();
        residuals.push(rn);
        if !rn.is_finite() || rn > opts.blowup * r0 {
            return Err(G2Error::NewtonDiverged {
                iterations: it + 1,
                residual: rn,
            });
        }
    }
    if r.max_abs() < opts.tolerance {
        return Ok(NewtonTrace {
            solution: f,
            residuals,
            iterations: opts.max_iterations,
        });
    }
    Err(G2Error::MaxIterations {
        iterations: opts.max_iterations,
        residual: r.max_abs(),
    })
}

/// Distance of f from Λ²₁₄ in the metric norm, |π₇ f|.
pub fn seven_component(f: &KForm<f64>, fs: &G2Structure<f64>) -> Result<f64> {
    Ok(fs.norm_sq(&fs.project(f, FormType::Seven)?).max(0.0).sqrt())
}
