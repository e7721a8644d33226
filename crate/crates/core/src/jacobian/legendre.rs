use crate::algebra::{dual_form, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::fd;
use crate::linalg::Mat;
use crate::moduli::{hessian_g, superpotential_of_phi, FlatChart, ModuliPoint, CHART_DIM};

/// Dual coordinates xₖ = ∂f/∂xᵏ = ∫ηₖ∧ψ and the Legendre transform
/// f̂ = xₖxᵏ − f on a flat chart.
///
/// xₖ is linear in ψ, so the dual chart is the ψ-model of the moduli space and
/// the inverse map is the inversion of φ ↦ ψ.
#[derive(Clone, Debug)]
pub struct LegendreChart {
    chart: FlatChart,
    /// xₖ = pairing · ψ.
    pairing: Mat<f64>,
    pairing_inv: Mat<f64>,
}

#[derive(Clone, Debug)]
pub struct LegendreReport {
    pub dual_coords: Vec<f64>,
    pub fhat: f64,
    pub f: f64,
    /// |f̂ − (4/3)f|.
    pub fhat_error: f64,
    /// max-abs relative distance of FD Hess f̂ from 𝒢⁻¹.
    pub inverse_hessian_error: f64,
}

impl LegendreChart {
    pub fn new(chart: FlatChart) -> Self {
        let fs = chart.center();
        let n = CHART_DIM;
        let psi_basis: Vec<KForm<f64>> = (0..n)
            .map(|j| {
                let mut e = KForm::zero(4);
                e.set(crate::algebra::basis::masks(4)[j], 1.0);
                e
            })
            .collect();
        let pairing = Mat::from_fn(n, n, |k, j| {
            fs.integrate_wedge(chart.basis_form(k), &psi_basis[j])
                .expect("3 + 4 = 7")
        });
        let pairing_inv = pairing.inverse().expect("wedge pairing Λ³ × Λ⁴ is perfect");
        LegendreChart {
            chart,
            pairing,
            pairing_inv,
        }
    }

    pub fn chart(&self) -> &FlatChart {
        &self.chart
    }

    pub fn dual_coords_of_psi(&self, psi: &KForm<f64>) -> Vec<f64> {
        self.pairing.mul_vec(psi.coeffs())
    }

    pub fn dual_coords(&self, p: &ModuliPoint) -> Vec<f64> {
        self.dual_coords_of_psi(p.structure().psi())
    }

    pub fn psi_of_dual(&self, x: &[f64]) -> KForm<f64> {
        KForm::new(4, self.pairing_inv.mul_vec(x)).expect("35 coefficients")
    }

    /// f̂ = Σ xₖxᵏ − f.
    pub fn fhat(&self, p: &ModuliPoint) -> f64 {
        let x = self.dual_coords(p);
        x.iter().zip(p.coords()).map(|(a, b)| a * b).sum::<f64>()
            - 3.0 * p.structure().total_volume()
    }

    /// Fibre coordinates yᵢ = ∫ηᵢ∧θ of a 4-form.
    pub fn fiber_coords(&self, theta: &KForm<f64>) -> Vec<f64> {
        self.pairing.mul_vec(theta.coeffs())
    }

    /// Fibre coordinates yⁱ of a 3-form in the chart basis.
    pub fn fiber_coords_upper(&self, mu: &KForm<f64>) -> Vec<f64> {
        self.chart.coords_of(mu)
    }

    /// φ with the given dual coordinates, by a chord Newton iteration whose
    /// fixed Jacobian is ⋆ at `near`.
    pub fn phi_of_dual(
        &self,
        x: &[f64],
        near: &G2Structure<f64>,
        jac_inv: &Mat<f64>,
    ) -> Result<KForm<f64>> {
        let target = self.psi_of_dual(x);
        let scale = target.coeff_norm();
        let mut phi = near.phi().clone();
        let mut residual = f64::INFINITY;
        for iter in 0..60 {
            let r = &target - &dual_form(&phi)?;
            residual = r.coeff_norm();
            if residual <= 1e-15 * scale {
                return Ok(phi);
            }
            let step = KForm::new(3, jac_inv.mul_vec(r.coeffs()))?;
            phi = &phi + &step;
            if !residual.is_finite() {
                return Err(G2Error::NewtonDiverged {
                    iterations: iter,
                    residual,
                });
            }
        }
        if residual <= 1e-13 * scale {
            Ok(phi)
        } else {
            Err(G2Error::MaxIterations {
                iterations: 60,
                residual,
            })
        }
    }

    /// f̂ = Σ xₖxᵏ − f as a function of the dual coordinates.
    pub fn fhat_of_dual(
        &self,
        x: &[f64],
        near: &G2Structure<f64>,
        jac_inv: &Mat<f64>,
    ) -> Result<f64> {
        let phi = self.phi_of_dual(x, near, jac_inv)?;
        let upper = self.chart.coords_of(&phi);
        Ok(x.iter().zip(&upper).map(|(a, b)| a * b).sum::<f64>() - superpotential_of_phi(&phi)?)
    }

    /// FD Hessian of f̂ in dual coordinates at p.
    pub fn fhat_hessian_fd(&self, p: &ModuliPoint, rel_step: f64) -> Result<Mat<f64>> {
        let fs = p.structure();
        let jac_inv = fs
            .star_op_matrix(3)?
            .inverse()
            .ok_or(G2Error::SingularLinearization)?;
        let x0 = self.dual_coords(p);
        let h = rel_step * x0.iter().map(|v| v * v).sum::<f64>().sqrt();
        let n = CHART_DIM;
        let eval = |moves: &[(usize, f64)]| -> Result<f64> {
            let mut x = x0.clone();
            for &(i, t) in moves {
                x[i] += t;
            }
            self.fhat_of_dual(&x, fs, &jac_inv)
        };
        let mut out = Mat::zeros(n, n);
        for a in 0..n {
            out[(a, a)] = fd::second(|t| eval(&[(a, t)]), h)?;
            for b in 0..a {
                let v = fd::second_mixed(|s, t| eval(&[(a, s), (b, t)]), h, h)?;
                out[(a, b)] = v;
                out[(b, a)] = v;
            }
        }
        Ok(out)
    }

    pub fn check(&self, p: &ModuliPoint, rel_step: f64) -> Result<LegendreReport> {
        let hess = hessian_g(&self.chart, p)?.hessian;
        let inv = hess.inverse().ok_or(G2Error::DegenerateHessian {
            min_eigenvalue: 0.0,
        })?;
        let fd_hess = self.fhat_hessian_fd(p, rel_step)?;
        let fhat = self.fhat(p);
        let f = 3.0 * p.structure().total_volume();
        Ok(LegendreReport {
            dual_coords: self.dual_coords(p),
            fhat,
            f,
            fhat_error: (fhat - 4.0 / 3.0 * f).abs(),
            inverse_hessian_error: fd_hess.sub(&inv).max_abs() / inv.max_abs(),
        })
    }
}
