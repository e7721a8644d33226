use super::chart::{FlatChart, ModuliPoint, CHART_DIM};
use crate::algebra::{metric_data, FormType, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::fd::{self, FdConfig};
use crate::linalg::{inertia, min_abs_eigenvalue, Mat};

/// Relative eigenvalue threshold below which a Hessian counts as degenerate.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// f = 3·vol(T⁷) for the unit-covolume torus.
pub fn superpotential(p: &ModuliPoint) -> f64 {
    3.0 * p.structure().total_volume()
}

/// f straight from a 3-form, skipping the cached operators.
pub fn superpotential_of_phi(phi: &KForm<f64>) -> Result<f64> {
    Ok(3.0 * metric_data(phi)?.lambda)
}

/// The other expression for f: 3/7 ∫φ∧∗φ.
pub fn superpotential_wedge_form(fs: &G2Structure<f64>) -> f64 {
    3.0 / 7.0 * fs.integrate_wedge(fs.phi(), fs.psi()).expect("3 + 4 = 7")
}

/// ∂f/∂xʲ = ∫ηⱼ∧ψ.
pub fn gradient_f(chart: &FlatChart, p: &ModuliPoint) -> Vec<f64> {
    let fs = p.structure();
    chart
        .basis()
        .iter()
        .map(|e| fs.integrate_wedge(e, fs.psi()).expect("3 + 4 = 7"))
        .collect()
}

/// Step along `dir` that moves φ by a relative amount `rel`.
pub(crate) fn scaled_step(fs: &G2Structure<f64>, dir: &KForm<f64>, rel: f64) -> f64 {
    rel * (fs.norm_sq(fs.phi()) / fs.norm_sq(dir)).sqrt()
}

fn along(phi: &KForm<f64>, terms: &[(f64, &KForm<f64>)]) -> KForm<f64> {
    terms.iter().fold(phi.clone(), |acc, (t, d)| acc.axpy(t, d))
}

pub fn gradient_fd(chart: &FlatChart, p: &ModuliPoint, rel_step: f64) -> Result<Vec<f64>> {
    let fs = p.structure();
    chart
        .basis()
        .iter()
        .map(|e| {
            let h = scaled_step(fs, e, rel_step);
            fd::first(|t| superpotential_of_phi(&along(fs.phi(), &[(t, e)])), h)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct HessianData {
    pub gradient: Vec<f64>,
    /// 𝒢ᵢⱼ = ∂²f/∂xⁱ∂xʲ.
    pub hessian: Mat<f64>,
    pub signature: (usize, usize),
}

/// The moduli metric 𝒢ᵢⱼ = ∫ηᵢ∧⋆ηⱼ in chart coordinates.
pub fn hessian_g(chart: &FlatChart, p: &ModuliPoint) -> Result<HessianData> {
    let hessian = hessian_star_pairing(chart, p)?;
    let m = hessian.to_nalgebra();
    let scale = hessian.max_abs().max(f64::MIN_POSITIVE);
    let min_eig = min_abs_eigenvalue(&m);
    if min_eig < DEGENERATE_TOL * scale {
        return Err(G2Error::DegenerateHessian {
            min_eigenvalue: min_eig,
        });
    }
    let (pos, neg, _) = inertia(&m, DEGENERATE_TOL);
    Ok(HessianData {
        gradient: gradient_f(chart, p),
        hessian,
        signature: (pos, neg),
    })
}

/// 𝒢 from the type projections: ∫(4/3⟨π₁,π₁⟩ + ⟨π₇,π₇⟩ − ⟨π₂₇,π₂₇⟩) vol.
pub fn hessian_projection(chart: &FlatChart, p: &ModuliPoint) -> Result<Mat<f64>> {
    let fs = p.structure();
    let g3 = fs.gram(3);
    let weighted = [
        (FormType::One, 4.0 / 3.0),
        (FormType::Seven, 1.0),
        (FormType::TwentySeven, -1.0),
    ];
    let mut quad = Mat::zeros(CHART_DIM, CHART_DIM);
    for (t, w) in weighted {
        let pr = fs.projector_matrix(3, t)?;
        quad = quad.add(&pr.transpose().mul(g3).mul(pr).scale(&w));
    }
    let b = Mat::from_columns(
        &chart
            .basis()
            .iter()
            .map(|e| e.coeffs().to_vec())
            .collect::<Vec<_>>(),
    );
    Ok(b.transpose().mul(&quad).mul(&b).scale(&fs.total_volume()))
}

/// 𝒢 from the wedge pairing with the modified star.
pub fn hessian_star_pairing(chart: &FlatChart, p: &ModuliPoint) -> Result<Mat<f64>> {
    let fs = p.structure();
    let starred: Vec<KForm<f64>> = chart
        .basis()
        .iter()
        .map(|e| fs.star_op(e))
        .collect::<Result<_>>()?;
    let mut out = Mat::zeros(CHART_DIM, CHART_DIM);
    for i in 0..CHART_DIM {
        for j in 0..CHART_DIM {
            out[(i, j)] = fs.integrate_wedge(chart.basis_form(i), &starred[j])?;
        }
    }
    Ok(out)
}

/// Central FD Hessian of f over the coordinate subset `idx`.
pub fn hessian_fd_on(
    chart: &FlatChart,
    p: &ModuliPoint,
    idx: &[usize],
    rel_step: f64,
    potential: impl Fn(f64) -> f64,
) -> Result<Mat<f64>> {
    let fs = p.structure();
    let n = idx.len();
    let steps: Vec<f64> = idx
        .iter()
        .map(|&i| scaled_step(fs, chart.basis_form(i), rel_step))
        .collect();
    let eval = |terms: &[(f64, &KForm<f64>)]| -> Result<f64> {
        Ok(potential(superpotential_of_phi(&along(fs.phi(), terms))?))
    };
    let mut out = Mat::zeros(n, n);
    for a in 0..n {
        let ea = chart.basis_form(idx[a]);
        out[(a, a)] = fd::second(|t| eval(&[(t, ea)]), steps[a])?;
        for b in 0..a {
            let eb = chart.basis_form(idx[b]);
            let v = fd::second_mixed(|s, t| eval(&[(s, ea), (t, eb)]), steps[a], steps[b])?;
            out[(a, b)] = v;
            out[(b, a)] = v;
        }
    }
    Ok(out)
}

pub fn hessian_fd(chart: &FlatChart, p: &ModuliPoint, rel_step: f64) -> Result<Mat<f64>> {
    let all: Vec<usize> = (0..CHART_DIM).collect();
    hessian_fd_on(chart, p, &all, rel_step, |f| f)
}

/// Scale-free distance between two matrices.
pub fn matrix_discrepancy(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    a.sub(b).max_abs() / a.max_abs().max(b.max_abs()).max(1.0)
}

/// The three Hessian routes side by side.
#[derive(Clone, Debug)]
pub struct HessianRoutes {
    pub projection: Mat<f64>,
    pub star_pairing: Mat<f64>,
    pub finite_difference: Mat<f64>,
    pub projection_vs_star: f64,
    pub projection_vs_fd: f64,
    pub star_vs_fd: f64,
}

impl HessianRoutes {
    pub fn max_discrepancy(&self) -> f64 {
        self.projection_vs_star
            .max(self.projection_vs_fd)
            .max(self.star_vs_fd)
    }
}

pub fn hessian_routes(
    chart: &FlatChart,
    p: &ModuliPoint,
    fd_cfg: &FdConfig,
) -> Result<HessianRoutes> {
    let projection = hessian_projection(chart, p)?;
    let star_pairing = hessian_star_pairing(chart, p)?;
    let finite_difference = hessian_fd(chart, p, fd_cfg.second)?;
    Ok(HessianRoutes {
        projection_vs_star: matrix_discrepancy(&projection, &star_pairing),
        projection_vs_fd: matrix_discrepancy(&projection, &finite_difference),
        star_vs_fd: matrix_discrepancy(&star_pairing, &finite_difference),
        projection,
        star_pairing,
        finite_difference,
    })
}
