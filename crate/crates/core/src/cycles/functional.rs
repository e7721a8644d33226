use std::f64::consts::PI;

use crate::algebra::{basis::DIM, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::linalg::Mat;

use super::calibration::{anti_self_dual_part, is_associative, is_coassociative, CALIBRATION_TOL};
use super::ddt::{ddt_residual, DtMode};
use super::path::{swept_integrals, CyclePath, CyclePoint, SweptIntegrand, Variation};

/// Gradient components below this count as vanishing.
pub const CRITICAL_TOL: f64 = 1e-10;
/// Non-critical points must show a component at least this large.
pub const WITNESS_FLOOR: f64 = 1e-3;

fn check_dim(k: usize, got: usize) -> Result<()> {
    if !matches!(k, 3 | 4 | 7) || k != got {
        return Err(G2Error::DimensionMismatch { expected: k, got });
    }
    Ok(())
}

/// Φ_k along a path: ∫ over the swept cylinder of the top-degree part of
/// exp((i/2π)F̄ + π*φ + π*ψ). With F = i·f the exponent is −f̄/2π + π*φ + π*ψ.
///
/// Degree by degree this is ∫(ψ̄ + f̄²/8π²) for k = 3, −(1/2π)∫f̄∧φ̄ for
/// k = 4 and ∫(f̄²∧ψ̄/8π² + f̄⁴/(384π⁴)) for k = 7.
pub fn phi_functional(k: usize, path: &CyclePath, fs: &G2Structure<f64>) -> Result<f64> {
    check_dim(k, path.dim())?;
    path.check_integral()?;
    Ok(swept_integrals(path, fs, &[None])[0])
}

/// Derivative of Φ_k at the end of a path, in direction `dir`.
pub fn first_variation(point: &CyclePoint, dir: &Variation, fs: &G2Structure<f64>) -> f64 {
    SweptIntegrand::at(point, dir, 0.0, fs).paired_with(None)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Direction {
    /// Translation along the i-th vector of a g-orthonormal normal basis.
    Normal(Vec<f64>),
    /// Unit holonomy velocity along the a-th subtorus coordinate.
    Holonomy(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DPhiReport {
    pub components: Vec<(Direction, f64)>,
    pub max_abs: f64,
    pub critical: bool,
    /// Largest component when the point is not critical.
    pub witness: Option<(Direction, f64)>,
}

/// First variation of Φ_k at a point. Everything is translation invariant, so
/// constant variations capture the whole gradient.
pub fn d_phi(k: usize, point: &CyclePoint, fs: &G2Structure<f64>) -> Result<DPhiReport> {
    check_dim(k, point.dim())?;
    let mut components = Vec::new();
    if k < DIM {
        for x in point.torus.normal_basis(fs) {
            let v = first_variation(point, &Variation::translation(k, x.clone()), fs);
            components.push((Direction::Normal(x), v));
        }
    }
    for a in 0..k {
        components.push((
            Direction::Holonomy(a),
            first_variation(point, &Variation::holonomy(k, a), fs),
        ));
    }
    let (imax, max_abs) = components
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.1.abs()))
        .fold((0, 0.0), |m, x| if x.1 > m.1 { x } else { m });
    let critical = max_abs < CRITICAL_TOL;
    let witness = (!critical).then(|| components[imax].clone());
    Ok(DPhiReport {
        components,
        max_abs,
        critical,
        witness,
    })
}

/// Curvature of a connection on the whole torus as an ambient 2-form.
pub fn ambient_curvature(point: &CyclePoint) -> Result<KForm<f64>> {
    check_dim(DIM, point.dim())?;
    let u = Mat::from_columns(&point.torus.spanning_f64());
    let uinv = u.inverse().ok_or(G2Error::SingularLinearization)?;
    let f = point.connection.curvature();
    Ok(KForm::from_fn(2, |m| f.coeff(m)).pullback(&uinv))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Characterization {
    pub holds: bool,
    /// Geometric defect: (X⌟ψ)|_N, φ|_L, or 0 on the whole torus.
    pub geometric_defect: f64,
    /// Connection defect: |f|, |f⁻| for the calibrated orientation, or the
    /// deformed residual.
    pub connection_defect: f64,
}

/// The closed-form description of critical points: associative and flat
/// (k = 3), coassociative with self-dual curvature (k = 4), deformed
/// Donaldson–Thomas curvature (k = 7).
pub fn critical_characterization(
    k: usize,
    point: &CyclePoint,
    fs: &G2Structure<f64>,
) -> Result<Characterization> {
    check_dim(k, point.dim())?;
    let f = point.connection.curvature();
    let (geometric_defect, connection_defect) = match k {
        3 => (is_associative(&point.torus, fs).psi_criterion, f.max_abs()),
        4 => (
            is_coassociative(&point.torus, fs).phi_restriction,
            anti_self_dual_part(&point.torus, fs, f).1,
        ),
        _ => (
            0.0,
            ddt_residual(&ambient_curvature(point)?, fs, DtMode::Deformed)?.max_abs(),
        ),
    };
    let holds = geometric_defect < CALIBRATION_TOL && connection_defect < CALIBRATION_TOL;
    Ok(Characterization {
        holds,
        geometric_defect,
        connection_defect,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiReport {
    /// Ψ_k = ∫_N of the degree-k part of exp(−f/2π + φ + ψ).
    pub psi: f64,
    /// vol(N) for k = 3, 4 and ∫φ∧∗φ = 7·vol(M) for k = 7.
    pub calibration_mass: f64,
    pub volume: f64,
    /// (1/8π²)∫_N |f|².
    pub yang_mills: f64,
    /// calibration_mass + yang_mills.
    pub size: f64,
    pub equality: bool,
    /// (1/8π²)∫_L f∧f for k = 4; its sign decides whether self-dual
    /// connections minimise Yang–Mills in their class.
    pub topological_charge: Option<f64>,
}

pub const PSI_EQUALITY_TOL: f64 = 1e-10;

pub fn psi_functional(k: usize, point: &CyclePoint, fs: &G2Structure<f64>) -> Result<PsiReport> {
    check_dim(k, point.dim())?;
    let torus = &point.torus;
    let f = point.connection.curvature();
    let x = f
        .scale(-1.0 / (2.0 * PI))
        .add(&torus.restrict(fs.phi()))
        .add(&torus.restrict(fs.psi()));
    let psi = x.exp().top();
    let h = torus.induced_metric(fs);
    let volume = h.det().sqrt();
    let hinv = h.inverse().ok_or(G2Error::SingularLinearization)?;
    let yang_mills = f.inner(f, &hinv) * volume / (8.0 * PI * PI);
    let calibration_mass = if k == DIM {
        fs.norm_sq(fs.phi()) * volume
    } else {
        volume
    };
    let size = calibration_mass + yang_mills;
    let topological_charge = (k == 4).then(|| f.wedge(f).top() / (8.0 * PI * PI));
    Ok(PsiReport {
        psi,
        calibration_mass,
        volume,
        yang_mills,
        size,
        equality: (size - psi).abs() < PSI_EQUALITY_TOL,
        topological_charge,
    })
}

/// f∧f∧φ = (|f₁₄|² − 2|f₇|²)·vol: returns the two sides as coefficients of vol.
pub fn curvature_cubic_identity(f: &KForm<f64>, fs: &G2Structure<f64>) -> Result<(f64, f64)> {
    use crate::algebra::FormType;
    let lhs = fs.integrate(&f.wedge(f)?.wedge(fs.phi())?) / fs.total_volume();
    let f7 = fs.norm_sq(&fs.project(f, FormType::Seven)?);
    let f14 = fs.norm_sq(&fs.project(f, FormType::Fourteen)?);
    Ok((lhs, f14 - 2.0 * f7))
}

/// The whole torus with the connection whose curvature is the ambient 2-form f.
pub fn whole_torus_point(
    fs: &G2Structure<f64>,
    holonomy: Vec<f64>,
    f: &KForm<f64>,
) -> Result<CyclePoint> {
    let torus = super::subtorus::AffineSubtorus::whole(fs);
    let connection = super::connection::U1Connection::from_ambient(&torus, holonomy, f)?;
    CyclePoint::new(torus, connection)
}
