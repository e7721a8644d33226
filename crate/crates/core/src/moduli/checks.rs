use super::chart::{FlatChart, ModuliPoint};
use super::potential::{hessian_fd_on, scaled_step, superpotential, superpotential_of_phi};
use super::yukawa::yukawa;
use crate::algebra::identities::{seven_fraction, SEVEN_TOL};
use crate::algebra::{FormType, KForm};
use crate::error::{G2Error, Result};
use crate::fd::{self, FdConfig};
use crate::linalg::{inertia, Mat};

#[derive(Clone, Debug, PartialEq)]
pub struct ThirdDerivativeReport {
    pub fd_value: f64,
    /// 2𝒴 of the three directions.
    pub twice_yukawa: f64,
    /// |FD − 2𝒴| / max(|2𝒴|, 1).
    pub relative_error: f64,
    pub steps: [f64; 3],
}

/// Mixed third derivative of f at p along three 1⊕27 directions, against 2𝒴.
pub fn check_third_derivative(
    p: &ModuliPoint,
    dirs: [&KForm<f64>; 3],
    fd_cfg: &FdConfig,
) -> Result<ThirdDerivativeReport> {
    let fs = p.structure();
    for d in dirs {
        let frac = seven_fraction(fs, d)?;
        if frac > SEVEN_TOL {
            return Err(G2Error::HasSevenComponent { norm: frac });
        }
    }
    let fd_value = third_fd(p, dirs, fd_cfg)?;
    let twice_yukawa = 2.0 * yukawa(fs, dirs[0], dirs[1], dirs[2])?;
    Ok(ThirdDerivativeReport {
        fd_value,
        twice_yukawa,
        relative_error: (fd_value - twice_yukawa).abs() / twice_yukawa.abs().max(1.0),
        steps: dirs.map(|d| scaled_step(fs, d, fd_cfg.third)),
    })
}

fn third_fd(p: &ModuliPoint, dirs: [&KForm<f64>; 3], fd_cfg: &FdConfig) -> Result<f64> {
    let fs = p.structure();
    let steps = dirs.map(|d| scaled_step(fs, d, fd_cfg.third));
    let eval = |s: f64, t: f64, u: f64| {
        let phi = fs
            .phi()
            .axpy(&s, dirs[0])
            .axpy(&t, dirs[1])
            .axpy(&u, dirs[2]);
        superpotential_of_phi(&phi).map_err(|e| match e {
            G2Error::NotPositive { .. }
            | G2Error::NearDegenerate { .. }
            | G2Error::NotPositiveDefinite => G2Error::StepLeavesPositiveCone {
                step: s.abs().max(t.abs()).max(u.abs()),
            },
            other => other,
        })
    };
    fd::third_mixed(eval, steps, fd_cfg.richardson)
}

/// Third derivative of f along arbitrary directions, set against 2𝒴 of their
/// 1⊕27 projections. Nothing predicts the gap when a 7-type part is present;
/// this only measures it.
#[derive(Clone, Debug, PartialEq)]
pub struct SevenDiscrepancy {
    pub fd_value: f64,
    pub twice_sector_yukawa: f64,
    /// |FD − 2𝒴(sector parts)| / max(|2𝒴|, 1).
    pub relative_gap: f64,
}

pub fn seven_discrepancy(
    p: &ModuliPoint,
    dirs: [&KForm<f64>; 3],
    fd_cfg: &FdConfig,
) -> Result<SevenDiscrepancy> {
    let fs = p.structure();
    // A pure 7-type direction leaves only roundoff, which would itself read
    // as mostly 7-type.
    let sector = |d: &KForm<f64>| -> Result<KForm<f64>> {
        let s = fs
            .project(d, FormType::One)?
            .axpy(&1.0, &fs.project(d, FormType::TwentySeven)?);
        Ok(if fs.norm_sq(&s) <= 1e-24 * fs.norm_sq(d) {
            KForm::zero(3)
        } else {
            s
        })
    };
    let (a, b, c) = (sector(dirs[0])?, sector(dirs[1])?, sector(dirs[2])?);
    let fd_value = third_fd(p, dirs, fd_cfg)?;
    let twice_sector_yukawa = 2.0 * yukawa(fs, &a, &b, &c)?;
    Ok(SevenDiscrepancy {
        fd_value,
        twice_sector_yukawa,
        relative_gap: (fd_value - twice_sector_yukawa).abs() / twice_sector_yukawa.abs().max(1.0),
    })
}

/// Hessian of F = −log f against (1/f)⟨⟨ηᵢ, ηⱼ⟩⟩ in a chart recentred at p.
#[derive(Clone, Debug)]
pub struct LogPotentialReport {
    /// F₀₀ with η₀ = φ_p.
    pub f00: f64,
    /// max |F₀ᵢ| over i ≠ 0.
    pub f0i_max: f64,
    /// max |FD − closed form| on the 1⊕27 sector.
    pub sector_error: f64,
    /// Inertia of the FD F-Hessian on the 1⊕27 sector.
    pub sector_signature: (usize, usize, usize),
    pub sector_positive_definite: bool,
    /// max |FD − closed form| on the 7-block; measured only.
    pub seven_block_error: f64,
    /// Inertia of the FD F-Hessian on the 7-block.
    pub seven_block_signature: (usize, usize, usize),
}

pub fn log_potential_checks(p: &ModuliPoint, fd_cfg: &FdConfig) -> Result<LogPotentialReport> {
    let chart = FlatChart::new(p.structure().clone());
    let center = chart.center_point();
    let fs = center.structure();
    let f = superpotential(&center);

    let sector = FlatChart::irreducible_sector();
    let seven: Vec<usize> = FlatChart::sector_range(FormType::Seven).collect();
    let all: Vec<usize> = (0..super::chart::CHART_DIM).collect();
    let fd_full = hessian_fd_on(&chart, &center, &all, fd_cfg.second, |v| -v.ln())?;
    let closed = |i: usize, j: usize| {
        fs.l2_pairing(chart.basis_form(i), chart.basis_form(j))
            .map(|v| v / f)
    };

    let block_error = |idx: &[usize]| -> Result<f64> {
        let mut worst = 0.0f64;
        for &i in idx {
            for &j in idx {
                worst = worst.max((fd_full[(i, j)] - closed(i, j)?).abs());
            }
        }
        Ok(worst)
    };
    let sub = |idx: &[usize]| Mat::from_fn(idx.len(), idx.len(), |a, b| fd_full[(idx[a], idx[b])]);

    let sector_signature = inertia(&sub(&sector).to_nalgebra(), 1e-8);
    Ok(LogPotentialReport {
        f00: fd_full[(0, 0)],
        f0i_max: (1..all.len())
            .map(|i| fd_full[(0, i)].abs())
            .fold(0.0, f64::max),
        sector_error: block_error(&sector)?,
        sector_positive_definite: sector_signature == (sector.len(), 0, 0),
        sector_signature,
        seven_block_error: block_error(&seven)?,
        seven_block_signature: inertia(&sub(&seven).to_nalgebra(), 1e-8),
    })
}
