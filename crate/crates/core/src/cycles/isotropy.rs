use std::f64::consts::PI;

use crate::algebra::{metric_from_phi, standard_phi, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::jacobian::{
    alpha, alpha_tilde, omega, omega_tilde, JacobianVector, TildeJacobianVector,
};
use crate::linalg::Mat;

use super::abel_jacobi::{abel_jacobi, AjKind};
use super::connection::U1Connection;
use super::ext::ExtForm;
use super::functional::{critical_characterization, phi_functional, whole_torus_point};
use super::path::{CyclePath, CyclePoint};
use super::subtorus::AffineSubtorus;

/// Criticality defect beyond which a family has left the critical moduli.
pub const FAMILY_DEFECT_TOL: f64 = 1e-8;
/// Tolerance on the primitive identities (finite differences).
pub const PRIMITIVE_TOL: f64 = 1e-5;
/// Tolerance on the pulled-back symplectic form.
pub const SYMPLECTIC_TOL: f64 = 1e-8;

type FamilyFn = dyn Fn(f64, f64) -> Result<(G2Structure<f64>, CyclePoint)> + Send + Sync;

/// A two-parameter family p ↦ (φ(p), N(p), A(p)) through the critical moduli.
///
/// Φ and the Abel–Jacobi class at p are measured along the straight path from
/// the base point of the family's centre to the point at p.
pub struct IsotropyFamily {
    pub kind: AjKind,
    pub name: String,
    pub transverse: bool,
    eval: Box<FamilyFn>,
}

impl std::fmt::Debug for IsotropyFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IsotropyFamily")
            .field("kind", &self.kind)
            .field("name", &self.name)
            .finish()
    }
}

impl IsotropyFamily {
    pub fn new(
        kind: AjKind,
        name: impl Into<String>,
        transverse: bool,
        eval: impl Fn(f64, f64) -> Result<(G2Structure<f64>, CyclePoint)> + Send + Sync + 'static,
    ) -> Self {
        IsotropyFamily {
            kind,
            name: name.into(),
            transverse,
            eval: Box::new(eval),
        }
    }

    pub fn at(&self, p: [f64; 2]) -> Result<(G2Structure<f64>, CyclePoint)> {
        (self.eval)(p[0], p[1])
    }

    fn path(&self, start: &CyclePoint, end: CyclePoint) -> Result<CyclePath> {
        let path = CyclePath::straight(start.clone(), end)?;
        Ok(if self.transverse {
            path.allowing_transverse()
        } else {
            path
        })
    }

    /// (φ, Φ, class) at p.
    fn sample(&self, start: &CyclePoint, p: [f64; 2]) -> Result<(KForm<f64>, f64, KForm<f64>)> {
        let (fs, point) = self.at(p)?;
        let path = self.path(start, point)?;
        let phi_val = phi_functional(self.kind.cycle_dim(), &path, &fs)?;
        let class = abel_jacobi(self.kind, &path, &fs)?.value;
        Ok((fs.phi().clone(), phi_val, class))
    }
}

/// Per-direction numbers of an isotropy check.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionRecord {
    /// Pullback of the primitive (α̃ for ν and χ, α for μ).
    pub primitive: f64,
    /// ∂Φ along the direction.
    pub d_phi: f64,
    /// ½∫δβ∧ψ, the class-velocity term.
    pub class_term: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyReport {
    pub kind: AjKind,
    pub family: String,
    pub directions: [DirectionRecord; 2],
    /// Pulled-back symplectic form on the family's tangent plane.
    pub symplectic: f64,
    /// Largest criticality defect seen along the stencil.
    pub family_defect: f64,
    /// max |primitive − c·dΦ| with c = −½ (ν, μ) or +1 (χ).
    pub printed_residual: f64,
    /// max |primitive + ½dΦ − class_term| for χ; equals the printed residual otherwise.
    pub derived_residual: f64,
}

impl IsotropyReport {
    pub fn printed_holds(&self) -> bool {
        self.printed_residual < PRIMITIVE_TOL
    }

    pub fn derived_holds(&self) -> bool {
        self.derived_residual < PRIMITIVE_TOL
    }

    pub fn isotropic(&self) -> bool {
        self.symplectic.abs() < SYMPLECTIC_TOL
    }
}

/// Central-difference check of the primitive identity and of isotropy at the
/// family's centre, with parameter step `h`.
pub fn isotropy_check(family: &IsotropyFamily, h: f64) -> Result<IsotropyReport> {
    let kind = family.kind;
    let k = kind.cycle_dim();
    let (fs, centre) = family.at([0.0, 0.0])?;
    let start = centre.base();

    let mut family_defect = 0.0f64;
    for p in [[0.0, 0.0], [h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]] {
        let (fs_p, pt) = family.at(p)?;
        let c = critical_characterization(k, &pt, &fs_p)?;
        let defect = c.geometric_defect.max(c.connection_defect);
        if defect > FAMILY_DEFECT_TOL {
            return Err(G2Error::FamilyLeavesModuli { defect, param: p });
        }
        family_defect = family_defect.max(defect);
    }

    let (_, _, class) = family.sample(&start, [0.0, 0.0])?;
    let mut etas = Vec::new();
    let mut class_vel = Vec::new();
    let mut d_phis = Vec::new();
    for dir in 0..2 {
        let mut plus = [0.0; 2];
        let mut minus = [0.0; 2];
        plus[dir] = h;
        minus[dir] = -h;
        let (phi_p, val_p, cls_p) = family.sample(&start, plus)?;
        let (phi_m, val_m, cls_m) = family.sample(&start, minus)?;
        let inv = 1.0 / (2.0 * h);
        etas.push((&phi_p - &phi_m).scale(&inv));
        class_vel.push((&cls_p - &cls_m).scale(&inv));
        d_phis.push((val_p - val_m) * inv);
    }

    let mut records = Vec::new();
    let symplectic = match kind {
        AjKind::Mu => {
            let v: Vec<JacobianVector> = (0..2)
                .map(|i| JacobianVector::new(etas[i].clone(), class_vel[i].clone()))
                .collect();
            for i in 0..2 {
                records.push(DirectionRecord {
                    primitive: alpha(&fs, &class, &v[i]),
                    d_phi: d_phis[i],
                    class_term: 0.0,
                });
            }
            omega(&fs, &v[0], &v[1])
        }
        AjKind::Nu | AjKind::Chi => {
            let v: Vec<TildeJacobianVector> = (0..2)
                .map(|i| TildeJacobianVector::new(etas[i].clone(), class_vel[i].clone()))
                .collect();
            for i in 0..2 {
                records.push(DirectionRecord {
                    primitive: alpha_tilde(&fs, &class, &v[i])?,
                    d_phi: d_phis[i],
                    class_term: 0.5 * fs.integrate_wedge(&class_vel[i], fs.psi())?,
                });
            }
            omega_tilde(&fs, &v[0], &v[1])?
        }
    };

    let printed_coeff = if kind == AjKind::Chi { 1.0 } else { -0.5 };
    let printed_residual = records
        .iter()
        .map(|r| (r.primitive - printed_coeff * r.d_phi).abs())
        .fold(0.0, f64::max);
    let derived_residual = records
        .iter()
        .map(|r| {
            let extra = if kind == AjKind::Chi {
                r.class_term
            } else {
                0.0
            };
            (r.primitive + 0.5 * r.d_phi - extra).abs()
        })
        .fold(0.0, f64::max);
    let directions: [DirectionRecord; 2] = records.try_into().expect("two directions");
    Ok(IsotropyReport {
        kind,
        family: family.name.clone(),
        directions,
        symplectic,
        family_defect,
        printed_residual,
        derived_residual,
    })
}

fn scaled_standard(c: f64) -> Result<G2Structure<f64>> {
    metric_from_phi(&standard_phi::<f64>().scale(&c))
}

/// Coordinate subtorus ordered so that ψ (k = 4) or φ (k = 3) is positive on it.
pub(crate) fn calibrated_coordinate(
    indices: &[usize],
    fs: &G2Structure<f64>,
) -> Result<AffineSubtorus> {
    let t = AffineSubtorus::coordinate(indices)?;
    let cal = if indices.len() == 3 {
        fs.phi()
    } else {
        fs.psi()
    };
    Ok(if t.integrate(cal) < 0.0 {
        t.reversed()
    } else {
        t
    })
}

fn unit(i: usize, c: f64) -> Vec<f64> {
    let mut v = vec![0.0; 7];
    v[i] = c;
    v
}

fn sd_curvature(c: f64) -> ExtForm {
    ExtForm::basis(4, &[0, 1])
        .add(&ExtForm::basis(4, &[2, 3]))
        .scale(c)
}

/// ν families at φ₀ and along calibration-preserving φ-directions.
pub fn nu_families() -> Vec<IsotropyFamily> {
    let fs0 = metric_from_phi(&standard_phi::<f64>()).expect("standard structure");
    let n = calibrated_coordinate(&[0, 1, 2], &fs0).expect("coordinate torus");
    let hol = vec![0.1, 0.2, 0.3];
    // X maps span(e1,e2,e3) into itself, so A(p) = I + pX preserves N.
    let mut x = Mat::zeros(7, 7);
    x[(0, 1)] = 1.0;
    x[(3, 4)] = 0.5;
    x[(0, 5)] = 0.2;
    x[(6, 3)] = -0.4;
    let base = CyclePoint::new(n.clone(), U1Connection::flat(hol.clone())).expect("dims");
    let (b1, b2, b3) = (base.clone(), base.clone(), base);
    vec![
        IsotropyFamily::new(
            AjKind::Nu,
            "nu: linear deformation preserving N x translation e4",
            false,
            move |p, q| {
                let a = Mat::from_fn(7, 7, |i, j| (i == j) as u8 as f64 + p * x[(i, j)]);
                let fs = metric_from_phi(&standard_phi::<f64>().pullback(&a))?;
                Ok((fs, b1.translated(&unit(3, q))))
            },
        ),
        IsotropyFamily::new(
            AjKind::Nu,
            "nu: scaling x translation e5",
            false,
            move |p, q| Ok((scaled_standard(1.0 + p)?, b2.translated(&unit(4, q)))),
        ),
        IsotropyFamily::new(
            AjKind::Nu,
            "nu: translation e4 x holonomy",
            false,
            move |p, q| {
                Ok((
                    scaled_standard(1.0)?,
                    b3.translated(&unit(3, p)).shift_holonomy(&[q, 0.0, 0.0]),
                ))
            },
        ),
    ]
}

/// μ families on a coassociative 4-torus with self-dual curvature.
pub fn mu_families() -> Vec<IsotropyFamily> {
    let fs0 = metric_from_phi(&standard_phi::<f64>()).expect("standard structure");
    let l = calibrated_coordinate(&[3, 4, 5, 6], &fs0).expect("coordinate torus");
    let conn =
        U1Connection::new(vec![0.1, 0.0, 0.2, 0.0], sd_curvature(2.0 * PI)).expect("integral");
    let base = CyclePoint::new(l, conn).expect("dims");
    let (b1, b2, b3) = (base.clone(), base.clone(), base);
    vec![
        IsotropyFamily::new(
            AjKind::Mu,
            "mu: scaling x translation e1",
            false,
            move |p, q| Ok((scaled_standard(1.0 + p)?, b1.translated(&unit(0, q)))),
        ),
        IsotropyFamily::new(
            AjKind::Mu,
            "mu: translation e1 x curvature coefficient",
            true,
            move |p, q| {
                let conn = b2.connection.with_curvature(sd_curvature(2.0 * PI + q))?;
                Ok((
                    scaled_standard(1.0)?,
                    CyclePoint::new(b2.torus.translated(&unit(0, p)), conn)?,
                ))
            },
        ),
        IsotropyFamily::new(
            AjKind::Mu,
            "mu: translation e1 x translation e2",
            false,
            move |p, q| {
                Ok((
                    scaled_standard(1.0)?,
                    b3.translated(&unit(0, p)).translated(&unit(1, q)),
                ))
            },
        ),
    ]
}

/// 2π(e23 + e45 + e67) = 2π(e1⌟φ₀), a deformed DT curvature at 3^{-3/4}φ₀.
pub fn integral_ddt_curvature() -> KForm<f64> {
    let mut f = KForm::zero(2);
    for (a, b) in [(1, 2), (3, 4), (5, 6)] {
        f.set((1u8 << a) | (1u8 << b), 2.0 * PI);
    }
    f
}

/// Scale at which 2π(e_i⌟φ₀) solves the deformed equation.
pub fn integral_ddt_scale() -> f64 {
    3f64.powf(-0.75)
}

/// χ families: an ordinary DT connection, the integral deformed solution and
/// a flat connection.
pub fn chi_families() -> Vec<IsotropyFamily> {
    let mut dt = KForm::zero(2);
    dt.set(0b110, 2.0 * PI);
    dt.set(0b11000, -2.0 * PI);
    let hol = vec![0.05, 0.1, 0.0, 0.2, 0.0, 0.0, 0.3];
    let (h1, h2, h3) = (hol.clone(), hol.clone(), hol);
    vec![
        IsotropyFamily::new(
            AjKind::Chi,
            "chi: ordinary DT curvature, scaling x holonomy",
            false,
            move |p, q| {
                let fs = scaled_standard(1.0 + p)?;
                let pt = whole_torus_point(&fs, h1.clone(), &dt)?;
                Ok((fs, pt.shift_holonomy(&unit(0, q))))
            },
        ),
        IsotropyFamily::new(
            AjKind::Chi,
            "chi: integral deformed DT curvature, two holonomy directions",
            false,
            move |p, q| {
                let fs = scaled_standard(integral_ddt_scale())?;
                let pt = whole_torus_point(&fs, h2.clone(), &integral_ddt_curvature())?;
                let mut d = unit(0, p);
                d[1] = q;
                Ok((fs, pt.shift_holonomy(&d)))
            },
        ),
        IsotropyFamily::new(
            AjKind::Chi,
            "chi: flat, scaling x holonomy",
            false,
            move |p, q| {
                let fs = scaled_standard(1.0 + p)?;
                let pt = whole_torus_point(&fs, h3.clone(), &KForm::zero(2))?;
                Ok((fs, pt.shift_holonomy(&unit(2, q))))
            },
        ),
    ]
}

pub fn all_families() -> Vec<IsotropyFamily> {
    let mut out = nu_families();
    out.extend(mu_families());
    out.extend(chi_families());
    out
}
