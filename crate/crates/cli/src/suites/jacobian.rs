use g2torus::algebra::FormType;
use g2torus::jacobian::{
    check_alpha, check_alpha_tilde, check_lagrangian_graph, closedness_and_integrability,
    complex_structure_matrix, complex_structure_tilde, cubic_form_check, metric_j_matrix,
    metric_tilde_matrix, omega_matrix, omega_tilde_matrix, JacobianLattice, JacobianVector,
    LegendreChart, TildeJacobianVector, TildePrimitive,
};
use g2torus::linalg::{inertia, Mat};
use g2torus::moduli::FlatChart;
use g2torus::sampling::{random_form, random_typed_form};
use g2torus::{G2Structure, KForm, Result};
use rand::Rng;

use super::{errored, sample_points, worst};
use crate::config::RunConfig;
use crate::report::Check;

const STREAM: u64 = 3;
const SECTOR: [FormType; 2] = [FormType::One, FormType::TwentySeven];

/// Max defect of J² = −1, 𝒢 = ω(·,J·), symmetry and J-invariance.
fn triple_defect(om: &Mat<f64>, j: &Mat<f64>, g: &Mat<f64>) -> f64 {
    let id = Mat::<f64>::identity(70);
    [
        j.mul(j).add(&id).max_abs(),
        g.sub(&om.mul(j)).max_abs(),
        g.sub(&g.transpose()).max_abs(),
        j.transpose().mul(g).mul(j).sub(g).max_abs(),
        j.transpose().mul(om).mul(j).sub(om).max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
        / g.max_abs().max(1.0)
}

pub(crate) fn untilded(fs: &G2Structure<f64>) -> Result<(f64, (usize, usize, usize))> {
    let g = metric_j_matrix(fs)?;
    let d = triple_defect(&omega_matrix(fs), &complex_structure_matrix(fs)?, &g);
    Ok((d, inertia(&g.to_nalgebra(), 1e-10)))
}

pub(crate) fn tilded(fs: &G2Structure<f64>) -> Result<(f64, (usize, usize, usize))> {
    let g = metric_tilde_matrix(fs)?;
    let cols: Vec<Vec<f64>> = (0..70)
        .map(|i| {
            let v = complex_structure_tilde(&TildeJacobianVector::basis(i));
            v.eta
                .coeffs()
                .iter()
                .chain(v.mu.coeffs())
                .copied()
                .collect()
        })
        .collect();
    let d = triple_defect(&omega_tilde_matrix(fs)?, &Mat::from_columns(&cols), &g);
    Ok((d, inertia(&g.to_nalgebra(), 1e-10)))
}

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    let chart = FlatChart::standard();
    let centre = chart.center_point();
    let mut points = vec![centre.clone()];
    points.extend(sample_points(&chart, cfg, STREAM));
    let structures: Vec<G2Structure<f64>> = points.iter().map(|p| p.structure().clone()).collect();
    let mut out = Vec::new();

    let mut rng = cfg.rng(STREAM + 100);
    out.push(worst(
        "graph of phi -> *phi is Lagrangian and tangent to the dual form",
        "lagrangian-graph",
        cfg.tol_first,
        points.iter().flat_map(|p| {
            let dirs: Vec<_> = (0..3)
                .map(|_| (random_form(&mut rng, 3), random_form(&mut rng, 3)))
                .collect();
            dirs.into_iter()
                .map(|(a, b)| {
                    check_lagrangian_graph(p, &a, &b, cfg.fd_step)
                        .map(|r| r.isotropy.abs().max(r.tangency_error))
                })
                .collect::<Vec<_>>()
        }),
    ));

    match JacobianLattice::new(centre.structure()) {
        Ok(lat) => out.push(Check::below(
            "fibre lattice covolume 4/3 at phi0",
            "jacobian-lattice",
            (lat.covolume() - 4.0 / 3.0).abs(),
            cfg.tol_exact,
        )),
        Err(e) => out.push(errored(
            "fibre lattice covolume 4/3 at phi0",
            "jacobian-lattice",
            &e,
        )),
    }
    out.push(worst(
        "covolume scales as t^(35/3)",
        "jacobian-lattice",
        cfg.tol_exact,
        structures.iter().map(|fs| {
            let base = JacobianLattice::new(fs)?.covolume();
            let scaled = g2torus::algebra::metric_from_phi(&fs.phi().scale(&1.5))?;
            let c = JacobianLattice::new(&scaled)?.covolume();
            Ok((c / base / 1.5f64.powf(35.0 / 3.0) - 1.0).abs())
        }),
    ));

    let triples: Vec<_> = structures.iter().map(untilded).collect();
    out.push(worst(
        "(omega, J, G) on H3+H4: J^2 = -1, G = omega(., J.), J-invariance",
        "pseudo-kaehler-structure",
        cfg.tol_exact,
        triples.iter().map(|r| r.clone().map(|r| r.0)),
    ));
    let sigs: Vec<_> = triples
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|r| r.1))
        .collect();
    out.push(Check::holds(
        "Jacobian metric signature (16, 54)",
        "pseudo-kaehler-structure",
        sigs.len() == triples.len() && sigs.iter().all(|s| *s == (16, 54, 0)),
        &sigs,
    ));
    let triples: Vec<_> = structures.iter().map(tilded).collect();
    out.push(worst(
        "tilde triple on H3+H3 is pseudo-Kaehler",
        "tilde-pseudo-kaehler-structure",
        cfg.tol_exact,
        triples.iter().map(|r| r.clone().map(|r| r.0)),
    ));
    let sigs: Vec<_> = triples
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|r| r.1))
        .collect();
    out.push(Check::holds(
        "tilde metric signature (16, 54)",
        "tilde-pseudo-kaehler-structure",
        sigs.len() == triples.len() && sigs.iter().all(|s| *s == (16, 54, 0)),
        &sigs,
    ));

    let mut rng = cfg.rng(STREAM + 200);
    let mut primitives: Vec<Result<f64>> = Vec::new();
    let mut star_form: Vec<Result<f64>> = Vec::new();
    for fs in &structures {
        let phi = fs.phi();
        let (d, c) = (random_form(&mut rng, 4), random_form(&mut rng, 3));
        let v: Vec<JacobianVector> = (0..2)
            .map(|_| JacobianVector::new(random_form(&mut rng, 3), random_form(&mut rng, 4)))
            .collect();
        let w: Vec<TildeJacobianVector> = (0..2)
            .map(|_| TildeJacobianVector::new(random_form(&mut rng, 3), random_form(&mut rng, 3)))
            .collect();
        primitives.push(
            check_alpha(phi, &d, &v[0], &v[1], cfg.fd_step)
                .map(|r| r.defect() / r.symplectic.abs().max(1.0)),
        );
        primitives.push(
            check_alpha_tilde(phi, &c, &w[0], &w[1], TildePrimitive::Exact, cfg.fd_step)
                .map(|r| r.defect() / r.symplectic.abs().max(1.0)),
        );
        star_form.push(
            check_alpha_tilde(phi, &c, &w[0], &w[1], TildePrimitive::StarForm, cfg.fd_step).map(
                |r| (r.d_primitive - 7.0 / 6.0 * r.symplectic).abs() / r.symplectic.abs().max(1.0),
            ),
        );
    }
    out.push(worst(
        "d(alpha) = omega and d(alpha~) = omega~ (relative)",
        "symplectic-primitives",
        cfg.tol_first,
        primitives,
    ));
    out.push(worst(
        "star-form primitive differentiates to 7/6 omega~",
        "symplectic-primitives",
        cfg.tol_first,
        star_form,
    ));

    let lc = LegendreChart::new(chart.clone());
    let legendre: Vec<_> = points
        .iter()
        .map(|p| lc.check(p, 10.0 * cfg.fd_step))
        .collect();
    out.push(Check::below(
        "f^ = 4/3 f at phi0",
        "legendre-transform",
        (lc.fhat(&centre) - 4.0).abs(),
        cfg.tol_exact,
    ));
    out.push(worst(
        "f^ = 4/3 f at samples (relative)",
        "legendre-transform",
        cfg.tol_exact,
        legendre.iter().map(|r| r.clone().map(|r| r.fhat_error)),
    ));
    out.push(worst(
        "Hessian of f^ is the inverse of G",
        "legendre-transform",
        cfg.tol_second(),
        legendre
            .iter()
            .map(|r| r.clone().map(|r| r.inverse_hessian_error)),
    ));

    let mut rng = cfg.rng(STREAM + 300);
    out.push(worst(
        "dG is totally symmetric (J integrable, omega closed)",
        "cubic-form",
        cfg.tol_second(),
        points.iter().map(|p| {
            let t: Vec<_> = (0..10)
                .map(|_| {
                    (
                        rng.random_range(0..35),
                        rng.random_range(0..35),
                        rng.random_range(0..35),
                    )
                })
                .collect();
            closedness_and_integrability(&chart, p, &t, cfg.fd_step).map(|r| r.max_asymmetry)
        }),
    ));
    let mut rng = cfg.rng(STREAM + 400);
    out.push(worst(
        "derivative of G along the sector is 2 Y (relative)",
        "cubic-form",
        cfg.tol_third,
        points.iter().map(|p| {
            let d: Vec<KForm<f64>> = (0..3)
                .map(|_| random_typed_form(&mut rng, p.structure(), 3, &SECTOR))
                .collect::<Result<_>>()?;
            cubic_form_check(p, &d[0], &d[1], &d[2], cfg.fd_step).map(|r| r.relative_error)
        }),
    ));
    out
}
