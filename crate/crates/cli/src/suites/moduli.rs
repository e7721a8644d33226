use g2torus::algebra::FormType;
use g2torus::moduli::{
    check_third_derivative, gradient_f, gradient_fd, hessian_g, hessian_routes,
    log_potential_checks, seven_discrepancy, superpotential, yukawa, yukawa_constants, FlatChart,
};
use g2torus::sampling::random_typed_form;
use g2torus::KForm;

use super::{errored, sample_points, worst};
use crate::config::RunConfig;
use crate::report::Check;

const STREAM: u64 = 2;
const SECTOR: [FormType; 2] = [FormType::One, FormType::TwentySeven];

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    let chart = FlatChart::standard();
    let centre = chart.center_point();
    let mut points = vec![centre.clone()];
    points.extend(sample_points(&chart, cfg, STREAM));
    let fd = cfg.fd();
    let mut out = Vec::new();

    let f0 = superpotential(&centre);
    out.push(Check::below(
        "f(phi0) = 3",
        "superpotential",
        (f0 - 3.0).abs(),
        cfg.tol_exact,
    ));
    out.push(worst(
        "f(t phi) = t^(7/3) f(phi), t = 2",
        "superpotential",
        cfg.tol_exact,
        points.iter().map(|p| {
            let scaled = chart.point_of_form(&p.phi().scale(&2.0))?;
            let f = superpotential(p);
            Ok((superpotential(&scaled) - 2f64.powf(7.0 / 3.0) * f).abs() / f)
        }),
    ));
    out.push(worst(
        "gradient of f against finite differences (relative)",
        "superpotential",
        cfg.tol_first,
        points.iter().map(|p| {
            let exact = gradient_f(&chart, p);
            let numeric = gradient_fd(&chart, p, cfg.fd_step)?;
            let scale = exact.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
            Ok(exact
                .iter()
                .zip(&numeric)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                / scale)
        }),
    ));
    out.push(worst(
        "Hessian by projections, star pairing and finite differences",
        "hessian-metric",
        cfg.tol_second(),
        points
            .iter()
            .map(|p| hessian_routes(&chart, p, &fd).map(|r| r.max_discrepancy())),
    ));
    let mut signatures = Vec::new();
    let mut sig_err = None;
    for p in &points {
        match hessian_g(&chart, p) {
            Ok(h) => signatures.push(h.signature),
            Err(e) => {
                sig_err = Some(e);
                break;
            }
        }
    }
    out.push(match sig_err {
        Some(e) => errored("Hessian signature (8, 27)", "hessian-metric", &e),
        None => Check::holds(
            "Hessian signature (8, 27)",
            "hessian-metric",
            signatures.iter().all(|s| *s == (8, 27)),
            &signatures,
        ),
    });
    out.push(match hessian_g(&chart, &centre) {
        Ok(h) => Check::below(
            "G_00 = 28/9 f at phi0",
            "hessian-metric",
            (h.hessian[(0, 0)] - 28.0 / 9.0 * f0).abs(),
            cfg.tol_exact,
        ),
        Err(e) => errored("G_00 = 28/9 f at phi0", "hessian-metric", &e),
    });

    let mut rng = cfg.rng(STREAM + 100);
    out.push(worst(
        "third derivative of f against 2 Y (relative)",
        "yukawa-coupling",
        cfg.tol_third,
        points.iter().map(|p| {
            let fs = p.structure();
            let d: Vec<KForm<f64>> = (0..3)
                .map(|_| random_typed_form(&mut rng, fs, 3, &SECTOR))
                .collect::<g2torus::Result<_>>()?;
            check_third_derivative(p, [&d[0], &d[1], &d[2]], &fd).map(|r| r.relative_error)
        }),
    ));
    let rejected = chart
        .basis_form(FlatChart::sector_range(FormType::Seven).start)
        .clone();
    let refuses = matches!(
        yukawa(centre.structure(), centre.phi(), centre.phi(), &rejected),
        Err(g2torus::G2Error::HasSevenComponent { .. })
    );
    out.push(Check::holds(
        "Y refuses directions with a 7-type part",
        "yukawa-coupling",
        refuses,
        refuses,
    ));

    // Off the 1+27 sector nothing is asserted; record how far FD drifts from
    // 2Y of the sector parts.
    let mut rng = cfg.rng(STREAM + 150);
    let gaps: g2torus::Result<Vec<f64>> = points
        .iter()
        .map(|p| {
            let fs = p.structure();
            let seven = random_typed_form(&mut rng, fs, 3, &[FormType::Seven])?;
            let a = random_typed_form(&mut rng, fs, 3, &SECTOR)?;
            let b = random_typed_form(&mut rng, fs, 3, &SECTOR)?;
            seven_discrepancy(p, [&seven, &a, &b], &fd).map(|r| r.relative_gap)
        })
        .collect();
    out.push(match gaps {
        Ok(g) => Check::measured(
            "third derivative with a 7-type direction against 2 Y of sector parts",
            "yukawa-coupling",
            g,
        ),
        Err(e) => errored(
            "third derivative with a 7-type direction against 2 Y of sector parts",
            "yukawa-coupling",
            &e,
        ),
    });

    let mut rng = cfg.rng(STREAM + 200);
    let mut consts = Vec::new();
    let mut const_err = None;
    for p in &points {
        let fs = p.structure();
        let r = random_typed_form(&mut rng, fs, 3, &[FormType::TwentySeven])
            .and_then(|a| {
                Ok((
                    a,
                    random_typed_form(&mut rng, fs, 3, &[FormType::TwentySeven])?,
                ))
            })
            .and_then(|(a, b)| yukawa_constants(fs, &a, &b));
        match r {
            Ok(c) => consts.push(c),
            Err(e) => {
                const_err = Some(e);
                break;
            }
        }
    }
    match const_err {
        Some(e) => out.push(errored(
            "Y(phi,phi,phi) = 14/27 f and Y(phi,.,.) = 1/6 G on type 27",
            "yukawa-constants",
            &e,
        )),
        None => {
            let dev = consts.iter().fold(0.0f64, |m, (c, k)| {
                m.max((c - 14.0 / 27.0).abs()).max((k - 1.0 / 6.0).abs())
            });
            out.push(Check::below(
                "Y(phi,phi,phi) = 14/27 f and Y(phi,.,.) = 1/6 G on type 27",
                "yukawa-constants",
                dev,
                cfg.tol_exact,
            ));
        }
    }

    let logs: Vec<_> = points
        .iter()
        .map(|p| log_potential_checks(p, &fd))
        .collect();
    out.push(worst(
        "F = -3 log f: F_00 = 7/3 at the recentred point",
        "log-potential",
        cfg.tol_second(),
        logs.iter()
            .map(|r| r.clone().map(|r| (r.f00 - 7.0 / 3.0).abs().max(r.f0i_max))),
    ));
    out.push(worst(
        "F Hessian on the 1+27 sector against G / f",
        "log-potential",
        cfg.tol_second(),
        logs.iter().map(|r| r.clone().map(|r| r.sector_error)),
    ));
    let pd: Vec<bool> = logs
        .iter()
        .map(|r| {
            r.as_ref()
                .map(|r| r.sector_positive_definite)
                .unwrap_or(false)
        })
        .collect();
    out.push(Check::holds(
        "F Hessian positive definite on the 1+27 sector",
        "log-potential",
        pd.iter().all(|b| *b),
        &pd,
    ));
    out
}
