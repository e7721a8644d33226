use std::f64::consts::PI;

use g2torus::algebra::{metric_from_phi, standard_phi, FormType};
use g2torus::cycles::isotropy::{integral_ddt_curvature, integral_ddt_scale, PRIMITIVE_TOL};
use g2torus::cycles::{
    abel_jacobi, all_families, ambient_curvature, classify, ddt_newton, ddt_residual,
    first_variation, isotropy_check, phi_functional, psi_functional, seven_component,
    whole_torus_point, witness_library, AjKind, CyclePath, CyclePoint, DtMode, ExtForm,
    NewtonOptions, Variation, CRITICAL_TOL, WITNESS_FLOOR,
};
use g2torus::linalg::Mat;
use g2torus::sampling::random_typed_form;
use g2torus::{AffineSubtorus, G2Structure, Result, U1Connection};
use rand::Rng;
use serde_json::{json, Value};

use super::{errored, sample_structures, worst};
use crate::config::RunConfig;
use crate::report::Check;

const STREAM: u64 = 4;

fn phi0() -> G2Structure<f64> {
    metric_from_phi(&standard_phi::<f64>()).expect("standard structure")
}

fn unit(i: usize, t: f64) -> Vec<f64> {
    let mut v = vec![0.0; 7];
    v[i] = t;
    v
}

fn coordinate_point(idx: &[usize]) -> CyclePoint {
    CyclePoint::flat(AffineSubtorus::coordinate(idx).expect("coordinate torus"))
}

fn random_subtorus(rng: &mut impl Rng, k: usize) -> AffineSubtorus {
    loop {
        let spanning: Vec<[i64; 7]> = (0..k)
            .map(|_| std::array::from_fn(|_| rng.random_range(-1..=1)))
            .collect();
        if let Ok(t) = AffineSubtorus::new(spanning, [0.0; 7]) {
            return t;
        }
    }
}

fn anchor_for(k: usize) -> &'static str {
    match k {
        3 => "critical-points-associative",
        4 => "critical-points-coassociative",
        _ => "critical-points-deformed-dt",
    }
}

/// Gradient test against the closed-form description over the witness library.
pub fn witness_checks(k: usize) -> Vec<Check> {
    let anchor = anchor_for(k);
    let lib = witness_library(k);
    let mut outcomes = Vec::new();
    for w in &lib {
        match classify(w) {
            Ok(o) => outcomes.push(o),
            Err(e) => return vec![errored(&format!("witness {}", w.name), anchor, &e)],
        }
    }
    let positives = lib.iter().filter(|w| w.critical).count();
    let inconsistent: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.consistent())
        .map(|o| o.name.as_str())
        .collect();
    let crit_max = outcomes
        .iter()
        .filter(|o| o.expected)
        .map(|o| o.max_gradient)
        .fold(0.0, f64::max);
    let non_min = outcomes
        .iter()
        .filter(|o| !o.expected)
        .map(|o| o.max_gradient)
        .fold(f64::INFINITY, f64::min);
    let mut out = vec![
        Check::holds(
            format!(
                "k = {k}: gradient and closed form agree on {} witnesses",
                lib.len()
            ),
            anchor,
            inconsistent.is_empty(),
            json!({ "positive": positives, "negative": lib.len() - positives, "inconsistent": inconsistent }),
        ),
        Check::below(
            format!("k = {k}: largest gradient at critical witnesses"),
            anchor,
            crit_max,
            CRITICAL_TOL,
        ),
        Check::holds(
            format!("k = {k}: smallest gradient at non-critical witnesses >= {WITNESS_FLOOR:.0e}"),
            anchor,
            non_min >= WITNESS_FLOOR,
            crate::report::finite(non_min),
        ),
    ];
    if k == 7 {
        let f = integral_ddt_curvature();
        let fs =
            metric_from_phi(&standard_phi::<f64>().scale(&integral_ddt_scale())).expect("positive");
        out.push(worst(
            "2 pi (e23 + e45 + e67) solves the deformed equation at 3^(-3/4) phi0",
            anchor,
            1e-10,
            [ddt_residual(&f, &fs, DtMode::Deformed).map(|r| r.max_abs())],
        ));
    }
    out
}

/// Newton from seeded starts near Λ²₁₄; returns the checks and each residual trace.
pub fn newton_checks(cfg: &RunConfig) -> (Vec<Check>, Vec<Vec<f64>>) {
    let fs = phi0();
    let mut rng = cfg.rng(STREAM + 100);
    let mut traces = Vec::new();
    let mut finals = Vec::new();
    for _ in 0..cfg.samples {
        let seed = random_typed_form(&mut rng, &fs, 2, &[FormType::Fourteen])
            .and_then(|f0| {
                Ok(&f0.scale(&4.0)
                    + &random_typed_form(&mut rng, &fs, 2, &[FormType::Seven])?.scale(&0.5))
            })
            .and_then(|s| ddt_newton(&s, &fs, DtMode::Deformed, NewtonOptions::default()));
        match seed {
            Ok(t) => {
                finals.push(Ok(*t.residuals.last().expect("nonempty")));
                traces.push(t.residuals);
            }
            Err(e) => finals.push(Err(e)),
        }
    }
    let mut out = vec![worst(
        "Newton from seeded starts reaches the deformed equation",
        "deformed-dt-newton",
        1e-10,
        finals,
    )];

    // The correction away from Λ²₁₄ is cubic in the seed size.
    let dir = random_typed_form(&mut cfg.rng(STREAM + 101), &fs, 2, &[FormType::Fourteen])
        .map(|d| d.scale(&2.0));
    let dev = |eps: f64| -> Result<f64> {
        let d = dir.clone()?;
        seven_component(
            &ddt_newton(
                &d.scale(&eps),
                &fs,
                DtMode::Deformed,
                NewtonOptions::default(),
            )?
            .solution,
            &fs,
        )
    };
    out.push(match (dev(1.0), dev(0.5)) {
        (Ok(a), Ok(b)) => Check::below(
            "seven-type correction halves by 8 when the seed halves",
            "deformed-dt-newton",
            (a / b - 8.0).abs(),
            0.5,
        )
        .with_note(format!("ratio {:.4}", a / b)),
        (Err(e), _) | (_, Err(e)) => errored(
            "seven-type correction scales cubically",
            "deformed-dt-newton",
            &e,
        ),
    });
    (out, traces)
}

fn functional_checks(cfg: &RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let structures = sample_structures(cfg, STREAM);
    let fs0 = phi0();
    let mut rng = cfg.rng(STREAM + 200);

    out.push(worst(
        "Phi_3 along a translation x is psi(x, e1, e2, e3)",
        "phi-functional",
        cfg.tol_exact,
        (0..cfg.samples).map(|_| {
            let x: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
            let base = coordinate_point(&[0, 1, 2]);
            let expected =
                fs0.psi()
                    .evaluate(&[x.clone(), unit(0, 1.0), unit(1, 1.0), unit(2, 1.0)]);
            let got = phi_functional(
                3,
                &CyclePath::straight(base.clone(), base.translated(&x))?,
                &fs0,
            )?;
            Ok((got - expected).abs())
        }),
    ));
    out.push(worst(
        "Phi is path independent and additive",
        "phi-functional",
        cfg.tol_exact,
        structures.iter().map(|fs| {
            let conn = U1Connection::with_chern_form(vec![0.0; 3], &[(0, 2, 1)])?;
            let a = CyclePoint::new(AffineSubtorus::coordinate(&[0, 1, 3])?, conn)?;
            let b = a
                .translated(&[0.3, 0.0, 0.7, 0.0, -0.2, 0.4, 0.1])
                .shift_holonomy(&[0.2, -0.5, 0.9]);
            let mid = a
                .translated(&[1.0, 2.0, 0.0, 0.0, 0.5, 0.0, -1.0])
                .shift_holonomy(&[0.7, 0.0, 0.0]);
            let direct = phi_functional(3, &CyclePath::straight(a.clone(), b.clone())?, fs)?;
            let first = phi_functional(3, &CyclePath::straight(a, mid.clone())?, fs)?;
            let second = phi_functional(3, &CyclePath::straight(mid, b)?, fs)?;
            Ok((direct - first - second).abs() / direct.abs().max(1.0))
        }),
    ));
    let h = cfg.fd_step;
    out.push(worst(
        "first variation of Phi_4 against finite differences",
        "phi-functional",
        cfg.tol_first,
        structures.iter().map(|fs| {
            let conn =
                U1Connection::with_chern_form(vec![0.1, 0.2, 0.3, 0.4], &[(0, 1, 1), (1, 3, -1)])?;
            let p = CyclePoint::new(AffineSubtorus::coordinate(&[0, 2, 4, 5])?, conn)?;
            let start = p.base();
            let x = vec![0.3, -0.2, 0.0, 0.5, 0.0, 0.0, 0.1];
            let along = |s: f64| -> Result<f64> {
                let q = p
                    .translated(&x.iter().map(|c| c * s).collect::<Vec<_>>())
                    .shift_holonomy(&[0.0, s, 0.0, 0.0]);
                phi_functional(4, &CyclePath::straight(start.clone(), q)?, fs)
            };
            let fd = (along(h)? - along(-h)?) / (2.0 * h);
            let mut dir = Variation::translation(4, x.clone());
            dir.holonomy[1] = 1.0;
            let exact = first_variation(&p, &dir, fs);
            Ok((fd - exact).abs() / exact.abs().max(1.0))
        }),
    ));

    let mut rng = cfg.rng(STREAM + 300);
    let mut bound = Vec::new();
    for fs in &structures {
        for (k, form) in [(3, fs.phi()), (4, fs.psi())] {
            for _ in 0..4 {
                let t = random_subtorus(&mut rng, k);
                bound.push(t.integrate(form).abs() / t.volume(fs) - 1.0);
            }
        }
    }
    let worst_excess = bound.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    out.push(Check::below(
        "|int_N phi| <= vol N and |int_L psi| <= vol L on random subtori",
        "calibration-bound",
        worst_excess,
        cfg.tol_exact,
    ));

    // Ψ ≤ size everywhere, with equality exactly at the calibrated configurations.
    let mut rng = cfg.rng(STREAM + 400);
    let mut margins = Vec::new();
    for fs in &structures {
        for k in [3, 4, 7] {
            let t = if k == 7 {
                AffineSubtorus::whole(fs)
            } else {
                random_subtorus(&mut rng, k)
            };
            let n: Vec<f64> = (0..k * k)
                .map(|_| rng.random_range(-2i32..=2) as f64)
                .collect();
            let r = U1Connection::new(
                vec![0.0; k],
                ExtForm::two_form(k, |a, b| 2.0 * PI * n[a * k + b]),
            )
            .and_then(|c| CyclePoint::new(t, c))
            .and_then(|p| psi_functional(k, &p, fs));
            margins.push(r.map(|r| (r.psi - r.size) / r.size.abs().max(1.0)));
        }
    }
    out.push(worst(
        "Psi_k <= vol + Yang-Mills on random integral connections",
        "size-inequality",
        cfg.tol_exact,
        margins,
    ));

    for k in [3, 4, 7] {
        let mut mismatches = Vec::new();
        let mut strict_critical = 0usize;
        let mut failure = None;
        for w in witness_library(k) {
            let r = psi_functional(k, &w.point, &w.fs).and_then(|r| {
                let expected = if k == 7 {
                    seven_component(&ambient_curvature(&w.point)?, &w.fs)? < CRITICAL_TOL
                } else {
                    w.critical
                };
                Ok((r.equality, expected))
            });
            match r {
                Ok((eq, expected)) => {
                    if eq != expected {
                        mismatches.push(w.name.clone());
                    }
                    if w.critical && !eq {
                        strict_critical += 1;
                    }
                }
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        let name = if k == 7 {
            "k = 7: Psi = size exactly for ordinary DT curvature".to_string()
        } else {
            format!("k = {k}: Psi = size exactly at critical points")
        };
        out.push(match failure {
            Some(e) => errored(&name, "size-inequality", &e),
            None => {
                let c = Check::holds(name, "size-inequality", mismatches.is_empty(), &mismatches);
                if k == 7 {
                    c.with_note(format!("{strict_critical} critical witnesses with seven-type curvature give strict inequality"))
                } else {
                    c
                }
            }
        });
    }
    out
}

/// Φ-periods over generator loops land in the integral lattice, and the
/// measured rank of the derivative of each map.
pub fn aj_checks(_cfg: &RunConfig) -> (Vec<Check>, Value) {
    let fs = phi0();
    let fs_c =
        metric_from_phi(&standard_phi::<f64>().scale(&integral_ddt_scale())).expect("positive");
    let mut cases: Vec<(AjKind, &'static str, G2Structure<f64>, Result<CyclePoint>)> = vec![
        (
            AjKind::Nu,
            "associative e123, shifted",
            fs.clone(),
            Ok(coordinate_point(&[0, 1, 2]).translated(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7])),
        ),
        (
            AjKind::Nu,
            "e145 with curvature",
            fs.clone(),
            AffineSubtorus::coordinate(&[0, 3, 4]).and_then(|t| {
                CyclePoint::new(
                    t,
                    U1Connection::with_chern_form(vec![0.3; 3], &[(0, 1, 2)])?,
                )
            }),
        ),
        (
            AjKind::Mu,
            "coassociative e4567, self-dual curvature",
            fs.clone(),
            AffineSubtorus::coordinate(&[3, 4, 5, 6]).and_then(|t| {
                let l = if t.integrate(fs.psi()) > 0.0 {
                    t
                } else {
                    t.reversed()
                };
                CyclePoint::new(
                    l,
                    U1Connection::with_chern_form(
                        vec![0.2, 0.0, 0.7, 0.1],
                        &[(0, 1, 1), (2, 3, 1)],
                    )?,
                )
            }),
        ),
        (
            AjKind::Chi,
            "integral deformed DT",
            fs_c.clone(),
            whole_torus_point(&fs_c, vec![0.1; 7], &integral_ddt_curvature()),
        ),
    ];
    let mut out = Vec::new();
    let mut devs = Vec::new();
    let mut ranks = serde_json::Map::new();
    for (kind, name, fs, p) in cases.drain(..) {
        let p = match p {
            Ok(p) => p,
            Err(e) => {
                out.push(errored(name, "abel-jacobi-map", &e));
                continue;
            }
        };
        let mut loops: Vec<Result<CyclePath>> = Vec::new();
        if p.dim() < 7 {
            loops.extend(
                (0..7).map(|i| CyclePath::straight(p.clone(), p.translated(&unit(i, 1.0)))),
            );
        }
        for a in 0..p.dim() {
            let mut d = vec![0.0; p.dim()];
            d[a] = 1.0;
            loops.push(CyclePath::straight(p.clone(), p.shift_holonomy(&d)));
        }
        for l in loops {
            devs.push(
                l.and_then(|l| abel_jacobi(kind, &l, &fs))
                    .map(|c| c.lattice_deviation()),
            );
        }
        // Columns: the class per unit displacement, translations then holonomies.
        let eps = 1e-3;
        let mut cols = Vec::new();
        let mut moves: Vec<CyclePoint> = Vec::new();
        if p.dim() < 7 {
            moves.extend((0..7).map(|i| p.translated(&unit(i, eps))));
        }
        for a in 0..p.dim() {
            let mut d = vec![0.0; p.dim()];
            d[a] = eps;
            moves.push(p.shift_holonomy(&d));
        }
        for q in moves {
            if let Ok(c) =
                CyclePath::straight(p.clone(), q).and_then(|l| abel_jacobi(kind, &l, &fs))
            {
                cols.push(
                    c.value
                        .coeffs()
                        .iter()
                        .map(|v| v / eps)
                        .collect::<Vec<f64>>(),
                );
            }
        }
        let rank = Mat::from_columns(&cols).rank(1e-8);
        ranks.insert(
            name.to_string(),
            json!({ "kind": format!("{kind:?}"), "directions": cols.len(), "rank": rank }),
        );
    }
    out.push(worst(
        "class of every generator loop is integral",
        "abel-jacobi-map",
        1e-9,
        devs,
    ));
    let fs = phi0();
    let base = coordinate_point(&[0, 1, 2]);
    let class = |t: f64| {
        CyclePath::straight(base.clone(), base.translated(&unit(3, t)))
            .and_then(|p| abel_jacobi(AjKind::Nu, &p, &fs))
    };
    out.push(worst(
        "nu is linear along a normal translation",
        "abel-jacobi-map",
        1e-12,
        [class(1.0).and_then(|one| Ok((&class(0.3)?.value - &one.value.scale(&0.3)).max_abs()))],
    ));
    let ranks = Value::Object(ranks);
    out.push(Check::measured(
        "rank of the derivative of each class map",
        "abel-jacobi-map",
        &ranks,
    ));
    (out, ranks)
}

/// Primitive identities and isotropy on the sample families. The χ check
/// compares against the identity as stated and reports its failure.
pub fn isotropy_checks(cfg: &RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let h = (10.0 * cfg.fd_step).max(1e-5);
    for fam in all_families() {
        let anchor = match fam.kind {
            AjKind::Nu => "isotropy-nu",
            AjKind::Mu => "isotropy-mu",
            AjKind::Chi => "isotropy-chi",
        };
        match isotropy_check(&fam, h) {
            Ok(r) => {
                out.push(Check::below(
                    format!("{}: pullback of the primitive, stated form", r.family),
                    anchor,
                    r.printed_residual,
                    PRIMITIVE_TOL,
                ));
                if fam.kind == AjKind::Chi {
                    out.push(Check::below(
                        format!(
                            "{}: pullback of the primitive, with the class velocity term",
                            r.family
                        ),
                        anchor,
                        r.derived_residual,
                        PRIMITIVE_TOL,
                    ));
                }
                out.push(Check::below(
                    format!("{}: symplectic form vanishes", r.family),
                    anchor,
                    r.symplectic.abs(),
                    1e-8,
                ));
            }
            Err(e) => out.push(errored(&fam.name, anchor, &e)),
        }
    }
    out
}

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    let mut out = functional_checks(cfg);
    for k in [3, 4, 7] {
        out.extend(witness_checks(k));
    }
    out.extend(newton_checks(cfg).0);
    out.extend(aj_checks(cfg).0);
    out.extend(isotropy_checks(cfg));
    out
}
