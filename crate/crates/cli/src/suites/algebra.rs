use g2torus::algebra::identities::{
    check_contraction_identity, check_defining_identity, check_metric_volume_variation,
    check_star_derivative, check_star_derivative_dual, norms_and_ranks, projector_defects,
    trace_formula_sides,
};
use g2torus::algebra::{metric_from_phi, standard_phi, FormType};
use g2torus::sampling::{random_form, random_typed_form};
use g2torus::{Rational, Scalar, Sym2Tensor};
use rand::Rng;

use super::{sample_structures, worst};
use crate::config::RunConfig;
use crate::report::Check;

const STREAM: u64 = 1;

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let structures = sample_structures(cfg, STREAM);
    let phi0 = metric_from_phi(&standard_phi::<f64>()).expect("standard structure");

    if cfg.exact {
        let fs =
            metric_from_phi(&standard_phi::<Rational>()).expect("standard structure is rational");
        let rep = check_contraction_identity(&fs);
        out.push(
            Check::holds(
                "contraction identity at phi0 (exact, 7^4 tuples)",
                "contraction-identity",
                rep.certified,
                rep.max_residual,
            )
            .with_note(format!(
                "{} evaluations, certificate {}",
                rep.evaluations,
                if rep.certified { "present" } else { "absent" }
            )),
        );
        let rep = check_defining_identity(&fs);
        out.push(Check::holds(
            "metric defining identity at phi0 (exact)",
            "contraction-identity",
            rep.certified,
            rep.max_residual,
        ));
        let nr = norms_and_ranks(&fs);
        let seven = Rational::from_i64(7);
        out.push(Check::holds(
            "|phi|^2 = |psi|^2 = 7 at phi0 (exact)",
            "norm-of-phi",
            nr.phi_norm_sq == seven && nr.psi_norm_sq == seven,
            [nr.phi_norm_sq.to_f64(), nr.psi_norm_sq.to_f64()],
        ));
        out.push(Check::holds(
            "projector ranks (1,7,27), (1,7,27), (7,14) at phi0 (exact)",
            "type-decomposition",
            nr.ranks3 == [1, 7, 27] && nr.ranks4 == [1, 7, 27] && nr.ranks2 == [7, 14],
            (nr.ranks3, nr.ranks4, nr.ranks2),
        ));
    }

    let mut all = vec![phi0.clone()];
    all.extend(structures.iter().cloned());
    out.push(worst(
        "contraction identity residual (float, phi0 and samples)",
        "contraction-identity",
        cfg.tol_exact,
        all.iter()
            .map(|fs| Ok(check_contraction_identity(fs).max_residual)),
    ));
    out.push(worst(
        "metric defining identity residual (float)",
        "contraction-identity",
        cfg.tol_exact,
        all.iter()
            .map(|fs| Ok(check_defining_identity(fs).max_residual)),
    ));
    out.push(worst(
        "| |phi|^2 - 7 | and | |psi|^2 - 7 |",
        "norm-of-phi",
        cfg.tol_exact,
        all.iter().map(|fs| {
            Ok((fs.norm_sq(fs.phi()) - 7.0)
                .abs()
                .max((fs.norm_sq(fs.psi()) - 7.0).abs()))
        }),
    ));
    let ranks_ok = all.iter().all(|fs| {
        let nr = norms_and_ranks(fs);
        nr.ranks3 == [1, 7, 27] && nr.ranks4 == [1, 7, 27] && nr.ranks2 == [7, 14]
    });
    out.push(Check::holds(
        "projector ranks at phi0 and samples",
        "type-decomposition",
        ranks_ok,
        ranks_ok,
    ));
    out.push(worst(
        "projector idempotence and orthogonality defect",
        "type-decomposition",
        cfg.tol_exact,
        all.iter().map(|fs| {
            let (a, b) = projector_defects(fs);
            Ok(a.max(b))
        }),
    ));

    // ⋆ = ∗ ∘ (4/3 π₁ + π₇ − π₂₇) on 3-forms.
    let mut rng = cfg.rng(STREAM + 100);
    out.push(worst(
        "star operator against the type-weighted Hodge star",
        "star-operator",
        cfg.tol_exact,
        all.iter().map(|fs| {
            let a = random_form(&mut rng, 3);
            let d = fs.decompose(&a)?;
            let weighted = d
                .parts()
                .into_iter()
                .fold(g2torus::KForm::zero(3), |acc, (t, p)| {
                    let w = match t {
                        FormType::One => 4.0 / 3.0,
                        FormType::Seven => 1.0,
                        _ => -1.0,
                    };
                    acc.axpy(&w, p)
                });
            let expected = fs.hodge_star(&weighted);
            Ok((&fs.star_op(&a)? - &expected).max_abs() / expected.max_abs().max(1.0))
        }),
    ));

    let mut rng = cfg.rng(STREAM + 200);
    out.push(worst(
        "d/dt *phi_t against star (degree 3, relative)",
        "star-derivative",
        cfg.tol_first,
        all.iter().flat_map(|fs| {
            let dirs: Vec<_> = (0..4).map(|_| random_form(&mut rng, 3)).collect();
            dirs.into_iter()
                .map(move |e| check_star_derivative(fs, &e, cfg.fd_step).map(|r| r.relative_error))
                .collect::<Vec<_>>()
        }),
    ));
    let mut rng = cfg.rng(STREAM + 300);
    out.push(worst(
        "degree-4 analogue with (3/4, 1, -1) (relative)",
        "star-derivative",
        cfg.tol_first,
        all.iter().flat_map(|fs| {
            let dirs: Vec<_> = (0..2).map(|_| random_form(&mut rng, 4)).collect();
            dirs.into_iter()
                .map(move |t| {
                    check_star_derivative_dual(fs, &t, cfg.fd_step).map(|r| r.relative_error)
                })
                .collect::<Vec<_>>()
        }),
    ));

    let mut rng = cfg.rng(STREAM + 400);
    let sym =
        |rng: &mut rand::rngs::StdRng| Sym2Tensor::from_fn(|_, _| rng.random_range(-1.0..1.0));
    let variations: Vec<_> = all
        .iter()
        .map(|fs| {
            let h = sym(&mut rng);
            check_metric_volume_variation(fs, &h, cfg.fd_step)
        })
        .collect();
    out.push(worst(
        "variation of g^-1 and vol against -2h and tr(h) vol",
        "metric-volume-variation",
        cfg.tol_first,
        variations
            .into_iter()
            .map(|r| r.map(|r| r.inverse_metric_error.max(r.volume_error))),
    ));
    let mut rng = cfg.rng(STREAM + 500);
    out.push(worst(
        "L2 trace formula <<eta(h1), eta(h2)>> (relative)",
        "trace-formula",
        cfg.tol_exact,
        all.iter().map(|fs| {
            let (h1, h2) = (sym(&mut rng), sym(&mut rng));
            let (l, r) = trace_formula_sides(fs, &h1, &h2);
            Ok((l - r).abs() / r.abs().max(1.0))
        }),
    ));
    let mut rng = cfg.rng(STREAM + 600);
    out.push(worst(
        "types 1, 7, 27 are mutually g-orthogonal",
        "type-decomposition",
        cfg.tol_exact,
        all.iter().map(|fs| {
            let a = random_typed_form(&mut rng, fs, 3, &[FormType::Seven])?;
            let b = random_typed_form(&mut rng, fs, 3, &[FormType::TwentySeven])?;
            Ok(fs.inner(&a, &b).abs().max(fs.inner(&a, fs.phi()).abs()))
        }),
    ));
    out
}
