//! Invariant suites behind `verify`.

mod algebra;
mod cycles;
pub(crate) mod jacobian;
mod moduli;

use g2torus::algebra::metric_from_phi;
use g2torus::moduli::{FlatChart, ModuliPoint};
use g2torus::sampling::random_positive_phi;
use g2torus::{G2Error, G2Structure};

use crate::config::RunConfig;
use crate::report::{Check, Report};
use crate::Target;

pub use cycles::{aj_checks, isotropy_checks, newton_checks, witness_checks};

pub fn verify(target: Target, cfg: &RunConfig) -> Report {
    let name = match target {
        Target::Algebra => "verify algebra",
        Target::Moduli => "verify moduli",
        Target::Jacobian => "verify jacobian",
        Target::Cycles => "verify cycles",
        Target::All => "verify all",
    };
    let mut report = Report::new(name, cfg.to_map());
    if matches!(target, Target::Algebra | Target::All) {
        report.extend(algebra::run(cfg));
    }
    if matches!(target, Target::Moduli | Target::All) {
        report.extend(moduli::run(cfg));
    }
    if matches!(target, Target::Jacobian | Target::All) {
        report.extend(jacobian::run(cfg));
    }
    if matches!(target, Target::Cycles | Target::All) {
        report.extend(cycles::run(cfg));
    }
    report
}

/// Random positive structures, one RNG stream per suite.
pub(crate) fn sample_structures(cfg: &RunConfig, stream: u64) -> Vec<G2Structure<f64>> {
    let mut rng = cfg.rng(stream);
    (0..cfg.samples)
        .map(|_| {
            metric_from_phi(&random_positive_phi(&mut rng, 0.3))
                .expect("sampler returns positive forms")
        })
        .collect()
}

pub(crate) fn sample_points(chart: &FlatChart, cfg: &RunConfig, stream: u64) -> Vec<ModuliPoint> {
    sample_structures(cfg, stream)
        .iter()
        .map(|fs| chart.point_of_form(fs.phi()).expect("positive"))
        .collect()
}

/// A check whose evaluation hit a library error.
pub(crate) fn errored(name: &str, anchor: &'static str, e: &G2Error) -> Check {
    Check::holds(name, anchor, false, e.to_string()).with_note(format!("evaluation failed: {e}"))
}

/// Worst value over fallible evaluations, or the first error as a failed check.
pub(crate) fn worst(
    name: &str,
    anchor: &'static str,
    tol: f64,
    values: impl IntoIterator<Item = g2torus::Result<f64>>,
) -> Check {
    let mut w = 0.0f64;
    for v in values {
        match v {
            Ok(x) => w = w.max(if x.is_nan() { f64::INFINITY } else { x }),
            Err(e) => return errored(name, anchor, &e),
        }
    }
    Check::below(name, anchor, w, tol)
}
