//! `report-point`: moduli and Jacobian quantities at one structure.

use std::path::Path;

use g2torus::algebra::{metric_from_phi, standard_phi};
use g2torus::jacobian::{JacobianLattice, LegendreChart};
use g2torus::moduli::{hessian_g, superpotential, yukawa, yukawa_constants, FlatChart};
use g2torus::sampling::random_positive_phi;
use g2torus::{G2Error, KForm, Rational, Scalar};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::phi_file;
use crate::report::{finite, Check, Report};
use crate::suites::{errored, jacobian};
use crate::{InputError, Source};

const RANDOM_STREAM: u64 = 99;

fn load(
    source: Source,
    path: Option<&Path>,
    cfg: &RunConfig,
) -> Result<(KForm<f64>, Option<KForm<Rational>>), InputError> {
    match source {
        Source::Standard => Ok((standard_phi(), Some(standard_phi()))),
        Source::Random => Ok((random_positive_phi(&mut cfg.rng(RANDOM_STREAM), 0.3), None)),
        Source::File => {
            let path = path.ok_or_else(|| InputError("`report-point file` needs a path".into()))?;
            let exact = phi_file::read(path)?;
            Ok((phi_file::to_f64(&exact), Some(exact)))
        }
    }
}

fn terms(phi: &KForm<f64>) -> Value {
    Value::Object(
        phi.terms()
            .into_iter()
            .map(|(l, c)| (l, finite(c)))
            .collect(),
    )
}

pub fn report_point(
    source: Source,
    path: Option<&Path>,
    cfg: &RunConfig,
) -> Result<Report, InputError> {
    let (phi, exact) = load(source, path, cfg)?;
    let fs = metric_from_phi(&phi).map_err(|e| match e {
        G2Error::NotPositive { .. } | G2Error::NearDegenerate { .. } => InputError(e.to_string()),
        other => InputError(format!("cannot build the structure: {other}")),
    })?;
    let name = match source {
        Source::Standard => "report-point standard",
        Source::File => "report-point file",
        Source::Random => "report-point random",
    };
    let mut report = Report::new(name, cfg.to_map());
    report.data.insert("phi".into(), terms(&phi));
    report.data.insert("det_b".into(), finite(*fs.det_b()));

    let chart = FlatChart::standard();
    let p = chart
        .point_of_form(&phi)
        .map_err(|e| InputError(e.to_string()))?;
    let f = superpotential(&p);
    let fhat = LegendreChart::new(chart.clone()).fhat(&p);
    report.data.insert("f".into(), finite(f));
    report.data.insert("fhat".into(), finite(fhat));
    report.push(Check::measured(
        "superpotential f = 3 vol",
        "superpotential",
        finite(f),
    ));
    report.push(Check::below(
        "Legendre dual f^ = 4/3 f (relative)",
        "legendre-transform",
        (fhat - 4.0 / 3.0 * f).abs() / f,
        cfg.tol_exact,
    ));

    match hessian_g(&chart, &p) {
        Ok(h) => {
            let mut eig: Vec<f64> = h
                .hessian
                .to_nalgebra()
                .symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .collect();
            eig.sort_by(|a, b| a.total_cmp(b));
            report.data.insert(
                "gradient".into(),
                h.gradient.iter().map(|v| finite(*v)).collect(),
            );
            report.data.insert(
                "hessian_eigenvalues".into(),
                eig.iter().map(|v| finite(*v)).collect(),
            );
            report
                .data
                .insert("signature".into(), json!([h.signature.0, h.signature.1]));
            report.push(Check::holds(
                "moduli metric signature (8, 27)",
                "hessian-metric",
                h.signature == (8, 27),
                [h.signature.0, h.signature.1],
            ));
        }
        Err(e) => report.push(errored(
            "moduli metric signature (8, 27)",
            "hessian-metric",
            &e,
        )),
    }

    // 𝒴(φ, ηᵢ, ηⱼ) on the recentred 1⊕27 sector.
    let local = FlatChart::new(fs.clone());
    let sector = FlatChart::irreducible_sector();
    let slice: Result<Vec<Vec<f64>>, G2Error> = sector
        .iter()
        .map(|&i| {
            sector
                .iter()
                .map(|&j| yukawa(&fs, fs.phi(), local.basis_form(i), local.basis_form(j)))
                .collect()
        })
        .collect();
    match slice {
        Ok(s) => {
            report.data.insert("yukawa_slice".into(), json!(s));
        }
        Err(e) => report.push(errored(
            "Yukawa slice on the 1+27 sector",
            "yukawa-coupling",
            &e,
        )),
    }
    let (a, b) = (local.basis_form(sector[1]), local.basis_form(sector[2]));
    match yukawa_constants(&fs, a, b) {
        Ok((c, m)) => report.push(Check::below(
            "Y(phi,phi,phi) / f = 14/27 and Y(phi,.,.) / G = 1/6",
            "yukawa-constants",
            (c - 14.0 / 27.0).abs().max((m - 1.0 / 6.0).abs()),
            cfg.tol_exact,
        )),
        Err(e) => report.push(errored("Yukawa constants", "yukawa-constants", &e)),
    }

    match JacobianLattice::new(&fs) {
        Ok(lat) => {
            report
                .data
                .insert("lattice_covolume".into(), finite(lat.covolume()));
            report.push(Check::measured(
                "fibre lattice covolume",
                "jacobian-lattice",
                finite(lat.covolume()),
            ));
        }
        Err(e) => report.push(errored("fibre lattice covolume", "jacobian-lattice", &e)),
    }
    let mut pk = serde_json::Map::new();
    for (label, anchor, r) in [
        (
            "untilded",
            "pseudo-kaehler-structure",
            jacobian::untilded(&fs),
        ),
        (
            "tilded",
            "tilde-pseudo-kaehler-structure",
            jacobian::tilded(&fs),
        ),
    ] {
        match r {
            Ok((defect, sig)) => {
                pk.insert(
                    label.into(),
                    json!({ "defect": finite(defect), "signature": [sig.0, sig.1] }),
                );
                report.push(Check::below(
                    format!("{label} pseudo-Kaehler triple defect"),
                    anchor,
                    defect,
                    cfg.tol_exact,
                ));
                report.push(Check::holds(
                    format!("{label} metric signature (16, 54)"),
                    anchor,
                    sig == (16, 54, 0),
                    [sig.0, sig.1],
                ));
            }
            Err(e) => report.push(errored(label, anchor, &e)),
        }
    }
    report
        .data
        .insert("pseudo_kaehler".into(), Value::Object(pk));

    if cfg.exact {
        let note = match exact.as_ref().map(metric_from_phi::<Rational>) {
            None => "no exact input (random source)".to_string(),
            Some(Ok(ex)) => {
                let f = Rational::from_i64(3) * ex.total_volume();
                report
                    .data
                    .insert("f_exact".into(), Value::from(f.to_string()));
                format!("exact structure available, f = {f}")
            }
            Some(Err(e)) => e.to_string(),
        };
        report.push(Check::measured(
            "exact arithmetic at this point",
            "norm-of-phi",
            &note,
        ));
    }
    Ok(report)
}
