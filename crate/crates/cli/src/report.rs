use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1.0";

/// Every anchor a check may cite. `verify all` must use each exactly as
/// listed; the cli tests fail on drift in either direction.
pub const ANCHORS: &[&str] = &[
    "contraction-identity",
    "norm-of-phi",
    "type-decomposition",
    "star-operator",
    "star-derivative",
    "metric-volume-variation",
    "trace-formula",
    "superpotential",
    "hessian-metric",
    "yukawa-coupling",
    "yukawa-constants",
    "log-potential",
    "lagrangian-graph",
    "jacobian-lattice",
    "pseudo-kaehler-structure",
    "tilde-pseudo-kaehler-structure",
    "symplectic-primitives",
    "legendre-transform",
    "cubic-form",
    "phi-functional",
    "calibration-bound",
    "critical-points-associative",
    "critical-points-coassociative",
    "critical-points-deformed-dt",
    "deformed-dt-newton",
    "abel-jacobi-map",
    "isotropy-nu",
    "isotropy-mu",
    "isotropy-chi",
    "size-inequality",
    "finite-difference-step",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Measured,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub value: Value,
    pub tolerance: Option<f64>,
    pub anchor: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff `value < tolerance`.
    pub fn below(
        name: impl Into<String>,
        anchor: &'static str,
        value: f64,
        tolerance: f64,
    ) -> Self {
        let status = if value < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            name: name.into(),
            status,
            value: finite(value),
            tolerance: Some(tolerance),
            anchor,
            note: None,
        }
    }

    pub fn holds(
        name: impl Into<String>,
        anchor: &'static str,
        ok: bool,
        value: impl Serialize,
    ) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            tolerance: None,
            anchor,
            note: None,
        }
    }

    pub fn measured(name: impl Into<String>, anchor: &'static str, value: impl Serialize) -> Self {
        Check {
            name: name.into(),
            status: Status::Measured,
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            tolerance: None,
            anchor,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// JSON has no NaN or infinity; those become strings.
pub fn finite(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else {
        Value::from(v.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub phi0: &'static str,
    pub orientation_sign_at_phi0: i32,
    pub form_inner_product: &'static str,
    pub curvature: &'static str,
}

impl Conventions {
    pub fn current() -> Self {
        Conventions {
            phi0: "e123 + e145 + e167 + e246 - e257 - e347 - e356",
            orientation_sign_at_phi0: g2torus::algebra::calibrated_orientation(),
            form_inner_product:
                "<e^I, e^J> = det(g^-1[I,J]) over increasing multi-indices, |phi|^2 = 7",
            curvature: "F = i f with f real, periods of f in 2 pi Z",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub suite: String,
    pub status: Status,
    pub config: BTreeMap<String, Value>,
    pub conventions: Conventions,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    /// Wall-clock only; excluded from determinism comparisons.
    pub timing: Timing,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: BTreeMap<String, Value>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            status: Status::Pass,
            config,
            conventions: Conventions::current(),
            checks: Vec::new(),
            data: BTreeMap::new(),
            timing: Timing { elapsed_ms: 0 },
        }
    }

    pub fn push(&mut self, c: Check) {
        debug_assert!(ANCHORS.contains(&c.anchor), "unknown anchor {}", c.anchor);
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn finish(&mut self, elapsed_ms: u128) {
        self.status = if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        self.timing.elapsed_ms = elapsed_ms;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass    ",
                Status::Fail => "FAIL    ",
                Status::Measured => "measured",
            };
            let value = match &c.value {
                Value::Number(n) => format!("{:.3e}", n.as_f64().unwrap_or(f64::NAN)),
                Value::Array(a) if a.len() > 6 => format!("[{} values]", a.len()),
                Value::Object(_) => "{..}".to_string(),
                v => v.to_string(),
            };
            let tol = c
                .tolerance
                .map(|t| format!(" (tol {t:.0e})"))
                .unwrap_or_default();
            out.push_str(&format!("{tag}  {:<58} {value}{tol}\n", c.name));
            if let Some(n) = &c.note {
                out.push_str(&format!("          {n}\n"));
            }
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }
}
