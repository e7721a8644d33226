//! 3-form files: `{"coeffs": {"123": 1.0, "145": "1/2", ...}}`.
//!
//! Keys are 1-based index labels, any order; a key like "213" is sorted with
//! its permutation sign. Missing keys are zero. Values are numbers, or strings
//! holding a rational "p/q" or decimal literal.

use std::path::Path;

use g2torus::algebra::basis;
use g2torus::scalar::parse_rational;
use g2torus::{KForm, Rational, Scalar};
use serde::Deserialize;
use serde_json::Value;

use crate::InputError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiFile {
    coeffs: std::collections::BTreeMap<String, Value>,
}

pub fn parse_exact(text: &str) -> Result<KForm<Rational>, InputError> {
    let file: PhiFile = serde_json::from_str(text)
        .map_err(|e| InputError(format!("malformed 3-form file: {e}")))?;
    let mut phi = KForm::<Rational>::zero(3);
    for (key, value) in &file.coeffs {
        let (mask, sign) = basis::parse_label(key)
            .filter(|(m, _)| m.count_ones() == 3)
            .ok_or_else(|| {
                InputError(format!(
                    "bad index label {key:?}: need three distinct digits 1-7"
                ))
            })?;
        let c = match value {
            Value::Number(n) => n.as_f64().and_then(rational_of_f64),
            Value::String(s) => parse_rational(s),
            _ => None,
        }
        .ok_or_else(|| InputError(format!("bad coefficient for {key:?}: {value}")))?;
        let signed = if sign < 0 { -c } else { c };
        let total = phi.coeff(mask).clone() + signed;
        phi.set(mask, total);
    }
    Ok(phi)
}

/// The decimal a JSON number was written as, read exactly.
fn rational_of_f64(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    parse_rational(&format!("{x}"))
}

pub fn read(path: &Path) -> Result<KForm<Rational>, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_exact(&text)
}

pub fn to_f64(phi: &KForm<Rational>) -> KForm<f64> {
    phi.map(|c| c.to_f64())
}
