//! Seeded samplers for points and directions. Callers own the RNG.

use rand::Rng;

use crate::algebra::{metric_data, standard_phi, FormType, G2Structure, KForm};
use crate::error::Result;

pub fn random_form(rng: &mut impl Rng, degree: usize) -> KForm<f64> {
    KForm::from_fn(degree, |_| rng.random_range(-1.0..1.0))
}

/// φ₀ plus a uniform perturbation of each coefficient in [−spread, spread],
/// resampled until positive with the orientation of φ₀.
pub fn random_positive_phi(rng: &mut impl Rng, spread: f64) -> KForm<f64> {
    let base = standard_phi::<f64>();
    let want = metric_data(&base).expect("φ₀ is positive").orientation;
    loop {
        let phi = base.axpy(&spread, &random_form(rng, 3));
        if let Ok(d) = metric_data(&phi) {
            if d.orientation == want {
                return phi;
            }
        }
    }
}

/// Random form with components only in `types`, of unit g-norm.
pub fn random_typed_form(
    rng: &mut impl Rng,
    fs: &G2Structure<f64>,
    degree: usize,
    types: &[FormType],
) -> Result<KForm<f64>> {
    let raw = random_form(rng, degree);
    let mut acc = KForm::zero(degree);
    for &t in types {
        acc = &acc + &fs.project(&raw, t)?;
    }
    let n = fs.norm_sq(&acc).sqrt();
    Ok(acc.scale(&(1.0 / n)))
}
