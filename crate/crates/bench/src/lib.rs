//! Fixed inputs shared by the benchmarks.

use g2torus::algebra::{metric_from_phi, standard_phi};
use g2torus::{G2Structure, KForm};

/// φ₀ plus a small deterministic perturbation, so nothing is accidentally sparse.
pub fn perturbed_phi() -> KForm<f64> {
    let bump = KForm::from_fn(3, |m| 0.05 * (((m as u32 * 37) % 11) as f64 - 5.0) / 5.0);
    standard_phi::<f64>().axpy(&1.0, &bump)
}

pub fn perturbed_structure() -> G2Structure<f64> {
    metric_from_phi(&perturbed_phi()).expect("small perturbation of phi0 stays positive")
}
