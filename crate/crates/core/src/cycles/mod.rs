//! Calibrated subtori carrying U(1) connections.
//!
//! Configurations are affine subtori N of dimension k ∈ {3, 4, 7} spanned by
//! primitive integer vectors, with a constant-curvature connection (holonomy
//! plus a constant curvature 2-form in subtorus coordinates). The functional
//! Φ_k integrates the top-degree part of exp(−f̄/2π + φ + ψ) over the
//! cylinder swept by a path; its critical points are associative flat tori,
//! coassociative tori with self-dual curvature and deformed Donaldson–Thomas
//! connections. Abel–Jacobi classes pair the same swept integrals against
//! constant forms.
//!
//! Curvature conventions: F = i·f with f real, and periods of f lie in 2πℤ.

pub mod abel_jacobi;
pub mod calibration;
pub mod connection;
pub mod ddt;
pub mod ext;
pub mod functional;
pub mod isotropy;
pub mod path;
pub mod subtorus;
pub mod witnesses;

pub use abel_jacobi::{abel_jacobi, AJClass, AjKind};
pub use calibration::{
    anti_self_dual_part, assoc_chi_criterion, is_associative, is_coassociative, AssociativeReport,
    CoassociativeReport, CALIBRATION_TOL,
};
pub use connection::{U1Connection, INTEGRALITY_TOL};
pub use ddt::{ddt_newton, ddt_residual, seven_component, DtMode, NewtonOptions, NewtonTrace};
pub use ext::ExtForm;
pub use functional::{
    ambient_curvature, critical_characterization, curvature_cubic_identity, d_phi, first_variation,
    phi_functional, psi_functional, whole_torus_point, Characterization, DPhiReport, Direction,
    PsiReport, CRITICAL_TOL, PSI_EQUALITY_TOL, WITNESS_FLOOR,
};
pub use isotropy::{all_families, isotropy_check, IsotropyFamily, IsotropyReport};
pub use path::{CyclePath, CyclePoint, SegmentKind, Variation};
pub use subtorus::AffineSubtorus;
pub use witnesses::{classify, witness_library, Witness, WitnessOutcome};
