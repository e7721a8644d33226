//! The universal intermediate Jacobian over the flat-torus moduli space.
//!
//! Tangent vectors are pairs (η, θ) ∈ H³ ⊕ H⁴, or (η, μ) ∈ H³ ⊕ H³ in the
//! tangent-bundle model; the two models match under θ = ⋆μ. Each carries a
//! symplectic form, a complex structure and an indefinite compatible metric.
//! The fibre over φ is H⁴(ℝ)/⋆H³(ℤ).

mod checks;
mod lattice;
mod legendre;
mod structures;

pub use checks::{
    check_alpha, check_alpha_tilde, check_lagrangian_graph, closedness_and_integrability,
    cubic_form_check, ClosednessReport, CubicFormReport, LagrangianGraphReport, PrimitiveReport,
    TildePrimitive,
};
pub use lattice::{JacobianLattice, SNAP_TOL};
pub use legendre::{LegendreChart, LegendreReport};
pub use structures::{
    alpha, alpha_tilde, alpha_tilde_star_form, complex_structure, complex_structure_matrix,
    complex_structure_tilde, metric_j, metric_j_matrix, metric_tilde, metric_tilde_matrix, omega,
    omega_matrix, omega_tilde, omega_tilde_matrix, untilde, JacobianVector, TildeJacobianVector,
};
