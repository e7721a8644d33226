//! Moduli geometry of constant torsion-free G₂-structures on T⁷.
//!
//! Every constant positive 3-form is closed and coclosed, so the moduli space
//! is the open cone of positive forms in Λ³ ≅ H³(T⁷) and linear coordinates
//! on Λ³ are flat coordinates. The superpotential is f = 3·vol, its Hessian
//! is the moduli metric 𝒢 and its third derivative is twice the Yukawa
//! coupling.
//!
//! T⁷ has b₁ = 7, so the Λ³₇ directions are harmonic. Statements that need
//! them absent are checked on the 1 ⊕ 27 sector; the 7-block is measured.

mod chart;
mod checks;
mod potential;
mod yukawa;

pub use chart::{FlatChart, ModuliPoint, CHART_DIM};
pub use checks::{
    check_third_derivative, log_potential_checks, seven_discrepancy, LogPotentialReport,
    SevenDiscrepancy, ThirdDerivativeReport,
};
pub use potential::{
    gradient_f, gradient_fd, hessian_fd, hessian_fd_on, hessian_g, hessian_projection,
    hessian_routes, hessian_star_pairing, matrix_discrepancy, superpotential,
    superpotential_of_phi, superpotential_wedge_form, HessianData, HessianRoutes, DEGENERATE_TOL,
};
pub use yukawa::{
    check_trace_cubic_identity, yukawa, yukawa_constants, yukawa_sym, TraceCubicReport,
};
