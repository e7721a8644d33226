//! Pointwise exterior algebra and G₂ representation theory on ℝ⁷.
//!
//! Conventions: the inner product on k-forms sums over increasing
//! multi-indices, ⟨e^I, e^J⟩ = det(g⁻¹[I, J]), so |φ|² = 7. The orientation is
//! the one φ induces through (X⌟φ)∧(Y⌟φ)∧φ = −6 g(X,Y) vol.

pub mod basis;
mod form;
pub mod identities;
mod structure;
mod sym2;

pub use form::KForm;
pub use identities::{
    check_contraction_identity, check_defining_identity, check_metric_volume_variation,
    check_star_derivative, check_star_derivative_dual, form_to_sym2, sym2_to_form, IdentityReport,
};
pub use structure::{
    b_matrix, calibrated_orientation, dual_form, gram_matrix, hodge_star, metric_data,
    metric_from_phi, standard_phi, standard_structure, FormType, FormTypeComponents, G2Structure,
    MetricData, NEAR_DEGENERATE_DET,
};
pub use sym2::Sym2Tensor;
