//! G₂-structures on the flat 7-torus T⁷ = ℝ⁷/ℤ⁷.
//!
//! Constant positive 3-forms, the moduli geometry of the flat chart, the
//! universal intermediate Jacobian and its pseudo-Kähler structures, and
//! Chern–Simons type functionals of calibrated subtori carrying U(1)
//! connections. Every harmonic form on T⁷ is constant, so integrals reduce to
//! pointwise algebra and each identity can be checked directly.

pub mod algebra;
pub mod cycles;
pub mod error;
pub mod fd;
pub mod jacobian;
pub mod linalg;
pub mod moduli;
pub mod sampling;
pub mod scalar;

pub use algebra::{FormType, G2Structure, KForm, Sym2Tensor};
pub use cycles::{AJClass, AffineSubtorus, CyclePath, CyclePoint, U1Connection};
pub use error::{G2Error, Result};
pub use fd::FdConfig;
pub use jacobian::{JacobianLattice, JacobianVector, TildeJacobianVector};
pub use moduli::{FlatChart, HessianData, ModuliPoint};
pub use scalar::{Rational, Scalar};
