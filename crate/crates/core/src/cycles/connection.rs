use std::f64::consts::PI;

use crate::algebra::KForm;
use crate::error::{G2Error, Result};

use super::ext::ExtForm;
use super::subtorus::AffineSubtorus;

/// Curvature periods within this distance of 2πℤ count as integral.
pub const INTEGRALITY_TOL: f64 = 1e-9;

/// A U(1) connection on a subtorus with constant curvature F_A = i·f.
///
/// `holonomy` holds hₐ mod 1, the flat part a = 2π hₐ dsᵃ; `curvature` is
/// the real 2-form f in subtorus coordinates. For a genuine line bundle f has
/// periods in 2πℤ, i.e. (i/2π)F is integral. Connections built with
/// [`U1Connection::transverse`] skip that check and exist only to probe the
/// formulas off the configuration space.
#[derive(Clone, Debug, PartialEq)]
pub struct U1Connection {
    holonomy: Vec<f64>,
    curvature: ExtForm,
    integral: bool,
}

/// Largest distance of a curvature coefficient from 2πℤ.
fn integrality_defect(f: &ExtForm) -> f64 {
    f.coeffs()
        .iter()
        .map(|c| {
            let n = c / (2.0 * PI);
            (n - n.round()).abs()
        })
        .fold(0.0, f64::max)
}

impl U1Connection {
    pub fn flat(holonomy: Vec<f64>) -> Self {
        let dim = holonomy.len();
        U1Connection {
            holonomy,
            curvature: ExtForm::zero(dim),
            integral: true,
        }
    }

    pub fn new(holonomy: Vec<f64>, curvature: ExtForm) -> Result<Self> {
        let c = Self::transverse(holonomy, curvature)?;
        let deviation = integrality_defect(&c.curvature);
        if deviation > INTEGRALITY_TOL {
            return Err(G2Error::NonIntegralCurvature { deviation });
        }
        Ok(U1Connection {
            integral: true,
            ..c
        })
    }

    /// f = 2π·n for integer coefficients n_ab, a < b.
    pub fn with_chern_form(holonomy: Vec<f64>, n: &[(usize, usize, i64)]) -> Result<Self> {
        let dim = holonomy.len();
        let mut f = ExtForm::zero(dim);
        for &(a, b, c) in n {
            f = f.axpy(2.0 * PI * c as f64, &ExtForm::basis(dim, &[a, b]));
        }
        Self::new(holonomy, f)
    }

    /// A connection with arbitrary real curvature coefficients.
    pub fn transverse(holonomy: Vec<f64>, curvature: ExtForm) -> Result<Self> {
        let dim = holonomy.len();
        if curvature.dim() != dim {
            return Err(G2Error::DimensionMismatch {
                expected: dim,
                got: curvature.dim(),
            });
        }
        if curvature.part(2) != curvature {
            return Err(G2Error::DegreeMismatch { left: 2, right: 0 });
        }
        let integral = integrality_defect(&curvature) <= INTEGRALITY_TOL;
        Ok(U1Connection {
            holonomy,
            curvature,
            integral,
        })
    }

    /// Restriction of an ambient curvature 2-form to the subtorus.
    pub fn from_ambient(
        torus: &AffineSubtorus,
        holonomy: Vec<f64>,
        f: &KForm<f64>,
    ) -> Result<Self> {
        if holonomy.len() != torus.dim() {
            return Err(G2Error::DimensionMismatch {
                expected: torus.dim(),
                got: holonomy.len(),
            });
        }
        Self::transverse(holonomy, torus.restrict(f))
    }

    pub fn dim(&self) -> usize {
        self.holonomy.len()
    }

    pub fn holonomy(&self) -> &[f64] {
        &self.holonomy
    }

    pub fn curvature(&self) -> &ExtForm {
        &self.curvature
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn is_flat(&self) -> bool {
        self.curvature.max_abs() == 0.0
    }

    pub fn with_holonomy(&self, holonomy: Vec<f64>) -> Self {
        assert_eq!(holonomy.len(), self.dim());
        U1Connection {
            holonomy,
            ..self.clone()
        }
    }

    pub fn shift_holonomy(&self, delta: &[f64]) -> Self {
        self.with_holonomy(
            self.holonomy
                .iter()
                .zip(delta)
                .map(|(h, d)| h + d)
                .collect(),
        )
    }

    /// Same holonomy, curvature replaced.
    pub fn with_curvature(&self, curvature: ExtForm) -> Result<Self> {
        Self::transverse(self.holonomy.clone(), curvature)
    }

    /// Holonomy reduced to [0,1).
    pub fn reduced_holonomy(&self) -> Vec<f64> {
        self.holonomy.iter().map(|x| x - x.floor()).collect()
    }
}
