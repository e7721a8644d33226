use crate::algebra::basis;
use crate::algebra::{G2Structure, KForm};
use crate::error::Result;
use crate::linalg::Mat;

/// Fractional parts closer than this to an integer snap to it in `reduce`.
pub const SNAP_TOL: f64 = 1e-9;

/// The lattice ⋆H³(ℤ) ⊂ H⁴(ℝ), so that the intermediate Jacobian is
/// H⁴(ℝ)/⋆H³(ℤ).
#[derive(Clone, Debug)]
pub struct JacobianLattice {
    generators: Vec<KForm<f64>>,
    matrix: Mat<f64>,
    inverse: Mat<f64>,
    covolume: f64,
}

impl JacobianLattice {
    pub fn new(fs: &G2Structure<f64>) -> Result<Self> {
        let generators: Vec<KForm<f64>> = basis::masks(3)
            .iter()
            .map(|&m| fs.star_op(&KForm::from_fn(3, |x| (x == m) as u8 as f64)))
            .collect::<Result<_>>()?;
        let matrix = Mat::from_columns(
            &generators
                .iter()
                .map(|g| g.coeffs().to_vec())
                .collect::<Vec<_>>(),
        );
        let covolume = matrix.det().abs();
        let inverse = matrix
            .inverse()
            .ok_or(crate::error::G2Error::SingularLinearization)?;
        Ok(JacobianLattice {
            generators,
            matrix,
            inverse,
            covolume,
        })
    }

    pub fn generators(&self) -> &[KForm<f64>] {
        &self.generators
    }

    pub fn covolume(&self) -> f64 {
        self.covolume
    }

    /// Coordinates of θ in the generator basis.
    pub fn coordinates(&self, theta: &KForm<f64>) -> Vec<f64> {
        self.inverse.mul_vec(theta.coeffs())
    }

    /// Distance of θ from the lattice, in generator coordinates.
    pub fn deviation(&self, theta: &KForm<f64>) -> f64 {
        self.coordinates(theta)
            .iter()
            .map(|c| (c - c.round()).abs())
            .fold(0.0, f64::max)
    }

    /// The representative of θ with generator coordinates in [0, 1).
    pub fn reduce(&self, theta: &KForm<f64>) -> KForm<f64> {
        let frac: Vec<f64> = self
            .coordinates(theta)
            .into_iter()
            .map(|c| {
                let r = c - c.floor();
                if r < SNAP_TOL || 1.0 - r < SNAP_TOL {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        KForm::new(4, self.matrix.mul_vec(&frac)).expect("degree 4")
    }
}
