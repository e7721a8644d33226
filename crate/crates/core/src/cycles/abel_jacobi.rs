use crate::algebra::{basis, basis::DIM, G2Structure, KForm};
use crate::error::{G2Error, Result};
use crate::jacobian::JacobianLattice;

use super::path::{swept_integrals, CyclePath};

/// The three Abel–Jacobi maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AjKind {
    /// Associative cycles (k = 3), paired against H⁴; class in H³.
    Nu,
    /// Coassociative cycles (k = 4), paired against H³; class in H⁴.
    Mu,
    /// Connections on the whole torus (k = 7), paired against H⁴; class in H³.
    Chi,
}

impl AjKind {
    pub fn cycle_dim(self) -> usize {
        match self {
            AjKind::Nu => 3,
            AjKind::Mu => 4,
            AjKind::Chi => 7,
        }
    }

    /// Degree l of the test forms α.
    pub fn test_degree(self) -> usize {
        match self {
            AjKind::Nu | AjKind::Chi => 4,
            AjKind::Mu => 3,
        }
    }

    pub fn class_degree(self) -> usize {
        DIM - self.test_degree()
    }
}

/// A representative β of an Abel–Jacobi class, defined modulo the integral
/// lattice H^{7−l}(ℤ): integer coefficients in the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AJClass {
    pub kind: AjKind,
    pub value: KForm<f64>,
}

impl AJClass {
    /// Distance from the integral lattice: max |c − round c|.
    pub fn lattice_deviation(&self) -> f64 {
        self.value
            .coeffs()
            .iter()
            .map(|c| (c - c.round()).abs())
            .fold(0.0, f64::max)
    }

    pub fn difference(&self, other: &AJClass) -> AJClass {
        AJClass {
            kind: self.kind,
            value: &self.value - &other.value,
        }
    }

    /// Representative with coefficients in [0, 1).
    pub fn reduced(&self) -> AJClass {
        AJClass {
            kind: self.kind,
            value: self.value.map(|c| c - c.floor()),
        }
    }

    /// For degree-3 classes: ⋆β in H⁴, reduced in the fibre H⁴/⋆H³(ℤ).
    pub fn to_jacobian(&self, fs: &G2Structure<f64>) -> Result<KForm<f64>> {
        if self.value.degree() != 3 {
            return Err(G2Error::UnsupportedDegree(self.value.degree()));
        }
        Ok(JacobianLattice::new(fs)?.reduce(&fs.star_op(&self.value)?))
    }
}

/// Solve ∫_M β∧α = ∫_{N̄} exp(…)∧π*α over the basis α = e^J of H^l.
///
/// With ∫_M ω = s·(top coefficient), the pairing is a signed permutation:
/// β_{Jᶜ} = s·ε(Jᶜ, J)·RHS_J.
pub fn abel_jacobi(kind: AjKind, path: &CyclePath, fs: &G2Structure<f64>) -> Result<AJClass> {
    if path.dim() != kind.cycle_dim() {
        return Err(G2Error::DimensionMismatch {
            expected: kind.cycle_dim(),
            got: path.dim(),
        });
    }
    path.check_integral()?;
    let l = kind.test_degree();
    let tests: Vec<KForm<f64>> = basis::masks(l)
        .iter()
        .map(|&m| KForm::from_fn(l, |x| (x == m) as u8 as f64))
        .collect();
    let refs: Vec<Option<&KForm<f64>>> = tests.iter().map(Some).collect();
    let rhs = swept_integrals(path, fs, &refs);
    let s = fs.orientation() as f64;
    let mut value = KForm::zero(DIM - l);
    for (&mj, r) in basis::masks(l).iter().zip(&rhs) {
        let mc = basis::TOP_MASK & !mj;
        value.set(mc, s * basis::wedge_sign(mc, mj) as f64 * r);
    }
    Ok(AJClass { kind, value })
}
