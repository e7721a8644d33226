use std::ops::Range;

use crate::algebra::basis::{self, DIM};
use crate::algebra::{metric_from_phi, FormType, G2Structure, KForm};
use crate::error::Result;
use crate::linalg::Mat;

pub const CHART_DIM: usize = 35;

/// Linear coordinates on Λ³ = H³(T⁷): φ = Σ xⁱ ηᵢ.
///
/// η₀ is the center's φ, η₁..η₇ a g-orthonormal basis of Λ³₇ and η₈..η₃₄ a
/// g-orthonormal basis of Λ³₂₇, all taken at the center.
#[derive(Clone, Debug)]
pub struct FlatChart {
    center: G2Structure<f64>,
    basis: Vec<KForm<f64>>,
    to_coords: Mat<f64>,
}

/// A point of the moduli space in chart coordinates.
#[derive(Clone, Debug)]
pub struct ModuliPoint {
    coords: Vec<f64>,
    structure: G2Structure<f64>,
}

impl ModuliPoint {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn structure(&self) -> &G2Structure<f64> {
        &self.structure
    }

    pub fn phi(&self) -> &KForm<f64> {
        self.structure.phi()
    }
}

/// Gram–Schmidt w.r.t. `gram`, dropping vectors that are dependent on the
/// ones already accepted.
fn orthonormalize(candidates: &[KForm<f64>], gram: &Mat<f64>, want: usize) -> Vec<KForm<f64>> {
    let ip = |a: &KForm<f64>, b: &KForm<f64>| -> f64 {
        a.coeffs()
            .iter()
            .zip(gram.mul_vec(b.coeffs()))
            .map(|(x, y)| x * y)
            .sum()
    };
    let mut out: Vec<KForm<f64>> = Vec::with_capacity(want);
    for c in candidates {
        let mut v = c.clone();
        // two passes for stability
        for _ in 0..2 {
            for u in &out {
                let p = ip(&v, u);
                v = v.axpy(&-p, u);
            }
        }
        let n = ip(&v, &v).sqrt();
        if n > 1e-8 * ip(c, c).sqrt().max(1e-300) {
            out.push(v.scale(&(1.0 / n)));
        }
        if out.len() == want {
            break;
        }
    }
    out
}

impl FlatChart {
    pub fn new(center: G2Structure<f64>) -> Self {
        let gram = center.gram(3).clone();
        let x_psi: Vec<KForm<f64>> = (0..DIM)
            .map(|i| center.psi().interior_basis(i).unwrap())
            .collect();
        let seven = orthonormalize(&x_psi, &gram, 7);
        let p27: Vec<KForm<f64>> = basis::masks(3)
            .iter()
            .map(|&m| {
                let mut e = KForm::zero(3);
                e.set(m, 1.0);
                center.project(&e, FormType::TwentySeven).unwrap()
            })
            .collect();
        let twenty_seven = orthonormalize(&p27, &gram, 27);
        assert_eq!(
            (seven.len(), twenty_seven.len()),
            (7, 27),
            "type decomposition has dimensions 7 and 27"
        );

        let mut basis = Vec::with_capacity(CHART_DIM);
        basis.push(center.phi().clone());
        basis.extend(seven);
        basis.extend(twenty_seven);
        let cols: Vec<Vec<f64>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let to_coords = Mat::from_columns(&cols)
            .inverse()
            .expect("chart basis spans Λ³");
        FlatChart {
            center,
            basis,
            to_coords,
        }
    }

    pub fn standard() -> Self {
        Self::new(crate::algebra::standard_structure())
    }

    pub fn center(&self) -> &G2Structure<f64> {
        &self.center
    }

    pub fn basis(&self) -> &[KForm<f64>] {
        &self.basis
    }

    pub fn basis_form(&self, i: usize) -> &KForm<f64> {
        &self.basis[i]
    }

    /// Coordinate ranges of the three sectors.
    pub fn sector_range(t: FormType) -> Range<usize> {
        match t {
            FormType::One => 0..1,
            FormType::Seven => 1..8,
            FormType::TwentySeven => 8..35,
            FormType::Fourteen => 0..0,
        }
    }

    pub fn sector_of(i: usize) -> FormType {
        match i {
            0 => FormType::One,
            1..=7 => FormType::Seven,
            _ => FormType::TwentySeven,
        }
    }

    /// Indices of the 1 ⊕ 27 sector.
    pub fn irreducible_sector() -> Vec<usize> {
        std::iter::once(0).chain(8..35).collect()
    }

    pub fn center_coords() -> Vec<f64> {
        let mut x = vec![0.0; CHART_DIM];
        x[0] = 1.0;
        x
    }

    pub fn form_at(&self, coords: &[f64]) -> KForm<f64> {
        assert_eq!(coords.len(), CHART_DIM);
        let mut acc = KForm::zero(3);
        for (x, b) in coords.iter().zip(&self.basis) {
            if *x != 0.0 {
                acc = acc.axpy(x, b);
            }
        }
        acc
    }

    pub fn coords_of(&self, form: &KForm<f64>) -> Vec<f64> {
        self.to_coords.mul_vec(form.coeffs())
    }

    pub fn point(&self, coords: Vec<f64>) -> Result<ModuliPoint> {
        let structure = metric_from_phi(&self.form_at(&coords))?;
        Ok(ModuliPoint { coords, structure })
    }

    pub fn point_of_form(&self, phi: &KForm<f64>) -> Result<ModuliPoint> {
        self.point(self.coords_of(phi))
    }

    pub fn center_point(&self) -> ModuliPoint {
        ModuliPoint {
            coords: Self::center_coords(),
            structure: self.center.clone(),
        }
    }

    /// A chart with the same conventions centred at `p`.
    pub fn recentered(&self, p: &ModuliPoint) -> FlatChart {
        FlatChart::new(p.structure.clone())
    }
}
