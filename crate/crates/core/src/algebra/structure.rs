use std::sync::LazyLock;

use super::basis::{self, DIM, TOP_MASK};
use super::form::KForm;
use super::sym2::Sym2Tensor;
use crate::error::{G2Error, Result};
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// |det B| below this is reported as near-degenerate.
pub const NEAR_DEGENERATE_DET: f64 = 1e-12;

/// φ₀ = e¹²³ + e¹⁴⁵ + e¹⁶⁷ + e²⁴⁶ − e²⁵⁷ − e³⁴⁷ − e³⁵⁶.
pub fn standard_phi<S: Scalar>() -> KForm<S> {
    const TERMS: [([usize; 3], i64); 7] = [
        ([0, 1, 2], 1),
        ([0, 3, 4], 1),
        ([0, 5, 6], 1),
        ([1, 3, 5], 1),
        ([1, 4, 6], -1),
        ([2, 3, 6], -1),
        ([2, 4, 5], -1),
    ];
    let mut phi = KForm::zero(3);
    for (idx, c) in TERMS {
        phi.set(basis::mask_of(&idx), S::from_i64(c));
    }
    phi
}

/// Orientation sign s for φ₀: its induced volume form is s·e¹···⁷.
///
/// Computed once from the wedge identity rather than hard-coded; for the φ₀
/// above, B = +6·I against e¹···⁷, so s = −1.
pub static CALIBRATED_ORIENTATION: LazyLock<i32> = LazyLock::new(|| {
    metric_data(&standard_phi::<f64>())
        .map(|d| d.orientation)
        .unwrap_or(0)
});

pub fn calibrated_orientation() -> i32 {
    *CALIBRATED_ORIENTATION
}

/// Signed index triples (a, b, c) into the degree 2, 2, 3 bases with
/// e^a ∧ e^b ∧ e^c = ±e¹···⁷.
static TOP_TRIPLES: LazyLock<Vec<(usize, usize, usize, bool)>> = LazyLock::new(|| {
    let mut out = Vec::with_capacity(210);
    for (a, &ma) in basis::masks(2).iter().enumerate() {
        for (b, &mb) in basis::masks(2).iter().enumerate() {
            if ma & mb != 0 {
                continue;
            }
            let mc = TOP_MASK & !(ma | mb);
            let sign = basis::wedge_sign(ma, mb) * basis::wedge_sign(ma | mb, mc);
            out.push((a, b, basis::position(mc), sign > 0));
        }
    }
    out
});

/// B_ij defined by (e_i⌟φ) ∧ (e_j⌟φ) ∧ φ = B_ij e¹···⁷.
///
/// With W the 7×21 matrix of the e_i⌟φ and K_ab the e¹···⁷ coefficient of
/// e^a ∧ e^b ∧ φ on 2-forms, B = W K Wᵀ.
pub fn b_matrix<S: Scalar>(phi: &KForm<S>) -> Mat<S> {
    let pc = phi.coeffs();
    let mut k = Mat::zeros(21, 21);
    for &(x, y, z, plus) in TOP_TRIPLES.iter() {
        if !pc[z].is_zero() {
            k[(x, y)] = if plus { pc[z].clone() } else { -pc[z].clone() };
        }
    }
    let rows: Vec<Vec<S>> = (0..DIM)
        .map(|i| phi.interior_basis(i).expect("degree 3").into_coeffs())
        .collect();
    let w = Mat::from_columns(&rows).transpose();
    let b = w.mul(&k).mul(&w.transpose());
    Mat::from_fn(DIM, DIM, |i, j| {
        if i <= j {
            b[(i, j)].clone()
        } else {
            b[(j, i)].clone()
        }
    })
}

/// The metric part of [`metric_from_phi`] without the cached operators.
#[derive(Clone, Debug)]
pub struct MetricData<S> {
    pub b: Mat<S>,
    pub det_b: S,
    /// s with vol = s·λ·e¹···⁷.
    pub orientation: i32,
    /// λ = √det g, the total volume of the unit-covolume torus.
    pub lambda: S,
    pub metric: Sym2Tensor<S>,
    pub inverse_metric: Sym2Tensor<S>,
}

/// Determinant-root reconstruction of (g, vol) from a 3-form.
///
/// The orientation is the one φ induces: s = −sign(det B), so that −s·B is
/// positive definite. With λ = (|det B|/6⁷)^{1/9}, g = −s·B/(6λ) and
/// vol = s·λ·e¹···⁷ one gets det g = λ², and the identity
/// (X⌟φ)∧(Y⌟φ)∧φ = −6 g(X,Y) vol holds.
pub fn metric_data<S: Scalar>(phi: &KForm<S>) -> Result<MetricData<S>> {
    assert_eq!(phi.degree(), 3, "metric_data needs a 3-form");
    let b = b_matrix(phi);
    let det_b = b.det();
    let det_f = det_b.to_f64();
    if det_b.is_zero() {
        return Err(G2Error::NotPositive { det_b: det_f });
    }
    if det_f.abs() < NEAR_DEGENERATE_DET {
        return Err(G2Error::NearDegenerate { det_b: det_f });
    }
    let orientation = -det_b.signum_i32();
    let six7 = S::from_i64(6i64.pow(7));
    let lambda = (det_b.abs() / six7)
        .root(9)
        .ok_or(G2Error::IrrationalRoot)?;
    let factor = S::from_i64(-orientation as i64) / (S::from_i64(6) * lambda.clone());
    let g = b.scale(&factor);
    if !g.is_positive_definite() {
        return Err(G2Error::NotPositive { det_b: det_f });
    }
    let ginv = g.inverse().ok_or(G2Error::NotPositive { det_b: det_f })?;
    Ok(MetricData {
        b,
        det_b,
        orientation,
        lambda,
        metric: Sym2Tensor::symmetrize(&g),
        inverse_metric: Sym2Tensor::symmetrize(&ginv),
    })
}

/// A positive 3-form together with everything it induces.
#[derive(Clone, Debug)]
pub struct G2Structure<S = f64> {
    phi: KForm<S>,
    data: MetricData<S>,
    vol: KForm<S>,
    psi: KForm<S>,
    gram: Vec<Mat<S>>,
    hodge: Vec<Mat<S>>,
    proj3: [Mat<S>; 3],
    proj4: [Mat<S>; 3],
    proj2: [Mat<S>; 2],
    star3: Mat<S>,
    star4: Mat<S>,
}

/// Irreducible type of a component in Λ², Λ³ or Λ⁴.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormType {
    One,
    Seven,
    Fourteen,
    TwentySeven,
}

/// Type decomposition of a 2-, 3- or 4-form.
#[derive(Clone, Debug, PartialEq)]
pub enum FormTypeComponents<S = f64> {
    Two {
        p7: KForm<S>,
        p14: KForm<S>,
    },
    ThreeOrFour {
        p1: KForm<S>,
        p7: KForm<S>,
        p27: KForm<S>,
    },
}

impl<S: Scalar> FormTypeComponents<S> {
    pub fn parts(&self) -> Vec<(FormType, &KForm<S>)> {
        match self {
            FormTypeComponents::Two { p7, p14 } => {
                vec![(FormType::Seven, p7), (FormType::Fourteen, p14)]
            }
            FormTypeComponents::ThreeOrFour { p1, p7, p27 } => {
                vec![
                    (FormType::One, p1),
                    (FormType::Seven, p7),
                    (FormType::TwentySeven, p27),
                ]
            }
        }
    }

    pub fn sum(&self) -> KForm<S> {
        let parts = self.parts();
        let mut acc = parts[0].1.clone();
        for (_, p) in &parts[1..] {
            acc = &acc + p;
        }
        acc
    }
}

/// Gram matrix of the induced inner product on k-forms:
/// ⟨e^I, e^J⟩ = det(g⁻¹[I, J]). This is the convention giving |φ|² = 7.
pub fn gram_matrix<S: Scalar>(ginv: &Sym2Tensor<S>, k: usize) -> Mat<S> {
    let masks = basis::masks(k);
    let idx: Vec<Vec<usize>> = masks.iter().map(|&m| basis::indices(m).collect()).collect();
    let n = masks.len();
    let mut out = Mat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = ginv.as_mat().minor(&idx[a], &idx[b]).det();
            out[(b, a)] = v.clone();
            out[(a, b)] = v;
        }
    }
    out
}

/// Matrix of ∗ from k-forms to (7−k)-forms, for vol = v·e¹···⁷.
fn hodge_matrix<S: Scalar>(gram: &Mat<S>, k: usize, vol_coeff: &S) -> Mat<S> {
    let masks = basis::masks(k);
    let mut out = Mat::zeros(basis::binomial(DIM, DIM - k), masks.len());
    for (a, &m) in masks.iter().enumerate() {
        let comp = TOP_MASK & !m;
        let sign = basis::wedge_sign(m, comp);
        let row = basis::position(comp);
        for b in 0..masks.len() {
            let v = gram[(a, b)].clone() * vol_coeff.clone();
            out[(row, b)] = if sign > 0 { v } else { -v };
        }
    }
    out
}

/// Hodge star of `a` for a metric and a volume form of that metric.
///
/// Fails if `g` is not positive definite; `vol` fixes the orientation.
pub fn hodge_star<S: Scalar>(g: &Sym2Tensor<S>, vol: &KForm<S>, a: &KForm<S>) -> Result<KForm<S>> {
    if !g.as_mat().is_positive_definite() {
        return Err(G2Error::NotPositiveDefinite);
    }
    let ginv = Sym2Tensor::symmetrize(&g.as_mat().inverse().ok_or(G2Error::NotPositiveDefinite)?);
    let k = a.degree();
    let h = hodge_matrix(&gram_matrix(&ginv, k), k, &vol.top());
    Ok(KForm::new(DIM - k, h.mul_vec(a.coeffs())).expect("complementary degree"))
}

/// ∗φ alone, without building the projectors of a full structure.
///
/// Raises all three indices of φ with g⁻¹ instead of forming the Gram matrix
/// on Λ³, then places each raised component on the complementary 4-index.
pub fn dual_form<S: Scalar>(phi: &KForm<S>) -> Result<KForm<S>> {
    let data = metric_data(phi)?;
    let vol_coeff = if data.orientation > 0 {
        data.lambda.clone()
    } else {
        -data.lambda.clone()
    };
    let ginv = data.inverse_metric.as_mat();
    let at = |i: usize, j: usize, k: usize| (i * DIM + j) * DIM + k;
    let mut t = vec![S::zero(); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                t[at(i, j, k)] = phi.component(&[i, j, k]);
            }
        }
    }
    for mode in 0..3 {
        let mut out = vec![S::zero(); DIM * DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let v = &t[at(i, j, k)];
                    if v.is_zero() {
                        continue;
                    }
                    for n in 0..DIM {
                        let (from, target) = match mode {
                            0 => (i, at(n, j, k)),
                            1 => (j, at(i, n, k)),
                            _ => (k, at(i, j, n)),
                        };
                        out[target] = out[target].clone() + ginv[(n, from)].clone() * v.clone();
                    }
                }
            }
        }
        t = out;
    }
    let mut psi = KForm::zero(4);
    for &m in basis::masks(3) {
        let idx: Vec<usize> = basis::indices(m).collect();
        let comp = TOP_MASK & !m;
        let v = t[at(idx[0], idx[1], idx[2])].clone() * vol_coeff.clone();
        psi.set(
            comp,
            if basis::wedge_sign(m, comp) > 0 {
                v
            } else {
                -v
            },
        );
    }
    Ok(psi)
}

/// Orthogonal projector onto the span of `vectors` w.r.t. the Gram matrix `gram`.
fn span_projector<S: Scalar>(vectors: &[KForm<S>], gram: &Mat<S>) -> Mat<S> {
    let cols: Vec<Vec<S>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    let v = Mat::from_columns(&cols);
    let vt_g = v.transpose().mul(gram);
    let small = vt_g
        .mul(&v)
        .inverse()
        .expect("spanning vectors are independent");
    v.mul(&small).mul(&vt_g)
}

/// Construct the full structure induced by a positive 3-form.
pub fn metric_from_phi<S: Scalar>(phi: &KForm<S>) -> Result<G2Structure<S>> {
    let data = metric_data(phi)?;
    G2Structure::from_data(phi.clone(), data)
}

impl<S: Scalar> G2Structure<S> {
    fn from_data(phi: KForm<S>, data: MetricData<S>) -> Result<Self> {
        let vol_coeff = if data.orientation > 0 {
            data.lambda.clone()
        } else {
            -data.lambda.clone()
        };
        let mut vol = KForm::zero(DIM);
        vol.set(TOP_MASK, vol_coeff.clone());
        let gram: Vec<Mat<S>> = (0..=DIM)
            .map(|k| gram_matrix(&data.inverse_metric, k))
            .collect();
        let hodge: Vec<Mat<S>> = (0..=DIM)
            .map(|k| hodge_matrix(&gram[k], k, &vol_coeff))
            .collect();
        let psi = KForm::new(4, hodge[3].mul_vec(phi.coeffs())).expect("degree 4");

        let n3 = basis::binomial(DIM, 3);
        let phi_sq = inner_with(&gram[3], &phi, &phi);
        let phi_col = Mat::from_columns(&[phi.coeffs().to_vec()]);
        let p1 = phi_col
            .mul(&phi_col.transpose())
            .mul(&gram[3])
            .scale(&(S::one() / phi_sq));
        let x_psi: Vec<KForm<S>> = (0..DIM)
            .map(|i| psi.interior_basis(i).expect("degree 4"))
            .collect();
        let p7 = span_projector(&x_psi, &gram[3]);
        let p27 = Mat::identity(n3).sub(&p1).sub(&p7);
        let conj = |p: &Mat<S>| hodge[3].mul(p).mul(&hodge[4]);
        let proj4 = [conj(&p1), conj(&p7), conj(&p27)];

        let x_phi: Vec<KForm<S>> = (0..DIM)
            .map(|i| phi.interior_basis(i).expect("degree 3"))
            .collect();
        let q7 = span_projector(&x_phi, &gram[2]);
        let q14 = Mat::identity(basis::binomial(DIM, 2)).sub(&q7);

        let c43 = S::from_ratio(4, 3);
        let c34 = S::from_ratio(3, 4);
        let weights3 = p1.scale(&c43).add(&p7).sub(&p27);
        let weights4 = proj4[0].scale(&c34).add(&proj4[1]).sub(&proj4[2]);
        let star3 = hodge[3].mul(&weights3);
        let star4 = hodge[4].mul(&weights4);

        Ok(G2Structure {
            phi,
            data,
            vol,
            psi,
            gram,
            hodge,
            proj3: [p1, p7, p27],
            proj4,
            proj2: [q7, q14],
            star3,
            star4,
        })
    }

    pub fn phi(&self) -> &KForm<S> {
        &self.phi
    }

    pub fn psi(&self) -> &KForm<S> {
        &self.psi
    }

    pub fn vol(&self) -> &KForm<S> {
        &self.vol
    }

    pub fn metric(&self) -> &Sym2Tensor<S> {
        &self.data.metric
    }

    pub fn inverse_metric(&self) -> &Sym2Tensor<S> {
        &self.data.inverse_metric
    }

    /// λ = √det g.
    pub fn norm_factor(&self) -> &S {
        &self.data.lambda
    }

    /// s with vol = s·λ·e¹···⁷.
    pub fn orientation(&self) -> i32 {
        self.data.orientation
    }

    pub fn b_matrix(&self) -> &Mat<S> {
        &self.data.b
    }

    pub fn det_b(&self) -> &S {
        &self.data.det_b
    }

    /// Total volume of the unit-covolume torus.
    pub fn total_volume(&self) -> S {
        self.data.lambda.clone()
    }

    pub fn gram(&self, k: usize) -> &Mat<S> {
        &self.gram[k]
    }

    /// Matrix of ∗ : Λᵏ → Λ⁷⁻ᵏ.
    pub fn hodge_matrix(&self, k: usize) -> &Mat<S> {
        &self.hodge[k]
    }

    /// Pointwise inner product ⟨a, b⟩_g.
    pub fn inner(&self, a: &KForm<S>, b: &KForm<S>) -> S {
        assert_eq!(a.degree(), b.degree(), "degree mismatch");
        inner_with(&self.gram[a.degree()], a, b)
    }

    pub fn norm_sq(&self, a: &KForm<S>) -> S {
        self.inner(a, a)
    }

    /// ⟨⟨a, b⟩⟩ = ∫ ⟨a, b⟩ vol over the unit-covolume torus.
    pub fn l2_pairing(&self, a: &KForm<S>, b: &KForm<S>) -> Result<S> {
        if a.degree() != b.degree() {
            return Err(G2Error::DegreeMismatch {
                left: a.degree(),
                right: b.degree(),
            });
        }
        Ok(self.inner(a, b) * self.data.lambda.clone())
    }

    pub fn hodge_star(&self, a: &KForm<S>) -> KForm<S> {
        let k = a.degree();
        KForm::new(DIM - k, self.hodge[k].mul_vec(a.coeffs())).expect("complementary degree")
    }

    /// ∫_M of a top form, using the orientation induced by φ.
    pub fn integrate(&self, top: &KForm<S>) -> S {
        let c = top.top();
        if self.data.orientation > 0 {
            c
        } else {
            -c
        }
    }

    /// ∫_M a ∧ b for complementary degrees.
    pub fn integrate_wedge(&self, a: &KForm<S>, b: &KForm<S>) -> Result<S> {
        if a.degree() + b.degree() != DIM {
            return Err(G2Error::DegreeMismatch {
                left: a.degree(),
                right: DIM - b.degree(),
            });
        }
        Ok(self.integrate(&a.wedge(b)?))
    }

    fn projector(&self, k: usize, t: FormType) -> Result<&Mat<S>> {
        match (k, t) {
            (3, FormType::One) => Ok(&self.proj3[0]),
            (3, FormType::Seven) => Ok(&self.proj3[1]),
            (3, FormType::TwentySeven) => Ok(&self.proj3[2]),
            (4, FormType::One) => Ok(&self.proj4[0]),
            (4, FormType::Seven) => Ok(&self.proj4[1]),
            (4, FormType::TwentySeven) => Ok(&self.proj4[2]),
            (2, FormType::Seven) => Ok(&self.proj2[0]),
            (2, FormType::Fourteen) => Ok(&self.proj2[1]),
            _ => Err(G2Error::UnsupportedDegree(k)),
        }
    }

    /// Projector matrix π_t on Λᵏ in the lexicographic basis.
    pub fn projector_matrix(&self, k: usize, t: FormType) -> Result<&Mat<S>> {
        self.projector(k, t)
    }

    pub fn project(&self, a: &KForm<S>, t: FormType) -> Result<KForm<S>> {
        let p = self.projector(a.degree(), t)?;
        Ok(KForm::new(a.degree(), p.mul_vec(a.coeffs())).expect("same degree"))
    }

    pub fn decompose(&self, a: &KForm<S>) -> Result<FormTypeComponents<S>> {
        match a.degree() {
            2 => Ok(FormTypeComponents::Two {
                p7: self.project(a, FormType::Seven)?,
                p14: self.project(a, FormType::Fourteen)?,
            }),
            3 | 4 => Ok(FormTypeComponents::ThreeOrFour {
                p1: self.project(a, FormType::One)?,
                p7: self.project(a, FormType::Seven)?,
                p27: self.project(a, FormType::TwentySeven)?,
            }),
            k => Err(G2Error::UnsupportedDegree(k)),
        }
    }

    /// The modified star: (4/3)∗π₁ + ∗π₇ − ∗π₂₇ on Λ³ and
    /// (3/4)∗π₁ + ∗π₇ − ∗π₂₇ on Λ⁴.
    pub fn star_op(&self, a: &KForm<S>) -> Result<KForm<S>> {
        let m = match a.degree() {
            3 => &self.star3,
            4 => &self.star4,
            k => return Err(G2Error::UnsupportedDegree(k)),
        };
        Ok(KForm::new(DIM - a.degree(), m.mul_vec(a.coeffs())).expect("complementary degree"))
    }

    /// Matrix of ⋆ on Λ³ (k = 3) or Λ⁴ (k = 4).
    pub fn star_op_matrix(&self, k: usize) -> Result<&Mat<S>> {
        match k {
            3 => Ok(&self.star3),
            4 => Ok(&self.star4),
            k => Err(G2Error::UnsupportedDegree(k)),
        }
    }

    /// ∫ a ∧ ⋆b for 3-forms (the moduli metric pairing).
    pub fn star_pairing(&self, a: &KForm<S>, b: &KForm<S>) -> Result<S> {
        let sb = self.star_op(b)?;
        self.integrate_wedge(a, &sb)
    }

    pub fn to_f64(&self) -> G2Structure<f64> {
        let data = MetricData {
            b: self.data.b.to_f64(),
            det_b: self.data.det_b.to_f64(),
            orientation: self.data.orientation,
            lambda: self.data.lambda.to_f64(),
            metric: self.data.metric.to_f64(),
            inverse_metric: self.data.inverse_metric.to_f64(),
        };
        G2Structure {
            phi: self.phi.to_f64(),
            data,
            vol: self.vol.to_f64(),
            psi: self.psi.to_f64(),
            gram: self.gram.iter().map(Mat::to_f64).collect(),
            hodge: self.hodge.iter().map(Mat::to_f64).collect(),
            proj3: self.proj3.clone().map(|m| m.to_f64()),
            proj4: self.proj4.clone().map(|m| m.to_f64()),
            proj2: self.proj2.clone().map(|m| m.to_f64()),
            star3: self.star3.to_f64(),
            star4: self.star4.to_f64(),
        }
    }
}

fn inner_with<S: Scalar>(gram: &Mat<S>, a: &KForm<S>, b: &KForm<S>) -> S {
    let gb = gram.mul_vec(b.coeffs());
    a.coeffs()
        .iter()
        .zip(&gb)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// φ₀ as an `f64` structure.
pub fn standard_structure() -> G2Structure<f64> {
    metric_from_phi(&standard_phi()).expect("φ₀ is positive")
}
