use crate::algebra::basis::DIM;
use crate::algebra::identities::full_tensor3;
use crate::algebra::{form_to_sym2, sym2_to_form, G2Structure, KForm, Sym2Tensor};
use crate::error::Result;
use crate::linalg::Mat;
use crate::scalar::Scalar;

/// Σ_abc A[a][α] B[b][β] C[c][γ] T_abc, one mode at a time.
fn transform3<S: Scalar>(t: &[S], a: &Mat<S>, b: &Mat<S>, c: &Mat<S>) -> Vec<S> {
    let idx = |i: usize, j: usize, k: usize| (i * DIM + j) * DIM + k;
    let mode = |src: &[S], m: &Mat<S>, which: usize| -> Vec<S> {
        let mut out = vec![S::zero(); DIM * DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let v = &src[idx(i, j, k)];
                    if v.is_zero() {
                        continue;
                    }
                    for n in 0..DIM {
                        let (from, target) = match which {
                            0 => (i, idx(n, j, k)),
                            1 => (j, idx(i, n, k)),
                            _ => (k, idx(i, j, n)),
                        };
                        let w = &m[(from, n)];
                        if !w.is_zero() {
                            out[target] = out[target].clone() + w.clone() * v.clone();
                        }
                    }
                }
            }
        }
        out
    };
    let t = mode(t, a, 0);
    let t = mode(&t, b, 1);
    mode(&t, c, 2)
}

fn contract<S: Scalar>(x: &[S], y: &[S]) -> S {
    x.iter()
        .zip(y)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

/// 𝒴 on symmetric tensors: ∫ h₁^{aα} h₂^{bβ} h₃^{cγ} φ_abc φ_αβγ vol.
pub fn yukawa_sym<S: Scalar>(
    fs: &G2Structure<S>,
    h1: &Sym2Tensor<S>,
    h2: &Sym2Tensor<S>,
    h3: &Sym2Tensor<S>,
) -> S {
    let ginv = fs.inverse_metric();
    let phi = full_tensor3(fs.phi());
    let w = transform3(&phi, &h1.raised(ginv), &h2.raised(ginv), &h3.raised(ginv));
    contract(&w, &phi) * fs.total_volume()
}

/// 𝒴 on 3-forms in Λ³₁ ⊕ Λ³₂₇; fails with `HasSevenComponent` otherwise.
pub fn yukawa<S: Scalar>(
    fs: &G2Structure<S>,
    a: &KForm<S>,
    b: &KForm<S>,
    c: &KForm<S>,
) -> Result<S> {
    let (h1, h2, h3) = (
        form_to_sym2(fs, a)?,
        form_to_sym2(fs, b)?,
        form_to_sym2(fs, c)?,
    );
    Ok(yukawa_sym(fs, &h1, &h2, &h3))
}

/// Both sides of the cubic trace identity
/// ∫(η₁)_ijk (η₂)_abc h₃^{ia} g^{jb} g^{kc} = 2𝒴 + 2 Σ_cyc Tr h Tr(h h).
#[derive(Clone, Debug, PartialEq)]
pub struct TraceCubicReport<S> {
    pub contraction: S,
    pub yukawa_term: S,
    pub trace_terms: S,
    pub residual: f64,
}

pub fn check_trace_cubic_identity<S: Scalar>(
    fs: &G2Structure<S>,
    h1: &Sym2Tensor<S>,
    h2: &Sym2Tensor<S>,
    h3: &Sym2Tensor<S>,
) -> TraceCubicReport<S> {
    let ginv = fs.inverse_metric();
    let e1 = full_tensor3(&sym2_to_form(fs, h1));
    let e2 = full_tensor3(&sym2_to_form(fs, h2));
    let raised = transform3(&e2, &h3.raised(ginv), ginv.as_mat(), ginv.as_mat());
    let vol = fs.total_volume();
    let contraction = contract(&e1, &raised) * vol.clone();
    let two = S::from_i64(2);
    let yukawa_term = two.clone() * yukawa_sym(fs, h1, h2, h3);
    let tr = |h: &Sym2Tensor<S>| h.trace_with(ginv);
    let trp = |x: &Sym2Tensor<S>, y: &Sym2Tensor<S>| x.trace_product(y, ginv);
    let cyc = tr(h1) * trp(h2, h3) + tr(h2) * trp(h3, h1) + tr(h3) * trp(h1, h2);
    let trace_terms = two * cyc * vol;
    let diff = contraction.clone() - yukawa_term.clone() - trace_terms.clone();
    let scale = contraction.to_f64().abs().max(1.0);
    TraceCubicReport {
        residual: diff.to_f64().abs() / scale,
        contraction,
        yukawa_term,
        trace_terms,
    }
}

/// Closed-form ratios 𝒴(φ,φ,φ)/f and 𝒴(φ,η,η')/𝒢(η,η') for 27-type η, η'.
pub fn yukawa_constants<S: Scalar>(
    fs: &G2Structure<S>,
    eta1: &KForm<S>,
    eta2: &KForm<S>,
) -> Result<(S, S)> {
    let phi = fs.phi();
    let f = S::from_i64(3) * fs.total_volume();
    let cubic = yukawa(fs, phi, phi, phi)? / f;
    let mixed = yukawa(fs, phi, eta1, eta2)? / fs.star_pairing(eta1, eta2)?;
    Ok((cubic, mixed))
}
