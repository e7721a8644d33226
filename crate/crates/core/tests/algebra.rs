mod common;

use approx::assert_abs_diff_eq;
use common::*;
use g2torus::algebra::basis::{self, DIM};
use g2torus::algebra::identities::{self, norms_and_ranks, projector_defects, trace_formula_sides};
use g2torus::algebra::*;
use g2torus::linalg::Mat;
use g2torus::{G2Error, Rational, Scalar};
use proptest::prelude::*;

fn phi0() -> G2Structure<f64> {
    standard_structure()
}

#[test]
fn wedge_matches_brute_force_antisymmetrisation() {
    let mut r = rng(1);
    for (p, q) in [(1, 1), (2, 3), (3, 2), (3, 4), (2, 2)] {
        let a = random_form(&mut r, p);
        let b = random_form(&mut r, q);
        let fast = a.wedge(&b).unwrap();
        let slow = brute_wedge(&a, &b);
        assert!((&fast - &slow).max_abs() < 1e-12, "({p},{q})");
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let swapped = b.wedge(&a).unwrap().scale(&sign);
        assert!((&fast - &swapped).max_abs() < 1e-12);
    }
}

#[test]
fn standard_phi_has_seven_unit_terms() {
    let phi: KForm<Rational> = standard_phi();
    let terms = phi.terms();
    assert_eq!(terms.len(), 7);
    assert!(terms
        .iter()
        .all(|(_, c)| c.abs() == <Rational as Scalar>::one()));
    assert_eq!(terms[0].0, "123");
}

#[test]
fn calibrated_orientation_is_negative_for_phi0() {
    let phi = standard_phi::<Rational>();
    let b = b_matrix(&phi);
    assert_eq!(b, Mat::identity(DIM).scale(&Rational::from_i64(6)));
    assert_eq!(calibrated_orientation(), -1);
    let fs = metric_from_phi(&phi).unwrap();
    assert_eq!(fs.metric().as_mat(), &Mat::identity(DIM));
    assert_eq!(fs.vol().top(), Rational::from_i64(-1));
    assert_eq!(*fs.norm_factor(), Rational::from_i64(1));
}

#[test]
fn exact_certificate_at_phi0() {
    let fs = metric_from_phi(&standard_phi::<Rational>()).unwrap();
    let rep = check_contraction_identity(&fs);
    assert!(rep.certified, "max residual {}", rep.max_residual);
    assert!(check_defining_identity(&fs).certified);
    let nr = norms_and_ranks(&fs);
    assert_eq!(nr.phi_norm_sq, Rational::from_i64(7));
    assert_eq!(nr.psi_norm_sq, Rational::from_i64(7));
    assert_eq!(nr.ranks3, [1, 7, 27]);
    assert_eq!(nr.ranks4, [1, 7, 27]);
    assert_eq!(nr.ranks2, [7, 14]);
    // φ ∧ ψ = 7 vol, against the oracle α ∧ ∗α = |α|² vol
    let top = fs.phi().wedge(fs.psi()).unwrap();
    assert_eq!(top, fs.vol().scale(&Rational::from_i64(7)));
}

#[test]
fn contraction_example_tuple() {
    // (i,j,a,b) = (1,2,1,2): LHS = Σ_{k} φ_12k φ_12k = 1, ψ_1212 = 0
    let fs = phi0();
    let lhs: f64 = (0..DIM)
        .map(|k| fs.phi().component(&[0, 1, k]).powi(2))
        .sum();
    assert_eq!(lhs, 1.0);
    assert_eq!(fs.psi().component(&[0, 1, 0, 1]), 0.0);
}

#[test]
fn hodge_star_examples() {
    let id = Sym2Tensor::<f64>::identity();
    let vol = KForm::<f64>::top_unit();
    let s = hodge_star(&id, &vol, &KForm::basis(&[0, 1, 2])).unwrap();
    assert_eq!(s, KForm::basis(&[3, 4, 5, 6]));
    assert_eq!(hodge_star(&id, &vol, &KForm::constant(1.0)).unwrap(), vol);
    let bad = Sym2Tensor::identity().scale(&-1.0);
    assert_eq!(
        hodge_star(&bad, &vol, &KForm::constant(1.0)),
        Err(G2Error::NotPositiveDefinite)
    );
}

#[test]
fn hodge_star_squares_to_one_for_random_metrics() {
    let mut r = rng(2);
    for _ in 0..5 {
        let g = random_spd(&mut r);
        let det = g.as_mat().det();
        let vol = KForm::<f64>::top_unit().scale(&det.sqrt());
        for k in 0..=DIM {
            let a = random_form(&mut r, k);
            let b = random_form(&mut r, k);
            let sa = hodge_star(&g, &vol, &a).unwrap();
            let ssa = hodge_star(&g, &vol, &sa).unwrap();
            assert!((&ssa - &a).max_abs() < 1e-9, "degree {k}");
            // a ∧ ∗b = ⟨a,b⟩ vol, with ⟨,⟩ from the Gram oracle
            let ginv = Sym2Tensor::symmetrize(&g.as_mat().inverse().unwrap());
            let gram = gram_matrix(&ginv, k);
            let ab: f64 = a
                .coeffs()
                .iter()
                .zip(gram.mul_vec(b.coeffs()))
                .map(|(x, y)| x * y)
                .sum();
            let lhs = a.wedge(&hodge_star(&g, &vol, &b).unwrap()).unwrap().top();
            assert!((lhs - ab * vol.top()).abs() < 1e-9);
        }
    }
}

#[test]
fn scaling_homogeneity() {
    for t in [0.5, 2.0, 3.7] {
        let fs = metric_from_phi(&standard_phi::<f64>().scale(&t)).unwrap();
        let expected = t.powf(2.0 / 3.0);
        for i in 0..DIM {
            for j in 0..DIM {
                let e = if i == j { expected } else { 0.0 };
                assert_abs_diff_eq!(*fs.metric().get(i, j), e, epsilon = 1e-12);
            }
        }
        assert_abs_diff_eq!(fs.total_volume(), t.powf(7.0 / 3.0), epsilon = 1e-12);
    }
}

#[test]
fn degenerate_forms_are_rejected() {
    let e123 = KForm::<f64>::basis(&[0, 1, 2]);
    assert!(matches!(
        metric_from_phi(&e123),
        Err(G2Error::NotPositive { .. })
    ));
    let tiny = standard_phi::<f64>().scale(&1e-3);
    assert!(matches!(
        metric_from_phi(&tiny),
        Err(G2Error::NearDegenerate { .. })
    ));
    let exact: KForm<Rational> = KForm::basis(&[0, 1, 2]);
    assert!(matches!(
        metric_from_phi(&exact),
        Err(G2Error::NotPositive { .. })
    ));
}

#[test]
fn irrational_root_is_reported_in_exact_mode() {
    let two = standard_phi::<Rational>().scale(&Rational::from_i64(2));
    assert!(matches!(
        metric_from_phi(&two),
        Err(G2Error::IrrationalRoot)
    ));
    // 8φ₀ has λ = 8^{7/3} = 128
    let eight = standard_phi::<Rational>().scale(&Rational::from_i64(8));
    let fs = metric_from_phi(&eight).unwrap();
    assert_eq!(*fs.norm_factor(), Rational::from_i64(128));
    assert!(check_contraction_identity(&fs).certified);
}

#[test]
fn decompose_phi_is_pure_type_one() {
    let fs = phi0();
    let FormTypeComponents::ThreeOrFour { p1, p7, p27 } = fs.decompose(fs.phi()).unwrap() else {
        panic!("degree 3")
    };
    assert!((&p1 - fs.phi()).max_abs() < 1e-14);
    assert!(p7.max_abs() < 1e-14 && p27.max_abs() < 1e-14);
    assert!(matches!(
        fs.decompose(&KForm::basis(&[0])),
        Err(G2Error::UnsupportedDegree(1))
    ));
}

#[test]
fn two_forms_split_by_wedge_with_psi() {
    let fs = phi0();
    let mut r = rng(3);
    let f = random_form(&mut r, 2);
    let p14 = fs.project(&f, FormType::Fourteen).unwrap();
    let p7 = fs.project(&f, FormType::Seven).unwrap();
    assert!(p14.wedge(fs.psi()).unwrap().max_abs() < 1e-13);
    assert!(p7.wedge(fs.psi()).unwrap().max_abs() > 1e-3);
    // f∧f∧φ = (|f₁₄|² − 2|f₇|²) vol
    let vol = fs.vol().top();
    let q14 = p14.wedge(&p14).unwrap().wedge(fs.phi()).unwrap().top() / vol;
    let q7 = p7.wedge(&p7).unwrap().wedge(fs.phi()).unwrap().top() / vol;
    assert_abs_diff_eq!(q14, fs.norm_sq(&p14), epsilon = 1e-12);
    assert_abs_diff_eq!(q7, -2.0 * fs.norm_sq(&p7), epsilon = 1e-12);
}

#[test]
fn star_op_constants() {
    let fs = phi0();
    let s = fs.star_op(fs.phi()).unwrap();
    assert!((&s - &fs.psi().scale(&(4.0 / 3.0))).max_abs() < 1e-14);
    let mut r = rng(4);
    let a = fs
        .project(&random_form(&mut r, 3), FormType::TwentySeven)
        .unwrap();
    let s = fs.star_op(&a).unwrap();
    assert!((&s + &fs.hodge_star(&a)).max_abs() < 1e-13);
    let b = fs.star_op(fs.psi()).unwrap();
    assert!((&b - &fs.phi().scale(&0.75)).max_abs() < 1e-14);
}

#[test]
fn sym2_examples() {
    let fs = phi0();
    let third = Sym2Tensor::identity().scale(&(1.0 / 3.0));
    assert!((&sym2_to_form(&fs, &third) - fs.phi()).max_abs() < 1e-14);
    let full = sym2_to_form(&fs, &Sym2Tensor::identity());
    assert!((&full - &fs.phi().scale(&3.0)).max_abs() < 1e-14);
    let x = fs.psi().interior(&unit(2)).unwrap();
    assert!(matches!(
        form_to_sym2(&fs, &x),
        Err(G2Error::HasSevenComponent { .. })
    ));
}

#[test]
fn trace_formula_at_phi0_is_seven() {
    let fs = metric_from_phi(&standard_phi::<Rational>()).unwrap();
    let third = Sym2Tensor::identity().scale(&Rational::from_ratio(1, 3));
    let (lhs, rhs) = trace_formula_sides(&fs, &third, &third);
    assert_eq!(lhs, Rational::from_i64(7));
    assert_eq!(rhs, Rational::from_i64(7));
}

#[test]
fn trace_formula_exact_on_integer_tensors() {
    let fs = metric_from_phi(&standard_phi::<Rational>()).unwrap();
    let h1 = Sym2Tensor::from_fn(|i, j| Rational::from_i64(((i * 5 + j * 3) % 7) as i64 - 3));
    let h2 = Sym2Tensor::from_fn(|i, j| Rational::from_i64(((i + 2 * j) % 5) as i64 - 2));
    let (lhs, rhs) = trace_formula_sides(&fs, &h1, &h2);
    assert_eq!(lhs, rhs);
}

#[test]
fn orthogonal_types_pair_to_zero() {
    let fs = phi0();
    let mut r = rng(5);
    let a = fs
        .project(&random_form(&mut r, 3), FormType::Seven)
        .unwrap();
    let b = fs
        .project(&random_form(&mut r, 3), FormType::TwentySeven)
        .unwrap();
    assert!(fs.l2_pairing(&a, &b).unwrap().abs() < 1e-13);
    assert!(matches!(
        fs.l2_pairing(&a, &KForm::basis(&[0, 1])),
        Err(G2Error::DegreeMismatch { .. })
    ));
}

#[test]
fn star_derivative_examples() {
    let fs = phi0();
    let rep = check_star_derivative(&fs, &fs.phi().clone(), 1e-4).unwrap();
    assert!(rep.relative_error < 1e-7, "{}", rep.relative_error);
    // η = φ: closed form (4/3)ψ from ∗((1+t)φ) = (1+t)^{4/3}ψ
    assert!((&rep.fd_value - &fs.psi().scale(&(4.0 / 3.0))).max_abs() < 1e-7);
    let mut r = rng(6);
    let a = fs
        .project(&random_form(&mut r, 3), FormType::TwentySeven)
        .unwrap();
    let rep = check_star_derivative(&fs, &a, 1e-4).unwrap();
    assert!((&rep.fd_value + &fs.hodge_star(&a)).max_abs() < 1e-6);
    let theta = random_form(&mut r, 4);
    let rep = identities::check_star_derivative_dual(&fs, &theta, 1e-4).unwrap();
    assert!(rep.relative_error < 1e-6, "{}", rep.relative_error);
}

#[test]
fn metric_and_volume_variation() {
    let fs = phi0();
    let third = Sym2Tensor::identity().scale(&(1.0 / 3.0));
    let rep = check_metric_volume_variation(&fs, &third, 1e-4).unwrap();
    assert_abs_diff_eq!(rep.volume_rate, 7.0 / 3.0, epsilon = 1e-7);
    let mut r = rng(7);
    let h = random_sym(&mut r);
    let tr = h.trace_with(fs.inverse_metric()) / 7.0;
    let traceless = h.sub(&fs.metric().scale(&tr));
    let rep = check_metric_volume_variation(&fs, &traceless, 1e-4).unwrap();
    assert!(rep.volume_rate.abs() < 1e-6);
    assert!(rep.inverse_metric_error < 1e-6);
    let rep = check_metric_volume_variation(&fs, &h, 1e-4).unwrap();
    assert!(rep.inverse_metric_error < 1e-6 && rep.volume_error < 1e-6);
}

fn random_structure(seed: u64, negative: bool) -> G2Structure<f64> {
    let mut r = rng(seed);
    let a = random_gl(&mut r, negative);
    metric_from_phi(&standard_phi::<f64>().pullback(&a)).unwrap()
}

#[test]
fn orientation_follows_phi_under_reflections() {
    let fs = random_structure(8, true);
    assert_eq!(fs.orientation(), 1);
    assert!(check_defining_identity(&fs).max_residual < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_hold_on_random_positive_forms(seed in 0u64..10_000, negative in any::<bool>()) {
        let fs = random_structure(seed, negative);
        prop_assert!(check_defining_identity(&fs).max_residual < 1e-10);
        prop_assert!(check_contraction_identity(&fs).max_residual < 1e-10);
        prop_assert!((fs.norm_sq(fs.phi()) - 7.0).abs() < 1e-10);
        prop_assert!((fs.norm_sq(fs.psi()) - 7.0).abs() < 1e-10);
        let nr = norms_and_ranks(&fs);
        prop_assert_eq!(nr.ranks3, [1, 7, 27]);
        prop_assert_eq!(nr.ranks4, [1, 7, 27]);
        prop_assert_eq!(nr.ranks2, [7, 14]);
        let (idem, orth) = projector_defects(&fs);
        prop_assert!(idem < 1e-12 && orth < 1e-12, "idem {} orth {}", idem, orth);
        // vol is a positive multiple of the orientation class, √det g = λ
        let det = fs.metric().as_mat().det();
        prop_assert!((det.sqrt() - fs.total_volume()).abs() < 1e-12 * det.sqrt().max(1.0));
    }

    #[test]
    fn equivariance(seed in 0u64..10_000, negative in any::<bool>()) {
        let fs = random_structure(seed, false);
        let mut r = rng(seed ^ 0xabc);
        let a = random_gl(&mut r, negative);
        prop_assert!(identities::equivariance_defect(&fs, &a).unwrap() < 1e-10);
    }

    #[test]
    fn star_op_involution_and_symmetry(seed in 0u64..10_000) {
        let fs = random_structure(seed, false);
        let mut r = rng(seed + 1);
        let a = random_form(&mut r, 3);
        let b = random_form(&mut r, 3);
        let ssa = fs.star_op(&fs.star_op(&a).unwrap()).unwrap();
        prop_assert!((&ssa - &a).max_abs() < 1e-10);
        let t = random_form(&mut r, 4);
        let sst = fs.star_op(&fs.star_op(&t).unwrap()).unwrap();
        prop_assert!((&sst - &t).max_abs() < 1e-10);
        let ab = fs.star_pairing(&a, &b).unwrap();
        let ba = fs.star_pairing(&b, &a).unwrap();
        prop_assert!((ab - ba).abs() < 1e-10);
    }

    #[test]
    fn decomposition_is_orthogonal_and_complete(seed in 0u64..10_000, k in 2usize..5) {
        let fs = random_structure(seed, false);
        let mut r = rng(seed + 2);
        let a = random_form(&mut r, k);
        let comps = fs.decompose(&a).unwrap();
        prop_assert!((&comps.sum() - &a).max_abs() < 1e-11);
        let parts = comps.parts();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                prop_assert!(fs.inner(parts[i].1, parts[j].1).abs() < 1e-11);
            }
        }
        if k == 3 {
            // the 27-part is killed by ∧φ and ∧ψ
            let FormTypeComponents::ThreeOrFour { p27, .. } = &comps else { unreachable!() };
            prop_assert!(p27.wedge(fs.phi()).unwrap().max_abs() < 1e-10);
            prop_assert!(p27.wedge(fs.psi()).unwrap().max_abs() < 1e-10);
        }
    }

    #[test]
    fn sym2_round_trip_and_image(seed in 0u64..10_000) {
        let fs = random_structure(seed, false);
        let mut r = rng(seed + 3);
        let h = random_sym(&mut r);
        let eta = sym2_to_form(&fs, &h);
        prop_assert!(fs.project(&eta, FormType::Seven).unwrap().max_abs() < 1e-11);
        let back = form_to_sym2(&fs, &eta).unwrap();
        prop_assert!(back.sub(&h).max_abs() < 1e-12);
        // traceless h lands in the 27 part
        let tr = h.trace_with(fs.inverse_metric()) / 7.0;
        let h0 = h.sub(&fs.metric().scale(&tr));
        let e0 = sym2_to_form(&fs, &h0);
        prop_assert!(fs.project(&e0, FormType::One).unwrap().max_abs() < 1e-11);
    }

    #[test]
    fn trace_formula_random(seed in 0u64..10_000) {
        let fs = random_structure(seed, false);
        let mut r = rng(seed + 4);
        let (lhs, rhs) = trace_formula_sides(&fs, &random_sym(&mut r), &random_sym(&mut r));
        prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    #[test]
    fn interior_is_an_antiderivation(seed in 0u64..10_000, p in 1usize..4, q in 1usize..4) {
        let mut r = rng(seed);
        let a = random_form(&mut r, p);
        let b = random_form(&mut r, q);
        let v: Vec<f64> = (0..DIM).map(|_| r.random_range(-1.0..1.0)).collect();
        let lhs = a.wedge(&b).unwrap().interior(&v).unwrap();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = &a.interior(&v).unwrap().wedge(&b).unwrap()
            + &a.wedge(&b.interior(&v).unwrap()).unwrap().scale(&sign);
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn wedge_is_associative(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let a = random_form(&mut r, 2);
        let b = random_form(&mut r, 2);
        let c = random_form(&mut r, 3);
        let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let rr = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!((&l - &rr).max_abs() < 1e-12);
        prop_assert_eq!(l.coeffs().len(), basis::binomial(DIM, 7));
    }
}

use rand::Rng;

#[test]
fn dual_form_matches_full_structure() {
    let mut r = common::rng(4242);
    for _ in 0..10 {
        let phi = g2torus::sampling::random_positive_phi(&mut r, 0.4);
        let fs = g2torus::algebra::metric_from_phi(&phi).unwrap();
        let psi = g2torus::algebra::dual_form(&phi).unwrap();
        assert!((&psi - fs.psi()).max_abs() < 1e-13);
    }
    let exact = g2torus::algebra::dual_form(&standard_phi::<Rational>()).unwrap();
    assert_eq!(
        exact,
        metric_from_phi(&standard_phi::<Rational>())
            .unwrap()
            .psi()
            .clone()
    );
}
