mod common;

use common::rng;
use g2torus::algebra::{metric_from_phi, standard_phi, FormType, Sym2Tensor};
use g2torus::linalg::inertia;
use g2torus::moduli::*;
use g2torus::sampling::{random_positive_phi, random_typed_form};
use g2torus::{FdConfig, G2Error, KForm, Rational, Scalar};
use proptest::prelude::*;

const SECTOR: [FormType; 2] = [FormType::One, FormType::TwentySeven];

fn random_point(chart: &FlatChart, seed: u64) -> ModuliPoint {
    let phi = random_positive_phi(&mut rng(seed), 0.3);
    chart.point_of_form(&phi).unwrap()
}

#[test]
fn chart_basis_is_adapted_to_types() {
    let chart = FlatChart::standard();
    let fs = chart.center();
    assert_eq!(chart.basis_form(0), fs.phi());
    for i in 1..CHART_DIM {
        let t = FlatChart::sector_of(i);
        let e = chart.basis_form(i);
        let p = fs.project(e, t).unwrap();
        assert!((e - &p).max_abs() < 1e-12, "η{i} not of type {t:?}");
        for j in 1..CHART_DIM {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((fs.inner(e, chart.basis_form(j)) - want).abs() < 1e-12);
        }
    }
    let x = vec![0.3; CHART_DIM];
    let back = chart.coords_of(&chart.form_at(&x));
    assert!(back.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-12));
}

#[test]
fn superpotential_examples() {
    let chart = FlatChart::standard();
    assert!((superpotential(&chart.center_point()) - 3.0).abs() < 1e-14);
    let two = superpotential_of_phi(&standard_phi::<f64>().scale(&2.0)).unwrap();
    assert!((two - 3.0 * 2f64.powf(7.0 / 3.0)).abs() < 1e-12);
    for seed in 0..10 {
        let p = random_point(&chart, seed);
        let fs = p.structure();
        assert!((superpotential(&p) - superpotential_wedge_form(fs)).abs() < 1e-12);
        let t = 1.7;
        let ft = superpotential_of_phi(&p.phi().scale(&t)).unwrap();
        assert!((ft / superpotential(&p) - t.powf(7.0 / 3.0)).abs() < 1e-10);
    }
    let err = superpotential_of_phi(&KForm::basis(&[0, 1, 2])).unwrap_err();
    assert!(matches!(err, G2Error::NotPositive { .. }));
}

#[test]
fn gradient_closed_form_and_fd() {
    let chart = FlatChart::standard();
    let c = chart.center_point();
    let grad = gradient_f(&chart, &c);
    assert!((grad[0] - 7.0 / 3.0 * superpotential(&c)).abs() < 1e-12);
    assert!(grad[1..].iter().all(|g| g.abs() < 1e-12));
    for seed in 0..5 {
        let p = random_point(&chart, 100 + seed);
        let closed = gradient_f(&chart, &p);
        let fd = gradient_fd(&chart, &p, 1e-4).unwrap();
        let err = closed
            .iter()
            .zip(&fd)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6, "gradient FD error {err}");
    }
}

#[test]
fn hessian_routes_agree() {
    let chart = FlatChart::standard();
    let cfg = FdConfig::default();
    let mut points = vec![chart.center_point()];
    points.extend((0..2).map(|s| random_point(&chart, 200 + s)));
    for p in &points {
        let r = hessian_routes(&chart, p, &cfg).unwrap();
        assert!(r.max_discrepancy() < 1e-5, "routes disagree: {r:?}");
        let asym = r.star_pairing.sub(&r.star_pairing.transpose()).max_abs();
        assert!(asym < 1e-12);
    }
}

#[test]
fn hessian_at_center() {
    let chart = FlatChart::standard();
    let c = chart.center_point();
    let h = hessian_g(&chart, &c).unwrap();
    let f = superpotential(&c);
    assert!((h.hessian[(0, 0)] - 28.0 / 9.0 * f).abs() < 1e-10);
    assert!((h.hessian[(0, 0)] - 28.0 / 3.0).abs() < 1e-10);
    assert!((1..CHART_DIM).all(|i| h.hessian[(0, i)].abs() < 1e-12));
    assert_eq!(h.signature, (8, 27));
}

#[test]
fn signature_on_random_points() {
    let chart = FlatChart::standard();
    for seed in 0..20 {
        let p = random_point(&chart, 300 + seed);
        let h = hessian_g(&chart, &p).unwrap();
        assert_eq!(h.signature, (8, 27), "seed {seed}");
        // Recentred: 𝒢₀₀ = 28/9 f and the 1⊕27 block is Lorentzian.
        let local = FlatChart::new(p.structure().clone());
        let hl = hessian_g(&local, &local.center_point()).unwrap();
        assert!((hl.hessian[(0, 0)] - 28.0 / 9.0 * superpotential(&p)).abs() < 1e-10);
        let idx = FlatChart::irreducible_sector();
        let sub = g2torus::linalg::Mat::from_fn(28, 28, |a, b| hl.hessian[(idx[a], idx[b])]);
        assert_eq!(inertia(&sub.to_nalgebra(), 1e-10), (1, 27, 0));
    }
}

#[test]
fn yukawa_constants_closed_form() {
    let chart = FlatChart::standard();
    let fs = chart.center();
    let phi = fs.phi();
    let y = yukawa(fs, phi, phi, phi).unwrap();
    assert!((y - 14.0 / 9.0).abs() < 1e-12);
    let e27 = chart.basis_form(10);
    assert!(yukawa(fs, phi, phi, e27).unwrap().abs() < 1e-12);
    for seed in 0..5 {
        let p = random_point(&chart, 400 + seed);
        let fs = p.structure();
        let mut r = rng(seed);
        let a = random_typed_form(&mut r, fs, 3, &[FormType::TwentySeven]).unwrap();
        let b = random_typed_form(&mut r, fs, 3, &[FormType::TwentySeven]).unwrap();
        let (cubic, mixed) = yukawa_constants(fs, &a, &b).unwrap();
        assert!((cubic - 14.0 / 27.0).abs() < 1e-10);
        assert!((mixed - 1.0 / 6.0).abs() < 1e-10);
        assert!(yukawa(fs, fs.phi(), fs.phi(), &a).unwrap().abs() < 1e-10);
    }
}

#[test]
fn yukawa_constants_exact() {
    let fs = metric_from_phi(&standard_phi::<Rational>()).unwrap();
    let phi = fs.phi();
    let third = Sym2Tensor::<Rational>::identity().scale(&Rational::from_ratio(1, 3));
    assert_eq!(
        yukawa_sym(&fs, &third, &third, &third),
        Rational::from_ratio(14, 9)
    );
    // A traceless diagonal tensor gives a 27-type form.
    let h = Sym2Tensor::from_fn(|i, j| {
        if i == j {
            Rational::from_i64([1, -1, 0, 0, 0, 0, 0][i])
        } else {
            Rational::zero()
        }
    });
    let eta = g2torus::algebra::sym2_to_form(&fs, &h);
    let y = yukawa(&fs, phi, &eta, &eta).unwrap();
    let g = fs.star_pairing(&eta, &eta).unwrap();
    assert_eq!(y, g / Rational::from_i64(6));
}

#[test]
fn yukawa_rejects_seven_type() {
    let chart = FlatChart::standard();
    let fs = chart.center();
    let e7 = chart.basis_form(3);
    let err = yukawa(fs, fs.phi(), fs.phi(), e7).unwrap_err();
    assert!(matches!(err, G2Error::HasSevenComponent { .. }));
}

#[test]
fn third_derivative_examples() {
    let chart = FlatChart::standard();
    let cfg = FdConfig::default();
    let c = chart.center_point();
    let phi = c.phi().clone();
    let r = check_third_derivative(&c, [&phi, &phi, &phi], &cfg).unwrap();
    assert!((r.fd_value - 28.0 / 9.0).abs() < 1e-3 * 28.0 / 9.0, "{r:?}");
    let e = chart.basis_form(20).clone();
    let r = check_third_derivative(&c, [&e, &phi, &phi], &cfg).unwrap();
    assert!(r.fd_value.abs() < 1e-3 && r.relative_error < 1e-3, "{r:?}");
    for seed in 0..10 {
        let p = random_point(&chart, 500 + seed);
        let fs = p.structure();
        let mut g = rng(600 + seed);
        let d: Vec<KForm<f64>> = (0..3)
            .map(|_| random_typed_form(&mut g, fs, 3, &SECTOR).unwrap())
            .collect();
        let r = check_third_derivative(&p, [&d[0], &d[1], &d[2]], &cfg).unwrap();
        assert!(r.relative_error < 1e-3, "{r:?}");
    }
}

#[test]
fn third_derivative_rejects_seven_type() {
    let chart = FlatChart::standard();
    let c = chart.center_point();
    let e7 = chart.basis_form(1).clone();
    let err = check_third_derivative(&c, [&e7, &e7, &e7], &FdConfig::default()).unwrap_err();
    assert!(matches!(err, G2Error::HasSevenComponent { .. }));
}

#[test]
fn seven_discrepancy_reduces_to_the_sector_check() {
    let chart = FlatChart::standard();
    let cfg = FdConfig::default();
    let p = random_point(&chart, 650);
    let fs = p.structure();
    let mut g = rng(651);
    let d: Vec<KForm<f64>> = (0..3)
        .map(|_| random_typed_form(&mut g, fs, 3, &SECTOR).unwrap())
        .collect();
    let checked = check_third_derivative(&p, [&d[0], &d[1], &d[2]], &cfg).unwrap();
    let measured = seven_discrepancy(&p, [&d[0], &d[1], &d[2]], &cfg).unwrap();
    assert_eq!(measured.fd_value, checked.fd_value);
    assert!(
        (measured.twice_sector_yukawa - checked.twice_yukawa).abs()
            < 1e-9 * checked.twice_yukawa.abs().max(1.0)
    );

    // Off the sector the gap is only reported; it must at least be finite.
    let e7 = random_typed_form(&mut g, fs, 3, &[FormType::Seven]).unwrap();
    let r = seven_discrepancy(&p, [&e7, &d[0], &d[1]], &cfg).unwrap();
    assert!(r.relative_gap.is_finite(), "{r:?}");
}

#[test]
fn log_potential() {
    let chart = FlatChart::standard();
    let cfg = FdConfig::default();
    for p in [chart.center_point(), random_point(&chart, 700)] {
        let r = log_potential_checks(&p, &cfg).unwrap();
        assert!((r.f00 - 7.0 / 3.0).abs() < 1e-5, "{r:?}");
        assert!(r.f0i_max < 1e-5);
        assert!(r.sector_error < 1e-5);
        assert!(r.sector_positive_definite);
        // On the 7-block F's Hessian is −(1/f)⟨⟨·,·⟩⟩, the opposite sign.
        assert_eq!(r.seven_block_signature, (0, 7, 0));
        assert!(r.seven_block_error > 0.1);
    }
}

#[test]
fn trace_cubic_identity_examples() {
    let fs = metric_from_phi(&standard_phi::<Rational>()).unwrap();
    let third = Sym2Tensor::<Rational>::identity().scale(&Rational::from_ratio(1, 3));
    let r = check_trace_cubic_identity(&fs, &third, &third, &third);
    assert_eq!(r.contraction, Rational::from_i64(14));
    assert_eq!(r.yukawa_term, Rational::from_ratio(28, 9));
    assert_eq!(r.trace_terms, Rational::from_ratio(98, 9));
    assert_eq!(r.residual, 0.0);

    let chart = FlatChart::standard();
    let p = random_point(&chart, 800);
    let fs = p.structure();
    let mut g = rng(801);
    let traceless = |g: &mut _| {
        let h = common::random_sym(g);
        let t = h.trace_with(fs.inverse_metric()) / 7.0;
        h.sub(&fs.metric().scale(&t))
    };
    let (a, b, c) = (traceless(&mut g), traceless(&mut g), traceless(&mut g));
    let r = check_trace_cubic_identity(fs, &a, &b, &c);
    assert!(r.trace_terms.abs() < 1e-12);
    assert!(r.residual < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_cubic_identity_random(seed in any::<u64>()) {
        let chart = FlatChart::standard();
        let p = random_point(&chart, seed);
        let mut g = rng(seed ^ 0x55);
        let hs: Vec<_> = (0..3).map(|_| common::random_sym(&mut g)).collect();
        let r = check_trace_cubic_identity(p.structure(), &hs[0], &hs[1], &hs[2]);
        prop_assert!(r.residual < 1e-10);
    }

    #[test]
    fn yukawa_symmetric_and_trilinear(seed in any::<u64>()) {
        let chart = FlatChart::standard();
        let p = random_point(&chart, seed);
        let fs = p.structure();
        let mut g = rng(seed ^ 0xa5);
        let d: Vec<KForm<f64>> = (0..4).map(|_| random_typed_form(&mut g, fs, 3, &SECTOR).unwrap()).collect();
        let y = |a: &KForm<f64>, b: &KForm<f64>, c: &KForm<f64>| yukawa(fs, a, b, c).unwrap();
        let base = y(&d[0], &d[1], &d[2]);
        for (a, b, c) in [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            prop_assert!((y(&d[a], &d[b], &d[c]) - base).abs() < 1e-12);
        }
        let sum = d[0].axpy(&2.5, &d[3]);
        let lin = y(&sum, &d[1], &d[2]) - base - 2.5 * y(&d[3], &d[1], &d[2]);
        prop_assert!(lin.abs() < 1e-11);
    }

    #[test]
    fn superpotential_homogeneous(seed in any::<u64>(), t in 0.3f64..3.0) {
        let phi = random_positive_phi(&mut rng(seed), 0.3);
        let f = superpotential_of_phi(&phi).unwrap();
        let ft = superpotential_of_phi(&phi.scale(&t)).unwrap();
        prop_assert!((ft / f - t.powf(7.0 / 3.0)).abs() < 1e-10);
    }
}
