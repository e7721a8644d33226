mod common;

use common::rng;
use g2torus::algebra::{standard_phi, FormType};
use g2torus::jacobian::*;
use g2torus::linalg::{inertia, Mat};
use g2torus::moduli::{superpotential, FlatChart, ModuliPoint};
use g2torus::sampling::{random_form, random_positive_phi, random_typed_form};
use g2torus::{G2Structure, KForm};
use proptest::prelude::*;
use rand::Rng;

const SECTOR: [FormType; 2] = [FormType::One, FormType::TwentySeven];

fn random_point(chart: &FlatChart, seed: u64) -> ModuliPoint {
    chart
        .point_of_form(&random_positive_phi(&mut rng(seed), 0.3))
        .unwrap()
}

fn random_vector(r: &mut impl Rng) -> JacobianVector {
    JacobianVector::new(random_form(r, 3), random_form(r, 4))
}

fn random_tilde(r: &mut impl Rng) -> TildeJacobianVector {
    TildeJacobianVector::new(random_form(r, 3), random_form(r, 3))
}

fn structure(seed: u64) -> G2Structure<f64> {
    g2torus::algebra::metric_from_phi(&random_positive_phi(&mut rng(seed), 0.3)).unwrap()
}

#[test]
fn omega_examples() {
    let fs = structure(1);
    let mut r = rng(2);
    let (eta, theta) = (random_form(&mut r, 3), random_form(&mut r, 4));
    let x = JacobianVector::new(eta.clone(), KForm::zero(4));
    let y = JacobianVector::new(KForm::zero(3), theta.clone());
    assert!((omega(&fs, &x, &y) - fs.integrate_wedge(&eta, &theta).unwrap()).abs() < 1e-14);
    let v = random_vector(&mut r);
    assert_eq!(omega(&fs, &v, &v), 0.0);

    let om = omega_matrix(&fs);
    assert_eq!(om.add(&om.transpose()).max_abs(), 0.0);
    assert_eq!(om.rank(1e-10), 70);
    // Zero section and fibres are isotropic.
    for i in 0..35 {
        for j in 0..35 {
            assert_eq!(om[(i, j)], 0.0);
            assert_eq!(om[(35 + i, 35 + j)], 0.0);
        }
    }
}

fn check_triple(om: &Mat<f64>, j: &Mat<f64>, g: &Mat<f64>) {
    let id = Mat::<f64>::identity(70);
    assert!(j.mul(j).add(&id).max_abs() < 1e-12, "J² ≠ −1");
    assert!(g.sub(&om.mul(j)).max_abs() < 1e-12, "𝒢 ≠ ω(·, J·)");
    assert!(g.sub(&g.transpose()).max_abs() < 1e-12);
    assert!(
        j.transpose().mul(g).mul(j).sub(g).max_abs() < 1e-12,
        "𝒢 not J-invariant"
    );
    assert!(
        j.transpose().mul(om).mul(j).sub(om).max_abs() < 1e-12,
        "ω not J-invariant"
    );
    assert_eq!(inertia(&g.to_nalgebra(), 1e-10), (16, 54, 0));
}

#[test]
fn untilded_triple_is_pseudo_kaehler() {
    for seed in [0, 11, 12] {
        let fs = if seed == 0 {
            g2torus::algebra::standard_structure()
        } else {
            structure(seed)
        };
        let om = omega_matrix(&fs);
        let j = complex_structure_matrix(&fs).unwrap();
        let g = metric_j_matrix(&fs).unwrap();
        check_triple(&om, &j, &g);
    }
    let fs = structure(13);
    let eta = random_form(&mut rng(14), 3);
    let jv = complex_structure(&fs, &JacobianVector::new(eta.clone(), KForm::zero(4))).unwrap();
    assert!(jv.eta.is_zero());
    assert!((&jv.theta - &fs.star_op(&eta).unwrap()).max_abs() < 1e-14);
}

#[test]
fn tilde_triple_matches_untilded() {
    let fs = structure(21);
    let om = omega_tilde_matrix(&fs).unwrap();
    let g = metric_tilde_matrix(&fs).unwrap();
    let cols: Vec<Vec<f64>> = (0..70)
        .map(|i| {
            let v = complex_structure_tilde(&TildeJacobianVector::basis(i));
            v.eta
                .coeffs()
                .iter()
                .chain(v.mu.coeffs())
                .copied()
                .collect()
        })
        .collect();
    check_triple(&om, &Mat::from_columns(&cols), &g);

    let mut r = rng(22);
    for _ in 0..10 {
        let (a, b) = (random_tilde(&mut r), random_tilde(&mut r));
        let (ua, ub) = (untilde(&fs, &a).unwrap(), untilde(&fs, &b).unwrap());
        let scale = a.max_abs() * b.max_abs();
        assert!(
            (omega_tilde(&fs, &a, &b).unwrap() - omega(&fs, &ua, &ub)).abs()
                < 1e-12 * scale.max(1.0)
        );
        assert!(
            (metric_tilde(&fs, &a, &b).unwrap() - metric_j(&fs, &ua, &ub).unwrap()).abs()
                < 1e-12 * scale.max(1.0)
        );
    }
}

#[test]
fn primitives_differentiate_to_symplectic_forms() {
    let mut r = rng(31);
    for _ in 0..5 {
        let phi = random_positive_phi(&mut r, 0.3);
        let (d, c) = (random_form(&mut r, 4), random_form(&mut r, 3));
        let (v1, v2) = (random_vector(&mut r), random_vector(&mut r));
        let rep = check_alpha(&phi, &d, &v1, &v2, 1e-4).unwrap();
        assert!(rep.defect() < 1e-8, "{rep:?}");

        let (w1, w2) = (random_tilde(&mut r), random_tilde(&mut r));
        let rep = check_alpha_tilde(&phi, &c, &w1, &w2, TildePrimitive::Exact, 1e-4).unwrap();
        assert!(
            rep.defect() < 1e-6 * rep.symplectic.abs().max(1.0),
            "{rep:?}"
        );
        let rep = check_alpha_tilde(&phi, &c, &w1, &w2, TildePrimitive::StarForm, 1e-4).unwrap();
        assert!(
            (rep.d_primitive - 7.0 / 6.0 * rep.symplectic).abs()
                < 1e-6 * rep.symplectic.abs().max(1.0),
            "{rep:?}"
        );
    }
}

#[test]
fn legendre_at_center() {
    let lc = LegendreChart::new(FlatChart::standard());
    let c = lc.chart().center_point();
    assert!((lc.fhat(&c) - 4.0).abs() < 1e-12);
    let x = lc.dual_coords(&c);
    assert!((x[0] - 7.0 / 3.0 * superpotential(&c)).abs() < 1e-12);
    assert!(x[1..].iter().all(|v| v.abs() < 1e-12));
    let rep = lc.check(&c, 1e-3).unwrap();
    assert!(rep.inverse_hessian_error < 1e-4, "{rep:?}");
}

#[test]
fn legendre_at_random_points() {
    let lc = LegendreChart::new(FlatChart::standard());
    for seed in 0..3 {
        let p = random_point(lc.chart(), 40 + seed);
        let rep = lc.check(&p, 1e-3).unwrap();
        assert!(rep.fhat_error < 1e-10, "{rep:?}");
        assert!(rep.inverse_hessian_error < 1e-4, "{rep:?}");
    }
}

#[test]
fn graph_of_dual_form_is_lagrangian() {
    let chart = FlatChart::standard();
    let p = random_point(&chart, 50);
    let fs = p.structure();
    let mut r = rng(51);
    let e = random_form(&mut r, 3);
    assert!(
        check_lagrangian_graph(&p, &e, &e, 1e-4)
            .unwrap()
            .isotropy
            .abs()
            < 1e-12
    );
    let a = random_typed_form(&mut r, fs, 3, &[FormType::One]).unwrap();
    let b = random_typed_form(&mut r, fs, 3, &[FormType::TwentySeven]).unwrap();
    assert!(
        check_lagrangian_graph(&p, &a, &b, 1e-4)
            .unwrap()
            .isotropy
            .abs()
            < 1e-12
    );
    for _ in 0..10 {
        let (a, b) = (random_form(&mut r, 3), random_form(&mut r, 3));
        let rep = check_lagrangian_graph(&p, &a, &b, 1e-4).unwrap();
        assert!(rep.isotropy.abs() < 1e-12, "{rep:?}");
        assert!(rep.tangency_error < 1e-6, "{rep:?}");
    }
}

#[test]
fn metric_derivative_is_symmetric() {
    let chart = FlatChart::standard();
    let p = random_point(&chart, 60);
    let mut r = rng(61);
    let triples: Vec<_> = (0..20)
        .map(|_| {
            (
                r.random_range(0..35),
                r.random_range(0..35),
                r.random_range(0..35),
            )
        })
        .collect();
    let rep = closedness_and_integrability(&chart, &p, &triples, 1e-4).unwrap();
    assert!(rep.max_asymmetry < 1e-4, "{rep:?}");

    let c = chart.center_point();
    let sector = FlatChart::irreducible_sector();
    let triples: Vec<_> = (0..10)
        .map(|k| {
            (
                sector[k],
                sector[(3 * k + 1) % 28],
                sector[(7 * k + 5) % 28],
            )
        })
        .collect();
    let rep = closedness_and_integrability(&chart, &c, &triples, 1e-4).unwrap();
    assert!(rep.max_asymmetry < 1e-4, "{rep:?}");
}

#[test]
fn cubic_form_is_twice_yukawa() {
    let chart = FlatChart::standard();
    let c = chart.center_point();
    let phi = c.phi().clone();
    let rep = cubic_form_check(&c, &phi, &phi, &phi, 1e-4).unwrap();
    assert!((rep.fd_value - 28.0 / 9.0).abs() < 1e-3, "{rep:?}");
    let e = chart.basis_form(30).clone();
    assert!(
        cubic_form_check(&c, &e, &phi, &phi, 1e-4)
            .unwrap()
            .fd_value
            .abs()
            < 1e-6
    );
    for seed in 0..5 {
        let p = random_point(&chart, 70 + seed);
        let mut r = rng(80 + seed);
        let d: Vec<KForm<f64>> = (0..3)
            .map(|_| random_typed_form(&mut r, p.structure(), 3, &SECTOR).unwrap())
            .collect();
        let rep = cubic_form_check(&p, &d[0], &d[1], &d[2], 1e-4).unwrap();
        assert!(rep.relative_error < 1e-3, "{rep:?}");
    }
}

#[test]
fn lattice_at_standard_point() {
    let fs = g2torus::algebra::standard_structure();
    let lat = JacobianLattice::new(&fs).unwrap();
    assert!((lat.covolume() - 4.0 / 3.0).abs() < 1e-12);
    for g in lat.generators() {
        assert!(lat.reduce(g).max_abs() < 1e-12);
        assert!(lat.deviation(g) < 1e-12);
    }
    let mut r = rng(90);
    let theta = random_form(&mut r, 4).scale(&5.0);
    let red = lat.reduce(&theta);
    assert!(lat.deviation(&(&theta - &red)) < 1e-9);
    assert!(lat.coordinates(&red).iter().all(|c| (0.0..1.0).contains(c)));
}

#[test]
fn lattice_covolume_scaling() {
    let mut exponents = Vec::new();
    for seed in 0..5 {
        let phi = random_positive_phi(&mut rng(100 + seed), 0.3);
        let base = JacobianLattice::new(&g2torus::algebra::metric_from_phi(&phi).unwrap())
            .unwrap()
            .covolume();
        let t: f64 = 1.5;
        let scaled =
            JacobianLattice::new(&g2torus::algebra::metric_from_phi(&phi.scale(&t)).unwrap())
                .unwrap()
                .covolume();
        exponents.push((scaled / base).ln() / t.ln());
    }
    for e in &exponents {
        assert!((e - 35.0 / 3.0).abs() < 1e-9, "{exponents:?}");
    }
    let _ = standard_phi::<f64>();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn compatibility_on_random_vectors(seed in any::<u64>()) {
        let fs = structure(seed);
        let mut r = rng(seed ^ 7);
        let (x, y) = (random_vector(&mut r), random_vector(&mut r));
        let jy = complex_structure(&fs, &y).unwrap();
        let jjy = complex_structure(&fs, &jy).unwrap();
        prop_assert!((jjy.to_vec().iter().zip(y.to_vec()).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max)) < 1e-12);
        let lhs = metric_j(&fs, &x, &y).unwrap();
        prop_assert!((lhs - omega(&fs, &x, &jy)).abs() < 1e-11 * lhs.abs().max(1.0));
        prop_assert!((omega(&fs, &x, &y) + omega(&fs, &y, &x)).abs() < 1e-13);
    }
}
