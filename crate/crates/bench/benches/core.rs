use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use g2torus::algebra::{metric_from_phi, standard_phi};
use g2torus::cycles::isotropy::{integral_ddt_curvature, integral_ddt_scale};
use g2torus::cycles::{phi_functional, whole_torus_point, CyclePath, CyclePoint};
use g2torus::moduli::{hessian_g, yukawa, FlatChart};
use g2torus::{AffineSubtorus, U1Connection};
use g2torus_bench::{perturbed_phi, perturbed_structure};

fn structure(c: &mut Criterion) {
    let phi = perturbed_phi();
    c.bench_function("metric_from_phi", |b| {
        b.iter(|| metric_from_phi(black_box(&phi)).unwrap())
    });
}

fn moduli(c: &mut Criterion) {
    let chart = FlatChart::standard();
    let p = chart.point_of_form(&perturbed_phi()).unwrap();
    c.bench_function("hessian_g", |b| {
        b.iter(|| hessian_g(&chart, black_box(&p)).unwrap())
    });

    let fs = perturbed_structure();
    let local = FlatChart::new(fs.clone());
    let (e1, e2) = (local.basis_form(10).clone(), local.basis_form(20).clone());
    c.bench_function("yukawa", |b| {
        b.iter(|| yukawa(&fs, fs.phi(), black_box(&e1), black_box(&e2)).unwrap())
    });
}

fn functional(c: &mut Criterion) {
    let fs = perturbed_structure();
    let conn = U1Connection::with_chern_form(vec![0.1, 0.2, 0.3], &[(0, 1, 1)]).unwrap();
    let a = CyclePoint::new(AffineSubtorus::coordinate(&[0, 1, 3]).unwrap(), conn).unwrap();
    let path = CyclePath::straight(
        a.clone(),
        a.translated(&[0.3, 0.0, 0.7, 0.0, -0.2, 0.4, 0.1]),
    )
    .unwrap();
    c.bench_function("phi_functional_k3", |b| {
        b.iter(|| phi_functional(3, black_box(&path), &fs).unwrap())
    });

    let fs = metric_from_phi(&standard_phi::<f64>().scale(&integral_ddt_scale())).unwrap();
    let p = whole_torus_point(&fs, vec![0.1; 7], &integral_ddt_curvature()).unwrap();
    let path = CyclePath::straight(
        p.clone(),
        p.shift_holonomy(&[0.3, 0.1, 0.0, 0.0, 0.2, 0.0, 0.0]),
    )
    .unwrap();
    c.bench_function("phi_functional_k7", |b| {
        b.iter(|| phi_functional(7, black_box(&path), &fs).unwrap())
    });
}

criterion_group!(benches, structure, moduli, functional);
criterion_main!(benches);
