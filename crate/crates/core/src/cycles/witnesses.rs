//! A labelled library of critical and non-critical configurations for each
//! k ∈ {3, 4, 7}, used to cross-check the gradient test against the
//! closed-form characterisation.

use std::f64::consts::PI;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{basis, metric_from_phi, standard_phi, G2Structure, KForm};
use crate::error::Result;

use super::connection::U1Connection;
use super::ddt::{ddt_residual, DtMode};
use super::ext::ExtForm;
use super::functional::{critical_characterization, d_phi, whole_torus_point};
use super::isotropy::{calibrated_coordinate, integral_ddt_scale};
use super::path::CyclePoint;
use super::subtorus::AffineSubtorus;

#[derive(Clone, Debug)]
pub struct Witness {
    pub name: String,
    pub k: usize,
    pub fs: G2Structure<f64>,
    pub point: CyclePoint,
    pub critical: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessOutcome {
    pub name: String,
    pub k: usize,
    pub expected: bool,
    pub gradient_critical: bool,
    pub characterization_holds: bool,
    pub max_gradient: f64,
}

impl WitnessOutcome {
    pub fn consistent(&self) -> bool {
        self.gradient_critical == self.expected && self.characterization_holds == self.expected
    }
}

pub fn classify(w: &Witness) -> Result<WitnessOutcome> {
    let grad = d_phi(w.k, &w.point, &w.fs)?;
    let characterization = critical_characterization(w.k, &w.point, &w.fs)?;
    Ok(WitnessOutcome {
        name: w.name.clone(),
        k: w.k,
        expected: w.critical,
        gradient_critical: grad.critical,
        characterization_holds: characterization.holds,
        max_gradient: grad.max_abs,
    })
}

fn standard() -> G2Structure<f64> {
    metric_from_phi(&standard_phi::<f64>()).expect("standard structure")
}

fn scaled(c: f64) -> G2Structure<f64> {
    metric_from_phi(&standard_phi::<f64>().scale(&c)).expect("positive")
}

/// The seven index triples on which φ₀ has a term.
pub fn associative_triples() -> Vec<[usize; 3]> {
    let phi = standard_phi::<f64>();
    basis::masks(3)
        .iter()
        .copied()
        .filter(|&m| *phi.coeff(m) != 0.0)
        .map(|m| {
            let idx: Vec<usize> = basis::indices(m).collect();
            [idx[0], idx[1], idx[2]]
        })
        .collect()
}

fn complement(t: &[usize; 3]) -> Vec<usize> {
    (0..7).filter(|i| !t.contains(i)).collect()
}

fn witness(
    name: String,
    k: usize,
    fs: &G2Structure<f64>,
    torus: AffineSubtorus,
    conn: U1Connection,
    critical: bool,
) -> Witness {
    Witness {
        name,
        k,
        fs: fs.clone(),
        point: CyclePoint::new(torus, conn).expect("dimensions agree"),
        critical,
    }
}

/// Associative planes span(x, y, x × y) with small integer x, y and integral
/// cross product, at φ₀ (where g is the identity).
fn cross_product_planes(fs: &G2Structure<f64>, limit: usize) -> Vec<AffineSubtorus> {
    let mut out = Vec::new();
    for i in 0..7 {
        for j in 0..7 {
            for k in j + 1..7 {
                if i == j || i == k {
                    continue;
                }
                let mut x = [0i64; 7];
                x[i] = 1;
                let mut y = [0i64; 7];
                y[j] = 1;
                y[k] = 1;
                let xf: Vec<f64> = x.iter().map(|&c| c as f64).collect();
                let yf: Vec<f64> = y.iter().map(|&c| c as f64).collect();
                let z: Vec<f64> = (0..7)
                    .map(|l| {
                        let mut e = vec![0.0; 7];
                        e[l] = 1.0;
                        fs.phi().evaluate(&[xf.clone(), yf.clone(), e])
                    })
                    .collect();
                if z.iter().any(|c| (c - c.round()).abs() > 1e-12) || z.iter().all(|c| *c == 0.0) {
                    continue;
                }
                let zi: [i64; 7] = std::array::from_fn(|l| z[l].round() as i64);
                if let Ok(t) = AffineSubtorus::new(vec![x, y, zi], [0.0; 7]) {
                    out.push(t);
                    if out.len() == limit {
                        return out;
                    }
                }
            }
        }
    }
    out
}

pub fn associative_witnesses() -> Vec<Witness> {
    let fs = standard();
    let fs2 = scaled(2.0);
    let triples = associative_triples();
    let mut out = Vec::new();
    for t in &triples {
        let n = calibrated_coordinate(t, &fs).expect("coordinate");
        out.push(witness(
            format!("assoc e{t:?} flat"),
            3,
            &fs,
            n.clone(),
            U1Connection::flat(vec![0.0; 3]),
            true,
        ));
        let shifted = n.with_offset([0.3, 0.0, 0.1, 0.7, 0.0, 0.25, 0.5]);
        out.push(witness(
            format!("assoc e{t:?} holonomy"),
            3,
            &fs,
            shifted,
            U1Connection::flat(vec![0.3, 0.1, 0.7]),
            true,
        ));
        out.push(witness(
            format!("assoc e{t:?} curvature"),
            3,
            &fs,
            n,
            U1Connection::with_chern_form(vec![0.0; 3], &[(0, 1, 1)]).expect("integral"),
            false,
        ));
    }
    for t in triples.iter().take(3) {
        let n = calibrated_coordinate(t, &fs2).expect("coordinate");
        out.push(witness(
            format!("assoc e{t:?} at 2phi0"),
            3,
            &fs2,
            n,
            U1Connection::flat(vec![0.5; 3]),
            true,
        ));
    }
    for (i, n) in cross_product_planes(&fs, 6).into_iter().enumerate() {
        out.push(witness(
            format!("assoc cross-product plane {i}"),
            3,
            &fs,
            n,
            U1Connection::flat(vec![0.0; 3]),
            true,
        ));
    }
    for &m in basis::masks(3) {
        let idx: Vec<usize> = basis::indices(m).collect();
        if triples.iter().any(|t| t[..] == idx[..]) {
            continue;
        }
        let n = AffineSubtorus::coordinate(&idx).expect("coordinate");
        out.push(witness(
            format!("non-associative e{idx:?}"),
            3,
            &fs,
            n,
            U1Connection::flat(vec![0.0; 3]),
            false,
        ));
    }
    out
}

fn sd(c: f64, terms: [(usize, usize, usize, usize); 1], sign: f64) -> ExtForm {
    let (a, b, c2, d) = terms[0];
    ExtForm::basis(4, &[a, b])
        .axpy(sign, &ExtForm::basis(4, &[c2, d]))
        .scale(c)
}

pub fn coassociative_witnesses() -> Vec<Witness> {
    let fs = standard();
    let two_pi = 2.0 * PI;
    let self_dual = [
        sd(two_pi, [(0, 1, 2, 3)], 1.0),
        sd(two_pi, [(0, 2, 1, 3)], -1.0),
        sd(two_pi, [(0, 3, 1, 2)], 1.0),
    ];
    let anti_self_dual = sd(two_pi, [(0, 1, 2, 3)], -1.0);
    let mut out = Vec::new();
    for t in associative_triples() {
        let l = calibrated_coordinate(&complement(&t), &fs).expect("coordinate");
        out.push(witness(
            format!("coassoc complement of {t:?} flat"),
            4,
            &fs,
            l.clone(),
            U1Connection::flat(vec![0.0; 4]),
            true,
        ));
        for (i, f) in self_dual.iter().enumerate().take(2) {
            let conn = U1Connection::new(vec![0.1 * i as f64; 4], f.clone()).expect("integral");
            out.push(witness(
                format!("coassoc complement of {t:?} self-dual {i}"),
                4,
                &fs,
                l.clone(),
                conn,
                true,
            ));
        }
        let conn = U1Connection::new(vec![0.0; 4], anti_self_dual.clone()).expect("integral");
        out.push(witness(
            format!("coassoc complement of {t:?} anti-self-dual"),
            4,
            &fs,
            l.clone(),
            conn,
            false,
        ));
        let mixed = U1Connection::with_chern_form(vec![0.0; 4], &[(0, 1, 1)]).expect("integral");
        out.push(witness(
            format!("coassoc complement of {t:?} mixed"),
            4,
            &fs,
            l,
            mixed,
            false,
        ));
    }
    for t in associative_triples().iter().take(3) {
        let l = calibrated_coordinate(&complement(t), &fs)
            .expect("coordinate")
            .with_offset([0.2, 0.4, 0.0, 0.1, 0.0, 0.3, 0.0]);
        let conn =
            U1Connection::new(vec![0.25, 0.5, 0.0, 0.75], self_dual[2].clone()).expect("integral");
        out.push(witness(
            format!("coassoc complement of {t:?} self-dual 2 shifted"),
            4,
            &fs,
            l,
            conn,
            true,
        ));
    }
    let triples = associative_triples();
    let mut count = 0;
    for &m in basis::masks(4) {
        let idx: Vec<usize> = basis::indices(m).collect();
        if triples.iter().any(|t| complement(t) == idx) {
            continue;
        }
        let l = AffineSubtorus::coordinate(&idx).expect("coordinate");
        out.push(witness(
            format!("non-coassociative e{idx:?}"),
            4,
            &fs,
            l,
            U1Connection::flat(vec![0.0; 4]),
            false,
        ));
        count += 1;
        if count == 10 {
            break;
        }
    }
    out
}

/// Terms of e_i⌟φ₀ as signed basis 2-forms.
fn contraction_terms(i: usize) -> Vec<KForm<f64>> {
    let c = standard_phi::<f64>().interior_basis(i).expect("degree 3");
    basis::masks(2)
        .iter()
        .copied()
        .filter(|&m| *c.coeff(m) != 0.0)
        .map(|m| KForm::from_fn(2, |x| if x == m { *c.coeff(m) } else { 0.0 }))
        .collect()
}

pub fn whole_torus_witnesses() -> Vec<Witness> {
    let fs = standard();
    let two_pi = 2.0 * PI;
    let mut out = Vec::new();
    let whole =
        |fs: &G2Structure<f64>, name: String, h: Vec<f64>, f: &KForm<f64>, critical: bool| {
            Witness {
                name,
                k: 7,
                fs: fs.clone(),
                point: whole_torus_point(fs, h, f).expect("whole torus"),
                critical,
            }
        };
    for j in 0..5 {
        let h: Vec<f64> = (0..7).map(|a| 0.1 * ((a + j) % 5) as f64).collect();
        out.push(whole(
            &fs,
            format!("flat holonomy {j}"),
            h,
            &KForm::zero(2),
            true,
        ));
    }
    for i in 0..7 {
        let terms = contraction_terms(i);
        for a in 0..terms.len() {
            for b in a + 1..terms.len() {
                let f = (&terms[a] - &terms[b]).scale(&two_pi);
                out.push(whole(
                    &fs,
                    format!("ordinary DT e{i} terms {a}-{b}"),
                    vec![0.0; 7],
                    &f,
                    true,
                ));
            }
        }
    }
    let fs_c = scaled(integral_ddt_scale());
    for i in 0..7 {
        let n = standard_phi::<f64>()
            .interior_basis(i)
            .expect("degree 3")
            .scale(&two_pi);
        let f = [n.clone(), -n.clone()].into_iter().find(|f| {
            ddt_residual(f, &fs_c, DtMode::Deformed)
                .map(|r| r.max_abs() < 1e-10)
                .unwrap_or(false)
        });
        if let Some(f) = f {
            out.push(whole(
                &fs_c,
                format!("integral deformed DT e{i}"),
                vec![0.2; 7],
                &f,
                true,
            ));
        }
        out.push(whole(
            &fs,
            format!("contraction e{i} at phi0"),
            vec![0.0; 7],
            &n,
            false,
        ));
    }
    for &m in basis::masks(2) {
        let f = KForm::from_fn(2, |x| if x == m { two_pi } else { 0.0 });
        out.push(whole(
            &fs,
            format!("single term {}", basis::label(m)),
            vec![0.0; 7],
            &f,
            false,
        ));
    }
    let mut rng = StdRng::seed_from_u64(7);
    for j in 0..5 {
        let f = KForm::from_fn(2, |_| two_pi * rng.random_range(-2i32..=2) as f64);
        if ddt_residual(&f, &fs, DtMode::Deformed)
            .map(|r| r.max_abs() > 1e-3)
            .unwrap_or(false)
        {
            out.push(whole(
                &fs,
                format!("random integral {j}"),
                vec![0.0; 7],
                &f,
                false,
            ));
        }
    }
    out
}

pub fn witness_library(k: usize) -> Vec<Witness> {
    match k {
        3 => associative_witnesses(),
        4 => coassociative_witnesses(),
        7 => whole_torus_witnesses(),
        _ => Vec::new(),
    }
}
