#![allow(dead_code)]

use g2torus::algebra::basis::DIM;
use g2torus::linalg::Mat;
use g2torus::{KForm, Sym2Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_form(rng: &mut impl Rng, degree: usize) -> KForm<f64> {
    KForm::from_fn(degree, |_| rng.random_range(-1.0..1.0))
}

pub fn random_sym(rng: &mut impl Rng) -> Sym2Tensor<f64> {
    Sym2Tensor::from_fn(|_, _| rng.random_range(-1.0..1.0))
}

pub fn random_spd(rng: &mut impl Rng) -> Sym2Tensor<f64> {
    let a = Mat::from_fn(DIM, DIM, |_, _| rng.random_range(-1.0..1.0));
    let m = a
        .transpose()
        .mul(&a)
        .add(&Mat::<f64>::identity(DIM).scale(&0.5));
    Sym2Tensor::symmetrize(&m)
}

/// Near-identity matrix with |det| in roughly [0.5, 2].
pub fn random_gl(rng: &mut impl Rng, negative: bool) -> Mat<f64> {
    loop {
        let mut a = Mat::from_fn(DIM, DIM, |i, j| {
            (i == j) as u8 as f64 + rng.random_range(-0.25..0.25)
        });
        if negative {
            for i in 0..DIM {
                a[(i, 0)] = -a[(i, 0)];
            }
        }
        let d = a.det().abs();
        if (0.5..=2.0).contains(&d) {
            return a;
        }
    }
}

/// Antisymmetrised tensor product, computed by brute force over all index
/// tuples: (a∧b)(v₁…v_{p+q}) = Σ_σ sgn σ a(v_σ…)b(v_σ…)/(p! q!).
pub fn brute_wedge(a: &KForm<f64>, b: &KForm<f64>) -> KForm<f64> {
    let (p, q) = (a.degree(), b.degree());
    let n = p + q;
    let perms = permutations(n);
    let fact = |k: usize| (1..=k).product::<usize>() as f64;
    KForm::from_fn(n, |mask| {
        let idx: Vec<usize> = g2torus::algebra::basis::indices(mask).collect();
        let mut acc = 0.0;
        for perm in &perms {
            let sgn = perm_sign(perm);
            let ia: Vec<usize> = perm[..p].iter().map(|&s| idx[s]).collect();
            let ib: Vec<usize> = perm[p..].iter().map(|&s| idx[s]).collect();
            acc += sgn * a.component(&ia) * b.component(&ib);
        }
        acc / (fact(p) * fact(q))
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn perm_sign(p: &[usize]) -> f64 {
    let mut s = 1.0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn unit(i: usize) -> Vec<f64> {
    let mut v = vec![0.0; DIM];
    v[i] = 1.0;
    v
}
