//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls into the library's numerical kernels.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Wide symmetric window used by the brute-force wrapped sums.
pub const WINDOW: i64 = 60;

/// Sum of `terms` smallest magnitude first.
pub fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    terms.into_iter().sum()
}

/// `sum_alpha exp(-kappa pi ((alpha + shift) d + n)^2 / d)` over a fixed wide window.
pub fn brute_g(d: i64, kappa: f64, n: i64, shift: f64) -> f64 {
    let df = d as f64;
    sorted_sum(
        (-WINDOW..=WINDOW)
            .map(|a| {
                let x = (a as f64 + shift) * df + n as f64;
                (-kappa * PI * x * x / df).exp()
            })
            .collect(),
    )
}

pub fn g(d: i64, kappa: f64, n: i64) -> f64 {
    brute_g(d, kappa, n, 0.0)
}

pub fn g_plus(d: i64, kappa: f64, n: i64) -> f64 {
    brute_g(d, kappa, n, 0.5)
}

pub fn s_of(d: i64) -> i64 {
    (d - 1) / 2
}

/// Centered representative of `n` mod `d`.
pub fn wrap(d: i64, n: i64) -> i64 {
    let s = s_of(d);
    (n + s).rem_euclid(d) - s
}

pub fn indices(d: i64) -> std::ops::RangeInclusive<i64> {
    let s = s_of(d);
    -s..=s
}

/// `out(k) = d^{-1/2} sum_n exp(2 pi i k n / d) v(n)`, indices `-s..=s`.
pub fn dft(d: i64, v: &[Complex64]) -> Vec<Complex64> {
    let df = d as f64;
    indices(d)
        .map(|k| {
            indices(d)
                .zip(v)
                .map(|(n, &x)| Complex64::from_polar(1.0, 2.0 * PI * (k * n) as f64 / df) * x)
                .sum::<Complex64>()
                / df.sqrt()
        })
        .collect()
}

pub fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_diff_re(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Physicists' Hermite polynomial by the three-term recurrence.
pub fn hermite(k: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * x);
    if k == 0 {
        return h0;
    }
    for j in 1..k {
        let h2 = 2.0 * x * h1 - 2.0 * j as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

/// `sum_alpha exp(-pi (alpha d + n)^2 / d) H_k(sqrt(2 pi / d) (alpha d + n))`.
pub fn hermite_gauss(d: i64, k: usize, n: i64) -> f64 {
    let df = d as f64;
    sorted_sum(
        (-WINDOW..=WINDOW)
            .map(|a| {
                let x = (a * d + n) as f64;
                (-PI * x * x / df).exp() * hermite(k, (2.0 * PI / df).sqrt() * x)
            })
            .collect(),
    )
}

/// `e^{i pi alpha beta / d} A^alpha B^beta v` with `A|n> = |n+1>`, `B|n> = e^{2 pi i n / d}|n>`.
pub fn displace(d: i64, alpha: i64, beta: i64, v: &[Complex64]) -> Vec<Complex64> {
    let df = d as f64;
    let s = s_of(d);
    let modulated: Vec<Complex64> = indices(d)
        .zip(v)
        .map(|(n, &x)| Complex64::from_polar(1.0, 2.0 * PI * (beta * n) as f64 / df) * x)
        .collect();
    let phase = Complex64::from_polar(1.0, PI * (alpha * beta) as f64 / df);
    indices(d)
        .map(|j| phase * modulated[(wrap(d, j - alpha) + s) as usize])
        .collect()
}

/// Deterministic pseudo-random normalized state.
pub fn random_state(d: i64, seed: u64) -> Vec<Complex64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}
