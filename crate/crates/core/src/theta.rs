//! Wrapped Gaussian sums and Jacobi theta kernels on the imaginary axis.
//!
//! The finite Gaussian on `Z_d` is the periodization of `exp(-kappa x^2 / 2)`
//! sampled at `x = sqrt(2 pi / d) (alpha d + n)`:
//!
//! ```text
//! g_kappa(n)  = sum_alpha exp(-kappa pi (alpha d + n)^2 / d)
//! g+_kappa(n) = sum_alpha exp(-kappa pi ((alpha + 1/2) d + n)^2 / d)
//! ```
//!
//! All series here are truncated to a symmetric window `[-A, A]`, where `A`
//! is the smallest integer for which the first excluded term at the worst
//! index `|n| = s` falls below `term_tol` times the partial sum at `n = 0`.
//! Terms are accumulated from the outermost pair inward, and each pair is
//! added as `(t(+a) + t(-a))`, so `values(-n) == values(n)` holds bit for bit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Dimension;

/// Default series truncation threshold.
pub const DEFAULT_TERM_TOL: f64 = 1e-18;

/// Hard cap on the truncation window; only reachable for absurdly small `kappa`.
const MAX_WINDOW: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaKind {
    Theta2,
    Theta3,
    Theta4,
}

/// A finite Gaussian `g_kappa` (or its half-period translate `g+_kappa`)
/// tabulated over `{-s..s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGaussian {
    dim: Dimension,
    kappa: f64,
    shifted: bool,
    values: Vec<f64>,
    term_tol: f64,
    window: i64,
}

impl FiniteGaussian {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    pub fn term_tol(&self) -> f64 {
        self.term_tol
    }

    /// Half-width `A` of the alpha window actually summed.
    pub fn window(&self) -> i64 {
        self.window
    }

    /// Values in storage order `n = -s..=s`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at any integer `n`, reduced mod `d`.
    #[inline]
    pub fn at(&self, n: i64) -> f64 {
        self.values[self.dim.slot(n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::param("kappa", kappa, "must be positive and finite"));
    }
    Ok(())
}

fn check_term_tol(term_tol: f64) -> Result<()> {
    if !(term_tol > 0.0 && term_tol < 1.0) {
        return Err(Error::param("term_tol", term_tol, "must lie in (0, 1)"));
    }
    Ok(())
}

/// Gaussian term `exp(-kappa pi x^2 / d)` with `x = twice_x / 2`.
///
/// `twice_x` is an integer so that the square is exact in f64.
#[inline]
fn gauss_term(kappa: f64, d: f64, twice_x: i64) -> f64 {
    let sq = (twice_x as f64) * (twice_x as f64);
    (-(kappa * PI) * (sq / (4.0 * d))).exp()
}

/// Doubled offsets `2 alpha + h` for the `a`-th symmetric pair.
#[inline]
fn pair_offsets(a: i64, half: i64) -> (i64, i64) {
    let o = 2 * a + half;
    (o, -o)
}

/// Smallest window `A` satisfying the truncation rule for a wrapped Gaussian
/// with offset `half` (0 for `g`, 1 for `g+`). A first excluded term that
/// underflows to zero also ends the search.
fn gaussian_window(dim: Dimension, kappa: f64, half: i64, term_tol: f64) -> Result<i64> {
    let d = dim.d() as i64;
    let df = d as f64;
    let s = dim.s();
    let mut a = 0i64;
    let mut partial_at_zero = if half == 0 {
        gauss_term(kappa, df, 0)
    } else {
        2.0 * gauss_term(kappa, df, d)
    };
    loop {
        // first excluded pair is a + 1; the worst index leans toward the origin
        let (o, _) = pair_offsets(a + 1, half);
        let worst = gauss_term(kappa, df, o * d - 2 * s);
        if worst == 0.0 || worst < term_tol * partial_at_zero {
            return Ok(a);
        }
        a += 1;
        if a > MAX_WINDOW {
            return Err(Error::param(
                "kappa",
                kappa,
                "too small for a convergent truncation window",
            ));
        }
        let (p, m) = pair_offsets(a, half);
        partial_at_zero += gauss_term(kappa, df, p * d) + gauss_term(kappa, df, m * d);
    }
}

fn wrapped_gaussian(
    dim: Dimension,
    kappa: f64,
    half: i64,
    term_tol: f64,
) -> Result<(Vec<f64>, i64)> {
    check_kappa(kappa)?;
    check_term_tol(term_tol)?;
    let window = gaussian_window(dim, kappa, half, term_tol)?;
    let d = dim.d() as i64;
    let df = d as f64;
    let values = dim
        .indices()
        .map(|n| {
            let mut acc = 0.0;
            let first = if half == 0 { 1 } else { 0 };
            for a in (first..=window).rev() {
                let (p, m) = pair_offsets(a, half);
                acc += gauss_term(kappa, df, p * d + 2 * n) + gauss_term(kappa, df, m * d + 2 * n);
            }
            if half == 0 {
                acc += gauss_term(kappa, df, 2 * n);
            }
            acc
        })
        .collect();
    Ok((values, window))
}

/// Finite Gaussian `g_kappa(n) = sum_alpha exp(-kappa pi (alpha d + n)^2 / d)`.
pub fn finite_gaussian(dim: Dimension, kappa: f64, term_tol: f64) -> Result<FiniteGaussian> {
    let (values, window) = wrapped_gaussian(dim, kappa, 0, term_tol)?;
    Ok(FiniteGaussian {
        dim,
        kappa,
        shifted: false,
        values,
        term_tol,
        window,
    })
}

/// Half-period translate `g+_kappa(n) = sum_alpha exp(-kappa pi ((alpha + 1/2) d + n)^2 / d)`.
///
/// Its window runs over the half-integers `alpha + 1/2` in `[-(A + 1/2), A + 1/2]`.
pub fn shifted_finite_gaussian(
    dim: Dimension,
    kappa: f64,
    term_tol: f64,
) -> Result<FiniteGaussian> {
    let (values, window) = wrapped_gaussian(dim, kappa, 1, term_tol)?;
    Ok(FiniteGaussian {
        dim,
        kappa,
        shifted: true,
        values,
        term_tol,
        window,
    })
}

/// `sum_alpha (-1)^alpha exp(-kappa pi (alpha d + 2n)^2 / d)` for `n` in `{-s..s}`.
///
/// Equals `g_{4 kappa}(n) - g+_{4 kappa}(n)`. Even and odd alpha are
/// accumulated separately and subtracted once at the end.
pub fn alternating_wrapped_sum(dim: Dimension, kappa: f64, term_tol: f64) -> Result<Vec<f64>> {
    check_kappa(kappa)?;
    check_term_tol(term_tol)?;
    // the shift 2n spans up to 2s = d - 1, so reuse the window of a doubled lattice offset
    let d = dim.d() as i64;
    let df = d as f64;
    let mut window = 0i64;
    loop {
        let worst = gauss_term(kappa, df, 2 * ((window + 1) * d - 2 * dim.s()));
        if worst < term_tol || window > MAX_WINDOW {
            break;
        }
        window += 1;
    }
    Ok(dim
        .indices()
        .map(|n| {
            let mut even = 0.0;
            let mut odd = 0.0;
            for a in (1..=window).rev() {
                let pair = gauss_term(kappa, df, 2 * (a * d + 2 * n))
                    + gauss_term(kappa, df, 2 * (-a * d + 2 * n));
                if a % 2 == 0 {
                    even += pair;
                } else {
                    odd += pair;
                }
            }
            even += gauss_term(kappa, df, 4 * n);
            even - odd
        })
        .collect())
}

/// The `d`-periodic function `G_kappa(x) = sum_alpha exp(-kappa pi (alpha d + x)^2 / d)` at real `x`.
pub fn periodic_gaussian(dim: Dimension, kappa: f64, x: f64, term_tol: f64) -> Result<f64> {
    check_kappa(kappa)?;
    check_term_tol(term_tol)?;
    let df = dim.d() as f64;
    let term = |alpha: i64| (-(kappa * PI) * (alpha as f64 * df + x).powi(2) / df).exp();
    let center = -(x / df).round() as i64;
    let mut terms = vec![term(center)];
    let mut a = 1;
    loop {
        let pair = term(center + a) + term(center - a);
        terms.push(pair);
        if pair < term_tol * terms[0] || a > MAX_WINDOW {
            break;
        }
        a += 1;
    }
    Ok(terms.iter().rev().sum())
}

/// Jacobi theta function `theta_kind(z, i t)` for real `z` and `t > 0`.
///
/// Only the real cosine series is summed; the sine parts cancel pairwise.
pub fn theta(kind: ThetaKind, z: f64, t: f64, term_tol: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::param("t", t, "must be positive and finite"));
    }
    check_term_tol(term_tol)?;
    // (frequency, weight) for the k-th symmetric pair, k >= 0
    let pair = |k: i64| -> (f64, f64) {
        match kind {
            ThetaKind::Theta3 => (k as f64, if k == 0 { 1.0 } else { 2.0 }),
            ThetaKind::Theta4 => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                (k as f64, if k == 0 { 1.0 } else { 2.0 * sign })
            }
            ThetaKind::Theta2 => (k as f64 + 0.5, 2.0),
        }
    };
    let mut terms = Vec::new();
    let mut magnitude = 0.0;
    let mut k = 0i64;
    loop {
        let (freq, weight) = pair(k);
        let envelope = (-PI * t * freq * freq).exp();
        if k > 0 && envelope * weight.abs() < term_tol * magnitude {
            break;
        }
        magnitude += envelope * weight.abs();
        terms.push(weight * envelope * (2.0 * PI * freq * z).cos());
        k += 1;
        if k > MAX_WINDOW {
            return Err(Error::param("t", t, "too small for a convergent truncation window"));
        }
    }
    Ok(terms.iter().rev().sum())
}

/// Restriction of the continuous Gaussian to the lattice, `exp(-kappa pi n^2 / d)`.
pub fn naive_gaussian(dim: Dimension, kappa: f64) -> Result<Vec<f64>> {
    check_kappa(kappa)?;
    let df = dim.d() as f64;
    Ok(dim.indices().map(|n| gauss_term(kappa, df, 2 * n)).collect())
}

/// Periodizes `sample` onto `Z_d`: `Phi(n) = sum_alpha sample(sqrt(2 pi / d) (alpha d + n))`.
///
/// The window grows until every excluded term is below `term_tol` times the
/// largest partial value. Convergence of the series is the caller's contract.
pub fn periodize<F>(sample: F, dim: Dimension, term_tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    check_term_tol(term_tol)?;
    let d = dim.d() as i64;
    let h = dim.spacing();
    let at = |alpha: i64, n: i64| sample(h * (alpha * d + n) as f64);

    let mut window = 0i64;
    let mut partial: Vec<f64> = dim.indices().map(|n| at(0, n)).collect();
    loop {
        let scale = partial.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let excluded = dim
            .indices()
            .map(|n| at(window + 1, n).abs().max(at(-window - 1, n).abs()))
            .fold(0.0f64, f64::max);
        if excluded == 0.0 || excluded < term_tol * scale || window >= MAX_WINDOW {
            break;
        }
        window += 1;
        for (slot, n) in partial.iter_mut().zip(dim.indices()) {
            *slot += at(window, n) + at(-window, n);
        }
    }

    Ok(dim
        .indices()
        .map(|n| {
            let mut acc = 0.0;
            for a in (1..=window).rev() {
                acc += at(a, n) + at(-a, n);
            }
            acc + at(0, n)
        })
        .collect())
}
