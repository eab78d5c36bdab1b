//! Discrete Wigner function of a finite Gaussian on `Z_d x Z_d`.
//!
//! ```text
//! W(n, m) = (1/d) sum_k exp(4 pi i m k / d) g(n - k) g(n + k)
//! ```
//!
//! with `k` over `{-s..s}` and `n +- k` reduced mod `d`. The same grid is
//! available as a sum of products of finite Gaussians, and for `kappa = 1`
//! (up to a constant) as a sum of products of theta functions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Dimension;
use crate::theta::{self, ThetaKind};

/// Bound on the discarded imaginary part of the defining sum, relative to `max|W|`.
pub const REALNESS_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum WignerSource {
    Definition,
    ClosedForm,
    ThetaForm,
}

/// `W(n, m)` with rows `n = -s..=s` and columns `m = -s..=s`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    dim: Dimension,
    kappa: f64,
    values: DMatrix<f64>,
    source: WignerSource,
    imag_residue: f64,
    scale: Option<f64>,
}

impl WignerGrid {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn source(&self) -> WignerSource {
        self.source
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn at(&self, n: i64, m: i64) -> f64 {
        self.values[(self.dim.slot(n), self.dim.slot(m))]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.amax()
    }

    /// Largest discarded imaginary part (definition only, zero otherwise).
    pub fn imag_residue(&self) -> f64 {
        self.imag_residue
    }

    /// Fitted constant `c` with `W' = c W` (theta form only).
    pub fn scale(&self) -> Option<f64> {
        self.scale
    }

    /// `max |W(n, m) - W(-n, -m)|`.
    pub fn inversion_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for n in self.dim.indices() {
            for m in self.dim.indices() {
                worst = worst.max((self.at(n, m) - self.at(-n, -m)).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &WignerGrid) -> Result<f64> {
        crate::hilbert::same_dim(self.dim, other.dim)?;
        Ok((&self.values - &other.values).amax())
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::param("kappa", kappa, "must be positive and finite"));
    }
    Ok(())
}

pub fn wigner_definition(dim: Dimension, kappa: f64) -> Result<WignerGrid> {
    wigner_definition_with(dim, kappa, theta::DEFAULT_TERM_TOL)
}

pub fn wigner_definition_with(dim: Dimension, kappa: f64, term_tol: f64) -> Result<WignerGrid> {
    check_kappa(kappa)?;
    let g = theta::finite_gaussian(dim, kappa, term_tol)?;
    let d = dim.d();
    let di = d as i64;
    let roots = dim.roots_of_unity();
    let mut values = DMatrix::zeros(d, d);
    let mut imag_residue = 0.0f64;
    for n in dim.indices() {
        for m in dim.indices() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in dim.indices() {
                let phase = roots[(2 * m * k).rem_euclid(di) as usize];
                acc += phase * (g.at(n - k) * g.at(n + k));
            }
            acc /= d as f64;
            values[(dim.offset(n), dim.offset(m))] = acc.re;
            imag_residue = imag_residue.max(acc.im.abs());
        }
    }
    let top = values.amax();
    if imag_residue > REALNESS_TOL * top {
        return Err(Error::NumericalFailure {
            what: "wigner definition imaginary residue".into(),
            residual: imag_residue,
        });
    }
    Ok(WignerGrid {
        dim,
        kappa,
        values,
        source: WignerSource::Definition,
        imag_residue,
        scale: None,
    })
}

pub fn wigner_closed_form(dim: Dimension, kappa: f64) -> Result<WignerGrid> {
    wigner_closed_form_with(dim, kappa, theta::DEFAULT_TERM_TOL)
}

/// `(2 kappa d)^(-1/2) [g_{2k}(n) (g_{2/k}(m) + g+_{2/k}(m)) + g+_{2k}(n) (g_{2/k}(m) - g+_{2/k}(m))]`.
pub fn wigner_closed_form_with(dim: Dimension, kappa: f64, term_tol: f64) -> Result<WignerGrid> {
    check_kappa(kappa)?;
    let a = theta::finite_gaussian(dim, 2.0 * kappa, term_tol)?;
    let ap = theta::shifted_finite_gaussian(dim, 2.0 * kappa, term_tol)?;
    let b = theta::finite_gaussian(dim, 2.0 / kappa, term_tol)?;
    let bp = theta::shifted_finite_gaussian(dim, 2.0 / kappa, term_tol)?;
    let d = dim.d();
    let norm = 1.0 / (2.0 * kappa * d as f64).sqrt();
    let values = DMatrix::from_fn(d, d, |r, c| {
        let (an, apn, bm, bpm) = (a.values()[r], ap.values()[r], b.values()[c], bp.values()[c]);
        norm * (an * (bm + bpm) + apn * (bm - bpm))
    });
    Ok(WignerGrid {
        dim,
        kappa,
        values,
        source: WignerSource::ClosedForm,
        imag_residue: 0.0,
        scale: None,
    })
}

/// Unnormalized theta-function form for `kappa = 1`:
/// `theta3(n/d, 1/(2d)) theta3(2m/d, 2/d) + theta4(n/d, 1/(2d)) theta2(2m/d, 2/d)`.
///
/// The returned grid carries the least-squares constant `c` with
/// `W' ~= c W_definition` in [`WignerGrid::scale`].
pub fn wigner_theta_form(dim: Dimension) -> Result<WignerGrid> {
    wigner_theta_form_with(dim, theta::DEFAULT_TERM_TOL)
}

pub fn wigner_theta_form_with(dim: Dimension, term_tol: f64) -> Result<WignerGrid> {
    let d = dim.d();
    let df = d as f64;
    let mut rows = Vec::with_capacity(d);
    for n in dim.indices() {
        let z = n as f64 / df;
        rows.push((
            theta::theta(ThetaKind::Theta3, z, 0.5 / df, term_tol)?,
            theta::theta(ThetaKind::Theta4, z, 0.5 / df, term_tol)?,
        ));
    }
    let mut cols = Vec::with_capacity(d);
    for m in dim.indices() {
        let z = 2.0 * m as f64 / df;
        cols.push((
            theta::theta(ThetaKind::Theta3, z, 2.0 / df, term_tol)?,
            theta::theta(ThetaKind::Theta2, z, 2.0 / df, term_tol)?,
        ));
    }
    let values = DMatrix::from_fn(d, d, |r, c| rows[r].0 * cols[c].0 + rows[r].1 * cols[c].1);
    let reference = wigner_definition_with(dim, 1.0, term_tol)?;
    let num: f64 = values.iter().zip(reference.values.iter()).map(|(a, b)| a * b).sum();
    let den: f64 = reference.values.iter().map(|b| b * b).sum();
    Ok(WignerGrid {
        dim,
        kappa: 1.0,
        values,
        source: WignerSource::ThetaForm,
        imag_residue: 0.0,
        scale: Some(num / den),
    })
}

/// Proportionality of the theta form to the defining sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaFit {
    /// Least-squares constant.
    pub c: f64,
    /// `W'(0,0) / W(0,0)`.
    pub c_origin: f64,
    /// `max |W' - c W| / max |W'|`.
    pub max_deviation: f64,
}

pub fn theta_form_fit(dim: Dimension) -> Result<ThetaFit> {
    let t = wigner_theta_form(dim)?;
    let w = wigner_definition(dim, 1.0)?;
    let c = t.scale.expect("theta form carries its scale");
    let max_deviation = (&t.values - &w.values * c).amax() / t.values.amax();
    Ok(ThetaFit {
        c,
        c_origin: t.at(0, 0) / w.at(0, 0),
        max_deviation,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marginals {
    /// `sum_m W(n, m)`, indexed by `n = -s..=s`.
    pub pos: Vec<f64>,
    /// `sum_n W(n, m)`, indexed by `m = -s..=s`.
    pub mom: Vec<f64>,
}

pub fn wigner_marginals(w: &WignerGrid) -> Marginals {
    let v = &w.values;
    Marginals {
        pos: v.row_iter().map(|r| r.sum()).collect(),
        mom: v.column_iter().map(|c| c.sum()).collect(),
    }
}

/// Values at the origin, the two edge midpoints and the corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakSummary {
    pub origin: f64,
    pub edge_m: f64,
    pub edge_n: f64,
    pub corner: f64,
}

pub fn peak_summary(w: &WignerGrid) -> PeakSummary {
    let s = w.dim.s();
    PeakSummary {
        origin: w.at(0, 0),
        edge_m: w.at(0, s),
        edge_n: w.at(s, 0),
        corner: w.at(s, s),
    }
}
