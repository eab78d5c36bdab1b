//! States and operators on the `d`-dimensional Hilbert space `C^d`.
//!
//! Basis vectors `|n>` are labelled by `n` in `{-s..s}`; matrix row/column
//! `n + s` corresponds to `|n>`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Dimension;
use crate::theta::{self, FiniteGaussian};

/// Largest Hermite order accepted by [`mehta_eigenvector`].
pub const MAX_MEHTA_ORDER: usize = 6;

const HERMITIAN_TOL: f64 = 1e-13;
const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Hermitian,
    Unitary,
    General,
}

/// Dense `d x d` complex matrix tagged with its structural kind.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: Dimension,
    entries: DMatrix<Complex64>,
    kind: OperatorKind,
}

impl OperatorMatrix {
    /// Wraps `entries`, verifying the claimed kind to working precision.
    pub fn new(dim: Dimension, entries: DMatrix<Complex64>, kind: OperatorKind) -> Result<Self> {
        let d = dim.d();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: entries.nrows().max(entries.ncols()),
            });
        }
        let op = OperatorMatrix { dim, entries, kind };
        match kind {
            OperatorKind::Hermitian => {
                let defect = op.hermiticity_defect();
                if defect > HERMITIAN_TOL * op.max_abs() {
                    return Err(Error::NumericalFailure {
                        what: "hermiticity check".into(),
                        residual: defect,
                    });
                }
            }
            OperatorKind::Unitary => {
                let defect = op.unitarity_defect();
                if defect > UNITARY_TOL {
                    return Err(Error::NumericalFailure {
                        what: "unitarity check".into(),
                        residual: defect,
                    });
                }
            }
            OperatorKind::General => {}
        }
        Ok(op)
    }

    /// Hermitian part `(M + M^dagger) / 2`, tagged hermitian.
    pub fn hermitian_part(dim: Dimension, entries: DMatrix<Complex64>) -> Result<Self> {
        let sym = (&entries + entries.adjoint()).unscale(2.0);
        OperatorMatrix::new(dim, sym, OperatorKind::Hermitian)
    }

    pub(crate) fn from_parts(dim: Dimension, entries: DMatrix<Complex64>, kind: OperatorKind) -> Self {
        OperatorMatrix { dim, entries, kind }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Entry `<j| M |l>` for centered labels `j, l`.
    pub fn get(&self, j: i64, l: i64) -> Complex64 {
        self.entries[(self.dim.slot(j), self.dim.slot(l))]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim.d();
        max_abs(&(self.entries.adjoint() * &self.entries - DMatrix::identity(d, d)))
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            dim: self.dim,
            entries: self.entries.adjoint(),
            kind: self.kind,
        }
    }

    /// Matrix product, tagged general.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        same_dim(self.dim, rhs.dim)?;
        Ok(OperatorMatrix::from_parts(
            self.dim,
            &self.entries * &rhs.entries,
            OperatorKind::General,
        ))
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        same_dim(self.dim, state.dim)?;
        Ok(StateVector {
            dim: self.dim,
            amps: &self.entries * &state.amps,
        })
    }

    /// Largest entrywise distance to another operator.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        max_abs(&(&self.entries - &other.entries))
    }
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub(crate) fn same_dim(a: Dimension, b: Dimension) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            left: a.d(),
            right: b.d(),
        });
    }
    Ok(())
}

/// Complex amplitude vector `psi(n)`, `n` in `{-s..s}`.
///
/// Constructors never normalize implicitly; use [`StateVector::normalized`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dim: Dimension,
    amps: DVector<Complex64>,
}

impl StateVector {
    pub fn from_amps(dim: Dimension, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != dim.d() {
            return Err(Error::DimensionMismatch {
                left: dim.d(),
                right: amps.len(),
            });
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::param("amps", f64::NAN, "amplitudes must be finite"));
        }
        Ok(StateVector {
            dim,
            amps: DVector::from_vec(amps),
        })
    }

    pub fn from_real(dim: Dimension, values: &[f64]) -> Result<Self> {
        StateVector::from_amps(dim, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_gaussian(g: &FiniteGaussian) -> Self {
        StateVector::from_real(g.dim(), g.values()).expect("gaussian has length d")
    }

    /// Position eigenvector `|n>`.
    pub fn delta(dim: Dimension, n: i64) -> Self {
        let mut amps = DVector::zeros(dim.d());
        amps[dim.slot(n)] = Complex64::new(1.0, 0.0);
        StateVector { dim, amps }
    }

    pub(crate) fn from_dvector(dim: Dimension, amps: DVector<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), dim.d());
        StateVector { dim, amps }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn amps(&self) -> &DVector<Complex64> {
        &self.amps
    }

    /// Amplitude at any integer `n`, reduced mod `d`.
    pub fn at(&self, n: i64) -> Complex64 {
        self.amps[self.dim.slot(n)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let norm = self.norm();
        if !(norm > 0.0) {
            return Err(Error::DegenerateVector { norm });
        }
        Ok(StateVector {
            dim: self.dim,
            amps: self.amps.unscale(norm),
        })
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        same_dim(self.dim, other.dim)?;
        Ok(self.amps.dotc(&other.amps))
    }

    pub fn scale(&self, factor: Complex64) -> StateVector {
        StateVector {
            dim: self.dim,
            amps: self.amps.map(|z| z * factor),
        }
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Real parts in storage order.
    pub fn real_parts(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.re).collect()
    }
}

/// A point `(alpha, beta)` of the finite phase space `Z_d x Z_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoint {
    alpha: i64,
    beta: i64,
}

impl PhasePoint {
    pub fn new(dim: Dimension, alpha: i64, beta: i64) -> Result<Self> {
        if !dim.contains(alpha) || !dim.contains(beta) {
            return Err(Error::OutOfRange {
                alpha,
                beta,
                s: dim.s(),
            });
        }
        Ok(PhasePoint { alpha, beta })
    }

    pub fn alpha(self) -> i64 {
        self.alpha
    }

    pub fn beta(self) -> i64 {
        self.beta
    }
}

/// Unitary finite Fourier transform `F_{n'n} = exp(2 pi i n' n / d) / sqrt(d)`.
pub fn fourier_matrix(dim: Dimension) -> OperatorMatrix {
    let d = dim.d();
    let roots = dim.roots_of_unity();
    let norm = (d as f64).sqrt();
    let labels: Vec<i64> = dim.indices().collect();
    let entries = DMatrix::from_fn(d, d, |r, c| {
        let j = (labels[r] * labels[c]).rem_euclid(d as i64) as usize;
        roots[j].unscale(norm)
    });
    OperatorMatrix::from_parts(dim, entries, OperatorKind::Unitary)
}

/// Applies `F` (or `F^dagger` when `inverse`) to a state.
pub fn fourier_apply(state: &StateVector, inverse: bool) -> StateVector {
    let dim = state.dim();
    let d = dim.d() as i64;
    let roots = dim.roots_of_unity();
    let norm = (d as f64).sqrt();
    let amps = dim
        .indices()
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in dim.indices() {
                let w = roots[(k * n).rem_euclid(d) as usize];
                let w = if inverse { w.conj() } else { w };
                acc += w * state.at(n);
            }
            acc.unscale(norm)
        })
        .collect();
    StateVector::from_dvector(dim, DVector::from_vec(amps))
}

/// Position operator `Q = sqrt(2 pi / d) sum_n n |n><n|`.
pub fn position_operator(dim: Dimension) -> OperatorMatrix {
    let h = dim.spacing();
    let diag: Vec<Complex64> = dim.indices().map(|n| Complex64::new(h * n as f64, 0.0)).collect();
    OperatorMatrix::from_parts(
        dim,
        DMatrix::from_diagonal(&DVector::from_vec(diag)),
        OperatorKind::Hermitian,
    )
}

/// Momentum operator `P = F Q F^dagger` in closed form:
/// `p_{jl} = -(i/2) sqrt(2 pi / d) (-1)^{j-l} / sin(pi (j - l) / d)` off the diagonal.
pub fn momentum_operator(dim: Dimension) -> OperatorMatrix {
    let d = dim.d();
    let df = d as f64;
    let half_h = 0.5 * dim.spacing();
    let labels: Vec<i64> = dim.indices().collect();
    let entries = DMatrix::from_fn(d, d, |r, c| {
        let delta = labels[r] - labels[c];
        if delta == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let sign = if delta % 2 == 0 { 1.0 } else { -1.0 };
        let sin = (PI * delta as f64 / df).sin();
        Complex64::new(0.0, -half_h * sign / sin)
    });
    OperatorMatrix::from_parts(dim, entries, OperatorKind::Hermitian)
}

/// Cyclic shift `A|l> = |l + 1>`.
pub fn shift_operator(dim: Dimension) -> OperatorMatrix {
    displacement_unphased(dim, 1, 0)
}

/// Modulation `B|l> = exp(2 pi i l / d) |l>`.
pub fn modulation_operator(dim: Dimension) -> OperatorMatrix {
    displacement_unphased(dim, 0, 1)
}

/// `A^alpha B^beta`, which sends `|l>` to `exp(2 pi i beta l / d) |l + alpha>`.
fn displacement_unphased(dim: Dimension, alpha: i64, beta: i64) -> OperatorMatrix {
    let d = dim.d();
    let roots = dim.roots_of_unity();
    let mut entries = DMatrix::zeros(d, d);
    for l in dim.indices() {
        let phase = roots[(beta * l).rem_euclid(d as i64) as usize];
        entries[(dim.slot(l + alpha), dim.offset(l))] = phase;
    }
    OperatorMatrix::from_parts(dim, entries, OperatorKind::Unitary)
}

/// Displacement `D(alpha, beta) = exp(i pi alpha beta / d) A^alpha B^beta`.
pub fn displacement(dim: Dimension, p: PhasePoint) -> Result<OperatorMatrix> {
    let p = PhasePoint::new(dim, p.alpha, p.beta)?;
    let half = Complex64::from_polar(1.0, PI * (p.alpha * p.beta) as f64 / dim.d() as f64);
    let mut op = displacement_unphased(dim, p.alpha, p.beta);
    op.entries.iter_mut().for_each(|z| *z *= half);
    Ok(op)
}

/// Coherent state `|alpha, beta> = D(alpha, beta) g_1 / ||g_1||`, unit norm.
pub fn coherent_state(dim: Dimension, p: PhasePoint) -> Result<StateVector> {
    let g = theta::finite_gaussian(dim, 1.0, theta::DEFAULT_TERM_TOL)?;
    coherent_state_from(&g, p)
}

fn coherent_state_from(g: &FiniteGaussian, p: PhasePoint) -> Result<StateVector> {
    let dim = g.dim();
    let p = PhasePoint::new(dim, p.alpha, p.beta)?;
    let d = dim.d() as i64;
    let roots = dim.roots_of_unity();
    let norm = g.norm();
    let global = Complex64::from_polar(1.0, -PI * (p.alpha * p.beta) as f64 / d as f64);
    let amps = dim
        .indices()
        .map(|j| {
            let carrier = roots[(p.beta * j).rem_euclid(d) as usize];
            global * carrier * (g.at(j - p.alpha) / norm)
        })
        .collect();
    StateVector::from_amps(dim, amps)
}

/// `|| (1/d) sum_{alpha,beta} |alpha,beta><alpha,beta| - I ||_max`.
pub fn frame_resolution_residual(dim: Dimension) -> Result<f64> {
    let d = dim.d();
    let g = theta::finite_gaussian(dim, 1.0, theta::DEFAULT_TERM_TOL)?;
    let mut acc: DMatrix<Complex64> = DMatrix::zeros(d, d);
    for alpha in dim.indices() {
        for beta in dim.indices() {
            let v = coherent_state_from(&g, PhasePoint::new(dim, alpha, beta)?)?;
            acc += v.amps() * v.amps().adjoint();
        }
    }
    acc.unscale_mut(d as f64);
    Ok(max_abs(&(acc - DMatrix::identity(d, d))))
}

/// Physicists' Hermite polynomial `H_k(x)`.
pub fn hermite(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let next = 2.0 * x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Mehta's Fourier eigenvector
/// `f_k(n) = sum_alpha exp(-pi (alpha d + n)^2 / d) H_k(sqrt(2 pi / d) (alpha d + n))`,
/// unnormalized, satisfying `F f_k = i^k f_k`.
pub fn mehta_eigenvector(dim: Dimension, k: usize) -> Result<StateVector> {
    if k > MAX_MEHTA_ORDER {
        return Err(Error::UnsupportedOrder {
            k,
            max: MAX_MEHTA_ORDER,
        });
    }
    let values = theta::periodize(
        |x| (-0.5 * x * x).exp() * hermite(k, x),
        dim,
        theta::DEFAULT_TERM_TOL,
    )?;
    let state = StateVector::from_real(dim, &values)?;
    let norm = state.norm();
    if norm < 1e-10 {
        return Err(Error::DegenerateVector { norm });
    }
    Ok(state)
}
