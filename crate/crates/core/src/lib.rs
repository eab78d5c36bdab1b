//! Finite Gaussians on `Z_d` and the finite-dimensional quantum mechanics
//! built around them.
//!
//! * [`theta`]: wrapped Gaussian sums `g_kappa`, `g+_kappa` and theta kernels.
//! * [`hilbert`]: the finite Fourier transform, position and momentum
//!   operators, the Weyl pair, coherent states and Hermite-type eigenvectors.
//! * [`spectral`]: Hermitian eigendecomposition, the `[Q, P]` commutator,
//!   the finite oscillator and uncertainty products.
//! * [`dynamics`]: time evolution and revival detection.
//! * [`wigner`]: the discrete Wigner function of a finite Gaussian.
//! * [`reports`] and [`cli`]: tabular output and the `fingauss` binary.
//!
//! Vectors over `Z_d` are always stored with index `n` in `{-s..s}` at
//! offset `n + s`, where `d = 2s + 1`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod lattice;
pub mod reports;
pub mod spectral;
pub mod theta;
pub mod wigner;

pub use error::{Error, Result};
pub use hilbert::{OperatorKind, OperatorMatrix, PhasePoint, StateVector};
pub use lattice::Dimension;
pub use spectral::Spectrum;
pub use theta::{FiniteGaussian, ThetaKind};
pub use wigner::{WignerGrid, WignerSource};
