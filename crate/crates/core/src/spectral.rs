//! Hermitian eigendecomposition and the spectra built on it: the `[Q, P]`
//! commutator, the oscillator `H = (P^2 + Q^2) / 2`, the quasi-eigenstate
//! residual of `g_1`, and uncertainty products of finite Gaussians.

use std::f64::consts::PI;

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{self, max_abs, OperatorKind, OperatorMatrix, StateVector};
use crate::lattice::Dimension;
use crate::theta::{self, FiniteGaussian};

/// Default residual bound, relative to `||M||_max`.
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 10_000;

/// Eigenpairs of a Hermitian operator, eigenvalues ascending.
///
/// Each eigenvector column has its largest-magnitude component real and
/// positive. Eigenvalues equal to within `1e-12 * ||M||_max` are ordered by
/// the index of that component.
#[derive(Debug, Clone)]
pub struct Spectrum {
    dim: Dimension,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
    residual: f64,
}

impl Spectrum {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvectors as columns.
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    /// `max_k || M v_k - lambda_k v_k ||`.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn vector(&self, k: usize) -> StateVector {
        StateVector::from_dvector(self.dim, self.eigenvectors.column(k).into_owned())
    }

    /// `|| V^dagger V - I ||_max`.
    pub fn orthonormality_defect(&self) -> f64 {
        let d = self.dim.d();
        max_abs(&(self.eigenvectors.adjoint() * &self.eigenvectors - DMatrix::identity(d, d)))
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let lam = DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)),
        );
        &self.eigenvectors * DMatrix::from_diagonal(&lam) * self.eigenvectors.adjoint()
    }

    /// `f(M) = V diag(f(lambda)) V^dagger`.
    pub fn map_eigenvalues<F>(&self, f: F) -> DMatrix<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let diag = DVector::from_iterator(self.eigenvalues.len(), self.eigenvalues.iter().map(|&l| f(l)));
        &self.eigenvectors * DMatrix::from_diagonal(&diag) * self.eigenvectors.adjoint()
    }

    /// Populations `|<v_k|psi>|^2` in eigenvalue order.
    pub fn weights(&self, psi: &StateVector) -> Result<Vec<f64>> {
        hilbert::same_dim(self.dim, psi.dim())?;
        let coeffs = self.eigenvectors.adjoint() * psi.amps();
        Ok(coeffs.iter().map(|c| c.norm_sqr()).collect())
    }
}

/// Eigendecomposition of a Hermitian operator with the default residual bound.
pub fn hermitian_eig(m: &OperatorMatrix) -> Result<Spectrum> {
    hermitian_eig_with(m, DEFAULT_EIG_TOL)
}

/// Eigendecomposition with residual bound `eig_tol * ||M||_max`.
pub fn hermitian_eig_with(m: &OperatorMatrix, eig_tol: f64) -> Result<Spectrum> {
    if m.kind() != OperatorKind::Hermitian {
        return Err(Error::KindMismatch {
            expected: OperatorKind::Hermitian,
            found: m.kind(),
        });
    }
    if !(eig_tol > 0.0) {
        return Err(Error::param("eig_tol", eig_tol, "must be positive"));
    }
    let dim = m.dim();
    let d = dim.d();
    let scale = m.max_abs();
    let a = m.entries();

    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, MAX_SWEEPS).ok_or_else(|| {
        Error::NumericalFailure {
            what: "hermitian eigensolver did not converge".into(),
            residual: f64::NAN,
        }
    })?;

    // argmax by magnitude, first index wins among near-equal magnitudes
    let pivot = |col: usize| -> usize {
        let c = eig.eigenvectors.column(col);
        let top = c.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        c.iter().position(|z| z.norm() >= top * (1.0 - 1e-12)).unwrap_or(0)
    };
    let mut order: Vec<(f64, usize, usize)> = (0..d)
        .map(|k| (eig.eigenvalues[k], pivot(k), k))
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let tie = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && order[end].0 - order[end - 1].0 <= tie {
            end += 1;
        }
        order[start..end].sort_by_key(|e| e.1);
        start = end;
    }

    let mut eigenvalues = Vec::with_capacity(d);
    let mut eigenvectors = DMatrix::zeros(d, d);
    for (slot, &(lambda, piv, k)) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(k);
        let z = col[piv];
        let phase = if z.norm() > 0.0 { z.conj() / z.norm() } else { Complex64::new(1.0, 0.0) };
        let mut fixed = col.map(|c| c * phase);
        fixed[piv] = Complex64::new(fixed[piv].norm(), 0.0);
        eigenvectors.set_column(slot, &fixed);
        eigenvalues.push(lambda);
    }

    let mut residual = 0.0f64;
    for (k, &lambda) in eigenvalues.iter().enumerate() {
        let v = eigenvectors.column(k);
        let r = a * v - v.map(|c| c * lambda);
        residual = residual.max(r.norm());
    }
    if !(residual <= eig_tol * scale.max(f64::MIN_POSITIVE)) {
        return Err(Error::NumericalFailure {
            what: "hermitian eigensolver residual".into(),
            residual,
        });
    }
    Ok(Spectrum {
        dim,
        eigenvalues,
        eigenvectors,
        residual,
    })
}

/// `exp(-i t H)` for Hermitian `H`, via its eigendecomposition.
pub fn unitary_exp(spectrum: &Spectrum, t: f64) -> OperatorMatrix {
    let u = spectrum.map_eigenvalues(|l| Complex64::from_polar(1.0, -l * t));
    OperatorMatrix::from_parts(spectrum.dim(), u, OperatorKind::Unitary)
}

/// `(pi delta / d) (-1)^delta / sin(pi delta / d)`, even in `delta`.
fn commutator_kernel(delta: i64, d: f64) -> f64 {
    let x = PI * delta as f64 / d;
    let sign = if delta % 2 == 0 { 1.0 } else { -1.0 };
    sign * x / x.sin()
}

/// Closed-form commutator
/// `[Q, P]_{jl} = -i (pi (j-l) / d) (-1)^{j-l} / sin(pi (j-l) / d)`, zero diagonal.
pub fn commutator_qp(dim: Dimension) -> OperatorMatrix {
    let d = dim.d();
    let df = d as f64;
    let labels: Vec<i64> = dim.indices().collect();
    let entries = DMatrix::from_fn(d, d, |r, c| {
        let delta = labels[r] - labels[c];
        if delta == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, -commutator_kernel(delta, df))
        }
    });
    OperatorMatrix::from_parts(dim, entries, OperatorKind::General)
}

/// Imaginary parts of the eigenvalues `eta_k` of `[Q, P]`, ascending.
///
/// `[Q, P]` is anti-Hermitian; its eigenvalues are `i` times those of the
/// Hermitian `-i [Q, P]`.
pub fn commutator_spectrum(dim: Dimension) -> Result<Vec<f64>> {
    let c = commutator_qp(dim);
    let herm = c.entries().map(|z| z * Complex64::new(0.0, -1.0));
    let op = OperatorMatrix::new(dim, herm, OperatorKind::Hermitian)?;
    Ok(hermitian_eig(&op)?.eigenvalues().to_vec())
}

/// Large-`d` approximation of the commutator, `i (-1)^{j-l} (delta_{jl} - 1)`.
///
/// Its eigenvalues are `i` with multiplicity `d - 1` and `(1 - d) i`.
pub fn floratos_approx(dim: Dimension) -> OperatorMatrix {
    let d = dim.d();
    let labels: Vec<i64> = dim.indices().collect();
    let entries = DMatrix::from_fn(d, d, |r, c| {
        let delta = labels[r] - labels[c];
        if delta == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            let sign = if delta % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(0.0, -sign)
        }
    });
    OperatorMatrix::from_parts(dim, entries, OperatorKind::General)
}

/// Oscillator Hamiltonian `H = (P^2 + Q^2) / 2`.
pub fn oscillator_hamiltonian(dim: Dimension) -> OperatorMatrix {
    let p = hilbert::momentum_operator(dim);
    let q = hilbert::position_operator(dim);
    let h = (p.entries() * p.entries() + q.entries() * q.entries()).unscale(2.0);
    OperatorMatrix::hermitian_part(dim, h).expect("P^2 + Q^2 is hermitian")
}

/// `H g_1 - lambda g_1` with `lambda = (H g_1)(0) / g_1(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuasiEigen {
    pub lambda: f64,
    /// Residual in storage order `n = -s..=s`.
    pub residual: Vec<f64>,
}

pub fn quasi_eigen_residual(dim: Dimension) -> Result<QuasiEigen> {
    let g = theta::finite_gaussian(dim, 1.0, theta::DEFAULT_TERM_TOL)?;
    let h = oscillator_hamiltonian(dim);
    let hg = h.apply(&StateVector::from_gaussian(&g))?;
    let lambda = hg.at(0).re / g.at(0);
    let residual = dim.indices().map(|n| hg.at(n).re - lambda * g.at(n)).collect();
    Ok(QuasiEigen { lambda, residual })
}

/// Dispersions of `Q` and `P` in the state `g_kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub d: usize,
    pub kappa: f64,
    pub dq: f64,
    pub dp: f64,
    pub product: f64,
    /// `|<[Q, P]>| / 2`.
    pub half_comm: f64,
    /// `product - half_comm`.
    pub gap: f64,
}

pub fn uncertainty_product(dim: Dimension, kappa: f64) -> Result<UncertaintyReport> {
    uncertainty_product_with(dim, kappa, theta::DEFAULT_TERM_TOL)
}

pub fn uncertainty_product_with(dim: Dimension, kappa: f64, term_tol: f64) -> Result<UncertaintyReport> {
    let g = theta::finite_gaussian(dim, kappa, term_tol)?;
    let g_dual = theta::finite_gaussian(dim, 1.0 / kappa, term_tol)?;
    let dq = second_moment(&g).sqrt();
    let dp = second_moment(&g_dual).sqrt();
    let half_comm = half_commutator(&g);

    let quadratic = {
        let psi = StateVector::from_gaussian(&g);
        let cg = commutator_qp(dim).apply(&psi)?;
        0.5 * psi.inner(&cg)?.norm() / g.norm_sqr()
    };
    let disagreement = (quadratic - half_comm).abs();
    if disagreement > 1e-12 {
        return Err(Error::NumericalFailure {
            what: "commutator double sum vs quadratic form".into(),
            residual: disagreement,
        });
    }

    let product = dq * dp;
    Ok(UncertaintyReport {
        d: dim.d(),
        kappa,
        dq,
        dp,
        product,
        half_comm,
        gap: product - half_comm,
    })
}

/// `(2 pi / d) sum n^2 g(n)^2 / sum g(n)^2`.
fn second_moment(g: &FiniteGaussian) -> f64 {
    let dim = g.dim();
    let num: f64 = dim.indices().map(|n| (n * n) as f64 * g.at(n).powi(2)).sum();
    2.0 * PI / dim.d() as f64 * num / g.norm_sqr()
}

/// `|sum_{j > l} kernel(j - l) g(j) g(l)| / sum g^2`.
fn half_commutator(g: &FiniteGaussian) -> f64 {
    let dim = g.dim();
    let df = dim.d() as f64;
    let s = dim.s();
    let mut acc = 0.0;
    for j in (-s + 1)..=s {
        for l in -s..j {
            acc += commutator_kernel(j - l, df) * g.at(j) * g.at(l);
        }
    }
    acc.abs() / g.norm_sqr()
}
