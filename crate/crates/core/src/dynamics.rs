//! Unitary evolution `exp(-i t H)` and revival detection for populated
//! energy levels.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{self, OperatorMatrix, StateVector};
use crate::lattice::Dimension;
use crate::spectral::{self, Spectrum};

/// Populations at or below this are treated as zero.
pub const DEFAULT_WEIGHT_FLOOR: f64 = 1e-12;
pub const DEFAULT_REL_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DEN: u64 = 1_000_000;
/// Bound on `max_n |psi(t0 + T) - e^{i phi} psi(t0)|` for a certified period.
pub const CERTIFY_TOL: f64 = 1e-8;
/// Base times at which a period is checked.
pub const CERTIFY_TIMES: [f64; 2] = [0.0, 0.7];

/// Free Hamiltonian `P^2 / 2`.
pub fn free_hamiltonian(dim: Dimension) -> OperatorMatrix {
    let p = hilbert::momentum_operator(dim);
    let h = (p.entries() * p.entries()).unscale(2.0);
    OperatorMatrix::hermitian_part(dim, h).expect("P^2 is hermitian")
}

/// Evolution under a fixed Hamiltonian, diagonalized once.
#[derive(Debug, Clone)]
pub struct Propagator {
    spectrum: Spectrum,
}

impl Propagator {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        Ok(Propagator {
            spectrum: spectral::hermitian_eig(h)?,
        })
    }

    pub fn with_eig_tol(h: &OperatorMatrix, eig_tol: f64) -> Result<Self> {
        Ok(Propagator {
            spectrum: spectral::hermitian_eig_with(h, eig_tol)?,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Expansion coefficients `<v_k|psi>`.
    fn coefficients(&self, psi: &StateVector) -> Result<DVector<Complex64>> {
        hilbert::same_dim(self.spectrum.dim(), psi.dim())?;
        Ok(self.spectrum.eigenvectors().adjoint() * psi.amps())
    }

    pub fn evolve(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        let mut c = self.coefficients(psi)?;
        for (ck, &l) in c.iter_mut().zip(self.spectrum.eigenvalues()) {
            *ck *= Complex64::from_polar(1.0, -l * t);
        }
        Ok(StateVector::from_dvector(
            self.spectrum.dim(),
            self.spectrum.eigenvectors() * c,
        ))
    }

    /// `|<psi| exp(-i t H) |psi>|` at each time. `psi` must be normalized.
    pub fn autocorrelation(&self, psi: &StateVector, times: &[f64]) -> Result<TimeSeries> {
        check_normalized(psi)?;
        let c = self.coefficients(psi)?;
        let w: Vec<f64> = c.iter().map(|z| z.norm_sqr()).collect();
        let values = times
            .iter()
            .map(|&t| {
                w.iter()
                    .zip(self.spectrum.eigenvalues())
                    .map(|(&wk, &l)| Complex64::from_polar(wk, -l * t))
                    .sum::<Complex64>()
                    .norm()
            })
            .collect();
        Ok(TimeSeries {
            times: times.to_vec(),
            values,
        })
    }

    /// Checks `psi(t0 + period)` against `psi(t0)` up to a global phase.
    ///
    /// The phase is read off the largest component of `psi(t0)`.
    pub fn certify_period(&self, psi: &StateVector, period: f64, tol: f64) -> Result<Certification> {
        let mut max_deviation = 0.0f64;
        for &t0 in &CERTIFY_TIMES {
            let a = self.evolve(psi, t0)?;
            let b = self.evolve(psi, t0 + period)?;
            let (k, _) = a
                .amps()
                .iter()
                .enumerate()
                .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
            let ratio = b.amps()[k] / a.amps()[k];
            let phase = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { Complex64::new(1.0, 0.0) };
            let dev = (b.amps() - a.amps().map(|z| z * phase)).camax();
            max_deviation = max_deviation.max(dev);
        }
        Ok(Certification {
            period,
            max_deviation,
            tol,
            certified: max_deviation <= tol,
        })
    }
}

fn check_normalized(psi: &StateVector) -> Result<()> {
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::param("psi", n, "state must be normalized"));
    }
    Ok(())
}

/// `exp(-i t H) psi`.
pub fn evolve(h: &OperatorMatrix, psi: &StateVector, t: f64) -> Result<StateVector> {
    Propagator::new(h)?.evolve(psi, t)
}

/// `|<psi| exp(-i t H) |psi>|` at each time.
pub fn autocorrelation(h: &OperatorMatrix, psi: &StateVector, times: &[f64]) -> Result<TimeSeries> {
    Propagator::new(h)?.autocorrelation(psi, times)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certification {
    pub period: f64,
    pub max_deviation: f64,
    pub tol: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RevivalKind {
    Commensurate,
    Equidistant,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalReport {
    pub kind: RevivalKind,
    pub period: Option<f64>,
    /// LCM of the ratio denominators (commensurate branch).
    pub m: Option<u64>,
    /// Indices into the input level list with weight above the floor.
    pub level_subset: Vec<usize>,
    pub tol_used: f64,
    /// A populated zero level was left out of the ratio analysis.
    pub zero_level_excluded: bool,
    pub note: Option<String>,
}

/// Revival analysis of `levels` populated with `weights`, default weight floor.
pub fn detect_revival(levels: &[f64], weights: &[f64], rel_tol: f64, max_den: u64) -> Result<RevivalReport> {
    detect_revival_with(levels, weights, rel_tol, max_den, DEFAULT_WEIGHT_FLOOR)
}

struct Level {
    energy: f64,
    weight: f64,
}

pub fn detect_revival_with(
    levels: &[f64],
    weights: &[f64],
    rel_tol: f64,
    max_den: u64,
    weight_floor: f64,
) -> Result<RevivalReport> {
    if levels.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            left: levels.len(),
            right: weights.len(),
        });
    }
    if !(rel_tol > 0.0) {
        return Err(Error::param("rel_tol", rel_tol, "must be positive"));
    }
    if max_den < 1 {
        return Err(Error::param("max_den", max_den as f64, "must be at least 1"));
    }
    if !(weight_floor >= 0.0) {
        return Err(Error::param("weight_floor", weight_floor, "must be non-negative"));
    }
    if let Some(&bad) = levels.iter().find(|l| !l.is_finite()) {
        return Err(Error::param("levels", bad, "must be finite"));
    }

    let level_subset: Vec<usize> = (0..levels.len()).filter(|&i| weights[i] > weight_floor).collect();
    let scale = levels.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let merge_tol = rel_tol * if scale > 0.0 { scale } else { 1.0 };

    // merge degenerate levels
    let mut order: Vec<usize> = (0..levels.len()).collect();
    order.sort_by(|&a, &b| levels[a].total_cmp(&levels[b]));
    let mut distinct: Vec<Level> = Vec::new();
    let mut members = 0usize;
    for &i in &order {
        match distinct.last_mut() {
            Some(last) if levels[i] - last.energy <= merge_tol => {
                members += 1;
                last.energy += (levels[i] - last.energy) / members as f64;
                last.weight += weights[i];
            }
            _ => {
                members = 1;
                distinct.push(Level {
                    energy: levels[i],
                    weight: weights[i],
                });
            }
        }
    }
    let populated: Vec<usize> = (0..distinct.len()).filter(|&k| distinct[k].weight > weight_floor).collect();
    if populated.is_empty() {
        return Err(Error::NoLevels);
    }

    let report = |kind, period: Option<f64>, m, zero_level_excluded, note: Option<&str>| RevivalReport {
        kind,
        period,
        m,
        level_subset: level_subset.clone(),
        tol_used: rel_tol,
        zero_level_excluded,
        note: note.map(str::to_owned),
    };

    if populated.len() == 1 {
        let k = populated[0];
        let e = distinct[k].energy;
        let neighbour = [k.checked_sub(1), Some(k + 1)]
            .into_iter()
            .flatten()
            .filter_map(|j| distinct.get(j))
            .map(|l| (l.energy - e).abs())
            .fold(f64::INFINITY, f64::min);
        let period = if neighbour.is_finite() {
            2.0 * PI / neighbour
        } else if e.abs() > merge_tol {
            2.0 * PI / e.abs()
        } else {
            2.0 * PI
        };
        return Ok(report(
            RevivalKind::Equidistant,
            Some(period),
            None,
            false,
            Some("single populated level: stationary state, any period revives"),
        ));
    }

    // equidistant ladder spanning the populated range
    let (lo, hi) = (populated[0], populated[populated.len() - 1]);
    if hi - lo >= 2 {
        let gaps: Vec<f64> = distinct[lo..=hi].windows(2).map(|w| w[1].energy - w[0].energy).collect();
        let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
        if gaps.iter().all(|g| (g - mean).abs() <= rel_tol * mean) {
            let g = populated.iter().map(|&k| (k - lo) as u64).fold(0u64, |a, b| a.gcd(&b));
            return Ok(report(
                RevivalKind::Equidistant,
                Some(2.0 * PI / (g as f64 * mean)),
                None,
                false,
                None,
            ));
        }
    }

    // commensurate ratios against the smallest nonzero level
    let nonzero: Vec<f64> = populated
        .iter()
        .map(|&k| distinct[k].energy)
        .filter(|e| e.abs() > merge_tol)
        .collect();
    let zero_level_excluded = nonzero.len() < populated.len();
    let eps1 = nonzero.iter().fold(f64::INFINITY, |m, e| m.min(e.abs()));
    let mut m: u64 = 1;
    for &e in &nonzero {
        let ratio = e.abs() / eps1;
        let Some((_, q)) = rational_approx(ratio, rel_tol, max_den) else {
            return Ok(report(
                RevivalKind::None,
                None,
                None,
                zero_level_excluded,
                Some("level ratios are not rational within tolerance"),
            ));
        };
        m = checked_lcm(m, q)?;
    }
    Ok(report(
        RevivalKind::Commensurate,
        Some(2.0 * PI * m as f64 / eps1),
        Some(m),
        zero_level_excluded,
        zero_level_excluded.then_some("populated zero level contributes a constant phase"),
    ))
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    let g = a.gcd(&b);
    let l = (a / g).checked_mul(b).ok_or(Error::CapacityExceeded)?;
    if l > 1u64 << 63 {
        return Err(Error::CapacityExceeded);
    }
    Ok(l)
}

/// Continued-fraction convergents `p/q` of a non-negative `x`, in order,
/// stopping once `q` exceeds `max_den`.
pub fn convergents(x: f64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if !(x >= 0.0) || !x.is_finite() {
        return out;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1u128, 0u128, x.floor() as u128, 1u128);
    let mut frac = x - x.floor();
    out.push((p1 as u64, 1));
    while frac > 0.0 && out.len() < 64 {
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        if !a.is_finite() || a > u64::MAX as f64 {
            break;
        }
        let a = a as u128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den as u128 || p2 > u64::MAX as u128 {
            break;
        }
        out.push((p2 as u64, q2 as u64));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

/// First convergent of `x` with relative error at most `rel_tol`.
pub fn rational_approx(x: f64, rel_tol: f64, max_den: u64) -> Option<(u64, u64)> {
    convergents(x, max_den)
        .into_iter()
        .find(|&(p, q)| (p as f64 / q as f64 - x).abs() <= rel_tol * x.abs())
}
