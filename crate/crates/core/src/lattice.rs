//! The odd-dimensional lattice `Z_d` with centered representatives `{-s..s}`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An odd dimension `d = 2s + 1 >= 3`.
///
/// Every vector over `Z_d` in this crate is stored with index `n` in
/// `{-s..s}` at offset `n + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    d: usize,
}

impl Dimension {
    pub fn new(d: i64) -> Result<Self> {
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Dimension { d: d as usize })
    }

    #[inline]
    pub fn d(self) -> usize {
        self.d
    }

    #[inline]
    pub fn s(self) -> i64 {
        (self.d as i64 - 1) / 2
    }

    /// Centered representatives `-s..=s` in storage order.
    pub fn indices(self) -> std::ops::RangeInclusive<i64> {
        let s = self.s();
        -s..=s
    }

    /// Storage offset of a representative already in `{-s..s}`.
    #[inline]
    pub fn offset(self, n: i64) -> usize {
        debug_assert!(n.abs() <= self.s());
        (n + self.s()) as usize
    }

    /// Reduces any integer mod `d` into `{-s..s}`.
    #[inline]
    pub fn wrap(self, n: i64) -> i64 {
        let d = self.d as i64;
        let s = self.s();
        (n + s).rem_euclid(d) - s
    }

    /// Storage offset of an arbitrary integer after reduction mod `d`.
    #[inline]
    pub fn slot(self, n: i64) -> usize {
        (n + self.s()).rem_euclid(self.d as i64) as usize
    }

    #[inline]
    pub fn contains(self, n: i64) -> bool {
        n.abs() <= self.s()
    }

    /// Lattice spacing `sqrt(2 pi / d)` of the position/momentum spectra.
    #[inline]
    pub fn spacing(self) -> f64 {
        (2.0 * PI / self.d as f64).sqrt()
    }

    /// Table of `exp(2 pi i j / d)` for `j` in `0..d`.
    ///
    /// Angles are taken from the centered representative of `j`, so entry
    /// `d - j` is the exact conjugate of entry `j`.
    pub fn roots_of_unity(self) -> Vec<Complex64> {
        let d = self.d as i64;
        (0..d)
            .map(|j| {
                let c = self.wrap(j);
                Complex64::from_polar(1.0, 2.0 * PI * c as f64 / d as f64)
            })
            .collect()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.d)
    }
}
