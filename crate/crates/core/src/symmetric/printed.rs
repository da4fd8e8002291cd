//! Recurrence coefficients in the form printed in the literature.
//!
//! These are not used for computation. They exist so the derived coefficients
//! can be compared with them entry by entry.

use super::recurrence::{recurrence_coeffs, RecurrenceFamily};
use crate::error::{Error, Result};
use crate::fuchsian::{reduced_symmetric, SymmetricHeunConfig};
use crate::C64;

/// General-position coefficients as printed (the `q_j sigma_2` sum read with
/// the reduced symmetric function of the same point).
pub fn general(config: &SymmetricHeunConfig, n: usize) -> [C64; 8] {
    let [s1, s2, s3, s4] = *config.sigma();
    let l = config.lambda();
    let q = config.q();
    let pts = config.points();
    let nf = n as f64;
    let nn = nf * (nf - 1.0);
    let mut qz = C64::new(0.0, 0.0);
    let mut qs2 = C64::new(0.0, 0.0);
    let mut qs1 = C64::new(0.0, 0.0);
    let mut qsum = C64::new(0.0, 0.0);
    for j in 0..4 {
        let red = reduced_symmetric(pts, j);
        qz += q[j] / pts[j];
        qs2 += q[j] * red[1];
        qs1 += q[j] * red[0];
        qsum += q[j];
    }
    let w = s4 * s4;
    [
        -(2.0 - 3.5 / nf) * s3 * s4 / w,
        (s4 / nn * (l - qz) - (1.0 - 5.0 / nf + 1.5 / (nf - 1.0)) * (s3 * s3 + 2.0 * s2 * s4)) / w,
        (-(l * s3 - qs2) / nn - (2.0 - 19.5 / nf + 9.0 / (nf - 1.0)) * (s2 * s3 + s1 * s4)) / w,
        ((l * s2 - qs1) / nn
            + (1.0 - 16.0 / nf + 9.0 / (nf - 1.0)) * (s2 * s2 + 2.0 * s1 * s3 + 2.0 * s4))
            / w,
        (-(l * s1 - qsum) / nn - (2.0 - 47.5 / nf + 30.0 / (nf - 1.0)) * (s1 * s2 + s3)) / w,
        (l / nn + (1.0 - 33.0 / nf + 22.5 / (nf - 1.0)) * (s1 * s1 + 2.0 * s2)) / w,
        -(2.0 - 87.5 / nf + 63.0 / (nf - 1.0)) * s1 / w,
        C64::new(1.0 - 56.0 / nf + 42.0 / (nf - 1.0), 0.0) / w,
    ]
}

/// Canonical biquadratic coefficients as printed.
pub fn circular(config: &SymmetricHeunConfig, n: usize) -> Result<[C64; 8]> {
    let (phi, rho) = match (config.phi(), config.rho()) {
        (Some(p), Some(r)) => (p, r),
        _ => {
            return Err(Error::BadFamilyForConfig {
                family: "circular",
                reason: "points are not in canonical biquadratic position".into(),
            })
        }
    };
    let l = config.lambda();
    let nf = n as f64;
    let nn = nf * (nf - 1.0);
    let c2 = (phi * 2.0).cos();
    let i4s = C64::i() * 0.25 * (phi * 2.0).sin();
    let zero = C64::new(0.0, 0.0);
    Ok([
        zero,
        (l - i4s * rho[0]) / nn + 4.0 * (1.0 - 5.0 / nf + 1.5 / (nf - 1.0)) * c2,
        -i4s * rho[1] / nn,
        (-2.0 * l * c2 + i4s * rho[2]) / nn
            + 2.0 * (1.0 - 16.0 / nf + 9.0 / (nf - 1.0)) * (c2 * c2 + 1.0),
        i4s * rho[3] / nn,
        l / nn - 4.0 * (1.0 - 33.0 / nf + 22.5 / (nf - 1.0)) * c2,
        zero,
        C64::new(1.0 - 56.0 / nf + 42.0 / (nf - 1.0), 0.0),
    ])
}

/// Largest difference, relative to `max(1, |r|)`, of each printed multiplier `r_{n-k}` (index
/// `k - 1`) from the derived general-position value over `n` in `range`.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy {
    pub max_relative: [f64; 8],
}

impl Discrepancy {
    /// Multipliers (1-based `k` in `r_{n-k}`) whose printed form disagrees.
    pub fn mismatched(&self, tol: f64) -> Vec<usize> {
        (0..8)
            .filter(|&k| self.max_relative[k] > tol)
            .map(|k| k + 1)
            .collect()
    }
}

fn compare(
    config: &SymmetricHeunConfig,
    range: std::ops::RangeInclusive<usize>,
    printed: impl Fn(usize) -> Result<[C64; 8]>,
) -> Result<Discrepancy> {
    let mut max_relative = [0.0f64; 8];
    for n in range {
        let d = recurrence_coeffs(RecurrenceFamily::General, config, n)?;
        let p = printed(n)?;
        for k in 0..8 {
            let rel = (d[k] - p[k]).norm() / d[k].norm().max(1.0);
            max_relative[k] = max_relative[k].max(rel);
        }
    }
    Ok(Discrepancy { max_relative })
}

pub fn compare_general(
    config: &SymmetricHeunConfig,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Discrepancy> {
    compare(config, range, |n| Ok(general(config, n)))
}

pub fn compare_circular(
    config: &SymmetricHeunConfig,
    range: std::ops::RangeInclusive<usize>,
) -> Result<Discrepancy> {
    compare(config, range, |n| circular(config, n))
}
