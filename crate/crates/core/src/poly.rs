//! Dense complex polynomials in ascending-power order.

use crate::C64;

pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|&x| x * s).collect()
}

pub fn derivative(a: &[C64]) -> Vec<C64> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn eval(a: &[C64], z: C64) -> C64 {
    a.iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Monic polynomial with the given roots, `prod (z - r)`.
pub fn from_roots(roots: &[C64]) -> Vec<C64> {
    roots.iter().fold(vec![C64::new(1.0, 0.0)], |acc, &r| {
        mul(&acc, &[-r, C64::new(1.0, 0.0)])
    })
}

/// Coefficient of `z^k`, zero past the degree.
#[inline]
pub fn coeff(a: &[C64], k: usize) -> C64 {
    a.get(k).copied().unwrap_or_default()
}
