use crate::error::{Error, Result};
use crate::fuchsian::SymmetricHeunConfig;
use crate::poly;
use crate::C64;

const RESONANCE_TOL: f64 = 1e-8;
const DISK_SAFETY: f64 = 0.98;

/// Which local exponent at `z_j`: `alpha_j = cos^2(chi_j)/2` or `beta_j = sin^2(chi_j)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentChoice {
    Alpha,
    Beta,
}

/// `(z - z_j)^e sum_m f_m (z - z_j)^m` with `f_0 = 1`, principal power.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFrobenius {
    pub point_index: usize,
    pub center: C64,
    pub exponent: C64,
    pub coeffs: Vec<C64>,
    /// Distance from `z_j` to the nearest other singular point.
    pub disk_radius: f64,
}

/// Value and derivatives of a local solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalValue {
    pub value: C64,
    pub derivative: C64,
    pub second_derivative: C64,
    pub tail_bound: f64,
}

pub(crate) fn check_resonance(config: &SymmetricHeunConfig, j: usize) -> Result<()> {
    let (a, b) = config.indices()[j];
    let d = a - b;
    if d.im.abs() < RESONANCE_TOL && (d.re - d.re.round()).abs() < RESONANCE_TOL {
        return Err(Error::ResonantExponents {
            index: j,
            diff: crate::fmt_complex(d),
        });
    }
    Ok(())
}

/// Frobenius series at `z_j` (zero-based) for the chosen exponent.
///
/// With `x = z - z_j` and `S(x) = prod_{k != j} (x + z_j - z_k)`, the equation
/// times `x^2 S^2` reads `x^2 S^2 F'' + x B_1 F' + B_0 F = 0` where
/// `B_1 = S (S + x S')/2` and `B_0 = lambda x S + q_j S + x sum_{k != j} q_k S/(x + z_j - z_k)`.
pub fn frobenius_local(
    config: &SymmetricHeunConfig,
    j: usize,
    choice: ExponentChoice,
    m_max: usize,
) -> Result<LocalFrobenius> {
    if j >= 4 {
        return Err(Error::InvalidConfig(format!(
            "point index {j} out of range"
        )));
    }
    check_resonance(config, j)?;
    let pts = config.points();
    let zj = pts[j];
    let shifted: Vec<C64> = (0..4).filter(|&k| k != j).map(|k| pts[k] - zj).collect();
    let s = poly::from_roots(&shifted);
    let ds = poly::derivative(&s);
    let x = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let b2 = poly::mul(&s, &s);
    let b1 = poly::scale(
        &poly::mul(&s, &poly::add(&s, &poly::mul(&x, &ds))),
        C64::new(0.5, 0.0),
    );
    let mut b0 = poly::add(
        &poly::scale(&poly::mul(&x, &s), config.lambda()),
        &poly::scale(&s, config.q()[j]),
    );
    let mut qk = 0;
    for k in 0..4 {
        if k == j {
            continue;
        }
        let rest: Vec<C64> = shifted
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != qk)
            .map(|(_, &r)| r)
            .collect();
        b0 = poly::add(
            &b0,
            &poly::scale(&poly::mul(&x, &poly::from_roots(&rest)), config.q()[k]),
        );
        qk += 1;
    }
    let (alpha, beta) = config.indices()[j];
    let e = match choice {
        ExponentChoice::Alpha => alpha,
        ExponentChoice::Beta => beta,
    };
    let indicial = |s: C64, k: usize| {
        poly::coeff(&b2, k) * s * (s - 1.0) + poly::coeff(&b1, k) * s + poly::coeff(&b0, k)
    };
    let mut f = vec![C64::new(1.0, 0.0)];
    for n in 1..=m_max {
        let mut acc = C64::new(0.0, 0.0);
        for k in 1..=n.min(6) {
            acc += indicial(e + (n - k) as f64, k) * f[n - k];
        }
        let v = -acc / indicial(e + n as f64, 0);
        if !v.is_finite() {
            return Err(Error::Overflow(n));
        }
        f.push(v);
    }
    let disk_radius = shifted
        .iter()
        .map(|d| d.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(LocalFrobenius {
        point_index: j,
        center: zj,
        exponent: e,
        coeffs: f,
        disk_radius,
    })
}

impl LocalFrobenius {
    /// Value and first two derivatives at `z`; the tail bound is the largest of
    /// the last eight terms relative to the sum.
    pub fn eval_full(&self, z: C64) -> Result<LocalValue> {
        let x = z - self.center;
        if x.norm() >= DISK_SAFETY * self.disk_radius || x.norm() == 0.0 {
            return Err(Error::OutsideDomain {
                z: crate::fmt_complex(z),
                domain: format!("0 < |z - z_j| < {}", DISK_SAFETY * self.disk_radius),
            });
        }
        let (mut v, mut d, mut d2) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for &a in self.coeffs.iter().rev() {
            d2 = d2 * x + d * 2.0;
            d = d * x + v;
            v = v * x + a;
        }
        let n = self.coeffs.len();
        let tail = (n.saturating_sub(8)..n)
            .map(|k| self.coeffs[k].norm() * x.norm().powi(k as i32))
            .fold(0.0, f64::max)
            / v.norm().max(1e-300);
        let e = self.exponent;
        let xe = x.powc(e);
        let value = xe * v;
        let derivative = xe * (e / x * v + d);
        let second_derivative = xe * (e * (e - 1.0) / (x * x) * v + 2.0 * e / x * d + d2);
        Ok(LocalValue {
            value,
            derivative,
            second_derivative,
            tail_bound: tail,
        })
    }

    pub fn eval(&self, z: C64) -> Result<(C64, C64)> {
        let v = self.eval_full(z)?;
        if v.tail_bound > 1e-12 {
            return Err(Error::NotConverged {
                terms: self.coeffs.len(),
                tail: v.tail_bound,
            });
        }
        Ok((v.value, v.derivative))
    }
}

/// `F = c_alpha F_alpha + c_beta F_beta` near `z_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalDecomposition {
    pub c_alpha: C64,
    pub c_beta: C64,
    /// 2-norm condition number of the value/derivative system with the
    /// derivative row scaled by `|z - z_j|`.
    pub condition: f64,
}

const MAX_CONDITION: f64 = 1e8;

fn condition_2x2(m: [[C64; 2]; 2]) -> f64 {
    let fro: f64 = m.iter().flatten().map(|x| x.norm_sqr()).sum();
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).norm();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // singular values s1 >= s2 with s1^2 + s2^2 = fro and s1 s2 = det
    let disc = (fro * fro - 4.0 * det * det).max(0.0).sqrt();
    let s1 = ((fro + disc) / 2.0).sqrt();
    let s2 = det / s1;
    s1 / s2
}

/// Solves `target = g1 basis1 + g2 basis2` on (value, derivative) pairs, with
/// the derivative row scaled by `scale`. Returns `(g1, g2, condition)`.
pub fn solve_in_basis(
    basis1: (C64, C64),
    basis2: (C64, C64),
    target: (C64, C64),
    scale: f64,
) -> Result<(C64, C64, f64)> {
    let m = [[basis1.0, basis2.0], [basis1.1 * scale, basis2.1 * scale]];
    let cond = condition_2x2(m);
    if !(cond <= MAX_CONDITION) {
        return Err(Error::IllConditioned(cond));
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let rhs = [target.0, target.1 * scale];
    let g1 = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det;
    let g2 = (m[0][0] * rhs[1] - m[1][0] * rhs[0]) / det;
    Ok((g1, g2, cond))
}

/// Local bases at one singular point, prepared once for repeated decompositions.
#[derive(Debug, Clone)]
pub struct LocalBasis {
    pub alpha: LocalFrobenius,
    pub beta: LocalFrobenius,
}

impl LocalBasis {
    pub fn new(config: &SymmetricHeunConfig, j: usize, m_max: usize) -> Result<Self> {
        Ok(LocalBasis {
            alpha: frobenius_local(config, j, ExponentChoice::Alpha, m_max)?,
            beta: frobenius_local(config, j, ExponentChoice::Beta, m_max)?,
        })
    }

    /// Decomposes a solution given by its value and derivative at `at`.
    pub fn decompose(&self, at: C64, y: (C64, C64)) -> Result<LocalDecomposition> {
        let fa = self.alpha.eval(at)?;
        let fb = self.beta.eval(at)?;
        let (c_alpha, c_beta, condition) =
            solve_in_basis(fa, fb, y, (at - self.alpha.center).norm())?;
        Ok(LocalDecomposition {
            c_alpha,
            c_beta,
            condition,
        })
    }
}

/// Expresses `solution` (value and derivative as a function of `z`) in the
/// Frobenius basis at `z_j` by matching at `matching_point`.
pub fn decompose_local<F>(
    config: &SymmetricHeunConfig,
    solution: F,
    j: usize,
    matching_point: C64,
) -> Result<LocalDecomposition>
where
    F: Fn(C64) -> Result<(C64, C64)>,
{
    let basis = LocalBasis::new(config, j, default_terms(config, j, matching_point))?;
    basis.decompose(matching_point, solution(matching_point)?)
}

/// Enough Frobenius terms for double precision at `z`.
pub(crate) fn default_terms(config: &SymmetricHeunConfig, j: usize, z: C64) -> usize {
    let pts = config.points();
    let disk = (0..4)
        .filter(|&k| k != j)
        .map(|k| (pts[k] - pts[j]).norm())
        .fold(f64::INFINITY, f64::min);
    let ratio = ((z - pts[j]).norm() / disk).clamp(1e-3, 0.97);
    ((40.0 / -ratio.log10()) as usize + 40).min(20_000)
}
