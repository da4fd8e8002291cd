use super::recurrence::{Recurrence, RecurrenceFamily};
use crate::error::{Error, Result};
use crate::fuchsian::SymmetricHeunConfig;
use crate::C64;

/// Hard cap on the number of series terms. `HEUNSYM_MAX_TERMS` lowers or raises it.
pub const DEFAULT_MAX_TERMS: usize = 200_000;
/// Fraction of the convergence radius inside which evaluation is allowed.
pub const DOMAIN_SAFETY: f64 = 0.98;
const OVERFLOW: f64 = 1e300;
const MIN_TERMS_FOR_RADIUS: usize = 50;

pub fn term_cap() -> usize {
    std::env::var("HEUNSYM_MAX_TERMS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n >= 8)
        .unwrap_or(DEFAULT_MAX_TERMS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Expansion in `z` around the origin.
    Taylor,
    /// Expansion in `1/z`, built from the inverted configuration.
    Laurent,
}

/// Which member of the fundamental pair at the expansion point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitTag {
    /// `f_0 = 1, f_1 = 0`.
    F1,
    /// `f_0 = 0, f_1 = 1`.
    F2,
}

impl InitTag {
    fn start(self) -> (C64, C64) {
        match self {
            InitTag::F1 => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            InitTag::F2 => (C64::new(0.0, 0.0), C64::new(1.0, 0.0)),
        }
    }
}

/// Truncated series solution of a symmetric-form equation.
#[derive(Debug, Clone)]
pub struct SeriesSolution {
    kind: SeriesKind,
    init: InitTag,
    coeffs: Vec<C64>,
    config: SymmetricHeunConfig,
    expansion: SymmetricHeunConfig,
    recurrence: Recurrence,
}

impl SeriesSolution {
    pub fn kind(&self) -> SeriesKind {
        self.kind
    }

    pub fn init(&self) -> InitTag {
        self.init
    }

    pub fn family(&self) -> RecurrenceFamily {
        self.recurrence.family()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Index of the last stored coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The equation this solution solves.
    pub fn config(&self) -> &SymmetricHeunConfig {
        &self.config
    }

    /// The equation whose Taylor coefficients are stored (the inverted one for
    /// Laurent solutions).
    pub fn expansion_config(&self) -> &SymmetricHeunConfig {
        &self.expansion
    }

    fn is_finite_series(&self) -> bool {
        trailing_zeros(&self.coeffs)
    }

    /// Convergence radius guaranteed by the nearest singular point of the
    /// expansion equation, infinite for terminating series.
    pub fn domain_radius(&self) -> f64 {
        if self.is_finite_series() {
            f64::INFINITY
        } else {
            self.expansion.min_point_modulus()
        }
    }
}

/// Eight trailing zeros make every further coefficient vanish.
fn trailing_zeros(c: &[C64]) -> bool {
    c.len() >= 16 && c[c.len() - 8..].iter().all(|x| x.norm() == 0.0)
}

fn generate(rec: &Recurrence, init: InitTag, n_max: usize) -> Result<Vec<C64>> {
    let (f0, f1) = init.start();
    let mut f = Vec::with_capacity(n_max + 1);
    f.push(f0);
    if n_max >= 1 {
        f.push(f1);
    }
    for n in 2..=n_max {
        let r = rec.coeffs(n);
        let mut acc = C64::new(0.0, 0.0);
        for (k, rk) in r.iter().enumerate() {
            let idx = n as isize - 1 - k as isize;
            if idx < 0 {
                break;
            }
            acc += rk * f[idx as usize];
        }
        let v = -acc;
        if !(v.norm() <= OVERFLOW) {
            return Err(Error::Overflow(n));
        }
        f.push(v);
    }
    Ok(f)
}

/// Taylor coefficients `f_0..f_{n_max}` at the origin.
pub fn series_coeffs(
    config: &SymmetricHeunConfig,
    family: RecurrenceFamily,
    init: InitTag,
    n_max: usize,
) -> Result<SeriesSolution> {
    if n_max < 8 {
        return Err(Error::InsufficientTerms {
            needed: 8,
            got: n_max,
        });
    }
    let recurrence = Recurrence::new(family, config)?;
    let coeffs = generate(&recurrence, init, n_max)?;
    Ok(SeriesSolution {
        kind: SeriesKind::Taylor,
        init,
        coeffs,
        config: config.clone(),
        expansion: config.clone(),
        recurrence,
    })
}

/// Series in `1/z` solving `config` outside the unit circle, built from the
/// Taylor series of [`invert_config`].
pub fn laurent_series(
    config: &SymmetricHeunConfig,
    family: RecurrenceFamily,
    init: InitTag,
    n_max: usize,
) -> Result<SeriesSolution> {
    let inverted = invert_config(config)?;
    let mut s = series_coeffs(&inverted, family, init, n_max)?;
    s.kind = SeriesKind::Laurent;
    s.config = config.clone();
    Ok(s)
}

/// The canonical circular configuration seen from `w = 1/z`.
///
/// The point set maps onto itself in reversed order, so the angles are
/// reversed; the accessory parameter shifts by `-(i/4) sin(2 phi) rho_2`.
pub fn invert_config(config: &SymmetricHeunConfig) -> Result<SymmetricHeunConfig> {
    if !config.is_circular_canonical() {
        return Err(Error::NotCanonical(
            "inversion needs a canonical configuration with real phi".into(),
        ));
    }
    let phi = config.phi().unwrap();
    let rho2 = config.rho().unwrap()[0];
    let c = config.chis();
    let lambda = config.lambda() - C64::i() * 0.25 * (phi * 2.0).sin() * rho2;
    Ok(
        SymmetricHeunConfig::canonical(phi, [c[3], c[2], c[1], c[0]], lambda)?
            .with_tolerances(config.tolerances())
            .with_exclusion_radius(config.exclusion_radius()),
    )
}

/// Value and derivatives of a series solution in the original variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    pub derivative: C64,
    pub second_derivative: C64,
    /// Largest `|f_n w^n|` among the last eight terms used.
    pub tail_bound: f64,
    pub terms: usize,
}

fn horner(c: &[C64], w: C64) -> (C64, C64, C64) {
    let mut v = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    let mut d2 = C64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        d2 = d2 * w + d * 2.0;
        d = d * w + v;
        v = v * w + a;
    }
    (v, d, d2)
}

fn tail(c: &[C64], w: C64) -> f64 {
    let n = c.len();
    let lw = w.norm();
    (n.saturating_sub(8)..n)
        .map(|k| c[k].norm() * lw.powi(k as i32))
        .fold(0.0, f64::max)
}

fn eval_expansion(sol: &SeriesSolution, w: C64, tol: f64) -> Result<SeriesValue> {
    let cap = term_cap().max(sol.coeffs.len());
    let mut extended: Option<Vec<C64>> = None;
    loop {
        let c = extended.as_deref().unwrap_or(&sol.coeffs);
        let (v, d, d2) = horner(c, w);
        let t = if trailing_zeros(c) { 0.0 } else { tail(c, w) };
        if !v.is_finite() {
            return Err(Error::Overflow(c.len()));
        }
        if t <= tol * v.norm().max(1.0) {
            return Ok(SeriesValue {
                value: v,
                derivative: d,
                second_derivative: d2,
                tail_bound: t,
                terms: c.len(),
            });
        }
        if c.len() >= cap {
            return Err(Error::NotConverged {
                terms: c.len(),
                tail: t,
            });
        }
        let next = (2 * c.len()).min(cap);
        extended = Some(generate(&sol.recurrence, sol.init, next - 1)?);
    }
}

/// Sums the series at `z`, extending the truncation by doubling until the
/// tail bound drops below `tol` (relative to `max(1, |F|)`).
pub fn eval_series(sol: &SeriesSolution, z: C64, tol: f64) -> Result<SeriesValue> {
    let radius = sol.domain_radius();
    match sol.kind {
        SeriesKind::Taylor => {
            if z.norm() >= DOMAIN_SAFETY * radius {
                return Err(Error::OutsideDomain {
                    z: crate::fmt_complex(z),
                    domain: format!("|z| < {}", DOMAIN_SAFETY * radius),
                });
            }
            eval_expansion(sol, z, tol)
        }
        SeriesKind::Laurent => {
            if z.norm() * DOMAIN_SAFETY * radius <= 1.0 {
                return Err(Error::OutsideDomain {
                    z: crate::fmt_complex(z),
                    domain: format!("|z| > {}", 1.0 / (DOMAIN_SAFETY * radius)),
                });
            }
            let w = z.inv();
            let g = eval_expansion(sol, w, tol)?;
            let w2 = w * w;
            Ok(SeriesValue {
                value: g.value,
                derivative: -g.derivative * w2,
                second_derivative: g.second_derivative * w2 * w2 + g.derivative * 2.0 * w2 * w,
                tail_bound: g.tail_bound,
                terms: g.terms,
            })
        }
    }
}

const CHECK_TOL: f64 = 1e-15;

/// `(P(0)/P(z))^{1/2}` continued along the segment from the origin, equal to 1 there.
fn wronskian_at(points: &[C64; 4], z: C64) -> C64 {
    points.iter().map(|&p| (1.0 - z / p).sqrt().inv()).product()
}

/// `|F1 F2' - F2 F1' - W(z)|` with the expected Wronskian of the pair: for
/// Taylor pairs `W = (P(0)/P(z))^{1/2}`, for Laurent pairs the same law in
/// `w = 1/z` times `dw/dz`.
pub fn wronskian_residual(f1: &SeriesSolution, f2: &SeriesSolution, z: C64) -> Result<f64> {
    if f1.kind != f2.kind || f1.expansion != f2.expansion {
        return Err(Error::InvalidConfig(
            "Wronskian needs two solutions of the same expansion".into(),
        ));
    }
    let a = eval_series(f1, z, CHECK_TOL)?;
    let b = eval_series(f2, z, CHECK_TOL)?;
    let w = a.value * b.derivative - b.value * a.derivative;
    let expected = match f1.kind {
        SeriesKind::Taylor => wronskian_at(f1.expansion.points(), z),
        SeriesKind::Laurent => {
            let inv = z.inv();
            -inv * inv * wronskian_at(f1.expansion.points(), inv)
        }
    };
    Ok((w - expected).norm())
}

/// `|F'' + p_1 F' + p_0 F|` for the equation given by `config`.
pub fn ode_residual(config: &SymmetricHeunConfig, sol: &SeriesSolution, z: C64) -> Result<f64> {
    let (p1, p0) = config.equation_coefficients_at(z)?;
    let v = eval_series(sol, z, CHECK_TOL)?;
    Ok((v.second_derivative + p1 * v.derivative + p0 * v.value).norm())
}

/// Cauchy-Hadamard radius from a log-linear fit of windowed maxima of `|f_n|`
/// over the last half of the coefficients. Terminating series give `+inf`.
pub fn radius_estimate(sol: &SeriesSolution) -> Result<f64> {
    let c = &sol.coeffs;
    if c.len() < MIN_TERMS_FOR_RADIUS {
        return Err(Error::InsufficientTerms {
            needed: MIN_TERMS_FOR_RADIUS,
            got: c.len(),
        });
    }
    if trailing_zeros(c) {
        return Ok(f64::INFINITY);
    }
    let start = c.len() / 2;
    let mut pts = Vec::new();
    for chunk in (start..c.len()).collect::<Vec<_>>().chunks(8) {
        let (n, m) = chunk
            .iter()
            .map(|&n| (n, c[n].norm()))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if m > 0.0 {
            pts.push((n as f64, m.ln()));
        }
    }
    if pts.len() < 2 {
        return Ok(f64::INFINITY);
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok((-sxy / sxx).exp())
}
