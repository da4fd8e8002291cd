//! The classical general Heun equation
//!
//! ```text
//! H'' + (gamma/z + delta/(z - 1) + epsilon/(z - a)) H' + (alpha beta z - lambda)/(z (z - 1)(z - a)) H = 0
//! ```
//!
//! its local series at the origin, and the change of frame that brings a
//! symmetric-form equation to this shape.

use crate::error::{Error, Result};
use crate::fuchsian::{Equation, SymmetricHeunConfig};
use crate::mobius::MobiusMap;
use crate::C64;

/// Default fraction of the convergence radius where series evaluation is allowed.
pub const DISK_SAFETY: f64 = 0.95;
/// Default cap on the number of series terms.
pub const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunGParams {
    pub a: C64,
    pub lambda: C64,
    pub alpha: C64,
    pub beta: C64,
    pub gamma: C64,
    pub delta: C64,
}

impl HeunGParams {
    pub fn new(a: C64, lambda: C64, alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        if a.norm() == 0.0 {
            return Err(Error::ZeroModulus);
        }
        if (a - 1.0).norm() == 0.0 {
            return Err(Error::InvalidConfig("a_G must differ from 1".into()));
        }
        Ok(HeunGParams {
            a,
            lambda,
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// `epsilon = alpha + beta + 1 - gamma - delta`.
    pub fn epsilon(&self) -> C64 {
        self.alpha + self.beta + 1.0 - self.gamma - self.delta
    }

    /// Local exponent pairs at `0, 1, a, infinity`.
    pub fn exponents(&self) -> [(C64, C64); 4] {
        let zero = C64::new(0.0, 0.0);
        [
            (zero, 1.0 - self.gamma),
            (zero, 1.0 - self.delta),
            (zero, self.gamma + self.delta - self.alpha - self.beta),
            (self.alpha, self.beta),
        ]
    }

    pub fn radius(&self) -> f64 {
        self.a.norm().min(1.0)
    }
}

impl Equation for HeunGParams {
    fn singular_points(&self) -> Vec<C64> {
        vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), self.a]
    }

    fn coefficients(&self, z: C64) -> (C64, C64) {
        let p1 = self.gamma / z + self.delta / (z - 1.0) + self.epsilon() / (z - self.a);
        let p0 = (self.alpha * self.beta * z - self.lambda) / (z * (z - 1.0) * (z - self.a));
        (p1, p0)
    }
}

fn is_nonpositive_integer(x: C64) -> bool {
    x.im.abs() < 1e-14 && x.re < 0.5 && (x.re - x.re.round()).abs() < 1e-14
}

/// Coefficient source for the local series, advanced one term at a time.
struct Coeffs {
    p: HeunGParams,
    eps: C64,
    prev: C64,
    cur: C64,
    n: usize,
}

impl Coeffs {
    fn new(p: HeunGParams) -> Result<Self> {
        if is_nonpositive_integer(p.gamma) {
            return Err(Error::ResonantGamma(crate::fmt_complex(p.gamma)));
        }
        Ok(Coeffs {
            p,
            eps: p.epsilon(),
            prev: C64::new(0.0, 0.0),
            cur: C64::new(1.0, 0.0),
            n: 0,
        })
    }

    /// `a n (n - 1 + gamma) h_n = [(n-1)((n-2+gamma)(1+a) + a delta + eps) + lambda] h_{n-1}
    ///   - (n-2+alpha)(n-2+beta) h_{n-2}`
    fn advance(&mut self) -> C64 {
        let p = &self.p;
        let n = (self.n + 1) as f64;
        let m = n - 1.0;
        let b = (m * ((m - 1.0 + p.gamma) * (1.0 + p.a) + p.a * p.delta + self.eps) + p.lambda)
            * self.cur;
        let c = (m - 1.0 + p.alpha) * (m - 1.0 + p.beta) * self.prev;
        let next = (b - c) / (p.a * n * (m + p.gamma));
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        next
    }
}

/// `h_0 .. h_{n_max}` of the local series normalised by `h_0 = 1`.
pub fn heun_g_coeffs(params: &HeunGParams, n_max: usize) -> Result<Vec<C64>> {
    let mut gen = Coeffs::new(*params)?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(C64::new(1.0, 0.0));
    for _ in 0..n_max {
        out.push(gen.advance());
    }
    Ok(out)
}

/// Value and first two derivatives of a local series, plus the number of terms used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunValue {
    pub value: C64,
    pub derivative: C64,
    pub second_derivative: C64,
    pub terms: usize,
}

/// Sums the local series at `z` with an explicit safety factor and term cap.
pub fn heun_g_eval_with(
    params: &HeunGParams,
    z: C64,
    tol: f64,
    safety: f64,
    max_terms: usize,
) -> Result<HeunValue> {
    let radius = safety * params.radius();
    if z.norm() >= radius {
        return Err(Error::OutsideDisk {
            z_abs: z.norm(),
            radius,
        });
    }
    let mut gen = Coeffs::new(*params)?;
    let mut value = C64::new(1.0, 0.0);
    let mut d1 = C64::new(0.0, 0.0);
    let mut d2 = C64::new(0.0, 0.0);
    // z^{n-2}, z^{n-1}, z^n
    let mut zn2 = C64::new(1.0, 0.0);
    let mut zn1;
    let mut zn = C64::new(1.0, 0.0);
    let mut small_run = 0;
    for n in 1..=max_terms {
        let h = gen.advance();
        zn1 = zn;
        zn = zn * z;
        if n >= 2 {
            zn2 = if n == 2 { C64::new(1.0, 0.0) } else { zn2 * z };
        }
        let nf = n as f64;
        let term = h * zn;
        value += term;
        d1 += h * nf * zn1;
        if n >= 2 {
            d2 += h * (nf * (nf - 1.0)) * zn2;
        }
        if !value.is_finite() {
            return Err(Error::Overflow(n));
        }
        let scale = value.norm().max(f64::MIN_POSITIVE);
        let dscale = d1.norm().max(scale);
        if term.norm() <= tol * scale && (h * nf * zn1).norm() <= tol * dscale {
            small_run += 1;
            if small_run >= 3 {
                return Ok(HeunValue {
                    value,
                    derivative: d1,
                    second_derivative: d2,
                    terms: n + 1,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NoConvergence(max_terms))
}

/// `(HeunG(z), HeunG'(z))` inside `0.95 min(1, |a|)`.
pub fn heun_g_eval(params: &HeunGParams, z: C64, tol: f64) -> Result<(C64, C64)> {
    let v = heun_g_eval_with(params, z, tol, DISK_SAFETY, MAX_TERMS)?;
    Ok((v.value, v.derivative))
}

/// Parameters of the analytic factor in `z^{1-gamma} H~(z)`.
pub fn second_solution_params(params: &HeunGParams) -> Result<HeunGParams> {
    let s = 1.0 - params.gamma;
    if s.im.abs() < 1e-14 && (s.re - s.re.round()).abs() < 1e-14 {
        return Err(Error::LogarithmicCase(crate::fmt_complex(s)));
    }
    let p = params;
    Ok(HeunGParams {
        a: p.a,
        lambda: p.lambda + s * (p.a * p.delta + p.epsilon()),
        alpha: p.alpha + s,
        beta: p.beta + s,
        gamma: 2.0 - p.gamma,
        delta: p.delta,
    })
}

/// `z^{1-gamma} H~(z)` (principal power), with leading coefficient 1; returns
/// value and derivative.
pub fn second_local_solution(params: &HeunGParams, z: C64, tol: f64) -> Result<(C64, C64)> {
    let shifted = second_solution_params(params)?;
    if z.norm() == 0.0 {
        return Err(Error::OutsideDomain {
            z: crate::fmt_complex(z),
            domain: "punctured disk around 0".into(),
        });
    }
    let s = 1.0 - params.gamma;
    let (h, dh) = heun_g_eval(&shifted, z, tol)?;
    let zs = z.powc(s);
    Ok((zs * h, zs * (s / z * h + dh)))
}

fn image(map: &MobiusMap, z: C64) -> Result<C64> {
    map.apply_finite(z).ok_or_else(|| Error::OutsideDomain {
        z: crate::fmt_complex(z),
        domain: "finite image of the frame map".into(),
    })
}

/// A symmetric-form equation brought to the classical frame around one of its points.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalFrame {
    pub params: HeunGParams,
    /// `u = frame(z)` sends `(z_j, o1, o2, o3)` to `(0, 1, a_G, infinity)`.
    pub frame: MobiusMap,
    /// Exponents of the weight `prod_k (z - z_k)^{nu_k}`, indexed like the config points.
    pub nu: [C64; 4],
    /// Index of the point sent to the origin.
    pub center: usize,
    /// Remaining points in the order they go to `1, a_G, infinity`.
    pub ordering: [usize; 3],
    /// `(alpha_{z_j}, alpha_{o1}, alpha_{o2})` used in the gauge factor.
    gauge: [C64; 3],
    /// `(z_j, o3)` in the symmetric frame.
    anchors: (C64, C64),
}

impl LocalFrame {
    /// Gauge factor `u^{a_0} (1 - u)^{a_1} (1 - u/a_G)^{a_2}` on principal branches,
    /// and its logarithmic derivative in `u`.
    pub fn gauge(&self, u: C64) -> (C64, C64) {
        let [a0, a1, a2] = self.gauge;
        let ag = self.params.a;
        let g = u.powc(a0) * (1.0 - u).powc(a1) * (1.0 - u / ag).powc(a2);
        let l = a0 / u - a1 / (1.0 - u) - a2 / (ag - u);
        (g, l)
    }

    /// The first local solution at `z_j`, `gauge(u) HeunG(u)` with `u = frame(z)`,
    /// and its `z`-derivative.
    pub fn local_solution(&self, z: C64, tol: f64) -> Result<(C64, C64)> {
        let u = image(&self.frame, z)?;
        let (h, dh) = heun_g_eval(&self.params, u, tol)?;
        let (g, l) = self.gauge(u);
        let du = self.frame.derivative(z);
        Ok((g * h, g * (l * h + dh) * du))
    }

    /// The same local solution rescaled to `(z - z_j)^{alpha_j} (1 + O(z - z_j))`
    /// with the principal power, and its `z`-derivative.
    pub fn normalized_solution(&self, z: C64, tol: f64) -> Result<(C64, C64)> {
        let [a0, a1, a2] = self.gauge;
        let (zj, o3) = self.anchors;
        let ag = self.params.a;
        let u = image(&self.frame, z)?;
        let (h, dh) = heun_g_eval(&self.params, u, tol)?;
        let du = self.frame.derivative(z);
        let x = z - zj;
        let w = x.powc(a0)
            * ((zj - o3) / (z - o3)).powc(a0)
            * (1.0 - u).powc(a1)
            * (1.0 - u / ag).powc(a2);
        let dlog = a0 / x - a0 / (z - o3) - a1 * du / (1.0 - u) - a2 * du / (ag - u);
        Ok((w * h, w * (dlog * h + dh * du)))
    }
}

/// Brings `config` to the classical frame centred at point `j` (zero-based),
/// sending the remaining points, in `ordering`, to `1, a_G, infinity`.
///
/// The symmetric solution is recovered as `F(z) = g(u) H(u)` where `g` is
/// [`LocalFrame::gauge`]; up to a constant this is `prod_k (z - z_k)^{nu_k} H(u)`.
pub fn symmetric_to_local_frame(
    config: &SymmetricHeunConfig,
    j: usize,
    ordering: [usize; 3],
) -> Result<LocalFrame> {
    let mut seen = [false; 4];
    for &k in ordering.iter().chain(std::iter::once(&j)) {
        if k >= 4 || seen[k] {
            return Err(Error::DegenerateFrame(format!(
                "ordering {ordering:?} with centre {j}"
            )));
        }
        seen[k] = true;
    }
    let pts = config.points();
    let (zj, o1, o2, o3) = (pts[j], pts[ordering[0]], pts[ordering[1]], pts[ordering[2]]);
    let frame = MobiusMap::new(o1 - o3, -zj * (o1 - o3), o1 - zj, -o3 * (o1 - zj))
        .map_err(|_| Error::DegenerateFrame("frame points coincide".into()))?;
    let ag = image(&frame, o2)?;
    if ag.norm() < 1e-12 || (ag - 1.0).norm() < 1e-12 || !ag.is_finite() {
        return Err(Error::DegenerateFrame(format!(
            "a_G = {}",
            crate::fmt_complex(ag)
        )));
    }
    let idx = config.indices();
    let (aj, bj) = idx[j];
    let (a1, b1) = idx[ordering[0]];
    let (a2, _) = idx[ordering[1]];
    let (a3, b3) = idx[ordering[2]];
    let shift = aj + a1 + a2;
    let mut params = HeunGParams::new(
        ag,
        C64::new(0.0, 0.0),
        a3 + shift,
        b3 + shift,
        1.0 + aj - bj,
        1.0 + a1 - b1,
    )?;
    let mut nu = [C64::new(0.0, 0.0); 4];
    nu[j] = aj;
    nu[ordering[0]] = a1;
    nu[ordering[1]] = a2;
    nu[ordering[2]] = -shift;
    let mut out = LocalFrame {
        params,
        frame,
        nu,
        center: j,
        ordering,
        gauge: [aj, a1, a2],
        anchors: (zj, o3),
    };

    // lambda_G from the transformed zeroth-order coefficient at two sample points
    let inv = frame.inverse()?;
    let lambda_at = |u: C64| -> Result<C64> {
        let z = image(&inv, u)?;
        let (p1, p0) = config.coefficients(z);
        let du = frame.derivative(z);
        let d2u = frame.second_derivative(z);
        let pp1 = (d2u + p1 * du) / (du * du);
        let pp0 = p0 / (du * du);
        let (_, l) = out.gauge(u);
        let dl = -aj / (u * u) - a1 / ((1.0 - u) * (1.0 - u)) - a2 / ((ag - u) * (ag - u));
        let q0 = dl + l * l + pp1 * l + pp0;
        Ok(params.alpha * params.beta * u - u * (u - 1.0) * (u - ag) * q0)
    };
    let r = 0.37 * ag.norm().min(1.0);
    let u1 = C64::from_polar(r, 0.61);
    let u2 = C64::from_polar(0.8 * r, -1.3);
    let l1 = lambda_at(u1)?;
    let l2 = lambda_at(u2)?;
    if (l1 - l2).norm() > 1e-7 * (1.0 + l1.norm()) {
        return Err(Error::DegenerateFrame(format!(
            "inconsistent accessory transform: {} vs {}",
            crate::fmt_complex(l1),
            crate::fmt_complex(l2)
        )));
    }
    params.lambda = l1;
    out.params = params;
    Ok(out)
}

/// The three-term recurrence with coefficients in the form printed in the
/// literature, kept only to report how far it is from [`heun_g_coeffs`].
pub mod printed {
    use super::*;

    /// `h_n = -R_{n-1} h_{n-1} - R_{n-2} h_{n-2}` with the printed `R`.
    pub fn printed_coeffs(p: &HeunGParams, n_max: usize) -> Vec<C64> {
        let (a, l, al, be, ga, de) = (p.a, p.lambda, p.alpha, p.beta, p.gamma, p.delta);
        let mut h = vec![C64::new(1.0, 0.0)];
        if n_max >= 1 {
            h.push(l / (a * ga));
        }
        for n in 2..=n_max {
            let nf = n as f64;
            let den = a * (ga + nf - 1.0) * (ga - 1.0);
            let r1 = -1.0 - 1.0 / a + (l - ga * (a * de - a + al + be - de - ga)) / den;
            let r2 =
                1.0 / a + (-al * be + al * ga + be * ga - ga * ga + al + be - 2.0 * ga - 1.0) / den;
            let next = -r1 * h[n - 1] - r2 * h[n - 2];
            h.push(next);
        }
        h
    }

    #[derive(Debug, Clone, Copy, PartialEq)]
    pub struct RecurrenceDiscrepancy {
        /// First `n` where the printed coefficient differs from the derived one.
        pub first_mismatch: Option<usize>,
        pub max_relative: f64,
    }

    pub fn compare(p: &HeunGParams, n_max: usize) -> Result<RecurrenceDiscrepancy> {
        let derived = heun_g_coeffs(p, n_max)?;
        let printed = printed_coeffs(p, n_max);
        let mut first = None;
        let mut max_rel = 0.0f64;
        for n in 0..=n_max {
            let rel = (derived[n] - printed[n]).norm() / derived[n].norm().max(1e-300);
            if rel > 1e-10 && first.is_none() {
                first = Some(n);
            }
            max_rel = max_rel.max(rel);
        }
        Ok(RecurrenceDiscrepancy {
            first_mismatch: first,
            max_relative: max_rel,
        })
    }
}
