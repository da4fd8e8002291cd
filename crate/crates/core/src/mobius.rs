//! Fractional-linear maps of the Riemann sphere and their action on the
//! parameters of symmetric-form equations.
//!
//! The parameter action is defined on three generators (translation,
//! dilatation, inversion) and extended to arbitrary maps through
//! [`MobiusMap::decompose`]. Under every generator the indices `chi_j` are
//! unchanged, so only the points and the accessory parameters move; the
//! `q_j` follow from the new points.

use crate::error::{Error, Result};
use crate::fuchsian::{
    canonical_points, elementary_symmetric, FuchsianConfig, SymmetricHeunConfig,
};
use crate::C64;

/// A point of the extended complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(C64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<C64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    fn projective(self) -> (C64, C64) {
        match self {
            ExtComplex::Finite(z) => (z, C64::new(1.0, 0.0)),
            ExtComplex::Infinity => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        }
    }

    fn from_projective(x: C64, y: C64) -> Self {
        if y.norm() <= f64::EPSILON * 1e-3 * x.norm() || y == C64::new(0.0, 0.0) {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(x / y)
        }
    }
}

impl From<C64> for ExtComplex {
    fn from(z: C64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// Elementary building blocks of a Moebius map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Translate(C64),
    Scale(C64),
    Invert,
}

impl Primitive {
    pub fn to_map(self) -> MobiusMap {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        match self {
            Primitive::Translate(z) => MobiusMap {
                a: one,
                b: z,
                c: zero,
                d: one,
            },
            Primitive::Scale(t) => MobiusMap {
                a: t,
                b: zero,
                c: zero,
                d: one,
            },
            Primitive::Invert => MobiusMap {
                a: zero,
                b: one,
                c: one,
                d: zero,
            },
        }
    }
}

/// `z -> (a z + b)/(c z + d)` with `ad - bc != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl MobiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let m = MobiusMap { a, b, c, d };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let scale = [self.a, self.b, self.c, self.d]
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        let det = self.det();
        if !det.is_finite() || scale == 0.0 || det.norm() <= 1e-14 * scale * scale {
            return Err(Error::DegenerateMap(det.norm()));
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Primitive::Translate(C64::new(0.0, 0.0)).to_map()
    }

    pub fn translation(zeta: C64) -> Self {
        Primitive::Translate(zeta).to_map()
    }

    pub fn dilatation(t: C64) -> Result<Self> {
        MobiusMap::new(
            t,
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
    }

    pub fn inversion() -> Self {
        Primitive::Invert.to_map()
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    /// Same map rescaled to unit determinant.
    pub fn normalized(&self) -> Self {
        let k = self.det().sqrt().inv();
        MobiusMap {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        }
    }

    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        let (x, y) = z.projective();
        ExtComplex::from_projective(self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// Image of a finite point; `None` when it is sent to infinity.
    pub fn apply_finite(&self, z: C64) -> Option<C64> {
        self.apply(ExtComplex::Finite(z)).finite()
    }

    /// `d/dz` of the map at a finite point.
    pub fn derivative(&self, z: C64) -> C64 {
        self.det() / (self.c * z + self.d).powi(2)
    }

    pub fn second_derivative(&self, z: C64) -> C64 {
        self.det() * self.c * -2.0 / (self.c * z + self.d).powi(3)
    }

    /// `self o other`.
    pub fn compose(&self, other: &MobiusMap) -> Result<MobiusMap> {
        MobiusMap::new(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    /// `u -> (d u - b)/(-c u + a)`.
    pub fn inverse(&self) -> Result<MobiusMap> {
        MobiusMap::new(self.d, -self.b, -self.c, self.a)
    }

    /// Primitive maps in application order; composing them reproduces `self`.
    pub fn decompose(&self) -> Vec<Primitive> {
        let eps = 1e-15
            * [self.a, self.b, self.c, self.d]
                .iter()
                .map(|x| x.norm())
                .fold(0.0, f64::max);
        if self.c.norm() <= eps {
            vec![
                Primitive::Scale(self.a / self.d),
                Primitive::Translate(self.b / self.d),
            ]
        } else {
            let c = self.c;
            vec![
                Primitive::Translate(self.d / c),
                Primitive::Invert,
                Primitive::Scale((self.b * c - self.a * self.d) / (c * c)),
                Primitive::Translate(self.a / c),
            ]
        }
    }

    /// Builds the map from a primitive chain given in application order.
    pub fn from_primitives(chain: &[Primitive]) -> Result<MobiusMap> {
        chain
            .iter()
            .try_fold(MobiusMap::identity(), |acc, p| p.to_map().compose(&acc))
    }

    /// The map sending `(z1, z2, z3)` to `(0, 1, infinity)`.
    pub fn to_zero_one_infinity(z: [ExtComplex; 3]) -> Result<MobiusMap> {
        use ExtComplex::*;
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let m = match z {
            [Infinity, Finite(z2), Finite(z3)] => MobiusMap {
                a: zero,
                b: -(z2 - z3),
                c: -one,
                d: z3,
            },
            [Finite(z1), Infinity, Finite(z3)] => MobiusMap {
                a: one,
                b: -z1,
                c: one,
                d: -z3,
            },
            [Finite(z1), Finite(z2), Infinity] => MobiusMap {
                a: -one,
                b: z1,
                c: zero,
                d: -(z2 - z1),
            },
            [Finite(z1), Finite(z2), Finite(z3)] => MobiusMap {
                a: z2 - z3,
                b: -z1 * (z2 - z3),
                c: z2 - z1,
                d: -z3 * (z2 - z1),
            },
            _ => return Err(Error::DuplicatePoints(0, 1)),
        };
        m.check()?;
        Ok(m.normalized())
    }

    /// The unique map with `from[k] -> to[k]` for `k = 0, 1, 2`.
    pub fn from_three_points(from: [ExtComplex; 3], to: [ExtComplex; 3]) -> Result<MobiusMap> {
        let s = MobiusMap::to_zero_one_infinity(from)?;
        let t = MobiusMap::to_zero_one_infinity(to)?;
        Ok(t.inverse()?.compose(&s)?.normalized())
    }

    /// Projective equality up to `tol` after normalisation.
    pub fn approx_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        let x = self.normalized();
        let y = other.normalized();
        let diff = |s: f64| {
            (x.a - y.a * s).norm()
                + (x.b - y.b * s).norm()
                + (x.c - y.c * s).norm()
                + (x.d - y.d * s).norm()
        };
        diff(1.0) <= tol || diff(-1.0) <= tol
    }
}

/// `((z1 - z3)(z2 - z4)) / ((z2 - z3)(z1 - z4))`, with the limiting value when one
/// point is at infinity.
pub fn cross_ratio(points: [ExtComplex; 4]) -> Result<C64> {
    let p = points.map(|z| z.projective());
    let bracket = |i: usize, j: usize| p[i].0 * p[j].1 - p[j].0 * p[i].1;
    let scale = p
        .iter()
        .map(|(x, y)| x.norm().max(y.norm()))
        .fold(0.0, f64::max);
    for i in 0..4 {
        for j in i + 1..4 {
            if bracket(i, j).norm() <= 1e-14 * scale * scale {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(bracket(0, 2) * bracket(1, 3) / (bracket(1, 2) * bracket(0, 3)))
}

pub fn cross_ratio_finite(points: &[C64; 4]) -> Result<C64> {
    cross_ratio(points.map(ExtComplex::Finite))
}

/// Four points are concyclic (or collinear) iff their cross-ratio is real.
pub fn is_circular(points: &[C64; 4]) -> Result<bool> {
    let a = cross_ratio_finite(points)?;
    Ok(a.im.abs() <= 1e-10 * (1.0 + a.norm()))
}

/// Map taking `points` (in the given order) onto the canonical biquadratic
/// configuration `(e^{i phi}, -e^{-i phi}, -e^{i phi}, e^{-i phi})`.
///
/// `phi = asin(1/sqrt(a))` with principal branches, `a` the cross-ratio. A real
/// cross-ratio `a > 1` yields `phi` in `(0, pi/2)` and points on the unit circle;
/// `0 < a < 1` yields `Re phi = pi/2` (points on the imaginary axis) and `a < 0`
/// yields imaginary `phi` (points on the real axis).
pub fn canonicalize(points: &[C64; 4]) -> Result<(MobiusMap, C64)> {
    let a = cross_ratio_finite(points)?;
    let eps = 1e-12;
    if a.norm() < eps || (a - 1.0).norm() < eps || !a.is_finite() || a.norm() > 1.0 / eps {
        return Err(Error::DegenerateCrossRatio(crate::fmt_complex(a)));
    }
    let phi = a.inv().sqrt().asin();
    let target = canonical_points(phi).map(ExtComplex::Finite);
    let src = points.map(ExtComplex::Finite);
    let map =
        MobiusMap::from_three_points([src[0], src[1], src[2]], [target[0], target[1], target[2]])?;
    Ok((map, phi))
}

/// Action of Moebius maps on equation parameters.
pub trait MobiusAction: Sized {
    fn apply_primitive(&self, p: Primitive) -> Result<Self>;

    /// Transform through the decomposition of `map`.
    fn transform(&self, map: &MobiusMap) -> Result<Self> {
        map.decompose()
            .into_iter()
            .try_fold(None::<Self>, |acc, p| {
                let cur = acc.as_ref().unwrap_or(self);
                cur.apply_primitive(p).map(Some)
            })
            .map(|r| r.expect("decomposition is never empty"))
    }
}

pub fn transform_config<T: MobiusAction>(config: &T, map: &MobiusMap) -> Result<T> {
    config.transform(map)
}

/// Value and first two derivatives of `G(w) = F(M^{-1}(w))` at `w = M(z)`,
/// given those of `F` at `z`. `None` when `z` is sent to infinity.
pub fn transport_jet(map: &MobiusMap, z: C64, jet: [C64; 3]) -> Option<(C64, [C64; 3])> {
    let w = map.apply_finite(z)?;
    let back = map.inverse().ok()?;
    let dz = back.derivative(w);
    let d2z = back.second_derivative(w);
    let [f, df, d2f] = jet;
    Some((w, [f, df * dz, d2f * dz * dz + df * d2z]))
}

impl MobiusAction for SymmetricHeunConfig {
    fn apply_primitive(&self, p: Primitive) -> Result<Self> {
        let pts = *self.points();
        let (points, lambda) = match p {
            Primitive::Translate(zeta) => (pts.map(|z| z + zeta), self.lambda()),
            Primitive::Scale(t) => (pts.map(|z| z * t), self.lambda() * t * t),
            Primitive::Invert => {
                if let Some(j) = pts.iter().position(|z| z.norm() == 0.0) {
                    return Err(Error::SingularAtOrigin(j));
                }
                let sigma4 = self.sigma()[3];
                let qz: C64 = self.q().iter().zip(pts.iter()).map(|(q, z)| q / z).sum();
                (pts.map(|z| z.inv()), (self.lambda() - qz) / sigma4)
            }
        };
        let out = SymmetricHeunConfig::new(points, *self.chis(), lambda)?
            .with_exclusion_radius(self.exclusion_radius())
            .with_tolerances(self.tolerances());
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl MobiusAction for FuchsianConfig {
    fn apply_primitive(&self, p: Primitive) -> Result<Self> {
        let n = self.n_points();
        let m = n - 4;
        let lam = self.accessory();
        let pts = self.points();
        let (points, accessory): (Vec<C64>, Vec<C64>) = match p {
            Primitive::Translate(zeta) => {
                // Lambda_new(w) = Lambda(w - zeta)
                let acc = (0..=m)
                    .map(|l| {
                        (l..=m)
                            .map(|k| lam[k] * binomial(k, l) * (-zeta).powu((k - l) as u32))
                            .sum()
                    })
                    .collect();
                (pts.iter().map(|z| z + zeta).collect(), acc)
            }
            Primitive::Scale(t) => {
                let acc = (0..=m)
                    .map(|l| lam[l] * t.powu((n - l - 2) as u32))
                    .collect();
                (pts.iter().map(|z| z * t).collect(), acc)
            }
            Primitive::Invert => {
                if let Some(j) = pts.iter().position(|z| z.norm() == 0.0) {
                    return Err(Error::SingularAtOrigin(j));
                }
                let sigma_n = elementary_symmetric(pts)[n - 1];
                let q = self.q();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let acc = (0..=m)
                    .map(|l| {
                        let s: C64 = q
                            .iter()
                            .zip(pts.iter())
                            .map(|(qj, zj)| qj * zj.powi(l as i32 + 3 - n as i32))
                            .sum();
                        (lam[m - l] - s) * sign / sigma_n
                    })
                    .collect();
                (pts.iter().map(|z| z.inv()).collect(), acc)
            }
        };
        FuchsianConfig::with_tolerances(
            points,
            self.indices().to_vec(),
            accessory,
            self.tolerances(),
        )
    }
}
