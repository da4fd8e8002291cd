//! Parameter algebra for symmetric-form Fuchsian equations.
//!
//! The general equation with `N >= 4` finite regular singular points reads
//!
//! ```text
//! W'' + sum_j (1 - a_j - b_j)/(z - z_j) W' + (Lambda(z) + sum_j q_j/(z - z_j)) / P(z) W = 0,
//! P(z) = prod_j (z - z_j),   q_j = a_j b_j P'(z_j),   deg Lambda = N - 4,
//! ```
//!
//! and `z = infinity` is an ordinary point as soon as `sum_j (a_j + b_j) = N - 2`.
//! The symmetric form fixes `a_j + b_j = 1 - 2/N` and parameterises each index
//! pair by an angle `chi_j`, so no square roots of `q_j` are ever taken.
//!
//! [`SymmetricHeunConfig`] is the `N = 4` instance used by the series code.

use crate::error::{Error, Result};
use crate::poly;
use crate::C64;

/// Default absolute tolerance on structural invariants (Fuchs relation, canonical form).
pub const STRUCTURAL_TOL: f64 = 1e-12;
/// Default relative tolerance on derived identities.
pub const IDENTITY_TOL: f64 = 1e-11;
/// Two singular points closer than this (relative to the largest modulus) are rejected.
pub const COINCIDENCE_TOL: f64 = 1e-10;
/// Default exclusion radius (relative to the largest modulus) for pointwise coefficient evaluation.
pub const DEFAULT_EXCLUSION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub structural: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: STRUCTURAL_TOL,
            identity: IDENTITY_TOL,
        }
    }
}

/// A second-order linear ODE `y'' + p1(z) y' + p0(z) y = 0` with finitely many
/// finite singular points. Implemented by every equation the crate integrates.
pub trait Equation {
    fn singular_points(&self) -> Vec<C64>;
    /// `(p1(z), p0(z))`, no proximity checks.
    fn coefficients(&self, z: C64) -> (C64, C64);
}

/// Elementary symmetric functions `sigma_1..sigma_N`, so that
/// `prod (z - z_j) = sum_n (-1)^n sigma_n z^(N-n)`.
pub fn elementary_symmetric(points: &[C64]) -> Vec<C64> {
    let mut e = vec![C64::new(0.0, 0.0); points.len() + 1];
    e[0] = C64::new(1.0, 0.0);
    for (m, &z) in points.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * z;
        }
    }
    e.remove(0);
    e
}

/// `(sigma_1^j, sigma_2^j, sigma_3^j)`: the symmetric functions with `z_j` set to zero.
/// `j` is zero-based.
pub fn reduced_symmetric(points: &[C64; 4], j: usize) -> [C64; 3] {
    let mut p = *points;
    p[j] = C64::new(0.0, 0.0);
    let s = elementary_symmetric(&p);
    [s[0], s[1], s[2]]
}

/// Index pair `(alpha, beta) = (1 - 2/N) (cos^2 chi, sin^2 chi)`.
pub fn indices_from_chi(chi: C64, n_points: usize) -> (C64, C64) {
    let w = 1.0 - 2.0 / n_points as f64;
    let c = chi.cos();
    let s = chi.sin();
    (c * c * w, s * s * w)
}

/// Exponent shifts `nu_j = ((1 - 2/N) - a_j - b_j)/2` that move every index pair onto
/// the symmetric constraint `a_j + nu_j + b_j + nu_j = 1 - 2/N`.
pub fn symmetrize_indices(indices: &[(C64, C64)], tol: f64) -> Result<Vec<C64>> {
    let n = indices.len();
    let total: C64 = indices.iter().map(|&(a, b)| a + b).sum();
    let expected = n as f64 - 2.0;
    if (total - expected).norm() > tol {
        return Err(Error::FuchsRelationViolated {
            got: total.re,
            expected,
        });
    }
    let target = 1.0 - 2.0 / n as f64;
    Ok(indices
        .iter()
        .map(|&(a, b)| (C64::new(target, 0.0) - a - b) * 0.5)
        .collect())
}

/// `(rho_2, rho_3, rho_4, rho_5)` for the canonical biquadratic configuration.
pub fn rho_functions(phi: C64, chis: &[C64; 4]) -> [C64; 4] {
    let s2: Vec<C64> = chis.iter().map(|&c| (c * 2.0).sin().powi(2)).collect();
    let i = C64::i();
    let e1 = (i * phi).exp();
    let em1 = (-i * phi).exp();
    let e2 = e1 * e1;
    let em2 = em1 * em1;
    [
        (s2[0] + s2[2]) - (s2[1] + s2[3]),
        em1 * (s2[0] - s2[2]) + e1 * (s2[1] - s2[3]),
        e2 * (s2[0] + s2[2]) - em2 * (s2[1] + s2[3]),
        e1 * (s2[0] - s2[2]) + em1 * (s2[1] - s2[3]),
    ]
}

/// Roots of `z^4 - 2 cos(2 phi) z^2 + 1` in the fixed order
/// `(e^{i phi}, -e^{-i phi}, -e^{i phi}, e^{-i phi})`.
pub fn canonical_points(phi: C64) -> [C64; 4] {
    let e = (C64::i() * phi).exp();
    let em = (-C64::i() * phi).exp();
    [e, -em, -e, em]
}

fn check_distinct(points: &[C64]) -> Result<()> {
    if points.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidConfig(
            "singular points must be finite".into(),
        ));
    }
    let scale = points
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i] - points[j]).norm() <= COINCIDENCE_TOL * scale {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(())
}

fn derivative_at_root(points: &[C64], j: usize) -> C64 {
    points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &zk)| points[j] - zk)
        .product()
}

/// General-`N` Fuchsian equation: points, index pairs and the accessory polynomial
/// `Lambda(z) = sum_l lambda_l z^l`, `l = 0..N-4`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuchsianConfig {
    points: Vec<C64>,
    indices: Vec<(C64, C64)>,
    accessory: Vec<C64>,
    tol: Tolerances,
}

impl FuchsianConfig {
    pub fn new(points: Vec<C64>, indices: Vec<(C64, C64)>, accessory: Vec<C64>) -> Result<Self> {
        Self::with_tolerances(points, indices, accessory, Tolerances::default())
    }

    pub fn with_tolerances(
        points: Vec<C64>,
        indices: Vec<(C64, C64)>,
        accessory: Vec<C64>,
        tol: Tolerances,
    ) -> Result<Self> {
        let n = points.len();
        if n < 4 {
            return Err(Error::InvalidConfig(format!("need N >= 4 points, got {n}")));
        }
        if indices.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{} index pairs for {n} points",
                indices.len()
            )));
        }
        if accessory.len() != n - 3 {
            return Err(Error::InvalidConfig(format!(
                "accessory polynomial needs {} coefficients, got {}",
                n - 3,
                accessory.len()
            )));
        }
        check_distinct(&points)?;
        symmetrize_indices(&indices, tol.structural)?;
        Ok(FuchsianConfig {
            points,
            indices,
            accessory,
            tol,
        })
    }

    /// Symmetric form: indices from uniformization angles.
    pub fn symmetric(points: Vec<C64>, chis: &[C64], accessory: Vec<C64>) -> Result<Self> {
        let n = points.len();
        if chis.len() != n {
            return Err(Error::InvalidConfig(format!(
                "{} angles for {n} points",
                chis.len()
            )));
        }
        let indices = chis.iter().map(|&c| indices_from_chi(c, n)).collect();
        Self::new(points, indices, accessory)
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }

    pub fn indices(&self) -> &[(C64, C64)] {
        &self.indices
    }

    pub fn accessory(&self) -> &[C64] {
        &self.accessory
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn with_accessory(&self, accessory: Vec<C64>) -> Result<Self> {
        Self::with_tolerances(
            self.points.clone(),
            self.indices.clone(),
            accessory,
            self.tol,
        )
    }

    /// `q_j = a_j b_j P'(z_j)`.
    pub fn q(&self) -> Vec<C64> {
        (0..self.n_points())
            .map(|j| {
                let (a, b) = self.indices[j];
                a * b * derivative_at_root(&self.points, j)
            })
            .collect()
    }

    pub fn symmetrize_indices(&self) -> Result<Vec<C64>> {
        symmetrize_indices(&self.indices, self.tol.structural)
    }

    /// True when every `a_j + b_j = 1 - 2/N`.
    pub fn is_symmetric(&self) -> bool {
        let target = 1.0 - 2.0 / self.n_points() as f64;
        self.indices
            .iter()
            .all(|&(a, b)| (a + b - target).norm() <= self.tol.structural)
    }

    pub fn p_poly(&self) -> Vec<C64> {
        poly::from_roots(&self.points)
    }

    pub fn accessory_at(&self, z: C64) -> C64 {
        poly::eval(&self.accessory, z)
    }
}

impl Equation for FuchsianConfig {
    fn singular_points(&self) -> Vec<C64> {
        self.points.clone()
    }

    fn coefficients(&self, z: C64) -> (C64, C64) {
        let q = self.q();
        let mut p1 = C64::new(0.0, 0.0);
        let mut qsum = C64::new(0.0, 0.0);
        let mut p = C64::new(1.0, 0.0);
        for (j, &zj) in self.points.iter().enumerate() {
            let (a, b) = self.indices[j];
            let inv = (z - zj).inv();
            p1 += (C64::new(1.0, 0.0) - a - b) * inv;
            qsum += q[j] * inv;
            p *= z - zj;
        }
        (p1, (self.accessory_at(z) + qsum) / p)
    }
}

/// How the uniformization angles of a [`SymmetricHeunConfig`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChiSource {
    /// Supplied directly.
    Given,
    /// Recovered from raw `q_j` by `sin(2 chi) = +sqrt(16 q_j / P'(z_j))` (principal
    /// square root and principal arcsine).
    PrincipalFromQ,
}

/// The `N = 4` symmetric-form general Heun equation
///
/// ```text
/// F'' + (1/2) sum_j 1/(z - z_j) F' + (lambda + sum_j q_j/(z - z_j)) / P(z) F = 0.
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricHeunConfig {
    points: [C64; 4],
    chis: [C64; 4],
    lambda: C64,
    q: [C64; 4],
    sigma: [C64; 4],
    phi: Option<C64>,
    chi_source: ChiSource,
    exclusion: f64,
    tol: Tolerances,
}

impl SymmetricHeunConfig {
    pub fn new(points: [C64; 4], chis: [C64; 4], lambda: C64) -> Result<Self> {
        Self::build(
            points,
            chis,
            lambda,
            ChiSource::Given,
            Tolerances::default(),
            None,
        )
    }

    /// Canonical biquadratic configuration with points at the roots of
    /// `z^4 - 2 cos(2 phi) z^2 + 1`.
    pub fn canonical(phi: C64, chis: [C64; 4], lambda: C64) -> Result<Self> {
        Self::build(
            canonical_points(phi),
            chis,
            lambda,
            ChiSource::Given,
            Tolerances::default(),
            Some(phi),
        )
    }

    /// Build from raw `q_j`. The angles are resolved on the principal branch.
    pub fn from_q(points: [C64; 4], q: [C64; 4], lambda: C64) -> Result<Self> {
        check_distinct(&points)?;
        let mut chis = [C64::new(0.0, 0.0); 4];
        for j in 0..4 {
            let s2 = q[j] * 16.0 / derivative_at_root(&points, j);
            chis[j] = s2.sqrt().asin() * 0.5;
        }
        Self::build(
            points,
            chis,
            lambda,
            ChiSource::PrincipalFromQ,
            Tolerances::default(),
            None,
        )
    }

    fn build(
        points: [C64; 4],
        chis: [C64; 4],
        lambda: C64,
        chi_source: ChiSource,
        tol: Tolerances,
        phi_hint: Option<C64>,
    ) -> Result<Self> {
        check_distinct(&points)?;
        if chis.iter().any(|c| !c.is_finite()) || !lambda.is_finite() {
            return Err(Error::InvalidConfig("non-finite parameter".into()));
        }
        let mut q = [C64::new(0.0, 0.0); 4];
        for j in 0..4 {
            let s = (chis[j] * 2.0).sin() * 0.25;
            q[j] = s * s * derivative_at_root(&points, j);
        }
        let s = elementary_symmetric(&points);
        let sigma = [s[0], s[1], s[2], s[3]];
        let phi = phi_hint.or_else(|| {
            let phi = -C64::i() * points[0].ln();
            let cp = canonical_points(phi);
            let close = cp
                .iter()
                .zip(points.iter())
                .all(|(a, b)| (a - b).norm() <= tol.structural);
            close.then_some(phi)
        });
        Ok(SymmetricHeunConfig {
            points,
            chis,
            lambda,
            q,
            sigma,
            phi,
            chi_source,
            exclusion: DEFAULT_EXCLUSION,
            tol,
        })
    }

    pub fn with_lambda(&self, lambda: C64) -> Self {
        let mut c = self.clone();
        c.lambda = lambda;
        c
    }

    pub fn with_exclusion_radius(mut self, radius: f64) -> Self {
        self.exclusion = radius;
        self
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn points(&self) -> &[C64; 4] {
        &self.points
    }

    pub fn chis(&self) -> &[C64; 4] {
        &self.chis
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }

    pub fn q(&self) -> &[C64; 4] {
        &self.q
    }

    pub fn sigma(&self) -> &[C64; 4] {
        &self.sigma
    }

    pub fn chi_source(&self) -> ChiSource {
        self.chi_source
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn exclusion_radius(&self) -> f64 {
        self.exclusion
    }

    /// `(alpha_j, beta_j)` for every point.
    pub fn indices(&self) -> [(C64, C64); 4] {
        self.chis.map(|c| indices_from_chi(c, 4))
    }

    /// The angle `phi` when the points are in canonical order, `None` otherwise.
    pub fn phi(&self) -> Option<C64> {
        self.phi
    }

    pub fn is_canonical(&self) -> bool {
        self.phi.is_some()
    }

    /// `(rho_2, rho_3, rho_4, rho_5)`, defined for canonical configurations only.
    pub fn rho(&self) -> Option<[C64; 4]> {
        self.phi.map(|phi| rho_functions(phi, &self.chis))
    }

    /// Canonical with real `phi`: the four points lie on the unit circle.
    pub fn is_circular_canonical(&self) -> bool {
        self.phi
            .map(|phi| phi.im.abs() <= self.tol.structural)
            .unwrap_or(false)
    }

    pub fn p(&self, z: C64) -> C64 {
        self.points.iter().map(|&zj| z - zj).product()
    }

    pub fn p_prime_at_point(&self, j: usize) -> C64 {
        derivative_at_root(&self.points, j)
    }

    /// `P(z)` coefficients in ascending order.
    pub fn p_poly(&self) -> Vec<C64> {
        poly::from_roots(&self.points)
    }

    pub fn min_point_modulus(&self) -> f64 {
        self.points
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// `(p1(z), p0(z))` with `p1 = P'/(2P)`, `p0 = (lambda + sum q_j/(z - z_j))/P`.
    pub fn equation_coefficients_at(&self, z: C64) -> Result<(C64, C64)> {
        let scale = self.points.iter().map(|p| p.norm()).fold(1.0, f64::max);
        for (j, &zj) in self.points.iter().enumerate() {
            if (z - zj).norm() < self.exclusion * scale {
                return Err(Error::SingularPointHit {
                    z: crate::fmt_complex(z),
                    index: j,
                    radius: self.exclusion * scale,
                });
            }
        }
        Ok(self.coefficients(z))
    }

    /// Same equation as a general-`N` config (`N = 4`, `Lambda = lambda`).
    pub fn to_fuchsian(&self) -> FuchsianConfig {
        FuchsianConfig {
            points: self.points.to_vec(),
            indices: self.indices().to_vec(),
            accessory: vec![self.lambda],
            tol: self.tol,
        }
    }
}

impl Equation for SymmetricHeunConfig {
    fn singular_points(&self) -> Vec<C64> {
        self.points.to_vec()
    }

    fn coefficients(&self, z: C64) -> (C64, C64) {
        let mut p1 = C64::new(0.0, 0.0);
        let mut qsum = C64::new(0.0, 0.0);
        let mut p = C64::new(1.0, 0.0);
        for j in 0..4 {
            let d = z - self.points[j];
            let inv = d.inv();
            p1 += inv;
            qsum += self.q[j] * inv;
            p *= d;
        }
        (p1 * 0.5, (self.lambda + qsum) / p)
    }
}
