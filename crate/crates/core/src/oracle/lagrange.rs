use super::{
    integrate_path_dense, quadrature, quadrature_with_endpoints, BranchTracker, ContourPath,
    EndpointBehaviour, Measure, PathPoint,
};
use crate::error::{Error, Result};
use crate::fuchsian::{Equation, FuchsianConfig, SymmetricHeunConfig};
use crate::C64;

/// Both sides of the integrated Lagrange identity along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LagrangeReport {
    /// `(Lambda_2 - Lambda_1) int F_1 F_2 P^{2/N - 1} dz`.
    pub lhs: C64,
    /// `P^{2/N} (F_2 F_1' - F_1 F_2')` between the path ends.
    pub rhs: C64,
    /// `|lhs - rhs| / max(1, |lhs|, |rhs|)`.
    pub gap: f64,
}

/// Integrates the symmetric equation for `Lambda_1 = config.accessory()` and
/// `Lambda_2 = Lambda_1 + delta_lambda (1 + z + ... + z^{N-4})` from shared
/// initial data at the path start and compares both sides of the identity.
pub fn verify_lagrange_identity(
    config: &FuchsianConfig,
    delta_lambda: C64,
    path: &ContourPath,
    y0: (C64, C64),
    tol: f64,
) -> Result<LagrangeReport> {
    if !config.is_symmetric() {
        return Err(Error::InvalidConfig(
            "the Lagrange identity needs indices with a_j + b_j = 1 - 2/N".into(),
        ));
    }
    let n = config.n_points();
    let lam2: Vec<C64> = config
        .accessory()
        .iter()
        .map(|&l| l + delta_lambda)
        .collect();
    let second = config.with_accessory(lam2)?;
    let rk_tol = (tol * 1e-3).clamp(1e-14, 1e-10);
    let s1 = integrate_path_dense(config, path, y0, rk_tol)?;
    let s2 = integrate_path_dense(&second, path, y0, rk_tol)?;

    let weighted = path.clone().with_measure(Measure::GeneralN);
    let integral = quadrature(
        config,
        |at| Ok(s1.eval(at)?.0 * s2.eval(at)?.0),
        &weighted,
        tol * 1e-2,
    )?;
    let lhs = delta_lambda * integral;

    let points = config.singular_points();
    let ones = vec![C64::new(1.0, 0.0); n];
    let tracker = BranchTracker::new(path, &points, &ones);
    let bracket = |at: PathPoint, f1: (C64, C64), f2: (C64, C64)| {
        tracker.value_scaled(at, 2.0 / n as f64) * (f2.0 * f1.1 - f1.0 * f2.1)
    };
    let rhs = bracket(tracker.end_point(), s1.end(), s2.end())
        - bracket(tracker.start_point(), s1.start(), s2.start());
    let gap = (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm());
    Ok(LagrangeReport { lhs, rhs, gap })
}

/// `N = 4` form of [`verify_lagrange_identity`] for two accessory values.
pub fn verify_lagrange_identity_heun(
    config: &SymmetricHeunConfig,
    lambda1: C64,
    lambda2: C64,
    path: &ContourPath,
    y0: (C64, C64),
    tol: f64,
) -> Result<LagrangeReport> {
    let base = config.to_fuchsian().with_accessory(vec![lambda1])?;
    verify_lagrange_identity(&base, lambda2 - lambda1, path, y0, tol)
}

/// `int sol1 sol2 P^{-1/2} dz` along `path`.
///
/// `endpoint_exponents` are the local exponents of the product `sol1 sol2` at
/// the path start and end (zero when the end is an ordinary point); the measure
/// adds `-1/2` at an endpoint that is a singular point.
pub fn orthogonality_integral<F1, F2>(
    config: &SymmetricHeunConfig,
    sol1: F1,
    sol2: F2,
    path: &ContourPath,
    endpoint_exponents: (C64, C64),
    tol: f64,
) -> Result<C64>
where
    F1: Fn(PathPoint) -> Result<C64>,
    F2: Fn(PathPoint) -> Result<C64>,
{
    let scale = config.points().iter().map(|p| p.norm()).fold(1.0, f64::max);
    let behaviour = |z: C64, e: C64| {
        let on_point = config
            .points()
            .iter()
            .any(|&p| (p - z).norm() <= 1e-14 * scale);
        if on_point {
            EndpointBehaviour::Singular {
                exponent: e.re - 0.5,
            }
        } else {
            EndpointBehaviour::Regular
        }
    };
    let start = behaviour(path.start(), endpoint_exponents.0);
    let end = behaviour(path.end(), endpoint_exponents.1);
    let weighted = path.clone().with_measure(Measure::InverseSqrtP);
    quadrature_with_endpoints(
        config,
        |at| Ok(sol1(at)? * sol2(at)?),
        &weighted,
        tol,
        start,
        end,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn equal_accessory_gives_zero() {
        let cfg =
            SymmetricHeunConfig::canonical(c(0.6, 0.0), [c(0.3, 0.0); 4], c(0.4, 0.1)).unwrap();
        let path = ContourPath::new(vec![c(0.0, 0.0), c(0.3, 0.2), c(0.5, -0.1)]).unwrap();
        let r = verify_lagrange_identity_heun(
            &cfg,
            c(0.4, 0.1),
            c(0.4, 0.1),
            &path,
            (c(1.0, 0.0), c(0.0, 0.0)),
            1e-8,
        )
        .unwrap();
        assert_eq!(r.lhs, c(0.0, 0.0));
        assert!(r.rhs.norm() < 1e-14);
    }

    #[test]
    fn interior_identity_holds() {
        let cfg = SymmetricHeunConfig::canonical(
            c(0.6, 0.0),
            [c(0.3, 0.1), c(0.7, 0.0), c(1.1, 0.0), c(0.2, 0.0)],
            c(0.4, 0.1),
        )
        .unwrap();
        let path = ContourPath::new(vec![c(0.1, 0.0), c(0.3, 0.4), c(-0.5, 0.2)]).unwrap();
        let r = verify_lagrange_identity_heun(
            &cfg,
            c(0.4, 0.1),
            c(-1.2, 0.6),
            &path,
            (c(0.7, 0.0), c(0.2, -0.3)),
            1e-8,
        )
        .unwrap();
        assert!(r.gap < 1e-8, "{r:?}");
    }

    #[test]
    fn non_symmetric_rejected() {
        let pts = vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 2.0), c(0.0, -2.0)];
        let idx = vec![
            (c(0.2, 0.0), c(0.1, 0.0)),
            (c(0.2, 0.0), c(0.3, 0.0)),
            (c(0.4, 0.0), c(0.4, 0.0)),
            (c(0.1, 0.0), c(0.3, 0.0)),
        ];
        if let Ok(cfg) = FuchsianConfig::new(pts, idx, vec![c(0.0, 0.0)]) {
            let path = ContourPath::segment(c(0.0, 0.0), c(0.3, 0.0)).unwrap();
            assert!(verify_lagrange_identity(
                &cfg,
                c(1.0, 0.0),
                &path,
                (c(1.0, 0.0), c(0.0, 0.0)),
                1e-8
            )
            .is_err());
        }
    }
}
