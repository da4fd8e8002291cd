use super::{CliError, RunConfig};
use crate::mobius::{cross_ratio_finite, transform_config, transport_jet, MobiusMap};
use crate::oracle::{verify_lagrange_identity_heun, ContourPath};
use crate::symmetric::{eval_series, ode_residual, series_coeffs, wronskian_residual, InitTag};
use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 40;
const MOBIUS_SAMPLES: usize = 8;

/// Outcome of one invariant suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub threshold: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.max_residual < self.threshold
    }

    pub fn line(&self) -> String {
        format!(
            "{:<12} max={:.3e} threshold={:.0e} {}",
            self.name,
            self.max_residual,
            self.threshold,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

fn random_map(rng: &mut ChaCha8Rng) -> MobiusMap {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| random_complex(rng, 1.0));
        if let Ok(m) = MobiusMap::new(a, b, c, d) {
            if m.det().norm() > 0.1 {
                return m;
            }
        }
    }
}

/// Wronskian law, equation residual, Moebius covariance with cross-ratio
/// invariance, and the integrated Lagrange identity, all on `cfg.equation`
/// with points drawn from `cfg.seed`.
pub fn run_suites(cfg: &RunConfig) -> Result<Vec<SuiteResult>, CliError> {
    let eq = &cfg.equation;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let radius = 0.8 * eq.min_point_modulus().min(1.0);
    let n = cfg.terms.unwrap_or(400);
    let f1 = series_coeffs(eq, cfg.family(), InitTag::F1, n)?;
    let f2 = series_coeffs(eq, cfg.family(), InitTag::F2, n)?;
    let zs: Vec<C64> = (0..SAMPLES)
        .map(|_| random_point(&mut rng, radius))
        .collect();

    let mut wr = 0.0f64;
    let mut res = 0.0f64;
    for &z in &zs {
        wr = wr.max(wronskian_residual(&f1, &f2, z)?);
        res = res
            .max(ode_residual(eq, &f1, z)?)
            .max(ode_residual(eq, &f2, z)?);
    }

    let mut maps = vec![
        MobiusMap::translation(random_complex(&mut rng, 2.0)),
        MobiusMap::dilatation(C64::from_polar(
            rng.gen_range(0.5..2.0),
            rng.gen_range(-3.0..3.0),
        ))?,
        MobiusMap::inversion(),
    ];
    maps.push(random_map(&mut rng));
    let base_ratio = cross_ratio_finite(eq.points())?;
    let mut cov = 0.0f64;
    let mut cr = 0.0f64;
    for m in &maps {
        let image = transform_config(eq, m)?;
        let ratio = cross_ratio_finite(image.points())?;
        cr = cr.max((ratio - base_ratio).norm() / base_ratio.norm().max(1e-300));
        for _ in 0..MOBIUS_SAMPLES {
            let z = random_point(&mut rng, radius);
            for f in [&f1, &f2] {
                let v = eval_series(f, z, 1e-15)?;
                let Some((w, [g, dg, d2g])) =
                    transport_jet(m, z, [v.value, v.derivative, v.second_derivative])
                else {
                    continue;
                };
                let Ok((p1, p0)) = image.equation_coefficients_at(w) else {
                    continue;
                };
                let scale = d2g.norm() + (p1 * dg).norm() + (p0 * g).norm();
                cov = cov.max((d2g + p1 * dg + p0 * g).norm() / scale.max(1e-300));
            }
        }
    }

    let a = random_point(&mut rng, 0.75 * radius);
    let b = random_point(&mut rng, 0.75 * radius);
    let path = ContourPath::new(vec![C64::new(0.0, 0.0), a, b])?;
    let dl = random_complex(&mut rng, 1.0);
    let y0 = (random_complex(&mut rng, 1.0), random_complex(&mut rng, 1.0));
    let lag = verify_lagrange_identity_heun(eq, eq.lambda(), eq.lambda() + dl, &path, y0, 1e-9)?;

    Ok(vec![
        SuiteResult {
            name: "wronskian",
            max_residual: wr,
            threshold: 1e-10,
        },
        SuiteResult {
            name: "residual",
            max_residual: res,
            threshold: 1e-9,
        },
        SuiteResult {
            name: "mobius",
            max_residual: cov,
            threshold: 1e-8,
        },
        SuiteResult {
            name: "cross_ratio",
            max_residual: cr,
            threshold: 1e-11,
        },
        SuiteResult {
            name: "lagrange",
            max_residual: lag.gap,
            threshold: 1e-6,
        },
    ])
}
