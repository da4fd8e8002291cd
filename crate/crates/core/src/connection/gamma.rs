use super::frobenius::solve_in_basis;
use crate::error::{Error, Result};
use crate::fuchsian::SymmetricHeunConfig;
use crate::heun_classical::{symmetric_to_local_frame, LocalFrame, DISK_SAFETY};
use crate::symmetric::{eval_series, series_coeffs, InitTag, RecurrenceFamily, SeriesSolution};
use crate::C64;

/// Radial position of the matching point toward `z_j`.
pub const MATCH_RADIUS: f64 = 0.7;
const VERIFY_TOL: f64 = 1e-7;
const EVAL_TOL: f64 = 1e-15;

/// `local = gamma1 F1 + gamma2 F2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionPair {
    pub gamma1: C64,
    pub gamma2: C64,
    pub matching_point: C64,
    pub verification_point: C64,
    /// Relative mismatch at the verification point.
    pub verification_gap: f64,
    pub condition: f64,
    /// The classical frame used for the local solution.
    pub frame: LocalFrame,
}

impl ConnectionPair {
    pub fn combine(&self, f1: C64, f2: C64) -> C64 {
        self.gamma1 * f1 + self.gamma2 * f2
    }
}

/// Frame around `z_j` whose HeunG argument at `z` sits deepest inside its disk.
pub fn best_local_frame(config: &SymmetricHeunConfig, j: usize, z: C64) -> Result<LocalFrame> {
    let others: Vec<usize> = (0..4).filter(|&k| k != j).collect();
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut best: Option<(f64, LocalFrame)> = None;
    let mut last_err = None;
    for p in perms {
        let ordering = [others[p[0]], others[p[1]], others[p[2]]];
        match symmetric_to_local_frame(config, j, ordering) {
            Ok(frame) => {
                let u = match frame.frame.apply_finite(z) {
                    Some(u) => u,
                    None => continue,
                };
                let margin = frame.params.radius() / u.norm().max(1e-300);
                if best.as_ref().map(|(m, _)| margin > *m).unwrap_or(true) {
                    best = Some((margin, frame));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((margin, frame)) if margin * DISK_SAFETY > 1.0 => Ok(frame),
        Some((margin, frame)) => Err(Error::OutsideDisk {
            z_abs: frame.params.radius() / margin,
            radius: DISK_SAFETY * frame.params.radius(),
        }),
        None => {
            Err(last_err.unwrap_or_else(|| Error::DegenerateFrame("no admissible ordering".into())))
        }
    }
}

/// Connection of an arbitrary local solution to a given fundamental pair,
/// matched at `at` and checked at `check`.
pub fn connect<L, B1, B2>(
    local: L,
    f1: B1,
    f2: B2,
    at: C64,
    check: C64,
) -> Result<(C64, C64, f64, f64)>
where
    L: Fn(C64) -> Result<(C64, C64)>,
    B1: Fn(C64) -> Result<(C64, C64)>,
    B2: Fn(C64) -> Result<(C64, C64)>,
{
    let (g1, g2, cond) = solve_in_basis(f1(at)?, f2(at)?, local(at)?, 1.0)?;
    let target = local(check)?.0;
    let rebuilt = g1 * f1(check)?.0 + g2 * f2(check)?.0;
    let gap = (target - rebuilt).norm() / target.norm().max(rebuilt.norm()).max(1e-300);
    Ok((g1, g2, cond, gap))
}

fn series_fn(s: &SeriesSolution) -> impl Fn(C64) -> Result<(C64, C64)> + '_ {
    move |z| eval_series(s, z, EVAL_TOL).map(|v| (v.value, v.derivative))
}

/// `Gamma_j^1, Gamma_j^2` for the local regular solution at `z_j` (normalised
/// to leading coefficient 1 in `(z - z_j)^{alpha_j}`) against the pair
/// `(F1, F2)` at the origin.
pub fn connection_gamma(config: &SymmetricHeunConfig, j: usize) -> Result<ConnectionPair> {
    if !config.is_circular_canonical() {
        return Err(Error::NotCanonical(
            "connection coefficients need a canonical circular configuration".into(),
        ));
    }
    super::frobenius::check_resonance(config, j)?;
    let zj = config.points()[j];
    let dir = zj / zj.norm();
    let at = dir * MATCH_RADIUS;
    let check = dir * 0.65 * C64::from_polar(1.0, 0.05);
    let frame = best_local_frame(config, j, at)?;
    let f1 = series_coeffs(config, RecurrenceFamily::Circular, InitTag::F1, 400)?;
    let f2 = series_coeffs(config, RecurrenceFamily::Circular, InitTag::F2, 400)?;
    let local = |z: C64| frame.normalized_solution(z, EVAL_TOL);
    let (gamma1, gamma2, condition, gap) =
        connect(local, series_fn(&f1), series_fn(&f2), at, check)?;
    if !(gap <= VERIFY_TOL) {
        return Err(Error::IllConditioned(gap / VERIFY_TOL * condition));
    }
    Ok(ConnectionPair {
        gamma1,
        gamma2,
        matching_point: at,
        verification_point: check,
        verification_gap: gap,
        condition,
        frame,
    })
}
