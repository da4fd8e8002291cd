use super::{measure_density, BranchTracker, ContourPath, PathPoint};
use crate::error::{Error, Result};
use crate::fuchsian::Equation;
use crate::C64;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_DEPTH: usize = 48;
const GEOMETRIC_PANELS: usize = 80;

/// How the integrand behaves at a path end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndpointBehaviour {
    Regular,
    /// The integrand (including the measure) behaves like `|z - z_end|^exponent`.
    Singular {
        exponent: f64,
    },
}

fn gk15<F: FnMut(f64) -> Result<C64>>(f: &mut F, a: f64, b: f64) -> Result<(C64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kron += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    Ok((kron * half, ((kron - gauss) * half).norm()))
}

fn adaptive<F: FnMut(f64) -> Result<C64>>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<(C64, f64)> {
    let (val, err) = gk15(f, a, b)?;
    if !val.is_finite() {
        return Err(Error::NoConvergence(depth));
    }
    if err <= tol.max(1e-15 * val.norm()) {
        return Ok((val, err));
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NoConvergence(depth));
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive(f, a, m, 0.5 * tol, depth + 1)?;
    let (r, er) = adaptive(f, m, b, 0.5 * tol, depth + 1)?;
    Ok((l + r, el + er))
}

/// `int_0^{1/2} g(u) du` with `g ~ u^e` at `u = 0`: geometric panels toward the
/// end plus a power-law tail.
fn geometric_toward_zero<F: FnMut(f64) -> Result<C64>>(f: &mut F, e: f64, tol: f64) -> Result<C64> {
    let mut total = C64::new(0.0, 0.0);
    let mut hi = 0.5;
    for _ in 0..GEOMETRIC_PANELS {
        let lo = 0.5 * hi;
        let (v, _) = adaptive(f, lo, hi, tol / GEOMETRIC_PANELS as f64, 0)?;
        total += v;
        hi = lo;
        // the tail formula is exact up to a relative O(hi) correction
        let tail = f(hi)? * hi / (e + 1.0);
        // below ~1e-13 the endpoint is no longer resolvable in absolute coordinates
        if (tail.norm() * hi < 1e-2 * tol && tail.norm() < 1e2 * tol) || hi < 1e-13 {
            return Ok(total + tail);
        }
    }
    Ok(total + f(hi)? * hi / (e + 1.0))
}

/// `g(u, from_end)` evaluates the integrand at distance `u` (in the segment
/// parameter) from the start or from the end of the segment.
fn segment_integral<F: FnMut(f64, bool) -> Result<C64>>(
    mut g: F,
    start: EndpointBehaviour,
    end: EndpointBehaviour,
    tol: f64,
) -> Result<C64> {
    let (mid_lo, left) = match start {
        EndpointBehaviour::Regular => (0.0, C64::new(0.0, 0.0)),
        EndpointBehaviour::Singular { exponent } => (
            0.5,
            geometric_toward_zero(&mut |u| g(u, false), exponent, tol / 3.0)?,
        ),
    };
    let (mid_hi, right) = match end {
        EndpointBehaviour::Regular => (1.0, C64::new(0.0, 0.0)),
        EndpointBehaviour::Singular { exponent } => (
            0.5,
            geometric_toward_zero(&mut |u| g(u, true), exponent, tol / 3.0)?,
        ),
    };
    let middle = if mid_hi > mid_lo {
        adaptive(&mut |t| g(t, false), mid_lo, mid_hi, tol / 3.0, 0)?.0
    } else {
        C64::new(0.0, 0.0)
    };
    Ok(left + middle + right)
}

/// `int_path integrand(z) dmu(z)` with the measure selected by `path.measure`
/// and both ends regular.
pub fn quadrature<E, F>(eq: &E, integrand: F, path: &ContourPath, tol: f64) -> Result<C64>
where
    E: Equation + ?Sized,
    F: Fn(PathPoint) -> Result<C64>,
{
    quadrature_with_endpoints(
        eq,
        integrand,
        path,
        tol,
        EndpointBehaviour::Regular,
        EndpointBehaviour::Regular,
    )
}

/// Adaptive Gauss-Kronrod quadrature along `path`. Singular endpoints (which may
/// sit on singular points of `eq`) are handled by geometric refinement and an
/// analytic power-law tail; their exponent must exceed `-1`.
pub fn quadrature_with_endpoints<E, F>(
    eq: &E,
    integrand: F,
    path: &ContourPath,
    tol: f64,
    start: EndpointBehaviour,
    end: EndpointBehaviour,
) -> Result<C64>
where
    E: Equation + ?Sized,
    F: Fn(PathPoint) -> Result<C64>,
{
    for b in [start, end] {
        if let EndpointBehaviour::Singular { exponent } = b {
            if exponent <= -1.0 || !exponent.is_finite() {
                return Err(Error::NonIntegrableEndpoint(exponent));
            }
        }
    }
    let singular = eq.singular_points();
    let allow = start != EndpointBehaviour::Regular || end != EndpointBehaviour::Regular;
    path.check_clearance(&singular, allow)?;
    let n = singular.len();
    let ones = vec![C64::new(1.0, 0.0); n];
    let tracker = BranchTracker::new(path, &singular, &ones);
    let nseg = path.n_segments();
    let mut total = C64::new(0.0, 0.0);
    for seg in 0..nseg {
        let delta = path.delta(seg);
        let (a, b) = (path.vertices()[seg], path.vertices()[seg + 1]);
        let g = |u: f64, from_end: bool| -> Result<C64> {
            let at = if from_end {
                PathPoint {
                    seg,
                    t: 1.0 - u,
                    z: b - delta * u,
                }
            } else {
                PathPoint {
                    seg,
                    t: u,
                    z: a + delta * u,
                }
            };
            Ok(integrand(at)? * measure_density(path.measure, &tracker, n, at) * delta)
        };
        let s = if seg == 0 {
            start
        } else {
            EndpointBehaviour::Regular
        };
        let e = if seg + 1 == nseg {
            end
        } else {
            EndpointBehaviour::Regular
        };
        total += segment_integral(g, s, e, tol / nseg as f64)?;
    }
    Ok(total)
}
