use super::{ContourPath, PathPoint};
use crate::error::{Error, Result};
use crate::fuchsian::Equation;
use crate::C64;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// difference between the 5th and 4th order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct RkOptions {
    /// Local error target: each step keeps `|err_i| <= tol (1 + |y_i|)`.
    pub tol: f64,
    /// Smallest admissible step in the segment parameter.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for RkOptions {
    fn default() -> Self {
        RkOptions {
            tol: 1e-12,
            h_min: 1e-14,
            max_steps: 2_000_000,
        }
    }
}

impl RkOptions {
    pub fn with_tol(tol: f64) -> Self {
        RkOptions {
            tol,
            ..Default::default()
        }
    }
}

type State = [C64; 2];

#[inline]
fn rhs<E: Equation + ?Sized>(eq: &E, z: C64, delta: C64, y: &State) -> State {
    let (p1, p0) = eq.coefficients(z);
    [delta * y[1], -delta * (p1 * y[1] + p0 * y[0])]
}

/// Integrates along the straight segment `a -> b` from parameter `t0` to `t1`.
/// Accepted steps are pushed to `record` when given.
fn integrate_segment<E: Equation + ?Sized>(
    eq: &E,
    a: C64,
    b: C64,
    t0: f64,
    t1: f64,
    y0: State,
    opts: &RkOptions,
    mut record: Option<&mut Vec<(f64, State)>>,
) -> Result<State> {
    let delta = b - a;
    let mut t = t0;
    let mut y = y0;
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(y);
    }
    let mut h = span.min(0.05);
    let mut k = [[C64::new(0.0, 0.0); 2]; 7];
    k[0] = rhs(eq, a + delta * t, delta, &y);
    let mut steps = 0usize;
    while t < t1 {
        if steps >= opts.max_steps {
            return Err(Error::NoConvergence(steps));
        }
        steps += 1;
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let w = A[s][j] * h;
                if w != 0.0 {
                    ys[0] += kj[0] * w;
                    ys[1] += kj[1] * w;
                }
            }
            k[s] = rhs(eq, a + delta * (t + C[s] * h), delta, &ys);
        }
        let mut y_new = y;
        let mut err = 0.0f64;
        for i in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            let mut e = C64::new(0.0, 0.0);
            for s in 0..6 {
                acc += k[s][i] * A[6][s];
            }
            for s in 0..7 {
                e += k[s][i] * E[s];
            }
            y_new[i] = y[i] + acc * h;
            let sc = opts.tol * (1.0 + y[i].norm().max(y_new[i].norm()));
            err = err.max((e * h).norm() / sc);
        }
        if !err.is_finite() || !y_new[0].is_finite() || !y_new[1].is_finite() {
            h *= 0.25;
            if h < opts.h_min {
                return Err(Error::StepUnderflow(t));
            }
            continue;
        }
        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            k[0] = k[6];
            if let Some(rec) = record.as_deref_mut() {
                rec.push((t, y));
            }
            let fac = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= fac;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            if h < opts.h_min {
                return Err(Error::StepUnderflow(t));
            }
        }
    }
    Ok(y)
}

/// Integrates `y'' + p1 y' + p0 y = 0` along `path` from `y0 = (y, y')` at the
/// first vertex; returns `(y, y')` at the last vertex.
pub fn integrate_path<E: Equation + ?Sized>(
    eq: &E,
    path: &ContourPath,
    y0: (C64, C64),
    tol: f64,
) -> Result<(C64, C64)> {
    if !y0.0.is_finite() || !y0.1.is_finite() {
        return Err(Error::InvalidConfig("non-finite initial data".into()));
    }
    path.check_clearance(&eq.singular_points(), false)?;
    let opts = RkOptions::with_tol(tol);
    let mut y = [y0.0, y0.1];
    for seg in 0..path.n_segments() {
        let v = path.vertices();
        y = integrate_segment(eq, v[seg], v[seg + 1], 0.0, 1.0, y, &opts, None)?;
    }
    Ok((y[0], y[1]))
}

/// A solution continued along a path, evaluable anywhere on it.
pub struct PathSolution<'a, E: Equation + ?Sized> {
    eq: &'a E,
    path: ContourPath,
    checkpoints: Vec<Vec<(f64, State)>>,
    opts: RkOptions,
}

/// Like [`integrate_path`], keeping every accepted step so the solution can be
/// re-evaluated at intermediate points.
pub fn integrate_path_dense<'a, E: Equation + ?Sized>(
    eq: &'a E,
    path: &ContourPath,
    y0: (C64, C64),
    tol: f64,
) -> Result<PathSolution<'a, E>> {
    path.check_clearance(&eq.singular_points(), false)?;
    let opts = RkOptions::with_tol(tol);
    let mut y = [y0.0, y0.1];
    let mut checkpoints = Vec::with_capacity(path.n_segments());
    for seg in 0..path.n_segments() {
        let v = path.vertices();
        let mut rec = vec![(0.0, y)];
        y = integrate_segment(eq, v[seg], v[seg + 1], 0.0, 1.0, y, &opts, Some(&mut rec))?;
        checkpoints.push(rec);
    }
    Ok(PathSolution {
        eq,
        path: path.clone(),
        checkpoints,
        opts,
    })
}

impl<'a, E: Equation + ?Sized> PathSolution<'a, E> {
    pub fn path(&self) -> &ContourPath {
        &self.path
    }

    /// `(y, y')` at a point of the path.
    pub fn eval(&self, at: PathPoint) -> Result<(C64, C64)> {
        let cps = &self.checkpoints[at.seg];
        let idx = match cps.binary_search_by(|(t, _)| t.partial_cmp(&at.t).unwrap()) {
            Ok(i) => return Ok((cps[i].1[0], cps[i].1[1])),
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let (t0, y0) = cps[idx];
        let v = self.path.vertices();
        let y = integrate_segment(
            self.eq,
            v[at.seg],
            v[at.seg + 1],
            t0,
            at.t,
            y0,
            &self.opts,
            None,
        )?;
        Ok((y[0], y[1]))
    }

    pub fn end(&self) -> (C64, C64) {
        let y = self.checkpoints.last().unwrap().last().unwrap().1;
        (y[0], y[1])
    }

    pub fn start(&self) -> (C64, C64) {
        let y = self.checkpoints[0][0].1;
        (y[0], y[1])
    }
}
