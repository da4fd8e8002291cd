use super::frobenius::{
    check_resonance, default_terms, frobenius_local, ExponentChoice, LocalBasis, LocalFrobenius,
};
use crate::error::{Error, Result};
use crate::fuchsian::SymmetricHeunConfig;
use crate::oracle::{
    integrate_path_dense, orthogonality_integral, ContourPath, PathPoint, PathSolution,
};
use crate::C64;
use rayon::prelude::*;

const ODE_TOL: f64 = 1e-13;
const MAX_SECANT: usize = 80;

/// Where to look for eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaWindow {
    /// `samples` equally spaced real values in `[lo, hi]`.
    Real { lo: f64, hi: f64, samples: usize },
    /// A `nre x nim` grid over the rectangle with corners `lo` and `hi`.
    Rect {
        lo: C64,
        hi: C64,
        nre: usize,
        nim: usize,
    },
}

impl LambdaWindow {
    fn contains(&self, l: C64) -> bool {
        match *self {
            LambdaWindow::Real { lo, hi, .. } => {
                let pad = 1e-9 * (hi - lo).abs();
                l.re >= lo - pad && l.re <= hi + pad && l.im.abs() <= 1e-6 * (1.0 + l.re.abs())
            }
            LambdaWindow::Rect { lo, hi, .. } => {
                l.re >= lo.re && l.re <= hi.re && l.im >= lo.im && l.im <= hi.im
            }
        }
    }

    fn spacing(&self) -> f64 {
        match *self {
            LambdaWindow::Real { lo, hi, samples } => (hi - lo).abs() / (samples.max(2) - 1) as f64,
            LambdaWindow::Rect { lo, hi, nre, nim } => ((hi.re - lo.re) / (nre.max(2) - 1) as f64)
                .min((hi.im - lo.im) / (nim.max(2) - 1) as f64),
        }
    }
}

/// Shooting setup for the two-point problem between `z_i` and `z_j`.
#[derive(Debug, Clone)]
pub struct Shooting {
    template: SymmetricHeunConfig,
    i: usize,
    j: usize,
    start: C64,
    matching: C64,
}

impl Shooting {
    /// Launch and matching points sit on the segment `z_i -> z_j` at half the
    /// Frobenius disk radius (capped at a quarter of the segment).
    pub fn new(template: &SymmetricHeunConfig, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= 4 || j >= 4 {
            return Err(Error::InvalidConfig(format!(
                "need two distinct points, got {i} and {j}"
            )));
        }
        check_resonance(template, i)?;
        check_resonance(template, j)?;
        let pts = template.points();
        let (zi, zj) = (pts[i], pts[j]);
        let len = (zj - zi).norm();
        let dir = (zj - zi) / len;
        let disk = |k: usize| {
            (0..4)
                .filter(|&m| m != k)
                .map(|m| (pts[m] - pts[k]).norm())
                .fold(f64::INFINITY, f64::min)
        };
        let ri = (0.5 * disk(i)).min(0.25 * len);
        let rj = (0.5 * disk(j)).min(0.25 * len);
        let s = Shooting {
            template: template.clone(),
            i,
            j,
            start: zi + dir * ri,
            matching: zj - dir * rj,
        };
        s.full_path()?.check_clearance(pts, true)?;
        Ok(s)
    }

    fn full_path(&self) -> Result<ContourPath> {
        let pts = self.template.points();
        ContourPath::segment(pts[self.i], pts[self.j])
    }

    /// The boundary function `D(lambda) = C^{beta_j}` and the full shot.
    pub fn shoot(&self, lambda: C64) -> Result<Eigenfunction> {
        let cfg = self.template.with_lambda(lambda);
        let launch = frobenius_local(
            &cfg,
            self.i,
            ExponentChoice::Alpha,
            default_terms(&cfg, self.i, self.start),
        )?;
        let y0 = launch.eval(self.start)?;
        let inner = ContourPath::segment(self.start, self.matching)?;
        let sol = integrate_path_dense(&cfg, &inner, y0, ODE_TOL)?;
        let basis = LocalBasis::new(&cfg, self.j, default_terms(&cfg, self.j, self.matching))?;
        let dec = basis.decompose(self.matching, sol.end())?;
        let checkpoints = OwnedPath::from(&sol);
        Ok(Eigenfunction {
            lambda,
            config: cfg,
            launch,
            basis,
            c_alpha: dec.c_alpha,
            c_beta: dec.c_beta,
            start: self.start,
            matching: self.matching,
            inner: checkpoints,
        })
    }

    pub fn boundary_function(&self, lambda: C64) -> Result<C64> {
        Ok(self.shoot(lambda)?.c_beta)
    }

    pub fn path(&self) -> ContourPath {
        self.full_path().expect("validated in new")
    }
}

/// Stored continuation of one shot, independent of the config borrow.
#[derive(Debug, Clone)]
struct OwnedPath {
    start: C64,
    end: C64,
    /// `(t, value, derivative)` on the segment, ascending in `t`.
    points: Vec<(f64, C64, C64)>,
}

impl OwnedPath {
    fn from(sol: &PathSolution<'_, SymmetricHeunConfig>) -> Self {
        let path = sol.path();
        let n = 64;
        let mut points = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = k as f64 / n as f64;
            let (v, d) = sol.eval(path.point(0, t)).expect("already integrated");
            points.push((t, v, d));
        }
        OwnedPath {
            start: path.start(),
            end: path.end(),
            points,
        }
    }
}

/// A solution launched as the pure `alpha` Frobenius solution at `z_i` and
/// continued to `z_j`, where it is `c_alpha F_alpha + c_beta F_beta`.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    pub lambda: C64,
    pub config: SymmetricHeunConfig,
    launch: LocalFrobenius,
    basis: LocalBasis,
    pub c_alpha: C64,
    pub c_beta: C64,
    start: C64,
    matching: C64,
    inner: OwnedPath,
}

impl Eigenfunction {
    /// Value at `z` on the segment `z_i -> z_j`.
    pub fn value(&self, z: C64) -> Result<C64> {
        let zi = self.launch.center;
        let zj = self.basis.alpha.center;
        if (z - zi).norm() <= (self.start - zi).norm() {
            return Ok(self.launch.eval(z)?.0);
        }
        if (z - zj).norm() <= (self.matching - zj).norm() {
            let a = self.basis.alpha.eval(z)?.0;
            let b = self.basis.beta.eval(z)?.0;
            return Ok(self.c_alpha * a + self.c_beta * b);
        }
        let seg = self.inner.end - self.inner.start;
        let t = (((z - self.inner.start) * seg.conj()).re / seg.norm_sqr()).clamp(0.0, 1.0);
        let k = self
            .inner
            .points
            .partition_point(|p| p.0 <= t)
            .saturating_sub(1)
            .min(self.inner.points.len() - 2);
        let (t0, y0, d0) = self.inner.points[k];
        if t == t0 {
            return Ok(y0);
        }
        let piece = ContourPath::segment(self.inner.start + seg * t0, z)?;
        Ok(crate::oracle::integrate_path(&self.config, &piece, (y0, d0), ODE_TOL)?.0)
    }

    /// Leading exponent of the solution at `z_j`.
    pub fn exponent_at_end(&self) -> C64 {
        if self.c_beta.norm() <= 1e-10 * self.c_alpha.norm().max(1e-300) {
            self.basis.alpha.exponent
        } else {
            self.basis.beta.exponent
        }
    }

    pub fn exponent_at_start(&self) -> C64 {
        self.launch.exponent
    }
}

/// `int_{z_i}^{z_j} u v P^{-1/2} dz` along the straight segment.
pub fn pair_integral(
    shooting: &Shooting,
    u: &Eigenfunction,
    v: &Eigenfunction,
    tol: f64,
) -> Result<C64> {
    let path = shooting.path();
    let e0 = u.exponent_at_start() + v.exponent_at_start();
    let e1 = u.exponent_at_end() + v.exponent_at_end();
    orthogonality_integral(
        &u.config,
        |at: PathPoint| u.value(at.z),
        |at: PathPoint| v.value(at.z),
        &path,
        (e0, e1),
        tol,
    )
}

/// A root of the boundary function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub lambda: C64,
    /// `|D(lambda)|` at the returned value.
    pub residual: f64,
}

fn secant(shooting: &Shooting, mut x0: C64, mut x1: C64, tol: f64) -> Option<Eigenvalue> {
    let mut d0 = shooting.boundary_function(x0).ok()?;
    let mut d1 = shooting.boundary_function(x1).ok()?;
    for _ in 0..MAX_SECANT {
        if d1.norm() < tol {
            return Some(Eigenvalue {
                lambda: x1,
                residual: d1.norm(),
            });
        }
        let denom = d1 - d0;
        if denom.norm() == 0.0 {
            return None;
        }
        let x2 = x1 - d1 * (x1 - x0) / denom;
        if !x2.is_finite() {
            return None;
        }
        x0 = x1;
        d0 = d1;
        x1 = x2;
        d1 = shooting.boundary_function(x1).ok()?;
    }
    (d1.norm() < tol).then_some(Eigenvalue {
        lambda: x1,
        residual: d1.norm(),
    })
}

/// Eigenvalues `lambda*` of the two-point problem: the solution that is pure
/// `alpha` at `z_i` is also pure `alpha` at `z_j`. Local minima of `|D|` on the
/// window grid seed a complex secant iteration, stopped at `|D| < tol`.
pub fn eigenvalue_search(
    template: &SymmetricHeunConfig,
    i: usize,
    j: usize,
    window: LambdaWindow,
    tol: f64,
) -> Result<Vec<Eigenvalue>> {
    let shooting = Shooting::new(template, i, j)?;
    let grid: Vec<C64> = match window {
        LambdaWindow::Real { lo, hi, samples } => {
            let n = samples.max(3);
            (0..n)
                .map(|k| C64::new(lo + (hi - lo) * k as f64 / (n - 1) as f64, 0.0))
                .collect()
        }
        LambdaWindow::Rect { lo, hi, nre, nim } => {
            let (nr, ni) = (nre.max(3), nim.max(3));
            (0..ni)
                .flat_map(|b| {
                    (0..nr).map(move |a| {
                        C64::new(
                            lo.re + (hi.re - lo.re) * a as f64 / (nr - 1) as f64,
                            lo.im + (hi.im - lo.im) * b as f64 / (ni - 1) as f64,
                        )
                    })
                })
                .collect()
        }
    };
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&l| {
            shooting
                .boundary_function(l)
                .map(|d| d.norm())
                .unwrap_or(f64::INFINITY)
        })
        .collect();
    let minima: Vec<usize> = match window {
        LambdaWindow::Real { .. } => (0..grid.len())
            .filter(|&k| {
                let left = if k > 0 { values[k - 1] } else { f64::INFINITY };
                let right = if k + 1 < grid.len() {
                    values[k + 1]
                } else {
                    f64::INFINITY
                };
                values[k].is_finite() && values[k] <= left && values[k] <= right
            })
            .collect(),
        LambdaWindow::Rect { nre, nim, .. } => {
            let (nr, ni) = (nre.max(3), nim.max(3));
            (0..grid.len())
                .filter(|&k| {
                    let (a, b) = ((k % nr) as isize, (k / nr) as isize);
                    let mut ok = values[k].is_finite();
                    for da in -1..=1isize {
                        for db in -1..=1isize {
                            let (x, y) = (a + da, b + db);
                            if (da, db) != (0, 0)
                                && x >= 0
                                && y >= 0
                                && (x as usize) < nr
                                && (y as usize) < ni
                            {
                                ok &= values[k] <= values[y as usize * nr + x as usize];
                            }
                        }
                    }
                    ok
                })
                .collect()
        }
    };
    let h = window.spacing();
    let mut roots: Vec<Eigenvalue> = minima
        .par_iter()
        .filter_map(|&k| secant(&shooting, grid[k], grid[k] + h * 0.25, tol))
        .filter(|e| window.contains(e.lambda))
        .collect();
    roots.sort_by(|a, b| {
        a.lambda
            .re
            .partial_cmp(&b.lambda.re)
            .unwrap()
            .then(a.lambda.im.partial_cmp(&b.lambda.im).unwrap())
    });
    roots.dedup_by(|a, b| (a.lambda - b.lambda).norm() < 1e-7 * (1.0 + a.lambda.norm()));
    if roots.is_empty() {
        return Err(Error::NoRootInWindow);
    }
    Ok(roots)
}
