//! Independent ground truth: adaptive integration of the equation along
//! polygonal paths in the complex plane and adaptive contour quadrature.
//!
//! Nothing in here depends on the series machinery; the only inputs are the
//! pointwise coefficients of an [`Equation`](crate::fuchsian::Equation).

mod integrate;
mod lagrange;
mod quadrature;

pub use integrate::{integrate_path, integrate_path_dense, PathSolution, RkOptions};
pub use lagrange::{
    orthogonality_integral, verify_lagrange_identity, verify_lagrange_identity_heun, LagrangeReport,
};
pub use quadrature::{quadrature, quadrature_with_endpoints, EndpointBehaviour};

use crate::error::{Error, Result};
use crate::C64;

/// Default minimum distance between a path and any singular point.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-3;

/// Weight attached to `dz` when integrating along a [`ContourPath`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// Plain `dz`.
    None,
    /// `P(z)^{-1/2} dz`.
    InverseSqrtP,
    /// `(z^{N-3} - 1)/(z - 1) P(z)^{2/N - 1} dz` for `N` points.
    GeneralN,
}

/// A position on a path: segment index, local parameter in `[0, 1]` and the point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    pub seg: usize,
    pub t: f64,
    pub z: C64,
}

/// Polyline in the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPath {
    vertices: Vec<C64>,
    pub exclusion_radius: f64,
    pub measure: Measure,
}

impl ContourPath {
    pub fn new(vertices: Vec<C64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidConfig(
                "a path needs at least two vertices".into(),
            ));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(
                "consecutive path vertices coincide".into(),
            ));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("non-finite path vertex".into()));
        }
        Ok(ContourPath {
            vertices,
            exclusion_radius: DEFAULT_EXCLUSION_RADIUS,
            measure: Measure::None,
        })
    }

    pub fn segment(from: C64, to: C64) -> Result<Self> {
        Self::new(vec![from, to])
    }

    pub fn with_measure(mut self, measure: Measure) -> Self {
        self.measure = measure;
        self
    }

    pub fn with_exclusion_radius(mut self, r: f64) -> Self {
        self.exclusion_radius = r;
        self
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn n_segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> C64 {
        self.vertices[0]
    }

    pub fn end(&self) -> C64 {
        *self.vertices.last().unwrap()
    }

    pub fn point(&self, seg: usize, t: f64) -> PathPoint {
        let a = self.vertices[seg];
        let b = self.vertices[seg + 1];
        PathPoint {
            seg,
            t,
            z: a + (b - a) * t,
        }
    }

    pub fn delta(&self, seg: usize) -> C64 {
        self.vertices[seg + 1] - self.vertices[seg]
    }

    /// Checks the exclusion radius against every singular point. Endpoint
    /// singularities are tolerated when `allow_endpoints` is set, as long as no
    /// interior vertex or other point comes close.
    pub fn check_clearance(&self, singular: &[C64], allow_endpoints: bool) -> Result<()> {
        let start = self.start();
        let end = self.end();
        for (j, &zj) in singular.iter().enumerate() {
            let at_start = (zj - start).norm() <= 1e-14 * (1.0 + zj.norm());
            let at_end = (zj - end).norm() <= 1e-14 * (1.0 + zj.norm());
            for seg in 0..self.n_segments() {
                let a = self.vertices[seg];
                let b = self.vertices[seg + 1];
                let first = seg == 0;
                let last = seg + 1 == self.n_segments();
                if allow_endpoints && ((at_start && first) || (at_end && last)) {
                    // only the touching end may approach; check the rest of the segment direction
                    let (p, q) = if at_start && first { (a, b) } else { (b, a) };
                    let dir = q - p;
                    let proj = ((zj - p) * dir.conj()).re / dir.norm_sqr();
                    if proj > 1e-12 {
                        let d = distance_to_segment(zj, a, b);
                        if d < self.exclusion_radius {
                            return Err(Error::SingularApproach {
                                index: j,
                                distance: d,
                            });
                        }
                    }
                    continue;
                }
                let d = distance_to_segment(zj, a, b);
                if d < self.exclusion_radius {
                    return Err(Error::SingularApproach {
                        index: j,
                        distance: d,
                    });
                }
            }
        }
        Ok(())
    }
}

fn distance_to_segment(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

/// `prod_j (z - z_j)^{e_j}` continued along a polyline from its first vertex,
/// where every factor starts on its principal branch.
///
/// On a straight segment the argument of `z - z_j` changes by less than `pi`, so
/// the continuation from a vertex is the principal logarithm of the ratio to the
/// vertex value.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    roots: Vec<C64>,
    exponents: Vec<C64>,
    /// Per segment, per root: continuous `log(v_seg - z_j)`, or `None` when the
    /// segment starts on the root.
    logs: Vec<Vec<Option<C64>>>,
    vertices: Vec<C64>,
}

impl BranchTracker {
    pub fn new(path: &ContourPath, roots: &[C64], exponents: &[C64]) -> Self {
        let vertices = path.vertices().to_vec();
        let mut logs = Vec::with_capacity(vertices.len() - 1);
        let mut cur: Vec<Option<C64>> = roots
            .iter()
            .map(|&r| {
                let d = vertices[0] - r;
                (d.norm() > 0.0).then(|| d.ln())
            })
            .collect();
        for seg in 0..vertices.len() - 1 {
            logs.push(cur.clone());
            let a = vertices[seg];
            let b = vertices[seg + 1];
            cur = roots
                .iter()
                .enumerate()
                .map(|(k, &r)| {
                    let db = b - r;
                    if db.norm() == 0.0 {
                        return None;
                    }
                    Some(match cur[k] {
                        Some(l) => l + (db / (a - r)).ln(),
                        None => db.ln(),
                    })
                })
                .collect();
        }
        BranchTracker {
            roots: roots.to_vec(),
            exponents: exponents.to_vec(),
            logs,
            vertices,
        }
    }

    /// Continuous `log(z - z_j)` at a path point.
    fn log_factor(&self, at: PathPoint, k: usize) -> C64 {
        let r = self.roots[k];
        let a = self.vertices[at.seg];
        match self.logs[at.seg][k] {
            Some(l) => l + ((at.z - r) / (a - r)).ln(),
            None => (at.z - r).ln(),
        }
    }

    pub fn log_value(&self, at: PathPoint) -> C64 {
        (0..self.roots.len())
            .map(|k| self.exponents[k] * self.log_factor(at, k))
            .sum()
    }

    pub fn value(&self, at: PathPoint) -> C64 {
        self.log_value(at).exp()
    }

    /// Same continuation with every exponent multiplied by `s`.
    pub fn value_scaled(&self, at: PathPoint, s: f64) -> C64 {
        (self.log_value(at) * s).exp()
    }

    pub fn end_point(&self) -> PathPoint {
        let seg = self.vertices.len() - 2;
        PathPoint {
            seg,
            t: 1.0,
            z: self.vertices[seg + 1],
        }
    }

    pub fn start_point(&self) -> PathPoint {
        PathPoint {
            seg: 0,
            t: 0.0,
            z: self.vertices[0],
        }
    }
}

/// Measure density at a path point (excluding `dz`).
pub(crate) fn measure_density(
    measure: Measure,
    tracker: &BranchTracker,
    n_points: usize,
    at: PathPoint,
) -> C64 {
    match measure {
        Measure::None => C64::new(1.0, 0.0),
        Measure::InverseSqrtP => tracker.value_scaled(at, -0.5),
        Measure::GeneralN => {
            let e = 2.0 / n_points as f64 - 1.0;
            let w: C64 = (0..=n_points - 4).map(|k| at.z.powu(k as u32)).sum();
            w * tracker.value_scaled(at, e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn path_validation() {
        assert!(ContourPath::new(vec![c(0.0, 0.0)]).is_err());
        assert!(ContourPath::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).is_err());
        let p = ContourPath::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0)]).unwrap();
        assert_eq!(p.n_segments(), 2);
        assert!(p.check_clearance(&[c(2.0, 0.0)], false).is_ok());
        assert!(matches!(
            p.check_clearance(&[c(1.0, 0.5)], false),
            Err(Error::SingularApproach { index: 0, .. })
        ));
    }

    #[test]
    fn endpoint_singularity_allowed() {
        let p = ContourPath::segment(c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        assert!(p
            .check_clearance(&[c(1.0, 0.0), c(-1.0, 0.0)], true)
            .is_ok());
        assert!(p.check_clearance(&[c(1.0, 0.0)], false).is_err());
    }

    #[test]
    fn sqrt_continues_across_cut() {
        // z^{1/2} around a half-circle from 1 through i to -1 and on to -i.
        let path =
            ContourPath::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
        let tr = BranchTracker::new(&path, &[c(0.0, 0.0)], &[c(0.5, 0.0)]);
        let end = tr.end_point();
        // arg = 3 pi / 2 on the continued branch
        let expect = c(0.0, 0.75 * std::f64::consts::PI).exp();
        assert!((tr.value(end) - expect).norm() < 1e-14);
        let mid = PathPoint {
            seg: 2,
            t: 0.0,
            z: c(-1.0, 0.0),
        };
        assert!((tr.value(mid) - c(0.0, 1.0)).norm() < 1e-14);
    }
}
