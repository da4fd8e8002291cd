use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("Fuchs relation violated: sum of indices is {got}, expected {expected}")]
    FuchsRelationViolated { got: f64, expected: f64 },
    #[error("point {z} is within {radius:e} of singular point #{index}")]
    SingularPointHit {
        z: String,
        index: usize,
        radius: f64,
    },
    #[error("degenerate Moebius map (ad - bc = {0:e})")]
    DegenerateMap(f64),
    #[error("points #{0} and #{1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("degenerate cross-ratio {0}")]
    DegenerateCrossRatio(String),
    #[error("inversion requested but singular point #{0} sits at the origin")]
    SingularAtOrigin(usize),
    #[error("gamma = {0} is a non-positive integer")]
    ResonantGamma(String),
    #[error("third singular point a_G is zero")]
    ZeroModulus,
    #[error("|z| = {z_abs} is outside the admissible disk of radius {radius}")]
    OutsideDisk { z_abs: f64, radius: f64 },
    #[error("no convergence after {0} terms")]
    NoConvergence(usize),
    #[error("exponent difference {0} is an integer (logarithmic case)")]
    LogarithmicCase(String),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
    #[error("recurrence family {family} does not apply: {reason}")]
    BadFamilyForConfig {
        family: &'static str,
        reason: String,
    },
    #[error("coefficient f_{0} overflowed")]
    Overflow(usize),
    #[error("z = {z} is outside the convergence domain ({domain})")]
    OutsideDomain { z: String, domain: String },
    #[error("series not converged: tail bound {tail:e} after {terms} terms")]
    NotConverged { terms: usize, tail: f64 },
    #[error("configuration is not in canonical circular form: {0}")]
    NotCanonical(String),
    #[error("need at least {needed} coefficients, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("path comes within {distance:e} of singular point #{index}")]
    SingularApproach { index: usize, distance: f64 },
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("endpoint exponent {0} makes the integral divergent")]
    NonIntegrableEndpoint(f64),
    #[error("resonant exponents at singular point #{index}: difference {diff}")]
    ResonantExponents { index: usize, diff: String },
    #[error("ill-conditioned matching system (condition number {0:e})")]
    IllConditioned(f64),
    #[error("no root found in the window")]
    NoRootInWindow,
}
