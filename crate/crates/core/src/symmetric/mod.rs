//! The fundamental pair `(F1, F2)` at the origin for the symmetric form of the
//! general Heun equation, built from the nine-term recurrence
//! `f_n + sum_{k=1}^{8} r_{n-k} f_{n-k} = 0`, and Laurent solutions at infinity
//! for canonical circular configurations.

pub mod printed;
mod recurrence;
mod series;

pub use recurrence::{recurrence_coeffs, Recurrence, RecurrenceFamily};
pub use series::{
    eval_series, invert_config, laurent_series, ode_residual, radius_estimate, series_coeffs,
    term_cap, wronskian_residual, InitTag, SeriesKind, SeriesSolution, SeriesValue,
    DEFAULT_MAX_TERMS, DOMAIN_SAFETY,
};
