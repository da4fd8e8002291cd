//! Solutions of the general Heun equation in symmetric form.
//!
//! The crate is organised by capability:
//!
//! * [`fuchsian`]: parameter algebra for symmetric-form Fuchsian equations
//!   (symmetric functions, uniformized indices, pointwise coefficients).
//! * [`mobius`]: the Moebius group on the Riemann sphere and its extension to
//!   equation parameters, including canonicalization of four points.
//! * [`heun_classical`]: the classical local `HeunG` series at `z = 0` and the
//!   frame change from the symmetric form to `(0, 1, a_G, infinity)`.
//! * [`symmetric`]: the fundamental pair `(F1, F2)` at the origin from the
//!   nine-term recurrence, Laurent solutions outside the unit circle, Wronskian
//!   and residual checks.
//! * [`oracle`]: an independent adaptive complex-path integrator and contour
//!   quadrature. It never touches series code.
//! * [`connection`]: local Frobenius data, connection coefficients and the
//!   two-point singular boundary problem in the accessory parameter.
//! * [`cli`]: the `heunsym` command-line front end.

pub mod cli;
pub mod connection;
pub mod error;
pub mod fuchsian;
pub mod heun_classical;
pub mod mobius;
pub mod oracle;
pub mod poly;
pub mod symmetric;

pub use error::{Error, Result};
pub use fuchsian::{Equation, FuchsianConfig, SymmetricHeunConfig};
pub use mobius::{ExtComplex, MobiusMap};

/// Double-precision complex number used throughout.
pub type C64 = num_complex::Complex64;

/// Compact `re+imi` rendering with shortest round-trip decimals.
pub fn fmt_complex(z: C64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im.is_sign_negative() {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}
