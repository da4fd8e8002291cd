//! Connection coefficients: the classical local solution at each singular
//! point written in the fundamental pair at the origin.

use heunsym::connection::connection_gamma;
use heunsym::{fmt_complex, SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let c = |re, im| C64::new(re, im);
    let cfg = SymmetricHeunConfig::canonical(
        c(std::f64::consts::FRAC_PI_3, 0.0),
        [c(0.3, 0.0), c(0.7, 0.1), c(1.0, 0.0), c(0.45, -0.1)],
        c(1.5, 0.5),
    )?;
    for j in 0..4 {
        let g = connection_gamma(&cfg, j)?;
        println!(
            "point {} at {}: gamma1={} gamma2={} gap={:.1e} cond={:.1e}",
            j + 1,
            fmt_complex(cfg.points()[j]),
            fmt_complex(g.gamma1),
            fmt_complex(g.gamma2),
            g.verification_gap,
            g.condition
        );
    }
    Ok(())
}
