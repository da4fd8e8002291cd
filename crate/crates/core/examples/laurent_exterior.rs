//! Solutions outside the unit circle from the inverted configuration.

use heunsym::symmetric::{
    eval_series, invert_config, laurent_series, ode_residual, InitTag, RecurrenceFamily,
};
use heunsym::{fmt_complex, SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let c = |re, im| C64::new(re, im);
    let cfg = SymmetricHeunConfig::canonical(
        c(0.6, 0.0),
        [c(0.25, 0.0), c(0.8, 0.1), c(0.5, 0.0), c(1.0, 0.0)],
        c(-1.0, 0.5),
    )?;
    let inv = invert_config(&cfg)?;
    println!("inverted lambda {}", fmt_complex(inv.lambda()));
    let g = laurent_series(&cfg, RecurrenceFamily::Circular, InitTag::F2, 400)?;
    for r in [1.2, 2.0, 3.0, 10.0] {
        let z = C64::from_polar(r, 0.4);
        let v = eval_series(&g, z, 1e-15)?;
        println!(
            "|z|={r:<4}  G={}  residual={:.1e}",
            fmt_complex(v.value),
            ode_residual(&cfg, &g, z)?
        );
    }
    Ok(())
}
