//! The fundamental pair at the origin for a circular configuration, with the
//! Wronskian and residual checks and the estimated radius of convergence.

use heunsym::symmetric::{
    eval_series, ode_residual, radius_estimate, series_coeffs, wronskian_residual, InitTag,
    RecurrenceFamily,
};
use heunsym::{fmt_complex, SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let chis = [0.3, 0.6, 0.9, 1.2].map(|x| C64::new(x, 0.0));
    let cfg = SymmetricHeunConfig::canonical(C64::new(0.7, 0.0), chis, C64::new(2.0, -0.5))?;
    let f1 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F1, 300)?;
    let f2 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F2, 300)?;
    println!("radius estimate: {:.4}", radius_estimate(&f1)?);
    for r in [0.2, 0.5, 0.8] {
        let z = C64::from_polar(r, 1.0);
        let a = eval_series(&f1, z, 1e-15)?;
        let b = eval_series(&f2, z, 1e-15)?;
        println!(
            "z={}  F1={}  F2={}  terms={}  W-res={:.1e}  ode-res={:.1e}",
            fmt_complex(z),
            fmt_complex(a.value),
            fmt_complex(b.value),
            b.terms,
            wronskian_residual(&f1, &f2, z)?,
            ode_residual(&cfg, &f2, z)?,
        );
    }
    Ok(())
}
