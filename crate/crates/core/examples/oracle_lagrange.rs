//! Independent path integration against the series, and the Lagrange identity
//! for N = 4 and N = 5.

use heunsym::oracle::{
    integrate_path, verify_lagrange_identity, verify_lagrange_identity_heun, ContourPath,
};
use heunsym::symmetric::{eval_series, series_coeffs, InitTag, RecurrenceFamily};
use heunsym::{FuchsianConfig, SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let c = |re, im| C64::new(re, im);
    let cfg = SymmetricHeunConfig::canonical(
        c(0.9, 0.0),
        [c(0.2, 0.0), c(0.5, 0.1), c(0.7, 0.0), c(1.1, 0.0)],
        c(1.0, -2.0),
    )?;
    let z = c(0.4, 0.5);
    let f1 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F1, 200)?;
    let s = eval_series(&f1, z, 1e-15)?;
    let y = integrate_path(
        &cfg,
        &ContourPath::segment(c(0.0, 0.0), z)?,
        (c(1.0, 0.0), c(0.0, 0.0)),
        1e-13,
    )?;
    println!("series vs oracle at z: {:.2e}", (s.value - y.0).norm());

    let path = ContourPath::new(vec![c(0.0, 0.0), c(0.5, 0.2), c(-0.1, 0.6)])?;
    let rep = verify_lagrange_identity_heun(
        &cfg,
        c(1.0, 0.0),
        c(-0.5, 0.3),
        &path,
        (c(1.0, 0.0), c(0.0, 1.0)),
        1e-9,
    )?;
    println!(
        "N=4  lhs={:.6}  rhs={:.6}  gap={:.1e}",
        rep.lhs, rep.rhs, rep.gap
    );

    let pts: Vec<C64> = (0..5)
        .map(|k| C64::from_polar(1.0, 0.3 + 1.2 * k as f64))
        .collect();
    let five = FuchsianConfig::symmetric(
        pts,
        &[
            c(0.3, 0.0),
            c(0.5, 0.0),
            c(0.9, 0.0),
            c(1.1, 0.0),
            c(0.2, 0.0),
        ],
        vec![c(0.7, 0.0), c(-0.2, 0.4)],
    )?;
    let rep =
        verify_lagrange_identity(&five, c(0.8, -0.3), &path, (c(1.0, 0.0), c(0.0, 1.0)), 1e-8)?;
    println!("N=5  gap={:.1e}", rep.gap);
    Ok(())
}
