//! Send four arbitrary points to canonical biquadratic position and carry an
//! equation along; the cross-ratio is unchanged.

use heunsym::mobius::{canonicalize, cross_ratio_finite, is_circular, transform_config};
use heunsym::{fmt_complex, SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let pts = [
        C64::new(2.0, 1.0),
        C64::new(-1.0, 0.5),
        C64::new(0.3, -2.0),
        C64::new(3.0, -1.0),
    ];
    let chis = [0.2, 0.4, 0.6, 0.8].map(|x| C64::new(x, 0.0));
    let cfg = SymmetricHeunConfig::new(pts, chis, C64::new(1.0, 0.0))?;
    let (map, phi) = canonicalize(&pts)?;
    let image = transform_config(&cfg, &map)?;
    println!("phi = {}", fmt_complex(phi));
    println!("circular: {}", is_circular(&pts)?);
    for (z, w) in pts.iter().zip(image.points()) {
        println!("{} -> {}", fmt_complex(*z), fmt_complex(*w));
    }
    println!("lambda -> {}", fmt_complex(image.lambda()));
    println!(
        "cross-ratio before {}",
        fmt_complex(cross_ratio_finite(&pts)?)
    );
    println!(
        "cross-ratio after  {}",
        fmt_complex(cross_ratio_finite(image.points())?)
    );
    for prim in map.decompose() {
        println!("step {prim:?}");
    }
    Ok(())
}
