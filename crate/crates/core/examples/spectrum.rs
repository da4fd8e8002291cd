//! Accessory-parameter eigenvalues of the two-point problem between two real
//! singular points, and the orthogonality of the eigenfunctions.

use heunsym::connection::{eigenvalue_search, pair_integral, LambdaWindow, Shooting};
use heunsym::{SymmetricHeunConfig, C64};

fn main() -> heunsym::Result<()> {
    let c = |re| C64::new(re, 0.0);
    // imaginary phi puts all four points on the real axis
    let template = SymmetricHeunConfig::canonical(
        C64::new(0.0, 0.5),
        [c(0.4), c(0.9), c(0.4), c(0.9)],
        c(0.0),
    )?;
    let (i, j) = (2, 0);
    let roots = eigenvalue_search(
        &template,
        i,
        j,
        LambdaWindow::Real {
            lo: -20.0,
            hi: 20.0,
            samples: 81,
        },
        1e-10,
    )?;
    for r in &roots {
        println!("lambda* = {:.12}  |D| = {:.1e}", r.lambda.re, r.residual);
    }
    if roots.len() >= 2 {
        let s = Shooting::new(&template, i, j)?;
        let u = s.shoot(roots[0].lambda)?;
        let v = s.shoot(roots[1].lambda)?;
        println!("<u, v> = {:.1e}", pair_integral(&s, &u, &v, 1e-10)?.norm());
        println!("<u, u> = {:.4}", pair_integral(&s, &u, &u, 1e-10)?.norm());
    }
    Ok(())
}
