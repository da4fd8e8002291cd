//! Classical local HeunG at the origin and its second local solution.

use heunsym::heun_classical::{heun_g_coeffs, heun_g_eval, second_local_solution, HeunGParams};
use heunsym::{fmt_complex, C64};

fn main() -> heunsym::Result<()> {
    let c = |re, im| C64::new(re, im);
    let p = HeunGParams::new(
        c(2.0, 0.5),
        c(0.3, 0.0),
        c(1.0, 0.0),
        c(-0.5, 0.2),
        c(0.7, 0.0),
        c(1.2, 0.0),
    )?;
    println!("radius {:.4}", p.radius());
    for (k, h) in heun_g_coeffs(&p, 5)?.iter().enumerate() {
        println!("h_{k} = {}", fmt_complex(*h));
    }
    for z in [c(0.25, 0.0), c(-0.4, 0.6)] {
        let (v, d) = heun_g_eval(&p, z, 1e-15)?;
        let (w, _) = second_local_solution(&p, z, 1e-15)?;
        println!(
            "z={}  y={}  y'={}  second={}",
            fmt_complex(z),
            fmt_complex(v),
            fmt_complex(d),
            fmt_complex(w)
        );
    }
    Ok(())
}
