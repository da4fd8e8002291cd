//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use common::*;
use heunsym::connection::{
    connection_gamma, eigenvalue_search, pair_integral, LambdaWindow, Shooting,
};
use heunsym::fuchsian::{FuchsianConfig, SymmetricHeunConfig};
use heunsym::heun_classical::{heun_g_eval, printed, HeunGParams};
use heunsym::mobius::{cross_ratio_finite, transform_config, transport_jet, MobiusMap};
use heunsym::oracle::{
    integrate_path, verify_lagrange_identity, verify_lagrange_identity_heun, ContourPath,
};
use heunsym::symmetric::*;
use heunsym::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

/// Canonical circular configs with `phi` uniform in the open interval `(0, pi/2)`.
fn circular_set(seed: u64, count: usize) -> Vec<SymmetricHeunConfig> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let phi = r.gen_range(1e-3..FRAC_PI_2 - 1e-3);
            let chis = [0; 4].map(|_| c(r.gen_range(0.0..1.5), 0.0));
            let lam = C64::from_polar(r.gen_range(0.0..5.0), r.gen_range(0.0..2.0 * PI));
            SymmetricHeunConfig::canonical(c(phi, 0.0), chis, lam).unwrap()
        })
        .collect()
}

fn pair(cfg: &SymmetricHeunConfig, n: usize) -> Result<(SeriesSolution, SeriesSolution), String> {
    Ok((
        series_coeffs(cfg, RecurrenceFamily::Circular, InitTag::F1, n).map_err(e)?,
        series_coeffs(cfg, RecurrenceFamily::Circular, InitTag::F2, n).map_err(e)?,
    ))
}

fn ac1() -> Outcome {
    let mut exact = true;
    for cfg in circular_set(101, 20) {
        let (f1, f2) = pair(&cfg, 50)?;
        let a = eval_series(&f1, c(0.0, 0.0), 1e-15).map_err(e)?;
        let b = eval_series(&f2, c(0.0, 0.0), 1e-15).map_err(e)?;
        exact &= a.value == c(1.0, 0.0) && a.derivative == c(0.0, 0.0);
        exact &= b.value == c(0.0, 0.0) && b.derivative == c(1.0, 0.0);
    }
    check(
        exact,
        "F1(0)=1, F1'(0)=0, F2(0)=0, F2'(0)=1 bitwise on 20 configs".into(),
    )
}

fn ac2() -> Outcome {
    let mut worst = 0.0f64;
    let mut terms = 0;
    for cfg in circular_set(102, 20) {
        let (f1, f2) = pair(&cfg, 200)?;
        for i in 1..=10 {
            for k in 0..10 {
                let z = C64::from_polar(0.08 * i as f64, 2.0 * PI * k as f64 / 10.0);
                worst = worst.max(wronskian_residual(&f1, &f2, z).map_err(e)?);
                terms = terms.max(eval_series(&f2, z, 1e-15).map_err(e)?.terms);
            }
        }
    }
    check(
        worst < 1e-10,
        format!("max Wronskian residual {worst:.2e} (< 1e-10), up to {terms} terms"),
    )
}

fn truncated_residual(
    cfg: &SymmetricHeunConfig,
    s: &SeriesSolution,
    z: C64,
) -> Result<f64, String> {
    let (p1, p0) = cfg.equation_coefficients_at(z).map_err(e)?;
    let (mut v, mut d, mut d2) = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    for &a in s.coeffs().iter().rev() {
        d2 = d2 * z + d * 2.0;
        d = d * z + v;
        v = v * z + a;
    }
    Ok((d2 + p1 * d + p0 * v).norm())
}

fn ac3() -> Outcome {
    let mut worst = 0.0f64;
    let mut monotone = true;
    for cfg in circular_set(102, 20) {
        let (f1, f2) = pair(&cfg, 200)?;
        for k in 0..8 {
            let z = C64::from_polar(0.5, 2.0 * PI * k as f64 / 8.0);
            worst = worst
                .max(ode_residual(&cfg, &f1, z).map_err(e)?)
                .max(ode_residual(&cfg, &f2, z).map_err(e)?);
        }
        let z = C64::from_polar(0.5, 0.3);
        let mut last = f64::INFINITY;
        for n in [16, 32, 64] {
            let s = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F2, n).map_err(e)?;
            let r = truncated_residual(&cfg, &s, z)?;
            monotone &= r < last;
            last = r;
        }
    }
    check(
        worst < 1e-9 && monotone,
        format!(
            "max residual at |z|=0.5 {worst:.2e} (< 1e-9); decreases under doubling: {monotone}"
        ),
    )
}

fn ac4() -> Outcome {
    let mut r = rng(104);
    let mut worst = 0.0f64;
    for cfg in circular_set(102, 20) {
        let (f1, f2) = pair(&cfg, 200)?;
        for _ in 0..10 {
            let z = C64::from_polar(r.gen_range(0.05..0.8), r.gen_range(0.0..2.0 * PI));
            let path = ContourPath::segment(c(0.0, 0.0), z).map_err(e)?;
            for (s, y0) in [
                (&f1, (c(1.0, 0.0), c(0.0, 0.0))),
                (&f2, (c(0.0, 0.0), c(1.0, 0.0))),
            ] {
                let v = eval_series(s, z, 1e-15).map_err(e)?;
                let y = integrate_path(&cfg, &path, y0, 1e-13).map_err(e)?;
                worst = worst.max((v.value - y.0).norm() / y.0.norm().max(1.0));
            }
        }
    }
    check(
        worst < 1e-8,
        format!("max series/oracle gap {worst:.2e} (< 1e-8)"),
    )
}

fn random_map(r: &mut ChaCha8Rng) -> MobiusMap {
    loop {
        let [a, b, cc, d] = [0; 4].map(|_| c(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)));
        if let Ok(m) = MobiusMap::new(a, b, cc, d) {
            if m.det().norm() > 0.05 {
                return m;
            }
        }
    }
}

fn ac5() -> Outcome {
    let cfg = SymmetricHeunConfig::canonical(
        c(0.8, 0.0),
        [c(0.2, 0.1), c(0.6, 0.0), c(0.9, -0.1), c(1.2, 0.0)],
        c(1.5, -0.7),
    )
    .map_err(e)?;
    let (f1, f2) = pair(&cfg, 300)?;
    let gens = [
        ("translation", MobiusMap::translation(c(0.7, -1.3))),
        ("dilatation", MobiusMap::dilatation(c(1.4, 0.9)).map_err(e)?),
        ("inversion", MobiusMap::inversion()),
    ];
    let mut cov = 0.0f64;
    for (_, m) in &gens {
        let image = transform_config(&cfg, m).map_err(e)?;
        for k in 0..10 {
            let z = C64::from_polar(0.1 + 0.06 * k as f64, 0.7 * k as f64);
            for s in [&f1, &f2] {
                let v = eval_series(s, z, 1e-15).map_err(e)?;
                let (w, [g, dg, d2g]) =
                    transport_jet(m, z, [v.value, v.derivative, v.second_derivative])
                        .ok_or("point sent to infinity")?;
                let (p1, p0) = image.equation_coefficients_at(w).map_err(e)?;
                let scale = d2g.norm() + (p1 * dg).norm() + (p0 * g).norm();
                cov = cov.max((d2g + p1 * dg + p0 * g).norm() / scale);
            }
        }
    }
    let mut r = rng(105);
    let mut cr = 0.0f64;
    let mut used = 0;
    while used < 100 {
        let pts = [0; 4].map(|_| c(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)));
        let m = random_map(&mut r);
        let img: Vec<C64> = pts.iter().filter_map(|&z| m.apply_finite(z)).collect();
        if img.len() < 4 || img.iter().any(|w| w.norm() > 1e6) {
            continue;
        }
        let a = cross_ratio_finite(&pts).map_err(e)?;
        let b = cross_ratio_finite(&[img[0], img[1], img[2], img[3]]).map_err(e)?;
        cr = cr.max((a - b).norm() / a.norm().max(1.0));
        used += 1;
    }
    check(
        cov < 1e-8 && cr < 1e-11,
        format!("generator residual {cov:.2e} (< 1e-8); cross-ratio drift {cr:.2e} over 100 maps (< 1e-11)"),
    )
}

fn ac6() -> Outcome {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for cfg in circular_set(106, 20) {
        for init in [InitTag::F1, InitTag::F2] {
            let s = series_coeffs(&cfg, RecurrenceFamily::Circular, init, 400).map_err(e)?;
            let rho = radius_estimate(&s).map_err(e)?;
            lo = lo.min(rho);
            hi = hi.max(rho);
        }
    }
    check(
        lo >= 0.9 && hi <= 1.1,
        format!("radius estimates in [{lo:.4}, {hi:.4}] (within [0.9, 1.1])"),
    )
}

fn ac7() -> Outcome {
    let cfg = SymmetricHeunConfig::canonical(
        c(0.6, 0.0),
        [c(0.25, 0.0), c(0.8, 0.1), c(0.5, 0.0), c(1.0, 0.0)],
        c(-1.0, 0.5),
    )
    .map_err(e)?;
    let mut res = 0.0f64;
    let mut cont = 0.0f64;
    for init in [InitTag::F1, InitTag::F2] {
        let g = laurent_series(&cfg, RecurrenceFamily::Circular, init, 400).map_err(e)?;
        for i in 0..8 {
            for k in 0..6 {
                let z = C64::from_polar(1.2 + 1.8 * i as f64 / 7.0, 1.1 * k as f64);
                res = res.max(ode_residual(&cfg, &g, z).map_err(e)?);
            }
        }
        let arc: Vec<C64> = (0..=24)
            .map(|k| C64::from_polar(1.25 + 0.07 * k as f64, -0.5 + 0.2 * k as f64))
            .collect();
        let a = eval_series(&g, arc[0], 1e-15).map_err(e)?;
        let b = eval_series(&g, arc[24], 1e-15).map_err(e)?;
        let y = integrate_path(
            &cfg,
            &ContourPath::new(arc).map_err(e)?,
            (a.value, a.derivative),
            1e-13,
        )
        .map_err(e)?;
        cont = cont.max((y.0 - b.value).norm() / b.value.norm().max(1.0));
    }
    check(
        res < 1e-8 && cont < 1e-6,
        format!("residual on 1.2 <= |z| <= 3 {res:.2e} (< 1e-8); annulus continuation gap {cont:.2e} (< 1e-6)"),
    )
}

fn ac8() -> Outcome {
    let mut circ = 0.0f64;
    for cfg in circular_set(108, 5) {
        for n in 2..=500 {
            let g = recurrence_coeffs(RecurrenceFamily::General, &cfg, n).map_err(e)?;
            let k = recurrence_coeffs(RecurrenceFamily::Circular, &cfg, n).map_err(e)?;
            for i in 0..8 {
                circ = circ.max((g[i] - k[i]).norm() / g[i].norm().max(1.0));
            }
        }
    }
    let mut simp = 0.0f64;
    let mut zero_at_8 = true;
    // cos 2phi = 0 and every rho vanishing forces sin 2chi_j = 0
    let h = c(FRAC_PI_2, 0.0);
    let z0 = c(0.0, 0.0);
    for (chis, lam) in [
        ([z0; 4], c(1.0, 0.0)),
        ([h, z0, h, z0], c(-2.0, 0.5)),
        ([h; 4], c(0.0, 3.0)),
    ] {
        let cfg = SymmetricHeunConfig::canonical(c(PI / 4.0, 0.0), chis, lam).map_err(e)?;
        for n in 2..=500 {
            let k = recurrence_coeffs(RecurrenceFamily::Circular, &cfg, n).map_err(e)?;
            let s = recurrence_coeffs(RecurrenceFamily::Simplest, &cfg, n).map_err(e)?;
            for i in 0..8 {
                simp = simp.max((k[i] - s[i]).norm() / k[i].norm().max(1.0));
            }
        }
        zero_at_8 &=
            recurrence_coeffs(RecurrenceFamily::Simplest, &cfg, 8).map_err(e)?[7] == c(0.0, 0.0);
    }
    check(
        circ < 1e-12 && simp < 1e-14 && zero_at_8,
        format!("circular vs general {circ:.2e} (< 1e-12); simplest vs circular {simp:.2e} (< 1e-14); r_0(8) == 0: {zero_at_8}"),
    )
}

fn ac9() -> Outcome {
    let mut r = rng(109);
    let mut gap4 = 0.0f64;
    for cfg in circular_set(109, 10) {
        let a = C64::from_polar(r.gen_range(0.2..0.7), r.gen_range(0.0..2.0 * PI));
        let b = C64::from_polar(r.gen_range(0.2..0.7), r.gen_range(0.0..2.0 * PI));
        let path = ContourPath::new(vec![c(0.0, 0.0), a, b]).map_err(e)?;
        let l1 = c(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let l2 = c(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let rep =
            verify_lagrange_identity_heun(&cfg, l1, l2, &path, (c(1.0, 0.0), c(0.3, -0.4)), 1e-9)
                .map_err(e)?;
        gap4 = gap4.max(rep.gap);
    }
    let pts: Vec<C64> = (0..5)
        .map(|k| C64::from_polar(1.0, 0.3 + 1.2 * k as f64))
        .collect();
    let chis = [
        c(0.3, 0.0),
        c(0.5, 0.1),
        c(0.9, 0.0),
        c(1.1, 0.0),
        c(0.2, -0.1),
    ];
    let cfg5 = FuchsianConfig::symmetric(pts, &chis, vec![c(0.7, 0.0), c(-0.2, 0.4)]).map_err(e)?;
    let path = ContourPath::new(vec![c(0.0, 0.0), c(0.4, 0.3), c(-0.2, 0.6)]).map_err(e)?;
    let gap5 =
        verify_lagrange_identity(&cfg5, c(0.8, -0.3), &path, (c(1.0, 0.0), c(0.0, 1.0)), 1e-8)
            .map_err(e)?
            .gap;
    check(
        gap4 < 1e-6 && gap5 < 1e-5,
        format!("N=4 gap {gap4:.2e} (< 1e-6); N=5 gap {gap5:.2e} (< 1e-5)"),
    )
}

fn ac10() -> Outcome {
    let cfg = SymmetricHeunConfig::canonical(
        c(PI / 3.0, 0.0),
        [c(0.3, 0.0), c(0.7, 0.1), c(1.0, 0.0), c(0.45, -0.1)],
        c(1.5, 0.5),
    )
    .map_err(e)?;
    let mut worst = 0.0f64;
    for j in 0..4 {
        let g = connection_gamma(&cfg, j).map_err(e)?;
        worst = worst.max(g.verification_gap);
    }
    check(
        worst < 1e-7,
        format!("max second-point gap over j=1..4: {worst:.2e} (< 1e-7)"),
    )
}

fn ac11() -> Outcome {
    let t = SymmetricHeunConfig::canonical(
        c(0.0, 0.5),
        [c(0.4, 0.0), c(0.9, 0.0), c(0.4, 0.0), c(0.9, 0.0)],
        c(0.0, 0.0),
    )
    .map_err(e)?;
    let roots = eigenvalue_search(
        &t,
        2,
        0,
        LambdaWindow::Real {
            lo: -20.0,
            hi: 20.0,
            samples: 81,
        },
        1e-10,
    )
    .map_err(e)?;
    if roots.len() < 2 {
        return Err(format!("only {} root(s)", roots.len()));
    }
    let s = Shooting::new(&t, 2, 0).map_err(e)?;
    let d = s.boundary_function(roots[0].lambda).map_err(e)?.norm();
    let u = s.shoot(roots[0].lambda).map_err(e)?;
    let v = s.shoot(roots[1].lambda).map_err(e)?;
    let orth = pair_integral(&s, &u, &v, 1e-10).map_err(e)?.norm();
    let w = s.shoot(roots[0].lambda + 0.5).map_err(e)?;
    let neg = pair_integral(&s, &w, &v, 1e-10).map_err(e)?.norm();
    check(
        d < 1e-8 && orth < 1e-6 && neg > 1e-3,
        format!(
            "lambda* = {:.6}, {:.6}; |D| {d:.2e} (< 1e-8); orthogonality {orth:.2e} (< 1e-6); control {neg:.2e} (> 1e-3)",
            roots[0].lambda.re, roots[1].lambda.re
        ),
    )
}

fn ac12() -> Outcome {
    let mut r = rng(112);
    let mut worst = 0.0f64;
    let mut disagree = 0;
    for _ in 0..10 {
        let mut z = |s: f64| c(r.gen_range(-s..s), r.gen_range(-s..s));
        let a = C64::from_polar(1.3 + z(1.0).re.abs() * 1.5, z(3.0).re);
        let p =
            HeunGParams::new(a, z(2.0), z(2.0), z(2.0), c(0.6, 0.0) + z(0.3), z(1.5)).map_err(e)?;
        let z0 = c(0.05, 0.0);
        let y0 = heun_g_eval(&p, z0, 1e-15).map_err(e)?;
        for k in 0..5 {
            let target = C64::from_polar(0.2 + 0.12 * k as f64, 0.9 * k as f64 - 1.0);
            let path = if target.re < 0.05 {
                vec![z0, c(0.05, 0.3 * target.im.signum()), target]
            } else {
                vec![z0, target]
            };
            let y =
                integrate_path(&p, &ContourPath::new(path).map_err(e)?, y0, 1e-13).map_err(e)?;
            let v = heun_g_eval(&p, target, 1e-15).map_err(e)?;
            worst = worst.max((v.0 - y.0).norm() / y.0.norm().max(1.0));
        }
        if printed::compare(&p, 20)
            .map_err(e)?
            .first_mismatch
            .is_some()
        {
            disagree += 1;
        }
    }
    check(
        worst < 1e-9,
        format!("max HeunG/oracle gap {worst:.2e} (< 1e-9); printed three-term form differs on {disagree}/10 draws (reported only)"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 12] = [
        (
            "fundamental-pair normalization",
            ac1,
            Duration::from_secs(1),
        ),
        ("Wronskian law", ac2, Duration::from_secs(10)),
        ("ODE residual", ac3, Duration::from_secs(10)),
        ("oracle equivalence", ac4, Duration::from_secs(30)),
        ("Moebius covariance", ac5, Duration::from_secs(10)),
        ("circular convergence radius", ac6, Duration::from_secs(5)),
        ("Laurent exterior solutions", ac7, Duration::from_secs(30)),
        ("family consistency", ac8, Duration::from_secs(5)),
        ("Lagrange identity", ac9, Duration::from_secs(30)),
        ("connection representation", ac10, Duration::from_secs(60)),
        ("spectral closure", ac11, Duration::from_secs(120)),
        ("classical agreement", ac12, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let dt = t.elapsed();
        let (ok, detail) = match out {
            Ok(d) => (dt <= *budget, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "AC{:<2} {} {name}: {detail} [{:.2}s / {}s]",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
