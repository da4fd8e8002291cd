mod common;

use common::*;
use heunsym::fuchsian::SymmetricHeunConfig;
use heunsym::oracle::{integrate_path, ContourPath};
use heunsym::symmetric::*;
use heunsym::C64;
use rand::Rng;

fn config(phi: f64, chis: [C64; 4], lam: C64) -> SymmetricHeunConfig {
    SymmetricHeunConfig::canonical(c(phi, 0.0), chis, lam).unwrap()
}

#[test]
fn coefficients_match_convolution_reference() {
    let mut r = rng(1);
    for _ in 0..6 {
        let (phi, chis, lam) = random_circular(&mut r);
        let cfg = config(phi, chis, lam);
        let pts = unit_circle_points(phi);
        let q = q_values(&pts, &chis);
        for (init, y0) in [
            (InitTag::F1, (c(1.0, 0.0), c(0.0, 0.0))),
            (InitTag::F2, (c(0.0, 0.0), c(1.0, 0.0))),
        ] {
            let reference = taylor_by_convolution(&pts, &q, lam, y0, 200);
            for family in [RecurrenceFamily::General, RecurrenceFamily::Circular] {
                let s = series_coeffs(&cfg, family, init, 199).unwrap();
                for (n, (a, b)) in s.coeffs().iter().zip(&reference).enumerate() {
                    assert!(
                        (a - b).norm() <= 1e-10 * b.norm().max(1.0),
                        "{family:?} {init:?} n={n}: {a} vs {b}"
                    );
                }
            }
        }
    }
}

#[test]
fn values_match_fixed_step_reference() {
    let mut r = rng(2);
    for _ in 0..4 {
        let (phi, chis, lam) = random_circular(&mut r);
        let cfg = config(phi, chis, lam);
        let pts = unit_circle_points(phi);
        let q = q_values(&pts, &chis);
        let f1 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F1, 300).unwrap();
        for _ in 0..3 {
            let z = C64::from_polar(r.gen_range(0.1..0.8), r.gen_range(0.0..6.28));
            let v = eval_series(&f1, z, 1e-15).unwrap();
            let y = rk4_path(
                |w| symmetric_coeffs(&pts, &q, lam, w),
                &[c(0.0, 0.0), z],
                (c(1.0, 0.0), c(0.0, 0.0)),
                2000,
            );
            assert!((v.value - y.0).norm() < 1e-9 * y.0.norm().max(1.0), "{z}");
            assert!(
                (v.derivative - y.1).norm() < 1e-8 * y.1.norm().max(1.0),
                "{z}"
            );
        }
    }
}

#[test]
fn library_oracle_matches_fixed_step_reference() {
    let (phi, chis, lam) = (
        0.9,
        [c(0.2, 0.0), c(0.5, 0.1), c(0.7, 0.0), c(1.1, -0.1)],
        c(1.0, -2.0),
    );
    let cfg = config(phi, chis, lam);
    let pts = unit_circle_points(phi);
    let q = q_values(&pts, &chis);
    let path = [c(0.0, 0.0), c(0.5, 0.3), c(-0.2, 0.7), c(-0.6, -0.1)];
    let y0 = (c(0.3, 1.0), c(-1.0, 0.5));
    let lib = integrate_path(&cfg, &ContourPath::new(path.to_vec()).unwrap(), y0, 1e-13).unwrap();
    let reference = rk4_path(|w| symmetric_coeffs(&pts, &q, lam, w), &path, y0, 2000);
    assert!((lib.0 - reference.0).norm() < 1e-9 * reference.0.norm());
    assert!((lib.1 - reference.1).norm() < 1e-9 * reference.1.norm());
}

#[test]
fn fundamental_pair_normalization_is_exact() {
    let mut r = rng(3);
    for _ in 0..10 {
        let (phi, chis, lam) = random_circular(&mut r);
        let cfg = config(phi, chis, lam);
        for family in [RecurrenceFamily::General, RecurrenceFamily::Circular] {
            let f1 = series_coeffs(&cfg, family, InitTag::F1, 20).unwrap();
            let f2 = series_coeffs(&cfg, family, InitTag::F2, 20).unwrap();
            assert_eq!(&f1.coeffs()[..2], &[c(1.0, 0.0), c(0.0, 0.0)]);
            assert_eq!(&f2.coeffs()[..2], &[c(0.0, 0.0), c(1.0, 0.0)]);
        }
    }
}

#[test]
fn wronskian_against_closed_form() {
    // W(z) = prod_j (1 - z/z_j)^{-1/2}, computed here independently
    let mut r = rng(4);
    for _ in 0..5 {
        let (phi, chis, lam) = random_circular(&mut r);
        let cfg = config(phi, chis, lam);
        let pts = unit_circle_points(phi);
        let f1 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F1, 400).unwrap();
        let f2 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F2, 400).unwrap();
        for _ in 0..10 {
            let z = C64::from_polar(r.gen_range(0.0..0.8), r.gen_range(0.0..6.28));
            let a = eval_series(&f1, z, 1e-15).unwrap();
            let b = eval_series(&f2, z, 1e-15).unwrap();
            let w = a.value * b.derivative - b.value * a.derivative;
            let expect: C64 = pts.iter().map(|p| 1.0 / (1.0 - z / p).sqrt()).product();
            assert!((w - expect).norm() < 1e-10);
        }
    }
}

#[test]
fn residual_falls_when_truncation_doubles() {
    let cfg = config(
        0.8,
        [c(0.3, 0.0), c(0.6, 0.0), c(0.9, 0.0), c(1.2, 0.0)],
        c(2.0, 1.0),
    );
    let z = C64::from_polar(0.5, 0.4);
    let mut last = f64::INFINITY;
    for n in [12, 24, 48] {
        let s = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F2, n).unwrap();
        let (p1, p0) = cfg.equation_coefficients_at(z).unwrap();
        // evaluate the truncated polynomial directly so no adaptive extension kicks in
        let (mut v, mut d, mut d2) = (c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        for &a in s.coeffs().iter().rev() {
            d2 = d2 * z + d * 2.0;
            d = d * z + v;
            v = v * z + a;
        }
        let res = (d2 + p1 * d + p0 * v).norm();
        assert!(res < last, "n={n}: {res} !< {last}");
        last = res;
    }
}

#[test]
fn laurent_pair_solves_original_equation_and_continues() {
    let (phi, chis, lam) = (
        0.6,
        [c(0.25, 0.0), c(0.8, 0.1), c(0.5, 0.0), c(1.0, 0.0)],
        c(-1.0, 0.5),
    );
    let cfg = config(phi, chis, lam);
    let pts = unit_circle_points(phi);
    let q = q_values(&pts, &chis);
    let g = laurent_series(&cfg, RecurrenceFamily::Circular, InitTag::F2, 400).unwrap();
    for (rad, th) in [(1.2, 0.3), (1.7, 2.0), (3.0, -1.0)] {
        let z = C64::from_polar(rad, th);
        assert!(ode_residual(&cfg, &g, z).unwrap() < 1e-8);
    }
    // continue through the annulus from one point to another along an arc
    let arc: Vec<C64> = (0..=20)
        .map(|k| C64::from_polar(1.3 + 0.06 * k as f64, 0.2 + 0.1 * k as f64))
        .collect();
    let start = eval_series(&g, arc[0], 1e-15).unwrap();
    let end = eval_series(&g, *arc.last().unwrap(), 1e-15).unwrap();
    let y = rk4_path(
        |w| symmetric_coeffs(&pts, &q, lam, w),
        &arc,
        (start.value, start.derivative),
        2000,
    );
    assert!((y.0 - end.value).norm() < 1e-6 * end.value.norm().max(1.0));
}

#[test]
fn series_domain_is_enforced() {
    let cfg = config(0.7, [c(0.3, 0.0); 4], c(1.0, 0.0));
    let f1 = series_coeffs(&cfg, RecurrenceFamily::Circular, InitTag::F1, 50).unwrap();
    assert!(matches!(
        eval_series(&f1, c(0.99, 0.0), 1e-12),
        Err(heunsym::Error::OutsideDomain { .. })
    ));
    let g = laurent_series(&cfg, RecurrenceFamily::Circular, InitTag::F1, 50).unwrap();
    assert!(matches!(
        eval_series(&g, c(0.5, 0.0), 1e-12),
        Err(heunsym::Error::OutsideDomain { .. })
    ));
}
