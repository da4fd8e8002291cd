mod common;

use common::*;
use heunsym::heun_classical::{heun_g_coeffs, heun_g_eval, printed, HeunGParams};
use heunsym::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_params(r: &mut ChaCha8Rng) -> HeunGParams {
    let mut z = |s: f64| c(r.gen_range(-s..s), r.gen_range(-s..s));
    let a = {
        let m = 1.3 + 1.5 * z(1.0).re.abs();
        C64::from_polar(m, z(3.0).re)
    };
    HeunGParams::new(a, z(2.0), z(2.0), z(2.0), c(0.6, 0.0) + z(0.3), z(1.5)).unwrap()
}

#[test]
fn coefficients_match_power_matching() {
    let mut r = rng(11);
    for _ in 0..10 {
        let p = random_params(&mut r);
        let h = heun_g_coeffs(&p, 80).unwrap();
        let reference = heun_g_by_matching(p.a, p.lambda, p.alpha, p.beta, p.gamma, p.delta, 81);
        for (n, (x, y)) in h.iter().zip(&reference).enumerate() {
            assert!(
                (x - y).norm() <= 1e-11 * y.norm().max(1e-200).max(x.norm()),
                "n={n}: {x} vs {y}"
            );
        }
    }
}

#[test]
fn truncated_series_leaves_only_high_order_remainder() {
    // substitute h_0..h_N into the polynomial form; powers below N-1 must vanish
    let mut r = rng(12);
    let p = random_params(&mut r);
    let n = 30;
    let h = heun_g_coeffs(&p, n).unwrap();
    let eps = p.epsilon();
    let a = p.a;
    let a2 = [c(0.0, 0.0), a, -(a + 1.0), c(1.0, 0.0)];
    let a1 = [
        p.gamma * a,
        -p.gamma * (a + 1.0) - p.delta * a - eps,
        p.gamma + p.delta + eps,
    ];
    let a0 = [-p.lambda, p.alpha * p.beta];
    let mut rem = vec![c(0.0, 0.0); n + 3];
    for (k, &hk) in h.iter().enumerate() {
        let kf = k as f64;
        for (i, &ai) in a2.iter().enumerate() {
            if k >= 2 {
                rem[i + k - 2] += ai * kf * (kf - 1.0) * hk;
            }
        }
        for (i, &ai) in a1.iter().enumerate() {
            if k >= 1 {
                rem[i + k - 1] += ai * kf * hk;
            }
        }
        for (i, &ai) in a0.iter().enumerate() {
            rem[i + k] += ai * hk;
        }
    }
    let scale = h.iter().map(|x| x.norm()).fold(1.0, f64::max) * 100.0;
    let lowest = rem.iter().position(|x| x.norm() > 1e-12 * scale).unwrap();
    assert!(lowest >= n - 1, "remainder starts at degree {lowest}");
}

#[test]
fn evaluation_matches_reference_integration() {
    let mut r = rng(13);
    for _ in 0..10 {
        let p = random_params(&mut r);
        let h = heun_g_by_matching(p.a, p.lambda, p.alpha, p.beta, p.gamma, p.delta, 200);
        let z0 = c(0.05, 0.0);
        let y0 = horner(&h, z0);
        let rad = 0.8 * p.radius();
        let z = C64::from_polar(r.gen_range(0.2..1.0) * rad, r.gen_range(-3.0..3.0));
        let (v, d) = heun_g_eval(&p, z, 1e-15).unwrap();
        let path = if z.re < 0.0 {
            vec![z0, c(0.05, 0.3 * z.im.signum()), z]
        } else {
            vec![z0, z]
        };
        let y = rk4_path(
            |w| heun_g_coeffs_at(p.a, p.lambda, p.alpha, p.beta, p.gamma, p.delta, w),
            &path,
            y0,
            4000,
        );
        assert!(
            (v - y.0).norm() < 1e-9 * y.0.norm().max(1.0),
            "{z}: {v} vs {}",
            y.0
        );
        assert!((d - y.1).norm() < 1e-8 * y.1.norm().max(1.0));
    }
}

#[test]
fn printed_recurrence_is_only_reported() {
    let mut r = rng(14);
    let mut disagree = 0;
    for _ in 0..100 {
        let p = random_params(&mut r);
        let d = printed::compare(&p, 20).unwrap();
        if d.first_mismatch.is_some() {
            disagree += 1;
        }
    }
    eprintln!("printed three-term form disagrees on {disagree}/100 draws");
}
