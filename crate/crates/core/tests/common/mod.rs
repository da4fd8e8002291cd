//! Reference computations that share no code with the library: a fixed-step
//! RK4 integrator with Richardson extrapolation, Taylor coefficients of the
//! symmetric equation by full Cauchy products, and HeunG coefficients by
//! matching powers in the expanded equation.
#![allow(dead_code)]

use heunsym::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical points `(e^{i phi}, -e^{-i phi}, -e^{i phi}, e^{-i phi})`, built here
/// from scratch.
pub fn unit_circle_points(phi: f64) -> [C64; 4] {
    let e = C64::from_polar(1.0, phi);
    let em = C64::from_polar(1.0, -phi);
    [e, -em, -e, em]
}

/// Random canonical circular parameters with `phi` kept away from `0` and `pi/2`.
pub fn random_circular(r: &mut ChaCha8Rng) -> (f64, [C64; 4], C64) {
    let phi = r.gen_range(0.15..(std::f64::consts::FRAC_PI_2 - 0.15));
    let chis = [0; 4].map(|_| c(r.gen_range(0.0..1.5), r.gen_range(-0.2..0.2)));
    let lam = C64::from_polar(
        r.gen_range(0.0..5.0),
        r.gen_range(0.0..std::f64::consts::TAU),
    );
    (phi, chis, lam)
}

/// `q_j = (sin(2 chi_j)/4)^2 prod_{k != j} (z_j - z_k)`.
pub fn q_values(points: &[C64; 4], chis: &[C64; 4]) -> [C64; 4] {
    let mut q = [c(0.0, 0.0); 4];
    for j in 0..4 {
        let s = (chis[j] * 2.0).sin() / 4.0;
        let mut d = c(1.0, 0.0);
        for k in 0..4 {
            if k != j {
                d *= points[j] - points[k];
            }
        }
        q[j] = s * s * d;
    }
    q
}

/// `(p1, p0)` of `F'' + p1 F' + p0 F = 0` for the symmetric form.
pub fn symmetric_coeffs(points: &[C64; 4], q: &[C64; 4], lambda: C64, z: C64) -> (C64, C64) {
    let mut p1 = c(0.0, 0.0);
    let mut acc = lambda;
    let mut p = c(1.0, 0.0);
    for j in 0..4 {
        p1 += 0.5 / (z - points[j]);
        acc += q[j] / (z - points[j]);
        p *= z - points[j];
    }
    (p1, acc / p)
}

fn rk4_run<F: Fn(C64) -> (C64, C64)>(
    coef: &F,
    a: C64,
    b: C64,
    y: (C64, C64),
    steps: usize,
) -> (C64, C64) {
    let h = (b - a) / steps as f64;
    let f = |z: C64, y: [C64; 2]| {
        let (p1, p0) = coef(z);
        [y[1], -p1 * y[1] - p0 * y[0]]
    };
    let mut y = [y.0, y.1];
    for k in 0..steps {
        let z = a + h * k as f64;
        let k1 = f(z, y);
        let k2 = f(
            z + h * 0.5,
            [y[0] + h * 0.5 * k1[0], y[1] + h * 0.5 * k1[1]],
        );
        let k3 = f(
            z + h * 0.5,
            [y[0] + h * 0.5 * k2[0], y[1] + h * 0.5 * k2[1]],
        );
        let k4 = f(z + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
        for i in 0..2 {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    (y[0], y[1])
}

/// Integrates along the polyline `path` with RK4 at `steps` per unit length and
/// again at twice that, returning the Richardson combination.
pub fn rk4_path<F: Fn(C64) -> (C64, C64)>(
    coef: F,
    path: &[C64],
    y0: (C64, C64),
    steps: usize,
) -> (C64, C64) {
    let run = |n: usize| {
        let mut y = y0;
        for w in path.windows(2) {
            let len = (w[1] - w[0]).norm();
            let s = ((len * n as f64).ceil() as usize).max(4);
            y = rk4_run(&coef, w[0], w[1], y, s);
        }
        y
    };
    let coarse = run(steps);
    let fine = run(2 * steps);
    (
        fine.0 + (fine.0 - coarse.0) / 15.0,
        fine.1 + (fine.1 - coarse.1) / 15.0,
    )
}

/// Taylor coefficients of `1/(z - a)` about the origin.
fn pole_series(a: C64, n: usize) -> Vec<C64> {
    (0..n).map(|k| -a.powi(-(k as i32) - 1)).collect()
}

fn cauchy(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
        .collect()
}

/// Taylor coefficients `f_0..f_{n-1}` of the solution with `F(0) = y0.0`,
/// `F'(0) = y0.1`, from `F'' = -p1 F' - p0 F` with `p1`, `p0` expanded as power
/// series and multiplied term by term.
pub fn taylor_by_convolution(
    points: &[C64; 4],
    q: &[C64; 4],
    lambda: C64,
    y0: (C64, C64),
    n: usize,
) -> Vec<C64> {
    let mut p1 = vec![c(0.0, 0.0); n];
    let mut num = vec![c(0.0, 0.0); n];
    num[0] = lambda;
    let mut inv_p = vec![c(1.0, 0.0); 1];
    inv_p.resize(n, c(0.0, 0.0));
    for j in 0..4 {
        let s = pole_series(points[j], n);
        for k in 0..n {
            p1[k] += 0.5 * s[k];
            num[k] += q[j] * s[k];
        }
        inv_p = cauchy(&inv_p, &s, n);
    }
    let p0 = cauchy(&num, &inv_p, n);
    let mut f = vec![c(0.0, 0.0); n];
    f[0] = y0.0;
    if n > 1 {
        f[1] = y0.1;
    }
    for m in 0..n.saturating_sub(2) {
        // coefficient of z^m in F'' + p1 F' + p0 F
        let mut acc = c(0.0, 0.0);
        for k in 0..=m {
            acc += p1[k] * f[m - k + 1] * (m - k + 1) as f64;
            acc += p0[k] * f[m - k];
        }
        f[m + 2] = -acc / ((m + 2) * (m + 1)) as f64;
    }
    f
}

pub fn horner(f: &[C64], z: C64) -> (C64, C64) {
    let mut v = c(0.0, 0.0);
    let mut d = c(0.0, 0.0);
    for &a in f.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// HeunG coefficients at the origin by expanding
/// `z(z-1)(z-a) y'' + [g(z-1)(z-a) + d z(z-a) + e z(z-1)] y' + (ab z - lam) y = 0`
/// with `e = al + be + 1 - g - d` and solving the lowest power for each new term.
pub fn heun_g_by_matching(
    a: C64,
    lam: C64,
    al: C64,
    be: C64,
    g: C64,
    d: C64,
    n: usize,
) -> Vec<C64> {
    let e = al + be + 1.0 - g - d;
    // polynomial coefficients, index = power of z
    let a2 = [c(0.0, 0.0), a, -(a + 1.0), c(1.0, 0.0)];
    let a1 = [g * a, -g * (a + 1.0) - d * a - e, g + d + e];
    let a0 = [-lam, al * be];
    let mut h = vec![c(0.0, 0.0); n];
    h[0] = c(1.0, 0.0);
    // power z^{m-1}: sum over contributions from h_m, h_{m-1}, h_{m-2}
    for m in 1..n {
        let mut known = c(0.0, 0.0);
        let mut lead = c(0.0, 0.0);
        for (k, &hk) in h.iter().enumerate().take(m + 1) {
            let kk = k as f64;
            // y'' term: a2[p] z^p * k(k-1) z^{k-2} contributes to power p + k - 2
            let mut coef = c(0.0, 0.0);
            let p2 = (m as isize - 1) - (k as isize - 2);
            if (0..4).contains(&p2) {
                coef += a2[p2 as usize] * kk * (kk - 1.0);
            }
            let p1 = (m as isize - 1) - (k as isize - 1);
            if (0..3).contains(&p1) {
                coef += a1[p1 as usize] * kk;
            }
            let p0 = (m as isize - 1) - k as isize;
            if (0..2).contains(&p0) {
                coef += a0[p0 as usize];
            }
            if k == m {
                lead = coef;
            } else {
                known += coef * hk;
            }
        }
        h[m] = -known / lead;
    }
    h
}

/// `(p1, p0)` of the HeunG equation in normal form.
pub fn heun_g_coeffs_at(a: C64, lam: C64, al: C64, be: C64, g: C64, d: C64, z: C64) -> (C64, C64) {
    let e = al + be + 1.0 - g - d;
    let p1 = g / z + d / (z - 1.0) + e / (z - a);
    let p0 = (al * be * z - lam) / (z * (z - 1.0) * (z - a));
    (p1, p0)
}
