//! Independent numerics for the integration tests: nothing here calls the
//! library's integrators.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn two_pi_i() -> Complex64 {
    c(0.0, 2.0 * PI)
}

/// Two Richardson sweeps over `ε, ε/2, ε/4` for a limit with a smooth
/// expansion in `ε`.
pub fn richardson<F: Fn(f64) -> Complex64>(f: F, eps: f64) -> Complex64 {
    let v = [f(eps), f(eps / 2.0), f(eps / 4.0)];
    let r1 = [v[1] * 2.0 - v[0], v[2] * 2.0 - v[1]];
    (r1[1] * 4.0 - r1[0]) / 3.0
}

/// Richardson over a geometric sequence `ε, ε/10, ε/100` assuming the error
/// is `a ε + b ε²`.
pub fn richardson_decades<F: Fn(f64) -> Complex64>(f: F, eps: f64) -> Complex64 {
    let v = [f(eps), f(eps / 10.0), f(eps / 100.0)];
    let r1 = [(v[1] * 10.0 - v[0]) / 9.0, (v[2] * 10.0 - v[1]) / 9.0];
    (r1[1] * 100.0 - r1[0]) / 99.0
}

/// `Ei(x)` for moderate `x > 0` from its power series.
pub fn ei(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= x / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    EULER_GAMMA + x.ln() + sum
}

/// `E₁(x)` for moderate `x > 0` from its power series.
pub fn e1(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-18 {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

/// Composite Gauss–Legendre over `panels` equal panels of `[a, b]`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Complex64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut sum = c(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            sum += f(mid + 0.5 * h * xi) * (wi * 0.5 * h);
        }
    }
    sum
}

/// Trapezoid rule on `[a, b]` with `n` intervals; spectrally accurate for
/// integrands that decay to negligible values at both ends.
pub fn trapezoid<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut sum = (f(a) + f(b)) * 0.5;
    for k in 1..n {
        sum += f(a + k as f64 * h);
    }
    sum * h
}

/// `T_k(x)` by the three-term recurrence.
pub fn cheb_t(k: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let next = 2.0 * x * b - a;
        a = b;
        b = next;
    }
    b
}

/// `H f(x)` for `f` on `(0, ∞)` with `f(t) = O(t^{-γ})`, `γ > 0`, by the
/// substitution `t = e^u`, subtraction of `f(x)/(1 + (t-x)²)` (whose PV
/// integral is known in closed form) and the trapezoid rule in `u`.
pub fn hilbert_trapezoid<F: Fn(f64) -> f64>(f: F, x: f64, u_lo: f64, u_hi: f64, h: f64) -> f64 {
    let fx = f(x);
    let n = ((u_hi - u_lo) / h).round() as usize;
    // shift the grid by half a step so that no node sits exactly on t = x
    let u0 = u_lo + 0.5 * h;
    let mut sum = 0.0;
    for k in 0..n {
        let u = u0 + k as f64 * h;
        let t = u.exp();
        let d = t - x;
        sum += t * (f(t) - fx / (1.0 + d * d)) / d;
    }
    let pv_bump = 0.5 * (1.0 + x * x).ln() - x.ln();
    (sum * h + fx * pv_bump) / PI
}
