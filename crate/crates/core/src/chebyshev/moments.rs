//! Cauchy and Hilbert transforms of Chebyshev polynomials on `(-1, 1)`.
//!
//! With `I_k(z) = ∫_{-1}^1 T_k(x)/(x - z) dx` the three-term recurrence
//! `I_{k+1} = 2z I_k - I_{k-1} + 2 m_k`, `m_k = ∫ T_k`, holds for every `z`,
//! seeded by `I_0 = log((z-1)/(z+1))` and `I_1 = z I_0 + 2`. Off the
//! interval the sought solution decays while the homogeneous solutions grow
//! like `ρ^k`, `ρ = z + √(z²-1)`, so running it forwards is unstable. There
//! the recurrence is solved as a boundary-value problem (`I_0` fixed, `I_N = 0`
//! far out), which recovers the non-dominant solution. On the interval the
//! homogeneous solutions are bounded and the forward sweep is used.

use std::f64::consts::{LN_10, PI};

use num_complex::Complex64;

use super::series::ChebSeries;
use crate::error::{domain, Result};
use crate::oracle::two_pi_i;

/// `∫_{-1}^1 T_k(x) dx`.
pub fn chebyshev_integral(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        let kf = k as f64;
        2.0 / (1.0 - kf * kf)
    }
}

/// `log(1 + w)` without cancellation for small `|w|`.
fn log1p(w: Complex64) -> Complex64 {
    if w.norm() >= 0.5 {
        return (w + 1.0).ln();
    }
    // log(1+w) = 2 atanh(u), u = w/(2+w)
    let u = w / (w + 2.0);
    let u2 = u * u;
    let mut term = u;
    let mut sum = u;
    let mut j = 1.0;
    loop {
        term *= u2;
        let add = term / (2.0 * j + 1.0);
        sum += add;
        if add.norm() <= 1e-18 * sum.norm() {
            break;
        }
        j += 1.0;
    }
    sum * 2.0
}

/// `∫_a^b dt/(t - z) = log((z - b)/(z - a))`, evaluated from the differences
/// `z - a`, `z - b` so that points near an endpoint or far away keep full
/// relative accuracy.
pub(crate) fn log_ratio(z: Complex64, a: f64, b: f64) -> Complex64 {
    let za = z - a;
    let w = Complex64::new(a - b, 0.0) / za;
    if w.norm() < 0.5 {
        log1p(w)
    } else {
        ((z - b) / za).ln()
    }
}

fn growth_rate(u: Complex64) -> f64 {
    let s = (u * u - 1.0).sqrt();
    let r1 = (u + s).norm();
    let r2 = (u - s).norm();
    r1.max(r2).ln()
}

/// `I_0, …, I_{n-1}` at reference point `u` given `I_0`.
fn cauchy_moments(n: usize, u: Complex64, i0: Complex64) -> Vec<Complex64> {
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return w;
    }
    w[0] = i0;
    if n == 1 {
        return w;
    }
    let lr = growth_rate(u);
    if lr < 0.5 && (n - 1) as f64 * lr <= LN_10 {
        w[1] = u * i0 + 2.0;
        for k in 1..n - 1 {
            w[k + 1] = u * w[k] * 2.0 - w[k - 1] + 2.0 * chebyshev_integral(k);
        }
        return w;
    }

    // Tridiagonal solve of w_{k-1} - 2u w_k + w_{k+1} = 2 m_k, k = 1..N-1,
    // with w_0 = I_0 and w_N = 0.
    let extra = ((40.0 / lr).ceil() as usize).max(8);
    let big_n = n + extra;
    let diag = -u * 2.0;
    let mut cp = vec![Complex64::new(0.0, 0.0); big_n];
    let mut dp = vec![Complex64::new(0.0, 0.0); big_n];
    for k in 1..big_n {
        let mut rhs = Complex64::new(2.0 * chebyshev_integral(k), 0.0);
        let denom = if k == 1 {
            rhs -= i0;
            diag
        } else {
            diag - cp[k - 1]
        };
        let inv = denom.inv();
        cp[k] = inv;
        dp[k] = if k == 1 { rhs * inv } else { (rhs - dp[k - 1]) * inv };
    }
    let mut next = Complex64::new(0.0, 0.0);
    for k in (1..big_n).rev() {
        let v = dp[k] - cp[k] * next;
        if k < n {
            w[k] = v;
        }
        next = v;
    }
    w
}

/// `C_{(-1,1)} T_k(z)` for `k = 0..n-1`.
pub fn cauchy_t_all(n: usize, z: Complex64) -> Result<Vec<Complex64>> {
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Err(domain(format!("z = {z} lies on [-1, 1]")));
    }
    let scale = two_pi_i().inv();
    Ok(cauchy_moments(n, z, log_ratio(z, -1.0, 1.0))
        .into_iter()
        .map(|v| v * scale)
        .collect())
}

/// `C_{(-1,1)} T_k(z) = (1/2πi) ∫_{-1}^1 T_k(x)/(x - z) dx`.
pub fn cauchy_t(k: usize, z: Complex64) -> Result<Complex64> {
    Ok(cauchy_t_all(k + 1, z)?[k])
}

fn hilbert_moments(n: usize, x: f64, j0: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    if n == 0 {
        return w;
    }
    w[0] = j0;
    if n > 1 {
        w[1] = x * j0 + 2.0;
    }
    for k in 1..n.saturating_sub(1) {
        w[k + 1] = 2.0 * x * w[k] - w[k - 1] + 2.0 * chebyshev_integral(k);
    }
    w
}

/// `H_{(-1,1)} T_k(x)` for `k = 0..n-1`.
pub fn hilbert_t_all(n: usize, x: f64) -> Result<Vec<f64>> {
    if !(x.abs() < 1.0) {
        return Err(domain(format!("Hilbert transform on (-1, 1) needs |x| < 1, got {x}")));
    }
    let j0 = ((1.0 - x) / (1.0 + x)).ln();
    Ok(hilbert_moments(n, x, j0).into_iter().map(|v| v / PI).collect())
}

/// `H_{(-1,1)} T_k(x) = (1/π) PV ∫_{-1}^1 T_k(t)/(t - x) dt`.
pub fn hilbert_t(k: usize, x: f64) -> Result<f64> {
    Ok(hilbert_t_all(k + 1, x)?[k])
}

/// Finite parts `σ_k = ∫_{-1}^1 (T_k(s) - 1)/(s - 1) ds`, the endpoint values
/// of `I_k` once the logarithmic divergence (weighted by `T_k(1) = 1`) is
/// removed. Same recurrence at `z = 1`, with `σ_0 = 0`, `σ_1 = 2`.
pub fn endpoint_finite_parts(n: usize) -> Vec<f64> {
    hilbert_moments(n, 1.0, 0.0)
}

/// `C_{(a,b)} g(z)` for `g` given by its Chebyshev series on `[a, b]`.
pub fn cauchy_series(s: &ChebSeries, z: Complex64) -> Result<Complex64> {
    Ok(cauchy_series_raw(s, z)? * two_pi_i().inv())
}

/// `∫_a^b g(t)/(t - z) dt`.
pub(crate) fn cauchy_series_raw(s: &ChebSeries, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= s.a && z.re <= s.b {
        return Err(domain(format!("z = {z} lies on [{}, {}]", s.a, s.b)));
    }
    let u = s.to_reference(z);
    let moments = cauchy_moments(s.len(), u, log_ratio(z, s.a, s.b));
    Ok(s.coeffs.iter().zip(&moments).map(|(c, m)| c * m).sum())
}

/// `H_{(a,b)} g(x) = (1/π) PV ∫_a^b g(t)/(t - x) dt` for `a < x < b`.
pub fn hilbert_series(s: &ChebSeries, x: f64) -> Result<Complex64> {
    if !(x > s.a && x < s.b) {
        return Err(domain(format!("x = {x} is not inside ({}, {})", s.a, s.b)));
    }
    let u = s.to_reference(Complex64::new(x, 0.0)).re;
    let j0 = ((s.b - x) / (x - s.a)).ln();
    let moments = hilbert_moments(s.len(), u, j0);
    let sum: Complex64 = s.coeffs.iter().zip(&moments).map(|(c, m)| c * m).sum();
    Ok(sum / PI)
}
