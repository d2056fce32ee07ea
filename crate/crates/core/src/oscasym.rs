//! Large-ω expansion of `H f` for `f(x) = e^{(iω + s)x^q}`, `s = ±1`.
//!
//! Each term `H[f(⋄^{1/q})/⋄^{ν/q}]` of the root-map Hilbert formula has an
//! oscillator `e^{iωt}` with an algebraic endpoint singularity `t^{-ν/q}` at
//! zero, whose asymptotic expansion is a local contribution at `t = x` plus
//! an endpoint series in inverse powers of ω. `m` counts the endpoint terms
//! kept per ν.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use crate::error::{domain, precondition, Result};
use crate::function::HalfLineFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryAsymParams {
    pub omega: f64,
    pub x: f64,
    pub m: usize,
    pub q: u32,
    /// `s` in `e^{(iω + s)x^q}`; `-1` is the decaying case.
    pub decay_sign: f64,
}

impl OscillatoryAsymParams {
    pub fn new(omega: f64, x: f64, m: usize) -> Self {
        OscillatoryAsymParams {
            omega,
            x,
            m,
            q: 3,
            decay_sign: -1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(domain(format!("ω must be positive, got {}", self.omega)));
        }
        if !(self.x > 0.0) || !self.x.is_finite() {
            return Err(domain(format!("x must be positive, got {}", self.x)));
        }
        if self.m < 1 {
            return Err(precondition("m must be >= 1"));
        }
        if self.q < 1 {
            return Err(precondition("q must be >= 1"));
        }
        if self.decay_sign != 1.0 && self.decay_sign != -1.0 {
            return Err(precondition("decay_sign must be ±1"));
        }
        Ok(())
    }

    /// `x ↦ e^{(iω + s) x^q}` with an oscillation hint for the oracle.
    pub fn function(&self) -> HalfLineFunction {
        let (omega, s, q) = (self.omega, self.decay_sign, self.q as i32);
        let decay = if s < 0.0 { 8.0 } else { 0.0 };
        HalfLineFunction::new(
            move |x: f64| {
                let t = x.powi(q);
                Complex64::new(s * t, omega * t).exp()
            },
            0.0,
            decay,
        )
        .with_oscillation(omega, q as f64)
    }
}

/// Expansion of `H[f(⋄^{1/q})/⋄^{ν/q}](x)` with endpoint terms `ℓ < m`.
pub fn mapped_hilbert_asym(nu: u32, params: &OscillatoryAsymParams) -> Result<Complex64> {
    params.validate()?;
    if nu >= params.q {
        return Err(precondition(format!("ν = {nu} must be below q = {}", params.q)));
    }
    let OscillatoryAsymParams {
        omega,
        x,
        m,
        q,
        decay_sign: s,
        ..
    } = *params;
    let a = nu as f64 / q as f64;
    let local = Complex64::new(0.0, 1.0) * Complex64::new(s * x, omega * x).exp() / x.powf(a);

    let mut endpoint = Complex64::new(0.0, 0.0);
    for l in 0..m {
        let e = l as f64 + 1.0 - a;
        let weight = gamma(e) / omega.powf(e);
        let rotation = Complex64::from_polar(1.0, FRAC_PI_2 * e);
        // Σ_{j≤ℓ} s^j / (j! x^{ℓ-j+1}), built from j = 0 upwards.
        let mut inner = 0.0;
        let mut sj_over_fact = 1.0;
        for j in 0..=l {
            if j > 0 {
                sj_over_fact *= s / j as f64;
            }
            inner += sj_over_fact / x.powi((l - j + 1) as i32);
        }
        endpoint += rotation * (weight * inner);
    }
    Ok(local - endpoint / PI)
}

/// `(1/q) Σ_ν x^ν · mapped_hilbert_asym(ν)` at `x^q`.
pub fn oscillatory_hilbert_asym(params: &OscillatoryAsymParams) -> Result<Complex64> {
    params.validate()?;
    let q = params.q;
    let mapped = OscillatoryAsymParams {
        x: params.x.powi(q as i32),
        ..*params
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for nu in 0..q {
        sum += mapped_hilbert_asym(nu, &mapped)? * params.x.powi(nu as i32);
    }
    Ok(sum / q as f64)
}
