//! Brute-force quadrature references for the half-line Cauchy and Hilbert
//! transforms. Every fast representation in this crate is checked against
//! these.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::estimate::{BoundaryPair, Estimate};
use crate::function::HalfLineFunction;
use crate::quadrature::{HalfLine, QuadratureSpec, Tolerance};

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

pub(crate) fn on_positive_axis(z: Complex64) -> bool {
    z.im == 0.0 && z.re >= 0.0
}

/// Locations worth a breakpoint for a kernel `1/(t - z)`.
pub(crate) fn pole_hints(z: Complex64) -> Vec<f64> {
    let mut h = Vec::with_capacity(3);
    if z.re > 0.0 {
        h.push(z.re);
        let w = z.im.abs();
        if w > 0.0 && w < z.re {
            h.push(z.re - w);
            h.push(z.re + w);
        }
    }
    h
}

/// `C f(z) = (1/2πi) ∫_0^∞ f(t)/(t - z) dt` for `z ∉ [0, ∞)`.
pub fn cauchy_oracle(f: &HalfLineFunction, z: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    spec.validate()?;
    f.check_integrable()?;
    let g = |t: f64| f.eval(t) / (Complex64::new(t, 0.0) - z);
    let line = HalfLine {
        f: &g,
        zero_exponent: f.zero_exponent,
        decay_exponent: 1.0 + f.decay_exponent,
        hints: pole_hints(z),
        oscillation: f.oscillation,
    };
    let r = line.whole(spec)?;
    Ok(r.scale(two_pi_i().inv()))
}

/// `H f(x) = (1/π) PV ∫_0^∞ f(t)/(t - x) dt` for `x > 0`.
///
/// Evaluated as `∫_0^{2x} (f(t) - f(x))/(t - x) dt + ∫_{2x}^∞ f(t)/(t - x) dt`;
/// the subtracted term integrates to zero over the symmetric window.
pub fn hilbert_oracle(f: &HalfLineFunction, x: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
    }
    spec.validate()?;
    f.check_integrable()?;
    let fx = f.eval(x);
    let tol = Tolerance::from(spec);
    let tol = Tolerance {
        abs: tol.abs / 3.0,
        ..tol
    };

    let window = |t: f64| {
        let d = t - x;
        if d == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (f.eval(t) - fx) / d
        }
    };
    let near = HalfLine {
        f: &window,
        zero_exponent: f.zero_exponent,
        decay_exponent: 2.0,
        hints: vec![],
        oscillation: f.oscillation,
    };
    let left = near.zero_to(x, tol)?;
    let right = near.plain(x, 2.0 * x, tol)?;

    let outer = |t: f64| f.eval(t) / (t - x);
    let far = HalfLine {
        f: &outer,
        zero_exponent: 0.0,
        decay_exponent: 1.0 + f.decay_exponent,
        hints: vec![],
        oscillation: f.oscillation,
    };
    let rest = far.to_infinity(2.0 * x, spec.truncation_radius, tol)?;
    Ok((left + right + rest).scale(Complex64::new(1.0 / PI, 0.0)))
}

/// Boundary values `C^±f(x) = (±f(x) - i H f(x)) / 2` from the two Plemelj
/// relations.
pub fn cauchy_boundary_oracle(f: &HalfLineFunction, x: f64, spec: &QuadratureSpec) -> Result<BoundaryPair> {
    let h = hilbert_oracle(f, x, spec)?.value;
    Ok(boundary_from_hilbert(f.eval(x), h))
}

pub(crate) fn boundary_from_hilbert(fx: Complex64, h: Complex64) -> BoundaryPair {
    BoundaryPair {
        plus: (fx - I * h) * 0.5,
        minus: (-fx - I * h) * 0.5,
    }
}
