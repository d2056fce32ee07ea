//! Experimental: the infinite-sheeted transform
//! `C^∞_k f(w) = (1/2πi) ∫_0^∞ f(x) / (x (log x - log(-w) - (2k-1)πi)) dx`
//! and the regularized partial sums proposed for irrational exponents.
//!
//! After `x = e^u` the transform is a Cauchy integral over the real `u` line
//! evaluated at `L = log(-w) + (2k-1)πi`, which is the logarithm of `w`
//! lifted to sheet `k` (`Im L ∈ (2π(k-1), 2πk)`). Nothing here is backed by a
//! proof; use it to gather evidence, not answers.

use num_complex::Complex64;

use crate::error::{domain, precondition, Result};
use crate::estimate::Estimate;
use crate::function::HalfLineFunction;
use crate::maps::exponent::{branch_ceiling, lambda_root};
use crate::oracle::{on_positive_axis, pole_hints, two_pi_i};
use crate::par::{self, Execution};
use crate::quadrature::{HalfLine, QuadratureSpec, Tolerance};

/// Default regularization point for the partial sums.
pub const REGULARIZATION_POINT: Complex64 = Complex64 { re: 0.0, im: 1e9 };

/// Decay rate handed to the integrator for integrands that decay
/// exponentially in `u`.
const EXPONENTIAL: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfiniteSheetPoint {
    pub k: i64,
    pub z: Complex64,
}

impl InfiniteSheetPoint {
    /// `log(-z) + (2k-1)πi`.
    pub fn lifted_log(&self) -> Result<Complex64> {
        if on_positive_axis(self.z) {
            return Err(domain(format!("C^∞ undefined on [0, ∞): z = {}", self.z)));
        }
        let offset = (2 * self.k - 1) as f64 * std::f64::consts::PI;
        Ok((-self.z).ln() + Complex64::new(0.0, offset))
    }
}

/// `(1/2πi) ∫_ℝ f(e^u)/(u - L) du` for `Im L ≠ 0`.
pub fn cauchy_log_line(f: &HalfLineFunction, l: Complex64, spec: &QuadratureSpec) -> Result<Estimate> {
    if l.im == 0.0 {
        return Err(domain(format!("L = {l} lies on the integration line")));
    }
    if !(f.zero_exponent < 0.0 && f.decay_exponent > 0.0) {
        return Err(precondition(
            "C^∞ needs f to vanish at zero (zero_exponent < 0) and decay at infinity",
        ));
    }
    spec.validate()?;
    let tol = Tolerance::from(spec);
    let tol = Tolerance {
        abs: tol.abs / 2.0,
        ..tol
    };
    let right = |u: f64| f.eval(u.exp()) / (Complex64::new(u, 0.0) - l);
    let left = |v: f64| f.eval((-v).exp()) / (Complex64::new(-v, 0.0) - l);
    let t_cut = spec.truncation_radius;
    let pos = HalfLine {
        f: &right,
        zero_exponent: 0.0,
        decay_exponent: EXPONENTIAL,
        hints: pole_hints(l),
        oscillation: None,
    };
    let neg = HalfLine {
        f: &left,
        zero_exponent: 0.0,
        decay_exponent: EXPONENTIAL,
        hints: pole_hints(-l),
        oscillation: None,
    };
    let total = pos.to_infinity(0.0, t_cut, tol)? + neg.to_infinity(0.0, t_cut, tol)?;
    Ok(total.scale(two_pi_i().inv()))
}

/// `C^∞_k f(z)`.
pub fn cauchy_infinite_sheet(f: &HalfLineFunction, pt: InfiniteSheetPoint, spec: &QuadratureSpec) -> Result<Estimate> {
    cauchy_log_line(f, pt.lifted_log()?, spec)
}

/// Settings for the regularized partial sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSumOptions {
    pub regularization_point: Complex64,
    pub quad: QuadratureSpec,
}

impl Default for PartialSumOptions {
    fn default() -> Self {
        PartialSumOptions {
            regularization_point: REGULARIZATION_POINT,
            quad: QuadratureSpec::default(),
        }
    }
}

/// `Σ_{|j|≤M} [C^∞_{β(j,z)}[f(⋄^r)](λ_j(z)) - C^∞_{β(j,z)}[f(⋄^r)](λ_j(R))]`
/// with `R` the regularization point. Convergence in `M` is slow.
pub fn cauchy_irrational_partial(
    f: &HalfLineFunction,
    r: f64,
    z: Complex64,
    m: usize,
    opts: &PartialSumOptions,
    exec: Execution,
) -> Result<Estimate> {
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(precondition(format!("exponent must be positive, got {r}")));
    }
    let g = f.compose_power(r);
    let m = m as i64;
    let js: Vec<i64> = (-m..=m).collect();
    let terms = par::map(exec, &js, |&j| {
        let k = branch_ceiling(j, z, r);
        let at_z = InfiniteSheetPoint {
            k,
            z: lambda_root(z, r, j)?,
        };
        let at_reg = InfiniteSheetPoint {
            k,
            z: lambda_root(opts.regularization_point, r, j)?,
        };
        Ok(cauchy_infinite_sheet(&g, at_z, &opts.quad)? - cauchy_infinite_sheet(&g, at_reg, &opts.quad)?)
    });
    terms.into_iter().sum()
}
