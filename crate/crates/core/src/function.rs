//! Functions on the half line together with the growth metadata the
//! integrators rely on.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

type Eval = dyn Fn(f64) -> Complex64 + Send + Sync;

/// An oscillatory factor `exp(i ω x^power)` carried by a function.
///
/// Only used as a hint: the quadrature splits its intervals into panels of
/// one half-period so that every panel sees a bounded number of oscillations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillation {
    pub omega: f64,
    pub power: f64,
}

/// A complex-valued function on `(0, ∞)`.
///
/// * `zero_exponent` α: `x^α f(x)` is bounded near zero (α < 1 for integrability).
/// * `decay_exponent` δ: `f(x) = O(x^{-δ})` as `x → ∞`.
///
/// Hölder continuity is a caller obligation; it is not checked.
#[derive(Clone)]
pub struct HalfLineFunction {
    eval: Arc<Eval>,
    pub zero_exponent: f64,
    pub decay_exponent: f64,
    pub oscillation: Option<Oscillation>,
}

impl fmt::Debug for HalfLineFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HalfLineFunction")
            .field("zero_exponent", &self.zero_exponent)
            .field("decay_exponent", &self.decay_exponent)
            .field("oscillation", &self.oscillation)
            .finish_non_exhaustive()
    }
}

impl HalfLineFunction {
    pub fn new<F>(eval: F, zero_exponent: f64, decay_exponent: f64) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        HalfLineFunction {
            eval: Arc::new(eval),
            zero_exponent,
            decay_exponent,
            oscillation: None,
        }
    }

    /// Convenience constructor for real-valued functions.
    pub fn real<F>(eval: F, zero_exponent: f64, decay_exponent: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |x| Complex64::new(eval(x), 0.0), zero_exponent, decay_exponent)
    }

    pub fn zero() -> Self {
        Self::real(|_| 0.0, 0.0, 1.0)
    }

    pub fn with_oscillation(mut self, omega: f64, power: f64) -> Self {
        self.oscillation = Some(Oscillation { omega, power });
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }

    /// Value at the left endpoint, taken as the limit from the right.
    pub fn limit_at_zero(&self) -> Result<Complex64> {
        let v = self.eval(0.0);
        if v.re.is_finite() && v.im.is_finite() {
            return Ok(v);
        }
        let v = self.eval(f64::MIN_POSITIVE);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { at: 0.0 })
        }
    }

    /// `x ↦ f(x^p)` for real `p > 0`, with exponents rescaled accordingly.
    pub fn compose_power(&self, p: f64) -> Self {
        let inner = Arc::clone(&self.eval);
        let eval: Arc<Eval> = if p == 1.0 {
            inner
        } else if p.fract() == 0.0 && p <= 64.0 {
            let k = p as i32;
            Arc::new(move |x: f64| inner(x.powi(k)))
        } else {
            Arc::new(move |x: f64| inner(x.powf(p)))
        };
        HalfLineFunction {
            eval,
            zero_exponent: self.zero_exponent * p,
            decay_exponent: self.decay_exponent * p,
            oscillation: self.oscillation.map(|o| Oscillation {
                omega: o.omega,
                power: o.power * p,
            }),
        }
    }

    /// `x ↦ f(x) / x^r`.
    pub fn divide_by_power(&self, r: f64) -> Self {
        if r == 0.0 {
            return self.clone();
        }
        let inner = Arc::clone(&self.eval);
        HalfLineFunction {
            eval: Arc::new(move |x: f64| inner(x) / x.powf(r)),
            zero_exponent: self.zero_exponent + r,
            decay_exponent: self.decay_exponent + r,
            oscillation: self.oscillation,
        }
    }

    /// Samples `points` and checks finiteness plus the growth bounds implied
    /// by the exponents: `|f(x)| x^α` on `(0,1]` and `|f(x)| x^δ` on `[1,∞)`
    /// must stay below `bound`.
    pub fn check_samples(&self, points: &[f64], bound: f64) -> Result<()> {
        for &x in points {
            if !(x > 0.0) {
                return Err(crate::error::domain(format!("sample point {x} is not in (0, ∞)")));
            }
            let v = self.eval(x);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::NonFinite { at: x });
            }
            let scaled = if x <= 1.0 {
                v.norm() * x.powf(self.zero_exponent)
            } else {
                v.norm() * x.powf(self.decay_exponent)
            };
            if scaled > bound {
                return Err(crate::error::precondition(format!(
                    "|f({x:e})| = {:e} violates the declared exponents",
                    v.norm()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn check_integrable(&self) -> Result<()> {
        if !(self.decay_exponent > 0.0) {
            return Err(crate::error::precondition(format!(
                "decay_exponent must be > 0 (got {})",
                self.decay_exponent
            )));
        }
        if !(self.zero_exponent < 1.0) {
            return Err(crate::error::precondition(format!(
                "zero_exponent must be < 1 (got {})",
                self.zero_exponent
            )));
        }
        Ok(())
    }
}
