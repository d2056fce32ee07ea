//! Reduction of half-line transforms to `(-1, 1)` through
//! `M(x) = (1 + x)/(1 - x)`.
//!
//! `C f(z) = C_{(-1,1)}[f∘M](M⁻¹(z)) - C_{(-1,1)}[f∘M](1)` and the matching
//! Hilbert identity. The subtracted endpoint value is finite because
//! `f∘M` vanishes at 1; it is assembled from the finite parts `σ_k`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::moments::{cauchy_series_raw, endpoint_finite_parts, hilbert_series};
use super::series::{cheb_expand, ChebSeries};
use crate::error::{domain, precondition, Result};
use crate::estimate::Estimate;
use crate::function::HalfLineFunction;
use crate::oracle::{on_positive_axis, two_pi_i};

/// Trailing-coefficient level above which an expansion counts as unresolved.
pub const RESOLUTION_TOL: f64 = 1e-10;
/// Largest admissible `|Σ c_k|`: the series must vanish at the image of ∞.
pub const ENDPOINT_TOL: f64 = 1e-8;

/// `M(x) = (1 + x)/(1 - x)`, an increasing bijection of `(-1, 1)` onto `(0, ∞)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MobiusMap;

impl MobiusMap {
    pub fn forward(x: f64) -> f64 {
        (1.0 + x) / (1.0 - x)
    }

    pub fn forward_complex(x: Complex64) -> Complex64 {
        (x + 1.0) / (-x + 1.0)
    }

    pub fn inverse(y: Complex64) -> Complex64 {
        (y - 1.0) / (y + 1.0)
    }

    pub fn inverse_real(y: f64) -> f64 {
        (y - 1.0) / (y + 1.0)
    }
}

/// A series-valued result with its resolution diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEstimate {
    pub estimate: Estimate,
    /// Worst relative trailing-coefficient magnitude among the series used.
    pub trailing: f64,
    pub resolved: bool,
}

/// Chebyshev expansion of `f∘M` on `[-1, 1]`, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct MobiusExpansion {
    series: ChebSeries,
    /// `Σ c_k σ_k = ∫_{-1}^1 (f∘M)(s)/(s - 1) ds`.
    endpoint: Complex64,
}

impl MobiusExpansion {
    pub fn new(f: &HalfLineFunction, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(precondition("Möbius expansion needs n >= 2"));
        }
        if !(f.decay_exponent > 0.0) {
            return Err(precondition("f must decay at infinity for the Möbius reduction"));
        }
        if f.zero_exponent > 0.0 {
            return Err(precondition("f must be bounded at zero for the Möbius reduction"));
        }
        let at_zero = f.limit_at_zero()?;
        let g = |s: f64| {
            if s >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else if s <= -1.0 {
                at_zero
            } else {
                f.eval(MobiusMap::forward(s))
            }
        };
        let series = cheb_expand(g, -1.0, 1.0, n)?;
        let scale = series.coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        if series.right_value().norm() > ENDPOINT_TOL * scale {
            return Err(precondition(format!(
                "expansion does not vanish at the image of infinity: |Σc_k| = {:e}",
                series.right_value().norm()
            )));
        }
        let sigma = endpoint_finite_parts(n);
        let endpoint = series.coeffs.iter().zip(&sigma).map(|(c, s)| c * *s).sum();
        Ok(MobiusExpansion { series, endpoint })
    }

    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn trailing(&self) -> f64 {
        self.series.trailing_magnitude()
    }

    pub fn is_resolved(&self) -> bool {
        self.trailing() <= RESOLUTION_TOL
    }

    fn tail_abs(&self) -> f64 {
        let n = self.series.len();
        self.series.coeffs[n - 1].norm() + self.series.coeffs[n - 2].norm()
    }

    fn wrap(&self, value: Complex64, kernel_scale: f64) -> SeriesEstimate {
        SeriesEstimate {
            estimate: Estimate::new(value, self.tail_abs() * kernel_scale),
            trailing: self.trailing(),
            resolved: self.is_resolved(),
        }
    }

    /// `C f(z)` for `z ∉ [0, ∞)`.
    pub fn cauchy(&self, z: Complex64) -> Result<SeriesEstimate> {
        if on_positive_axis(z) {
            return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
        }
        let w = MobiusMap::inverse(z);
        if !(w.re.is_finite() && w.im.is_finite()) {
            // z = -1 is the image of ∞, where the interval transform vanishes.
            let value = -self.endpoint / two_pi_i();
            return Ok(self.wrap(value, (self.series.len() as f64).ln_1p() / (2.0 * PI)));
        }
        let raw = cauchy_series_raw(&self.series, w)? - self.endpoint;
        let value = raw / two_pi_i();
        let kernel = (1.0 + (w - 1.0).norm().recip()) * (self.series.len() as f64).ln_1p();
        Ok(self.wrap(value, kernel / (2.0 * PI)))
    }

    /// `H f(x)` for `x > 0`.
    pub fn hilbert(&self, x: f64) -> Result<SeriesEstimate> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
        }
        let w = MobiusMap::inverse_real(x);
        let value = hilbert_series(&self.series, w)? - self.endpoint / PI;
        let kernel = (1.0 + (1.0 - w).recip()) * (self.series.len() as f64).ln_1p();
        Ok(self.wrap(value, kernel / PI))
    }
}

/// One-shot `C f(z)` through an `n`-term expansion of `f∘M`.
pub fn mobius_cauchy(f: &HalfLineFunction, n: usize, z: Complex64) -> Result<SeriesEstimate> {
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    MobiusExpansion::new(f, n)?.cauchy(z)
}

/// One-shot `H f(x)` through an `n`-term expansion of `f∘M`.
pub fn mobius_hilbert(f: &HalfLineFunction, n: usize, x: f64) -> Result<SeriesEstimate> {
    if !(x > 0.0) {
        return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
    }
    MobiusExpansion::new(f, n)?.hilbert(x)
}
