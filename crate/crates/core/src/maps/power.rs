//! `C f` and `H f` from transforms of `g = f(⋄^p)`, `p` a positive integer.
//!
//! `C f(z) = Σ_{j<p} C g(λ_j(z))` and
//! `H f(x) = H g(x^{1/p}) + 2i Σ_{1≤j<p} C g(λ_j(x))`,
//! with `λ_j(z) = z^{1/p} e^{2πij/p}`. The backends are arbitrary evaluators
//! of `C g` and `H g`, so the same formula serves the oracle, the piecewise
//! pipeline and the Möbius reduction.

use num_complex::Complex64;

use super::exponent::{lambda_root_rational, RationalExponent};
use crate::error::{domain, Result};
use crate::estimate::Estimate;
use crate::oracle::{on_positive_axis, I};
use crate::par::{self, Execution};

fn preimages(z: Complex64, p: u32, from: u32) -> Result<Vec<Complex64>> {
    let r = RationalExponent::integer(p)?;
    (from..p).map(|j| lambda_root_rational(z, r, j as i64)).collect()
}

pub fn cauchy_power_map<C>(cg: C, p: u32, z: Complex64, exec: Execution) -> Result<Estimate>
where
    C: Fn(Complex64) -> Result<Estimate> + Sync + Send,
{
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    let points = preimages(z, p, 0)?;
    par::map(exec, &points, |&w| cg(w)).into_iter().sum()
}

pub fn hilbert_power_map<H, C>(hg: H, cg: C, p: u32, x: f64, exec: Execution) -> Result<Estimate>
where
    H: Fn(f64) -> Result<Estimate>,
    C: Fn(Complex64) -> Result<Estimate> + Sync + Send,
{
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
    }
    let on_axis = hg(x.powf(1.0 / p as f64))?;
    let points = preimages(Complex64::new(x, 0.0), p, 1)?;
    let off: Estimate = par::map(exec, &points, |&w| cg(w))
        .into_iter()
        .sum::<Result<Estimate>>()?;
    Ok(on_axis + off.scale(I * 2.0))
}
