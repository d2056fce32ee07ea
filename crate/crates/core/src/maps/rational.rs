//! Rational monomial maps `x^r`, `r = p/q`: `p` preimages, each evaluated on
//! the sheet of the `q`-sheeted transform it lands on.

use num_complex::Complex64;

use super::exponent::{branch_index, lambda_root_rational, RationalExponent};
use super::sheeted::{cauchy_sheeted, cauchy_sheeted_boundary};
use crate::error::{domain, Result};
use crate::estimate::Estimate;
use crate::function::HalfLineFunction;
use crate::oracle::{cauchy_oracle, hilbert_oracle, on_positive_axis, I};
use crate::par::{self, Execution};
use crate::quadrature::QuadratureSpec;

/// `C^q_β` at `w`, falling back to the lower boundary value when `w` sits on
/// the positive axis (a sheet seam).
fn sheet_value(
    g: &HalfLineFunction,
    q: u32,
    beta: i64,
    w: Complex64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    if on_positive_axis(w) {
        let b = cauchy_sheeted_boundary(g, q, beta, w.re, quad, exec)?;
        return Ok(Estimate::new(b.minus, quad.abs_tol));
    }
    cauchy_sheeted(g, q, beta, w, quad, exec)
}

/// `C f(z) = Σ_{j<p} C^q_{β(j,z)}[f(⋄^r)](λ_j(z))`.
pub fn cauchy_rational_map(
    f: &HalfLineFunction,
    r: RationalExponent,
    z: Complex64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    if r.p() == 1 && r.q() == 1 {
        return cauchy_oracle(f, z, quad);
    }
    let g = f.compose_power(r.value());
    let terms = par::map_range(exec, r.p() as usize, |j| {
        let j = j as i64;
        let w = lambda_root_rational(z, r, j)?;
        sheet_value(&g, r.q(), branch_index(j, z, r), w, quad, exec)
    });
    terms.into_iter().sum()
}

/// `H f(x) = (1/q) Σ_{ν<q} x^{ν/p} H[f(⋄^r)/⋄^{ν/q}](x^{1/r}) + 2i Σ_{1≤j<p} C^q_{β(j,x)}[f(⋄^r)](λ_j(x))`.
///
/// The weight is `x^{ν/p} = (x^{1/p})^ν`: the on-axis term is the root-map
/// Hilbert formula applied at `x^{1/p}`.
pub fn hilbert_rational_map(
    f: &HalfLineFunction,
    r: RationalExponent,
    x: f64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
    }
    if r.p() == 1 && r.q() == 1 {
        return hilbert_oracle(f, x, quad);
    }
    let (p, q) = (r.p(), r.q());
    let g = f.compose_power(r.value());
    let y = x.powf(1.0 / r.value());
    let root = x.powf(1.0 / p as f64);
    let on_axis = par::map_range(exec, q as usize, |nu| {
        let h = hilbert_oracle(&g.divide_by_power(nu as f64 / q as f64), y, quad)?;
        Ok(h.scale(Complex64::new(root.powi(nu as i32), 0.0)))
    });
    let on_axis: Estimate = on_axis.into_iter().sum::<Result<Estimate>>()?;
    let on_axis = on_axis.scale(Complex64::new(1.0 / q as f64, 0.0));

    let z = Complex64::new(x, 0.0);
    let off = par::map_range(exec, p.saturating_sub(1) as usize, |j| {
        let j = j as i64 + 1;
        let w = lambda_root_rational(z, r, j)?;
        sheet_value(&g, q, branch_index(j, z, r), w, quad, exec)
    });
    let off: Estimate = off.into_iter().sum::<Result<Estimate>>()?;
    Ok(on_axis + off.scale(I * 2.0))
}
