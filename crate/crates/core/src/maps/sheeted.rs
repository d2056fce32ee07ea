//! The weighted transforms `P_r` and the `q`-sheeted Cauchy transform built
//! from them, plus the root-map representation `C f(z) = C^q_ν[f(⋄^{1/q})](z^q)`.

use num_complex::Complex64;

use super::exponent::{neg_pow, phase, seam_power, sheet_of};
use crate::error::{domain, precondition, Result};
use crate::estimate::{BoundaryPair, Estimate};
use crate::function::HalfLineFunction;
use crate::oracle::{cauchy_boundary_oracle, cauchy_oracle, hilbert_oracle, on_positive_axis, pole_hints, two_pi_i, I};
use crate::par::{self, Execution};
use crate::quadrature::{HalfLine, QuadratureSpec};

/// `P_r` with `r = k/q`, `0 ≤ k < q`, applied to `f`.
#[derive(Debug, Clone)]
pub struct PrOperatorSpec {
    pub k: u32,
    pub q: u32,
    pub f: HalfLineFunction,
    pub quad: QuadratureSpec,
}

impl PrOperatorSpec {
    pub fn new(k: u32, q: u32, f: HalfLineFunction, quad: QuadratureSpec) -> Result<Self> {
        if q == 0 || k >= q {
            return Err(precondition(format!("P_r needs 0 <= r = {k}/{q} < 1")));
        }
        let spec = PrOperatorSpec { k, q, f, quad };
        spec.weighted().check_integrable()?;
        Ok(spec)
    }

    pub fn r(&self) -> f64 {
        self.k as f64 / self.q as f64
    }

    /// `f / ⋄^r`.
    pub fn weighted(&self) -> HalfLineFunction {
        self.f.divide_by_power(self.r())
    }
}

/// Points `s > 0` near which `s^q = z` comes close to the positive axis.
fn root_hints(z: Complex64, q: u32) -> Vec<f64> {
    let mut hints = Vec::new();
    let base = z.norm().powf(1.0 / q as f64);
    let arg = z.arg();
    for m in 0..q as i64 {
        let theta = (arg + std::f64::consts::TAU * m as f64) / q as f64;
        let s = Complex64::from_polar(base, theta);
        if s.re > 0.0 {
            hints.extend(pole_hints(s));
        }
    }
    hints
}

/// `P_r f(z) = e^{πir} (-z)^r C[f/⋄^r](z)`.
///
/// The integral is computed in `s` with `t = s^q`, which turns the weight
/// `t^{-k/q}` into the bounded factor `s^{q-1-k}`.
pub fn p_r_transform(spec: &PrOperatorSpec, z: Complex64) -> Result<Estimate> {
    if on_positive_axis(z) {
        return Err(domain(format!("P_r undefined on [0, ∞): z = {z}")));
    }
    if spec.k == 0 {
        return cauchy_oracle(&spec.f, z, &spec.quad);
    }
    spec.quad.validate()?;
    let (k, q) = (spec.k as i32, spec.q as i32);
    let qf = q as f64;
    let f = &spec.f;
    let g = |s: f64| {
        let t = s.powi(q);
        if t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        f.eval(t) * (qf * s.powi(q - 1 - k)) / (Complex64::new(t, 0.0) - z)
    };
    let line = HalfLine {
        f: &g,
        zero_exponent: qf * f.zero_exponent - (q - 1 - k) as f64,
        decay_exponent: qf * f.decay_exponent + 1.0 + k as f64,
        hints: root_hints(z, spec.q),
        oscillation: f.oscillation.map(|o| crate::function::Oscillation {
            omega: o.omega,
            power: o.power * qf,
        }),
    };
    let integral = line.whole(&spec.quad)?;
    let r = spec.r();
    let factor = phase(r / 2.0) * neg_pow(z, r) / two_pi_i();
    Ok(integral.scale(factor))
}

/// Boundary values from `P⁺ - e^{-2πir}P⁻ = f` and
/// `P⁺ + e^{-2πir}P⁻ = -i x^r H[f/⋄^r](x)`.
pub fn p_r_boundary(spec: &PrOperatorSpec, x: f64) -> Result<BoundaryPair> {
    if spec.k == 0 {
        return cauchy_boundary_oracle(&spec.f, x, &spec.quad);
    }
    let r = spec.r();
    let h = hilbert_oracle(&spec.weighted(), x, &spec.quad)?.value;
    let fx = spec.f.eval(x);
    let s = -I * h * x.powf(r);
    Ok(BoundaryPair {
        plus: (fx + s) * 0.5,
        minus: phase(r) * (s - fx) * 0.5,
    })
}

fn check_sheet(q: u32, nu: i64) -> Result<()> {
    if q == 0 {
        return Err(precondition("q must be positive"));
    }
    if nu < 1 || nu > q as i64 {
        return Err(precondition(format!("sheet {nu} is not in 1..={q}")));
    }
    Ok(())
}

fn sheet_phase(q: u32, nu: i64, k: u32) -> Complex64 {
    let turns = ((nu - 1) * k as i64).rem_euclid(q as i64) as f64 / q as f64;
    phase(turns)
}

/// `C^q_ν f(z) = (1/q) Σ_{k<q} e^{2πi(ν-1)k/q} P_{k/q} f(z)`.
pub fn cauchy_sheeted(
    f: &HalfLineFunction,
    q: u32,
    nu: i64,
    z: Complex64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    check_sheet(q, nu)?;
    if on_positive_axis(z) {
        return Err(domain(format!(
            "C^q undefined on [0, ∞): z = {z}; use the boundary evaluator"
        )));
    }
    let terms = par::map_range(exec, q as usize, |k| {
        let spec = PrOperatorSpec::new(k as u32, q, f.clone(), *quad)?;
        Ok(p_r_transform(&spec, z)?.scale(sheet_phase(q, nu, k as u32)))
    });
    let sum: Estimate = terms.into_iter().sum::<Result<Estimate>>()?;
    Ok(sum.scale(Complex64::new(1.0 / q as f64, 0.0)))
}

/// `(C^{q+}_ν f(x), C^{q-}_ν f(x))` from the `P_{k/q}` boundary solves.
pub fn cauchy_sheeted_boundary(
    f: &HalfLineFunction,
    q: u32,
    nu: i64,
    x: f64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<BoundaryPair> {
    check_sheet(q, nu)?;
    let terms = par::map_range(exec, q as usize, |k| {
        let spec = PrOperatorSpec::new(k as u32, q, f.clone(), *quad)?;
        let b = p_r_boundary(&spec, x)?;
        let w = sheet_phase(q, nu, k as u32);
        Ok((b.plus * w, b.minus * w))
    });
    let scale = 1.0 / q as f64;
    let mut plus = Complex64::new(0.0, 0.0);
    let mut minus = Complex64::new(0.0, 0.0);
    for t in terms {
        let (p, m) = t?;
        plus += p;
        minus += m;
    }
    Ok(BoundaryPair {
        plus: plus * scale,
        minus: minus * scale,
    })
}

/// `C f(z) = C^q_ν[f(⋄^{1/q})](z^q)` with `ν` the sheet of `z`.
///
/// On a seam `arg z = 2πν/q` the point `z^q` is on the positive axis and the
/// value is the lower boundary value of sheet `ν` (equal to the upper one of
/// sheet `ν + 1`).
pub fn cauchy_root_map(
    f: &HalfLineFunction,
    q: u32,
    z: Complex64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    if q == 0 {
        return Err(precondition("q must be positive"));
    }
    if on_positive_axis(z) {
        return Err(domain(format!("Cauchy transform undefined on [0, ∞): z = {z}")));
    }
    if q == 1 {
        return cauchy_oracle(f, z, quad);
    }
    let g = f.compose_power(1.0 / q as f64);
    let nu = sheet_of(z, q)?;
    let w = seam_power(z, q)?;
    if on_positive_axis(w) {
        let b = cauchy_sheeted_boundary(&g, q, nu, w.re, quad, exec)?;
        return Ok(Estimate::new(b.minus, quad.abs_tol));
    }
    cauchy_sheeted(&g, q, nu, w, quad, exec)
}

/// `H f(x) = (1/q) Σ_{ν<q} x^ν H[f(⋄^{1/q})/⋄^{ν/q}](x^q)`.
pub fn hilbert_root_map(
    f: &HalfLineFunction,
    q: u32,
    x: f64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<Estimate> {
    if q == 0 {
        return Err(precondition("q must be positive"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain(format!("Hilbert transform needs x > 0, got {x}")));
    }
    if q == 1 {
        return hilbert_oracle(f, x, quad);
    }
    let g = f.compose_power(1.0 / q as f64);
    let y = x.powi(q as i32);
    let terms = par::map_range(exec, q as usize, |nu| {
        let h = hilbert_oracle(&g.divide_by_power(nu as f64 / q as f64), y, quad)?;
        Ok(h.scale(Complex64::new(x.powi(nu as i32), 0.0)))
    });
    let sum: Estimate = terms.into_iter().sum::<Result<Estimate>>()?;
    Ok(sum.scale(Complex64::new(1.0 / q as f64, 0.0)))
}
