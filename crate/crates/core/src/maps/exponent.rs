use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{domain, precondition, Result};

/// `r = p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    p: u32,
    q: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalExponent {
    /// Rejects non-coprime pairs rather than silently reducing them.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(precondition(format!("p and q must be positive (got {p}/{q})")));
        }
        if gcd(p, q) != 1 {
            return Err(precondition(format!("{p}/{q} is not in lowest terms")));
        }
        Ok(RationalExponent { p, q })
    }

    pub fn integer(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn value(self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A point on sheet `sheet` of a sheeted surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetedEvaluation {
    pub sheet: i64,
    pub point: Complex64,
}

/// `e^{2πij/r} z^{1/r}` on the principal branch, for real `r > 0`.
pub fn lambda_root(z: Complex64, r: f64, j: i64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(domain("λ_j is undefined at z = 0"));
    }
    if !(r > 0.0) {
        return Err(precondition(format!("exponent must be positive, got {r}")));
    }
    let inv = 1.0 / r;
    let arg = inv * z.arg() + TAU * j as f64 * inv;
    Ok(Complex64::from_polar(z.norm().powf(inv), arg))
}

/// `t` with `λ_j(z) = |z|^{1/r} e^{2πit}`: `t = (q Arg(z)/2π + jq)/p`.
///
/// Values within a few ulps of an integer are snapped to it, so a point whose
/// preimage lands on a seam is recognised as such.
pub(crate) fn rational_turns(z: Complex64, r: RationalExponent, j: i64) -> f64 {
    let (p, q) = (r.p as f64, r.q as i64);
    let t = (q as f64 * (z.arg() / TAU) + (j * q) as f64) / p;
    snap(t)
}

/// `ρ e^{2πit}`, exactly real when `t` is an integer.
fn on_turns(rho: f64, t: f64) -> Complex64 {
    let frac = t - t.round();
    if frac == 0.0 {
        Complex64::new(rho, 0.0)
    } else {
        Complex64::from_polar(rho, TAU * frac)
    }
}

pub(crate) fn snap(t: f64) -> f64 {
    let k = t.round();
    if (t - k).abs() <= 8.0 * f64::EPSILON * t.abs().max(1.0) {
        k
    } else {
        t
    }
}

/// Rational version of [`lambda_root`]; the phase is reduced mod `2π`
/// before it is formed and seam points come out exactly on the real axis.
pub fn lambda_root_rational(z: Complex64, r: RationalExponent, j: i64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(domain("λ_j is undefined at z = 0"));
    }
    if r.p == r.q {
        return Ok(z);
    }
    let t = rational_turns(z, r, j);
    let rho = z.norm().powf(r.q as f64 / r.p as f64);
    Ok(on_turns(rho, t))
}

/// `⌈arg z^{1/r}/(2π) + j/r⌉` with `arg z^{1/r} = Arg(z)/r`, not wrapped.
pub fn branch_ceiling(j: i64, z: Complex64, r: f64) -> i64 {
    (z.arg() / (TAU * r) + j as f64 / r).ceil() as i64
}

/// Sheet (in `1..=q`) on which `λ_j(z)` lives.
///
/// The raw ceiling is `≤ 0` when `Arg z < 0` and `j = 0`; sheets are only
/// defined modulo `q`, so the value is wrapped into `1..=q`.
pub fn branch_index(j: i64, z: Complex64, r: RationalExponent) -> i64 {
    let raw = rational_turns(z, r, j).ceil() as i64;
    (raw - 1).rem_euclid(r.q as i64) + 1
}

/// Sheet selector for the root map: `⌈Arg₀₂π(z) q/(2π)⌉` with the argument
/// taken in `(0, 2π)`.
pub fn sheet_of(z: Complex64, q: u32) -> Result<i64> {
    let nu = root_turns(z, q)?.ceil() as i64;
    Ok(nu.clamp(1, q as i64))
}

/// `q Arg₀₂π(z)/2π`, snapped to integers on seams.
fn root_turns(z: Complex64, q: u32) -> Result<f64> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(domain(format!(
            "z = {z} is on the positive axis; use the boundary evaluators"
        )));
    }
    let mut a = z.arg() / TAU;
    if a <= 0.0 {
        a += 1.0;
    }
    Ok(snap(a * q as f64))
}

/// `z^q`, landing exactly on the positive axis when `z` is on a seam.
pub(crate) fn seam_power(z: Complex64, q: u32) -> Result<Complex64> {
    let t = root_turns(z, q)?;
    Ok(on_turns(z.norm().powi(q as i32), t))
}

/// `(-z)^r` on the principal branch.
pub(crate) fn neg_pow(z: Complex64, r: f64) -> Complex64 {
    if r == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    (-z).powf(r)
}

pub(crate) fn phase(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, PI * 2.0 * turns)
}
