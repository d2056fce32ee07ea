//! Globally adaptive Gauss–Kronrod quadrature for complex integrands, plus
//! the half-line plumbing shared by every brute-force evaluator.
//!
//! The half line is cut into `[0, a]`, `[a, T]` and `[T, ∞)`. Integrable
//! power singularities at zero are removed with `t = a s^k`; the tail is
//! folded onto `(0, 1]` with `t = T s^{-k}`, with `k` picked so that the
//! folded integrand is bounded at `s = 0`. Both substitutions are exact, so
//! slowly decaying integrands (`|g| ~ t^{-1-δ}` with small δ) are integrated
//! rather than truncated.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::estimate::Estimate;
use crate::function::Oscillation;

/// Tolerances and limits for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Start of the folded tail `[T, ∞)`.
    pub truncation_radius: f64,
    /// Bisections allowed on top of the initial panels.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            truncation_radius: 10.0,
            max_subdivisions: 50_000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(rel_tol: f64, abs_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    pub fn with_truncation_radius(mut self, t: f64) -> Self {
        self.truncation_radius = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(crate::error::precondition("quadrature tolerances must be positive"));
        }
        if !(self.truncation_radius >= 1.0) || !self.truncation_radius.is_finite() {
            return Err(crate::error::precondition("truncation_radius must be finite and >= 1"));
        }
        if self.max_subdivisions == 0 {
            return Err(crate::error::precondition("max_subdivisions must be positive"));
        }
        Ok(())
    }
}

// Published 30-digit tables, kept verbatim.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const EPS: f64 = f64::EPSILON;
/// Cap on phase panels generated from an oscillation hint.
const MAX_PHASE_PANELS: usize = 4_000_000;
const MAX_POWER_SUBSTITUTION: i32 = 64;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    at_floor: bool,
}

fn sample<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { at: x })
    }
}

/// 21-point Kronrod rule with the embedded 10-point Gauss rule.
fn gk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let half = 0.5 * (b - a);
    let centre = 0.5 * (a + b);
    let fc = sample(f, centre)?;
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_k = fc * WGK[10];
    let mut res_abs = WGK[10] * fc.norm();
    let mut f1s = [Complex64::new(0.0, 0.0); 10];
    let mut f2s = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = sample(f, centre - dx)?;
        let f2 = sample(f, centre + dx)?;
        f1s[j] = f1;
        f2s[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((f1s[j] - mean).norm() + (f2s[j] - mean).norm());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * EPS * res_abs;
    let at_floor = error <= floor;
    if at_floor {
        error = floor;
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        at_floor,
    })
}

#[derive(PartialEq)]
struct Ranked {
    error: f64,
    index: usize,
}

impl Eq for Ranked {}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Absolute/relative target for one adaptive run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

impl From<&QuadratureSpec> for Tolerance {
    fn from(spec: &QuadratureSpec) -> Self {
        Tolerance {
            rel: spec.rel_tol,
            abs: spec.abs_tol,
            max_subdivisions: spec.max_subdivisions,
        }
    }
}

fn neumaier_sum(values: impl Iterator<Item = Complex64>) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for v in values {
        let t = sum + v;
        comp.re += if sum.re.abs() >= v.re.abs() {
            (sum.re - t.re) + v.re
        } else {
            (v.re - t.re) + sum.re
        };
        comp.im += if sum.im.abs() >= v.im.abs() {
            (sum.im - t.im) + v.im
        } else {
            (v.im - t.im) + sum.im
        };
        sum = t;
    }
    sum + comp
}

/// Adaptive integration over `[points[0], points[last]]`, starting from the
/// panels delimited by `points` (ascending).
pub(crate) fn integrate<F>(f: &F, points: &[f64], tol: Tolerance) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
{
    debug_assert!(points.len() >= 2);
    let mut panels: Vec<Panel> = Vec::with_capacity(points.len() * 2);
    for w in points.windows(2) {
        if w[1] > w[0] {
            panels.push(gk21(f, w[0], w[1])?);
        }
    }
    if panels.is_empty() {
        return Ok(Estimate::zero());
    }

    let mut heap = BinaryHeap::with_capacity(panels.len());
    let mut total = neumaier_sum(panels.iter().map(|p| p.value));
    let mut total_err: f64 = panels.iter().map(|p| p.error).sum();
    let mut frozen_err = 0.0;
    for (index, p) in panels.iter().enumerate() {
        if p.at_floor {
            frozen_err += p.error;
        } else {
            heap.push(Ranked { error: p.error, index });
        }
    }

    let mut splits = 0usize;
    loop {
        let target = tol.abs.max(tol.rel * total.norm());
        if total_err <= target || total_err - frozen_err <= target {
            break;
        }
        let Some(Ranked { index, .. }) = heap.pop() else {
            break;
        };
        let p = panels[index];
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            frozen_err += p.error;
            continue;
        }
        if splits >= tol.max_subdivisions {
            let estimate = neumaier_sum(panels.iter().map(|p| p.value));
            return Err(Error::Convergence {
                estimate,
                error_bound: total_err,
            });
        }
        splits += 1;
        let left = gk21(f, p.a, mid)?;
        let right = gk21(f, mid, p.b)?;
        total += left.value + right.value - p.value;
        total_err += left.error + right.error - p.error;
        panels[index] = left;
        panels.push(right);
        for (i, q) in [(index, left), (panels.len() - 1, right)] {
            if q.at_floor {
                frozen_err += q.error;
            } else {
                heap.push(Ranked {
                    error: q.error,
                    index: i,
                });
            }
        }
    }

    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = neumaier_sum(panels.iter().map(|p| p.value));
    let error = panels.iter().map(|p| p.error).sum();
    Ok(Estimate::new(value, error))
}

/// Points `t` in `(a, b)` where the phase `ω t^s` crosses a multiple of π.
pub(crate) fn phase_points(osc: &Oscillation, a: f64, b: f64) -> Vec<f64> {
    if !(osc.omega > 0.0 && osc.power > 0.0) || b <= a {
        return Vec::new();
    }
    let phase = |t: f64| osc.omega * t.powf(osc.power) / std::f64::consts::PI;
    let lo = phase(a.max(0.0)).floor() as u64 + 1;
    let hi_real = phase(b);
    if !hi_real.is_finite() {
        return Vec::new();
    }
    let hi = hi_real.ceil() as u64;
    if hi <= lo {
        return Vec::new();
    }
    let count = (hi - lo) as usize;
    let stride = count.div_ceil(MAX_PHASE_PANELS).max(1) as u64;
    let mut out = Vec::with_capacity(count / stride as usize + 1);
    let mut j = lo;
    while j < hi {
        let t = (j as f64 * std::f64::consts::PI / osc.omega).powf(1.0 / osc.power);
        if t > a && t < b {
            out.push(t);
        }
        j += stride;
    }
    out
}

/// Breakpoint set for `[a, b]`: endpoints, interior hints and phase panels.
fn breakpoints(a: f64, b: f64, hints: &[f64], osc: Option<&Oscillation>) -> Vec<f64> {
    let mut pts = vec![a, b];
    pts.extend(hints.iter().copied().filter(|&h| h > a && h < b));
    if let Some(o) = osc {
        pts.extend(phase_points(o, a, b));
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Integrand together with the hints the half-line integrator uses.
pub(crate) struct HalfLine<'a> {
    pub f: &'a dyn Fn(f64) -> Complex64,
    /// `|f(t)| t^α` bounded near zero.
    pub zero_exponent: f64,
    /// `|f(t)| = O(t^{-γ})` at infinity; must exceed 1.
    pub decay_exponent: f64,
    /// Locations of near-singularities (poles just off the axis).
    pub hints: Vec<f64>,
    pub oscillation: Option<Oscillation>,
}

fn singularity_power(alpha: f64) -> i32 {
    if alpha <= 0.0 {
        1
    } else {
        ((1.0 / (1.0 - alpha)).ceil() as i32).clamp(1, MAX_POWER_SUBSTITUTION)
    }
}

fn tail_power(gamma: f64) -> i32 {
    let excess = gamma - 1.0;
    if excess >= 1.0 {
        1
    } else {
        ((1.0 / excess).ceil() as i32).clamp(1, MAX_POWER_SUBSTITUTION)
    }
}

fn split_tol(tol: Tolerance, parts: f64) -> Tolerance {
    Tolerance {
        abs: tol.abs / parts,
        ..tol
    }
}

impl HalfLine<'_> {
    /// `∫_a^b f` without substitutions.
    pub fn plain(&self, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
        if b <= a {
            return Ok(Estimate::zero());
        }
        let pts = breakpoints(a, b, &self.hints, self.oscillation.as_ref());
        integrate(&self.f, &pts, tol)
    }

    /// `∫_0^b f` with `t = b s^k` removing the `t^{-α}` singularity.
    pub fn zero_to(&self, b: f64, tol: Tolerance) -> Result<Estimate> {
        let k = singularity_power(self.zero_exponent);
        if k == 1 {
            return self.plain(0.0, b, tol);
        }
        let kf = k as f64;
        let g = |s: f64| {
            let t = b * s.powi(k);
            if t == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            (self.f)(t) * (kf * t / s)
        };
        let to_s = |t: f64| (t / b).powf(1.0 / kf);
        let mut marks: Vec<f64> = self
            .hints
            .iter()
            .copied()
            .filter(|&h| h > 0.0 && h < b)
            .map(to_s)
            .collect();
        if let Some(o) = self.oscillation.as_ref() {
            marks.extend(phase_points(o, 0.0, b).into_iter().map(to_s));
        }
        let pts = breakpoints(0.0, 1.0, &marks, None);
        integrate(&g, &pts, tol)
    }

    /// `∫_T^∞ f` with `t = T s^{-k}` folding the tail onto `(0, 1]`.
    pub fn tail(&self, t0: f64, tol: Tolerance) -> Result<Estimate> {
        if !(self.decay_exponent > 1.0) {
            return Err(crate::error::precondition(format!(
                "integrand decays like t^-{}, not integrable at infinity",
                self.decay_exponent
            )));
        }
        let k = tail_power(self.decay_exponent);
        let kf = k as f64;
        let g = |s: f64| {
            let t = t0 * s.powi(-k);
            if !t.is_finite() || t > 1e300 {
                return Complex64::new(0.0, 0.0);
            }
            let v = (self.f)(t);
            if v == Complex64::new(0.0, 0.0) {
                return v;
            }
            v * (kf * t / s)
        };
        let marks: Vec<f64> = self
            .hints
            .iter()
            .copied()
            .filter(|&h| h > t0)
            .map(|h| (t0 / h).powf(1.0 / kf))
            .collect();
        let pts = breakpoints(0.0, 1.0, &marks, None);
        integrate(&g, &pts, tol)
    }

    /// `∫_a^∞ f` as a plain part up to `T` followed by the folded tail.
    pub fn to_infinity(&self, a: f64, t_cut: f64, tol: Tolerance) -> Result<Estimate> {
        let t_cut = t_cut.max(a);
        let tol = split_tol(tol, 2.0);
        let head = if t_cut > a {
            self.plain(a, t_cut, tol)?
        } else {
            Estimate::zero()
        };
        Ok(head + self.tail(t_cut, tol)?)
    }

    /// `∫_0^∞ f`.
    pub fn whole(&self, spec: &QuadratureSpec) -> Result<Estimate> {
        let tol = split_tol(Tolerance::from(spec), 3.0);
        let t_cut = spec.truncation_radius.max(1.0);
        let near = self.zero_to(1.0, tol)?;
        let mid = self.plain(1.0, t_cut, tol)?;
        let far = self.tail(t_cut, tol)?;
        Ok(near + mid + far)
    }
}
