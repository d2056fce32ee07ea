//! Piecewise Chebyshev pipeline for `g = f(⋄^p)` on a truncated half line.
//!
//! `g` is expanded on consecutive intervals `[a_l, a_{l+1}]`, `a_1 = 0`, up to
//! a cut `a_ℓ` beyond which `g` is negligible; transforms of the truncated
//! function are then sums of interval transforms. Recombination over the
//! `p` preimages `λ_j(z)` happens in [`crate::maps`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chebyshev::moments::{cauchy_series_raw, hilbert_series};
use crate::chebyshev::series::{cheb_expand, cheb_expand_adaptive, ChebSeries, PiecewiseSeries};
use crate::error::{domain, precondition, Error, Result};
use crate::estimate::Estimate;
use crate::function::HalfLineFunction;
use crate::oracle::two_pi_i;
use crate::par::{self, Execution};

/// Default threshold for `|f|` at the image of the cut.
pub const TAIL_EPS: f64 = 1e-15;

/// Relative distance to a breakpoint below which Hilbert evaluation is refused.
pub const BREAKPOINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPlan {
    pub p: u32,
    pub breakpoints: Vec<f64>,
    pub n_per_piece: usize,
    pub tail_cut: f64,
}

impl TruncationPlan {
    pub fn new(p: u32, breakpoints: Vec<f64>, n_per_piece: usize) -> Result<Self> {
        if p < 1 {
            return Err(domain("map exponent p must be >= 1"));
        }
        if breakpoints.len() < 2 || breakpoints[0] != 0.0 {
            return Err(precondition(
                "breakpoints must start at 0 and contain at least two entries",
            ));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) || !breakpoints.iter().all(|b| b.is_finite()) {
            return Err(precondition("breakpoints must be finite and strictly increasing"));
        }
        if n_per_piece < 1 {
            return Err(precondition("n_per_piece must be >= 1"));
        }
        let tail_cut = *breakpoints.last().unwrap();
        Ok(TruncationPlan {
            p,
            breakpoints,
            n_per_piece,
            tail_cut,
        })
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n_per_piece = n.max(1);
        self
    }

    pub fn pieces(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// `|f|` at the original-variable image `tail_cut^p` of the cut.
    pub fn tail_level(&self, f: &HalfLineFunction) -> f64 {
        f.eval(self.tail_cut.powi(self.p as i32)).norm()
    }

    /// Whether `|f(tail_cut^p)| < eps`.
    pub fn check_tail(&self, f: &HalfLineFunction, eps: f64) -> Result<()> {
        let level = self.tail_level(f);
        if level < eps {
            Ok(())
        } else {
            Err(precondition(format!(
                "|f| = {level:e} at the cut {:e} exceeds {eps:e}",
                self.tail_cut
            )))
        }
    }
}

/// `[0, 10^{-10/p}, 1, 10^{10/p}, 10^{20/p}, …, 10^{decade_max/p}]`.
pub fn default_breakpoints(p: u32, decade_max: u32) -> Result<TruncationPlan> {
    if p < 1 {
        return Err(domain("map exponent p must be >= 1"));
    }
    if decade_max < 1 {
        return Err(precondition("decade_max must be >= 1"));
    }
    let pf = p as f64;
    let mut bp = vec![0.0, 10f64.powf(-10.0 / pf), 1.0];
    let mut d = 10;
    while d < decade_max {
        bp.push(10f64.powf(d as f64 / pf));
        d += 10;
    }
    bp.push(10f64.powf(decade_max as f64 / pf));
    TruncationPlan::new(p, bp, 100)
}

fn mapped(f: &HalfLineFunction, p: u32, at_zero: Complex64) -> impl Fn(f64) -> Complex64 + Sync + '_ {
    let k = p as i32;
    move |x: f64| if x == 0.0 { at_zero } else { f.eval(x.powi(k)) }
}

/// One Chebyshev series per plan interval approximating `x ↦ f(x^p)`.
pub fn build_mapped_expansion(f: &HalfLineFunction, plan: &TruncationPlan, exec: Execution) -> Result<PiecewiseSeries> {
    let at_zero = f.limit_at_zero()?;
    let g = mapped(f, plan.p, at_zero);
    let bp = &plan.breakpoints;
    let pieces: Vec<Result<ChebSeries>> = par::map_range(exec, plan.pieces(), |l| {
        cheb_expand(&g, bp[l], bp[l + 1], plan.n_per_piece)
    });
    let pieces = pieces.into_iter().collect::<Result<Vec<_>>>()?;
    PiecewiseSeries::new(bp.clone(), pieces)
}

/// As [`build_mapped_expansion`], but each piece doubles its size until
/// resolved to `rel_tol` or `n_max` is reached.
pub fn build_mapped_expansion_adaptive(
    f: &HalfLineFunction,
    plan: &TruncationPlan,
    rel_tol: f64,
    n_max: usize,
    exec: Execution,
) -> Result<PiecewiseSeries> {
    let at_zero = f.limit_at_zero()?;
    let g = mapped(f, plan.p, at_zero);
    let bp = &plan.breakpoints;
    let pieces: Vec<Result<(ChebSeries, bool)>> = par::map_range(exec, plan.pieces(), |l| {
        cheb_expand_adaptive(&g, bp[l], bp[l + 1], rel_tol, n_max)
    });
    let pieces = pieces
        .into_iter()
        .map(|r| r.map(|(s, _)| s))
        .collect::<Result<Vec<_>>>()?;
    PiecewiseSeries::new(bp.clone(), pieces)
}

fn tail_abs(s: &ChebSeries) -> f64 {
    let n = s.len();
    let pair = |k: usize| s.coeffs[k].norm() + if k >= 1 { s.coeffs[k - 1].norm() } else { 0.0 };
    let last = pair(n - 1);
    let max = s.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    // at roundoff level the "decay rate" is noise
    if n < 8 || last <= 64.0 * f64::EPSILON * max {
        return last;
    }
    // Extrapolate the neglected coefficients with the decay rate seen over the
    // last quarter; slowly decaying (algebraic) tails get up to a factor n.
    let m = 3 * n / 4;
    let earlier = pair(m);
    let factor = if earlier > last {
        let rho = (last / earlier).powf(1.0 / (n - 1 - m) as f64);
        (1.0 / (1.0 - rho)).min(n as f64)
    } else {
        n as f64
    };
    last * factor.max(1.0)
}

fn distance_to_interval(z: Complex64, a: f64, b: f64) -> f64 {
    let dx = if z.re < a {
        a - z.re
    } else if z.re > b {
        z.re - b
    } else {
        0.0
    };
    dx.hypot(z.im)
}

/// Interpolation error of a piece, propagated through the kernel `1/(t - z)`.
fn resolution_budget(s: &ChebSeries, z: Complex64) -> f64 {
    let d = distance_to_interval(z, s.a, s.b);
    let width = s.b - s.a;
    let kernel = if d > 0.0 {
        (1.0 + width / d).ln() + width / (d + width)
    } else {
        1.0
    };
    tail_abs(s) * kernel
}

/// `C` of the truncated piecewise function; the error covers the trailing
/// coefficients of every piece.
pub fn cauchy_truncated(series: &PiecewiseSeries, z: Complex64) -> Result<Estimate> {
    let Some((a, b)) = series.support() else {
        return Ok(Estimate::zero());
    };
    if z.im == 0.0 && z.re >= a && z.re <= b {
        return Err(domain(format!("z = {z} lies on the support [{a}, {b:e}]")));
    }
    let scale = two_pi_i().inv();
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for piece in series.pieces() {
        value += cauchy_series_raw(piece, z)?;
        error += resolution_budget(piece, z);
    }
    Ok(Estimate::new(value * scale, error / (2.0 * PI)))
}

/// `(1/π) PV ∫ g(t)/(t - x) dt` over the truncated support. The piece
/// containing `x` contributes its principal value; the others are regular.
pub fn hilbert_truncated(series: &PiecewiseSeries, x: f64) -> Result<Estimate> {
    let Some((a, b)) = series.support() else {
        return Ok(Estimate::zero());
    };
    if !(x > a && x < b) {
        return Err(domain(format!("x = {x} is not inside the support ({a}, {b:e})")));
    }
    for &bp in series.breakpoints() {
        if (x - bp).abs() <= BREAKPOINT_TOL * bp.abs().max(1.0) {
            return Err(Error::Breakpoint { x, breakpoint: bp });
        }
    }
    let z = Complex64::new(x, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for piece in series.pieces() {
        if x > piece.a && x < piece.b {
            value += hilbert_series(piece, x)?;
            let n = piece.len().max(2) as f64;
            error += tail_abs(piece) * n.ln() / PI;
        } else {
            value += cauchy_series_raw(piece, z)? / PI;
            error += resolution_budget(piece, z) / PI;
        }
    }
    Ok(Estimate::new(value, error))
}

/// A mapped expansion bundled with what is needed for its tail budget.
#[derive(Debug, Clone)]
pub struct MappedExpansion {
    pub plan: TruncationPlan,
    pub series: PiecewiseSeries,
    /// `|g(tail_cut)|`.
    tail_level: f64,
    /// Decay exponent of `g = f(⋄^p)`.
    tail_decay: f64,
}

impl MappedExpansion {
    pub fn new(f: &HalfLineFunction, plan: TruncationPlan, exec: Execution) -> Result<Self> {
        let series = build_mapped_expansion(f, &plan, exec)?;
        let tail_level = plan.tail_level(f);
        let tail_decay = f.decay_exponent * plan.p as f64;
        Ok(MappedExpansion {
            plan,
            series,
            tail_level,
            tail_decay,
        })
    }

    /// Bound on `(1/2π) |∫_T^∞ g(t)/(t - z) dt|` assuming `|g| ≤ |g(T)| (T/t)^γ`.
    pub fn tail_budget(&self, z: Complex64) -> f64 {
        if self.tail_level == 0.0 {
            return 0.0;
        }
        let t = self.plan.tail_cut;
        let d = distance_to_interval(z, t, f64::INFINITY).max(f64::MIN_POSITIVE);
        let gamma = self.tail_decay.max(1e-3);
        // ∫_T^∞ (T/s)^γ ds/(s - Re z) ≲ (T/d)/γ
        self.tail_level * (t / d).max(1.0) / gamma / (2.0 * PI)
    }

    pub fn cauchy(&self, z: Complex64) -> Result<Estimate> {
        let mut e = cauchy_truncated(&self.series, z)?;
        e.error += self.tail_budget(z);
        Ok(e)
    }

    pub fn hilbert(&self, x: f64) -> Result<Estimate> {
        let mut e = hilbert_truncated(&self.series, x)?;
        e.error += 2.0 * self.tail_budget(Complex64::new(x, 0.0));
        Ok(e)
    }
}
