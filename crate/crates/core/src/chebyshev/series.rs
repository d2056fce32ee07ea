use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{precondition, Error, Result};

/// A Chebyshev expansion `Σ c_k T_k(u)` on `[a, b]`, `u = (2x - a - b)/(b - a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub coeffs: Vec<Complex64>,
    pub a: f64,
    pub b: f64,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<Complex64>, a: f64, b: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(precondition("a Chebyshev series needs at least one coefficient"));
        }
        if !(a < b) {
            return Err(precondition(format!("interval [{a}, {b}] is empty")));
        }
        Ok(ChebSeries { coeffs, a, b })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Maps `x` in `[a, b]` to `u` in `[-1, 1]`.
    pub fn to_reference(&self, x: Complex64) -> Complex64 {
        (x * 2.0 - (self.a + self.b)) / (self.b - self.a)
    }

    /// `(|c_{n-1}| + |c_{n-2}|) / max_k |c_k|`; zero for the zero series.
    pub fn trailing_magnitude(&self) -> f64 {
        let n = self.coeffs.len();
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        let tail = self.coeffs[n - 1].norm() + if n >= 2 { self.coeffs[n - 2].norm() } else { 0.0 };
        tail / max
    }

    pub fn is_resolved(&self, rel_tol: f64) -> bool {
        self.trailing_magnitude() <= rel_tol
    }

    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Value at the right endpoint, `Σ c_k`.
    pub fn right_value(&self) -> Complex64 {
        self.coeffs.iter().sum()
    }
}

/// The `n` Chebyshev–Lobatto points `cos(πj/(n-1))` of `[a, b]`, descending.
pub fn lobatto_points(n: usize, a: f64, b: f64) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    match n {
        0 => Vec::new(),
        1 => vec![mid],
        _ => {
            let m = (n - 1) as f64;
            (0..n)
                .map(|j| {
                    if j == 0 {
                        b
                    } else if j == n - 1 {
                        a
                    } else {
                        // sin form keeps the nodes symmetric to roundoff
                        let t = std::f64::consts::PI * (m - 2.0 * j as f64) / (2.0 * m);
                        mid + half * t.sin()
                    }
                })
                .collect()
        }
    }
}

/// Chebyshev coefficients from values at the Lobatto points (DCT-I via FFT).
pub fn coefficients_from_values(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    match n {
        0 => return Vec::new(),
        1 => return values.to_vec(),
        _ => {}
    }
    let m = n - 1;
    let mut buf: Vec<Complex64> = Vec::with_capacity(2 * m);
    buf.extend_from_slice(values);
    buf.extend(values[1..m].iter().rev());
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(2 * m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let mut coeffs: Vec<Complex64> = buf[..n].iter().map(|v| v * scale).collect();
    coeffs[0] *= 0.5;
    coeffs[m] *= 0.5;
    coeffs
}

/// Interpolates `g` at the `n` Lobatto points of `[a, b]`.
pub fn cheb_expand<G>(g: G, a: f64, b: f64, n: usize) -> Result<ChebSeries>
where
    G: Fn(f64) -> Complex64,
{
    if n == 0 {
        return Err(precondition("cheb_expand needs n >= 1"));
    }
    if !(a < b) {
        return Err(precondition(format!("interval [{a}, {b}] is empty")));
    }
    let pts = lobatto_points(n, a, b);
    let mut values = Vec::with_capacity(n);
    for &x in &pts {
        let v = g(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite { at: x });
        }
        values.push(v);
    }
    ChebSeries::new(coefficients_from_values(&values), a, b)
}

/// Doubles `n` through `2^k + 1` until the trailing coefficients fall below
/// `rel_tol` or `n_max` is reached. The returned flag reports success.
pub fn cheb_expand_adaptive<G>(g: G, a: f64, b: f64, rel_tol: f64, n_max: usize) -> Result<(ChebSeries, bool)>
where
    G: Fn(f64) -> Complex64,
{
    let mut n = 17;
    loop {
        let s = cheb_expand(&g, a, b, n)?;
        if s.is_resolved(rel_tol) {
            return Ok((s, true));
        }
        if 2 * n - 1 > n_max {
            return Ok((s, false));
        }
        n = 2 * n - 1;
    }
}

/// Clenshaw evaluation of the series at `x` (any complex point).
pub fn cheb_eval(s: &ChebSeries, x: Complex64) -> Complex64 {
    clenshaw(&s.coeffs, s.to_reference(x))
}

pub(crate) fn clenshaw(coeffs: &[Complex64], u: Complex64) -> Complex64 {
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().skip(1).rev() {
        let b0 = c + u * b1 * 2.0 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + u * b1 - b2
}

/// A function given piecewise by Chebyshev series on consecutive intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseSeries {
    breakpoints: Vec<f64>,
    pieces: Vec<ChebSeries>,
}

impl PiecewiseSeries {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<ChebSeries>) -> Result<Self> {
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(precondition("breakpoints must be strictly increasing"));
        }
        if pieces.len() + 1 != breakpoints.len() && !(pieces.is_empty() && breakpoints.len() <= 1) {
            return Err(precondition(format!(
                "{} pieces do not fit {} breakpoints",
                pieces.len(),
                breakpoints.len()
            )));
        }
        for (l, p) in pieces.iter().enumerate() {
            if p.a != breakpoints[l] || p.b != breakpoints[l + 1] {
                return Err(precondition(format!("piece {l} does not span its breakpoints")));
            }
        }
        Ok(PiecewiseSeries { breakpoints, pieces })
    }

    pub fn empty() -> Self {
        PiecewiseSeries {
            breakpoints: Vec::new(),
            pieces: Vec::new(),
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[ChebSeries] {
        &self.pieces
    }

    pub fn support(&self) -> Option<(f64, f64)> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(&a), Some(&b)) if !self.pieces.is_empty() => Some((a, b)),
            _ => None,
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self.pieces.iter().find(|p| x >= p.a && x <= p.b) {
            Some(p) => cheb_eval(p, Complex64::new(x, 0.0)),
            None => Complex64::new(0.0, 0.0),
        }
    }
}
