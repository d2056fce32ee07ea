//! One-shot transform evaluation by a chosen method.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;
use transforms_core::chebyshev::{MobiusExpansion, SeriesEstimate};
use transforms_core::halfline::{default_breakpoints, MappedExpansion};
use transforms_core::irrational::{cauchy_irrational_partial, PartialSumOptions};
use transforms_core::maps::{
    cauchy_power_map, cauchy_rational_map, cauchy_root_map, hilbert_power_map, hilbert_rational_map, hilbert_root_map,
    RationalExponent,
};
use transforms_core::oscasym::{oscillatory_hilbert_asym, OscillatoryAsymParams};
use transforms_core::{cauchy_oracle, hilbert_oracle, Estimate, Execution, HalfLineFunction, QuadratureSpec};

use crate::registry::{self, FunctionParams};

/// Decade reach of the breakpoint plan used by the `truncated` method.
pub const TRUNCATION_DECADES: u32 = 110;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown function `{0}`; known: {known}", known = known_functions())]
    UnknownFunction(String),
    #[error("point {0} lies on the branch cut [0, ∞); pass --side + or --side - to select a boundary value")]
    OnCut(Complex64),
    #[error("{method} does not support {what}")]
    Unsupported { method: Method, what: String },
    #[error(transparent)]
    Core(#[from] transforms_core::Error),
}

fn known_functions() -> String {
    registry::NAMES.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Oracle,
    PowerMap,
    RootMap,
    RationalMap,
    Truncated,
    Mobius,
    Asym,
    Irrational,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Oracle,
        Method::PowerMap,
        Method::RootMap,
        Method::RationalMap,
        Method::Truncated,
        Method::Mobius,
        Method::Asym,
        Method::Irrational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::PowerMap => "power-map",
            Method::RootMap => "root-map",
            Method::RationalMap => "rational-map",
            Method::Truncated => "truncated",
            Method::Mobius => "mobius",
            Method::Asym => "asym",
            Method::Irrational => "irrational",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Cauchy,
    Hilbert,
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Transform::Cauchy => "cauchy",
            Transform::Hilbert => "hilbert",
        })
    }
}

impl FromStr for Transform {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cauchy" | "C" => Ok(Transform::Cauchy),
            "hilbert" | "H" => Ok(Transform::Hilbert),
            _ => Err(format!("unknown transform `{s}` (cauchy or hilbert)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "+",
            Side::Minus => "-",
        })
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Side::Plus),
            "-" | "minus" => Ok(Side::Minus),
            _ => Err(format!("side must be + or -, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalRequest {
    pub function: String,
    pub method: Method,
    pub transform: Transform,
    pub point: Complex64,
    pub side: Option<Side>,
    pub p: u32,
    pub q: u32,
    pub n: usize,
    pub omega: f64,
    pub m: usize,
    pub big_m: usize,
    pub r: f64,
}

impl Default for EvalRequest {
    fn default() -> Self {
        let fp = FunctionParams::default();
        EvalRequest {
            function: "exp".into(),
            method: Method::Oracle,
            transform: Transform::Cauchy,
            point: Complex64::new(1.0, 1.0),
            side: None,
            p: 1,
            q: 1,
            n: 100,
            omega: fp.omega,
            m: 4,
            big_m: 10,
            r: fp.r,
        }
    }
}

impl EvalRequest {
    pub fn params(&self) -> FunctionParams {
        FunctionParams {
            omega: self.omega,
            r: self.r,
        }
    }

    pub fn function(&self) -> Result<HalfLineFunction, EvalError> {
        registry::lookup(&self.function, self.params()).ok_or_else(|| EvalError::UnknownFunction(self.function.clone()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutput {
    pub estimate: Estimate,
    pub warnings: Vec<String>,
}

impl EvalOutput {
    fn plain(estimate: Estimate) -> Self {
        EvalOutput {
            estimate,
            warnings: Vec::new(),
        }
    }
}

fn series_output(s: SeriesEstimate, what: &str) -> EvalOutput {
    let mut warnings = Vec::new();
    if !s.resolved {
        warnings.push(format!(
            "{what} expansion unresolved: trailing coefficients at {:.1e} of the largest",
            s.trailing
        ));
    }
    EvalOutput {
        estimate: s.estimate,
        warnings,
    }
}

fn mobius_warning(e: &MobiusExpansion) -> Vec<String> {
    if e.is_resolved() {
        Vec::new()
    } else {
        vec![format!(
            "Möbius expansion unresolved: trailing coefficients at {:.1e} of the largest",
            e.trailing()
        )]
    }
}

/// `C f(z)` off the cut by `req.method`.
pub fn cauchy_by(
    req: &EvalRequest,
    f: &HalfLineFunction,
    z: Complex64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<EvalOutput, EvalError> {
    let out = match req.method {
        Method::Oracle => EvalOutput::plain(cauchy_oracle(f, z, quad)?),
        Method::Mobius => series_output(MobiusExpansion::new(f, req.n)?.cauchy(z)?, "Möbius"),
        Method::PowerMap => {
            let g = f.compose_power(req.p as f64);
            let e = MobiusExpansion::new(&g, req.n)?;
            let v = cauchy_power_map(|w| Ok(e.cauchy(w)?.estimate), req.p, z, exec)?;
            EvalOutput {
                estimate: v,
                warnings: mobius_warning(&e),
            }
        }
        Method::Truncated => {
            let plan = default_breakpoints(req.p, TRUNCATION_DECADES)?.with_n(req.n);
            let e = MappedExpansion::new(f, plan, exec)?;
            EvalOutput::plain(cauchy_power_map(|w| e.cauchy(w), req.p, z, exec)?)
        }
        Method::RootMap => EvalOutput::plain(cauchy_root_map(f, req.q, z, quad, exec)?),
        Method::RationalMap => {
            let r = RationalExponent::new(req.p, req.q)?;
            EvalOutput::plain(cauchy_rational_map(f, r, z, quad, exec)?)
        }
        Method::Irrational => {
            let opts = PartialSumOptions {
                quad: *quad,
                ..Default::default()
            };
            let mut v = cauchy_irrational_partial(f, req.r, z, req.big_m, &opts, exec)?;
            let mut warnings = vec!["partial sums converge slowly in M".to_string()];
            if req.big_m > 0 {
                // heuristic: terms decay algebraically, so the remainder is
                // about M times the last pair of terms
                let prev = cauchy_irrational_partial(f, req.r, z, req.big_m - 1, &opts, exec)?;
                v.error += req.big_m as f64 * (v.value - prev.value).norm();
                warnings.push("error budget is a heuristic M·|S_M - S_{M-1}|".into());
            } else {
                v.error = f64::INFINITY;
            }
            EvalOutput { estimate: v, warnings }
        }
        Method::Asym => {
            return Err(EvalError::Unsupported {
                method: Method::Asym,
                what: "the Cauchy transform off the axis".into(),
            })
        }
    };
    Ok(out)
}

/// `H f(x)` for `x > 0` by `req.method`.
pub fn hilbert_by(
    req: &EvalRequest,
    f: &HalfLineFunction,
    x: f64,
    quad: &QuadratureSpec,
    exec: Execution,
) -> Result<EvalOutput, EvalError> {
    let out = match req.method {
        Method::Oracle => EvalOutput::plain(hilbert_oracle(f, x, quad)?),
        Method::Mobius => series_output(MobiusExpansion::new(f, req.n)?.hilbert(x)?, "Möbius"),
        Method::PowerMap => {
            let g = f.compose_power(req.p as f64);
            let e = MobiusExpansion::new(&g, req.n)?;
            let v = hilbert_power_map(
                |y| Ok(e.hilbert(y)?.estimate),
                |w| Ok(e.cauchy(w)?.estimate),
                req.p,
                x,
                exec,
            )?;
            EvalOutput {
                estimate: v,
                warnings: mobius_warning(&e),
            }
        }
        Method::Truncated => {
            let plan = default_breakpoints(req.p, TRUNCATION_DECADES)?.with_n(req.n);
            let e = MappedExpansion::new(f, plan, exec)?;
            let v = hilbert_power_map(|y| e.hilbert(y), |w| e.cauchy(w), req.p, x, exec)?;
            EvalOutput::plain(v)
        }
        Method::RootMap => EvalOutput::plain(hilbert_root_map(f, req.q, x, quad, exec)?),
        Method::RationalMap => {
            let r = RationalExponent::new(req.p, req.q)?;
            EvalOutput::plain(hilbert_rational_map(f, r, x, quad, exec)?)
        }
        Method::Asym => {
            if req.function != "osc" {
                return Err(EvalError::Unsupported {
                    method: Method::Asym,
                    what: format!("function `{}` (only `osc`)", req.function),
                });
            }
            let params = OscillatoryAsymParams::new(req.omega, x, req.m);
            let value = oscillatory_hilbert_asym(&params)?;
            let next = oscillatory_hilbert_asym(&OscillatoryAsymParams { m: req.m + 1, ..params })?;
            EvalOutput {
                estimate: Estimate::new(value, (next - value).norm()),
                warnings: vec!["error budget is the first omitted term of the expansion".into()],
            }
        }
        Method::Irrational => {
            return Err(EvalError::Unsupported {
                method: Method::Irrational,
                what: "the Hilbert transform".into(),
            })
        }
    };
    Ok(out)
}

/// Evaluates `req`. A Cauchy request on the cut needs a side and is then
/// assembled from `C^± = (±f - iH f)/2`.
pub fn evaluate(req: &EvalRequest, quad: &QuadratureSpec, exec: Execution) -> Result<EvalOutput, EvalError> {
    let f = req.function()?;
    let z = req.point;
    let on_cut = z.im == 0.0 && z.re >= 0.0;
    match req.transform {
        Transform::Hilbert => {
            if z.im != 0.0 {
                return Err(
                    transforms_core::Error::Domain(format!("Hilbert transform needs a real point, got {z}")).into(),
                );
            }
            hilbert_by(req, &f, z.re, quad, exec)
        }
        Transform::Cauchy if !on_cut => cauchy_by(req, &f, z, quad, exec),
        Transform::Cauchy => {
            let side = req.side.ok_or(EvalError::OnCut(z))?;
            let mut h = hilbert_by(req, &f, z.re, quad, exec)?;
            let fx = f.eval(z.re);
            let sign = if side == Side::Plus { 1.0 } else { -1.0 };
            let i = Complex64::new(0.0, 1.0);
            h.estimate = Estimate::new((fx * sign - i * h.estimate.value) / 2.0, h.estimate.error / 2.0);
            Ok(h)
        }
    }
}
