//! The experiment families. Each produces a [`Table`] of absolute errors
//! against an oracle reference; [`run`] writes it as CSV (and optionally SVG).

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use transforms_core::chebyshev::MobiusExpansion;
use transforms_core::halfline::{default_breakpoints, MappedExpansion};
use transforms_core::irrational::{cauchy_irrational_partial, PartialSumOptions};
use transforms_core::maps::{cauchy_power_map, hilbert_power_map};
use transforms_core::oscasym::{oscillatory_hilbert_asym, OscillatoryAsymParams};
use transforms_core::{cauchy_oracle, hilbert_oracle, par, Estimate, Execution, HalfLineFunction, QuadratureSpec};

use crate::cache::{CacheKey, OracleCache};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::eval::{self, TRUNCATION_DECADES};
use crate::plot::{render_svg, PlotSpec};
use crate::registry::{self, FunctionParams};

/// Truncation radius for the oscillatory references; the integrand is
/// negligible long before `t = 4` and a short folded tail keeps the
/// oscillatory panels cheap.
const OSC_TRUNCATION: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub key: Vec<String>,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: &'static str,
    pub rows: Vec<Row>,
}

/// Six significant digits in scientific notation.
pub fn format_error(e: f64) -> String {
    format!("{e:.5e}")
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(32 * (self.rows.len() + 1));
        s.push_str(self.header);
        s.push('\n');
        for r in &self.rows {
            for k in &r.key {
                s.push_str(k);
                s.push(',');
            }
            s.push_str(&format_error(r.error));
            s.push('\n');
        }
        s
    }

    /// Error of the row whose key columns equal `key`.
    pub fn error(&self, key: &[&str]) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.key.iter().map(String::as_str).eq(key.iter().copied()))
            .map(|r| r.error)
    }
}

pub struct RunContext<'a> {
    pub config: &'a ExperimentConfig,
    pub cache: &'a OracleCache,
    pub exec: Execution,
}

impl RunContext<'_> {
    fn quad(&self) -> QuadratureSpec {
        QuadratureSpec::with_tol(self.config.rel_tol, self.config.abs_tol)
    }

    /// Grid points run in parallel, so the work inside each stays sequential.
    fn inner(&self) -> Execution {
        Execution::Sequential
    }

    fn function(&self, name: &str, params: FunctionParams) -> Result<HalfLineFunction> {
        registry::lookup(name, params).ok_or_else(|| anyhow!("unknown function `{name}`"))
    }

    fn single_function(&self) -> Result<&str> {
        match self.config.functions.as_slice() {
            [one] => Ok(one),
            other => bail!("{} expects exactly one function, got {other:?}", self.config.experiment),
        }
    }

    fn reference(
        &self,
        name: &str,
        params: FunctionParams,
        transform: &'static str,
        point: Complex64,
        quad: &QuadratureSpec,
    ) -> Result<Estimate> {
        let f = self.function(name, params)?;
        let key = CacheKey {
            function: format!("{}-T{:e}", registry::cache_id(name, params), quad.truncation_radius),
            transform,
            point,
            rel_tol: quad.rel_tol,
            abs_tol: quad.abs_tol,
        };
        self.cache.get_or_compute(&key, || match transform {
            "cauchy" => cauchy_oracle(&f, point, quad),
            _ => hilbert_oracle(&f, point.re, quad),
        })
    }
}

fn collect(header: &'static str, rows: Vec<Result<Row>>) -> Result<Table> {
    Ok(Table {
        header,
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn truncated_cauchy(f: &HalfLineFunction, p: u32, n: usize, z: Complex64, exec: Execution) -> Result<Complex64> {
    let plan = default_breakpoints(p, TRUNCATION_DECADES)?.with_n(n);
    let e = MappedExpansion::new(f, plan, exec)?;
    Ok(cauchy_power_map(|w| e.cauchy(w), p, z, exec)?.value)
}

/// Error of the truncated mapped expansion for `C f(z)` over `(p, n)`.
pub fn changingr(ctx: &RunContext<'_>) -> Result<Table> {
    let c = ctx.config;
    let name = ctx.single_function()?;
    let params = FunctionParams::default();
    let reference = ctx.reference(name, params, "cauchy", c.z, &ctx.quad())?.value;
    let f = ctx.function(name, params)?;
    let grid: Vec<(u32, usize)> = c
        .p_list
        .iter()
        .flat_map(|&p| c.n_list.iter().map(move |&n| (p, n)))
        .collect();
    let rows = par::map(ctx.exec, &grid, |&(p, n)| {
        let v = truncated_cauchy(&f, p, n, c.z, ctx.inner()).with_context(|| format!("p = {p}, n = {n}"))?;
        Ok(Row {
            key: vec![p.to_string(), n.to_string()],
            error: (v - reference).norm(),
        })
    });
    collect("p,n,abs_error", rows)
}

/// Fixed-cost sweep: `n = ⌊rule/p⌋` (at least 2) for each rule and `p`.
pub fn optimalr(ctx: &RunContext<'_>) -> Result<Table> {
    let c = ctx.config;
    let name = ctx.single_function()?;
    let params = FunctionParams::default();
    let reference = ctx.reference(name, params, "cauchy", c.z, &ctx.quad())?.value;
    let f = ctx.function(name, params)?;
    let grid: Vec<(usize, u32)> = c
        .n_rules
        .iter()
        .flat_map(|&r| c.p_list.iter().map(move |&p| (r, p)))
        .collect();
    let rows = par::map(ctx.exec, &grid, |&(rule, p)| {
        let n = (rule / p as usize).max(2);
        let v = truncated_cauchy(&f, p, n, c.z, ctx.inner()).with_context(|| format!("rule {rule}, p = {p}"))?;
        Ok(Row {
            key: vec![rule.to_string(), p.to_string(), n.to_string()],
            error: (v - reference).norm(),
        })
    });
    collect("rule,p,n,abs_error", rows)
}

/// `H f(x)` through the power map over a Möbius expansion of `f(⋄^p)`.
pub fn integer_decay(ctx: &RunContext<'_>) -> Result<Table> {
    let c = ctx.config;
    let params = FunctionParams::default();
    let mut grid = Vec::new();
    for name in &c.functions {
        for &p in &c.p_list {
            for &n in &c.n_list {
                grid.push((name.as_str(), p, n));
            }
        }
    }
    let refs = c
        .functions
        .iter()
        .map(|name| {
            Ok((
                name.as_str(),
                ctx.reference(name, params, "hilbert", Complex64::new(c.x, 0.0), &ctx.quad())?
                    .value,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = par::map(ctx.exec, &grid, |&(name, p, n)| {
        let reference = refs.iter().find(|r| r.0 == name).map(|r| r.1).unwrap_or_default();
        let g = ctx.function(name, params)?.compose_power(p as f64);
        let e = MobiusExpansion::new(&g, n).with_context(|| format!("{name}, p = {p}, n = {n}"))?;
        let v = hilbert_power_map(
            |y| Ok(e.hilbert(y)?.estimate),
            |w| Ok(e.cauchy(w)?.estimate),
            p,
            c.x,
            ctx.inner(),
        )?;
        Ok(Row {
            key: vec![name.to_string(), p.to_string(), n.to_string()],
            error: (v.value - reference).norm(),
        })
    });
    collect("function,p,n,abs_error", rows)
}

/// Large-ω expansion of `H[e^{(iω-1)⋄^3}](x)` against the PV oracle.
pub fn oscillatory(ctx: &RunContext<'_>) -> Result<Table> {
    let c = ctx.config;
    let quad = ctx.quad().with_truncation_radius(OSC_TRUNCATION);
    let points: Vec<(f64, f64)> = c
        .x_list
        .iter()
        .flat_map(|&x| c.omega_list.iter().map(move |&w| (x, w)))
        .collect();
    let refs = par::map(ctx.exec, &points, |&(x, omega)| {
        let params = FunctionParams {
            omega,
            ..Default::default()
        };
        ctx.reference("osc", params, "hilbert", Complex64::new(x, 0.0), &quad)
            .map(|e| e.value)
    });
    let mut rows = Vec::new();
    for (&(x, omega), reference) in points.iter().zip(refs) {
        let reference = reference?;
        for &m in &c.m_list {
            let v = oscillatory_hilbert_asym(&OscillatoryAsymParams::new(omega, x, m))?;
            rows.push(Ok(Row {
                key: vec![x.to_string(), omega.to_string(), m.to_string()],
                error: (v - reference).norm(),
            }));
        }
    }
    collect("x,omega,m,abs_error", rows)
}

/// Regularized partial sums for irrational `r` against the oracle at `z`.
pub fn irrational(ctx: &RunContext<'_>) -> Result<Table> {
    let c = ctx.config;
    let name = ctx.single_function()?;
    let quad = ctx.quad();
    let mut rows = Vec::new();
    for &r in &c.r_list {
        let params = FunctionParams {
            r,
            ..Default::default()
        };
        let reference = ctx.reference(name, params, "cauchy", c.z, &quad)?.value;
        let f = ctx.function(name, params)?;
        let opts = PartialSumOptions {
            quad,
            ..Default::default()
        };
        let part = par::map(ctx.exec, &c.sum_list, |&m| {
            let v = cauchy_irrational_partial(&f, r, c.z, m, &opts, ctx.inner())
                .with_context(|| format!("r = {r}, M = {m}"))?;
            Ok(Row {
                key: vec![r.to_string(), m.to_string()],
                error: (v.value - reference).norm(),
            })
        });
        rows.extend(part);
    }
    collect("r,M,abs_error", rows)
}

pub fn table(ctx: &RunContext<'_>) -> Result<Table> {
    match ctx.config.experiment {
        ExperimentKind::ChangingR => changingr(ctx),
        ExperimentKind::OptimalR => optimalr(ctx),
        ExperimentKind::IntegerDecay => integer_decay(ctx),
        ExperimentKind::Oscillatory => oscillatory(ctx),
        ExperimentKind::Irrational => irrational(ctx),
        ExperimentKind::Eval => bail!("eval is not a table experiment"),
    }
}

pub fn plot_spec(kind: ExperimentKind) -> PlotSpec<'static> {
    let (x_col, group_cols, log_x): (&str, &[&str], bool) = match kind {
        ExperimentKind::ChangingR => ("n", &["p"], false),
        ExperimentKind::OptimalR => ("p", &["rule"], true),
        ExperimentKind::IntegerDecay => ("n", &["function", "p"], false),
        ExperimentKind::Oscillatory => ("omega", &["x", "m"], true),
        ExperimentKind::Irrational | ExperimentKind::Eval => ("M", &["r"], false),
    };
    PlotSpec {
        title: kind.name(),
        x_col,
        y_col: "abs_error",
        group_cols,
        log_x,
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub table: Table,
}

/// Runs the configured experiment and writes `<output_dir>/<name>.csv`
/// (plus `.svg` when plotting is on).
pub fn run(config: &ExperimentConfig, cache: &OracleCache, exec: Execution) -> Result<RunOutput> {
    let ctx = RunContext { config, cache, exec };
    let table = table(&ctx)?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = config.experiment.name();
    let csv = dir.join(format!("{name}.csv"));
    let text = table.to_csv();
    fs::write(&csv, &text).with_context(|| format!("writing {}", csv.display()))?;
    let svg = if config.plot {
        let path = dir.join(format!("{name}.svg"));
        fs::write(&path, render_svg(&text, &plot_spec(config.experiment))?)?;
        Some(path)
    } else {
        None
    };
    Ok(RunOutput { csv, svg, table })
}

/// Runs an `eval` request and writes `<output_dir>/eval.csv`.
pub fn run_eval(config: &ExperimentConfig, exec: Execution) -> Result<(eval::EvalOutput, PathBuf)> {
    let req = &config.eval;
    let quad = QuadratureSpec::with_tol(config.rel_tol, config.abs_tol);
    let out = eval::evaluate(req, &quad, exec)?;
    let dir = &config.output_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("eval.csv");
    let side = req.side.map(|s| s.to_string()).unwrap_or_default();
    let text = format!(
        "function,method,transform,re,im,side,value_re,value_im,error_budget\n{},{},{},{},{},{},{:e},{:e},{:.5e}\n",
        req.function,
        req.method,
        req.transform,
        req.point.re,
        req.point.im,
        side,
        out.estimate.value.re,
        out.estimate.value.im,
        out.estimate.error
    );
    fs::write(&path, text)?;
    Ok((out, path))
}
