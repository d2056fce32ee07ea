//! Acceptance suite. One PASS/FAIL line per criterion; the process exits
//! non-zero if any blocking criterion fails. Criterion 7 only warns.

use std::f64::consts::{E, PI};
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use transforms_cli::cache::OracleCache;
use transforms_cli::config::{ExperimentConfig, ExperimentKind};
use transforms_cli::experiments::{self, RunContext, Table};
use transforms_cli::registry::{lookup, FunctionParams};
use transforms_core::chebyshev::MobiusExpansion;
use transforms_core::halfline::{default_breakpoints, MappedExpansion};
use transforms_core::irrational::{
    cauchy_infinite_sheet, cauchy_irrational_partial, InfiniteSheetPoint, PartialSumOptions,
};
use transforms_core::maps::{
    cauchy_power_map, cauchy_rational_map, cauchy_root_map, cauchy_sheeted, cauchy_sheeted_boundary, hilbert_power_map,
    hilbert_rational_map, hilbert_root_map, RationalExponent,
};
use transforms_core::{cauchy_oracle, hilbert_oracle, Execution, HalfLineFunction, QuadratureSpec, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
/// Errors below this are at the roundoff floor of the references, where
/// monotonicity carries no information.
const FLOOR: f64 = 1e-13;
/// `∫_0^∞ e^{-t}/(1+t) dt`, the Gompertz constant.
const GOMPERTZ: f64 = 0.596_347_362_323_194_1;

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.2e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn named(name: &str) -> HalfLineFunction {
    lookup(name, FunctionParams::default()).unwrap()
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// Two Richardson sweeps over `ε, ε/2, ε/4` for a limit with a smooth
/// expansion in `ε`.
fn richardson<F: Fn(f64) -> Result<Complex64>>(f: F, eps: f64) -> Result<Complex64> {
    let v = [f(eps)?, f(eps / 2.0)?, f(eps / 4.0)?];
    let r1 = [v[1] * 2.0 - v[0], v[2] * 2.0 - v[1]];
    Ok((r1[1] * 4.0 - r1[0]) / 3.0)
}

struct Suite {
    blocking_failures: usize,
}

type CauchyRep<'a> = Box<dyn Fn(Complex64) -> Result<Complex64> + 'a>;
type HilbertRep<'a> = Box<dyn Fn(f64) -> Result<Complex64> + 'a>;
/// `(id, name, check, blocking, budget in seconds)`
type Criterion = (u32, &'static str, fn() -> (bool, String), bool, u64);

impl Suite {
    #[allow(clippy::too_many_arguments)]
    fn report(
        &mut self,
        id: u32,
        name: &str,
        ok: bool,
        blocking: bool,
        detail: &str,
        took: Duration,
        budget: Duration,
    ) {
        let within = took <= budget;
        let pass = ok && within;
        let tag = match (pass, blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (warning only)",
        };
        if !pass && blocking {
            self.blocking_failures += 1;
        }
        let time = format!("{:.1}s of {}s", took.as_secs_f64(), budget.as_secs());
        println!(
            "{tag} [{id}] {name}: {detail} ({time}{})",
            if within { "" } else { ", over budget" }
        );
    }
}

struct Checks {
    failed: Vec<String>,
    worst: f64,
}

impl Checks {
    fn new() -> Self {
        Checks {
            failed: Vec::new(),
            worst: 0.0,
        }
    }

    fn dev(&mut self, what: impl Into<String>, dev: f64, tol: f64) {
        if dev.is_nan() || dev >= tol {
            self.failed.push(format!("{} ({dev:.2e} vs {tol:.0e})", what.into()));
        }
        if dev.is_finite() {
            self.worst = self.worst.max(dev / tol);
        }
    }

    fn truth(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn result<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failed.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn summary(&self) -> (bool, String) {
        if self.failed.is_empty() {
            (
                true,
                format!("all checks within tolerance (worst at {:.1e} of its bound)", self.worst),
            )
        } else {
            let shown: Vec<_> = self.failed.iter().take(4).cloned().collect();
            (false, format!("{} failed: {}", self.failed.len(), shown.join("; ")))
        }
    }
}

const CAUCHY_POINTS: [Complex64; 10] = [
    c_const(1.0, 1.0),
    c_const(-1.0, 0.0),
    c_const(-2.0, 0.5),
    c_const(0.3, -2.0),
    c_const(3.0, 0.1),
    c_const(-0.5, -0.5),
    c_const(0.0, 2.0),
    c_const(5.0, -3.0),
    c_const(-4.0, -1e-3),
    c_const(0.1, 0.05),
];
const HILBERT_POINTS: [f64; 10] = [0.05, 0.3, 0.7, 1.0, 1.5, 2.2, 3.0, 4.5, 7.0, 12.0];

const fn c_const(re: f64, im: f64) -> Complex64 {
    Complex64 { re, im }
}

fn criterion_1() -> (bool, String) {
    let mut ch = Checks::new();
    let q = quad();
    let exec = Execution::default();
    for name in ["exp-over", "inv-square", "frac"] {
        let f = named(name);
        let mut reps: Vec<(String, CauchyRep, HilbertRep)> = Vec::new();
        for p in [2u32, 3, 5] {
            let g = f.compose_power(p as f64);
            let (g1, g2, g3) = (g.clone(), g.clone(), g);
            reps.push((
                format!("power p={p}"),
                Box::new(move |z| Ok(cauchy_power_map(|w| cauchy_oracle(&g1, w, &q), p, z, exec)?.value)),
                Box::new(move |x| {
                    Ok(hilbert_power_map(
                        |y| hilbert_oracle(&g2, y, &q),
                        |w| cauchy_oracle(&g3, w, &q),
                        p,
                        x,
                        exec,
                    )?
                    .value)
                }),
            ));
        }
        for qq in [2u32, 3] {
            let (f1, f2) = (f.clone(), f.clone());
            reps.push((
                format!("root q={qq}"),
                Box::new(move |z| Ok(cauchy_root_map(&f1, qq, z, &q, exec)?.value)),
                Box::new(move |x| Ok(hilbert_root_map(&f2, qq, x, &q, exec)?.value)),
            ));
        }
        for (a, b) in [(2u32, 3u32), (3, 2), (3, 4)] {
            let r = RationalExponent::new(a, b).unwrap();
            let (f1, f2) = (f.clone(), f.clone());
            reps.push((
                format!("rational r={a}/{b}"),
                Box::new(move |z| Ok(cauchy_rational_map(&f1, r, z, &q, exec)?.value)),
                Box::new(move |x| Ok(hilbert_rational_map(&f2, r, x, &q, exec)?.value)),
            ));
        }
        let cref: Vec<_> = CAUCHY_POINTS
            .iter()
            .map(|&z| cauchy_oracle(&f, z, &q).map(|e| e.value))
            .collect();
        let href: Vec<_> = HILBERT_POINTS
            .iter()
            .map(|&x| hilbert_oracle(&f, x, &q).map(|e| e.value))
            .collect();
        for (label, cf, hf) in &reps {
            for (z, r) in CAUCHY_POINTS.iter().zip(&cref) {
                let what = format!("{name} {label} C({z})");
                if let (Some(v), Some(r)) = (ch.result(&what, cf(*z)), ch.result(&what, r.clone())) {
                    ch.dev(what, (v - r).norm(), 1e-6);
                }
            }
            for (x, r) in HILBERT_POINTS.iter().zip(&href) {
                let what = format!("{name} {label} H({x})");
                if let (Some(v), Some(r)) = (ch.result(&what, hf(*x)), ch.result(&what, r.clone())) {
                    ch.dev(what, (v - r).norm(), 1e-6);
                }
            }
        }
    }
    ch.summary()
}

type CauchyFn = Box<dyn Fn(Complex64) -> Result<Complex64>>;
type HilbertFn = Box<dyn Fn(f64) -> Result<Complex64>>;

fn representations(f: &HalfLineFunction) -> Vec<(&'static str, CauchyFn, HilbertFn)> {
    let q = quad();
    let exec = Execution::default();
    let mut reps: Vec<(&'static str, CauchyFn, HilbertFn)> = Vec::new();
    let (a, b) = (f.clone(), f.clone());
    reps.push((
        "oracle",
        Box::new(move |z| Ok(cauchy_oracle(&a, z, &q)?.value)),
        Box::new(move |x| Ok(hilbert_oracle(&b, x, &q)?.value)),
    ));
    let g = f.compose_power(3.0);
    let (g1, g2, g3) = (g.clone(), g.clone(), g);
    reps.push((
        "power-map p=3",
        Box::new(move |z| Ok(cauchy_power_map(|w| cauchy_oracle(&g1, w, &q), 3, z, exec)?.value)),
        Box::new(move |x| {
            Ok(hilbert_power_map(
                |y| hilbert_oracle(&g2, y, &q),
                |w| cauchy_oracle(&g3, w, &q),
                3,
                x,
                exec,
            )?
            .value)
        }),
    ));
    let (a, b) = (f.clone(), f.clone());
    reps.push((
        "root-map q=2",
        Box::new(move |z| Ok(cauchy_root_map(&a, 2, z, &q, exec)?.value)),
        Box::new(move |x| Ok(hilbert_root_map(&b, 2, x, &q, exec)?.value)),
    ));
    let r = RationalExponent::new(3, 2).unwrap();
    let (a, b) = (f.clone(), f.clone());
    reps.push((
        "rational-map r=3/2",
        Box::new(move |z| Ok(cauchy_rational_map(&a, r, z, &q, exec)?.value)),
        Box::new(move |x| Ok(hilbert_rational_map(&b, r, x, &q, exec)?.value)),
    ));
    let m = std::sync::Arc::new(MobiusExpansion::new(f, 128).unwrap());
    let m2 = m.clone();
    reps.push((
        "mobius n=128",
        Box::new(move |z| Ok(m.cauchy(z)?.estimate.value)),
        Box::new(move |x| Ok(m2.hilbert(x)?.estimate.value)),
    ));
    let plan = default_breakpoints(10, 110).unwrap().with_n(200);
    let t = std::sync::Arc::new(MappedExpansion::new(f, plan, exec).unwrap());
    let t2 = t.clone();
    reps.push((
        "truncated p=10 n=200",
        Box::new(move |z| Ok(cauchy_power_map(|w| t.cauchy(w), 10, z, exec)?.value)),
        Box::new(move |x| Ok(hilbert_power_map(|y| t2.hilbert(y), |w| t2.cauchy(w), 10, x, exec)?.value)),
    ));
    reps
}

fn criterion_2() -> (bool, String) {
    let mut ch = Checks::new();
    let f = named("exp-over");
    let x = 1.5;
    let fx = f.eval(x);
    let far = -c(GOMPERTZ, 0.0) / (2.0 * PI * I);
    for (name, cf, hf) in representations(&f) {
        let plus = richardson(|e| cf(c(x, e)), 1e-2);
        let minus = richardson(|e| cf(c(x, -e)), 1e-2);
        let h = hf(x);
        if let (Some(p), Some(m), Some(h)) = (ch.result(name, plus), ch.result(name, minus), ch.result(name, h)) {
            ch.dev(format!("{name} jump"), (p - m - fx).norm(), 1e-5);
            ch.dev(format!("{name} sum"), (p + m + I * h).norm(), 1e-5);
        }
        for z in [c(1.0, 1.0), c(-2.0, 0.5), c(0.3, -2.0), c(4.0, 1e-3)] {
            if let (Some(a), Some(b)) = (ch.result(name, cf(z)), ch.result(name, cf(z.conj()))) {
                ch.dev(format!("{name} Schwarz at {z}"), (b + a.conj()).norm(), 1e-9);
            }
        }
        for theta in [0.5, 2.0, -2.5] {
            let z = Complex64::from_polar(1e6, theta);
            if let Some(v) = ch.result(name, cf(z)) {
                ch.dev(format!("{name} far field at {z}"), (z * v - far).norm(), 1e-5);
            }
        }
    }
    ch.summary()
}

fn criterion_3() -> (bool, String) {
    let mut ch = Checks::new();
    let q = quad();
    let exec = Execution::default();
    let f = named("exp");
    let x = 1.0;
    for qq in [2u32, 3] {
        let side = |nu: i64, sign: f64| {
            richardson(
                |e| Ok(cauchy_sheeted(&f, qq, nu, c(x, sign * e), &q, exec)?.value),
                1e-2,
            )
        };
        for nu in 1..qq as i64 {
            if let (Some(lo), Some(up)) = (
                ch.result("gluing", side(nu, -1.0)),
                ch.result("gluing", side(nu + 1, 1.0)),
            ) {
                ch.dev(format!("q={qq} C^-_{nu} = C^+_{}", nu + 1), (lo - up).norm(), 1e-5);
            }
            let b = (
                cauchy_sheeted_boundary(&f, qq, nu, x, &q, exec),
                cauchy_sheeted_boundary(&f, qq, nu + 1, x, &q, exec),
            );
            if let (Some(a), Some(b)) = (ch.result("boundary", b.0), ch.result("boundary", b.1)) {
                ch.dev(
                    format!("q={qq} boundary gluing ν={nu}"),
                    (a.minus - b.plus).norm(),
                    1e-9,
                );
            }
        }
        if let (Some(up), Some(lo)) = (
            ch.result("jump", side(1, 1.0)),
            ch.result("jump", side(qq as i64, -1.0)),
        ) {
            ch.dev(format!("q={qq} C^+_1 - C^-_q = f"), (up - lo - f.eval(x)).norm(), 1e-5);
        }
        for z in [I, c(1.0, 1.0), c(-2.0, 0.0), c(0.5, -3.0)] {
            let total: Result<Complex64> = (1..=qq as i64)
                .map(|nu| Ok(cauchy_sheeted(&f, qq, nu, z, &q, exec)?.value))
                .sum();
            if let (Some(t), Some(r)) = (
                ch.result("phase sum", total),
                ch.result("phase sum", cauchy_oracle(&f, z, &q)),
            ) {
                ch.dev(format!("q={qq} phase sum at {z}"), (t - r.value).norm(), 1e-9);
            }
        }
    }
    // removable cut on (-∞, 0) and root-map seams at arg z = ±2π/3
    let g3 = f.compose_power(3.0);
    let r32 = RationalExponent::new(3, 2).unwrap();
    let reps: Vec<(&str, CauchyRep)> = vec![
        (
            "power p=3",
            Box::new(|z| Ok(cauchy_power_map(|w| cauchy_oracle(&g3, w, &q), 3, z, exec)?.value)),
        ),
        ("root q=2", Box::new(|z| Ok(cauchy_root_map(&f, 2, z, &q, exec)?.value))),
        ("root q=3", Box::new(|z| Ok(cauchy_root_map(&f, 3, z, &q, exec)?.value))),
        (
            "rational 3/2",
            Box::new(|z| Ok(cauchy_rational_map(&f, r32, z, &q, exec)?.value)),
        ),
    ];
    for (name, cf) in &reps {
        for base in [
            c(-2.0, 0.0),
            Complex64::from_polar(2.0, 2.0 * PI / 3.0),
            Complex64::from_polar(2.0, -2.0 * PI / 3.0),
        ] {
            let n = base / base.norm() * I;
            let (a, b) = (cf(base + n * 1e-6), cf(base - n * 1e-6));
            if let (Some(a), Some(b)) = (ch.result(name, a), ch.result(name, b)) {
                ch.dev(format!("{name} continuity at {base:.3}"), (a - b).norm(), 1e-4);
            }
        }
    }
    ch.summary()
}

fn config(kind: ExperimentKind, edit: impl FnOnce(&mut ExperimentConfig)) -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(kind);
    edit(&mut c);
    c
}

fn table(config: &ExperimentConfig) -> anyhow::Result<Table> {
    let cache = OracleCache::disabled();
    experiments::table(&RunContext {
        config,
        cache: &cache,
        exec: Execution::default(),
    })
}

/// Non-increasing along the sequence once roundoff-level values are
/// treated as equal.
fn decreasing_to_floor(errs: &[f64]) -> bool {
    errs.windows(2).all(|w| w[1] <= w[0] || w[1] < FLOOR)
}

fn criterion_4() -> (bool, String) {
    let mut ch = Checks::new();
    let c4 = config(ExperimentKind::ChangingR, |c| c.p_list = vec![1, 10, 20]);
    let Some(t) = ch.result("changingr", table(&c4).map_err(core_err)) else {
        return ch.summary();
    };
    let at = t.error(&["10", "100"]).unwrap_or(f64::NAN);
    ch.dev("p=10, n=100", at, 1e-8);
    for p in ["1", "10", "20"] {
        let errs: Vec<f64> = c4
            .n_list
            .iter()
            .filter(|&&n| n >= 32)
            .filter_map(|n| t.error(&[p, &n.to_string()]))
            .collect();
        ch.truth(
            format!("p={p} not monotone in n: {}", sci(&errs)),
            decreasing_to_floor(&errs),
        );
    }
    let c5 = config(ExperimentKind::OptimalR, |c| c.n_rules = vec![1000]);
    let Some(t) = ch.result("optimalr", table(&c5).map_err(core_err)) else {
        return ch.summary();
    };
    let best = t
        .rows
        .iter()
        .min_by(|a, b| a.error.total_cmp(&b.error))
        .map(|r| r.key[1].parse::<u32>().unwrap())
        .unwrap();
    ch.truth(format!("best p under 1000/p is {best}"), (5..=20).contains(&best));
    let (ok, detail) = ch.summary();
    (ok, format!("{detail}; error(10,100) = {at:.2e}, best p = {best}"))
}

fn core_err(e: anyhow::Error) -> transforms_core::Error {
    transforms_core::Error::Precondition(format!("{e:#}"))
}

fn criterion_5() -> (bool, String) {
    let mut ch = Checks::new();
    let cfg = config(ExperimentKind::IntegerDecay, |c| {
        c.n_list = vec![32, 64, 96, 128, 192, 256, 384, 512]
    });
    let Some(t) = ch.result("integer-decay", table(&cfg).map_err(core_err)) else {
        return ch.summary();
    };
    let e = |f: &str, p: u32, n: usize| t.error(&[f, &p.to_string(), &n.to_string()]).unwrap_or(f64::NAN);
    let mut ratios = Vec::new();
    for n in [32, 64, 128, 256] {
        let (a, b) = (e("f1", 5, n), e("f1", 5, 2 * n));
        if a < FLOOR {
            break;
        }
        ratios.push(b / a);
        ch.truth(
            format!("f1 ratio {n}->{}: {:.2e}", 2 * n, b / a),
            b <= 0.5 * a || b < FLOOR,
        );
    }
    let mut scaled = Vec::new();
    for &n in cfg.n_list.iter().filter(|&&n| n >= 64) {
        let v = e("f2", 5, n);
        scaled.push(v * (n as f64).powi(4));
        if v < FLOOR {
            break;
        }
    }
    ch.truth(
        format!("f2 n^4 error not decreasing: {}", sci(&scaled)),
        scaled.windows(2).all(|w| w[1] < w[0]),
    );
    for f in ["f1", "f2"] {
        let row = [e(f, 5, 128), e(f, 10, 128), e(f, 15, 128)];
        ch.truth(
            format!("{f} error at n=128 not increasing in p: {}", sci(&row)),
            row[0] < row[1] && row[1] < row[2],
        );
    }
    let (ok, detail) = ch.summary();
    (ok, format!("{detail}; f1 doubling ratios {}", sci(&ratios)))
}

fn criterion_6() -> (bool, String) {
    let mut ch = Checks::new();
    let cfg = config(ExperimentKind::Oscillatory, |c| {
        c.omega_list = vec![1e2, 1e3];
        c.m_list = vec![2, 4, 8];
    });
    let Some(t) = ch.result("oscillatory", table(&cfg).map_err(core_err)) else {
        return ch.summary();
    };
    let e = |x: &str, w: &str, m: &str| t.error(&[x, w, m]).unwrap_or(f64::NAN);
    let (lo, hi) = (e("2", "100", "4"), e("2", "1000", "4"));
    ch.truth(format!("x=2, m=4: {lo:.2e} -> {hi:.2e}"), hi * 10.0 <= lo);
    for m in ["2", "4", "8"] {
        let (a, b) = (e("2", "1000", m), e("0.5", "1000", m));
        ch.truth(format!("m={m}: x=2 {a:.2e} vs x=0.5 {b:.2e}"), a < b);
    }
    let (ok, detail) = ch.summary();
    (
        ok,
        format!("{detail}; x=2, m=4 error {lo:.2e} at ω=1e2, {hi:.2e} at ω=1e3"),
    )
}

fn criterion_7() -> (bool, String) {
    let mut ch = Checks::new();
    let q = quad();
    let z = c(1.0, 1.0);
    let mut trend = Vec::new();
    for r in [E, 4.0 - PI] {
        let f = lookup(
            "irr",
            FunctionParams {
                r,
                ..Default::default()
            },
        )
        .unwrap();
        let Some(reference) = ch.result("irr oracle", cauchy_oracle(&f, z, &q)) else {
            continue;
        };
        let opts = PartialSumOptions::default();
        let errs: Vec<f64> = [2usize, 5, 10, 20]
            .iter()
            .filter_map(|&m| {
                cauchy_irrational_partial(&f, r, z, m, &opts, Execution::default())
                    .ok()
                    .map(|v| (v.value - reference.value).norm())
            })
            .collect();
        ch.truth(
            format!("r={r:.4}: errors {}", sci(&errs)),
            errs.len() == 4 && errs.windows(2).all(|w| w[1] <= w[0]),
        );
        trend.push(errs);
    }
    let bump = named("bump");
    let at = |k: i64, w: Complex64| Ok(cauchy_infinite_sheet(&bump, InfiniteSheetPoint { k, z: w }, &q)?.value);
    let jump = richardson(|e| Ok(at(1, c(1.0, e))? - at(0, c(1.0, -e))?), 1e-2);
    if let Some(j) = ch.result("C^∞ jump", jump) {
        ch.dev("C^∞ jump", (j - bump.eval(1.0)).norm(), 1e-3);
    }
    let glue = richardson(|e| Ok(at(2, c(1.0, e))? - at(1, c(1.0, -e))?), 1e-2);
    if let Some(g) = ch.result("C^∞ gluing", glue) {
        ch.dev("C^∞ gluing", g.norm(), 1e-3);
    }
    for k in [-1, 0, 1, 2] {
        let mags: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .filter_map(|&r| at(k, c(0.0, r)).ok().map(|v| v.norm()))
            .collect();
        ch.truth(
            format!("k={k} not decaying: {}", sci(&mags)),
            mags.len() == 3 && mags[1] < mags[0] && mags[2] < mags[1],
        );
    }
    let (ok, detail) = ch.summary();
    (
        ok,
        format!(
            "{detail}; partial-sum errors over M=2,5,10,20: {}",
            trend.iter().map(|t| sci(t)).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut ch = Checks::new();
    let runs: Vec<ExperimentConfig> = vec![
        config(ExperimentKind::ChangingR, |c| {
            c.p_list = vec![1, 10];
            c.n_list = vec![4, 32, 100];
        }),
        config(ExperimentKind::OptimalR, |c| {
            c.p_list = vec![5, 10, 20];
            c.n_rules = vec![500];
        }),
        config(ExperimentKind::IntegerDecay, |c| c.n_list = vec![32, 128]),
        config(ExperimentKind::Oscillatory, |c| {
            c.omega_list = vec![1e2];
            c.m_list = vec![2, 8];
        }),
        config(ExperimentKind::Irrational, |c| c.sum_list = vec![0, 2]),
    ];
    for mut cfg in runs {
        cfg.plot = true;
        let name = cfg.experiment.name();
        let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
        let cache_dir = tempfile::tempdir().unwrap();
        let mut texts = Vec::new();
        // first run fills the cache, second run reads it back
        for (i, d) in dirs.iter().enumerate() {
            cfg.output_dir = d.path().to_path_buf();
            let exec = if i == 0 {
                Execution::default()
            } else {
                Execution::Sequential
            };
            let out = experiments::run(&cfg, &OracleCache::at(cache_dir.path()), exec);
            if let Some(out) = ch.result(name, out.map_err(core_err)) {
                let csv = fs::read(&out.csv).unwrap_or_default();
                let svg = out.svg.map(|p| fs::read(p).unwrap_or_default()).unwrap_or_default();
                texts.push((csv, svg));
            }
        }
        if texts.len() == 2 {
            ch.truth(
                format!("{name} CSV differs between runs"),
                texts[0].0 == texts[1].0 && !texts[0].0.is_empty(),
            );
            ch.truth(format!("{name} SVG differs between runs"), texts[0].1 == texts[1].1);
        }
    }
    ch.summary()
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; a name filter that excludes us is honoured.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return ExitCode::SUCCESS;
    }
    let criteria: [Criterion; 8] = [
        (1, "formula identities", criterion_1, true, 300),
        (2, "Plemelj suite", criterion_2, true, 120),
        (3, "sheet mechanics", criterion_3, true, 120),
        (4, "changing p / optimal p", criterion_4, true, 600),
        (5, "integer decay", criterion_5, true, 600),
        (6, "oscillatory asymptotics", criterion_6, true, 600),
        (7, "irrational evidence", criterion_7, false, 600),
        (8, "determinism", criterion_8, true, 600),
    ];
    let mut suite = Suite { blocking_failures: 0 };
    for (id, name, run, blocking, budget) in criteria {
        let start = Instant::now();
        let (ok, detail) = run();
        suite.report(
            id,
            name,
            ok,
            blocking,
            &detail,
            start.elapsed(),
            Duration::from_secs(budget),
        );
    }
    if suite.blocking_failures == 0 {
        println!("acceptance: all blocking criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} blocking criteria failed", suite.blocking_failures);
        ExitCode::FAILURE
    }
}
