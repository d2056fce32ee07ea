//! Flat `key = value` experiment configuration.
//!
//! Blank lines and `#` comments are ignored, lists are comma separated and
//! unknown keys are errors. Reals accept `e`, `pi`, `a-pi` and `10^a` besides
//! plain numbers, which is enough for the grids the experiments use.

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::eval::{EvalRequest, Method, Side, Transform};

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    Duplicate(String),
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("bad value for `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("`{0}` must not be empty")]
    EmptyGrid(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    ChangingR,
    OptimalR,
    IntegerDecay,
    Oscillatory,
    Irrational,
    Eval,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::ChangingR,
        ExperimentKind::OptimalR,
        ExperimentKind::IntegerDecay,
        ExperimentKind::Oscillatory,
        ExperimentKind::Irrational,
        ExperimentKind::Eval,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::ChangingR => "changingr",
            ExperimentKind::OptimalR => "optimalr",
            ExperimentKind::IntegerDecay => "integer-decay",
            ExperimentKind::Oscillatory => "oscillatory",
            ExperimentKind::Irrational => "irrational",
            ExperimentKind::Eval => "eval",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub output_dir: PathBuf,
    pub plot: bool,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub functions: Vec<String>,
    pub p_list: Vec<u32>,
    pub n_list: Vec<usize>,
    pub n_rules: Vec<usize>,
    pub omega_list: Vec<f64>,
    pub m_list: Vec<usize>,
    /// Partial-sum sizes `M` for the irrational experiment.
    pub sum_list: Vec<usize>,
    pub x_list: Vec<f64>,
    pub r_list: Vec<f64>,
    pub z: Complex64,
    pub x: f64,
    pub eval: EvalRequest,
}

const KEYS: &[&str] = &[
    "experiment",
    "output_dir",
    "plot",
    "rel_tol",
    "abs_tol",
    "functions",
    "p_list",
    "n_list",
    "n_rules",
    "omega_list",
    "m_list",
    "M_list",
    "x_list",
    "r_list",
    "z_re",
    "z_im",
    "x",
    // eval
    "function",
    "method",
    "transform",
    "re",
    "im",
    "side",
    "p",
    "q",
    "n",
    "omega",
    "m",
    "M",
    "r",
];

pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s {
        "e" => E,
        "pi" => PI,
        _ => {
            if let Some(a) = s.strip_suffix("-pi") {
                a.trim().parse::<f64>().map_err(|e| e.to_string())? - PI
            } else if let Some(a) = s.strip_prefix("10^") {
                10f64.powf(a.trim().parse::<f64>().map_err(|e| e.to_string())?)
            } else {
                s.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn list<T, F>(key: &str, raw: &str, parse: F) -> Result<Vec<T>, ConfigError>
where
    F: Fn(&str) -> Result<T, String>,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(|msg| ConfigError::Value { key: key.into(), msg }))
        .collect()
}

fn int<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    s.trim().parse::<T>().map_err(|e| format!("`{s}`: {e}"))
}

impl ExperimentConfig {
    /// Grids reproducing the corresponding figures.
    pub fn defaults(experiment: ExperimentKind) -> Self {
        let base = ExperimentConfig {
            experiment,
            output_dir: PathBuf::from("out"),
            plot: false,
            rel_tol: 1e-13,
            abs_tol: 1e-15,
            functions: Vec::new(),
            p_list: Vec::new(),
            n_list: Vec::new(),
            n_rules: Vec::new(),
            omega_list: Vec::new(),
            m_list: Vec::new(),
            sum_list: Vec::new(),
            x_list: Vec::new(),
            r_list: Vec::new(),
            z: Complex64::new(1.0, 1.0),
            x: 1.5,
            eval: EvalRequest::default(),
        };
        match experiment {
            ExperimentKind::ChangingR => ExperimentConfig {
                functions: vec!["slow".into()],
                p_list: vec![1, 10, 20, 100],
                n_list: vec![4, 8, 16, 24, 32, 40, 48, 56, 64, 80, 100, 128, 160, 200],
                ..base
            },
            ExperimentKind::OptimalR => ExperimentConfig {
                functions: vec!["slow".into()],
                p_list: vec![1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 40, 50, 60, 80, 100],
                n_rules: vec![100, 500, 1000],
                ..base
            },
            ExperimentKind::IntegerDecay => ExperimentConfig {
                functions: vec!["f1".into(), "f2".into()],
                p_list: vec![5, 10, 15],
                n_list: vec![16, 24, 32, 48, 64, 96, 128, 192, 256, 384, 512],
                ..base
            },
            ExperimentKind::Oscillatory => ExperimentConfig {
                functions: vec!["osc".into()],
                abs_tol: 1e-16,
                omega_list: (0..=8).map(|k| 10f64.powf(2.0 + 0.25 * k as f64)).collect(),
                m_list: vec![2, 4, 8, 16],
                x_list: vec![0.5, 2.0],
                ..base
            },
            ExperimentKind::Irrational => ExperimentConfig {
                functions: vec!["irr".into()],
                r_list: vec![E, 4.0 - PI],
                sum_list: vec![0, 1, 2, 5, 10, 20, 40],
                ..base
            },
            ExperimentKind::Eval => base,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::parse_for(text, None)
    }

    /// As [`parse`](Self::parse), with the experiment named on the command
    /// line. A file that names a different experiment is an error.
    pub fn parse_for(text: &str, experiment: Option<ExperimentKind>) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line: i + 1,
                    text: line.to_string(),
                });
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey(k.to_string()));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ConfigError::Duplicate(k.to_string()));
            }
        }
        let from_file = map
            .get("experiment")
            .map(|v| v.parse::<ExperimentKind>())
            .transpose()
            .map_err(|msg| ConfigError::Value {
                key: "experiment".into(),
                msg,
            })?;
        let experiment = match (from_file, experiment) {
            (Some(a), Some(b)) if a != b => {
                return Err(ConfigError::Value {
                    key: "experiment".into(),
                    msg: format!("file says `{a}` but `{b}` was requested"),
                })
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(ConfigError::Missing("experiment")),
        };
        let mut c = ExperimentConfig::defaults(experiment);
        c.apply(&map)?;
        c.validate()?;
        Ok(c)
    }

    fn apply(&mut self, map: &BTreeMap<String, String>) -> Result<(), ConfigError> {
        let bad = |key: &str, msg: String| ConfigError::Value { key: key.into(), msg };
        for (key, v) in map {
            let key = key.as_str();
            match key {
                "experiment" => {}
                "output_dir" => self.output_dir = PathBuf::from(v),
                "plot" => {
                    self.plot = match v.as_str() {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => return Err(bad(key, format!("`{v}` is not a boolean"))),
                    }
                }
                "rel_tol" => self.rel_tol = parse_real(v).map_err(|m| bad(key, m))?,
                "abs_tol" => self.abs_tol = parse_real(v).map_err(|m| bad(key, m))?,
                "functions" => self.functions = list(key, v, |s| Ok(s.to_string()))?,
                "p_list" => self.p_list = list(key, v, int::<u32>)?,
                "n_list" => self.n_list = list(key, v, int::<usize>)?,
                "n_rules" => self.n_rules = list(key, v, int::<usize>)?,
                "omega_list" => self.omega_list = list(key, v, parse_real)?,
                "m_list" => self.m_list = list(key, v, int::<usize>)?,
                "M_list" => self.sum_list = list(key, v, int::<usize>)?,
                "x_list" => self.x_list = list(key, v, parse_real)?,
                "r_list" => self.r_list = list(key, v, parse_real)?,
                "z_re" => self.z.re = parse_real(v).map_err(|m| bad(key, m))?,
                "z_im" => self.z.im = parse_real(v).map_err(|m| bad(key, m))?,
                "x" => self.x = parse_real(v).map_err(|m| bad(key, m))?,
                "function" => self.eval.function = v.clone(),
                "method" => self.eval.method = v.parse::<Method>().map_err(|m| bad(key, m))?,
                "transform" => self.eval.transform = v.parse::<Transform>().map_err(|m| bad(key, m))?,
                "re" => self.eval.point.re = parse_real(v).map_err(|m| bad(key, m))?,
                "im" => self.eval.point.im = parse_real(v).map_err(|m| bad(key, m))?,
                "side" => self.eval.side = Some(v.parse::<Side>().map_err(|m| bad(key, m))?),
                "p" => self.eval.p = int(v).map_err(|m| bad(key, m))?,
                "q" => self.eval.q = int(v).map_err(|m| bad(key, m))?,
                "n" => self.eval.n = int(v).map_err(|m| bad(key, m))?,
                "omega" => self.eval.omega = parse_real(v).map_err(|m| bad(key, m))?,
                "m" => self.eval.m = int(v).map_err(|m| bad(key, m))?,
                "M" => self.eval.big_m = int(v).map_err(|m| bad(key, m))?,
                "r" => self.eval.r = parse_real(v).map_err(|m| bad(key, m))?,
                _ => return Err(ConfigError::UnknownKey(key.to_string())),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        use ExperimentKind::*;
        let need: &[(&'static str, bool)] = match self.experiment {
            ChangingR => &[("p_list", self.p_list.is_empty()), ("n_list", self.n_list.is_empty())],
            OptimalR => &[("p_list", self.p_list.is_empty()), ("n_rules", self.n_rules.is_empty())],
            IntegerDecay => &[
                ("functions", self.functions.is_empty()),
                ("p_list", self.p_list.is_empty()),
                ("n_list", self.n_list.is_empty()),
            ],
            Oscillatory => &[
                ("omega_list", self.omega_list.is_empty()),
                ("m_list", self.m_list.is_empty()),
                ("x_list", self.x_list.is_empty()),
            ],
            Irrational => &[("r_list", self.r_list.is_empty()), ("M_list", self.sum_list.is_empty())],
            Eval => &[],
        };
        if let Some((name, _)) = need.iter().find(|(_, empty)| *empty) {
            return Err(ConfigError::EmptyGrid(name));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(ConfigError::Value {
                key: "rel_tol".into(),
                msg: "tolerances must be positive".into(),
            });
        }
        if self.p_list.contains(&0) {
            return Err(ConfigError::Value {
                key: "p_list".into(),
                msg: "p must be >= 1".into(),
            });
        }
        Ok(())
    }
}
