//! On-disk cache of reference values, keyed by function, transform, point
//! and tolerance. Values are stored with `{:e}`, which round-trips `f64`
//! exactly, so a cached reference reproduces the computed one bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use num_complex::Complex64;
use transforms_core::Estimate;

pub const CACHE_ENV: &str = "TRANSFORMS_CACHE_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct CacheKey {
    pub function: String,
    pub transform: &'static str,
    pub point: Complex64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let raw = format!(
            "{}_{}_{:e}_{:e}_{:e}_{:e}.txt",
            self.transform, self.function, self.point.re, self.point.im, self.rel_tol, self.abs_tol
        );
        raw.chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || "._-".contains(c) {
                    c
                } else {
                    '_'
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct OracleCache {
    dir: Option<PathBuf>,
}

impl OracleCache {
    /// `$TRANSFORMS_CACHE_DIR` if set, else `fallback`.
    pub fn from_env(fallback: &Path) -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| fallback.to_path_buf());
        OracleCache { dir: Some(dir) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        OracleCache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        OracleCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn read(path: &Path) -> Option<Estimate> {
        let text = fs::read_to_string(path).ok()?;
        let mut it = text.split_whitespace().map(str::parse::<f64>);
        let (re, im, err) = (it.next()?.ok()?, it.next()?.ok()?, it.next()?.ok()?);
        Some(Estimate::new(Complex64::new(re, im), err))
    }

    pub fn get_or_compute<F>(&self, key: &CacheKey, compute: F) -> Result<Estimate>
    where
        F: FnOnce() -> transforms_core::Result<Estimate>,
    {
        let Some(dir) = &self.dir else {
            return Ok(compute()?);
        };
        let path = dir.join(key.file_name());
        if let Some(e) = Self::read(&path) {
            return Ok(e);
        }
        let e = compute().with_context(|| format!("reference value for {key:?}"))?;
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let tmp = dir.join(format!(".{}.{}", key.file_name(), std::process::id()));
        fs::write(&tmp, format!("{:e} {:e} {:e}\n", e.value.re, e.value.im, e.error))?;
        fs::rename(&tmp, &path)?;
        Ok(e)
    }
}
