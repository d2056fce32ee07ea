//! Minimal SVG line plots of an error column, drawn from CSV text alone so
//! that a plot can always be regenerated from its table.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{anyhow, bail, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];
const DASHES: [&str; 4] = ["", "6,3", "2,3", "8,3,2,3"];

#[derive(Debug, Clone)]
pub struct PlotSpec<'a> {
    pub title: &'a str,
    pub x_col: &'a str,
    pub y_col: &'a str,
    /// Columns whose values identify one curve.
    pub group_cols: &'a [&'a str],
    pub log_x: bool,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if log {
            lo = lo.floor();
            hi = hi.ceil();
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Axis { lo, hi, log }
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }
}

fn column(header: &[&str], name: &str) -> Result<usize> {
    header
        .iter()
        .position(|h| *h == name)
        .ok_or_else(|| anyhow!("CSV has no column `{name}`"))
}

/// Renders `spec.y_col` against `spec.x_col` on a log-scaled error axis,
/// one polyline per distinct group. Non-positive or non-finite errors are
/// dropped since they have no place on a log axis.
pub fn render_svg(csv: &str, spec: &PlotSpec<'_>) -> Result<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().ok_or_else(|| anyhow!("empty CSV"))?.split(',').collect();
    let xi = column(&header, spec.x_col)?;
    let yi = column(&header, spec.y_col)?;
    let gi: Vec<usize> = spec
        .group_cols
        .iter()
        .map(|g| column(&header, g))
        .collect::<Result<_>>()?;

    let mut curves: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != header.len() {
            bail!("ragged CSV row `{line}`");
        }
        let label = gi
            .iter()
            .map(|&i| format!("{}={}", header[i], cells[i]))
            .collect::<Vec<_>>()
            .join(" ");
        let x: f64 = cells[xi].parse()?;
        let y: f64 = cells[yi].parse()?;
        if !curves.contains_key(&label) {
            order.push(label.clone());
        }
        let pts = curves.entry(label).or_default();
        if y > 0.0 && y.is_finite() && (!spec.log_x || x > 0.0) {
            pts.push((x, y));
        }
    }

    let all = || curves.values().flatten();
    let xa = Axis::new(all().map(|p| p.0), spec.log_x);
    let ya = Axis::new(all().map(|p| p.1), true);
    let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
    let px = |x: f64| MARGIN + xa.frac(x) * pw;
    let py = |y: f64| HEIGHT - MARGIN - ya.frac(y) * ph;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        spec.title
    )?;
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )?;
    if all().next().is_some() {
        // decade ticks on the error axis
        let mut d = ya.lo;
        while d <= ya.hi + 1e-9 {
            let y = HEIGHT - MARGIN - (d - ya.lo) / (ya.hi - ya.lo) * ph;
            writeln!(
                s,
                r##"<line x1="{MARGIN}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{}</text>"##,
                WIDTH - MARGIN,
                MARGIN - 6.0,
                y + 4.0,
                d as i64
            )?;
            d += if ya.hi - ya.lo > 12.0 { 2.0 } else { 1.0 };
        }
        for (k, x) in [xa.lo, xa.hi].into_iter().enumerate() {
            let label = if xa.log { 10f64.powf(x) } else { x };
            let anchor = if k == 0 { "start" } else { "end" };
            writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}">{label}</text>"#,
                MARGIN + k as f64 * pw,
                HEIGHT - MARGIN + 18.0
            )?;
        }
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0,
        spec.x_col
    )?;
    for (k, label) in order.iter().enumerate() {
        let pts = &curves[label];
        let colour = PALETTE[k % PALETTE.len()];
        let dash = DASHES[(k / PALETTE.len()) % DASHES.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        if path.len() == 1 {
            writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{colour}"/>"#,
                px(pts[0].0),
                py(pts[0].1)
            )?;
        } else if !path.is_empty() {
            writeln!(
                s,
                r#"<polyline fill="none" stroke="{colour}" stroke-dasharray="{dash}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            )?;
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{colour}">{label}</text>"#,
            WIDTH - MARGIN + 4.0 - 150.0,
            MARGIN + 14.0 + 14.0 * k as f64
        )?;
    }
    s.push_str("</svg>\n");
    Ok(s)
}
