//! Plot-ready data and static SVG renderings of a finished run.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use vlp_mono::{CdfSeries, WorldPoint};

use crate::error::{CliError, CliResult};
use crate::report::{fmt_sig9, ResultTables};

pub const PLOT_DIR: &str = "plots";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterKind {
    Scatter3d,
    Xy,
    Yz,
}

impl ScatterKind {
    fn stem(self) -> &'static str {
        match self {
            ScatterKind::Scatter3d => "scatter3d",
            ScatterKind::Xy => "scatter_xy",
            ScatterKind::Yz => "scatter_yz",
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            ScatterKind::Scatter3d => &[
                "truth_x", "truth_y", "truth_z", "calc_x", "calc_y", "calc_z",
            ],
            ScatterKind::Xy => &["truth_x", "truth_y", "calc_x", "calc_y"],
            ScatterKind::Yz => &["truth_y", "truth_z", "calc_y", "calc_z"],
        }
    }

    fn coords(self, p: &WorldPoint) -> Vec<f64> {
        match self {
            ScatterKind::Scatter3d => vec![p.x, p.y, p.z],
            ScatterKind::Xy => vec![p.x, p.y],
            ScatterKind::Yz => vec![p.y, p.z],
        }
    }
}

/// Known vs calculated points, or one or more CDF curves.
#[derive(Debug, Clone, PartialEq)]
pub enum PlotSeries {
    Scatter {
        kind: ScatterKind,
        truth: Vec<WorldPoint>,
        calculated: Vec<WorldPoint>,
    },
    Cdf {
        curves: Vec<(String, CdfSeries)>,
    },
}

impl PlotSeries {
    pub fn scatter(kind: ScatterKind, pairs: &[(WorldPoint, WorldPoint)]) -> Self {
        PlotSeries::Scatter {
            kind,
            truth: pairs.iter().map(|p| p.0).collect(),
            calculated: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn stem(&self) -> &'static str {
        match self {
            PlotSeries::Scatter { kind, .. } => kind.stem(),
            PlotSeries::Cdf { .. } => "cdf",
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            PlotSeries::Scatter {
                kind,
                truth,
                calculated,
            } => {
                out.push_str(&kind.columns().join(","));
                out.push('\n');
                for (t, c) in truth.iter().zip(calculated) {
                    let row: Vec<String> = kind
                        .coords(t)
                        .into_iter()
                        .chain(kind.coords(c))
                        .map(fmt_sig9)
                        .collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
            }
            PlotSeries::Cdf { curves } => {
                out.push_str("series,error,probability\n");
                for (name, cdf) in curves {
                    for (e, p) in &cdf.steps {
                        let _ = writeln!(out, "{name},{},{}", fmt_sig9(*e), fmt_sig9(*p));
                    }
                }
            }
        }
        out
    }

    pub fn to_svg(&self) -> String {
        match self {
            PlotSeries::Scatter {
                kind: ScatterKind::Scatter3d,
                truth,
                calculated,
            } => {
                // oblique projection: y recedes up and to the right
                let (c, s) = (
                    0.5 * 30f64.to_radians().cos(),
                    0.5 * 30f64.to_radians().sin(),
                );
                let flat = |p: &WorldPoint| (p.x + c * p.y, p.z + s * p.y);
                let t: Vec<_> = truth.iter().map(flat).collect();
                let k: Vec<_> = calculated.iter().map(flat).collect();
                svg_scatter(
                    "Known and calculated points (oblique 3D)",
                    "x + y/2 cos 30° (m)",
                    "z + y/2 sin 30° (m)",
                    &t,
                    &k,
                )
            }
            PlotSeries::Scatter {
                kind,
                truth,
                calculated,
            } => {
                let pick = |p: &WorldPoint| {
                    let v = kind.coords(p);
                    (v[0], v[1])
                };
                let (title, xl, yl) = if *kind == ScatterKind::Xy {
                    ("Known and calculated points, XoY plane", "x (m)", "y (m)")
                } else {
                    ("Known and calculated points, YoZ plane", "y (m)", "z (m)")
                };
                let t: Vec<_> = truth.iter().map(pick).collect();
                let k: Vec<_> = calculated.iter().map(pick).collect();
                svg_scatter(title, xl, yl, &t, &k)
            }
            PlotSeries::Cdf { curves } => svg_cdf(curves),
        }
    }
}

const W: f64 = 640.0;
const HGT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for (x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            return Frame {
                x0: 0.0,
                x1: 1.0,
                y0: 0.0,
                y1: 1.0,
            };
        }
        let pad = |a: f64, b: f64| {
            let d = if b - a > 1e-12 { (b - a) * 0.05 } else { 0.5 };
            (a - d, b + d)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HGT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HGT - 2.0 * MARGIN)
    }
}

fn svg_open(out: &mut String, title: &str, xlabel: &str, ylabel: &str, f: &Frame) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{HGT}" viewBox="0 0 {W} {HGT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{HGT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * MARGIN,
        HGT - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="30" text-anchor="middle" font-size="14">{title}</text>"#,
        W / 2.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{xlabel}</text>"#,
        W / 2.0,
        HGT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{}" text-anchor="middle" transform="rotate(-90 18 {})">{ylabel}</text>"#,
        HGT / 2.0,
        HGT / 2.0
    );
    for (v, anchor, x, y) in [
        (f.x0, "start", MARGIN, HGT - MARGIN + 16.0),
        (f.x1, "end", W - MARGIN, HGT - MARGIN + 16.0),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.3}</text>"#
        );
    }
    for (v, y) in [(f.y0, HGT - MARGIN), (f.y1, MARGIN + 10.0)] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{y}" text-anchor="end">{v:.3}</text>"#,
            MARGIN - 4.0
        );
    }
}

fn svg_legend(out: &mut String, entries: &[(&str, &str)]) {
    for (i, (name, color)) in entries.iter().enumerate() {
        let y = MARGIN + 16.0 + 16.0 * i as f64;
        let x = W - MARGIN - 110.0;
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{}" width="10" height="10" fill="{color}"/>"#,
            y - 9.0
        );
        let _ = writeln!(out, r#"<text x="{}" y="{y}">{name}</text>"#, x + 14.0);
    }
}

fn svg_scatter(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    truth: &[(f64, f64)],
    calc: &[(f64, f64)],
) -> String {
    let f = Frame::fit(truth.iter().chain(calc).copied());
    let mut out = String::new();
    svg_open(&mut out, title, xlabel, ylabel, &f);
    for (x, y) in truth {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="none" stroke="{}"/>"#,
            f.px(*x),
            f.py(*y),
            COLORS[0]
        );
    }
    for (x, y) in calc {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#,
            f.px(*x),
            f.py(*y),
            COLORS[1]
        );
    }
    svg_legend(&mut out, &[("known", COLORS[0]), ("calculated", COLORS[1])]);
    out.push_str("</svg>\n");
    out
}

fn svg_cdf(curves: &[(String, CdfSeries)]) -> String {
    let f = Frame::fit(
        curves
            .iter()
            .flat_map(|(_, c)| c.steps.iter().copied())
            .chain([(0.0, 0.0), (0.0, 1.0)]),
    );
    let mut out = String::new();
    svg_open(
        &mut out,
        "CDF of per-point RMSE",
        "RMSE (m)",
        "cumulative probability",
        &f,
    );
    let mut legend = Vec::new();
    for (i, (name, cdf)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = String::new();
        let mut prev = 0.0;
        for (j, (e, p)) in cdf.steps.iter().enumerate() {
            let cmd = if j == 0 { 'M' } else { 'L' };
            let _ = write!(
                d,
                "{cmd}{:.2},{:.2} L{:.2},{:.2} ",
                f.px(*e),
                f.py(prev),
                f.px(*e),
                f.py(*p)
            );
            prev = *p;
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            d.trim_end()
        );
        legend.push((name.as_str(), color));
    }
    svg_legend(&mut out, &legend);
    out.push_str("</svg>\n");
    out
}

/// Builds the four plot series from result tables.
pub fn plot_series(tables: &ResultTables) -> Vec<PlotSeries> {
    let pairs: Vec<(WorldPoint, WorldPoint)> = tables
        .results
        .iter()
        .filter_map(|r| r.estimate().map(|e| (r.truth(), e)))
        .collect();
    let mut curves = Vec::new();
    for (name, cdf) in [
        ("xy", tables.cdf(|s| s.rmse_xy)),
        ("yz", tables.cdf(|s| s.rmse_yz)),
        ("3d", tables.cdf(|s| s.rmse_3d)),
    ] {
        if let Some(cdf) = cdf {
            curves.push((name.to_string(), cdf));
        }
    }
    vec![
        PlotSeries::scatter(ScatterKind::Scatter3d, &pairs),
        PlotSeries::scatter(ScatterKind::Xy, &pairs),
        PlotSeries::scatter(ScatterKind::Yz, &pairs),
        PlotSeries::Cdf { curves },
    ]
}

/// Writes `<stem>.csv` and `<stem>.svg` for every series into `<results>/plots`.
pub fn export(tables: &ResultTables) -> CliResult<PathBuf> {
    let dir = tables.dir.join(PLOT_DIR);
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    for series in plot_series(tables) {
        for (ext, body) in [("csv", series.to_csv()), ("svg", series.to_svg())] {
            let path = dir.join(format!("{}.{ext}", series.stem()));
            fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        }
    }
    Ok(dir)
}
