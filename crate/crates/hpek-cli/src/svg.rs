//! Self-contained SVG box plots, one labeled box per algorithm.
//!
//! Boxes span the first to third quartile with a median line; whiskers extend
//! to the furthest sample within 1.5 IQR of the box.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hpek::stats::quartile_summary;

use crate::{CliError, Result};

/// One box of a plot: a label and the sample values behind it.
#[derive(Debug, Clone)]
pub struct BoxplotSeries {
    pub label: String,
    pub values: Vec<f64>,
}

struct FiveNumber {
    label: String,
    lo: f64,
    q1: f64,
    median: f64,
    q3: f64,
    hi: f64,
}

fn five_number(series: &BoxplotSeries) -> Result<FiveNumber> {
    let s = quartile_summary(&series.values).map_err(|_| {
        CliError::Usage(format!("box plot series '{}' is empty", series.label))
    })?;
    let iqr = s.q3 - s.q1;
    let lo_fence = s.q1 - 1.5 * iqr;
    let hi_fence = s.q3 + 1.5 * iqr;
    let lo = series
        .values
        .iter()
        .copied()
        .filter(|v| *v >= lo_fence)
        .fold(f64::INFINITY, f64::min);
    let hi = series
        .values
        .iter()
        .copied()
        .filter(|v| *v <= hi_fence)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(FiveNumber {
        label: series.label.clone(),
        lo,
        q1: s.q1,
        median: s.median,
        q3: s.q3,
        hi,
    })
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let formatted = if v.abs() >= 1000.0 {
        format!("{v:.0}")
    } else if v.abs() >= 1.0 {
        format!("{v:.2}")
    } else {
        format!("{v:.4}")
    };
    formatted
}

/// Renders one box per series into a standalone SVG file.
pub fn emit_boxplot(series: &[BoxplotSeries], title: &str, path: &Path) -> Result<()> {
    if series.is_empty() {
        return Err(CliError::Usage("box plot requires at least one series".into()));
    }
    let boxes: Vec<FiveNumber> = series.iter().map(five_number).collect::<Result<_>>()?;

    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for b in &boxes {
        y_min = y_min.min(b.lo);
        y_max = y_max.max(b.hi);
    }
    if y_min == y_max {
        // Degenerate data: open a symmetric window around the constant.
        let pad = if y_min == 0.0 { 1.0 } else { y_min.abs() * 0.1 };
        y_min -= pad;
        y_max += pad;
    } else {
        let pad = (y_max - y_min) * 0.06;
        y_min -= pad;
        y_max += pad;
    }

    let margin_left = 86.0;
    let margin_right = 24.0;
    let margin_top = 56.0;
    let margin_bottom = 96.0;
    let slot = 72.0;
    let box_width = 30.0;
    let plot_w = slot * boxes.len() as f64;
    let plot_h = 360.0;
    let width = margin_left + plot_w + margin_right;
    let height = margin_top + plot_h + margin_bottom;

    let y_of = |v: f64| margin_top + (y_max - v) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8"?>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"  <text x="{:.1}" y="28" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape_xml(title)
    )
    .unwrap();

    // Y axis with 6 ticks and a light grid.
    writeln!(
        svg,
        r#"  <line x1="{margin_left:.1}" y1="{margin_top:.1}" x2="{margin_left:.1}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
        margin_top + plot_h
    )
    .unwrap();
    for i in 0..=5 {
        let v = y_min + (y_max - y_min) * f64::from(i) / 5.0;
        let y = y_of(v);
        writeln!(
            svg,
            r##"  <line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#cccccc" stroke-width="0.5"/>"##,
            margin_left,
            margin_left + plot_w
        )
        .unwrap();
        writeln!(
            svg,
            r#"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            margin_left - 6.0,
            y + 4.0,
            tick_label(v)
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"  <line x1="{margin_left:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
        margin_top + plot_h,
        margin_left + plot_w,
        margin_top + plot_h
    )
    .unwrap();

    for (i, b) in boxes.iter().enumerate() {
        let cx = margin_left + slot * (i as f64 + 0.5);
        let half = box_width / 2.0;
        let (y_lo, y_hi) = (y_of(b.lo), y_of(b.hi));
        let (y_q1, y_q3) = (y_of(b.q1), y_of(b.q3));
        let y_med = y_of(b.median);

        // Whisker stem and caps.
        writeln!(
            svg,
            r#"  <line x1="{cx:.1}" y1="{y_hi:.1}" x2="{cx:.1}" y2="{y_q3:.1}" stroke="black" stroke-width="1"/>"#
        )
        .unwrap();
        writeln!(
            svg,
            r#"  <line x1="{cx:.1}" y1="{y_q1:.1}" x2="{cx:.1}" y2="{y_lo:.1}" stroke="black" stroke-width="1"/>"#
        )
        .unwrap();
        for y in [y_lo, y_hi] {
            writeln!(
                svg,
                r#"  <line x1="{:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="black" stroke-width="1"/>"#,
                cx - half * 0.6,
                cx + half * 0.6
            )
            .unwrap();
        }

        // Box and median. A degenerate box (q1 == q3) still draws its edges.
        writeln!(
            svg,
            r##"  <rect x="{:.1}" y="{y_q3:.1}" width="{box_width:.1}" height="{:.2}" fill="#9ecae1" stroke="black" stroke-width="1"/>"##,
            cx - half,
            (y_q1 - y_q3).max(0.0)
        )
        .unwrap();
        writeln!(
            svg,
            r##"  <line x1="{:.1}" y1="{y_med:.1}" x2="{:.1}" y2="{y_med:.1}" stroke="#08306b" stroke-width="2"/>"##,
            cx - half,
            cx + half
        )
        .unwrap();

        writeln!(
            svg,
            r#"  <text x="{cx:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end" transform="rotate(-35 {cx:.1} {:.1})">{}</text>"#,
            margin_top + plot_h + 18.0,
            margin_top + plot_h + 18.0,
            escape_xml(&b.label)
        )
        .unwrap();
    }

    writeln!(svg, "</svg>").unwrap();
    fs::write(path, svg.as_bytes()).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
