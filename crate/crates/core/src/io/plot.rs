use std::fmt::Write;
use std::path::Path;

use crate::agreement::{AgreementResult, AxisSpec, Direction};
use crate::error::Result;

pub const PLOT_WIDTH: f64 = 800.0;
pub const PLOT_HEIGHT: f64 = 600.0;

// Plot area inside the 800×600 view box.
const LEFT: f64 = 90.0;
const RIGHT: f64 = 770.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 520.0;

/// Fraction of the data span added on each side.
const DATA_MARGIN: f64 = 0.1;

pub const DASHED: &str = "8 4";
pub const DOTTED: &str = "2 3";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlotOptions {
    /// Draw the fitted trend of the difference as a dotted line.
    pub trend: bool,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { trend: true }
    }
}

/// Data ranges of a plot and the mapping to view-box coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotFrame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl PlotFrame {
    /// Frame covering all points and both limits of agreement, padded by 10% per side.
    pub fn for_result(res: &AgreementResult) -> Self {
        let xs = res.points.iter().map(|p| p.axis);
        let ys = res
            .points
            .iter()
            .map(|p| p.difference)
            .chain([res.loa_low, res.loa_high, res.bias]);
        let (x_min, x_max) = padded(xs);
        let (y_min, y_max) = padded(ys);
        PlotFrame {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn to_screen(&self, x: f64, y: f64) -> (f64, f64) {
        (
            LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (RIGHT - LEFT),
            BOTTOM - (y - self.y_min) / (self.y_max - self.y_min) * (BOTTOM - TOP),
        )
    }

    pub fn to_data(&self, px: f64, py: f64) -> (f64, f64) {
        (
            self.x_min + (px - LEFT) / (RIGHT - LEFT) * (self.x_max - self.x_min),
            self.y_min + (BOTTOM - py) / (BOTTOM - TOP) * (self.y_max - self.y_min),
        )
    }
}

fn padded(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let span = hi - lo;
    let span = if span > 0.0 { span } else { lo.abs().max(1.0) };
    (lo - DATA_MARGIN * span, hi + DATA_MARGIN * span)
}

fn nice_ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|i| i as f64 * step).collect(), decimals)
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn label(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axis_title(axis: AxisSpec) -> String {
    match axis {
        AxisSpec::ArithmeticMean => "Mean of A and B".into(),
        AxisSpec::WeightedAverage(w) => format!(
            "Weighted average of A and B (alpha = {}, beta = {})",
            label(w.alpha, 4).trim_end_matches('0').trim_end_matches('.'),
            label(w.beta, 4).trim_end_matches('0').trim_end_matches('.')
        ),
    }
}

fn difference_title(direction: Direction) -> &'static str {
    match direction {
        Direction::AMinusB => "Difference A - B",
        Direction::BMinusA => "Difference B - A",
    }
}

fn hline(out: &mut String, frame: &PlotFrame, y: f64, class: &str, dash: Option<&str>) {
    let (x1, py) = frame.to_screen(frame.x_min, y);
    let (x2, _) = frame.to_screen(frame.x_max, y);
    let dash = dash.map_or(String::new(), |d| format!(" stroke-dasharray=\"{d}\""));
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1.5"{dash}/>"#,
        num(x1),
        num(py),
        num(x2),
        num(py)
    );
}

/// Renders a Bland-Altman style scatter plot as an SVG 1.1 document.
///
/// The bias is a solid horizontal line, the limits of agreement are dashed
/// and the optional trend is dotted. Output depends only on the inputs.
pub fn render_svg(res: &AgreementResult, options: PlotOptions) -> String {
    let frame = PlotFrame::for_result(res);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{PLOT_WIDTH}" height="{PLOT_HEIGHT}" viewBox="0 0 {PLOT_WIDTH} {PLOT_HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{}" height="{}"/></clipPath></defs>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    let _ = writeln!(out, r#"<rect width="{PLOT_WIDTH}" height="{PLOT_HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{LEFT}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        RIGHT - LEFT,
        BOTTOM - TOP
    );

    // ticks
    let mut ticks = String::new();
    let (xt, xd) = nice_ticks(frame.x_min, frame.x_max);
    for x in &xt {
        let (px, _) = frame.to_screen(*x, frame.y_min);
        let _ = write!(ticks, "M{} {BOTTOM}v5", num(px));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            num(px),
            BOTTOM + 20.0,
            label(*x, xd)
        );
    }
    let (yt, yd) = nice_ticks(frame.y_min, frame.y_max);
    for y in &yt {
        let (_, py) = frame.to_screen(frame.x_min, *y);
        let _ = write!(ticks, "M{LEFT} {}h-5", num(py));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            num(py + 4.0),
            label(*y, yd)
        );
    }
    let _ = writeln!(out, r#"<path class="ticks" d="{ticks}" stroke="black"/>"#);

    let _ = writeln!(
        out,
        r#"<text class="x-label" x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 50.0,
        escape(&axis_title(res.axis))
    );
    let _ = writeln!(
        out,
        r#"<text class="y-label" x="25" y="{y}" text-anchor="middle" transform="rotate(-90 25 {y})">{}</text>"#,
        difference_title(res.direction),
        y = (TOP + BOTTOM) / 2.0
    );

    let _ = writeln!(out, r#"<g class="points" fill="black" fill-opacity="0.6">"#);
    for p in &res.points {
        let (px, py) = frame.to_screen(p.axis, p.difference);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, num(px), num(py));
    }
    let _ = writeln!(out, "</g>");

    hline(&mut out, &frame, res.bias, "bias", None);
    hline(&mut out, &frame, res.loa_low, "loa", Some(DASHED));
    hline(&mut out, &frame, res.loa_high, "loa", Some(DASHED));

    if options.trend {
        let y_at = |x: f64| res.fit.intercept + res.fit.slope * x;
        let (x1, y1) = frame.to_screen(frame.x_min, y_at(frame.x_min));
        let (x2, y2) = frame.to_screen(frame.x_max, y_at(frame.x_max));
        let _ = writeln!(
            out,
            r#"<line class="trend" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1" stroke-dasharray="{DOTTED}" clip-path="url(#plot-area)"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(res: &AgreementResult, path: impl AsRef<Path>, options: PlotOptions) -> Result<()> {
    super::write_text(path, &render_svg(res, options))
}
