//! Deterministic SVG rendering of measured r_eff²·χ against refractive index
//! with both fitted cavity laws overlaid.

use std::fmt::Write as _;

use anyhow::{ensure, Result};
use cavityfit_core::numfmt::{format_sig, format_sig_trimmed};
use cavityfit_core::{chi, CavityModel, DerivedRow, FitResult, RefractiveIndex};

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub curve_samples: usize,
    pub error_bar_fraction: f64,
    pub width_px: u32,
    pub height_px: u32,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            x_min: 1.0,
            x_max: 2.3,
            curve_samples: 256,
            error_bar_fraction: 0.10,
            width_px: 800,
            height_px: 600,
        }
    }
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.x_min.is_finite() && self.x_max.is_finite(),
            "x range must be finite"
        );
        ensure!(self.x_min >= 1.0, "x-min {} is below 1", self.x_min);
        ensure!(
            self.x_min < self.x_max,
            "x-min {} must be below x-max {}",
            self.x_min,
            self.x_max
        );
        ensure!(self.curve_samples >= 2, "need at least 2 curve samples");
        ensure!(
            self.error_bar_fraction > 0.0 && self.error_bar_fraction < 1.0,
            "error bar fraction {} is outside (0, 1)",
            self.error_bar_fraction
        );
        ensure!(
            self.width_px >= 200 && self.height_px >= 150,
            "figure must be at least 200x150 px"
        );
        Ok(())
    }
}

const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 64.0;
pub const CURVE_STROKE_WIDTH: f64 = 1.5;
const MARKER_RADIUS: f64 = 4.0;
const CAP_HALF_WIDTH: f64 = 3.0;

/// Linear data-to-pixel mapping for the plot area.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    x0: f64,
    x1: f64,
    y_top: f64,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    pub fn px(&self, n: f64, y: f64) -> (f64, f64) {
        let px = self.left + (n - self.x0) / (self.x1 - self.x0) * (self.right - self.left);
        let py = self.bottom - y / self.y_top * (self.bottom - self.top);
        (px, py)
    }
}

/// Step of roughly `span / target` rounded to 1, 2 or 5 × 10ᵏ.
fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let frac = raw / mag;
    let nice = if frac <= 1.0 {
        1.0
    } else if frac <= 2.0 {
        2.0
    } else if frac <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step - 1e-9).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

/// Six-significant-figure coordinate; never prints `-0`.
fn num(v: f64) -> String {
    let text = format_sig_trimmed(v, 6);
    if text
        .trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0".to_owned()
    } else {
        text
    }
}

fn curve_points(fit: &FitResult, spec: &PlotSpec) -> Vec<(f64, f64)> {
    let last = spec.curve_samples - 1;
    (0..spec.curve_samples)
        .map(|i| {
            let n = if i == last {
                spec.x_max
            } else {
                spec.x_min + (spec.x_max - spec.x_min) * i as f64 / last as f64
            };
            let idx = RefractiveIndex::new(n).expect("plot range starts at n >= 1");
            (n, fit.reff_sq * chi(fit.model, idx).value())
        })
        .collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the figure. `rows` are the points to plot (already filtered for
/// vacuum rows by the caller); `virtual_fit` and `real_fit` set the curves.
pub fn render_svg(
    rows: &[DerivedRow],
    virtual_fit: &FitResult,
    real_fit: &FitResult,
    spec: &PlotSpec,
) -> Result<String> {
    spec.validate()?;
    ensure!(
        virtual_fit.model == CavityModel::VirtualCavity
            && real_fit.model == CavityModel::RealCavity,
        "curves must be the virtual and real cavity fits"
    );

    let virtual_curve = curve_points(virtual_fit, spec);
    let real_curve = curve_points(real_fit, spec);

    let data_max = rows
        .iter()
        .map(|r| r.y_measured * (1.0 + spec.error_bar_fraction))
        .chain(virtual_curve.iter().chain(&real_curve).map(|p| p.1))
        .fold(0.0_f64, f64::max);
    let y_step = nice_step(data_max, 8);
    let y_top = (data_max * 1.02 / y_step).ceil() * y_step;

    let (w, h) = (spec.width_px as f64, spec.height_px as f64);
    let frame = Frame {
        x0: spec.x_min,
        x1: spec.x_max,
        y_top,
        left: MARGIN_LEFT,
        right: w - MARGIN_RIGHT,
        top: MARGIN_TOP,
        bottom: h - MARGIN_BOTTOM,
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = spec.width_px,
        h = spec.height_px
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        spec.width_px, spec.height_px
    );
    let _ = writeln!(
        svg,
        r#"<clipPath id="plot-area"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath>"#,
        num(frame.left),
        num(frame.top),
        num(frame.right - frame.left),
        num(frame.bottom - frame.top)
    );

    // axes
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="black" stroke-width="1" fill="none">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
        num(frame.left),
        num(frame.top),
        num(frame.right - frame.left),
        num(frame.bottom - frame.top)
    );
    let x_step = nice_step(spec.x_max - spec.x_min, 8);
    let x_ticks = ticks(spec.x_min, spec.x_max, x_step);
    for &t in &x_ticks {
        let (px, _) = frame.px(t, 0.0);
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y0}" x2="{x}" y2="{y1}"/>"#,
            x = num(px),
            y0 = num(frame.bottom),
            y1 = num(frame.bottom - 5.0)
        );
    }
    let y_ticks = ticks(0.0, y_top, y_step);
    for &t in &y_ticks {
        let (_, py) = frame.px(spec.x_min, t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}"/>"#,
            x0 = num(frame.left),
            x1 = num(frame.left + 5.0),
            y = num(py)
        );
    }
    svg.push_str("</g>\n");

    let x_digits = (-x_step.log10().floor()).max(0.0) as usize;
    let y_digits = (-y_step.log10().floor()).max(0.0) as usize;
    let _ = writeln!(svg, r#"<g class="tick-labels" fill="black">"#);
    for &t in &x_ticks {
        let (px, _) = frame.px(t, 0.0);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{:.*}</text>"#,
            num(px),
            num(frame.bottom + 18.0),
            x_digits,
            t
        );
    }
    for &t in &y_ticks {
        let (_, py) = frame.px(spec.x_min, t);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{:.*}</text>"#,
            num(frame.left - 8.0),
            num(py + 4.0),
            y_digits,
            t
        );
    }
    svg.push_str("</g>\n");

    let _ = writeln!(
        svg,
        r#"<text class="axis-label" x="{}" y="{}" text-anchor="middle">refractive index n</text>"#,
        num((frame.left + frame.right) / 2.0),
        num(h - 18.0)
    );
    let (lx, ly) = (22.0, (frame.top + frame.bottom) / 2.0);
    let _ = writeln!(
        svg,
        r#"<text class="axis-label" x="{x}" y="{y}" text-anchor="middle" transform="rotate(-90 {x} {y})">r_eff^2 * chi (nm^2)</text>"#,
        x = num(lx),
        y = num(ly)
    );

    // curves
    for (curve, class, dash) in [
        (&virtual_curve, "curve virtual", ""),
        (&real_curve, "curve real", r#" stroke-dasharray="6,4""#),
    ] {
        let mut d = String::new();
        for (i, &(n, y)) in curve.iter().enumerate() {
            let (px, py) = frame.px(n, y);
            let _ = write!(
                d,
                "{}{},{}",
                if i == 0 { "M" } else { " L" },
                num(px),
                num(py)
            );
        }
        let _ = writeln!(
            svg,
            r#"<path class="{class}" d="{d}" fill="none" stroke="black" stroke-width="{}"{dash} clip-path="url(#plot-area)"/>"#,
            num(CURVE_STROKE_WIDTH)
        );
    }

    // measured points with error bars, drawn as asterisks
    for r in rows {
        let n = r.base.n.value();
        let y = r.y_measured;
        let (px, py) = frame.px(n, y);
        let (_, py_hi) = frame.px(n, y * (1.0 + spec.error_bar_fraction));
        let (_, py_lo) = frame.px(n, y * (1.0 - spec.error_bar_fraction));
        let _ = writeln!(
            svg,
            r#"<g class="marker" transform="translate({},{})" stroke="black" stroke-width="1"><title>{}</title>"#,
            num(px),
            num(py),
            escape(&format!(
                "{} ({}): n = {}, y = {} nm^2",
                r.base.host,
                r.base.source,
                n,
                format_sig(y, 4)
            ))
        );
        let (top, bot) = (py_hi - py, py_lo - py);
        let _ = writeln!(
            svg,
            r#"<path class="error-bar" d="M0,{t} L0,{b} M-{c},{t} L{c},{t} M-{c},{b} L{c},{b}"/>"#,
            t = num(top),
            b = num(bot),
            c = num(CAP_HALF_WIDTH)
        );
        let r0 = MARKER_RADIUS;
        let dx = r0 * 0.866_025_403_784_438_6;
        let dy = r0 * 0.5;
        let _ = writeln!(
            svg,
            r#"<path class="star" d="M0,-{r} L0,{r} M-{dx},-{dy} L{dx},{dy} M-{dx},{dy} L{dx},-{dy}"/></g>"#,
            r = num(r0),
            dx = num(dx),
            dy = num(dy)
        );
    }

    // legend
    let lx = frame.left + 16.0;
    let mut ly = frame.top + 20.0;
    let _ = writeln!(svg, r#"<g class="legend" fill="black">"#);
    for (fit, label, dash) in [
        (virtual_fit, "virtual cavity", ""),
        (real_fit, "real cavity", r#" stroke-dasharray="6,4""#),
    ] {
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black" stroke-width="{}"{dash}/>"#,
            num(lx),
            num(lx + 32.0),
            num(CURVE_STROKE_WIDTH),
            y = num(ly)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}">{label}, r_eff = {} nm</text>"#,
            num(lx + 40.0),
            num(ly + 4.0),
            format_sig(fit.reff.value(), 3)
        );
        ly += 18.0;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}">* measured, ±{}% error bars</text>"#,
        num(lx + 40.0),
        num(ly + 4.0),
        format_sig_trimmed(spec.error_bar_fraction * 100.0, 6)
    );
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}
