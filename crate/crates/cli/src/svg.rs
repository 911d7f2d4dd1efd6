//! Minimal standalone SVG: line panels with axis ticks, and layer outlines.

use std::fmt::Write;

pub struct Panel<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub x_log: bool,
    pub y_log: bool,
    /// Polylines; a break in a curve is a new series.
    pub series: Vec<Vec<(f64, f64)>>,
    /// Vertical markers.
    pub marks: Vec<f64>,
}

const W: f64 = 480.0;
const H: f64 = 360.0;
const PAD: f64 = 56.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(vals: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in vals.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-12 * lo.abs().max(1.0) {
            (lo, hi) = (lo - 0.5, hi + 0.5);
        }
        Axis { lo, hi, log }
    }

    fn t(&self, v: f64) -> Option<f64> {
        if self.log && v <= 0.0 {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    /// Tick positions in data units.
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.floor() as i32, self.hi.ceil() as i32);
            let step = ((b - a) / 6).max(1);
            (a..=b)
                .step_by(step as usize)
                .map(|e| 10f64.powi(e))
                .filter(|v| self.t(*v).is_some_and(|t| (-1e-9..=1.0 + 1e-9).contains(&t)))
                .collect()
        } else {
            let raw = (self.hi - self.lo) / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0].into_iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
            let first = (self.lo / step).ceil() as i64;
            let last = (self.hi / step).floor() as i64;
            (first..=last).map(|k| k as f64 * step).collect()
        }
    }
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e-2 && v.abs() < 1e4 {
        format!("{}", (v * 1e6).round() / 1e6)
    } else {
        format!("{v:.0e}")
    }
}

fn panel(out: &mut String, p: &Panel, ox: f64) {
    let pts = || p.series.iter().flatten();
    let xa = Axis::new(pts().map(|q| q.0).chain(p.marks.iter().copied()), p.x_log);
    let ya = Axis::new(pts().map(|q| q.1), p.y_log);
    let (x0, x1, y0, y1) = (ox + PAD, ox + W - 16.0, H - PAD + 8.0, 28.0);
    let px = |t: f64| x0 + t * (x1 - x0);
    let py = |t: f64| y0 - t * (y0 - y1);
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="16" text-anchor="middle" font-size="13">{}</text>"#,
        (x0 + x1) / 2.0,
        esc(p.title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.1}" y="{y1:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    for v in xa.ticks() {
        let x = px(xa.t(v).unwrap());
        let _ = writeln!(out, r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/>"#, y0 + 4.0);
        let _ = writeln!(out, r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#, y0 + 16.0, label(v));
    }
    for v in ya.ticks() {
        let y = py(ya.t(v).unwrap());
        let _ = writeln!(out, r#"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/>"#, x0 - 4.0);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#, x0 - 6.0, y + 4.0, label(v));
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}{}</text>"#,
        (x0 + x1) / 2.0,
        H - 8.0,
        esc(p.x_label),
        if p.x_log { " (log)" } else { "" }
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">{}{}</text>"#,
        ox + 14.0,
        (y0 + y1) / 2.0,
        ox + 14.0,
        (y0 + y1) / 2.0,
        esc(p.y_label),
        if p.y_log { " (log)" } else { "" }
    );
    for m in &p.marks {
        if let Some(t) = xa.t(*m) {
            let x = px(t);
            let _ = writeln!(
                out,
                r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{y1:.1}" stroke="gray" stroke-dasharray="4 3"/>"#
            );
        }
    }
    for s in &p.series {
        let coords: Vec<String> =
            s.iter().filter_map(|&(x, y)| Some(format!("{:.2},{:.2}", px(xa.t(x)?), py(ya.t(y)?)))).collect();
        if !coords.is_empty() {
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
                coords.join(" ")
            );
        }
    }
    let _ = writeln!(out, "</g>");
}

/// Panels side by side.
pub fn panels(ps: &[Panel]) -> String {
    let total = W * ps.len() as f64;
    let mut out = format!(
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{H}" viewBox="0 0 {total} {H}">
<rect width="100%" height="100%" fill="white"/>
"#
    );
    for (i, p) in ps.iter().enumerate() {
        panel(&mut out, p, i as f64 * W);
    }
    out.push_str("</svg>\n");
    out
}

/// Closed layer outlines in deformed coordinates, equal scaling on both axes.
pub fn outline(layers: &[Vec<[f64; 2]>]) -> String {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in layers.iter().flatten() {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-300);
    let scale = 900.0 / span;
    let (w, h) = ((hi[0] - lo[0]) * scale + 40.0, (hi[1] - lo[1]) * scale + 40.0);
    let mut out = format!(
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">
<rect width="100%" height="100%" fill="white"/>
"#
    );
    for (j, layer) in layers.iter().enumerate() {
        let pts: Vec<String> = layer
            .iter()
            .map(|p| format!("{:.2},{:.2}", 20.0 + (p[0] - lo[0]) * scale, h - 20.0 - (p[1] - lo[1]) * scale))
            .collect();
        let fill = if j % 2 == 0 { "#c9d8e8" } else { "#e8dcc9" };
        let _ =
            writeln!(out, r#"<polygon fill="{fill}" stroke="black" stroke-width="0.6" points="{}"/>"#, pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}
