//! Single-polyline SVG plots of sampled curves.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn invalid(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidInput, msg.to_string())
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        // Flat data: open a unit window around it.
        (lo - 0.5, hi + 0.5)
    }
}

/// Renders the samples as an SVG document. Output depends only on the
/// samples, so fixed input gives identical bytes.
pub fn render_svg(samples: &[(f64, f64)]) -> io::Result<String> {
    if samples.len() < 2 {
        return Err(invalid("a plot needs at least two samples"));
    }
    if samples.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(invalid("plot samples must be finite"));
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| samples.iter().map(pick).fold(init, f);
    let (x0, x1) = span(fold(f64::min, f64::INFINITY, |s| s.0), fold(f64::max, f64::NEG_INFINITY, |s| s.0));
    let (y0, y1) = span(fold(f64::min, f64::INFINITY, |s| s.1), fold(f64::max, f64::NEG_INFINITY, |s| s.1));
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // Axes: the frame's left and bottom edges, plus y = 0 and x = 0 when in view.
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1">"#);
    let _ = writeln!(s, r#"<line x1="{l:.3}" y1="{b:.3}" x2="{r:.3}" y2="{b:.3}"/>"#);
    let _ = writeln!(s, r#"<line x1="{l:.3}" y1="{t:.3}" x2="{l:.3}" y2="{b:.3}"/>"#);
    if y0 < 0.0 && y1 > 0.0 {
        let y = py(0.0);
        let _ = writeln!(s, r#"<line x1="{l:.3}" y1="{y:.3}" x2="{r:.3}" y2="{y:.3}" stroke-dasharray="4 3"/>"#);
    }
    if x0 < 0.0 && x1 > 0.0 {
        let x = px(0.0);
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="{t:.3}" x2="{x:.3}" y2="{b:.3}" stroke-dasharray="4 3"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g font-family="monospace" font-size="10"><text x="{l:.3}" y="{:.3}">{x0:e}</text><text x="{r:.3}" y="{:.3}" text-anchor="end">{x1:e}</text><text x="2" y="{b:.3}">{y0:e}</text><text x="2" y="{t:.3}">{y1:e}</text></g>"#,
        b + 14.0,
        b + 14.0
    );
    let points: Vec<String> = samples.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        points.join(" ")
    );
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_plot(samples: &[(f64, f64)], path: &Path) -> io::Result<()> {
    let svg = render_svg(samples)?;
    std::fs::write(path, svg)
}
