//! Static SVG pole chart in the momentum plane.
//!
//! Attractive poles (`γ = +1`) are filled circles, repulsive poles
//! (`γ = −1`) open circles. Trajectories are polylines with arrowheads
//! pointing towards increasing `α`; closed paths are solid and open paths
//! dashed. The plotted region is the chart's working window.

use std::fmt::Write;

use rectpole_core::chart::{working_window, PoleChart};
use rectpole_core::{collision_momentum, C64};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;
/// Screen distance between arrowheads along a path.
const ARROW_SPACING: f64 = 90.0;
const MARKER_RADIUS: f64 = 4.5;

struct Frame {
    lo: C64,
    hi: C64,
}

impl Frame {
    fn x(&self, re: f64) -> f64 {
        LEFT + (re - self.lo.re) / (self.hi.re - self.lo.re) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, im: f64) -> f64 {
        TOP + (self.hi.im - im) / (self.hi.im - self.lo.im) * (HEIGHT - TOP - BOTTOM)
    }

    fn point(&self, k: C64) -> (f64, f64) {
        (self.x(k.re), self.y(k.im))
    }

    fn contains(&self, k: C64) -> bool {
        k.re >= self.lo.re && k.re <= self.hi.re && k.im >= self.lo.im && k.im <= self.hi.im
    }
}

/// Tick spacing giving four to ten ticks over `span`.
fn tick_step(span: f64) -> f64 {
    let raw = span / 8.0;
    let p = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * p)
        .find(|s| span / s <= 10.0)
        .unwrap_or(10.0 * p)
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

fn axes(out: &mut String, f: &Frame) {
    let (x0, x1) = (f.x(f.lo.re), f.x(f.hi.re));
    let (y0, y1) = (f.y(f.lo.im), f.y(f.hi.im));
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#000" stroke-width="1"/>"##,
        x1 - x0,
        y0 - y1
    );
    for re in ticks(f.lo.re, f.hi.re) {
        let x = f.x(re);
        let _ = writeln!(out, r##"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="#000"/>"##, y0 + 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 19.0,
            label(re)
        );
    }
    for im in ticks(f.lo.im, f.hi.im) {
        let y = f.y(im);
        let _ = writeln!(out, r##"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="#000"/>"##, x0 - 5.0);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            y + 4.0,
            label(im)
        );
    }
    // coordinate axes through the origin
    let _ = writeln!(
        out,
        r##"<line x1="{x0:.2}" y1="{:.2}" x2="{x1:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="2 3"/>"##,
        f.y(0.0),
        f.y(0.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y1:.2}" stroke="#888" stroke-dasharray="2 3"/>"##,
        f.x(0.0),
        f.x(0.0)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Re k</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Im k</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn arrowhead(out: &mut String, at: (f64, f64), towards: (f64, f64), colour: &str) {
    let (dx, dy) = (towards.0 - at.0, towards.1 - at.1);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return;
    }
    let (ux, uy) = (dx / len, dy / len);
    let (size, half) = (9.0, 4.0);
    let tip = (at.0 + ux * size / 2.0, at.1 + uy * size / 2.0);
    let base = (at.0 - ux * size / 2.0, at.1 - uy * size / 2.0);
    let _ = writeln!(
        out,
        r#"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{colour}"/>"#,
        tip.0,
        tip.1,
        base.0 - uy * half,
        base.1 + ux * half,
        base.0 + uy * half,
        base.1 - ux * half
    );
}

fn trajectories(out: &mut String, f: &Frame, chart: &PoleChart) {
    let _ = writeln!(out, r#"<g clip-path="url(#window)" fill="none" stroke-width="1.2">"#);
    for t in &chart.trajectories {
        let closed = t.closure.is_closed();
        let colour = if closed { "#1f4e9c" } else { "#a33a2a" };
        let dash = if closed { "" } else { r#" stroke-dasharray="6 3""# };
        let mut points = String::new();
        for s in &t.samples {
            let (x, y) = f.point(s.k);
            let _ = write!(points, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(out, r#"<polyline points="{}" stroke="{colour}"{dash}/>"#, points.trim_end());
        // arrowheads at even screen spacing, following increasing α
        let mut travelled = ARROW_SPACING / 2.0;
        for w in t.samples.windows(2) {
            let (p, q) = (f.point(w[0].k), f.point(w[1].k));
            if !(f.contains(w[0].k) && f.contains(w[1].k)) {
                continue;
            }
            travelled += (q.0 - p.0).hypot(q.1 - p.1);
            if travelled >= ARROW_SPACING {
                travelled = 0.0;
                arrowhead(out, ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0), q, colour);
            }
        }
    }
    let _ = writeln!(out, "</g>");
}

fn markers(out: &mut String, f: &Frame, chart: &PoleChart) {
    for (poles, fill) in [(&chart.attractive_axis_poles, "#000"), (&chart.repulsive_axis_poles, "#fff")] {
        for p in poles.iter().filter(|p| f.contains(p.k)) {
            let (x, y) = f.point(p.k);
            let _ = writeln!(
                out,
                r##"<circle cx="{x:.2}" cy="{y:.2}" r="{MARKER_RADIUS}" fill="{fill}" stroke="#000" stroke-width="1.2"/>"##
            );
        }
    }
    let kc = collision_momentum(chart.spec.half_width());
    if f.contains(kc) {
        let (x, y) = f.point(kc);
        let _ = writeln!(
            out,
            r##"<path d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="#555"/>"##,
            x - 4.0,
            y - 4.0,
            x + 4.0,
            y + 4.0,
            x - 4.0,
            y + 4.0,
            x + 4.0,
            y - 4.0
        );
        let _ = writeln!(out, r##"<text x="{:.2}" y="{:.2}" fill="#555">k_c</text>"##, x + 7.0, y + 4.0);
    }
}

pub fn render(chart: &PoleChart) -> String {
    let (lo, hi) = working_window(&chart.spec);
    let f = Frame { lo, hi };
    let spec = &chart.spec;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="window"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        f.x(lo.re),
        f.y(hi.im),
        f.x(hi.re) - f.x(lo.re),
        f.y(lo.im) - f.y(hi.im)
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#fff"/>"##);
    let _ = writeln!(
        out,
        r#"<text x="{LEFT}" y="22" font-size="14">{} channel, m = {}, a = {}, U = {}</text>"#,
        spec.channel().name(),
        spec.mass(),
        spec.half_width(),
        spec.depth()
    );
    let _ = writeln!(out, r#"<text x="{LEFT}" y="39">{}</text>"#, chart.topology);
    axes(&mut out, &f);
    trajectories(&mut out, &f, chart);
    markers(&mut out, &f, chart);
    out.push_str("</svg>\n");
    out
}
