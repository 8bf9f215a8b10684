//! Plain SVG rendering of planned trajectories in a coordinate plane.

use std::fmt::Write as _;

use seqplan::{Configuration, ProblemSpec};

const MARGIN: f64 = 24.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

pub struct Canvas {
    pub width: f64,
    pub height: f64,
    /// 0-based coordinate indices drawn horizontally and vertically.
    pub axes: (usize, usize),
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    fn fit(canvas: &Canvas, points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for (x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let inner_w = (canvas.width - 2.0 * MARGIN).max(1.0);
        let inner_h = (canvas.height - 2.0 * MARGIN).max(1.0);
        let scale = (inner_w / span_x).min(inner_h / span_y);
        Self {
            min_x,
            max_y,
            scale,
            off_x: MARGIN + (inner_w - span_x * scale) / 2.0,
            off_y: MARGIN + (inner_h - span_y * scale) / 2.0,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.off_x + (x - self.min_x) * self.scale,
            self.off_y + (self.max_y - y) * self.scale,
        )
    }
}

pub fn render(
    spec: &ProblemSpec,
    canvas: &Canvas,
    trajectory: &[(f64, Configuration)],
    waypoints: &[Configuration],
) -> String {
    let (ax, ay) = canvas.axes;
    let pick = |p: &[f64]| (p[ax], p[ay]);
    let frame = Frame::fit(
        canvas,
        trajectory
            .iter()
            .flat_map(|(_, c)| c.points().map(pick).collect::<Vec<_>>())
            .chain(spec.obstacles().iter().map(|q| pick(q))),
    );

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = canvas.width,
        h = canvas.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let (x0, y0) = frame.map(frame.min_x, 0.0);
    let _ = writeln!(
        out,
        r##"<line class="axis" x1="{x0:.3}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="#999" stroke-dasharray="4 3"/>"##,
        canvas.width - MARGIN
    );

    for i in 0..spec.k() {
        let color = PALETTE[i % PALETTE.len()];
        let mut pts = String::new();
        for (_, c) in trajectory {
            let (x, y) = pick(c.point(i));
            let (sx, sy) = frame.map(x, y);
            let _ = write!(pts, "{sx:.3},{sy:.3} ");
        }
        let _ = writeln!(
            out,
            r#"<polyline class="trajectory" data-robot="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            i + 1,
            pts.trim_end()
        );
    }

    for (m, c) in waypoints.iter().enumerate() {
        for i in 0..spec.k() {
            let (sx, sy) = {
                let (x, y) = pick(c.point(i));
                frame.map(x, y)
            };
            let _ = writeln!(
                out,
                r#"<circle class="waypoint" data-waypoint="{}" data-robot="{}" cx="{sx:.3}" cy="{sy:.3}" r="3.5" fill="white" stroke="{}" stroke-width="1.5"/>"#,
                m + 1,
                i + 1,
                PALETTE[i % PALETTE.len()]
            );
        }
    }

    for (j, q) in spec.obstacles().iter().enumerate() {
        let (x, y) = pick(q);
        let (sx, sy) = frame.map(x, y);
        let _ = writeln!(
            out,
            r#"<circle class="obstacle" cx="{sx:.3}" cy="{sy:.3}" r="4" fill="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{sx:.3}" y="{:.3}" font-size="11" text-anchor="middle">q{}</text>"#,
            sy - 8.0,
            j + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
