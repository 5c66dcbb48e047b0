//! Static SVG renderings of Newton polygons, normal fans and amoeba samples.
//! Every picture uses a fixed 800 by 800 viewport.

use std::fmt::Write;

use crate::polygon::{inner_normals, tropism_intersection, NewtonPolygon, Tropicalization, Tropism};
use crate::polynomial::{ExponentVector, SparsePoly};

pub const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 2] = ["#1f5fa8", "#b8641c"];
const COMMON: &str = "#c0182c";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    Polygon,
    Fan,
    Both,
}

/// Axis-aligned square panel of the canvas.
#[derive(Clone, Copy)]
struct Panel {
    x: f64,
    y: f64,
    side: f64,
}

/// Maps lattice coordinates into a panel, keeping the aspect ratio.
struct Frame {
    panel: Panel,
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(panel: Panel, lo: (f64, f64), hi: (f64, f64)) -> Self {
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1.0);
        let scale = (panel.side - 2.0 * MARGIN) / span;
        // centre the shorter side
        let min = (
            lo.0 - (span - (hi.0 - lo.0)) / 2.0,
            lo.1 - (span - (hi.1 - lo.1)) / 2.0,
        );
        Self { panel, min, scale }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (
            self.panel.x + MARGIN + (p.0 - self.min.0) * self.scale,
            self.panel.y + self.panel.side - MARGIN - (p.1 - self.min.1) * self.scale,
        )
    }
}

fn open(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn close(out: &mut String) {
    out.push_str("</svg>\n");
}

fn to_f(e: ExponentVector) -> (f64, f64) {
    (e.i as f64, e.j as f64)
}

fn polygon_panel(out: &mut String, polys: &[&SparsePoly], panel: Panel) {
    let points: Vec<(f64, f64)> = polys.iter().flat_map(|p| p.support().iter().map(|&e| to_f(e))).collect();
    let lo = points.iter().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
    let hi = points
        .iter()
        .fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
    let frame = Frame::fit(panel, lo, hi);

    // lattice grid, skipped when it would be too dense to read
    if hi.0 - lo.0 <= 40.0 && hi.1 - lo.1 <= 40.0 {
        for i in lo.0 as i64..=hi.0 as i64 {
            for j in lo.1 as i64..=hi.1 as i64 {
                let (x, y) = frame.map((i as f64, j as f64));
                let _ = writeln!(out, r##"<circle class="lattice" cx="{x:.2}" cy="{y:.2}" r="1.5" fill="#bbbbbb"/>"##);
            }
        }
    }
    for (k, p) in polys.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let hull = NewtonPolygon::of(p);
        if hull.vertices().len() >= 2 {
            let pts: Vec<String> = hull
                .vertices()
                .iter()
                .map(|&v| {
                    let (x, y) = frame.map(to_f(v));
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polygon class="hull" points="{}" fill="{color}" fill-opacity="0.12" stroke="{color}" stroke-width="2"/>"#,
                pts.join(" ")
            );
        }
        for &e in p.support() {
            let (x, y) = frame.map(to_f(e));
            let _ = writeln!(out, r#"<circle class="support" cx="{x:.2}" cy="{y:.2}" r="4" fill="{color}"/>"#);
        }
    }
}

fn ray(out: &mut String, class: &str, from: (f64, f64), t: Tropism, length: f64, color: &str, width: f64) {
    let norm = ((t.u() as f64).powi(2) + (t.v() as f64).powi(2)).sqrt();
    let to = (
        from.0 + length * t.u() as f64 / norm,
        from.1 - length * t.v() as f64 / norm,
    );
    let _ = writeln!(
        out,
        r#"<line class="{class}" data-tropism="{},{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="{width}"/>"#,
        t.u(),
        t.v(),
        from.0,
        from.1,
        to.0,
        to.1
    );
}

fn fan_panel(out: &mut String, polys: &[&SparsePoly], panel: Panel) {
    let centre = (panel.x + panel.side / 2.0, panel.y + panel.side / 2.0);
    let length = panel.side / 2.0 - MARGIN;
    let fans: Vec<Tropicalization> = polys.iter().map(|p| inner_normals(&NewtonPolygon::of(p))).collect();
    let common: Vec<Tropism> = match fans.as_slice() {
        [a, b] => tropism_intersection(a, b),
        _ => Vec::new(),
    };
    for (k, fan) in fans.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        for &t in fan.normals() {
            if !common.contains(&t) {
                ray(out, "ray", centre, t, length * (1.0 - 0.08 * k as f64), color, 2.0);
            }
        }
    }
    for &t in &common {
        ray(out, "common-ray", centre, t, length, COMMON, 4.0);
    }
    let _ = writeln!(
        out,
        r#"<circle class="origin" cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#,
        centre.0, centre.1
    );
}

/// Newton polygons and/or normal fans of one or two polynomials. With two
/// inputs the rays they share are drawn with class `common-ray`.
pub fn render(polys: &[&SparsePoly], kind: PlotKind) -> String {
    let mut out = String::new();
    open(&mut out);
    let full = Panel { x: 0.0, y: 0.0, side: SIZE };
    match kind {
        PlotKind::Polygon => polygon_panel(&mut out, polys, full),
        PlotKind::Fan => fan_panel(&mut out, polys, full),
        PlotKind::Both => {
            let half = SIZE / 2.0;
            polygon_panel(&mut out, polys, Panel { x: 0.0, y: half / 2.0, side: half });
            fan_panel(&mut out, polys, Panel { x: half, y: half / 2.0, side: half });
        }
    }
    close(&mut out);
    out
}

/// Scatter plot of points in the plane with optional direction arrows from
/// the centroid.
pub fn render_points(points: &[(f64, f64)], directions: &[(f64, f64)]) -> String {
    let mut out = String::new();
    open(&mut out);
    if points.is_empty() {
        close(&mut out);
        return out;
    }
    let lo = points.iter().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
    let hi = points
        .iter()
        .fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
    let frame = Frame::fit(Panel { x: 0.0, y: 0.0, side: SIZE }, lo, hi);
    for &p in points {
        let (x, y) = frame.map(p);
        let _ = writeln!(out, r##"<circle class="sample" cx="{x:.2}" cy="{y:.2}" r="1.2" fill="#1f5fa8"/>"##);
    }
    let n = points.len() as f64;
    let centroid = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
    let (cx, cy) = frame.map(centroid);
    for &(dx, dy) in directions {
        let len = SIZE / 3.0;
        let _ = writeln!(
            out,
            r#"<line class="tentacle" x1="{cx:.2}" y1="{cy:.2}" x2="{:.2}" y2="{:.2}" stroke="{COMMON}" stroke-width="3" stroke-dasharray="8 6"/>"#,
            cx + len * dx,
            cy - len * dy
        );
    }
    close(&mut out);
    out
}
