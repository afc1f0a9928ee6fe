//! SVG drawings of tangles. Column `c` is at `x = (c - 1)·unit`, step `t` at
//! `y = t·unit`, so diagonal segments are at 45°.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::tangle::Tangle;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Pixels per grid step.
    pub unit: u32,
    /// Replace corners by arcs of radius `unit / 3`.
    pub rounded: bool,
    /// One hue per path instead of black.
    pub colored: bool,
    pub stroke_width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            unit: 24,
            rounded: false,
            colored: false,
            stroke_width: 2.0,
        }
    }
}

impl RenderOptions {
    pub fn validate(&self) -> Result<()> {
        if self.unit < 4 {
            return Err(Error::InvalidRenderOptions(format!(
                "unit {} is below 4",
                self.unit
            )));
        }
        if !(self.stroke_width.is_finite() && self.stroke_width > 0.0) {
            return Err(Error::InvalidRenderOptions(format!(
                "stroke width {} is not positive",
                self.stroke_width
            )));
        }
        Ok(())
    }

    pub fn radius(&self) -> f64 {
        self.unit as f64 / 3.0
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Polyline vertices of every path: both endpoints and every point where
/// the direction changes.
pub fn path_vertices(t: &Tangle, unit: u32) -> Vec<Vec<(f64, f64)>> {
    let g = t.geometry();
    let u = unit as f64;
    (1..=t.n())
        .map(|e| {
            let cols = &g.columns[e];
            let dirs = &g.directions[e];
            let point = |k: usize| ((cols[k] - 1) as f64 * u, k as f64 * u);
            let mut out = vec![point(0)];
            for k in 1..dirs.len() {
                if dirs[k - 1] != dirs[k] {
                    out.push(point(k));
                }
            }
            out.push(point(cols.len() - 1));
            out
        })
        .collect()
}

fn polyline_data(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|&(x, y)| format!("{},{}", num(x), num(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Path data with each interior vertex replaced by a circular fillet.
fn rounded_data(points: &[(f64, f64)], radius: f64) -> String {
    let mut d = format!("M{},{}", num(points[0].0), num(points[0].1));
    for w in points.windows(3) {
        let (p0, p1, p2) = (w[0], w[1], w[2]);
        let (ux, uy) = (p1.0 - p0.0, p1.1 - p0.1);
        let (vx, vy) = (p2.0 - p1.0, p2.1 - p1.1);
        let (lu, lv) = (ux.hypot(uy), vx.hypot(vy));
        let (ux, uy, vx, vy) = (ux / lu, uy / lu, vx / lv, vy / lv);
        let turn = (ux * vx + uy * vy).clamp(-1.0, 1.0).acos();
        let half = (turn / 2.0).tan();
        // Never eat more than half of either neighbouring segment.
        let tangent = (radius * half).min(lu / 2.0).min(lv / 2.0);
        let r = tangent / half;
        let sweep = u8::from(ux * vy - uy * vx > 0.0);
        let (ax, ay) = (p1.0 - ux * tangent, p1.1 - uy * tangent);
        let (bx, by) = (p1.0 + vx * tangent, p1.1 + vy * tangent);
        write!(
            d,
            " L{},{} A{},{} 0 0 {} {},{}",
            num(ax),
            num(ay),
            num(r),
            num(r),
            sweep,
            num(bx),
            num(by)
        )
        .unwrap();
    }
    let last = points[points.len() - 1];
    write!(d, " L{},{}", num(last.0), num(last.1)).unwrap();
    d
}

pub fn to_svg(t: &Tangle, opts: &RenderOptions) -> Result<String> {
    opts.validate()?;
    t.validate()?;
    let n = t.n();
    let u = opts.unit as f64;
    let margin = u;
    let width = (n - 1) as f64 * u + 2.0 * margin;
    let height = t.rows.len() as f64 * u + 2.0 * margin;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    )
    .unwrap();
    writeln!(
        out,
        r#"<g transform="translate({m},{m})" fill="none" stroke-width="{s}" stroke-linecap="round" stroke-linejoin="round">"#,
        m = num(margin),
        s = num(opts.stroke_width)
    )
    .unwrap();
    for (i, points) in path_vertices(t, opts.unit).iter().enumerate() {
        let e = i + 1;
        let color = if opts.colored {
            format!("hsl({},70%,40%)", num(360.0 * i as f64 / n as f64))
        } else {
            "black".to_string()
        };
        if opts.rounded {
            writeln!(
                out,
                r#"<path data-element="{e}" stroke="{color}" d="{}"/>"#,
                rounded_data(points, opts.radius())
            )
            .unwrap();
        } else {
            writeln!(
                out,
                r#"<polyline data-element="{e}" stroke="{color}" points="{}"/>"#,
                polyline_data(points)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
