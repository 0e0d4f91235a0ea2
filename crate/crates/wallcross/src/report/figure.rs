//! SVG rendering of the chamber structure on the Poincare disk: wall
//! geodesics, chamber points with their images under reflection words, and
//! the connecting paths with ordered crossing markers.
//!
//! This is the one place floating point is allowed; every coordinate is
//! printed with six decimal places so output is byte-stable for a fixed input.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use crate::chambers::{enumerate_walls, ChamberPoint, HomologyOrientation, Wall};
use crate::crossing::segment_crossings_oracle;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, LatticeClass};

/// Description of one rendered figure.
#[derive(Clone, Debug)]
pub struct FigureSpec {
    pub wall_c_max: BigInt,
    /// Labeled Poincare disk points (u, v), all strictly inside the disk.
    pub points: Vec<(String, BigRational, BigRational)>,
    /// Reflection words; each point is connected to its image under each word.
    pub words: Vec<Vec<LatticeClass>>,
    pub width: u32,
    pub height: u32,
    pub disk_radius: u32,
}

impl Default for FigureSpec {
    fn default() -> Self {
        FigureSpec {
            wall_c_max: BigInt::from(3),
            points: Vec::new(),
            words: Vec::new(),
            width: 600,
            height: 600,
            disk_radius: 280,
        }
    }
}

struct Canvas {
    cx: f64,
    cy: f64,
    scale: f64,
}

impl Canvas {
    fn map(&self, u: f64, v: f64) -> (f64, f64) {
        // SVG y grows downward.
        (self.cx + self.scale * u, self.cy - self.scale * v)
    }
}

fn f(x: f64) -> String {
    format!("{x:.6}")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("figure coordinates fit in f64")
}

fn klein_to_poincare(x: f64, y: f64) -> (f64, f64) {
    let d = 1.0 + (1.0 - x * x - y * y).max(0.0).sqrt();
    (x / d, y / d)
}

/// The geodesic of a wall in the Poincare disk: the circle centered at
/// (a/c, b/c) with radius 1/c, orthogonal to the boundary. Returns the two
/// ideal endpoints and the arc radius, all in disk units.
fn wall_arc(wall: &Wall) -> ((f64, f64), (f64, f64), f64) {
    let a = wall.a().to_f64().expect("wall coordinate fits in f64");
    let b = wall.b().to_f64().expect("wall coordinate fits in f64");
    let c = wall.c().to_f64().expect("wall coordinate fits in f64");
    let norm_sq = a * a + b * b;
    let norm = norm_sq.sqrt();
    // Closest point of the Klein chord aX + bY = c to the origin, plus the
    // half-chord to the ideal boundary points.
    let px = a * c / norm_sq;
    let py = b * c / norm_sq;
    let half = (1.0 - c * c / norm_sq).max(0.0).sqrt();
    let (dx, dy) = (-b / norm, a / norm);
    let q1 = (px + half * dx, py + half * dy);
    let q2 = (px - half * dx, py - half * dy);
    (q1, q2, 1.0 / c)
}

fn render_wall(out: &mut String, canvas: &Canvas, wall: &Wall) {
    let (q1, q2, radius) = wall_arc(wall);
    let a = wall.a().to_f64().unwrap();
    let b = wall.b().to_f64().unwrap();
    let c = wall.c().to_f64().unwrap();
    let (x1, y1) = canvas.map(q1.0, q1.1);
    let (x2, y2) = canvas.map(q2.0, q2.1);
    let r_px = radius * canvas.scale;
    // Pick the arc on the origin side of the chord. A positive cross product
    // means the minor arc runs counter-clockwise in disk coordinates, which
    // is sweep flag 0 once the y axis is flipped.
    let center = (a / c, b / c);
    let cross = (q1.0 - center.0) * (q2.1 - center.1) - (q1.1 - center.1) * (q2.0 - center.0);
    let sweep = if cross > 0.0 { 0 } else { 1 };
    let _ = writeln!(
        out,
        r##"  <path class="wall-arc" d="M {} {} A {} {} 0 0 {} {} {}" fill="none" stroke="#3366aa" stroke-width="1"/>"##,
        f(x1),
        f(y1),
        f(r_px),
        f(r_px),
        sweep,
        f(x2),
        f(y2)
    );
    // Label at the arc point closest to the origin.
    let norm = (a * a + b * b).sqrt();
    let mid = (center.0 - a / (c * norm), center.1 - b / (c * norm));
    let (lx, ly) = canvas.map(mid.0, mid.1);
    let _ = writeln!(
        out,
        r##"  <text class="wall-label" x="{}" y="{}" font-size="9" fill="#3366aa">{}</text>"##,
        f(lx),
        f(ly),
        escape(&wall.label())
    );
}

fn render_point_marker(out: &mut String, canvas: &Canvas, label: &str, u: f64, v: f64) {
    let (x, y) = canvas.map(u, v);
    let _ = writeln!(
        out,
        r##"  <circle class="point-marker" cx="{}" cy="{}" r="4" fill="#cc3333"/>"##,
        f(x),
        f(y)
    );
    let _ = writeln!(
        out,
        r##"  <text class="point-label" x="{}" y="{}" font-size="11" fill="#cc3333">{}</text>"##,
        f(x + 6.0),
        f(y - 6.0),
        escape(label)
    );
}

fn render_path(
    out: &mut String,
    canvas: &Canvas,
    p0: &ChamberPoint,
    p1: &ChamberPoint,
) -> Result<()> {
    let (kx0, ky0) = p0.klein();
    let (kx1, ky1) = p1.klein();
    let (kx0, ky0) = (ratio_f64(&kx0), ratio_f64(&ky0));
    let (kx1, ky1) = (ratio_f64(&kx1), ratio_f64(&ky1));
    let mut d = String::new();
    let steps = 32;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let kx = kx0 + t * (kx1 - kx0);
        let ky = ky0 + t * (ky1 - ky0);
        let (u, v) = klein_to_poincare(kx, ky);
        let (x, y) = canvas.map(u, v);
        let _ = write!(d, "{}{} {}", if i == 0 { "M " } else { " L " }, f(x), f(y));
    }
    let _ = writeln!(
        out,
        r##"  <path class="path" d="{d}" fill="none" stroke="#333333" stroke-width="1.5" stroke-dasharray="4 3"/>"##
    );
    for crossing in segment_crossings_oracle(p0, p1, HomologyOrientation::Standard)? {
        let t = ratio_f64(&crossing.t);
        let kx = kx0 + t * (kx1 - kx0);
        let ky = ky0 + t * (ky1 - ky0);
        let (u, v) = klein_to_poincare(kx, ky);
        let (x, y) = canvas.map(u, v);
        let _ = writeln!(
            out,
            r##"  <circle class="crossing-marker" cx="{}" cy="{}" r="3" fill="none" stroke="#d99000" stroke-width="1.5"/>"##,
            f(x),
            f(y)
        );
    }
    Ok(())
}

/// Renders the figure as a standalone SVG document.
pub fn render_figure(spec: &FigureSpec) -> Result<String> {
    let canvas = Canvas {
        cx: spec.width as f64 / 2.0,
        cy: spec.height as f64 / 2.0,
        scale: spec.disk_radius as f64,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        out,
        r##"  <circle class="disk-boundary" cx="{}" cy="{}" r="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        f(canvas.cx),
        f(canvas.cy),
        f(canvas.scale)
    );
    for wall in enumerate_walls(&spec.wall_c_max) {
        render_wall(&mut out, &canvas, &wall);
    }

    let isometries: Vec<Isometry> = spec
        .words
        .iter()
        .map(|word| Isometry::from_word(word))
        .collect::<Result<_>>()?;

    for (label, u, v) in &spec.points {
        let p0 = ChamberPoint::from_poincare(u, v).map_err(|e| match e {
            Error::OutsideDisk { .. } => Error::OutsideDisk {
                u: u.to_string(),
                v: v.to_string(),
            },
            other => other,
        })?;
        for (j, iso) in isometries.iter().enumerate() {
            let image = p0.transformed(iso)?;
            if image == p0 {
                continue;
            }
            render_path(&mut out, &canvas, &p0, &image)?;
            let (iu, iv) = image.poincare();
            let image_label = if isometries.len() == 1 {
                format!("{label}'")
            } else {
                format!("{label}'({})", j + 1)
            };
            render_point_marker(
                &mut out,
                &canvas,
                &image_label,
                ratio_f64(&iu),
                ratio_f64(&iv),
            );
        }
        render_point_marker(&mut out, &canvas, label, ratio_f64(u), ratio_f64(v));
    }
    out.push_str("</svg>\n");
    Ok(out)
}
