//! SVG rendering of a quartic in the chart `z = 1` with its real bitangents.
//!
//! The curve is traced by marching squares on the sign of `f(x, y, 1)`;
//! edge crossings are refined by bisection. Bitangents are drawn as full
//! lines colored by their type relative to the line at infinity, which is
//! drawn dashed when it is not `V(z)` itself.

use std::fmt::Write as _;

use bitangent_core::arrangement::grates;
use bitangent_core::qtype::qtype_signs;
use bitangent_core::{BitangentSet, ProjLine, Quartic};
use bitangent_numeric::rat::rat_to_f64;
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_RESOLUTION: usize = 512;
pub const DEFAULT_WINDOW: Window = Window {
    x_min: -2.0,
    x_max: 2.0,
    y_min: -2.0,
    y_max: 2.0,
};
/// Side of the square canvas in SVG user units.
pub const CANVAS: f64 = 800.0;
pub const COLOR_PLUS: &str = "#d62728";
pub const COLOR_MINUS: &str = "#1f77b4";
const BISECTION_STEPS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    /// Parse `xmin,xmax,ymin,ymax`.
    pub fn parse(s: &str) -> Result<Window, CliError> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Input(format!("window {s:?}: {e}")))?;
        let [x_min, x_max, y_min, y_max] = v[..] else {
            return Err(CliError::Input(format!(
                "window {s:?}: expected xmin,xmax,ymin,ymax"
            )));
        };
        let w = Window {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        if !(v.iter().all(|x| x.is_finite()) && x_min < x_max && y_min < y_max) {
            return Err(CliError::Input(format!("window {s:?} is empty")));
        }
        Ok(w)
    }

    fn to_canvas(&self, p: [f64; 2]) -> [f64; 2] {
        [
            (p[0] - self.x_min) / (self.x_max - self.x_min) * CANVAS,
            (self.y_max - p[1]) / (self.y_max - self.y_min) * CANVAS,
        ]
    }

    /// The part of the segment `p + t (q - p)`, `t` in `[t0, t1]`, inside
    /// the window (Liang-Barsky).
    fn clip(&self, p: [f64; 2], q: [f64; 2], t0: f64, t1: f64) -> Option<[[f64; 2]; 2]> {
        let d = [q[0] - p[0], q[1] - p[1]];
        let (mut lo, mut hi) = (t0, t1);
        for (dk, lower, upper, pk) in [
            (d[0], self.x_min, self.x_max, p[0]),
            (d[1], self.y_min, self.y_max, p[1]),
        ] {
            if dk == 0.0 {
                if pk < lower || pk > upper {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lower - pk) / dk, (upper - pk) / dk);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
        (lo < hi).then(|| [0, 1].map(|k| [0, 1].map(|i| p[i] + [lo, hi][k] * d[i])))
    }

    /// Clip the affine line `a x + b y + c = 0` to the window.
    fn clip_line(&self, l: [f64; 3]) -> Option<[[f64; 2]; 2]> {
        let [a, b, c] = l;
        let n2 = a * a + b * b;
        if n2 == 0.0 {
            return None;
        }
        let p = [-a * c / n2, -b * c / n2];
        let q = [p[0] - b, p[1] + a];
        let reach = (self.x_max - self.x_min).abs()
            + (self.y_max - self.y_min).abs()
            + p[0].abs()
            + p[1].abs();
        let t = reach / n2.sqrt();
        self.clip(p, q, -t, t)
    }
}

/// Scalar field `f(x, y, 1)` in double precision.
struct Field {
    terms: Vec<(f64, [i32; 3])>,
}

impl Field {
    fn new(f: &Quartic) -> Field {
        let terms = bitangent_core::geometry::MONOMIALS
            .iter()
            .zip(f.coeffs())
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(e, c)| (rat_to_f64(c), [e[0] as i32, e[1] as i32, e[2] as i32]))
            .collect();
        Field { terms }
    }

    fn at(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * x.powi(e[0]) * y.powi(e[1]))
            .sum()
    }
}

/// Zero of the field on the segment `p -> q` where its sign changes.
fn edge_crossing(field: &Field, p: [f64; 2], q: [f64; 2], fp: f64) -> [f64; 2] {
    let (mut lo, mut hi) = (0.0, 1.0);
    let at = |t: f64| [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])];
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let m = at(mid);
        if (field.at(m[0], m[1]) > 0.0) == (fp > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// Segments approximating `f(x, y, 1) = 0` on a `resolution^2` grid.
pub fn march(f: &Quartic, window: &Window, resolution: usize) -> Vec<[[f64; 2]; 2]> {
    let field = Field::new(f);
    let n = resolution.max(1);
    let xs: Vec<f64> = (0..=n)
        .map(|i| window.x_min + (window.x_max - window.x_min) * i as f64 / n as f64)
        .collect();
    let ys: Vec<f64> = (0..=n)
        .map(|j| window.y_min + (window.y_max - window.y_min) * j as f64 / n as f64)
        .collect();
    let values: Vec<Vec<f64>> = ys
        .iter()
        .map(|&y| xs.iter().map(|&x| field.at(x, y)).collect())
        .collect();
    let mut segments = Vec::new();
    for j in 0..n {
        for i in 0..n {
            // Corners counterclockwise from the lower left.
            let corners = [
                ([xs[i], ys[j]], values[j][i]),
                ([xs[i + 1], ys[j]], values[j][i + 1]),
                ([xs[i + 1], ys[j + 1]], values[j + 1][i + 1]),
                ([xs[i], ys[j + 1]], values[j + 1][i]),
            ];
            let mut crossings = Vec::with_capacity(4);
            for k in 0..4 {
                let (p, fp) = corners[k];
                let (q, fq) = corners[(k + 1) % 4];
                if (fp > 0.0) != (fq > 0.0) {
                    crossings.push(edge_crossing(&field, p, q, fp));
                }
            }
            match crossings.len() {
                2 => segments.push([crossings[0], crossings[1]]),
                4 => {
                    // Saddle cell: pair crossings so that the segments
                    // separate the corners whose sign differs from the center.
                    let center = field.at(0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1]));
                    if (center > 0.0) == (corners[0].1 > 0.0) {
                        segments.push([crossings[0], crossings[1]]);
                        segments.push([crossings[2], crossings[3]]);
                    } else {
                        segments.push([crossings[3], crossings[0]]);
                        segments.push([crossings[1], crossings[2]]);
                    }
                }
                _ => {}
            }
        }
    }
    segments
}

#[derive(Clone, Debug, Serialize)]
pub struct PlotSummary {
    pub curve_segments: usize,
    pub lines_plus: usize,
    pub lines_minus: usize,
    pub lines_drawn: usize,
    pub grates_drawn: usize,
    pub line_at_infinity_drawn: bool,
}

/// Render the SVG document.
pub fn render(
    set: &BitangentSet,
    m: &ProjLine,
    window: &Window,
    resolution: usize,
    with_grates: bool,
) -> Result<(String, PlotSummary), CliError> {
    let segments = march(set.quartic(), window, resolution);
    let signs = qtype_signs(set, m)?;
    let fmt = |p: [f64; 2]| {
        let c = window.to_canvas(p);
        format!("{:.3},{:.3}", c[0], c[1])
    };

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let mut summary = PlotSummary {
        curve_segments: segments.len(),
        lines_plus: 0,
        lines_minus: 0,
        lines_drawn: 0,
        grates_drawn: 0,
        line_at_infinity_drawn: false,
    };

    writeln!(svg, r#"<g id="bitangents" stroke-width="1" fill="none">"#).unwrap();
    for (bt, sign) in set.bitangents().iter().zip(&signs) {
        let Some(sign) = sign else { continue };
        if *sign > 0 {
            summary.lines_plus += 1;
        } else {
            summary.lines_minus += 1;
        }
        let l = bt.line_approx().map(|c| c.re);
        if let Some([p, q]) = window.clip_line(l) {
            summary.lines_drawn += 1;
            let color = if *sign > 0 { COLOR_PLUS } else { COLOR_MINUS };
            writeln!(
                svg,
                r#"<path d="M{} L{}" stroke="{color}"/>"#,
                fmt(p),
                fmt(q)
            )
            .unwrap();
        }
    }
    writeln!(svg, "</g>").unwrap();

    if with_grates {
        writeln!(
            svg,
            r#"<g id="grates" stroke="black" stroke-width="2.5" fill="none">"#
        )
        .unwrap();
        for g in grates(set, m)? {
            for [p, q] in grate_pieces(&g.points, m, window) {
                summary.grates_drawn += 1;
                writeln!(svg, r#"<path d="M{} L{}"/>"#, fmt(p), fmt(q)).unwrap();
            }
        }
        writeln!(svg, "</g>").unwrap();
    }

    let ml = m.to_f64();
    if ml[0] != 0.0 || ml[1] != 0.0 {
        if let Some([p, q]) = window.clip_line(ml) {
            summary.line_at_infinity_drawn = true;
            writeln!(
                svg,
                r#"<path id="line-at-infinity" d="M{} L{}" stroke="black" stroke-width="1.5" stroke-dasharray="8,6" fill="none"/>"#,
                fmt(p),
                fmt(q)
            )
            .unwrap();
        }
    }

    writeln!(
        svg,
        r#"<g id="curve" stroke="black" stroke-width="2" fill="none">"#
    )
    .unwrap();
    if !segments.is_empty() {
        let mut d = String::new();
        for [p, q] in &segments {
            write!(d, "M{} L{} ", fmt(*p), fmt(*q)).unwrap();
        }
        writeln!(svg, r#"<path d="{}"/>"#, d.trim_end()).unwrap();
    }
    writeln!(svg, "</g>").unwrap();
    writeln!(svg, "</svg>").unwrap();
    Ok((svg, summary))
}

/// The grate between two tangency points is the segment of the bitangent
/// that does not meet `V(m)`. In the chart `z = 1` it is either the segment
/// between the points or its complement through infinity.
fn grate_pieces(
    points: &[[bitangent_numeric::RInterval; 3]; 2],
    m: &ProjLine,
    window: &Window,
) -> Vec<[[f64; 2]; 2]> {
    let ml = m.to_f64();
    let affine = |z: &[bitangent_numeric::RInterval; 3]| {
        let z = [z[0].mid_f64(), z[1].mid_f64(), z[2].mid_f64()];
        (z[2] != 0.0).then(|| [z[0] / z[2], z[1] / z[2]])
    };
    let (Some(p), Some(q)) = (affine(&points[0]), affine(&points[1])) else {
        return Vec::new();
    };
    let side = |a: [f64; 2]| ml[0] * a[0] + ml[1] * a[1] + ml[2];
    let far = 1e6;
    let pieces = if side(p) * side(q) > 0.0 {
        vec![window.clip(p, q, 0.0, 1.0)]
    } else {
        vec![window.clip(p, q, -far, 0.0), window.clip(p, q, 1.0, far)]
    };
    pieces.into_iter().flatten().collect()
}
