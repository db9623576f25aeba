//! Deterministic SVG figures of leaf families.
//!
//! Model coordinates map to pixels by a fixed affine map per [`Viewport`].
//! Circle leaves are drawn as two elliptical arcs from the left ideal
//! endpoint over the apex to the right one, so boundary contact is exact
//! rather than raster-clipped. Line leaves are clipped analytically to the
//! viewport.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::foliation::{FoliationSlice, PlacedLeaf};
use crate::halfplane::Transversal;
use crate::leaf::{ideal_endpoints, LeafShape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_max: f64,
    pub width_px: u32,
    pub height_px: u32,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_max: f64, width_px: u32, height_px: u32) -> Result<Self> {
        let vp = Viewport {
            x_min,
            x_max,
            y_max,
            width_px,
            height_px,
        };
        vp.check()?;
        Ok(vp)
    }

    fn check(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_min < self.x_max) {
            return Err(Error::Invalid("viewport needs x_min < x_max".into()));
        }
        if !(self.y_max > 0.0 && self.y_max.is_finite()) {
            return Err(Error::Invalid("viewport needs y_max > 0".into()));
        }
        if self.width_px == 0 || self.height_px == 0 {
            return Err(Error::Invalid(
                "viewport needs a positive pixel size".into(),
            ));
        }
        Ok(())
    }

    fn sx(&self) -> f64 {
        self.width_px as f64 / (self.x_max - self.x_min)
    }

    fn sy(&self) -> f64 {
        self.height_px as f64 / self.y_max
    }

    /// Pixel image of a model point; the ideal boundary is the bottom edge.
    pub fn to_px(&self, p: (f64, f64)) -> (f64, f64) {
        (
            (p.0 - self.x_min) * self.sx(),
            self.height_px as f64 - p.1 * self.sy(),
        )
    }
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport {
            x_min: -4.0,
            x_max: 4.0,
            y_max: 4.0,
            width_px: 800,
            height_px: 400,
        }
    }
}

impl FromStr for Viewport {
    type Err = Error;

    /// `xmin,xmax,ymax,W,H`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::Invalid(format!(
                "viewport `{s}`: expected xmin,xmax,ymax,W,H"
            )));
        }
        let real = |i: usize| {
            parts[i]
                .parse::<f64>()
                .map_err(|e| Error::Invalid(format!("viewport field {}: {e}", i + 1)))
        };
        let px = |i: usize| {
            parts[i]
                .parse::<u32>()
                .map_err(|e| Error::Invalid(format!("viewport field {}: {e}", i + 1)))
        };
        Viewport::new(real(0)?, real(1)?, real(2)?, px(3)?, px(4)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub leaf_stroke: String,
    pub pinned_stroke: String,
    pub extension_stroke: String,
    pub transversal_stroke: String,
    pub stroke_width: f64,
    /// Dash boundary-valued leaves.
    pub dash_pinned: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            leaf_stroke: "#1f4e79".into(),
            pinned_stroke: "#8c2d04".into(),
            extension_stroke: "#7f7f7f".into(),
            transversal_stroke: "#c00000".into(),
            stroke_width: 1.0,
            dash_pinned: true,
        }
    }
}

/// Fixed three-decimal formatting without a negative zero.
fn f3(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Part of the line `p + u d` inside the viewport box `y ∈ [0, y_max]`,
/// restricted to `u ≥ u_min`.
fn clip_line(
    vp: &Viewport,
    p: (f64, f64),
    d: (f64, f64),
    u_min: f64,
) -> Option<((f64, f64), (f64, f64))> {
    let (mut lo, mut hi) = (u_min, f64::INFINITY);
    for (pc, dc, a, b) in [(p.0, d.0, vp.x_min, vp.x_max), (p.1, d.1, 0.0, vp.y_max)] {
        if dc == 0.0 {
            if pc < a || pc > b {
                return None;
            }
        } else {
            let (u1, u2) = ((a - pc) / dc, (b - pc) / dc);
            lo = lo.max(u1.min(u2));
            hi = hi.min(u1.max(u2));
        }
    }
    (lo <= hi && hi.is_finite()).then(|| {
        let at = |u: f64| (p.0 + u * d.0, p.1 + u * d.1);
        (at(lo), at(hi))
    })
}

fn segment_d(vp: &Viewport, seg: Option<((f64, f64), (f64, f64))>) -> String {
    match seg {
        Some((a, b)) => {
            let (a, b) = (vp.to_px(a), vp.to_px(b));
            format!("M {} {} L {} {}", f3(a.0), f3(a.1), f3(b.0), f3(b.1))
        }
        None => String::new(),
    }
}

fn leaf_d(vp: &Viewport, leaf: &PlacedLeaf) -> Result<String> {
    match *leaf.leaf.shape() {
        LeafShape::Circle { center, radius } => {
            let e = ideal_endpoints(&leaf.leaf)?;
            let left = vp.to_px((e.a_minus, 0.0));
            let top = vp.to_px((center.0, center.1 + radius));
            let right = vp.to_px((e.a_plus, 0.0));
            let (rx, ry) = (f3(radius * vp.sx()), f3(radius * vp.sy()));
            Ok(format!(
                "M {} {} A {rx} {ry} 0 0 1 {} {} A {rx} {ry} 0 0 1 {} {}",
                f3(left.0),
                f3(left.1),
                f3(top.0),
                f3(top.1),
                f3(right.0),
                f3(right.1)
            ))
        }
        LeafShape::Line { anchor, direction } => Ok(segment_d(
            vp,
            clip_line(vp, anchor, direction, f64::NEG_INFINITY),
        )),
    }
}

fn transversal_d(vp: &Viewport, t: &Transversal) -> String {
    let seg = match *t {
        Transversal::Geodesic => clip_line(vp, (0.0, 0.0), (0.0, 1.0), 0.0),
        Transversal::Hypercycle { phi } => clip_line(vp, (0.0, 0.0), (phi.cos(), phi.sin()), 0.0),
        Transversal::Horocycle { height } => {
            clip_line(vp, (0.0, height), (1.0, 0.0), f64::NEG_INFINITY)
        }
    };
    segment_d(vp, seg)
}

/// SVG 1.1 document with one `path.leaf` per leaf (extension leaves
/// included) and one `path.transversal`.
pub fn render_svg(slice: &FoliationSlice, vp: &Viewport, style: &Style) -> Result<Vec<u8>> {
    vp.check()?;
    let (w, h) = (vp.width_px, vp.height_px);
    let sw = f3(style.stroke_width);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        r##"<rect class="frame" x="0" y="0" width="{w}" height="{h}" fill="#ffffff" stroke="#000000" stroke-width="{sw}"/>"##
    );
    let _ = writeln!(
        out,
        r##"<line class="boundary" x1="0" y1="{h}" x2="{w}" y2="{h}" stroke="#000000" stroke-width="{}"/>"##,
        f3(2.0 * style.stroke_width)
    );
    let _ = writeln!(out, r#"<g class="leaves" fill="none">"#);
    let tagged = slice
        .leaves
        .iter()
        .map(|l| (l, false))
        .chain(slice.extension_leaves.iter().map(|l| (l, true)));
    for (leaf, extension) in tagged {
        let stroke = if extension {
            &style.extension_stroke
        } else if leaf.pinned {
            &style.pinned_stroke
        } else {
            &style.leaf_stroke
        };
        let dash = if leaf.pinned && style.dash_pinned {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<path class="leaf" data-t="{}" d="{}" stroke="{stroke}" stroke-width="{sw}"{dash}/>"#,
            f3(leaf.t),
            leaf_d(vp, leaf)?
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<path class="transversal" d="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        transversal_d(vp, &slice.transversal),
        style.transversal_stroke,
        f3(2.0 * style.stroke_width)
    );
    let _ = writeln!(out, "</svg>");
    Ok(out.into_bytes())
}
