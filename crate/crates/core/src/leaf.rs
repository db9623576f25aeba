//! Generalized hypercycles (leaves) orthogonal to a canonical transversal.
//!
//! A leaf is carried by a circle or a straight line and is tagged with its
//! boundary angle `beta` ("measured outside") and mean curvature
//! `h = −cos beta`. For circle carriers `cos beta = center.y / radius`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfplane::DEFAULT_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Horosphere,
    Hypersphere,
    TotallyGeodesic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LeafShape {
    Circle {
        center: (f64, f64),
        radius: f64,
    },
    /// `direction` is a unit vector pointing into the upper half-plane
    /// (or `(−1, 0)` for horizontal lines).
    Line {
        anchor: (f64, f64),
        direction: (f64, f64),
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Leaf {
    shape: LeafShape,
    beta: f64,
    h: f64,
    kind: LeafKind,
}

/// Where a leaf's carrier meets the ideal boundary. Infinite ends are the
/// `±∞` tokens `f64::NEG_INFINITY` / `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealEndpoints {
    pub a_minus: f64,
    pub a_plus: f64,
}

pub fn classify_leaf(beta: f64, tol: f64) -> LeafKind {
    if beta.abs() <= tol || (beta - PI).abs() <= tol {
        LeafKind::Horosphere
    } else if (beta - FRAC_PI_2).abs() <= tol {
        LeafKind::TotallyGeodesic
    } else {
        LeafKind::Hypersphere
    }
}

pub fn mean_curvature_from_angle(beta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&beta) {
        return Err(Error::domain("beta", beta, "0 <= beta <= pi"));
    }
    Ok(-beta.cos())
}

pub fn angle_from_mean_curvature(h: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&h) {
        return Err(Error::domain("mean curvature", h, "|h| <= 1"));
    }
    Ok((-h).acos())
}

/// Signed distance `δ` of a `beta`-hypersphere from its totally geodesic
/// core: `cos β = tanh δ`, equivalently `cot β = sinh δ`.
///
/// Evaluated as `ln cot(β/2)`, which keeps `sinh δ` relatively accurate
/// close to the horosphere ends.
pub fn equidistant_offset(beta: f64) -> Result<f64> {
    if beta == 0.0 || beta == PI {
        return Err(Error::InfiniteOffset { beta });
    }
    if !(beta > 0.0 && beta < PI) {
        return Err(Error::domain("beta", beta, "0 < beta < pi"));
    }
    Ok(-(0.5 * beta).tan().ln())
}

impl Leaf {
    pub fn shape(&self) -> &LeafShape {
        &self.shape
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn kind(&self) -> LeafKind {
        self.kind
    }

    fn with_beta(shape: LeafShape, beta: f64) -> Leaf {
        Leaf {
            shape,
            beta,
            h: -beta.cos(),
            kind: classify_leaf(beta, DEFAULT_TOL),
        }
    }

    /// Leaf carried by a circle; `beta` is read off the geometry.
    /// Metric circles (entirely inside the half-plane) and circles that
    /// miss the half-plane are rejected.
    pub fn from_circle(center: (f64, f64), radius: f64) -> Result<Leaf> {
        if !(radius > 0.0 && radius.is_finite()) || !center.0.is_finite() || !center.1.is_finite() {
            return Err(Error::NotALeaf("circle needs finite center and radius > 0"));
        }
        let ratio = center.1 / radius;
        if ratio > 1.0 + DEFAULT_TOL {
            return Err(Error::NotALeaf("metric circle inside the half-plane"));
        }
        if ratio <= -1.0 + DEFAULT_TOL {
            return Err(Error::NotALeaf("circle does not reach the half-plane"));
        }
        let beta = ratio.clamp(-1.0, 1.0).acos();
        Ok(Leaf::with_beta(LeafShape::Circle { center, radius }, beta))
    }

    /// Leaf carried by a straight line through `anchor` along `direction`.
    pub fn from_line(anchor: (f64, f64), direction: (f64, f64)) -> Result<Leaf> {
        let n = direction.0.hypot(direction.1);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotALeaf("line direction must be nonzero"));
        }
        let (mut dx, mut dy) = (direction.0 / n, direction.1 / n);
        if dy < 0.0 || (dy == 0.0 && dx > 0.0) {
            dx = -dx;
            dy = -dy;
        }
        if dy == 0.0 && anchor.1 <= 0.0 {
            return Err(Error::NotALeaf(
                "horizontal line must lie above the boundary",
            ));
        }
        let beta = dy.atan2(dx);
        Ok(Leaf::with_beta(
            LeafShape::Line {
                anchor,
                direction: (dx, dy),
            },
            beta,
        ))
    }

    /// Signed distance-like residual of `p` from the carrier (zero on it).
    pub fn residual(&self, p: (f64, f64)) -> f64 {
        match self.shape {
            LeafShape::Circle { center, radius } => (p.0 - center.0).hypot(p.1 - center.1) - radius,
            LeafShape::Line { anchor, direction } => {
                cross(direction, (p.0 - anchor.0, p.1 - anchor.1))
            }
        }
    }

    /// Unit tangent of the carrier at a point on it.
    pub fn tangent_at(&self, p: (f64, f64)) -> (f64, f64) {
        match self.shape {
            LeafShape::Circle { center, .. } => {
                let (rx, ry) = (p.0 - center.0, p.1 - center.1);
                let n = rx.hypot(ry);
                (-ry / n, rx / n)
            }
            LeafShape::Line { direction, .. } => direction,
        }
    }

    /// Highest point of the carrier, if bounded.
    pub fn apex(&self) -> Option<(f64, f64)> {
        match self.shape {
            LeafShape::Circle { center, radius } => Some((center.0, center.1 + radius)),
            LeafShape::Line { .. } => None,
        }
    }

    /// The same leaf scaled about the origin by `lambda > 0` (a hyperbolic
    /// isometry fixing both ends of the canonical transversals).
    pub fn scaled(&self, lambda: f64) -> Leaf {
        let shape = match self.shape {
            LeafShape::Circle { center, radius } => LeafShape::Circle {
                center: (center.0 * lambda, center.1 * lambda),
                radius: radius * lambda,
            },
            LeafShape::Line { anchor, direction } => LeafShape::Line {
                anchor: (anchor.0 * lambda, anchor.1 * lambda),
                direction,
            },
        };
        Leaf { shape, ..*self }
    }
}

/// Leaf orthogonal to the imaginary axis at `(0, s)` with boundary angle
/// `beta`. `beta = π` is the horizontal line at height `s`.
pub fn leaf_orthogonal_to_geodesic(s: f64, beta: f64) -> Result<Leaf> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain("s", s, "s > 0"));
    }
    if !(-DEFAULT_TOL..=PI + DEFAULT_TOL).contains(&beta) {
        return Err(Error::domain("beta", beta, "0 <= beta <= pi"));
    }
    let beta = beta.clamp(0.0, PI);
    if beta >= PI - DEFAULT_TOL {
        return Ok(Leaf::with_beta(
            LeafShape::Line {
                anchor: (0.0, s),
                direction: (-1.0, 0.0),
            },
            PI,
        ));
    }
    // 1 + cos β = 2 cos²(β/2)
    let half = (0.5 * beta).cos();
    let radius = s / (2.0 * half * half);
    Ok(Leaf::with_beta(
        LeafShape::Circle {
            center: (0.0, s - radius),
            radius,
        },
        beta,
    ))
}

/// `sin φ + cos β` as a product, accurate where it vanishes.
#[inline]
fn sin_phi_plus_cos_beta(phi: f64, beta: f64) -> f64 {
    2.0 * (0.5 * (FRAC_PI_2 - phi + beta)).cos() * (0.5 * (FRAC_PI_2 - phi - beta)).cos()
}

fn check_hypercycle_angle(phi: f64, beta: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::domain("phi", phi, "0 < phi < pi/2"));
    }
    let (lo, hi) = (FRAC_PI_2 - phi, FRAC_PI_2 + phi);
    if !(beta >= lo - DEFAULT_TOL && beta <= hi + DEFAULT_TOL) {
        return Err(Error::domain(
            "beta",
            beta,
            "|cos beta| <= sin phi, i.e. pi/2 - phi <= beta <= pi/2 + phi",
        ));
    }
    Ok(beta.clamp(lo, hi))
}

/// Leaf orthogonal to the ray at angle `phi` at the point `s·e^{iφ}`.
/// `beta = π/2 + φ` is the straight line perpendicular to the ray.
pub fn leaf_orthogonal_to_hypercycle(phi: f64, s: f64, beta: f64) -> Result<Leaf> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain("s", s, "s > 0"));
    }
    let beta = check_hypercycle_angle(phi, beta)?;
    let (sin_phi, cos_phi) = phi.sin_cos();
    if beta >= FRAC_PI_2 + phi - DEFAULT_TOL {
        return Ok(Leaf::with_beta(
            LeafShape::Line {
                anchor: (s * cos_phi, s * sin_phi),
                direction: (-sin_phi, cos_phi),
            },
            FRAC_PI_2 + phi,
        ));
    }
    let radius = s * sin_phi / sin_phi_plus_cos_beta(phi, beta);
    let c = s - radius;
    Ok(Leaf::with_beta(
        LeafShape::Circle {
            center: (c * cos_phi, c * sin_phi),
            radius,
        },
        beta,
    ))
}

pub fn ideal_endpoints(leaf: &Leaf) -> Result<IdealEndpoints> {
    match leaf.shape {
        LeafShape::Circle { center, radius } => {
            let (cx, cy) = center;
            let disc = (radius - cy) * (radius + cy);
            if disc < -DEFAULT_TOL * radius * radius {
                return Err(Error::NotALeaf("circle does not meet the ideal boundary"));
            }
            let w = disc.max(0.0).sqrt();
            Ok(IdealEndpoints {
                a_minus: cx - w,
                a_plus: cx + w,
            })
        }
        LeafShape::Line { anchor, direction } => {
            let (dx, dy) = direction;
            if dy == 0.0 {
                return Ok(IdealEndpoints {
                    a_minus: f64::NEG_INFINITY,
                    a_plus: f64::INFINITY,
                });
            }
            let x0 = anchor.0 - anchor.1 * dx / dy;
            if dx < 0.0 {
                Ok(IdealEndpoints {
                    a_minus: f64::NEG_INFINITY,
                    a_plus: x0,
                })
            } else {
                Ok(IdealEndpoints {
                    a_minus: x0,
                    a_plus: f64::INFINITY,
                })
            }
        }
    }
}

fn check_order(s1: f64, s2: f64) -> Result<()> {
    if !(s1 > 0.0 && s1 < s2 && s2.is_finite()) {
        return Err(Error::domain("s2", s2, "0 < s1 < s2"));
    }
    Ok(())
}

/// Signed margin `s₂/s₁ − cot(β₂/2)/cot(β₁/2)` of the geodesic
/// disjointness criterion. Non-negative iff the two leaves do not meet in
/// the upper half-plane.
///
/// Horizontal lines (`β = π`) follow the limiting rules: a line is
/// disjoint from every earlier leaf, and only a line may follow a line.
pub fn geodesic_lemma_slack(s1: f64, beta1: f64, s2: f64, beta2: f64) -> Result<f64> {
    check_order(s1, s2)?;
    for b in [beta1, beta2] {
        if !(0.0..=PI).contains(&b) {
            return Err(Error::domain("beta", b, "0 <= beta <= pi"));
        }
    }
    let line1 = beta1 >= PI - DEFAULT_TOL;
    let line2 = beta2 >= PI - DEFAULT_TOL;
    let ratio = match (line1, line2) {
        (_, true) => 0.0,
        (true, false) => f64::INFINITY,
        (false, false) => {
            // cot(β₂/2)/cot(β₁/2) = tan(β₁/2)/tan(β₂/2)
            let t1 = (0.5 * beta1).tan();
            let t2 = (0.5 * beta2).tan();
            if t1 == 0.0 {
                0.0
            } else if t2 == 0.0 {
                f64::INFINITY
            } else {
                t1 / t2
            }
        }
    };
    Ok(s2 / s1 - ratio)
}

pub fn disjoint_geodesic(s1: f64, beta1: f64, s2: f64, beta2: f64) -> Result<bool> {
    Ok(geodesic_lemma_slack(s1, beta1, s2, beta2)? >= 0.0)
}

/// `(sin φ + cos β)/(−cos(φ + β))`: positive on the open admissible
/// interval, `+∞` at `π/2 − φ` and zero at the line angle `π/2 + φ`.
fn hypercycle_gauge(phi: f64, beta: f64) -> f64 {
    if beta <= FRAC_PI_2 - phi + DEFAULT_TOL {
        return f64::INFINITY;
    }
    if beta >= FRAC_PI_2 + phi - DEFAULT_TOL {
        return 0.0;
    }
    sin_phi_plus_cos_beta(phi, beta) / -(phi + beta).cos()
}

/// Signed margin of the hypercycle disjointness criterion,
/// `s₂/s₁ − g(β₂)/g(β₁)` with `g(β) = (sin φ + cos β)/(−cos(φ + β))`.
///
/// This is the left-endpoint comparison `a₂₋ ≤ a₁₋`, since
/// `a₋ = −s/g(β)`. Boundary angles follow the limiting rules: circles
/// through the origin may only be preceded by the same, lines may only be
/// followed by lines.
pub fn hypercycle_lemma_slack(phi: f64, s1: f64, beta1: f64, s2: f64, beta2: f64) -> Result<f64> {
    check_order(s1, s2)?;
    let beta1 = check_hypercycle_angle(phi, beta1)?;
    let beta2 = check_hypercycle_angle(phi, beta2)?;
    let g1 = hypercycle_gauge(phi, beta1);
    let g2 = hypercycle_gauge(phi, beta2);
    let ratio = if g2 == 0.0 || g1 == f64::INFINITY {
        0.0
    } else if g1 == 0.0 || g2 == f64::INFINITY {
        f64::INFINITY
    } else {
        g2 / g1
    };
    Ok(s2 / s1 - ratio)
}

pub fn disjoint_hypercycle(phi: f64, s1: f64, beta1: f64, s2: f64, beta2: f64) -> Result<bool> {
    Ok(hypercycle_lemma_slack(phi, s1, beta1, s2, beta2)? >= 0.0)
}

/// How two carriers meet inside the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "contact", rename_all = "snake_case")]
pub enum Contact {
    Disjoint,
    Tangent { point: (f64, f64) },
    Transverse { point: (f64, f64) },
    Coincident,
}

impl Contact {
    pub fn intersects(&self) -> bool {
        matches!(self, Contact::Transverse { .. } | Contact::Coincident)
    }
}

#[inline]
fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

#[inline]
fn dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

fn pick_high(points: &[(f64, f64)], tol: f64) -> Option<(f64, f64)> {
    points
        .iter()
        .copied()
        .filter(|p| p.1 > tol)
        .max_by(|a, b| a.1.total_cmp(&b.1))
}

fn circle_circle(c1: (f64, f64), r1: f64, c2: (f64, f64), r2: f64, tol: f64) -> Contact {
    let scale = tol * r1.max(r2).max(1.0);
    let (dx, dy) = (c2.0 - c1.0, c2.1 - c1.1);
    let d = dx.hypot(dy);
    let (sum, diff) = (r1 + r2, (r1 - r2).abs());
    if d <= scale && diff <= scale {
        return Contact::Coincident;
    }
    if d > sum + scale || d < diff - scale {
        return Contact::Disjoint;
    }
    let u = (dx / d, dy / d);
    if (d - sum).abs() <= scale || (d - diff).abs() <= scale {
        let sign = if (d - sum).abs() <= scale || r1 > r2 {
            1.0
        } else {
            -1.0
        };
        let p = (c1.0 + sign * r1 * u.0, c1.1 + sign * r1 * u.1);
        return if p.1 > tol {
            Contact::Tangent { point: p }
        } else {
            Contact::Disjoint
        };
    }
    // radical line
    let a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let w = (r1 * r1 - a * a).max(0.0).sqrt();
    let base = (c1.0 + a * u.0, c1.1 + a * u.1);
    let pts = [
        (base.0 - w * u.1, base.1 + w * u.0),
        (base.0 + w * u.1, base.1 - w * u.0),
    ];
    match pick_high(&pts, tol) {
        Some(point) => Contact::Transverse { point },
        None => Contact::Disjoint,
    }
}

fn circle_line(c: (f64, f64), r: f64, anchor: (f64, f64), v: (f64, f64), tol: f64) -> Contact {
    let scale = tol * r.max(1.0);
    let rel = (c.0 - anchor.0, c.1 - anchor.1);
    let along = dot(rel, v);
    let foot = (anchor.0 + along * v.0, anchor.1 + along * v.1);
    let dist = cross(v, rel).abs();
    if dist > r + scale {
        return Contact::Disjoint;
    }
    if (dist - r).abs() <= scale {
        return if foot.1 > tol {
            Contact::Tangent { point: foot }
        } else {
            Contact::Disjoint
        };
    }
    let w = ((r - dist) * (r + dist)).max(0.0).sqrt();
    let pts = [
        (foot.0 + w * v.0, foot.1 + w * v.1),
        (foot.0 - w * v.0, foot.1 - w * v.1),
    ];
    match pick_high(&pts, tol) {
        Some(point) => Contact::Transverse { point },
        None => Contact::Disjoint,
    }
}

fn line_line(p1: (f64, f64), v1: (f64, f64), p2: (f64, f64), v2: (f64, f64), tol: f64) -> Contact {
    let rel = (p2.0 - p1.0, p2.1 - p1.1);
    let det = cross(v1, v2);
    if det.abs() <= tol {
        return if cross(v1, rel).abs() <= tol {
            Contact::Coincident
        } else {
            Contact::Disjoint
        };
    }
    let t = cross(rel, v2) / det;
    let p = (p1.0 + t * v1.0, p1.1 + t * v1.1);
    if p.1 > tol {
        Contact::Transverse { point: p }
    } else {
        Contact::Disjoint
    }
}

/// Brute-force contact classification of two leaf carriers, independent of
/// the closed-form disjointness criteria.
pub fn contact(l1: &Leaf, l2: &Leaf, tol: f64) -> Contact {
    use LeafShape::*;
    match (l1.shape, l2.shape) {
        (
            Circle {
                center: c1,
                radius: r1,
            },
            Circle {
                center: c2,
                radius: r2,
            },
        ) => circle_circle(c1, r1, c2, r2, tol),
        (Circle { center, radius }, Line { anchor, direction })
        | (Line { anchor, direction }, Circle { center, radius }) => {
            circle_line(center, radius, anchor, direction, tol)
        }
        (
            Line {
                anchor: p1,
                direction: v1,
            },
            Line {
                anchor: p2,
                direction: v2,
            },
        ) => line_line(p1, v1, p2, v2, tol),
    }
}

/// True iff the carriers share a point with `y > tol` transversally (or
/// coincide). Tangencies do not count; see [`contact`].
pub fn intersects_upper_halfplane(l1: &Leaf, l2: &Leaf) -> bool {
    contact(l1, l2, DEFAULT_TOL).intersects()
}
