//! Primitive geometry of the upper half-plane model.
//!
//! Everything lives in the two-dimensional cross-section `{(x, y) : y > 0}`
//! with metric `|dz|² / y²`. Boundary points are a separate [`IdealPoint`]
//! role and never appear as [`HPoint`]s.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for geometric coincidence.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Inverse hyperbolic tangent, `ln √((1+t)/(1−t))`, on the open interval (−1, 1).
pub fn ath(t: f64) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::domain("ath", t, "|t| < 1"));
    }
    Ok(ath_unchecked(t))
}

/// `ath` without the domain check; `1 + 2t/(1−t)` keeps the log argument
/// accurate near the origin.
#[inline]
pub(crate) fn ath_unchecked(t: f64) -> f64 {
    0.5 * (2.0 * t / (1.0 - t)).ln_1p()
}

/// A point of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::domain("HPoint.x", x, "finite"));
        }
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::domain("HPoint.y", y, "finite and > 0"));
        }
        Ok(HPoint { x, y })
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Euclidean distance in the model, used by reconstruction checks.
    pub fn euclid(&self, other: &HPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A point of the ideal boundary: the real axis plus one point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

/// Hyperbolic distance.
///
/// Evaluated as `2 ath r` with `r = |z−w| / |z−w̄|`. The complement `1 − r`
/// is formed from `4 y_z y_w / |z−w̄|²` rather than by subtraction, so the
/// result keeps full relative accuracy for far-apart points.
pub fn hyperbolic_distance(p: HPoint, q: HPoint) -> f64 {
    let dx = p.x - q.x;
    let near = dx * dx + (p.y - q.y) * (p.y - q.y);
    let far = dx * dx + (p.y + q.y) * (p.y + q.y);
    let r = (near / far).sqrt();
    // 1 - r² = 4 y_p y_q / far, hence (1 + r)/(1 - r) = (1 + r)² far / (4 y_p y_q).
    let one_minus_r = 4.0 * p.y * q.y / far / (1.0 + r);
    ((1.0 + r) / one_minus_r).ln()
}

/// Canonical transversal curves through the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Transversal {
    /// The positive imaginary half-axis, oriented up.
    Geodesic,
    /// The open ray at angle `phi` from the origin, `phi ∈ (0, π/2)`.
    Hypercycle { phi: f64 },
    /// The horizontal line at the given height.
    Horocycle { height: f64 },
}

impl Transversal {
    pub fn hypercycle(phi: f64) -> Result<Self> {
        let t = Transversal::Hypercycle { phi };
        t.validate()?;
        Ok(t)
    }

    pub fn horocycle(height: f64) -> Result<Self> {
        let t = Transversal::Horocycle { height };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Transversal::Geodesic => Ok(()),
            Transversal::Hypercycle { phi } => {
                if phi > 0.0 && phi < FRAC_PI_2 {
                    Ok(())
                } else {
                    Err(Error::domain("hypercycle phi", phi, "0 < phi < pi/2"))
                }
            }
            Transversal::Horocycle { height } => {
                if height > 0.0 && height.is_finite() {
                    Ok(())
                } else {
                    Err(Error::domain("horocycle height", height, "height > 0"))
                }
            }
        }
    }

    /// Angle parameter of the transversal; `π/2` for the geodesic.
    pub fn phi(&self) -> Option<f64> {
        match *self {
            Transversal::Geodesic => Some(FRAC_PI_2),
            Transversal::Hypercycle { phi } => Some(phi),
            Transversal::Horocycle { .. } => None,
        }
    }

    /// Largest admissible |h| of an orthogonal leaf family.
    pub fn bound(&self) -> f64 {
        match *self {
            Transversal::Geodesic => 1.0,
            Transversal::Hypercycle { phi } => phi.sin(),
            Transversal::Horocycle { .. } => 0.0,
        }
    }

    /// Geodesic curvature of the transversal itself, `|cos φ|`.
    pub fn geodesic_curvature(&self) -> f64 {
        match *self {
            Transversal::Geodesic => 0.0,
            Transversal::Hypercycle { phi } => phi.cos().abs(),
            Transversal::Horocycle { .. } => 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Transversal::Geodesic => "geodesic",
            Transversal::Hypercycle { .. } => "hypercycle",
            Transversal::Horocycle { .. } => "horocycle",
        }
    }

    /// Unit Euclidean tangent of the transversal at arc length `t`.
    pub fn tangent(&self, _t: f64) -> (f64, f64) {
        match *self {
            Transversal::Geodesic => (0.0, 1.0),
            Transversal::Hypercycle { phi } => (phi.cos(), phi.sin()),
            Transversal::Horocycle { .. } => (1.0, 0.0),
        }
    }
}

/// Unit-speed parametrization of a canonical transversal.
///
/// Geodesic: `(0, eᵗ)`. Hypercycle: `e^{t sin φ}(cos φ, sin φ)`.
/// Horocycle at height `a`: `(a t, a)`; the horizontal factor `a` makes the
/// curve unit-speed for every height.
pub fn arc_length_point(transversal: &Transversal, t: f64) -> Result<HPoint> {
    transversal.validate()?;
    match *transversal {
        Transversal::Geodesic => HPoint::new(0.0, t.exp()),
        Transversal::Hypercycle { phi } => {
            let r = (t * phi.sin()).exp();
            HPoint::new(r * phi.cos(), r * phi.sin())
        }
        Transversal::Horocycle { height } => HPoint::new(height * t, height),
    }
}

/// Real fractional-linear map `z ↦ (a z + b)/(c z + d)`, normalized to
/// `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::domain("Mobius determinant", det, "ad - bc > 0"));
        }
        let k = det.sqrt().recip();
        Ok(MobiusMap {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn translation(dx: f64) -> Self {
        MobiusMap {
            a: 1.0,
            b: dx,
            c: 0.0,
            d: 1.0,
        }
    }

    /// `z ↦ λ z`.
    pub fn scaling(lambda: f64) -> Result<Self> {
        MobiusMap::new(lambda, 0.0, 0.0, 1.0)
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Image of an interior point. Interior points never reach the ideal
    /// boundary under a real map with positive determinant.
    pub fn apply(&self, p: HPoint) -> HPoint {
        let (x, y) = (p.x, p.y);
        // (a z + b)/(c z + d) with z = x + i y
        let den_re = self.c * x + self.d;
        let den_im = self.c * y;
        let den = den_re * den_re + den_im * den_im;
        let num_re = self.a * x + self.b;
        let num_im = self.a * y;
        let re = (num_re * den_re + num_im * den_im) / den;
        // Im = (ad - bc) y / |cz + d|² with ad - bc = 1
        let im = y / den;
        HPoint { x: re, y: im }
    }

    pub fn apply_ideal(&self, q: IdealPoint) -> IdealPoint {
        match q {
            IdealPoint::Infinity => {
                if self.c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(self.a / self.c)
                }
            }
            IdealPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }
}

/// Applies a map to an interior point.
pub fn apply_isometry(m: &MobiusMap, p: HPoint) -> HPoint {
    m.apply(p)
}

/// A geodesic, hypercycle or horocycle in general position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSpec {
    /// Oriented from `from` to `to`.
    Geodesic { from: IdealPoint, to: IdealPoint },
    /// The curve with ideal ends `from`, `to` whose image under the
    /// endpoint normalization is the ray at angle `signed_phi` (positive)
    /// or `π + signed_phi` (negative), `0 < |signed_phi| < π/2`.
    Hypercycle {
        from: IdealPoint,
        to: IdealPoint,
        signed_phi: f64,
    },
    /// Horocycle touching the boundary at `at`; `size` is the Euclidean
    /// height of the line (`at = ∞`) or the diameter of the circle.
    Horocycle { at: IdealPoint, size: f64 },
}

/// Output of [`canonical_isometry`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub map: MobiusMap,
    pub target: Transversal,
    /// The curve's own orientation is opposite to the target's.
    pub reversed: bool,
}

/// Sends `from ↦ 0` and `to ↦ ∞`. For finite endpoints the apex of the
/// geodesic semicircle lands on `i`.
fn endpoint_map(from: IdealPoint, to: IdealPoint) -> Result<MobiusMap> {
    match (from, to) {
        (IdealPoint::Infinity, IdealPoint::Infinity) => {
            Err(Error::Degenerate("coincident ideal endpoints"))
        }
        (IdealPoint::Finite(u), IdealPoint::Finite(v)) => {
            if u == v {
                return Err(Error::Degenerate("coincident ideal endpoints"));
            }
            if u > v {
                // (z − u)/(z − v), det = u − v
                MobiusMap::new(1.0, -u, 1.0, -v)
            } else {
                // (u − z)/(z − v), det = v − u
                MobiusMap::new(-1.0, u, 1.0, -v)
            }
        }
        (IdealPoint::Finite(u), IdealPoint::Infinity) => Ok(MobiusMap::translation(-u)),
        // −1/(z − v)
        (IdealPoint::Infinity, IdealPoint::Finite(v)) => MobiusMap::new(0.0, -1.0, 1.0, -v),
    }
}

/// An orientation-preserving isometry carrying the described curve onto
/// the canonical transversal of the same kind.
pub fn canonical_isometry(spec: &CurveSpec) -> Result<Normalization> {
    match *spec {
        CurveSpec::Geodesic { from, to } => Ok(Normalization {
            map: endpoint_map(from, to)?,
            target: Transversal::Geodesic,
            reversed: false,
        }),
        CurveSpec::Hypercycle {
            from,
            to,
            signed_phi,
        } => {
            if !(signed_phi.abs() > 0.0 && signed_phi.abs() < FRAC_PI_2) {
                return Err(Error::domain(
                    "hypercycle signed_phi",
                    signed_phi,
                    "0 < |phi| < pi/2",
                ));
            }
            let base = endpoint_map(from, to)?;
            if signed_phi > 0.0 {
                Ok(Normalization {
                    map: base,
                    target: Transversal::Hypercycle { phi: signed_phi },
                    reversed: false,
                })
            } else {
                // z ↦ −1/z sends the ray at π − φ onto the ray at φ and
                // swaps its ends.
                let flip = MobiusMap::new(0.0, -1.0, 1.0, 0.0)?;
                Ok(Normalization {
                    map: flip.compose(&base),
                    target: Transversal::Hypercycle { phi: -signed_phi },
                    reversed: true,
                })
            }
        }
        CurveSpec::Horocycle { at, size } => {
            if !(size > 0.0 && size.is_finite()) {
                return Err(Error::domain("horocycle size", size, "size > 0"));
            }
            let map = match at {
                IdealPoint::Infinity => MobiusMap::scaling(size.recip())?,
                // −D/(z − p): the circle of diameter D tangent at p becomes
                // the line at height 1.
                IdealPoint::Finite(p) => MobiusMap::new(0.0, -size, 1.0, -p)?,
            };
            Ok(Normalization {
                map,
                target: Transversal::Horocycle { height: 1.0 },
                reversed: false,
            })
        }
    }
}
