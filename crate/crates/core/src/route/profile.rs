//! Closed-form profile functions behind the route criteria.
//!
//! Along a `φ`-hypercycle a route `h` is admissible on its interior zone
//! iff `F(h(t))` is one-sided `sin φ`-Lipschitz, where
//!
//! ```text
//! F(h) = ln[(sin φ − h) / (h cos φ + √(1−h²) sin φ)]
//! ```
//!
//! The geodesic is the case `φ = π/2`, where `F = −ath`. The differential
//! form of the same condition is `h′ ≥ rhs_c1(φ, h)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::halfplane::ath_unchecked;

fn check_phi(phi: f64) -> Result<()> {
    if phi > 0.0 && phi <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::domain("phi", phi, "0 < phi <= pi/2"))
    }
}

/// `√(1 − h²)` without cancellation near `|h| = 1`.
#[inline]
fn cosine_of(h: f64) -> f64 {
    ((1.0 - h) * (1.0 + h)).max(0.0).sqrt()
}

/// The hypercycle profile `F`. Diverges to `−∞` at `h = sin φ` and to
/// `+∞` at `h = −sin φ`; both ends are reported as
/// [`Error::ProfileDivergence`].
pub fn profile_f(phi: f64, h: f64) -> Result<f64> {
    check_phi(phi)?;
    let (s, c) = phi.sin_cos();
    if h.abs() > s || h.is_nan() {
        return Err(Error::domain("h", h, "|h| <= sin phi"));
    }
    if h == s {
        return Err(Error::ProfileDivergence {
            h,
            toward: f64::NEG_INFINITY,
        });
    }
    if h == -s {
        return Err(Error::ProfileDivergence {
            h,
            toward: f64::INFINITY,
        });
    }
    Ok(profile_f_unchecked(s, c, h))
}

#[inline]
pub(crate) fn profile_f_unchecked(s: f64, c: f64, h: f64) -> f64 {
    ((s - h) / (h * c + cosine_of(h) * s)).ln()
}

/// `dF/dh`, strictly negative on the open interval.
pub fn profile_slope(phi: f64, h: f64) -> Result<f64> {
    check_phi(phi)?;
    let (s, c) = phi.sin_cos();
    if !(h.abs() < s) {
        return Err(Error::domain("h", h, "|h| < sin phi"));
    }
    let w = cosine_of(h);
    let den = h * c + w * s;
    let dden = c - h * s / w;
    Ok(-1.0 / (s - h) - dden / den)
}

/// Inverse of [`profile_f`]: the unique `h ∈ (−sin φ, sin φ)` with
/// `F(h) = value`.
///
/// With `u = e^value` and `ψ = β + φ` the defining equation reduces to
/// `(cos φ + u) cos ψ + sin φ sin ψ = −sin φ`, solved by
/// `ψ = atan2(sin φ, cos φ + u) + acos(−sin φ / ρ)`.
pub fn profile_inverse(phi: f64, value: f64) -> Result<f64> {
    check_phi(phi)?;
    if value.is_nan() {
        return Err(Error::domain("profile value", value, "not NaN"));
    }
    if phi == FRAC_PI_2 {
        return Ok(-value.tanh());
    }
    let (s, c) = phi.sin_cos();
    if value == f64::INFINITY {
        return Ok(-s);
    }
    if value == f64::NEG_INFINITY {
        return Ok(s);
    }
    let u = value.exp();
    let a = c + u;
    let rho = a.hypot(s);
    let psi = s.atan2(a) + (-s / rho).acos();
    let beta = psi - phi;
    Ok((-beta.cos()).clamp(-s, s))
}

/// Right-hand side of the differential criterion `h′ ≥ rhs_c1(φ, h)`:
///
/// ```text
/// (h − sin φ)(h cos φ + √(1−h²) sin φ) √(1−h²) / (1 − h sin φ + √(1−h²) cos φ)
/// ```
///
/// Reduces to `h² − 1` at `φ = π/2`.
pub fn rhs_c1(phi: f64, h: f64) -> Result<f64> {
    check_phi(phi)?;
    let (s, c) = phi.sin_cos();
    if h.abs() > s || h.is_nan() {
        return Err(Error::domain("h", h, "|h| <= sin phi"));
    }
    Ok(rhs_c1_unchecked(s, c, h))
}

#[inline]
pub(crate) fn rhs_c1_unchecked(s: f64, c: f64, h: f64) -> f64 {
    let w = cosine_of(h);
    (h - s) * (h * c + w * s) * w / (1.0 - h * s + w * c)
}

/// The same bound expressed on the boundary angle, `β′ ≥ bound`:
/// `−sin β` on the geodesic, otherwise
/// `(sin φ + cos β) cos(φ + β) / (1 + sin(φ + β))`.
pub fn angle_rate_bound(phi: f64, beta: f64) -> Result<f64> {
    check_phi(phi)?;
    if phi == FRAC_PI_2 {
        if !(0.0..=std::f64::consts::PI).contains(&beta) {
            return Err(Error::domain("beta", beta, "0 <= beta <= pi"));
        }
        return Ok(-beta.sin());
    }
    let tol = crate::halfplane::DEFAULT_TOL;
    if !(beta >= FRAC_PI_2 - phi - tol && beta <= FRAC_PI_2 + phi + tol) {
        return Err(Error::domain(
            "beta",
            beta,
            "pi/2 - phi <= beta <= pi/2 + phi",
        ));
    }
    Ok((phi.sin() + beta.cos()) * (phi + beta).cos() / (1.0 + (phi + beta).sin()))
}

/// Per-transversal criterion constants. The geodesic uses `F = −ath` and
/// `rhs = h² − 1` directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Criterion {
    Geodesic,
    Hypercycle { sin: f64, cos: f64 },
}

impl Criterion {
    pub(crate) fn hypercycle(phi: f64) -> Criterion {
        let (sin, cos) = phi.sin_cos();
        Criterion::Hypercycle { sin, cos }
    }

    /// Both the bound on |h| and the Lipschitz constant.
    pub(crate) fn bound(&self) -> f64 {
        match *self {
            Criterion::Geodesic => 1.0,
            Criterion::Hypercycle { sin, .. } => sin,
        }
    }

    /// `F(h)` for strictly interior `h`.
    pub(crate) fn profile(&self, h: f64) -> f64 {
        match *self {
            Criterion::Geodesic => -ath_unchecked(h),
            Criterion::Hypercycle { sin, cos } => profile_f_unchecked(sin, cos, h),
        }
    }

    pub(crate) fn rhs(&self, h: f64) -> f64 {
        match *self {
            Criterion::Geodesic => h * h - 1.0,
            Criterion::Hypercycle { sin, cos } => rhs_c1_unchecked(sin, cos, h),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfplane::ath;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    /// Bisection oracle for the inverse; `F` is strictly decreasing.
    fn inverse_by_bisection(phi: f64, value: f64) -> f64 {
        let s = phi.sin();
        let (mut lo, mut hi) = (-s, s);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if profile_f(phi, mid).unwrap() > value {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn profile_at_zero_vanishes() {
        for phi in [0.1, FRAC_PI_4, 1.3, FRAC_PI_2] {
            assert!(profile_f(phi, 0.0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn geodesic_specialization() {
        for k in 1..200 {
            let h = -1.0 + 2.0 * k as f64 / 200.0;
            let f = profile_f(FRAC_PI_2, h).unwrap();
            assert!((f + ath(h).unwrap()).abs() <= 1e-12, "h={h}");
            assert!((rhs_c1(FRAC_PI_2, h).unwrap() - (h * h - 1.0)).abs() <= 1e-12);
        }
    }

    #[test]
    fn profile_direct_value() {
        let q = FRAC_PI_4;
        let s = q.sin();
        let direct = ((s - 0.5) / (0.5 * s + 0.75f64.sqrt() * s)).ln();
        let f = profile_f(q, 0.5).unwrap();
        assert!((f - direct).abs() < 1e-15);
        // −cos(β + φ) form of the denominator with β = arccos(−h)
        let beta = (-0.5f64).acos();
        let alt = ((s - 0.5) / -(beta + q).cos()).ln();
        assert!((f - alt).abs() < 1e-13);
        assert!((f - -1.539_852_535_481_951_4).abs() < 1e-12);
    }

    #[test]
    fn divergence_and_domain() {
        let q = FRAC_PI_6;
        assert!(matches!(
            profile_f(q, q.sin()),
            Err(Error::ProfileDivergence { toward, .. }) if toward == f64::NEG_INFINITY
        ));
        assert!(matches!(
            profile_f(q, -q.sin()),
            Err(Error::ProfileDivergence { toward, .. }) if toward == f64::INFINITY
        ));
        assert!(matches!(profile_f(q, 0.9), Err(Error::Domain { .. })));
        assert!(profile_f(0.0, 0.0).is_err());
        assert!(rhs_c1(q, 0.6).is_err());
    }

    #[test]
    fn rhs_special_values() {
        for phi in [0.2, FRAC_PI_3, 1.4] {
            assert!(rhs_c1(phi, phi.sin()).unwrap().abs() < 1e-15);
            let at0 = rhs_c1(phi, 0.0).unwrap();
            assert!((at0 - (phi.cos() - 1.0)).abs() < 1e-15);
            assert!((at0 + phi.sin().powi(2) / (1.0 + phi.cos())).abs() < 1e-15);
        }
    }

    #[test]
    fn slope_times_rhs_is_sin_phi() {
        for phi in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
            let s = phi.sin();
            for k in 1..100 {
                let h = s * (-1.0 + 2.0 * k as f64 / 100.0);
                let prod = profile_slope(phi, h).unwrap() * rhs_c1(phi, h).unwrap();
                assert!((prod - s).abs() < 1e-12, "phi={phi} h={h} prod={prod}");
            }
        }
    }

    #[test]
    fn inverse_matches_bisection() {
        for phi in [0.15, FRAC_PI_6, FRAC_PI_4, 1.2, FRAC_PI_2] {
            for k in -40..=40 {
                let v = k as f64 * 0.2;
                let h = profile_inverse(phi, v).unwrap();
                let oracle = inverse_by_bisection(phi, v);
                assert!(
                    (h - oracle).abs() < 1e-13,
                    "phi={phi} v={v} h={h} oracle={oracle}"
                );
                let back = profile_f(phi, h).unwrap();
                assert!((back - v).abs() < 1e-9, "phi={phi} v={v} back={back}");
            }
        }
    }

    #[test]
    fn angle_rate_examples() {
        assert_eq!(angle_rate_bound(FRAC_PI_2, FRAC_PI_2).unwrap(), -1.0);
        for phi in [0.3, 1.0] {
            assert!(angle_rate_bound(phi, FRAC_PI_2 - phi).unwrap().abs() < 1e-15);
        }
        assert!(angle_rate_bound(0.3, 0.5).is_err());
        // chain rule: h′ = sin β · β′
        for phi in [FRAC_PI_6, FRAC_PI_4, 1.2, FRAC_PI_2] {
            for k in 1..50 {
                let beta = FRAC_PI_2 - phi + 2.0 * phi * k as f64 / 50.0;
                let h = -beta.cos();
                let lhs = rhs_c1(phi, h.clamp(-phi.sin(), phi.sin())).unwrap();
                let rhs = angle_rate_bound(phi, beta).unwrap() * beta.sin();
                assert!((lhs - rhs).abs() < 1e-8, "phi={phi} beta={beta}");
            }
        }
    }
}
