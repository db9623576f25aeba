//! Leaf families of routes: synthesis, extension, audit and the builtin
//! example families.

pub mod random;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::halfplane::{Transversal, DEFAULT_TOL};
use crate::leaf::{
    contact, leaf_orthogonal_to_geodesic, leaf_orthogonal_to_hypercycle, Contact, Leaf,
};
use crate::route::{
    profile_inverse, rhs_c1, validate_c0, validate_horocycle, Pin, Route, Sample, Verdict,
};

/// A leaf placed at arc length `t` of the transversal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlacedLeaf {
    pub t: f64,
    pub leaf: Leaf,
    /// Boundary-valued sample (`h = ±bound`).
    pub pinned: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditPair {
    /// Indices into [`FoliationSlice::all_leaves`].
    pub first: usize,
    pub second: usize,
    pub t1: f64,
    pub t2: f64,
    pub point: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AuditReport {
    pub checked_pairs: usize,
    pub intersections: Vec<AuditPair>,
    pub tangencies: Vec<AuditPair>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.intersections.is_empty()
    }
}

/// The leaves of a route in the two-dimensional cross-section.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoliationSlice {
    pub transversal: Transversal,
    /// Ordered by `t`.
    pub leaves: Vec<PlacedLeaf>,
    /// Scaled copies of the extreme leaves; `t` is the arc length at which
    /// each copy crosses the transversal.
    pub extension_leaves: Vec<PlacedLeaf>,
    pub audit: Option<AuditReport>,
}

impl FoliationSlice {
    /// Route leaves followed by extension leaves.
    pub fn all_leaves(&self) -> impl Iterator<Item = &PlacedLeaf> {
        self.leaves.iter().chain(self.extension_leaves.iter())
    }
}

/// Boundary angle for a sample, snapping pinned values onto the band ends.
fn sample_angle(transversal: &Transversal, pin: Pin, h: f64) -> f64 {
    let (lo, hi) = match transversal.phi() {
        Some(phi) => (FRAC_PI_2 - phi, FRAC_PI_2 + phi),
        None => (FRAC_PI_2, FRAC_PI_2),
    };
    let b = transversal.bound();
    match pin {
        Pin::Lower => lo,
        Pin::Upper => hi,
        Pin::Interior => (-h.clamp(-b, b)).acos().clamp(lo, hi),
    }
}

/// The leaf crossing `transversal` orthogonally at arc length `t` with
/// boundary angle `beta`.
pub fn leaf_at(transversal: &Transversal, t: f64, beta: f64) -> Result<Leaf> {
    match *transversal {
        Transversal::Geodesic => leaf_orthogonal_to_geodesic(t.exp(), beta),
        Transversal::Hypercycle { phi } => {
            leaf_orthogonal_to_hypercycle(phi, (t * phi.sin()).exp(), beta)
        }
        Transversal::Horocycle { height } => {
            if (beta - FRAC_PI_2).abs() > DEFAULT_TOL {
                return Err(Error::Invalid(format!(
                    "no leaf with beta = {beta} crosses a horocycle orthogonally in this family"
                )));
            }
            Leaf::from_line((height * t, height), (0.0, 1.0))
        }
    }
}

/// One leaf per sample. Invalid routes are rejected unless `force` is set;
/// forced samples outside the band are clamped onto it.
pub fn synthesize(route: &Route, force: bool) -> Result<FoliationSlice> {
    let transversal = *route.transversal();
    let verdict = match transversal {
        Transversal::Horocycle { .. } => validate_horocycle(route)?,
        _ => validate_c0(route)?,
    };
    if !verdict.valid && !force {
        return Err(rejection(&verdict));
    }
    let mut leaves = Vec::with_capacity(route.samples().len());
    for s in route.samples() {
        let pin = route.pin(s.h);
        let beta = match transversal {
            Transversal::Horocycle { .. } => FRAC_PI_2,
            _ => sample_angle(&transversal, pin, s.h),
        };
        leaves.push(PlacedLeaf {
            t: s.t,
            leaf: leaf_at(&transversal, s.t, beta)?,
            pinned: pin != Pin::Interior,
        });
    }
    Ok(FoliationSlice {
        transversal,
        leaves,
        extension_leaves: Vec::new(),
        audit: None,
    })
}

pub(crate) fn rejection(v: &Verdict) -> Error {
    Error::RouteRejected {
        violations: v.violations.len(),
        worst_slack: v.worst_slack,
    }
}

/// Appends `per_side` scaled copies of the first and last leaf, spaced by
/// `step` in arc length, beyond each end of a hypercycle slice. Geodesic
/// and horocycle slices already span the whole transversal and are
/// returned unchanged, as is an empty slice.
pub fn extend(slice: &FoliationSlice, per_side: usize, step: f64) -> Result<FoliationSlice> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::domain("extension step", step, "step > 0"));
    }
    let mut out = slice.clone();
    let Transversal::Hypercycle { phi } = slice.transversal else {
        return Ok(out);
    };
    let (Some(first), Some(last)) = (slice.leaves.first(), slice.leaves.last()) else {
        return Ok(out);
    };
    let rate = phi.sin();
    out.audit = None;
    for j in 1..=per_side {
        let dt = j as f64 * step;
        out.extension_leaves.push(PlacedLeaf {
            t: first.t - dt,
            leaf: first.leaf.scaled((-dt * rate).exp()),
            pinned: first.pinned,
        });
        out.extension_leaves.push(PlacedLeaf {
            t: last.t + dt,
            leaf: last.leaf.scaled((dt * rate).exp()),
            pinned: last.pinned,
        });
    }
    Ok(out)
}

pub fn verify_disjoint(slice: &FoliationSlice) -> AuditReport {
    verify_disjoint_with(slice, Exec::default())
}

/// Contact oracle over every pair of leaves, extension leaves included.
pub fn verify_disjoint_with(slice: &FoliationSlice, exec: Exec) -> AuditReport {
    let all: Vec<&PlacedLeaf> = slice.all_leaves().collect();
    let n = all.len();
    let found = exec.flat_map(n, |i| {
        let mut row = Vec::new();
        for j in i + 1..n {
            let c = contact(&all[i].leaf, &all[j].leaf, DEFAULT_TOL);
            let point = match c {
                Contact::Disjoint => continue,
                Contact::Tangent { point } | Contact::Transverse { point } => Some(point),
                Contact::Coincident => None,
            };
            let pair = AuditPair {
                first: i,
                second: j,
                t1: all[i].t,
                t2: all[j].t,
                point,
            };
            row.push((c.intersects(), pair));
        }
        row
    });
    let mut report = AuditReport {
        checked_pairs: n * n.saturating_sub(1) / 2,
        ..AuditReport::default()
    };
    for (hit, pair) in found {
        if hit {
            report.intersections.push(pair);
        } else {
            report.tangencies.push(pair);
        }
    }
    report
}

/// Closed-form example routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinFamily {
    /// `h ≡ 0`.
    TotallyGeodesic,
    /// `h ≡ −bound`.
    Horospherical,
    /// The extremal route `F(h(t)) = L t`; `h = −tanh t` on the geodesic.
    Pencil,
    /// `h ≡ c`.
    Constant(f64),
    /// `h ≡ +bound`.
    CustomConstantMax,
}

impl BuiltinFamily {
    pub const NAMES: [&'static str; 5] = [
        "totally_geodesic",
        "horospherical",
        "pencil",
        "constant",
        "custom_constant_max",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinFamily::TotallyGeodesic => "totally_geodesic",
            BuiltinFamily::Horospherical => "horospherical",
            BuiltinFamily::Pencil => "pencil",
            BuiltinFamily::Constant(_) => "constant",
            BuiltinFamily::CustomConstantMax => "custom_constant_max",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            BuiltinFamily::TotallyGeodesic => "h = 0: concentric totally geodesic leaves",
            BuiltinFamily::Horospherical => "h = -bound: leaves tangent at one ideal point",
            BuiltinFamily::Pencil => "extremal route, h = -tanh t on the geodesic",
            BuiltinFamily::Constant(_) => "h = c for a constant |c| <= bound",
            BuiltinFamily::CustomConstantMax => "h = +bound: parallel leaves",
        }
    }

    /// Looks a family up by name; `constant` takes its value from `value`.
    pub fn from_name(name: &str, value: Option<f64>) -> Result<BuiltinFamily> {
        match (name, value) {
            ("totally_geodesic", None) => Ok(BuiltinFamily::TotallyGeodesic),
            ("horospherical", None) => Ok(BuiltinFamily::Horospherical),
            ("pencil", None) => Ok(BuiltinFamily::Pencil),
            ("custom_constant_max", None) => Ok(BuiltinFamily::CustomConstantMax),
            ("constant", Some(c)) => Ok(BuiltinFamily::Constant(c)),
            ("constant", None) => Err(Error::Invalid("family `constant` needs a value".into())),
            (n, Some(_)) if BuiltinFamily::NAMES.contains(&n) => {
                Err(Error::Invalid(format!("family `{n}` takes no value")))
            }
            (n, _) => Err(Error::Invalid(format!(
                "unknown family `{n}` (expected one of {})",
                BuiltinFamily::NAMES.join(", ")
            ))),
        }
    }
}

impl fmt::Display for BuiltinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinFamily::Constant(c) => write!(f, "constant({c})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for BuiltinFamily {
    type Err = Error;

    /// `name` or `constant(c)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s
            .strip_prefix("constant(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let c = inner
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Invalid(format!("constant value `{inner}`: {e}")))?;
            return BuiltinFamily::from_name("constant", Some(c));
        }
        BuiltinFamily::from_name(s, None)
    }
}

/// Samples a builtin family with analytic derivatives on `n` points of
/// `window`. Every builtin is valid by construction.
pub fn builtin(
    transversal: Transversal,
    family: BuiltinFamily,
    window: (f64, f64),
    n: usize,
) -> Result<Route> {
    transversal.validate()?;
    let b = transversal.bound();
    let constant = |c: f64| Route::from_fn(transversal, window, n, move |_| c, Some(|_| 0.0));
    match family {
        BuiltinFamily::TotallyGeodesic => constant(0.0),
        BuiltinFamily::Horospherical => constant(-b),
        BuiltinFamily::CustomConstantMax => constant(b),
        BuiltinFamily::Constant(c) => {
            if !(c.abs() <= b + DEFAULT_TOL) {
                return Err(Error::domain(
                    "constant",
                    c,
                    "|c| <= bound of the transversal",
                ));
            }
            constant(c)
        }
        BuiltinFamily::Pencil => match transversal {
            Transversal::Geodesic => Route::from_fn(
                transversal,
                window,
                n,
                |t| -t.tanh(),
                Some(|t: f64| -1.0 / t.cosh().powi(2)),
            ),
            Transversal::Hypercycle { phi } => {
                let rate = phi.sin();
                let samples = crate::route::grid(window, n)?
                    .into_iter()
                    .map(|t| {
                        let h = profile_inverse(phi, rate * t)?;
                        Ok(Sample::with_derivative(t, h, rhs_c1(phi, h)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Route::new(transversal, samples, DEFAULT_TOL)
            }
            Transversal::Horocycle { .. } => Err(Error::WrongTransversal {
                expected: "geodesic or hypercycle",
            }),
        },
    }
}
