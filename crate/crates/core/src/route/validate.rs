//! Verdicts on sampled routes.
//!
//! Slack is always the signed margin of the binding inequality, so a
//! violation is a slack below `-tol`. Pair checks run over every ordered
//! pair of interior samples, not only neighbours.

use std::fmt;

use super::{Criterion, Pin, Route};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::halfplane::Transversal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Lipschitz condition on the profile.
    C0,
    /// Pointwise differential bound.
    C1,
    Horocycle,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::C0 => "c0",
            Mode::C1 => "c1",
            Mode::Horocycle => "horocycle",
        }
    }
}

/// Boundary-pinned prefix and suffix of a route: `h = −bound` for
/// `t ≤ t_minus` and `h = +bound` for `t ≥ t_plus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zones {
    pub t_minus: f64,
    pub t_plus: f64,
}

impl Zones {
    pub const UNBOUNDED: Zones = Zones {
        t_minus: f64::NEG_INFINITY,
        t_plus: f64::INFINITY,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `|h| ≤ bound`.
    Bound,
    /// Pinned samples must form a prefix (lower) and a suffix (upper).
    ZoneOrder,
    /// One-sided Lipschitz bound on the profile.
    Lipschitz,
    /// `h′ ≥ rhs`.
    Derivative,
    /// `h ≡ 0` along a horocycle.
    Horocycle,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Bound => "bound",
            Rule::ZoneOrder => "zone_order",
            Rule::Lipschitz => "lipschitz",
            Rule::Derivative => "derivative",
            Rule::Horocycle => "horocycle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    Pair {
        rule: Rule,
        t1: f64,
        t2: f64,
        slack: f64,
    },
    Point {
        rule: Rule,
        t: f64,
        slack: f64,
    },
}

impl Violation {
    pub fn rule(&self) -> Rule {
        match *self {
            Violation::Pair { rule, .. } | Violation::Point { rule, .. } => rule,
        }
    }

    pub fn slack(&self) -> f64 {
        match *self {
            Violation::Pair { slack, .. } | Violation::Point { slack, .. } => slack,
        }
    }

    /// `(t1, t2)`, or `(t, t)` for a pointwise violation.
    pub fn interval(&self) -> (f64, f64) {
        match *self {
            Violation::Pair { t1, t2, .. } => (t1, t2),
            Violation::Point { t, .. } => (t, t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Note {
    /// Whether `|F(h(t2)) − F(h(t1))| ≤ L (t2 − t1)` also holds.
    TwoSidedLipschitz { holds: bool, failing_pairs: usize },
    /// Only the sampled window was checked; behaviour outside it is unknown.
    FiniteWindow { t_first: f64, t_last: f64 },
    /// Derivatives were estimated by finite differences on the grid.
    DerivativesEstimated,
    /// Fewer than two interior samples, so no pair was compared.
    NoInteriorPairs,
}

impl fmt::Display for Note {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Note::TwoSidedLipschitz { holds: true, .. } => {
                write!(f, "two-sided Lipschitz bound also holds")
            }
            Note::TwoSidedLipschitz {
                holds: false,
                failing_pairs,
            } => write!(
                f,
                "two-sided Lipschitz bound fails on {failing_pairs} pairs"
            ),
            Note::FiniteWindow { t_first, t_last } => {
                write!(f, "checked on the window [{t_first}, {t_last}] only")
            }
            Note::DerivativesEstimated => write!(f, "derivatives estimated by finite differences"),
            Note::NoInteriorPairs => write!(f, "fewer than two interior samples"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub mode: Mode,
    pub valid: bool,
    pub zones: Zones,
    /// Smallest slack over every checked inequality; `+∞` if none was checked.
    pub worst_slack: f64,
    /// Sorted by `(t1, t2)`.
    pub violations: Vec<Violation>,
    pub notes: Vec<Note>,
}

impl Verdict {
    fn assemble(
        mode: Mode,
        zones: Zones,
        worst_slack: f64,
        mut violations: Vec<Violation>,
        notes: Vec<Note>,
    ) -> Verdict {
        violations.sort_by(|a, b| {
            let (a1, a2) = a.interval();
            let (b1, b2) = b.interval();
            a1.total_cmp(&b1).then(a2.total_cmp(&b2))
        });
        Verdict {
            mode,
            valid: violations.is_empty(),
            zones,
            worst_slack,
            violations,
            notes,
        }
    }
}

fn criterion(route: &Route) -> Result<Criterion> {
    match *route.transversal() {
        Transversal::Geodesic => Ok(Criterion::Geodesic),
        Transversal::Hypercycle { phi } => Ok(Criterion::hypercycle(phi)),
        Transversal::Horocycle { .. } => Err(Error::WrongTransversal {
            expected: "geodesic or hypercycle",
        }),
    }
}

/// Scan for the pinned prefix and suffix. Interleaving is not an error
/// here; it shows up as zone-order violations in the verdict.
pub fn detect_zones(route: &Route) -> Zones {
    if matches!(route.transversal(), Transversal::Horocycle { .. }) {
        return Zones::UNBOUNDED;
    }
    let s = route.samples();
    let t_minus = s
        .iter()
        .take_while(|x| route.pin(x.h) == Pin::Lower)
        .last()
        .map_or(f64::NEG_INFINITY, |x| x.t);
    let t_plus = s
        .iter()
        .rev()
        .take_while(|x| route.pin(x.h) == Pin::Upper)
        .last()
        .map_or(f64::INFINITY, |x| x.t);
    Zones { t_minus, t_plus }
}

/// Bound and zone-order checks shared by both modes.
fn structural(route: &Route) -> (f64, Vec<Violation>) {
    let tol = route.tol();
    let bound = route.bound();
    let s = route.samples();
    let mut worst = f64::INFINITY;
    let mut out = Vec::new();

    for x in s {
        let slack = bound - x.h.abs();
        worst = worst.min(slack);
        if slack < -tol {
            out.push(Violation::Point {
                rule: Rule::Bound,
                t: x.t,
                slack,
            });
        }
    }

    // A lower-pinned sample after anything else, or anything else after an
    // upper-pinned sample, breaks the (−b)* (interior)* (+b)* pattern.
    let mut first_not_lower: Option<usize> = None;
    let mut first_upper: Option<usize> = None;
    for (j, x) in s.iter().enumerate() {
        let pin = route.pin(x.h);
        if pin == Pin::Lower {
            if let Some(i) = first_not_lower {
                out.push(zone_violation(s[i].t, s[i].h, x.t, x.h));
            }
        } else {
            first_not_lower.get_or_insert(j);
        }
        if pin != Pin::Upper {
            if let Some(i) = first_upper {
                out.push(zone_violation(s[i].t, s[i].h, x.t, x.h));
            }
        } else {
            first_upper.get_or_insert(j);
        }
    }
    for v in &out {
        if v.rule() == Rule::ZoneOrder {
            worst = worst.min(v.slack());
        }
    }
    (worst, out)
}

fn zone_violation(t1: f64, h1: f64, t2: f64, h2: f64) -> Violation {
    Violation::Pair {
        rule: Rule::ZoneOrder,
        t1,
        t2,
        slack: h2 - h1,
    }
}

fn window_note(route: &Route) -> Note {
    let s = route.samples();
    Note::FiniteWindow {
        t_first: s[0].t,
        t_last: s[s.len() - 1].t,
    }
}

pub fn validate_c0(route: &Route) -> Result<Verdict> {
    validate_c0_with(route, Exec::default())
}

/// Lipschitz verdict over all ordered pairs of interior samples:
/// `F(h(t2)) − F(h(t1)) ≤ L (t2 − t1) + tol`.
pub fn validate_c0_with(route: &Route, exec: Exec) -> Result<Verdict> {
    let crit = criterion(route)?;
    let tol = route.tol();
    let lip = crit.bound();
    let (mut worst, mut violations) = structural(route);

    let interior: Vec<(f64, f64)> = route
        .samples()
        .iter()
        .filter(|x| route.pin(x.h) == Pin::Interior)
        .map(|x| (x.t, crit.profile(x.h)))
        .collect();
    let m = interior.len();

    struct Row {
        worst: f64,
        two_sided_fail: usize,
        violations: Vec<Violation>,
    }
    let rows = exec.map(m, |i| {
        let (t1, f1) = interior[i];
        let mut row = Row {
            worst: f64::INFINITY,
            two_sided_fail: 0,
            violations: Vec::new(),
        };
        for &(t2, f2) in &interior[i + 1..] {
            let reach = lip * (t2 - t1);
            let slack = reach - (f2 - f1);
            row.worst = row.worst.min(slack);
            if slack < -tol {
                row.violations.push(Violation::Pair {
                    rule: Rule::Lipschitz,
                    t1,
                    t2,
                    slack,
                });
            }
            if reach + (f2 - f1) < -tol {
                row.two_sided_fail += 1;
            }
        }
        row
    });

    let mut two_sided_fail = 0;
    for row in rows {
        worst = worst.min(row.worst);
        two_sided_fail += row.two_sided_fail;
        violations.extend(row.violations);
    }

    let mut notes = vec![window_note(route)];
    if m < 2 {
        notes.push(Note::NoInteriorPairs);
    } else {
        notes.push(Note::TwoSidedLipschitz {
            holds: two_sided_fail == 0,
            failing_pairs: two_sided_fail,
        });
    }
    Ok(Verdict::assemble(
        Mode::C0,
        detect_zones(route),
        worst,
        violations,
        notes,
    ))
}

pub fn validate_c1(route: &Route) -> Result<Verdict> {
    validate_c1_with(route, Exec::default())
}

/// Pointwise verdict `h′(t) ≥ rhs(h(t)) − tol` at every interior sample.
pub fn validate_c1_with(route: &Route, exec: Exec) -> Result<Verdict> {
    let crit = criterion(route)?;
    let tol = route.tol();
    let (mut worst, mut violations) = structural(route);
    let dh = route.derivatives();
    let s = route.samples();

    let slacks = exec.map(s.len(), |i| {
        let x = s[i];
        (route.pin(x.h) == Pin::Interior).then(|| dh[i] - crit.rhs(x.h))
    });
    for (x, slack) in s.iter().zip(slacks) {
        let Some(slack) = slack else { continue };
        worst = worst.min(slack);
        if slack < -tol {
            violations.push(Violation::Point {
                rule: Rule::Derivative,
                t: x.t,
                slack,
            });
        }
    }

    let mut notes = vec![window_note(route)];
    if !route.has_derivatives() {
        notes.push(Note::DerivativesEstimated);
    }
    Ok(Verdict::assemble(
        Mode::C1,
        detect_zones(route),
        worst,
        violations,
        notes,
    ))
}

/// Along a horocycle the only admissible route is `h ≡ 0`.
pub fn validate_horocycle(route: &Route) -> Result<Verdict> {
    if !matches!(route.transversal(), Transversal::Horocycle { .. }) {
        return Err(Error::WrongTransversal {
            expected: "horocycle",
        });
    }
    let tol = route.tol();
    let mut worst = f64::INFINITY;
    let mut violations = Vec::new();
    for x in route.samples() {
        let slack = 0.0 - x.h.abs();
        worst = worst.min(slack);
        if slack < -tol {
            violations.push(Violation::Point {
                rule: Rule::Horocycle,
                t: x.t,
                slack,
            });
        }
    }
    Ok(Verdict::assemble(
        Mode::Horocycle,
        Zones::UNBOUNDED,
        worst,
        violations,
        vec![window_note(route)],
    ))
}
