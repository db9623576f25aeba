//! JSON route files and report documents.
//!
//! A route file names a transversal and either a closed-form family
//! (expanded on a window) or explicit samples:
//!
//! ```json
//! {"transversal": {"kind": "geodesic"},
//!  "closed_form": {"name": "pencil"}, "window": [-3, 3], "n": 121}
//! ```
//!
//! Unknown fields are rejected. Serialization uses a fixed field order, so
//! equal documents serialize to equal bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::foliation::{builtin, AuditPair, AuditReport, BuiltinFamily};
use crate::halfplane::{Transversal, DEFAULT_TOL};
use crate::lemma_check::AgreementStats;
use crate::route::{Note, Route, Sample, Verdict, Violation};

/// Version tag carried by every report document.
pub const REPORT_SCHEMA: &str = "umbilic-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransversalDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedFormParams {
    /// The constant of the `constant` family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosedForm {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ClosedFormParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleDoc {
    pub t: f64,
    pub h: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dh: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteFile {
    pub transversal: TransversalDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

fn parse_error(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

impl TransversalDoc {
    pub fn from_transversal(t: &Transversal) -> TransversalDoc {
        let (phi, height) = match *t {
            Transversal::Geodesic => (None, None),
            Transversal::Hypercycle { phi } => (Some(phi), None),
            Transversal::Horocycle { height } => (None, Some(height)),
        };
        TransversalDoc {
            kind: t.name().to_string(),
            phi,
            height,
        }
    }

    pub fn to_transversal(&self) -> Result<Transversal> {
        let t = match (self.kind.as_str(), self.phi, self.height) {
            ("geodesic", None, None) => Transversal::Geodesic,
            ("hypercycle", Some(phi), None) => Transversal::Hypercycle { phi },
            ("horocycle", None, Some(height)) => Transversal::Horocycle { height },
            ("hypercycle", None, _) => return Err(parse_error("transversal.phi", "missing")),
            ("horocycle", _, None) => return Err(parse_error("transversal.height", "missing")),
            ("geodesic" | "hypercycle" | "horocycle", _, _) => {
                return Err(parse_error(
                    "transversal",
                    format!("unexpected parameter for kind `{}`", self.kind),
                ))
            }
            (k, _, _) => {
                return Err(parse_error(
                    "transversal.kind",
                    format!("unknown kind `{k}` (expected geodesic, hypercycle or horocycle)"),
                ))
            }
        };
        t.validate()
            .map_err(|e| parse_error("transversal", e.to_string()))?;
        Ok(t)
    }
}

impl RouteFile {
    /// Default fields made explicit; the form `serialize(parse(doc))` takes.
    pub fn normalized(&self) -> RouteFile {
        let mut out = self.clone();
        out.tol.get_or_insert(DEFAULT_TOL);
        if let Some(cf) = &mut out.closed_form {
            if cf.params.as_ref().is_some_and(|p| p.value.is_none()) {
                cf.params = None;
            }
        }
        out
    }

    pub fn to_route(&self) -> Result<Route> {
        let transversal = self.transversal.to_transversal()?;
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(parse_error("tol", format!("must be positive, got {tol}")));
        }
        let route = match (&self.closed_form, &self.samples) {
            (Some(_), Some(_)) => {
                return Err(parse_error(
                    "",
                    "give either `closed_form` or `samples`, not both",
                ))
            }
            (None, None) => return Err(parse_error("", "missing `closed_form` or `samples`")),
            (Some(cf), None) => {
                let value = cf.params.as_ref().and_then(|p| p.value);
                let family = BuiltinFamily::from_name(&cf.name, value)
                    .map_err(|e| parse_error("closed_form", e.to_string()))?;
                let window = self
                    .window
                    .ok_or_else(|| parse_error("window", "required with `closed_form`"))?;
                let n = self
                    .n
                    .ok_or_else(|| parse_error("n", "required with `closed_form`"))?;
                builtin(transversal, family, (window[0], window[1]), n)
                    .map_err(|e| parse_error("closed_form", e.to_string()))?
                    .with_tol(tol)?
            }
            (None, Some(samples)) => {
                if self.window.is_some() || self.n.is_some() {
                    return Err(parse_error(
                        "",
                        "`window` and `n` apply only to `closed_form`",
                    ));
                }
                let samples = samples
                    .iter()
                    .map(|s| Sample {
                        t: s.t,
                        h: s.h,
                        dh: s.dh,
                    })
                    .collect();
                Route::new(transversal, samples, tol).map_err(|e| match e {
                    Error::MalformedRoute(m) => parse_error("samples", m),
                    other => other,
                })?
            }
        };
        Ok(route)
    }

    /// The explicit-samples document of a route.
    pub fn from_route(route: &Route) -> RouteFile {
        RouteFile {
            transversal: TransversalDoc::from_transversal(route.transversal()),
            closed_form: None,
            samples: Some(
                route
                    .samples()
                    .iter()
                    .map(|s| SampleDoc {
                        t: s.t,
                        h: s.h,
                        dh: s.dh,
                    })
                    .collect(),
            ),
            window: None,
            n: None,
            tol: Some(route.tol()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("route files always serialize")
    }
}

/// Parses the document structure, reporting the field path of any error.
pub fn parse_route_file(text: &str) -> Result<RouteFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_error(
            if path == "." { "" } else { &path },
            e.into_inner().to_string(),
        )
    })
}

pub fn parse_route(text: &str) -> Result<Route> {
    parse_route_file(text)?.to_route()
}

/// `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// A report number: finite values rounded, infinities as `"inf"`/`"-inf"`.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(sig12(x))
    } else if x.is_nan() {
        Value::Null
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn transversal_value(t: &Transversal) -> Value {
    serde_json::to_value(TransversalDoc::from_transversal(t)).expect("plain struct")
}

fn violation_value(v: &Violation) -> Value {
    match *v {
        Violation::Pair {
            rule,
            t1,
            t2,
            slack,
        } => json!({"rule": rule.name(), "t1": num(t1), "t2": num(t2), "slack": num(slack)}),
        Violation::Point { rule, t, slack } => {
            json!({"rule": rule.name(), "t": num(t), "slack": num(slack)})
        }
    }
}

fn note_value(n: &Note) -> Value {
    let mut m = Map::new();
    let kind = match n {
        Note::TwoSidedLipschitz {
            holds,
            failing_pairs,
        } => {
            m.insert("holds".into(), json!(holds));
            m.insert("failing_pairs".into(), json!(failing_pairs));
            "two_sided_lipschitz"
        }
        Note::FiniteWindow { t_first, t_last } => {
            m.insert("t_first".into(), num(*t_first));
            m.insert("t_last".into(), num(*t_last));
            "finite_window"
        }
        Note::DerivativesEstimated => "derivatives_estimated",
        Note::NoInteriorPairs => "no_interior_pairs",
    };
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind));
    out.insert("message".into(), json!(n.to_string()));
    out.extend(m);
    Value::Object(out)
}

pub fn verdict_value(route: &Route, v: &Verdict) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "report": "verdict",
        "transversal": transversal_value(route.transversal()),
        "mode": v.mode.name(),
        "valid": v.valid,
        "samples": route.samples().len(),
        "tol": num(route.tol()),
        "zones": {"t_minus": num(v.zones.t_minus), "t_plus": num(v.zones.t_plus)},
        "worst_slack": if v.worst_slack.is_finite() { num(v.worst_slack) } else { Value::Null },
        "violation_count": v.violations.len(),
        "violations": v.violations.iter().map(violation_value).collect::<Vec<_>>(),
        "notes": v.notes.iter().map(note_value).collect::<Vec<_>>(),
    })
}

fn pair_value(p: &AuditPair) -> Value {
    json!({
        "first": p.first,
        "second": p.second,
        "t1": num(p.t1),
        "t2": num(p.t2),
        "point": p.point.map(|(x, y)| vec![num(x), num(y)]),
    })
}

pub fn audit_value(t: &Transversal, leaves: usize, extension: usize, a: &AuditReport) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "report": "audit",
        "transversal": transversal_value(t),
        "leaves": leaves,
        "extension_leaves": extension,
        "checked_pairs": a.checked_pairs,
        "clean": a.is_clean(),
        "intersections": a.intersections.iter().map(pair_value).collect::<Vec<_>>(),
        "tangencies": a.tangencies.iter().map(pair_value).collect::<Vec<_>>(),
    })
}

pub fn agreement_value(predicate: &str, seed: u64, s: &AgreementStats) -> Value {
    json!({
        "schema": REPORT_SCHEMA,
        "report": "lemma_check",
        "predicate": predicate,
        "seed": seed,
        "sampled": s.sampled,
        "compared": s.compared,
        "agreed": s.agreed,
        "excluded_margin": s.excluded_margin,
        "excluded_tangent": s.excluded_tangent,
        "disagreements": s.disagreements.iter().map(|t| json!({
            "phi": num(t.phi), "s1": num(t.s1), "beta1": num(t.beta1),
            "s2": num(t.s2), "beta2": num(t.beta2),
        })).collect::<Vec<_>>(),
    })
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_closed_form() {
        let doc = r#"{"transversal":{"kind":"geodesic"},"closed_form":{"name":"pencil"},"window":[-3,3],"n":121}"#;
        let r = parse_route(doc).unwrap();
        assert_eq!(r.samples().len(), 121);
        assert!((r.samples()[0].h - 3f64.tanh()).abs() < 1e-15);
        assert!(r.has_derivatives());
    }

    #[test]
    fn errors_carry_paths() {
        let unknown = r#"{"transversal":{"kind":"geodesic","bogus":1},"samples":[]}"#;
        match parse_route_file(unknown) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "transversal.bogus"),
            other => panic!("{other:?}"),
        }
        let bad_type = r#"{"transversal":{"kind":"geodesic"},"samples":[{"t":0,"h":"x"}]}"#;
        match parse_route_file(bad_type) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "samples[0].h"),
            other => panic!("{other:?}"),
        }
        let decreasing =
            r#"{"transversal":{"kind":"geodesic"},"samples":[{"t":1,"h":0},{"t":0,"h":0}]}"#;
        assert!(matches!(parse_route(decreasing), Err(Error::Parse { .. })));
        let no_phi = r#"{"transversal":{"kind":"hypercycle"},"samples":[{"t":0,"h":0}]}"#;
        match parse_route(no_phi) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "transversal.phi"),
            other => panic!("{other:?}"),
        }
        let both = r#"{"transversal":{"kind":"geodesic"},"samples":[{"t":0,"h":0}],"closed_form":{"name":"pencil"}}"#;
        assert!(parse_route(both).is_err());
        let family = r#"{"transversal":{"kind":"geodesic"},"closed_form":{"name":"spiral"},"window":[0,1],"n":3}"#;
        assert!(parse_route(family).is_err());
    }

    #[test]
    fn round_trip_is_canonical() {
        let doc = r#"{"samples":[{"h":-0.25,"t":0.0,"dh":-1.0},{"t":0.5,"h":-0.5,"dh":-0.75}],
                      "transversal":{"phi":0.9,"kind":"hypercycle"}}"#;
        let file = parse_route_file(doc).unwrap();
        let route = file.to_route().unwrap();
        assert_eq!(
            RouteFile::from_route(&route).to_json(),
            file.normalized().to_json()
        );
    }

    #[test]
    fn rounding() {
        assert_eq!(sig12(0.1 + 0.2), 0.3);
        assert_eq!(sig12(1.234_567_890_123_4e-7), 1.234_567_890_12e-7);
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
    }
}
