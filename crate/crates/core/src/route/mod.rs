//! Sampled mean-curvature routes and their validation.

mod profile;
mod validate;

pub(crate) use profile::Criterion;
pub use profile::{angle_rate_bound, profile_f, profile_inverse, profile_slope, rhs_c1};
pub use validate::{
    detect_zones, validate_c0, validate_c0_with, validate_c1, validate_c1_with, validate_horocycle,
    Mode, Note, Rule, Verdict, Violation, Zones,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::halfplane::{Transversal, DEFAULT_TOL};

/// One sample `h(t)`, optionally with the derivative `h′(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub h: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dh: Option<f64>,
}

impl Sample {
    pub fn new(t: f64, h: f64) -> Self {
        Sample { t, h, dh: None }
    }

    pub fn with_derivative(t: f64, h: f64, dh: f64) -> Self {
        Sample { t, h, dh: Some(dh) }
    }
}

/// A mean-curvature function sampled along a canonical transversal.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    transversal: Transversal,
    samples: Vec<Sample>,
    tol: f64,
}

/// Where a sample sits relative to the admissible band `[−bound, bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pin {
    Lower,
    Interior,
    Upper,
}

impl Route {
    /// Checks the structural invariants: finite values, strictly increasing
    /// `t`, `|h| ≤ 1 + tol`, and derivatives either on every sample or on
    /// none. The transversal-specific bound on `|h|` is a validation
    /// concern and is reported by the validators.
    pub fn new(transversal: Transversal, samples: Vec<Sample>, tol: f64) -> Result<Route> {
        transversal.validate()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::domain("tol", tol, "tol > 0"));
        }
        if samples.is_empty() {
            return Err(Error::MalformedRoute("no samples".into()));
        }
        let with_dh = samples.iter().filter(|s| s.dh.is_some()).count();
        if with_dh != 0 && with_dh != samples.len() {
            return Err(Error::MalformedRoute(format!(
                "derivatives given on {with_dh} of {} samples",
                samples.len()
            )));
        }
        for (i, s) in samples.iter().enumerate() {
            if !s.t.is_finite() || !s.h.is_finite() || s.dh.is_some_and(|d| !d.is_finite()) {
                return Err(Error::MalformedRoute(format!("sample {i} is not finite")));
            }
            if s.h.abs() > 1.0 + tol {
                return Err(Error::MalformedRoute(format!(
                    "sample {i}: |h| = {} exceeds 1",
                    s.h.abs()
                )));
            }
            if i > 0 && !(s.t > samples[i - 1].t) {
                return Err(Error::MalformedRoute(format!(
                    "t must be strictly increasing (sample {i}: {} after {})",
                    s.t,
                    samples[i - 1].t
                )));
            }
        }
        Ok(Route {
            transversal,
            samples,
            tol,
        })
    }

    /// Samples `h` (and optionally `h′`) on `n` equispaced points of `[t0, t1]`.
    pub fn from_fn<H, D>(
        transversal: Transversal,
        window: (f64, f64),
        n: usize,
        h: H,
        dh: Option<D>,
    ) -> Result<Route>
    where
        H: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let ts = grid(window, n)?;
        let samples = ts
            .into_iter()
            .map(|t| Sample {
                t,
                h: h(t),
                dh: dh.as_ref().map(|d| d(t)),
            })
            .collect();
        Route::new(transversal, samples, DEFAULT_TOL)
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Route> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::domain("tol", tol, "tol > 0"));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn has_derivatives(&self) -> bool {
        self.samples[0].dh.is_some()
    }

    pub fn bound(&self) -> f64 {
        self.transversal.bound()
    }

    pub fn pin(&self, h: f64) -> Pin {
        let b = self.bound();
        if h <= -b + self.tol {
            Pin::Lower
        } else if h >= b - self.tol {
            Pin::Upper
        } else {
            Pin::Interior
        }
    }

    /// Derivatives as given, or central differences on the sample grid
    /// (one-sided at the ends).
    pub fn derivatives(&self) -> Vec<f64> {
        if self.has_derivatives() {
            return self.samples.iter().map(|s| s.dh.unwrap_or(0.0)).collect();
        }
        let s = &self.samples;
        let n = s.len();
        if n == 1 {
            return vec![0.0];
        }
        (0..n)
            .map(|i| {
                let (a, b) = match i {
                    0 => (0, 1),
                    i if i == n - 1 => (n - 2, n - 1),
                    i => (i - 1, i + 1),
                };
                (s[b].h - s[a].h) / (s[b].t - s[a].t)
            })
            .collect()
    }
}

/// `n ≥ 2` equispaced points covering `[t0, t1]` exactly.
pub fn grid(window: (f64, f64), n: usize) -> Result<Vec<f64>> {
    let (t0, t1) = window;
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(Error::Invalid(format!(
            "window [{t0}, {t1}] must satisfy t0 < t1"
        )));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("need at least 2 samples, got {n}")));
    }
    let step = (t1 - t0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { t1 } else { t0 + step * i as f64 })
        .collect())
}
