//! Agreement sweep between the closed-form disjointness criteria and the
//! brute-force contact oracle.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exec::Exec;
use crate::halfplane::DEFAULT_TOL;
use crate::leaf::{
    contact, geodesic_lemma_slack, hypercycle_lemma_slack, leaf_orthogonal_to_geodesic,
    leaf_orthogonal_to_hypercycle, Contact,
};

/// Slack band around zero where the criterion is not compared.
pub const SLACK_MARGIN: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Geodesic,
    Hypercycle,
}

/// One random admissible pair of leaves: `phi = π/2` for the geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tuple {
    pub phi: f64,
    pub s1: f64,
    pub beta1: f64,
    pub s2: f64,
    pub beta2: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AgreementStats {
    pub sampled: usize,
    pub compared: usize,
    pub agreed: usize,
    pub excluded_margin: usize,
    pub excluded_tangent: usize,
    pub disagreements: Vec<Tuple>,
}

impl AgreementStats {
    pub fn all_agree(&self) -> bool {
        self.agreed == self.compared
    }
}

fn draw(rng: &mut ChaCha8Rng, predicate: Predicate) -> Tuple {
    let s1 = rng.gen_range(-3.0f64..3.0).exp();
    let s2 = s1 * rng.gen_range(1e-3f64..3.0).exp();
    match predicate {
        Predicate::Geodesic => Tuple {
            phi: FRAC_PI_2,
            s1,
            beta1: rng.gen_range(1e-6..std::f64::consts::PI - 1e-6),
            s2,
            beta2: rng.gen_range(1e-6..std::f64::consts::PI - 1e-6),
        },
        Predicate::Hypercycle => {
            let phi = rng.gen_range(0.05..FRAC_PI_2 - 0.05);
            let (lo, hi) = (FRAC_PI_2 - phi + 1e-6, FRAC_PI_2 + phi - 1e-6);
            Tuple {
                phi,
                s1,
                beta1: rng.gen_range(lo..hi),
                s2,
                beta2: rng.gen_range(lo..hi),
            }
        }
    }
}

enum Outcome {
    Agree,
    Disagree,
    Margin,
    Tangent,
}

fn judge(predicate: Predicate, t: &Tuple) -> Result<Outcome> {
    let (slack, l1, l2) = match predicate {
        Predicate::Geodesic => (
            geodesic_lemma_slack(t.s1, t.beta1, t.s2, t.beta2)?,
            leaf_orthogonal_to_geodesic(t.s1, t.beta1)?,
            leaf_orthogonal_to_geodesic(t.s2, t.beta2)?,
        ),
        Predicate::Hypercycle => (
            hypercycle_lemma_slack(t.phi, t.s1, t.beta1, t.s2, t.beta2)?,
            leaf_orthogonal_to_hypercycle(t.phi, t.s1, t.beta1)?,
            leaf_orthogonal_to_hypercycle(t.phi, t.s2, t.beta2)?,
        ),
    };
    if slack.abs() < SLACK_MARGIN {
        return Ok(Outcome::Margin);
    }
    let c = contact(&l1, &l2, DEFAULT_TOL);
    if matches!(c, Contact::Tangent { .. }) {
        return Ok(Outcome::Tangent);
    }
    Ok(if (slack >= 0.0) != c.intersects() {
        Outcome::Agree
    } else {
        Outcome::Disagree
    })
}

pub fn lemma_check(predicate: Predicate, seed: u64, n: usize) -> Result<AgreementStats> {
    lemma_check_with(predicate, seed, n, Exec::default())
}

/// Draws `n` tuples from a seeded stream and compares the criterion with
/// the oracle on each. The tuples are drawn sequentially, so the result
/// does not depend on `exec`.
pub fn lemma_check_with(
    predicate: Predicate,
    seed: u64,
    n: usize,
    exec: Exec,
) -> Result<AgreementStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Tuple> = (0..n).map(|_| draw(&mut rng, predicate)).collect();
    let outcomes = exec.map(n, |i| judge(predicate, &tuples[i]));
    let mut stats = AgreementStats {
        sampled: n,
        ..AgreementStats::default()
    };
    for (t, o) in tuples.iter().zip(outcomes) {
        match o? {
            Outcome::Agree => {
                stats.compared += 1;
                stats.agreed += 1;
            }
            Outcome::Disagree => {
                stats.compared += 1;
                stats.disagreements.push(*t);
            }
            Outcome::Margin => stats.excluded_margin += 1,
            Outcome::Tangent => stats.excluded_tangent += 1,
        }
    }
    Ok(stats)
}
