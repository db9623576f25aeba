//! Seeded random routes generated in profile space.
//!
//! A valid route is built from a smooth profile
//! `P(t) = p0 + a t + (b/ω)(sin(ωt + θ) − sin θ)` whose slope never exceeds
//! `L − margin`, mapped back through the inverse profile. A perturbed route
//! replaces one segment by slope `L + excess`, which breaks the Lipschitz
//! condition on every pair inside it.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::halfplane::{Transversal, DEFAULT_TOL};
use crate::route::{grid, profile_inverse, Criterion, Route, Sample};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomRouteConfig {
    pub window: (f64, f64),
    pub samples: usize,
    /// Slope margin below the Lipschitz constant.
    pub margin: f64,
    /// Slope excess of the injected segment of a perturbed route.
    pub excess: f64,
    /// Range for the hypercycle angle; geodesic routes are drawn half the time.
    pub phi_range: (f64, f64),
}

impl Default for RandomRouteConfig {
    fn default() -> Self {
        RandomRouteConfig {
            window: (-2.0, 2.0),
            samples: 81,
            margin: 1e-3,
            excess: 0.5,
            phi_range: (0.25, 1.35),
        }
    }
}

/// A perturbed route and the window `[ta, tb]` of its steep segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedRoute {
    pub route: Route,
    pub window: (f64, f64),
}

#[derive(Debug, Clone, Copy)]
struct Profile {
    p0: f64,
    a: f64,
    b: f64,
    omega: f64,
    theta: f64,
}

impl Profile {
    fn draw(rng: &mut ChaCha8Rng, lip: f64, margin: f64) -> Profile {
        let top = lip - margin;
        let b = rng.gen_range(0.0..0.5 * top);
        Profile {
            p0: rng.gen_range(-1.0..1.0),
            a: rng.gen_range(-1.0..=top - b),
            b,
            omega: rng.gen_range(0.5..3.0),
            theta: rng.gen_range(0.0..std::f64::consts::TAU),
        }
    }

    fn value(&self, t: f64) -> f64 {
        self.p0
            + self.a * t
            + self.b / self.omega * ((self.omega * t + self.theta).sin() - self.theta.sin())
    }

    fn slope(&self, t: f64) -> f64 {
        self.a + self.b * (self.omega * t + self.theta).cos()
    }
}

fn draw_transversal(rng: &mut ChaCha8Rng, cfg: &RandomRouteConfig) -> Result<Transversal> {
    if rng.gen_bool(0.5) {
        Ok(Transversal::Geodesic)
    } else {
        Transversal::hypercycle(rng.gen_range(cfg.phi_range.0..cfg.phi_range.1))
    }
}

fn criterion(transversal: &Transversal) -> Criterion {
    match *transversal {
        Transversal::Hypercycle { phi } => Criterion::hypercycle(phi),
        _ => Criterion::Geodesic,
    }
}

fn phi_of(transversal: &Transversal) -> f64 {
    transversal.phi().unwrap_or(std::f64::consts::FRAC_PI_2)
}

/// One valid route with analytic derivatives, possibly with pinned
/// prefix and suffix zones.
pub fn random_valid_route(rng: &mut ChaCha8Rng, cfg: &RandomRouteConfig) -> Result<Route> {
    let transversal = draw_transversal(rng, cfg)?;
    let crit = criterion(&transversal);
    let (phi, lip) = (phi_of(&transversal), crit.bound());
    let prof = Profile::draw(rng, lip, cfg.margin);
    let ts = grid(cfg.window, cfg.samples)?;
    let n = ts.len();
    let lower = if rng.gen_bool(0.25) {
        rng.gen_range(1..n / 4)
    } else {
        0
    };
    let upper = if rng.gen_bool(0.25) {
        rng.gen_range(1..n / 4)
    } else {
        0
    };

    let mut samples = Vec::with_capacity(n);
    for (i, &t) in ts.iter().enumerate() {
        let s = if i < lower {
            Sample::with_derivative(t, -lip, 0.0)
        } else if i >= n - upper {
            Sample::with_derivative(t, lip, 0.0)
        } else {
            let h = profile_inverse(phi, prof.value(t))?;
            // h′ = P′(t) / (dF/dh) and (dF/dh)·rhs = L
            Sample::with_derivative(t, h, prof.slope(t) * crit.rhs(h) / lip)
        };
        samples.push(s);
    }
    Route::new(transversal, samples, DEFAULT_TOL)
}

/// One route whose profile has slope `L + excess` on a random segment.
pub fn random_perturbed_route(
    rng: &mut ChaCha8Rng,
    cfg: &RandomRouteConfig,
) -> Result<PerturbedRoute> {
    let transversal = draw_transversal(rng, cfg)?;
    let crit = criterion(&transversal);
    let (phi, lip) = (phi_of(&transversal), crit.bound());
    let prof = Profile::draw(rng, lip, cfg.margin);
    let (t0, t1) = cfg.window;
    let len = rng.gen_range(0.15..0.3) * (t1 - t0);
    let ta = rng.gen_range(t0..t1 - len);
    let tb = ta + len;
    let steep = lip + cfg.excess;
    let jump = steep * len - (prof.value(tb) - prof.value(ta));

    let samples = grid(cfg.window, cfg.samples)?
        .into_iter()
        .map(|t| {
            let p = if t < ta {
                prof.value(t)
            } else if t <= tb {
                prof.value(ta) + steep * (t - ta)
            } else {
                prof.value(t) + jump
            };
            Ok(Sample::new(t, profile_inverse(phi, p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PerturbedRoute {
        route: Route::new(transversal, samples, DEFAULT_TOL)?,
        window: (ta, tb),
    })
}

pub fn valid_routes(seed: u64, count: usize, cfg: &RandomRouteConfig) -> Result<Vec<Route>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_valid_route(&mut rng, cfg))
        .collect()
}

pub fn perturbed_routes(
    seed: u64,
    count: usize,
    cfg: &RandomRouteConfig,
) -> Result<Vec<PerturbedRoute>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_perturbed_route(&mut rng, cfg))
        .collect()
}
