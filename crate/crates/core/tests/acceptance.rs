//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Oracles here are written against `std` and plain algebra, not
//! against the helpers they check.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use umbilic::foliation::random::{perturbed_routes, valid_routes, RandomRouteConfig};
use umbilic::foliation::{builtin, extend, synthesize, verify_disjoint, BuiltinFamily};
use umbilic::halfplane::{hyperbolic_distance, HPoint, Transversal};
use umbilic::leaf::{equidistant_offset, ideal_endpoints};
use umbilic::lemma_check::{lemma_check, Predicate};
use umbilic::render::{render_svg, Style, Viewport};
use umbilic::route::{
    profile_f, rhs_c1, validate_c0, validate_c1, validate_horocycle, Route, Rule,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> Result<Outcome, umbilic::Error>;

/// `n` cell midpoints of `(lo, hi)`; never touches either end.
fn midpoints(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64)
}

fn exact_values() -> Result<Outcome, umbilic::Error> {
    let d = hyperbolic_distance(HPoint::new(0.0, 1.0)?, HPoint::new(0.0, 1f64.exp())?);
    let d_err = (d - 1.0).abs();
    let (mut cos_err, mut cot_err) = (0.0f64, 0.0f64);
    for beta in midpoints(0.0, PI, 1000) {
        let delta = equidistant_offset(beta)?;
        cos_err = cos_err.max((beta.cos() - delta.tanh()).abs());
        cot_err = cot_err.max((1.0 / beta.tan() - delta.sinh()).abs());
    }
    Ok(outcome(
        d_err <= 1e-12 && cos_err <= 1e-10 && cot_err <= 1e-10,
        format!("|d-1|={d_err:.2e}  max|cos-tanh|={cos_err:.2e}  max|cot-sinh|={cot_err:.2e}"),
    ))
}

fn lemma_agreement() -> Result<Outcome, umbilic::Error> {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for (pred, name) in [
        (Predicate::Geodesic, "geodesic"),
        (Predicate::Hypercycle, "hypercycle"),
    ] {
        let s = lemma_check(pred, 2024, 10_000)?;
        pass &= s.sampled == 10_000 && s.all_agree();
        parts.push(format!(
            "{name} {}/{} (margin {}, tangent {})",
            s.agreed, s.compared, s.excluded_margin, s.excluded_tangent
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(5);
    Ok(outcome(
        pass,
        format!("{}  in {:.2?}", parts.join(", "), elapsed),
    ))
}

fn specializations() -> Result<Outcome, umbilic::Error> {
    let (mut f_err, mut r_err) = (0.0f64, 0.0f64);
    for h in midpoints(-0.999, 0.999, 1000) {
        f_err = f_err.max((profile_f(FRAC_PI_2, h)? + h.atanh()).abs());
        r_err = r_err.max((rhs_c1(FRAC_PI_2, h)? - (h * h - 1.0)).abs());
    }
    Ok(outcome(
        f_err <= 1e-12 && r_err <= 1e-12,
        format!("max|F+ath|={f_err:.2e}  max|rhs-(h²-1)|={r_err:.2e}"),
    ))
}

fn duality() -> Result<Outcome, umbilic::Error> {
    const STEP: f64 = 1e-6;
    let mut worst = 0.0f64;
    for phi in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, FRAC_PI_2] {
        let b = phi.sin() * 0.99;
        for h in midpoints(-b, b, 1000) {
            let df = (profile_f(phi, h + STEP)? - profile_f(phi, h - STEP)?) / (2.0 * STEP);
            worst = worst.max((df * rhs_c1(phi, h)? - phi.sin()).abs());
        }
    }
    Ok(outcome(
        worst <= 1e-6,
        format!("max|F'·rhs - sinφ|={worst:.2e}"),
    ))
}

fn pencil_route() -> Result<Outcome, umbilic::Error> {
    let r = builtin(
        Transversal::Geodesic,
        BuiltinFamily::Pencil,
        (-3.0, 3.0),
        121,
    )?;
    let (c0, c1) = (validate_c0(&r)?, validate_c1(&r)?);
    let slice = synthesize(&r, false)?;
    let mut end_err = 0.0f64;
    for p in &slice.leaves {
        let e = ideal_endpoints(&p.leaf)?;
        end_err = end_err
            .max((e.a_minus + 1.0).abs())
            .max((e.a_plus - 1.0).abs());
    }
    let audit = verify_disjoint(&slice);
    let pass = c0.valid
        && c1.valid
        && c0.worst_slack.abs() <= 1e-9
        && c1.worst_slack.abs() <= 1e-9
        && end_err <= 1e-9
        && audit.is_clean();
    Ok(outcome(
        pass,
        format!(
            "C0 worst={:.2e}  C1 worst={:.2e}  endpoint err={end_err:.2e}  audit {} pairs, {} hits",
            c0.worst_slack,
            c1.worst_slack,
            audit.checked_pairs,
            audit.intersections.len()
        ),
    ))
}

fn soundness() -> Result<Outcome, umbilic::Error> {
    let cfg = RandomRouteConfig::default();
    let valid = valid_routes(42, 100, &cfg)?;
    let mut sound = 0;
    for r in &valid {
        let ok = validate_c0(r)?.valid;
        let slice = extend(&synthesize(r, false)?, 3, 0.5)?;
        if ok && verify_disjoint(&slice).is_clean() {
            sound += 1;
        }
    }
    let mut complete = 0;
    for p in perturbed_routes(43, 100, &cfg)? {
        let v = validate_c0(&p.route)?;
        let windows: Vec<(f64, f64)> = v
            .violations
            .iter()
            .filter(|x| x.rule() == Rule::Lipschitz)
            .map(|x| x.interval())
            .collect();
        let audit = verify_disjoint(&synthesize(&p.route, true)?);
        let witnessed = audit
            .intersections
            .iter()
            .any(|pair| windows.iter().any(|&(a, b)| pair.t1 <= b && a <= pair.t2));
        if !v.valid && witnessed {
            complete += 1;
        }
    }
    Ok(outcome(
        sound == 100 && complete == 100,
        format!("valid: {sound}/100 validate and audit clean; perturbed: {complete}/100 fail with a witness"),
    ))
}

fn horocycle() -> Result<Outcome, umbilic::Error> {
    let tr = Transversal::horocycle(1.0)?;
    let route = |c: f64| Route::from_fn(tr, (-2.0, 2.0), 41, move |_| c, Some(|_| 0.0));
    let zero = validate_horocycle(&route(0.0)?)?.valid;
    let mut rejected = Vec::new();
    for c in [1e-6, -1e-6, 0.1, -0.5, 1.0] {
        if !validate_horocycle(&route(c)?)?.valid {
            rejected.push(c);
        }
    }
    Ok(outcome(
        zero && rejected.len() == 5,
        format!("h≡0 valid={zero}; constants rejected {}/5", rejected.len()),
    ))
}

/// Circumradius of three pixel points.
fn circumradius(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    let d = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).hypot(p.1 - q.1);
    let (ab, bc, ca) = (d(a, b), d(b, c), d(c, a));
    let area2 = ((b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1)).abs();
    ab * bc * ca / (2.0 * area2)
}

fn rendering() -> Result<Outcome, umbilic::Error> {
    let r = builtin(
        Transversal::Geodesic,
        BuiltinFamily::Pencil,
        (-2.0, 2.0),
        41,
    )?;
    let slice = synthesize(&r, false)?;
    let vp: Viewport = "-3,3,3,600,300".parse()?;
    let (first, second) = (
        render_svg(&slice, &vp, &Style::default())?,
        render_svg(&slice, &vp, &Style::default())?,
    );
    let identical = first == second;
    let text = String::from_utf8(first).expect("svg is utf-8");
    let (left, right) = (vp.to_px((-1.0, 0.0)), vp.to_px((1.0, 0.0)));

    let mut leaves = 0;
    let mut end_err = 0.0f64;
    let mut radius_err = 0.0f64;
    for line in text.lines().filter(|l| l.contains(r#"class="leaf""#)) {
        leaves += 1;
        let d = line
            .split(r#" d=""#)
            .nth(1)
            .and_then(|s| s.split('"').next())
            .unwrap_or("");
        let nums: Vec<f64> = d
            .split_whitespace()
            .filter_map(|tok| tok.parse().ok())
            .collect();
        // M x y A rx ry 0 0 1 x y A rx ry 0 0 1 x y
        if nums.len() != 16 {
            end_err = f64::INFINITY;
            continue;
        }
        let (start, top, end) = ((nums[0], nums[1]), (nums[7], nums[8]), (nums[14], nums[15]));
        let e = (start.0 - left.0)
            .hypot(start.1 - left.1)
            .max((end.0 - right.0).hypot(end.1 - right.1));
        end_err = end_err.max(e);
        radius_err = radius_err.max((circumradius(start, top, end) - nums[2]).abs());
    }
    let pass = identical && leaves == 41 && end_err <= 1.0 && radius_err <= 1.0;
    Ok(outcome(
        pass,
        format!(
            "{leaves} leaves, endpoint err={end_err:.3} px, arc radius err={radius_err:.3} px, byte-identical={identical}"
        ),
    ))
}

fn curvature_budget() -> Result<Outcome, umbilic::Error> {
    let mut worst = f64::NEG_INFINITY;
    let mut routes = 0;
    for r in valid_routes(42, 100, &RandomRouteConfig::default())? {
        let Some(phi) = r.transversal().phi() else {
            continue;
        };
        if !validate_c0(&r)?.valid || phi == FRAC_PI_2 {
            continue;
        }
        routes += 1;
        for s in r.samples() {
            worst = worst.max(s.h * s.h + phi.cos().powi(2));
        }
    }
    Ok(outcome(
        routes > 0 && worst <= 1.0 + 1e-9,
        format!("{routes} hypercycle routes, max h²+cos²φ = {worst:.12}"),
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 9] = [
        ("AC1 exact values", exact_values),
        ("AC2 lemma/oracle agreement", lemma_agreement),
        ("AC3 specialization identities", specializations),
        ("AC4 duality identity", duality),
        ("AC5 pencil route", pencil_route),
        ("AC6 soundness and completeness", soundness),
        ("AC7 horocycle corollary", horocycle),
        ("AC8 rendering", rendering),
        ("AC9 curvature budget", curvature_budget),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let o = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        println!(
            "[{}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failed,
        checks.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
