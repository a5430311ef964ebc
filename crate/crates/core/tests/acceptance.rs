//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ginv::along::inverse_along;
use ginv::certificate::{check_system, env, RouteStatus};
use ginv::classical::{core_ep_inverse, core_inverse, group_inverse};
use ginv::oracle::{enumerate_ring, verify_all, RingSpec};
use ginv::regular::mp_inverse;
use ginv::scalar::Gaussian;
use ginv::wcore::{w_core_routes, wcore_as_bc, RouteVerdict};
use ginv::{dual_v_core, w_core, Domain, Execution, Route, RouteSelector, Scalar, StarMatrix, Tolerance};
use rand::Rng;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

const FLOAT_TOL: f64 = 1e-6;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn gauss(v: &[i64]) -> StarMatrix {
    StarMatrix::from_i64(Domain::GaussianRational, 2, 2, v)
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn within(budget: Duration, start: Instant, detail: String) -> Verdict {
    let elapsed = start.elapsed();
    if elapsed > budget {
        return fail(format!("{detail}; took {elapsed:.2?}, budget {budget:.0?}"));
    }
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn err(e: ginv::Error) -> String {
    e.to_string()
}

fn worked_example() -> Verdict {
    let start = Instant::now();
    let a = gauss(&[0, 1, 0, 0]);
    let w = gauss(&[3, 6, 1, 0]);
    let expected = gauss(&[1, 0, 0, 0]);
    let result = w_core(&a, &w, RouteSelector::All, &tol()).map_err(err)?;
    let Some(r) = result.value() else { return fail("w-core reported as nonexistent") };
    if r.value != expected {
        return fail(format!("value {}", r.value));
    }
    if let Some(c) = r.certificate.checks.iter().find(|c| c.residual != 0.0 || !c.passed) {
        return fail(format!("residual {} on {}", c.residual, c.label));
    }
    let mut valued = Vec::new();
    for (route, verdict) in w_core_routes(&a, &w, &tol()).map_err(err)? {
        match verdict {
            RouteVerdict::Value(v) if v == expected => valued.push(route.name()),
            RouteVerdict::Value(v) => return fail(format!("{route} gives {v}")),
            RouteVerdict::NotExists(why) => return fail(format!("{route} reports NotExists: {why}")),
            RouteVerdict::NotApplicable(_) => {}
        }
    }
    for needed in [Route::Mary13, Route::CoreOfAw, Route::ProjectionUnit, Route::RankFormula] {
        if !valued.contains(&needed.name()) {
            return fail(format!("{needed} produced no value"));
        }
    }
    let recorded = r.certificate.routes.iter().filter(|x| x.status == RouteStatus::Value).count();
    if recorded != valued.len() {
        return fail("certificate route records disagree with the route scan");
    }
    match wcore_as_bc(&a, &w, &tol()).map_err(err)?.into_value() {
        Some(v) if v == expected => valued.push("wcore_as_bc"),
        other => return fail(format!("(a,a*)-inverse of aw gives {other:?}")),
    }
    if group_inverse(&a, &tol()).map_err(err)?.exists() || core_inverse(&a, &tol()).map_err(err)?.exists() {
        return fail("group or core inverse of the nilpotent reported as existing");
    }
    within(Duration::from_secs(1), start, format!("routes {} give [[1,0],[0,0]] with zero residuals", valued.join(", ")))
}

fn family() -> Verdict {
    let start = Instant::now();
    let a = gauss(&[0, 1, 0, 0]);
    let expected = gauss(&[1, 0, 0, 0]);
    for x in 0..5 {
        for y in 0..5 {
            let w = gauss(&[x, y, 1, 0]);
            let got = w_core(&a, &w, RouteSelector::All, &tol()).map_err(err)?.into_value().map(|r| r.value);
            if got.as_ref() != Some(&expected) {
                return fail(format!("w = [[{x},{y}],[1,0]] gives {got:?}"));
            }
        }
    }
    within(Duration::from_secs(1), start, "25 of 25 pairs give [[1,0],[0,0]]".into())
}

fn non_idempotent() -> Verdict {
    let a = gauss(&[0, 1, 0, 0]);
    let w = gauss(&[0, 0, 1, 0]);
    let Some(x) = w_core(&a, &w, RouteSelector::All, &tol()).map_err(err)?.into_value() else {
        return fail("first application reported nonexistent");
    };
    if x.value != gauss(&[1, 0, 0, 0]) {
        return fail(format!("first application gives {}", x.value));
    }
    let xwx = &(&x.value * &w) * &x.value;
    if !xwx.is_zero() {
        return fail(format!("x w x = {xwx}"));
    }
    match w_core(&x.value, &w, RouteSelector::All, &tol()).map_err(err)? {
        ginv::Outcome::NotExists(why) => Ok(format!("a_w = e11, x w x = 0, and e11 has no w-core inverse ({why})")),
        ginv::Outcome::Exists(r) => fail(format!("second application gives {}", r.value)),
    }
}

fn theorem_suite() -> Verdict {
    let start = Instant::now();
    let mut total = 0u64;
    let mut reports = 0;
    let mut skipped = Vec::new();
    let rings = ["zmod:2", "zmod:3", "zmod:4", "zmod:5", "zmod:6", "zmod:8", "zmod:9", "zmod:12", "mat:2:gf2"];
    for spec in rings {
        let spec: RingSpec = spec.parse().map_err(err)?;
        let ring = enumerate_ring(&spec).map_err(err)?;
        for r in verify_all(&ring, Execution::Parallel).map_err(err)? {
            reports += 1;
            total += r.instances_checked;
            if let Some(why) = &r.skipped {
                skipped.push(format!("{} on {spec}: {why}", r.theorem_id));
            }
            if !r.passed() {
                return fail(format!("{} on {spec}: {:?}", r.theorem_id, r.counterexamples));
            }
        }
    }
    if !skipped.is_empty() {
        return fail(format!("skipped: {}", skipped.join("; ")));
    }
    within(
        Duration::from_secs(600),
        start,
        format!("{reports} reports over {} rings, {total} instances, zero counterexamples", rings.len()),
    )
}

/// Rank profiles cycle through existing and nonexisting configurations.
fn coherence_suite() -> Vec<(StarMatrix, StarMatrix)> {
    let mut rng = common::rng(0xacce);
    (0..1000)
        .map(|i| {
            let r = 1 + i % 4;
            match i % 5 {
                0 => (common::complex_with_rank(&mut rng, 4, r), common::complex(&mut rng, 4, 4)),
                1 => {
                    let r = r.max(2);
                    (common::complex_with_rank(&mut rng, 4, r), common::complex_with_rank(&mut rng, 4, r - 1))
                }
                2 => (
                    common::complex_with_index(&mut rng, 4, 2 + i % 3),
                    StarMatrix::identity(Domain::ComplexFloat, 4),
                ),
                3 => (common::complex_with_rank(&mut rng, 4, r), common::complex_with_rank(&mut rng, 4, r)),
                _ => {
                    let rank = rng.random_range(0..=4);
                    let a = common::complex_with_rank(&mut rng, 4, rank);
                    let w = a.adjoint();
                    (a, w)
                }
            }
        })
        .collect()
}

fn route_coherence(suite: &[(StarMatrix, StarMatrix)]) -> Verdict {
    let start = Instant::now();
    let t = tol();
    let (mut exist, mut absent) = (0, 0);
    for (i, (a, w)) in suite.iter().enumerate() {
        let awa = &(a * w) * a;
        let criterion = a.rank(&t).map_err(err)? == awa.rank(&t).map_err(err)?;
        let out = w_core(a, w, RouteSelector::All, &t).map_err(|e| format!("pair {i}: {e}"))?;
        let routes = w_core_routes(a, w, &t).map_err(|e| format!("pair {i}: {e}"))?;
        if criterion {
            exist += 1;
            let Some(r) = out.value() else { return fail(format!("pair {i}: rank criterion holds, no value")) };
            let e = env(&[('a', a), ('w', w), ('x', &r.value)]);
            let eqs = ["awx^2=x", "xawa=a", "(awx)*=awx", "awxa=a", "xawx=x"];
            let checks = check_system(&eqs, &e, &t).map_err(err)?;
            if let Some(c) = checks.iter().find(|c| !c.passed) {
                return fail(format!("pair {i}: {} residual {:.3e}", c.label, c.residual));
            }
            for (route, verdict) in &routes {
                match verdict {
                    RouteVerdict::Value(v) if common::rel_dist(v, &r.value) <= FLOAT_TOL => {}
                    RouteVerdict::Value(v) => {
                        return fail(format!("pair {i}: {route} off by {:.3e}", common::rel_dist(v, &r.value)))
                    }
                    RouteVerdict::NotExists(why) => return fail(format!("pair {i}: {route} reports NotExists: {why}")),
                    RouteVerdict::NotApplicable(_) => {}
                }
            }
        } else {
            absent += 1;
            if out.exists() {
                return fail(format!("pair {i}: ranks differ but a value was returned"));
            }
            if let Some((route, _)) = routes.iter().find(|(_, v)| matches!(v, RouteVerdict::Value(_))) {
                return fail(format!("pair {i}: ranks differ but {route} returned a value"));
            }
        }
    }
    if exist == 0 || absent == 0 {
        return fail(format!("suite is one-sided: {exist} existing, {absent} not"));
    }
    within(
        Duration::from_secs(30),
        start,
        format!("{} pairs, {exist} existing with all five equations certified, {absent} rejected by every route", suite.len()),
    )
}

fn rank_formula(suite: &[(StarMatrix, StarMatrix)]) -> Verdict {
    let t = tol();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for (i, (a, w)) in suite.iter().enumerate() {
        let Some(x) = w_core(a, w, RouteSelector::Only(Route::Mary13), &t).map_err(err)?.into_value() else {
            continue;
        };
        let awa = &(a * w) * a;
        let pinv_awa = mp_inverse(&awa, &t).map_err(err)?.unwrap().value;
        let pinv_a = mp_inverse(a, &t).map_err(err)?.unwrap().value;
        let lhs = &(&(a * &pinv_awa) * a) * &pinv_a;
        let Some(along) = inverse_along(w, a, &t).map_err(err)?.into_value() else {
            return fail(format!("pair {i}: w-core exists but w is not invertible along a"));
        };
        let rhs = &along.value * &pinv_a;
        let d = common::rel_dist(&lhs, &rhs).max(common::rel_dist(&lhs, &x.value));
        worst = worst.max(d);
        if d > FLOAT_TOL {
            return fail(format!("pair {i}: relative distance {d:.3e}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} existing pairs, worst relative distance {worst:.2e}"))
}

fn special_cases() -> Verdict {
    let t = tol();
    let mut rng = common::rng(0x5bec);
    let mut worst = 0.0f64;
    let mut track = |d: f64, what: &str, i: usize| -> Result<(), String> {
        worst = worst.max(d);
        if d > FLOAT_TOL {
            return fail(format!("{what} on instance {i}: {d:.3e}"));
        }
        Ok(())
    };
    for i in 0..200 {
        let a = common::complex_group_invertible(&mut rng, 4, 1 + i % 4);
        let x = w_core(&a, &a, RouteSelector::All, &t).map_err(err)?;
        let Some(x) = x.into_value() else { return fail(format!("a-core missing on group-invertible instance {i}")) };
        let g = group_inverse(&a, &t).map_err(err)?.unwrap().value;
        let c = core_inverse(&a, &t).map_err(err)?.unwrap().value;
        track(common::rel_dist(&x.value, &(&g * &c)), "a_a = a^# a^core", i)?;
        track(common::rel_dist(&c, &(&a * &x.value)), "a^core = a a_a", i)?;
    }
    for i in 0..200 {
        let a = common::complex_with_rank(&mut rng, 4, i % 5);
        let s = a.adjoint();
        let m = mp_inverse(&a, &t).map_err(err)?.unwrap().value;
        let Some(x) = w_core(&a, &s, RouteSelector::All, &t).map_err(err)?.into_value() else {
            return fail(format!("a*-core missing on instance {i}"));
        };
        let Some(y) = dual_v_core(&a, &s, RouteSelector::All, &t).map_err(err)?.into_value() else {
            return fail(format!("dual a*-core missing on instance {i}"));
        };
        track(common::rel_dist(&x.value, &(&m.adjoint() * &m)), "a_(a*) = (a+)* a+", i)?;
        track(common::rel_dist(&y.value, &(&m * &m.adjoint())), "dual a_(a*) = a+ (a+)*", i)?;
    }
    Ok(format!("400 instances, worst relative distance {worst:.2e}"))
}

fn pseudo_core() -> Verdict {
    let t = tol();
    let mut rng = common::rng(0xc0e9);
    let mut worst = 0.0f64;
    let mut count = 0;
    for index in 1..=3 {
        for i in 0..40 {
            let a = common::complex_with_index(&mut rng, 5, index);
            let Some(ep) = core_ep_inverse(&a, &t).map_err(err)?.into_value() else {
                return fail(format!("index {index}, instance {i}: core-EP missing"));
            };
            if ep.index != Some(index) {
                return fail(format!("index {index}, instance {i}: reported index {:?}", ep.index));
            }
            let an = a.pow(index);
            let Some(c) = core_inverse(&an, &t).map_err(err)?.into_value() else {
                return fail(format!("index {index}, instance {i}: a^n not core invertible"));
            };
            let via_core = &a.pow(index - 1) * &c.value;
            let Some(x) = w_core(&an, &a, RouteSelector::All, &t).map_err(err)?.into_value() else {
                return fail(format!("index {index}, instance {i}: a^n has no a-core inverse"));
            };
            let via_weight = &an * &x.value;
            let d = common::rel_dist(&ep.value, &via_core).max(common::rel_dist(&ep.value, &via_weight));
            worst = worst.max(d);
            if d > FLOAT_TOL {
                return fail(format!("index {index}, instance {i}: relative distance {d:.3e}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} 5x5 instances with index 1..3, worst relative distance {worst:.2e}"))
}

fn scaling() -> Verdict {
    let t = tol();
    let mut rng = common::rng(0x5ca1e);
    let lambdas = [
        Scalar::Gaussian(Gaussian::from_ints(2, 0)),
        Scalar::Gaussian(Gaussian::from_ints(-1, 0)),
        Scalar::Gaussian(Gaussian::from_ints(3, 4)),
    ];
    let mut found = 0;
    let mut tried = 0;
    while found < 100 {
        tried += 1;
        if tried > 2000 {
            return fail(format!("only {found} existing instances in {tried} draws"));
        }
        let rank = rng.random_range(1..=3);
        let a = common::gaussian_with_rank(&mut rng, 3, rank, 2);
        let w = common::gaussian(&mut rng, 3, 3, 2);
        let Some(x) = w_core(&a, &w, RouteSelector::All, &t).map_err(err)?.into_value() else { continue };
        found += 1;
        for l in &lambdas {
            let scaled = w_core(&a.scale(l), &w, RouteSelector::All, &t).map_err(err)?.into_value();
            let expected = x.value.scale(&l.inv().map_err(|e| e.to_string())?);
            if scaled.as_ref().map(|r| &r.value) != Some(&expected) {
                return fail(format!("instance {found}, lambda {l:?}: scaled inverse differs"));
            }
        }
    }
    Ok(format!("{found} existing instances x 3 scalars equal exactly"))
}

fn main() -> ExitCode {
    let suite = coherence_suite();
    let criteria: Vec<Criterion> = vec![
        ("worked example on every route", Box::new(worked_example)),
        ("family w = [[x,y],[1,0]]", Box::new(family)),
        ("non-idempotence of the construction", Box::new(non_idempotent)),
        ("exhaustive theorem suite", Box::new(theorem_suite)),
        ("float route coherence", Box::new(|| route_coherence(&suite))),
        ("rank formula vs inverse along", Box::new(|| rank_formula(&suite))),
        ("special-case collapses", Box::new(special_cases)),
        ("pseudo-core consistency", Box::new(pseudo_core)),
        ("scaling law", Box::new(scaling)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
