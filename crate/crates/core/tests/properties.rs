mod common;

use ginv::along::{inverse_along, jacobson_partner};
use ginv::certificate::{check_system, env};
use ginv::classical::core_inverse;
use ginv::scalar::Gaussian;
use ginv::wcore::{section3_units, w_core_batch, w_core_routes, RouteVerdict};
use ginv::{dual_v_core, regular, w_core, Domain, Execution, Route, RouteSelector, Scalar, StarMatrix, Tolerance};
use proptest::collection::vec;
use proptest::prelude::*;

/// A square matrix `F G` with `F` n x r and `G` r x n.
fn low_rank(domain: Domain, n: usize, r: usize, f: &[i64], g: &[i64]) -> StarMatrix {
    if r == 0 {
        return StarMatrix::zeros(domain, n, n);
    }
    let build = |rows, cols, src: &[i64], shift: usize| {
        StarMatrix::from_fn(domain, rows, cols, |i, j| {
            let k = (i * cols + j) * 2 + shift;
            match domain {
                Domain::GaussianRational => Scalar::Gaussian(Gaussian::from_ints(src[k % src.len()], src[(k + 1) % src.len()])),
                d => d.from_i64(src[k % src.len()]),
            }
        })
    };
    &build(n, r, f, 0) * &build(r, n, g, 1)
}

fn square(domain: Domain) -> impl Strategy<Value = StarMatrix> {
    (1usize..=3, 0usize..=3, vec(-2i64..=2, 32), vec(-2i64..=2, 32))
        .prop_map(move |(n, r, f, g)| low_rank(domain, 3, r.min(n.max(r)), &f, &g))
}

fn pair(domain: Domain) -> impl Strategy<Value = (StarMatrix, StarMatrix)> {
    (square(domain), square(domain))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn rank(m: &StarMatrix) -> usize {
    m.rank(&tol()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn derived_equations_hold((a, w) in pair(Domain::Rational)) {
        if let Some(r) = w_core(&a, &w, RouteSelector::All, &tol()).unwrap().into_value() {
            prop_assert!(r.certificate.passed());
            let e = env(&[('a', &a), ('w', &w), ('x', &r.value)]);
            let checks = check_system(&["awxa=a", "xawx=x"], &e, &tol()).unwrap();
            prop_assert!(checks.iter().all(|c| c.passed && c.residual == 0.0));
            let wx = &w * &r.value;
            let e = env(&[('a', &a), ('x', &wx)]);
            let checks = check_system(&["axa=a", "xax=x", "(ax)*=ax"], &e, &tol()).unwrap();
            prop_assert!(checks.iter().all(|c| c.passed));
        }
    }

    #[test]
    fn routes_cohere_and_match_the_rank_criterion((a, w) in pair(Domain::GaussianRational)) {
        let out = w_core(&a, &w, RouteSelector::All, &tol()).unwrap();
        let awa = &(&a * &w) * &a;
        prop_assert_eq!(out.exists(), rank(&a) == rank(&awa));
        for (route, verdict) in w_core_routes(&a, &w, &tol()).unwrap() {
            match (verdict, out.value()) {
                (RouteVerdict::Value(v), Some(r)) => prop_assert_eq!(&v, &r.value, "{}", route),
                (RouteVerdict::Value(_), None) => prop_assert!(false, "{} found a value", route),
                (RouteVerdict::NotExists(_), Some(_)) => prop_assert!(false, "{} found none", route),
                _ => {}
            }
        }
    }

    #[test]
    fn single_route_selection_agrees((a, w) in pair(Domain::Rational)) {
        let all = w_core(&a, &w, RouteSelector::All, &tol()).unwrap();
        for route in [Route::Mary13, Route::CoreOfAw, Route::ProjectionUnit, Route::RankFormula] {
            let one = w_core(&a, &w, RouteSelector::Only(route), &tol()).unwrap();
            prop_assert_eq!(one.value().map(|r| &r.value), all.value().map(|r| &r.value));
        }
    }

    #[test]
    fn relation_to_inverse_along_and_core((a, w) in pair(Domain::GaussianRational)) {
        let out = w_core(&a, &w, RouteSelector::All, &tol()).unwrap();
        let along = inverse_along(&w, &a, &tol()).unwrap();
        prop_assert_eq!(out.exists(), along.exists());
        if let (Some(x), Some(g)) = (out.value(), along.value()) {
            prop_assert_eq!(&(&x.value * &a), &g.value);
            let c = core_inverse(&(&a * &w), &tol()).unwrap().unwrap();
            prop_assert_eq!(&c.value, &x.value);
        }
    }

    #[test]
    fn star_duality((a, w) in pair(Domain::GaussianRational)) {
        let x = w_core(&a, &w, RouteSelector::All, &tol()).unwrap();
        let y = dual_v_core(&a.adjoint(), &w.adjoint(), RouteSelector::All, &tol()).unwrap();
        prop_assert_eq!(x.value().map(|r| r.value.adjoint()), y.value().map(|r| r.value.clone()));
    }

    #[test]
    fn annihilators_match((a, w) in pair(Domain::GaussianRational)) {
        if let Some(r) = w_core(&a, &w, RouteSelector::All, &tol()).unwrap().into_value() {
            let x = r.value;
            // Left annihilators agree iff the column spaces agree.
            let joint = a.hstack(&x).unwrap();
            prop_assert!(rank(&x) == rank(&a) && rank(&joint) == rank(&a));
            // Right annihilators of x and a* agree iff x* and a share a column space.
            let joint = x.adjoint().hstack(&a).unwrap();
            prop_assert_eq!(rank(&joint), rank(&a));
        }
    }

    #[test]
    fn ideal_form_for_n_two_and_three((a, w) in pair(Domain::Rational)) {
        let exists = w_core(&a, &w, RouteSelector::All, &tol()).unwrap().exists();
        let aw = &a * &w;
        let in_left = |m: &StarMatrix| m.solve_left(&a, &tol()).unwrap().is_some();
        for n in [2usize, 3] {
            let first = &aw.adjoint().pow(n) * &a;
            let second = &aw.pow(n - 1) * &a;
            prop_assert_eq!(exists, in_left(&first) && in_left(&second), "n = {}", n);
        }
    }

    #[test]
    fn jacobson_symmetry((a, b) in pair(Domain::Rational)) {
        let id = StarMatrix::identity(Domain::Rational, 3);
        let alpha = &id - &(&a * &b);
        let beta = &id - &(&b * &a);
        let ai = alpha.inverse(&tol()).unwrap();
        let bi = beta.inverse(&tol()).unwrap();
        prop_assert_eq!(ai.is_some(), bi.is_some());
        if let (Some(ai), Some(bi)) = (ai, bi) {
            prop_assert_eq!(jacobson_partner(&a, &b, &ai, &tol()).unwrap(), bi);
        }
    }

    #[test]
    fn scaling_law((a, w) in pair(Domain::GaussianRational), re in -3i64..=3, im in -3i64..=3) {
        prop_assume!(re != 0 || im != 0);
        let lambda = Scalar::Gaussian(Gaussian::from_ints(re, im));
        let x = w_core(&a, &w, RouteSelector::All, &tol()).unwrap();
        let y = w_core(&a.scale(&lambda), &w, RouteSelector::All, &tol()).unwrap();
        let inv = lambda.inv().unwrap();
        prop_assert_eq!(x.value().map(|r| r.value.scale(&inv)), y.value().map(|r| r.value.clone()));
    }

    #[test]
    fn unit_criteria((a, w) in pair(Domain::Rational), v in square(Domain::Rational)) {
        let a_inner = regular::inner_inverse(&a, &tol()).unwrap().value;
        let report = section3_units(&a, &w, &v, &a_inner, &tol()).unwrap();
        let joint = report.joint_units.iter().all(|u| u.invertible);
        prop_assert_eq!(joint, report.w_core_exists && report.dual_v_core_exists);
        let single = report.single_units.iter().all(|u| u.invertible);
        prop_assert_eq!(single, report.w_core_exists && report.dual_w_core_exists);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn float_routes_agree(seed in any::<u64>(), ra in 0usize..=4, rw in 1usize..=4) {
        let mut rng = common::rng(seed);
        let a = common::complex_with_rank(&mut rng, 4, ra);
        let w = common::complex_with_rank(&mut rng, 4, rw);
        let t = tol();
        let out = w_core(&a, &w, RouteSelector::All, &t).unwrap();
        let awa = &(&a * &w) * &a;
        prop_assert_eq!(out.exists(), rank(&a) == rank(&awa));
        if let Some(r) = out.value() {
            prop_assert!(r.certificate.passed());
            for (route, verdict) in w_core_routes(&a, &w, &t).unwrap() {
                if let RouteVerdict::Value(v) = verdict {
                    prop_assert!(common::rel_dist(&v, &r.value) < 1e-6, "{}", route);
                }
            }
        }
    }
}

#[test]
fn batch_modes_agree() {
    let mut rng = common::rng(7);
    let pairs: Vec<_> = (0..40)
        .map(|i| (common::rational_with_rank(&mut rng, 3, i % 4, 2), common::rational(&mut rng, 3, 3, 2)))
        .collect();
    let seq = w_core_batch(&pairs, RouteSelector::All, &tol(), Execution::Sequential);
    let par = w_core_batch(&pairs, RouteSelector::All, &tol(), Execution::Parallel);
    for (s, p) in seq.into_iter().zip(par) {
        let (s, p) = (s.unwrap(), p.unwrap());
        assert_eq!(s.value().map(|r| &r.value), p.value().map(|r| &r.value));
    }
}

/// The ideal form with `n = 1` is strictly weaker than w-core invertibility,
/// already for 2 x 2 matrices.
#[test]
fn ideal_form_with_n_one_is_weaker() {
    let a = StarMatrix::from_i64(Domain::Rational, 2, 2, &[1, 0, 0, 0]);
    let w = StarMatrix::from_i64(Domain::Rational, 2, 2, &[0, 1, 0, 0]);
    let aw = &a * &w;
    let first = &aw.adjoint() * &a;
    assert!(first.solve_left(&a, &tol()).unwrap().is_some());
    assert!(!w_core(&a, &w, RouteSelector::All, &tol()).unwrap().exists());
}
