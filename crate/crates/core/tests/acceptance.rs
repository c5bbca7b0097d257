//! Acceptance run: one line per criterion, exit status 1 if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use tropdiff::diffpoly::{is_solution_mod_bound, DiffMonomial, DiffPolynomial, GeneratorSet, JetVar};
use tropdiff::frontend::commands;
use tropdiff::rational::{q, qf, Q};
use tropdiff::transform::{
    inverse_transform_support, support_equivariance_check, support_roundtrip_check, transform_series,
    transform_system, TransformSpec,
};
use tropdiff::transseries::is_trop_solution_logs;
use tropdiff::tropical::tropically_vanishes;
use tropdiff::tropicalize::{is_tropical_solution_up_to, search_boolean_solutions};
use tropdiff::{BoolTransseries, CoeffValuation, Exponent, LogMonomial, Scalar, SeriesSpace, SupportSet, TruncatedSeries};

const TRIVIAL: CoeffValuation = CoeffValuation::Trivial;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn ensure(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn read_system(name: &str) -> tropdiff::frontend::Document {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../systems").join(name);
    doc(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
}

fn axioms() -> Outcome {
    run_cases(1000, (trop_value(2), trop_value(2), trop_value(2)), |(a, b, c)| {
        let add = |x: &tropdiff::TropValue, y: &tropdiff::TropValue| x.trop_add(y).unwrap();
        let mul = |x: &tropdiff::TropValue, y: &tropdiff::TropValue| x.trop_mul(y).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(add(&a, &a), a.clone());
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert!(mul(&a, &tropdiff::TropValue::infinite(2)).is_infinite());
        Ok(())
    })?;
    let vk = prop_oneof![Just(TRIVIAL), Just(CoeffValuation::PAdic(2)), Just(CoeffValuation::PAdic(5))];
    run_cases(1000, (series(1, 6, 4, true), series(1, 6, 4, true), vk), |(a, b, vk)| {
        let (va, vb) = (a.valuation(vk).unwrap(), b.valuation(vk).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap().valuation(vk).unwrap(), va.trop_mul(&vb).unwrap());
        let vs = a.checked_add(&b).unwrap().valuation(vk).unwrap();
        prop_assert!(tropically_vanishes(&[vs, va, vb]).unwrap());
        Ok(())
    })
}

/// Series with distinct exponents and nonzero coefficients, so the lowest
/// term is known.
fn determinate_series() -> impl Strategy<Value = TruncatedSeries> {
    (prop::collection::btree_map(0i64..10, nonzero_q(), 0..6), prop::option::of(0i64..4)).prop_map(|(terms, extra)| {
        let bound = terms.keys().max().and_then(|top| extra.map(|x| q(top + 1 + x)));
        let terms: Vec<(i64, Q)> = terms.into_iter().collect();
        series1(&terms, bound)
    })
}

fn triangle() -> Outcome {
    run_cases(500, determinate_series(), |a| {
        let v = a.valuation(TRIVIAL).unwrap();
        prop_assert_eq!(a.support().phi().unwrap(), v.clone());
        // the value is the lowest exponent paired with 0
        match a.terms().keys().next() {
            None => prop_assert!(v.is_infinite()),
            Some(e) => prop_assert_eq!(v, tropdiff::TropValue::finite(vec![e.0[0].clone(), q(0)])),
        }
        Ok(())
    })
}

fn lm(a: i64, b: i64) -> LogMonomial {
    LogMonomial::new(a, b)
}

fn counterexample() -> Outcome {
    let d = read_system("example_sec3.sys");
    let report = commands::tropicalize_cmd(&d, 1).map_err(|e| e.to_string())?;
    ensure(
        report.text == "F: (1,0)x' + (0,0)x + (1,0)\nd^1 F: (1,0)x'' + (0,0)\n",
        &format!("tropicalization printed as {:?}", report.text),
    )?;
    let g = d.generator_set().unwrap();
    ensure(search_boolean_solutions(&g, 10, 8, TRIVIAL).unwrap().is_empty(), "search found a support")?;
    let a = BoolTransseries::exact([lm(1, 1)]);
    let b = BoolTransseries::exact([lm(1, 0), lm(1, 1)]);
    let w = a.union(&BoolTransseries::exact([lm(2, 5)]));
    let wb = b.union(&BoolTransseries::exact([lm(2, 5)]));
    for k in 0..=8 {
        for (name, cand) in [("t log t", &a), ("t + t log t", &b), ("witness", &w), ("witness over t + t log t", &wb)] {
            ensure(
                is_trop_solution_logs(&g, std::slice::from_ref(cand), k, TRIVIAL).unwrap(),
                &format!("{name} rejected at K = {k}"),
            )?;
        }
    }
    Ok(())
}

fn puiseux_example() -> Outcome {
    let d = read_system("example_sec4.sys");
    let g = d.generator_set().unwrap();
    let spec = TransformSpec::parse("power 2; shift 0", 1).unwrap();
    let out = transform_system(&spec, &g).unwrap();
    let expected = system("dep z; F = z*z' - 2*t;");
    ensure(out.generators() == expected.generators(), "transformed generator differs")?;
    let phi = d.series_named("phi").unwrap();
    let squared = phi[0].checked_mul(&phi[0]).unwrap();
    ensure(squared == series1(&[(1, q(2))], None), "phi^2 is not 2t")?;
    ensure(is_solution_mod_bound(&g, phi, &q(20)).unwrap(), "phi fails the oracle")?;
    let psi = transform_series(&spec, phi).unwrap();
    let sqrt2_t = TruncatedSeries::monomial(SeriesSpace::standard(1), Scalar::sqrt(2), Exponent::from_ints(&[1])).unwrap();
    ensure(psi[0] == sqrt2_t, "psi is not sqrt(2)*t")?;
    ensure(is_solution_mod_bound(&out, &psi, &q(20)).unwrap(), "psi fails the oracle")
}

/// binom(1/2, i) by the product formula.
fn half_binomial(i: i64) -> Q {
    (0..i).fold(q(1), |acc, j| acc * (qf(1, 2) - q(j)) / q(j + 1))
}

fn partial_example() -> Outcome {
    let n = 12;
    let d = read_system("example_sec2.sys");
    let spec = d.spec_named("S").unwrap().clone();
    let out = transform_system(&spec, &d.generator_set().unwrap()).unwrap();
    let expected = read_system("example_sec2_transformed.sys").generator_set().unwrap();
    ensure(out.generators() == expected.generators(), "transformed generators differ")?;

    let psi = TruncatedSeries::from_terms(
        SeriesSpace::standard(2),
        (0..n).map(|i| (Exponent::from_ints(&[i, 0]), Scalar::rational(half_binomial(i)))),
        Some(q(n)),
    )
    .unwrap();
    ensure(is_solution_mod_bound(&out, std::slice::from_ref(&psi), &q(n - 1)).unwrap(), "psi fails the oracle")?;
    let phi = d.series_named("phi").unwrap();
    ensure(transform_series(&spec, phi).unwrap()[0] == psi, "phi does not transform to psi")?;

    let support = SupportSet::exact(SeriesSpace::standard(2), (0..n).map(|i| Exponent::from_ints(&[i, 0]))).unwrap();
    for k in 0..=3 {
        ensure(
            is_tropical_solution_up_to(&out, std::slice::from_ref(&support), k, TRIVIAL).unwrap(),
            &format!("support rejected at K = {k}"),
        )?;
    }
    // √(t1 + t2) = Σ binom(1/2, i) t1^i t2^(1/2 - i); weight (2, 1) puts
    // the i-th term at weight i + 1/2.
    let truncated = SupportSet::new(SeriesSpace::standard(2), psi.terms().keys().cloned(), Some(q(n))).unwrap();
    let (sp, _) = SeriesSpace::new(vec![1, 2], vec![q(2), q(1)]).unwrap();
    let sqrt_support = SupportSet::new(
        sp,
        (0..n).filter(|&i| half_binomial(i) != q(0)).map(|i| Exponent(vec![q(i), qf(1, 2) - q(i)])),
        Some(q(n) + qf(1, 2)),
    )
    .unwrap();
    ensure(
        inverse_transform_support(&spec, &truncated).unwrap() == sqrt_support,
        "inverse image differs from supp(sqrt(t1 + t2))",
    )
}

/// `a·x' + b·x + c` with `c = -(a·φ' + b·φ)` for a polynomial `φ`.
fn linear_instance() -> impl Strategy<Value = (GeneratorSet, TruncatedSeries)> {
    (
        prop::collection::btree_map(0i64..6, nonzero_q(), 0..5),
        series(1, 3, 3, true),
        series(1, 3, 3, true),
    )
        .prop_map(|(phi, a, b)| {
            let phi: Vec<(i64, Q)> = phi.into_iter().collect();
            let phi = series1(&phi, None);
            let a = a.checked_add(&series1(&[(0, q(1))], None)).unwrap();
            let c = a
                .checked_mul(&phi.derivative(0))
                .unwrap()
                .checked_add(&b.checked_mul(&phi).unwrap())
                .unwrap()
                .neg();
            let x = JetVar::base(0, 1);
            let f = DiffPolynomial::from_terms(
                SeriesSpace::standard(1),
                1,
                [(DiffMonomial::jet(x.derive(0)), a), (DiffMonomial::jet(x), b), (DiffMonomial::one(), c)],
            )
            .unwrap();
            (GeneratorSet::new(vec![f]).unwrap(), phi)
        })
}

fn forward_inclusion() -> Outcome {
    run_cases(100, linear_instance(), |(g, phi)| {
        prop_assert!(is_solution_mod_bound(&g, std::slice::from_ref(&phi), &q(30)).unwrap());
        let b = [phi.support()];
        for k in 0..=5 {
            prop_assert!(is_tropical_solution_up_to(&g, &b, k, TRIVIAL).unwrap(), "K = {}", k);
        }
        Ok(())
    })
}

fn round_trip() -> Outcome {
    run_cases(200, spec_and_series(), |(s, phi)| {
        prop_assert!(support_equivariance_check(&s, std::slice::from_ref(&phi)).unwrap());
        prop_assert!(support_roundtrip_check(&s, &phi.support()).unwrap());
        Ok(())
    })
}

fn chain_rule() -> Outcome {
    let strategy = (diffpoly(2, 2, 2), series(2, 5, 4, false), series(2, 5, 4, false), 0usize..2);
    run_cases(200, strategy, |(f, p0, p1, j)| {
        let phi = [p0, p1];
        let lhs = f.total_derivative(j).substitute(&phi).unwrap();
        let rhs = f.substitute(&phi).unwrap().derivative(j);
        let n = match (lhs.bound(), rhs.bound()) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.or(b).cloned(),
        };
        match n {
            None => prop_assert_eq!(lhs, rhs),
            Some(n) => prop_assert_eq!(lhs.truncate(n.clone()), rhs.truncate(n)),
        }
        Ok(())
    })
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("semiring and valuation axioms", axioms, Some(Duration::from_secs(10))),
        ("commutative triangle", triangle, None),
        ("counterexample replay", counterexample, Some(Duration::from_secs(5))),
        ("Puiseux example x*x' = 1", puiseux_example, Some(Duration::from_secs(2))),
        ("partial example sqrt(t1 + t2)", partial_example, Some(Duration::from_secs(10))),
        ("forward inclusion", forward_inclusion, None),
        ("round trip and equivariance", round_trip, None),
        ("chain rule", chain_rule, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(()), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (r, _) => r,
        };
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
