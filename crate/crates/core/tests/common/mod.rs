#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use tropdiff::diffpoly::{DiffMonomial, DiffPolynomial, GeneratorSet, JetVar};
use tropdiff::frontend::{parse_document, Document};
use tropdiff::linalg;
use tropdiff::rational::{q, qf, Q};
use tropdiff::transform::{kappa_exponent_map, Blowup, TransformSpec};
use tropdiff::{Exponent, Scalar, SeriesSpace, SupportSet, TropValue, TruncatedSeries};

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn doc(text: &str) -> Document {
    parse_document(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

pub fn system(text: &str) -> GeneratorSet {
    doc(text).generator_set().unwrap()
}

pub fn tv(c: &[i64]) -> TropValue {
    TropValue::finite(c.iter().map(|&x| q(x)).collect())
}

pub fn support1(pts: &[i64], bound: Option<i64>) -> SupportSet {
    SupportSet::new(SeriesSpace::standard(1), pts.iter().map(|&p| Exponent::from_ints(&[p])), bound.map(q)).unwrap()
}

/// Univariate series with the given integer exponents and coefficients.
pub fn series1(terms: &[(i64, Q)], bound: Option<Q>) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        SeriesSpace::standard(1),
        terms.iter().map(|(e, c)| (Exponent::from_ints(&[*e]), Scalar::rational(c.clone()))),
        bound,
    )
    .unwrap()
}

pub fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| qf(n, d))
}

pub fn nonzero_q() -> impl Strategy<Value = Q> {
    (prop_oneof![-12i64..=-1, 1i64..=12], 1i64..=6).prop_map(|(n, d)| qf(n, d))
}

pub fn trop_value(rank: usize) -> impl Strategy<Value = TropValue> {
    prop_oneof![
        1 => Just(TropValue::infinite(rank)),
        6 => prop::collection::vec(small_q(), rank).prop_map(TropValue::finite),
    ]
}

/// Scalars in ℚ or ℚ(√2).
pub fn scalar(with_sqrt: bool) -> BoxedStrategy<Scalar> {
    if with_sqrt {
        (small_q(), small_q()).prop_map(|(a, b)| Scalar::quadratic(a, b, 2)).boxed()
    } else {
        small_q().prop_map(Scalar::rational).boxed()
    }
}

/// Series on the standard space in `m` variables with exponents in
/// `0..max_exp`, truncated at a random bound unless `exact`.
pub fn series(m: usize, max_exp: i64, max_terms: usize, exact: bool) -> BoxedStrategy<TruncatedSeries> {
    let terms = prop::collection::vec((prop::collection::vec(0..max_exp, m), small_q()), 0..=max_terms);
    let bound = if exact {
        Just(None).boxed()
    } else {
        prop_oneof![1 => Just(None), 3 => (2i64..=(max_exp * m as i64 + 2)).prop_map(Some)].boxed()
    };
    (terms, bound)
        .prop_map(move |(terms, bound)| {
            TruncatedSeries::from_terms(
                SeriesSpace::standard(m),
                terms.into_iter().map(|(e, c)| (Exponent::from_ints(&e), Scalar::rational(c))),
                bound.map(q),
            )
            .unwrap()
        })
        .boxed()
}

/// Univariate series on grid 2 with coefficients in ℚ(√2).
pub fn puiseux_series() -> BoxedStrategy<TruncatedSeries> {
    let (space, _) = SeriesSpace::new(vec![2], vec![q(1)]).unwrap();
    let terms = prop::collection::vec((0i64..10, scalar(true)), 0..5);
    (terms, prop::option::of(3i64..8))
        .prop_map(move |(terms, bound)| {
            TruncatedSeries::from_terms(
                space.clone(),
                terms.into_iter().map(|(e, c)| (Exponent(vec![qf(e, 2)]), c)),
                bound.map(q),
            )
            .unwrap()
        })
        .boxed()
}

/// A jet of one of `n` dependent variables in `m` independent variables.
pub fn jet(m: usize, n: usize, max_order: u32) -> impl Strategy<Value = JetVar> {
    (0..n, prop::collection::vec(0..=max_order, m)).prop_map(move |(v, mut d)| {
        // keep the total order small
        while d.iter().sum::<u32>() > max_order {
            let i = d.iter().position(|&x| x > 0).unwrap();
            d[i] -= 1;
        }
        JetVar::new(v, d)
    })
}

/// Differential polynomials with exact polynomial coefficients.
pub fn diffpoly(m: usize, n: usize, max_order: u32) -> BoxedStrategy<DiffPolynomial> {
    let mono = prop::collection::vec((jet(m, n, max_order), 1u32..=2), 0..=2)
        .prop_map(DiffMonomial::from_powers);
    let coeff = series(m, 3, 2, true);
    prop::collection::vec((mono, coeff), 1..=4)
        .prop_map(move |terms| {
            DiffPolynomial::from_terms(SeriesSpace::standard(m), n, terms).unwrap()
        })
        .boxed()
}

pub fn space(grid: Vec<u64>, weight: Vec<Q>) -> Arc<SeriesSpace> {
    SeriesSpace::new(grid, weight).unwrap().0
}

/// Random valid specs in one or two variables.
pub fn spec() -> BoxedStrategy<TransformSpec> {
    let shift = (-3i64..=3, 1i64..=3).prop_map(|(n, d)| qf(n, d));
    let one = (1u64..=3, shift.clone()).prop_map(|(k, l)| TransformSpec::new(vec![k], vec![l], vec![]).unwrap());
    let two = (
        prop::collection::vec(1u64..=3, 2),
        prop::collection::vec(shift, 2),
        prop::collection::vec(0usize..2, 0..=2),
    )
        .prop_map(|(k, l, targets)| {
            let blowups = targets.into_iter().map(|target| Blowup { set: vec![0, 1], target }).collect();
            TransformSpec::new(k, l, blowups).unwrap()
        });
    prop_oneof![one, two].boxed()
}

/// A spec and a sparse series whose weight is compatible with it.
pub fn spec_and_series() -> BoxedStrategy<(TransformSpec, TruncatedSeries)> {
    spec()
        .prop_flat_map(|s| {
            let m = s.num_vars();
            (
                Just(s),
                prop::collection::vec(1i64..=3, m),
                prop::collection::vec(1u64..=3, m),
                prop::collection::vec((prop::collection::vec(-3i64..9, m), nonzero_q()), 0..6),
                prop::option::of(2i64..12),
            )
        })
        .prop_map(|(s, wprime, grid, terms, bound)| {
            let (mat, _) = kappa_exponent_map(&s).unwrap();
            let wprime: Vec<Q> = wprime.into_iter().map(q).collect();
            let weight = linalg::mul_vec(&mat, &wprime);
            let (sp, factor) = SeriesSpace::new(grid.clone(), weight).unwrap();
            let terms = terms.into_iter().map(|(e, c)| {
                let e = Exponent(e.iter().zip(&grid).map(|(&x, &d)| qf(x, d as i64)).collect());
                (e, Scalar::rational(c))
            });
            let phi = TruncatedSeries::from_terms(sp, terms, bound.map(|n| q(n) * &factor)).unwrap();
            (s, phi)
        })
        .boxed()
}

