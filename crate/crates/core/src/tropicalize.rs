//! Tropicalization of differential polynomials and the tropical solution
//! test: a tuple of supports solves `trop(f)` when the minimum of the
//! evaluated terms is attained at least twice.
//!
//! The checker only sees finitely many ideal elements (`∂^α F` for
//! `|α| ≤ K`), so a `false` is certain while a `true` is evidence up to `K`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::diffpoly::{DiffMonomial, DiffPolynomial, GeneratorSet, JetVar};
use crate::error::{Error, Result};
use crate::scalar::CoeffValuation;
use crate::series::{Exponent, SeriesSpace, SupportSet};
use crate::tropical::{tropically_vanishes, TropValue};

/// `Σ v(A_λ)·x^λ`; Infinite coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TropDiffPolynomial {
    num_indep: usize,
    num_dep: usize,
    terms: BTreeMap<DiffMonomial, TropValue>,
}

impl TropDiffPolynomial {
    pub fn new(num_indep: usize, num_dep: usize, terms: BTreeMap<DiffMonomial, TropValue>) -> Self {
        let terms = terms.into_iter().filter(|(_, v)| !v.is_infinite()).collect();
        TropDiffPolynomial {
            num_indep,
            num_dep,
            terms,
        }
    }

    pub fn terms(&self) -> &BTreeMap<DiffMonomial, TropValue> {
        &self.terms
    }

    pub fn num_indep(&self) -> usize {
        self.num_indep
    }

    pub fn num_dep(&self) -> usize {
        self.num_dep
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(1,0)x' + (0,0)x + (1,0)`.
    pub fn format_with(&self, tnames: &[String], xnames: &[String]) -> String {
        if self.terms.is_empty() {
            return "inf".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, v)| format!("{v}{}", m.format_with(tnames, xnames)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for TropDiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = SeriesSpace::standard(self.num_indep);
        let xnames: Vec<String> = if self.num_dep == 1 {
            vec!["x".into()]
        } else {
            (1..=self.num_dep).map(|i| format!("x{i}")).collect()
        };
        write!(f, "{}", self.format_with(&space.default_names(), &xnames))
    }
}

/// Applies the valuation coefficient-wise.
pub fn tropicalize(f: &DiffPolynomial, vk: CoeffValuation) -> Result<TropDiffPolynomial> {
    let mut terms = BTreeMap::new();
    for (m, c) in f.terms() {
        terms.insert(m.clone(), c.valuation(vk)?);
    }
    Ok(TropDiffPolynomial::new(f.num_indep(), f.num_dep(), terms))
}

/// Memo of `Φ(∂^α B_i)` for one support tuple.
pub struct PhiCache<'a> {
    supports: &'a [SupportSet],
    values: BTreeMap<JetVar, Result<TropValue>>,
}

impl<'a> PhiCache<'a> {
    pub fn new(supports: &'a [SupportSet]) -> Self {
        PhiCache {
            supports,
            values: BTreeMap::new(),
        }
    }

    pub fn value(&mut self, jet: &JetVar) -> Result<TropValue> {
        if let Some(v) = self.values.get(jet) {
            return v.clone();
        }
        let v = self.supports[jet.var].derivative_multi(&jet.deriv).phi();
        self.values.insert(jet.clone(), v.clone());
        v
    }
}

fn check_supports(num_dep: usize, rank: usize, b: &[SupportSet]) -> Result<()> {
    if b.len() != num_dep {
        return Err(Error::InvalidArgument(format!(
            "expected {num_dep} supports, got {}",
            b.len()
        )));
    }
    if let Some(s) = b.iter().find(|s| s.space().value_rank() != rank) {
        return Err(Error::RankMismatch(s.space().value_rank(), rank));
    }
    Ok(())
}

/// The term list `v(A_λ) ⊙ ⊙_{jets} Φ(∂^α B_i)^{⊙k}`, one entry per term in
/// ascending monomial order.
pub fn trop_evaluate(tf: &TropDiffPolynomial, b: &[SupportSet]) -> Result<Vec<TropValue>> {
    let mut cache = PhiCache::new(b);
    trop_evaluate_cached(tf, &mut cache)
}

pub fn trop_evaluate_cached(tf: &TropDiffPolynomial, cache: &mut PhiCache<'_>) -> Result<Vec<TropValue>> {
    let mut out = Vec::with_capacity(tf.terms.len());
    for (mono, coeff) in &tf.terms {
        if out.is_empty() {
            check_supports(tf.num_dep, coeff.rank(), cache.supports)?;
        }
        let mut v = coeff.clone();
        for (jet, &k) in mono.powers() {
            v = v.trop_mul(&cache.value(jet)?.trop_pow(k))?;
        }
        out.push(v);
    }
    Ok(out)
}

/// All multi-indices in `m` variables with `|α| ≤ k`, graded then lex.
pub fn multi_indices(m: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=k {
        let mut cur = vec![0u32; m];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for v in (0..=rest).rev() {
        cur[pos] = v;
        compositions(rest - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// `∂^α F_j` for every generator and `|α| ≤ k`, each computed from a
/// neighbour with one derivative fewer.
pub fn derivative_closure(g: &GeneratorSet, k: u32) -> Vec<(usize, Vec<u32>, DiffPolynomial)> {
    let m = g.num_indep();
    let mut out = Vec::new();
    for (idx, f) in g.generators().iter().enumerate() {
        let mut memo: BTreeMap<Vec<u32>, DiffPolynomial> = BTreeMap::new();
        for alpha in multi_indices(m, k) {
            let d = match alpha.iter().rposition(|&a| a > 0) {
                None => f.clone(),
                Some(j) => {
                    let mut lower = alpha.clone();
                    lower[j] -= 1;
                    memo[&lower].total_derivative(j)
                }
            };
            memo.insert(alpha.clone(), d.clone());
            out.push((idx, alpha, d));
        }
    }
    out
}

/// One line of a tropical check.
#[derive(Clone, Debug)]
pub struct TropCheckEntry {
    pub generator: usize,
    pub alpha: Vec<u32>,
    pub trop: Option<TropDiffPolynomial>,
    pub values: Vec<TropValue>,
    pub outcome: Result<bool>,
}

/// Detailed tropical check of every `∂^α F_j`, `|α| ≤ k`.
pub fn tropical_check_report(
    g: &GeneratorSet,
    b: &[SupportSet],
    k: u32,
    vk: CoeffValuation,
) -> Vec<TropCheckEntry> {
    let mut cache = PhiCache::new(b);
    derivative_closure(g, k)
        .into_iter()
        .map(|(generator, alpha, f)| {
            let trop = tropicalize(&f, vk);
            let (trop, values, outcome) = match trop {
                Err(e) => (None, Vec::new(), Err(e)),
                Ok(tf) => match trop_evaluate_cached(&tf, &mut cache) {
                    Err(e) => (Some(tf), Vec::new(), Err(e)),
                    Ok(vals) => {
                        let ok = tropically_vanishes(&vals);
                        (Some(tf), vals, ok)
                    }
                },
            };
            TropCheckEntry {
                generator,
                alpha,
                trop,
                values,
                outcome,
            }
        })
        .collect()
}

/// Combines per-element outcomes: any certain failure gives `false`, else
/// any indeterminate element aborts, else `true`.
pub fn combine_outcomes<I: IntoIterator<Item = Result<bool>>>(outcomes: I) -> Result<bool> {
    let mut pending = None;
    for o in outcomes {
        match o {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(e) => {
                pending.get_or_insert(e);
            }
        }
    }
    match pending {
        Some(e) => Err(e),
        None => Ok(true),
    }
}

pub fn is_tropical_solution_up_to(
    g: &GeneratorSet,
    b: &[SupportSet],
    k: u32,
    vk: CoeffValuation,
) -> Result<bool> {
    combine_outcomes(tropical_check_report(g, b, k, vk).into_iter().map(|e| e.outcome))
}

/// Largest window accepted by [`search_boolean_solutions`].
pub const MAX_SEARCH_WINDOW: u32 = 20;

/// Every `S ⊆ {0, …, window}` that, taken as an exact support, passes the
/// tropical check up to `k` derivatives. Sorted by point list. Membership
/// means "not refuted at (window, k)".
pub fn search_boolean_solutions(
    g: &GeneratorSet,
    window: u32,
    k: u32,
    vk: CoeffValuation,
) -> Result<Vec<SupportSet>> {
    if g.num_indep() != 1 || g.num_dep() != 1 {
        return Err(Error::InvalidArgument(
            "boolean search needs one independent and one dependent variable".into(),
        ));
    }
    if g.space().grid() != [1] {
        return Err(Error::InvalidArgument("boolean search needs the integer grid".into()));
    }
    if window > MAX_SEARCH_WINDOW {
        return Err(Error::InvalidArgument(format!(
            "window {window} exceeds the enumeration limit {MAX_SEARCH_WINDOW}"
        )));
    }
    let space = g.space().clone();
    let trops = derivative_closure(g, k)
        .into_iter()
        .map(|(_, _, f)| tropicalize(&f, vk))
        .collect::<Result<Vec<_>>>()?;
    let count = 1u64 << (window + 1);
    let found = (0..count)
        .into_par_iter()
        .map(|mask| -> Result<Option<SupportSet>> {
            let pts = (0..=window as i64)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| Exponent::from_ints(&[i]));
            let s = SupportSet::exact(space.clone(), pts)?;
            let b = [s];
            let mut cache = PhiCache::new(&b);
            let ok = combine_outcomes(trops.iter().map(|tf| {
                trop_evaluate_cached(tf, &mut cache).and_then(|v| tropically_vanishes(&v))
            }))?;
            let [s] = b;
            Ok(ok.then_some(s))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut found: Vec<SupportSet> = found.into_iter().flatten().collect();
    found.sort_by(|a, b| a.points().iter().cmp(b.points().iter()));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::scalar::Scalar;
    use crate::series::TruncatedSeries;
    use std::sync::Arc;

    fn uni() -> Arc<SeriesSpace> {
        SeriesSpace::standard(1)
    }

    fn tmono(e: i64, c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(uni(), Scalar::from_int(c), Exponent::from_ints(&[e])).unwrap()
    }

    fn jet(d: u32) -> DiffPolynomial {
        DiffPolynomial::jet(uni(), 1, JetVar::new(0, vec![d]))
    }

    fn sec3() -> DiffPolynomial {
        jet(1)
            .mul_series(&tmono(1, 1))
            .unwrap()
            .checked_sub(&jet(0))
            .unwrap()
            .checked_sub(&DiffPolynomial::from_series(tmono(1, 1), 1))
            .unwrap()
    }

    fn supp(points: &[i64]) -> SupportSet {
        SupportSet::exact(uni(), points.iter().map(|&i| Exponent::from_ints(&[i]))).unwrap()
    }

    fn tv(a: i64, b: i64) -> TropValue {
        TropValue::finite(vec![q(a), q(b)])
    }

    #[test]
    fn tropicalize_sec3() {
        let t = tropicalize(&sec3(), CoeffValuation::Trivial).unwrap();
        assert_eq!(t.to_string(), "(1,0)x' + (0,0)x + (1,0)");
        let dt = tropicalize(&sec3().total_derivative(0), CoeffValuation::Trivial).unwrap();
        assert_eq!(dt.to_string(), "(1,0)x'' + (0,0)");
        let zero = DiffPolynomial::zero(uni(), 1);
        assert!(tropicalize(&zero, CoeffValuation::Trivial).unwrap().is_empty());
    }

    #[test]
    fn evaluate_examples() {
        let t = tropicalize(&sec3(), CoeffValuation::Trivial).unwrap();
        let vals = trop_evaluate(&t, &[supp(&[1])]).unwrap();
        // ascending monomial order: constant, x, x'
        assert_eq!(vals, vec![tv(1, 0), tv(1, 0), tv(1, 0)]);

        let dt = tropicalize(&sec3().total_derivative(0), CoeffValuation::Trivial).unwrap();
        for b in [supp(&[0]), supp(&[0, 1, 2]), supp(&[3, 5]), supp(&[])] {
            let vals = trop_evaluate(&dt, &[b]).unwrap();
            assert!(!tropically_vanishes(&vals).unwrap());
        }
        let empty = TropDiffPolynomial::new(1, 1, BTreeMap::new());
        assert!(trop_evaluate(&empty, &[supp(&[1])]).unwrap().is_empty());
    }

    #[test]
    fn checker_examples() {
        let g = GeneratorSet::new(vec![sec3()]).unwrap();
        assert!(is_tropical_solution_up_to(&g, &[supp(&[1])], 0, CoeffValuation::Trivial).unwrap());
        assert!(!is_tropical_solution_up_to(&g, &[supp(&[1])], 1, CoeffValuation::Trivial).unwrap());
        let gx = GeneratorSet::new(vec![jet(1)]).unwrap();
        for k in 0..5 {
            assert!(is_tropical_solution_up_to(&gx, &[supp(&[0])], k, CoeffValuation::Trivial).unwrap());
        }
    }

    #[test]
    fn indeterminate_support_aborts() {
        let gx = GeneratorSet::new(vec![jet(1).checked_sub(&jet(0)).unwrap()]).unwrap();
        let b = SupportSet::new(uni(), [Exponent::from_ints(&[0])], Some(q(1))).unwrap();
        let r = is_tropical_solution_up_to(&gx, &[b], 1, CoeffValuation::Trivial);
        assert!(matches!(r, Err(Error::IndeterminateBelowBound(_))));
    }

    #[test]
    fn search_examples() {
        let g = GeneratorSet::new(vec![sec3()]).unwrap();
        assert!(search_boolean_solutions(&g, 10, 8, CoeffValuation::Trivial).unwrap().is_empty());

        let gx = GeneratorSet::new(vec![jet(0)]).unwrap();
        let found = search_boolean_solutions(&gx, 3, 2, CoeffValuation::Trivial).unwrap();
        assert_eq!(found, vec![supp(&[])]);
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(1, 2), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(
            multi_indices(2, 1),
            vec![vec![0, 0], vec![1, 0], vec![0, 1]]
        );
        assert_eq!(multi_indices(3, 2).len(), 10);
    }
}
