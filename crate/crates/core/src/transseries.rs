//! Boolean transseries over the monomial group generated by `t` and
//! `log t`, identified with `ℤ²` under `t^a·log(t)^b ↦ (a, b)` and ordered
//! lexicographically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::diffpoly::{GeneratorSet, JetVar};
use crate::error::{Error, Result};
use crate::rational::q;
use crate::scalar::CoeffValuation;
use crate::tropical::{tropically_vanishes, TropValue};
use crate::tropicalize::{combine_outcomes, derivative_closure, tropicalize};

/// `t^a·log(t)^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogMonomial {
    pub a: i64,
    pub b: i64,
}

impl LogMonomial {
    pub fn new(a: i64, b: i64) -> Self {
        LogMonomial { a, b }
    }

    /// Support of `d(t^a log^b) = a t^{a-1} log^b + b t^{a-1} log^{b-1}`.
    pub fn derive(&self) -> Vec<LogMonomial> {
        let mut out = Vec::with_capacity(2);
        if self.a != 0 {
            out.push(LogMonomial::new(self.a - 1, self.b));
        }
        if self.b != 0 {
            out.push(LogMonomial::new(self.a - 1, self.b - 1));
        }
        out
    }

    pub fn value(&self) -> TropValue {
        TropValue::finite(vec![q(self.a), q(self.b)])
    }
}

fn fmt_power(name: &str, k: i64) -> String {
    match k {
        1 => name.to_string(),
        k if k < 0 => format!("{name}^({k})"),
        k => format!("{name}^{k}"),
    }
}

impl LogMonomial {
    /// `1`, `t`, `t^(-1)`, `log`, `t*log^2`, with `t` renamed to `tname`.
    pub fn format_with(&self, tname: &str) -> String {
        let mut parts = Vec::new();
        if self.a != 0 {
            parts.push(fmt_power(tname, self.a));
        }
        if self.b != 0 {
            parts.push(fmt_power("log", self.b));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for LogMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("t"))
    }
}

impl FromStr for LogMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad log monomial '{s}', expected t^a*log^b"));
        let s = s.trim();
        if s == "1" {
            return Ok(LogMonomial::new(0, 0));
        }
        let mut m = LogMonomial::new(0, 0);
        let mut seen = (false, false);
        for part in s.split('*').map(str::trim) {
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')').trim();
                    (n.trim(), e.parse::<i64>().map_err(|_| bad())?)
                }
                None => (part, 1),
            };
            match name {
                "t" if !seen.0 => {
                    m.a = exp;
                    seen.0 = true;
                }
                "log" if !seen.1 => {
                    m.b = exp;
                    seen.1 = true;
                }
                _ => return Err(bad()),
            }
        }
        Ok(m)
    }
}

/// A finite set of log monomials, exact below a horizon (`None`: exact).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolTransseries {
    points: BTreeSet<LogMonomial>,
    bound: Option<LogMonomial>,
}

impl BoolTransseries {
    pub fn new<I: IntoIterator<Item = LogMonomial>>(points: I, bound: Option<LogMonomial>) -> Result<Self> {
        let points: BTreeSet<LogMonomial> = points.into_iter().collect();
        if let (Some(n), Some(p)) = (bound, points.iter().next_back()) {
            if *p >= n {
                return Err(Error::InvalidArgument(format!("point {p} is not below the horizon {n}")));
            }
        }
        Ok(BoolTransseries { points, bound })
    }

    pub fn exact<I: IntoIterator<Item = LogMonomial>>(points: I) -> Self {
        BoolTransseries::new(points, None).expect("no horizon")
    }

    pub fn points(&self) -> &BTreeSet<LogMonomial> {
        &self.points
    }

    pub fn bound(&self) -> Option<LogMonomial> {
        self.bound
    }

    pub fn union(&self, other: &BoolTransseries) -> BoolTransseries {
        let bound = match (self.bound, other.bound) {
            (None, b) | (b, None) => b,
            (Some(x), Some(y)) => Some(x.min(y)),
        };
        let points = self
            .points
            .iter()
            .chain(&other.points)
            .copied()
            .filter(|p| bound.is_none_or(|n| *p < n));
        BoolTransseries::new(points, bound).expect("filtered")
    }

    /// Support-level derivation; the horizon `(A, B)` moves to `(A-1, B-1)`,
    /// the least image of any monomial at or beyond it.
    pub fn log_derive(&self) -> BoolTransseries {
        let bound = self.bound.map(|n| LogMonomial::new(n.a - 1, n.b - 1));
        let points = self
            .points
            .iter()
            .flat_map(LogMonomial::derive)
            .filter(|p| bound.is_none_or(|n| *p < n));
        BoolTransseries::new(points, bound).expect("filtered")
    }

    pub fn log_derive_n(&self, k: u32) -> BoolTransseries {
        (0..k).fold(self.clone(), |b, _| b.log_derive())
    }

    /// The lex-minimal monomial as a rank-2 value.
    pub fn phi_log(&self) -> Result<TropValue> {
        match (self.points.iter().next(), self.bound) {
            (Some(p), _) => Ok(p.value()),
            (None, None) => Ok(TropValue::infinite(2)),
            (None, Some(n)) => Err(Error::IndeterminateBelowBound(n.to_string())),
        }
    }
}

impl BoolTransseries {
    pub fn format_with(&self, tname: &str) -> String {
        let pts: Vec<String> = self.points.iter().map(|p| p.format_with(tname)).collect();
        let mut s = format!("{{{}}}", pts.join(", "));
        if let Some(n) = self.bound {
            s.push_str(&format!(" bound {}", n.format_with(tname)));
        }
        s
    }
}

impl fmt::Display for BoolTransseries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with("t"))
    }
}

fn check_log_system(g: &GeneratorSet, vk: CoeffValuation) -> Result<()> {
    if vk != CoeffValuation::Trivial {
        return Err(Error::UnsupportedValuation(format!(
            "log mode needs the trivial coefficient valuation, got {vk}"
        )));
    }
    if g.num_indep() != 1 {
        return Err(Error::InvalidArgument("log mode needs one independent variable".into()));
    }
    for f in g.generators() {
        for c in f.terms().values() {
            if !c.is_exact() || c.terms().keys().any(|e| !e.0[0].is_integer()) {
                return Err(Error::InvalidArgument(
                    "log mode needs exact coefficients with integer exponents".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Outcome of one `d^k F_j` in log mode.
#[derive(Clone, Debug)]
pub struct LogCheckEntry {
    pub generator: usize,
    pub order: u32,
    pub values: Vec<TropValue>,
    pub outcome: Result<bool>,
}

/// The tropical test with `log_derive` and `phi_log` in place of the
/// power-series maps, for `d^k F_j`, `k ≤ deriv_bound`.
pub fn log_check_report(
    g: &GeneratorSet,
    b: &[BoolTransseries],
    deriv_bound: u32,
    vk: CoeffValuation,
) -> Result<Vec<LogCheckEntry>> {
    check_log_system(g, vk)?;
    if b.len() != g.num_dep() {
        return Err(Error::InvalidArgument(format!(
            "expected {} supports, got {}",
            g.num_dep(),
            b.len()
        )));
    }
    let mut phi: BTreeMap<JetVar, Result<TropValue>> = BTreeMap::new();
    let mut value = |jet: &JetVar| -> Result<TropValue> {
        phi.entry(jet.clone())
            .or_insert_with(|| b[jet.var].log_derive_n(jet.deriv[0]).phi_log())
            .clone()
    };
    let mut out = Vec::new();
    for (generator, alpha, f) in derivative_closure(g, deriv_bound) {
        let tf = tropicalize(&f, vk)?;
        let mut values = Vec::with_capacity(tf.terms().len());
        let mut err = None;
        for (mono, coeff) in tf.terms() {
            let mut v = coeff.clone();
            for (jet, &k) in mono.powers() {
                match value(jet) {
                    Ok(x) => v = v.trop_mul(&x.trop_pow(k))?,
                    Err(e) => err = Some(e),
                }
            }
            values.push(v);
        }
        let outcome = match err {
            Some(e) => Err(e),
            None => tropically_vanishes(&values),
        };
        out.push(LogCheckEntry {
            generator,
            order: alpha[0],
            values,
            outcome,
        });
    }
    Ok(out)
}

pub fn is_trop_solution_logs(
    g: &GeneratorSet,
    b: &[BoolTransseries],
    deriv_bound: u32,
    vk: CoeffValuation,
) -> Result<bool> {
    combine_outcomes(log_check_report(g, b, deriv_bound, vk)?.into_iter().map(|e| e.outcome))
}

/// `Φ(d^k B)` for `k = 0..=n`, formatted; used by reports.
pub fn phi_trace(b: &BoolTransseries, n: u32) -> Vec<String> {
    let mut cur = b.clone();
    let mut out = Vec::new();
    for _ in 0..=n {
        out.push(match cur.phi_log() {
            Ok(v) => v.to_string(),
            Err(_) => "?".into(),
        });
        cur = cur.log_derive();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::DiffPolynomial;
    use crate::scalar::Scalar;
    use crate::series::{Exponent, SeriesSpace, TruncatedSeries};

    fn lm(a: i64, b: i64) -> LogMonomial {
        LogMonomial::new(a, b)
    }

    fn sec3() -> GeneratorSet {
        let s = SeriesSpace::standard(1);
        let t = TruncatedSeries::monomial(s.clone(), Scalar::one(), Exponent::from_ints(&[1])).unwrap();
        let x = DiffPolynomial::jet(s.clone(), 1, JetVar::new(0, vec![0]));
        let dx = DiffPolynomial::jet(s.clone(), 1, JetVar::new(0, vec![1]));
        let f = dx
            .mul_series(&t)
            .unwrap()
            .checked_sub(&x)
            .unwrap()
            .checked_sub(&DiffPolynomial::from_series(t, 1))
            .unwrap();
        GeneratorSet::new(vec![f]).unwrap()
    }

    #[test]
    fn derive_examples() {
        let d = BoolTransseries::exact([lm(1, 1)]).log_derive();
        assert_eq!(d, BoolTransseries::exact([lm(0, 1), lm(0, 0)]));
        assert!(BoolTransseries::exact([lm(0, 0)]).log_derive().points().is_empty());
        assert_eq!(BoolTransseries::exact([lm(0, 1)]).log_derive(), BoolTransseries::exact([lm(-1, 0)]));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(BoolTransseries::exact([lm(1, 0), lm(1, 1)]).phi_log().unwrap(), lm(1, 0).value());
        assert!(BoolTransseries::exact([]).phi_log().unwrap().is_infinite());
        let inexact = BoolTransseries::new([], Some(lm(3, 0))).unwrap();
        assert!(inexact.phi_log().is_err());
    }

    #[test]
    fn checker_examples() {
        let g = sec3();
        let tlogt = BoolTransseries::exact([lm(1, 1)]);
        assert!(is_trop_solution_logs(&g, std::slice::from_ref(&tlogt), 8, CoeffValuation::Trivial).unwrap());
        let witness = BoolTransseries::exact([lm(1, 0), lm(1, 1), lm(2, 5)]);
        assert!(is_trop_solution_logs(&g, &[witness], 8, CoeffValuation::Trivial).unwrap());
        let s = SeriesSpace::standard(1);
        let gx = GeneratorSet::new(vec![DiffPolynomial::jet(s, 1, JetVar::new(0, vec![1]))]).unwrap();
        assert!(is_trop_solution_logs(&gx, &[BoolTransseries::exact([lm(0, 0)])], 4, CoeffValuation::Trivial).unwrap());
        assert!(matches!(
            is_trop_solution_logs(&g, &[tlogt], 2, CoeffValuation::PAdic(2)),
            Err(Error::UnsupportedValuation(_))
        ));
    }

    #[test]
    fn power_series_supports_fail_in_log_mode() {
        let g = sec3();
        let b = BoolTransseries::exact([lm(1, 0)]);
        assert!(!is_trop_solution_logs(&g, &[b], 1, CoeffValuation::Trivial).unwrap());
    }

    #[test]
    fn horizon_moves_diagonally() {
        let b = BoolTransseries::new([lm(1, 0)], Some(lm(2, 0))).unwrap();
        let d = b.log_derive();
        assert_eq!(d.bound(), Some(lm(1, -1)));
        assert_eq!(d.points().iter().copied().collect::<Vec<_>>(), vec![lm(0, 0)]);
    }

    #[test]
    fn no_sink() {
        let mut b = BoolTransseries::exact([lm(-1, 0)]);
        for _ in 0..20 {
            b = b.log_derive();
            assert!(!b.points().is_empty());
        }
        for a in 0..6 {
            let b = BoolTransseries::exact([lm(a, 0)]);
            assert!(!b.log_derive_n(a as u32).points().is_empty());
            assert!(b.log_derive_n(a as u32 + 1).points().is_empty());
        }
    }

    #[test]
    fn text_form() {
        for (s, m) in [("1", lm(0, 0)), ("t", lm(1, 0)), ("t^(-1)", lm(-1, 0)), ("t*log^2", lm(1, 2)), ("log", lm(0, 1))] {
            assert_eq!(s.parse::<LogMonomial>().unwrap(), m);
            assert_eq!(m.to_string(), s);
        }
        assert_eq!("t^-2*log^-1".parse::<LogMonomial>().unwrap(), lm(-2, -1));
        assert!("t*t".parse::<LogMonomial>().is_err());
        assert!("x".parse::<LogMonomial>().is_err());
    }
}
