//! Differential polynomials with truncated series coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::scalar::Scalar;
use crate::series::{format_tpart, push_signed, Exponent, SeriesSpace, TruncatedSeries};

/// The jet `∂^α x_i`. Ordered by `(var, deriv)` lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetVar {
    pub var: usize,
    pub deriv: Vec<u32>,
}

impl JetVar {
    pub fn new(var: usize, deriv: Vec<u32>) -> Self {
        JetVar { var, deriv }
    }

    pub fn base(var: usize, m: usize) -> Self {
        JetVar::new(var, vec![0; m])
    }

    pub fn order(&self) -> u32 {
        self.deriv.iter().sum()
    }

    pub fn derive(&self, j: usize) -> Self {
        let mut d = self.deriv.clone();
        d[j] += 1;
        JetVar::new(self.var, d)
    }

    /// `x'`, `x'''`, `D[x;t^4]`, `D[x;t1^2;t2]`.
    pub fn format_with(&self, tnames: &[String], xnames: &[String]) -> String {
        let name = &xnames[self.var];
        let ord = self.order();
        if ord == 0 {
            return name.clone();
        }
        if self.deriv.len() == 1 && ord <= 3 {
            return format!("{name}{}", "'".repeat(ord as usize));
        }
        let mut s = format!("D[{name}");
        for (k, t) in self.deriv.iter().zip(tnames) {
            match k {
                0 => {}
                1 => s.push_str(&format!(";{t}")),
                k => s.push_str(&format!(";{t}^{k}")),
            }
        }
        s.push(']');
        s
    }
}

/// A product of jets with positive multiplicities; empty is the monomial 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffMonomial(BTreeMap<JetVar, u32>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial::default()
    }

    pub fn jet(j: JetVar) -> Self {
        DiffMonomial(BTreeMap::from([(j, 1)]))
    }

    pub fn from_powers<I: IntoIterator<Item = (JetVar, u32)>>(it: I) -> Self {
        let mut m = DiffMonomial::one();
        for (j, k) in it {
            if k > 0 {
                *m.0.entry(j).or_insert(0) += k;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &BTreeMap<JetVar, u32> {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &DiffMonomial) -> DiffMonomial {
        let mut out = self.clone();
        for (j, k) in &other.0 {
            *out.0.entry(j.clone()).or_insert(0) += k;
        }
        out
    }

    /// `self / jet`, which must divide.
    fn without_one(&self, jet: &JetVar) -> DiffMonomial {
        let mut out = self.clone();
        let k = out.0.get_mut(jet).expect("jet divides monomial");
        *k -= 1;
        if *k == 0 {
            out.0.remove(jet);
        }
        out
    }

    pub fn format_with(&self, tnames: &[String], xnames: &[String]) -> String {
        self.0
            .iter()
            .map(|(j, k)| {
                let s = j.format_with(tnames, xnames);
                if *k == 1 {
                    s
                } else {
                    format!("{s}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `Σ A_λ x^λ` in `m` independent and `n` dependent variables.
#[derive(Clone, Debug)]
pub struct DiffPolynomial {
    space: Arc<SeriesSpace>,
    num_dep: usize,
    terms: BTreeMap<DiffMonomial, TruncatedSeries>,
}

impl PartialEq for DiffPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.num_dep == other.num_dep
            && self.space.weight() == other.space.weight()
            && self.terms == other.terms
    }
}

impl DiffPolynomial {
    pub fn zero(space: Arc<SeriesSpace>, num_dep: usize) -> Self {
        DiffPolynomial {
            space,
            num_dep,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_series(c: TruncatedSeries, num_dep: usize) -> Self {
        DiffPolynomial::term(c, DiffMonomial::one(), num_dep)
    }

    pub fn term(c: TruncatedSeries, mono: DiffMonomial, num_dep: usize) -> Self {
        let mut p = DiffPolynomial::zero(c.space().clone(), num_dep);
        p.add_term(mono, c).expect("same space");
        p
    }

    /// The jet variable itself, coefficient 1.
    pub fn jet(space: Arc<SeriesSpace>, num_dep: usize, jet: JetVar) -> Self {
        assert!(jet.var < num_dep && jet.deriv.len() == space.num_vars());
        DiffPolynomial::term(TruncatedSeries::one(space), DiffMonomial::jet(jet), num_dep)
    }

    pub fn from_terms<I>(space: Arc<SeriesSpace>, num_dep: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (DiffMonomial, TruncatedSeries)>,
    {
        let mut p = DiffPolynomial::zero(space, num_dep);
        for (mono, c) in terms {
            p.add_term(mono, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: DiffMonomial, c: TruncatedSeries) -> Result<()> {
        self.space = SeriesSpace::merge(&self.space, c.space())?;
        let sum = match self.terms.remove(&mono) {
            Some(old) => old.checked_add(&c)?,
            None => c,
        };
        if !sum.is_exact_zero() {
            self.terms.insert(mono, sum);
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    pub fn num_indep(&self) -> usize {
        self.space.num_vars()
    }

    pub fn num_dep(&self) -> usize {
        self.num_dep
    }

    pub fn terms(&self) -> &BTreeMap<DiffMonomial, TruncatedSeries> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &DiffMonomial) -> Option<&TruncatedSeries> {
        self.terms.get(mono)
    }

    /// Highest total derivative order of a jet; 0 for polynomials without jets.
    pub fn order(&self) -> u32 {
        self.jets().iter().map(JetVar::order).max().unwrap_or(0)
    }

    pub fn jets(&self) -> BTreeSet<JetVar> {
        self.terms
            .keys()
            .flat_map(|m| m.0.keys().cloned())
            .collect()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.num_dep != other.num_dep {
            return Err(Error::SpaceMismatch(format!(
                "{} vs {} dependent variables",
                self.num_dep, other.num_dep
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        out.space = SeriesSpace::merge(&out.space, &other.space)?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = DiffPolynomial::zero(self.space.clone(), self.num_dep);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.scale(c)).expect("same space");
        }
        out
    }

    pub fn mul_series(&self, s: &TruncatedSeries) -> Result<Self> {
        let mut out = DiffPolynomial::zero(SeriesSpace::merge(&self.space, s.space())?, self.num_dep);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.checked_mul(s)?)?;
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, c: &Scalar, e: &Exponent) -> Result<Self> {
        let mono = TruncatedSeries::monomial(self.space.clone(), c.clone(), e.clone())?;
        self.mul_series(&mono)
    }

    /// Polynomial product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = DiffPolynomial::zero(SeriesSpace::merge(&self.space, &other.space)?, self.num_dep);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.checked_mul(cb)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = DiffPolynomial::from_series(TruncatedSeries::one(self.space.clone()), self.num_dep);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// The derivation `d/dt_j`: Leibniz over terms, coefficients by formal
    /// differentiation, jets `∂^α x_i ↦ ∂^{α+e_j} x_i`.
    pub fn total_derivative(&self, j: usize) -> Self {
        let mut out = DiffPolynomial::zero(self.space.clone(), self.num_dep);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.derivative(j)).expect("same space");
            for (jet, &k) in &mono.0 {
                let m = mono.without_one(jet).mul(&DiffMonomial::jet(jet.derive(j)));
                let coeff = c.scale(&Scalar::from_int(k as i64));
                out.add_term(m, coeff).expect("same space");
            }
        }
        out
    }

    /// `∂^α f`.
    pub fn total_derivative_multi(&self, alpha: &[u32]) -> Self {
        let mut f = self.clone();
        for (j, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                f = f.total_derivative(j);
            }
        }
        f
    }

    /// Evaluates at the series tuple `phi`. Jet values are computed once per
    /// jet by formal differentiation; bounds propagate through the series
    /// arithmetic.
    pub fn substitute(&self, phi: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if phi.len() != self.num_dep {
            return Err(Error::InvalidArgument(format!(
                "expected {} series, got {}",
                self.num_dep,
                phi.len()
            )));
        }
        if let Some(bad) = phi.iter().find(|p| p.num_vars() != self.num_indep()) {
            return Err(Error::SpaceMismatch(format!(
                "candidate in {} variables for a system in {}",
                bad.num_vars(),
                self.num_indep()
            )));
        }
        let mut cache: BTreeMap<JetVar, TruncatedSeries> = BTreeMap::new();
        for jet in self.jets() {
            jet_value(&jet, phi, &mut cache);
        }
        let mut acc = TruncatedSeries::zero(self.space.clone());
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (jet, &k) in &mono.0 {
                term = term.checked_mul(&cache[jet].pow(k)?)?;
            }
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Divides by the monomial content of all coefficients and scales so that
    /// the lowest term of the leading coefficient (first in print order) is 1.
    /// The result differs from `self` by a unit `c·t^e`.
    pub fn normalize_unit(&self) -> Result<Self> {
        let m = self.num_indep();
        let mut content: Option<Vec<Q>> = None;
        for c in self.terms.values() {
            for e in c.terms().keys() {
                content = Some(match content {
                    None => e.0.clone(),
                    Some(v) => v.iter().zip(&e.0).map(|(a, b)| a.min(b).clone()).collect(),
                });
            }
        }
        let Some(content) = content else {
            return Ok(self.clone());
        };
        let shift = Exponent(content.iter().map(|x| -x).collect());
        let mut out = if shift.is_zero() {
            self.clone()
        } else {
            self.mul_monomial(&Scalar::one(), &shift)?
        };
        let lead = out
            .terms
            .values()
            .rev()
            .find_map(|c| c.leading().map(|(_, s)| s.clone()));
        if let Some(s) = lead {
            if !s.is_one() {
                out = out.scale(&s.inv().expect("nonzero"));
            }
        }
        debug_assert_eq!(out.num_indep(), m);
        Ok(out)
    }

    /// Canonical text: terms in descending monomial order.
    pub fn format_with(&self, tnames: &[String], xnames: &[String]) -> String {
        let mut out = String::new();
        for (mono, c) in self.terms.iter().rev() {
            let ms = mono.format_with(tnames, xnames);
            if mono.is_one() {
                for (e, s) in c.ordered_terms() {
                    push_signed(&mut out, s, &format_tpart(e, tnames));
                }
                if let Some(n) = c.bound() {
                    push_plain(&mut out, &format!("O[{}]", fmt_q(n)));
                }
            } else if c.is_exact() && c.terms().len() == 1 {
                let (e, s) = c.terms().iter().next().unwrap();
                let tp = format_tpart(e, tnames);
                let rest = if tp.is_empty() { ms } else { format!("{tp}*{ms}") };
                push_signed(&mut out, s, &rest);
            } else {
                push_plain(&mut out, &format!("({})*{ms}", c.format_with(tnames)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn default_dep_names(&self) -> Vec<String> {
        if self.num_dep == 1 {
            vec!["x".to_string()]
        } else {
            (1..=self.num_dep).map(|i| format!("x{i}")).collect()
        }
    }
}

fn push_plain(out: &mut String, s: &str) {
    if !out.is_empty() {
        out.push_str(" + ");
    }
    out.push_str(s);
}

fn jet_value(jet: &JetVar, phi: &[TruncatedSeries], cache: &mut BTreeMap<JetVar, TruncatedSeries>) -> TruncatedSeries {
    if let Some(v) = cache.get(jet) {
        return v.clone();
    }
    let v = match jet.deriv.iter().position(|&k| k > 0) {
        None => phi[jet.var].clone(),
        Some(j) => {
            let mut lower = jet.clone();
            lower.deriv[j] -= 1;
            jet_value(&lower, phi, cache).derivative(j)
        }
    };
    cache.insert(jet.clone(), v.clone());
    v
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.format_with(&self.space.default_names(), &self.default_dep_names())
        )
    }
}

/// Generators of a differential ideal; nonempty, one shape.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    generators: Vec<DiffPolynomial>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<DiffPolynomial>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidArgument("a generator set needs at least one generator".into()));
        };
        for g in &generators[1..] {
            first.check_shape(g)?;
            SeriesSpace::merge(first.space(), g.space())?;
        }
        Ok(GeneratorSet { generators })
    }

    pub fn generators(&self) -> &[DiffPolynomial] {
        &self.generators
    }

    pub fn num_indep(&self) -> usize {
        self.generators[0].num_indep()
    }

    pub fn num_dep(&self) -> usize {
        self.generators[0].num_dep()
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        self.generators[0].space()
    }

    /// `f(φ)` for every generator.
    pub fn residuals(&self, phi: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        self.generators.iter().map(|g| g.substitute(phi)).collect()
    }
}

/// Outcome for one residual of the substitution oracle.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidualStatus {
    /// No nonzero term below the requested order.
    Zero,
    /// A certain nonzero term below the requested order.
    Nonzero(Exponent),
    /// The residual is only known below a bound smaller than the order.
    Insufficient(Q),
}

pub fn residual_status(r: &TruncatedSeries, order: &Q) -> ResidualStatus {
    let space = r.space();
    if let Some((e, _)) = r
        .ordered_terms()
        .into_iter()
        .find(|(e, _)| &space.weight_of(e) < order)
    {
        return ResidualStatus::Nonzero(e.clone());
    }
    match r.bound() {
        Some(n) if n < order => ResidualStatus::Insufficient(n.clone()),
        _ => ResidualStatus::Zero,
    }
}

/// True iff every residual vanishes below weight `order`. A certain nonzero
/// residual term wins over a precision shortfall elsewhere.
pub fn is_solution_mod_bound(g: &GeneratorSet, phi: &[TruncatedSeries], order: &Q) -> Result<bool> {
    let mut shortfall = None;
    for r in g.residuals(phi)? {
        match residual_status(&r, order) {
            ResidualStatus::Zero => {}
            ResidualStatus::Nonzero(_) => return Ok(false),
            ResidualStatus::Insufficient(n) => shortfall = Some(n),
        }
    }
    match shortfall {
        Some(n) => Err(Error::InsufficientPrecision {
            required: fmt_q(order),
            available: fmt_q(&n),
        }),
        None => Ok(true),
    }
}

/// Convenience: the zero jet `x_i` for `m` independent variables.
pub fn base_jet(space: &Arc<SeriesSpace>, num_dep: usize, i: usize) -> DiffPolynomial {
    DiffPolynomial::jet(space.clone(), num_dep, JetVar::base(i, space.num_vars()))
}

/// `true` when all coefficient exponents are zero, i.e. the polynomial has
/// constant coefficients.
pub fn has_constant_coefficients(f: &DiffPolynomial) -> bool {
    f.terms()
        .values()
        .all(|c| c.terms().keys().all(|e| e.0.iter().all(Zero::is_zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, q, qf};

    fn uni() -> Arc<SeriesSpace> {
        SeriesSpace::standard(1)
    }

    fn t_pow(space: &Arc<SeriesSpace>, e: &[i64], c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(space.clone(), Scalar::from_int(c), Exponent::from_ints(e)).unwrap()
    }

    fn jet(space: &Arc<SeriesSpace>, n: usize, var: usize, d: &[u32]) -> DiffPolynomial {
        DiffPolynomial::jet(space.clone(), n, JetVar::new(var, d.to_vec()))
    }

    /// t·x' − x − t
    fn sec3_f() -> DiffPolynomial {
        let s = uni();
        let a = jet(&s, 1, 0, &[1]).mul_series(&t_pow(&s, &[1], 1)).unwrap();
        let b = jet(&s, 1, 0, &[0]);
        let c = DiffPolynomial::from_series(t_pow(&s, &[1], 1), 1);
        a.checked_sub(&b).unwrap().checked_sub(&c).unwrap()
    }

    #[test]
    fn derivative_of_sec3_polynomial_cancels_first_jet() {
        let s = uni();
        let d = sec3_f().total_derivative(0);
        let expected = jet(&s, 1, 0, &[2])
            .mul_series(&t_pow(&s, &[1], 1))
            .unwrap()
            .checked_sub(&DiffPolynomial::from_series(t_pow(&s, &[0], 1), 1))
            .unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.to_string(), "t*x'' - 1");
    }

    #[test]
    fn derivative_of_jet() {
        let s = uni();
        assert_eq!(jet(&s, 1, 0, &[0]).total_derivative(0), jet(&s, 1, 0, &[1]));
    }

    #[test]
    fn euler_operator_derivative() {
        let s = SeriesSpace::standard(2);
        let half = Scalar::rational(qf(1, 2));
        let f = jet(&s, 1, 0, &[1, 0])
            .mul_series(&t_pow(&s, &[1, 0], 1))
            .unwrap()
            .checked_add(&jet(&s, 1, 0, &[0, 1]).mul_series(&t_pow(&s, &[0, 1], 1)).unwrap())
            .unwrap()
            .checked_sub(&jet(&s, 1, 0, &[0, 0]).scale(&half))
            .unwrap();
        let d = f.total_derivative(0);
        let expected = jet(&s, 1, 0, &[2, 0])
            .mul_series(&t_pow(&s, &[1, 0], 1))
            .unwrap()
            .checked_add(&jet(&s, 1, 0, &[1, 1]).mul_series(&t_pow(&s, &[0, 1], 1)).unwrap())
            .unwrap()
            .checked_add(&jet(&s, 1, 0, &[1, 0]).scale(&half))
            .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn sqrt_solution_of_xx_prime() {
        let (half, _) = SeriesSpace::new(vec![2], vec![q(1)]).unwrap();
        let s = uni();
        let x = jet(&s, 1, 0, &[0]);
        let f = x
            .checked_mul(&jet(&s, 1, 0, &[1]))
            .unwrap()
            .checked_sub(&DiffPolynomial::from_series(TruncatedSeries::one(s.clone()), 1))
            .unwrap();
        let phi = TruncatedSeries::monomial(half, Scalar::sqrt(2), Exponent(vec![qf(1, 2)])).unwrap();
        let r = f.substitute(&[phi]).unwrap();
        assert!(r.is_exact_zero());
    }

    fn exp_series(n: i64) -> TruncatedSeries {
        let mut fact = q(1);
        let mut terms = Vec::new();
        for i in 0..n {
            if i > 0 {
                fact *= q(i);
            }
            terms.push((Exponent::from_ints(&[i]), Scalar::rational(q(1) / fact.clone())));
        }
        TruncatedSeries::from_terms(uni(), terms, Some(q(n))).unwrap()
    }

    #[test]
    fn truncated_exponential() {
        let s = uni();
        let f = jet(&s, 1, 0, &[1]).checked_sub(&jet(&s, 1, 0, &[0])).unwrap();
        let n = 8;
        let r = f.substitute(&[exp_series(n)]).unwrap();
        assert!(r.is_zero_below_bound());
        assert_eq!(r.bound(), Some(&q(n - 1)));
        let g = GeneratorSet::new(vec![f.clone()]).unwrap();
        assert!(is_solution_mod_bound(&g, &[exp_series(n)], &q(n - 1)).unwrap());
        assert!(matches!(
            is_solution_mod_bound(&g, &[exp_series(n)], &q(n)),
            Err(Error::InsufficientPrecision { .. })
        ));
        let p = TruncatedSeries::from_terms(
            s.clone(),
            (0..3).map(|i| (Exponent::from_ints(&[i]), Scalar::one())),
            None,
        )
        .unwrap();
        assert!(!is_solution_mod_bound(&g, &[p], &q(3)).unwrap());
    }

    #[test]
    fn binomial_series_solves_transformed_partial_equation() {
        let s = SeriesSpace::standard(2);
        let n = 12;
        let psi = TruncatedSeries::from_terms(
            s.clone(),
            (0..n).map(|i| (Exponent::from_ints(&[i, 0]), Scalar::rational(binomial(&qf(1, 2), i as u32)))),
            Some(q(n)),
        )
        .unwrap();
        let one_plus_t1 = &t_pow(&s, &[0, 0], 1) + &t_pow(&s, &[1, 0], 1);
        let f2 = jet(&s, 1, 0, &[1, 0])
            .mul_series(&one_plus_t1)
            .unwrap()
            .checked_sub(&jet(&s, 1, 0, &[0, 1]).mul_series(&t_pow(&s, &[0, 1], 1)).unwrap())
            .unwrap()
            .checked_sub(&jet(&s, 1, 0, &[0, 0]).scale(&Scalar::rational(qf(1, 2))))
            .unwrap();
        let r = f2.substitute(&[psi]).unwrap();
        assert!(r.is_zero_below_bound());
        assert_eq!(r.bound(), Some(&q(n - 1)));
    }

    #[test]
    fn derivations_commute() {
        let s = SeriesSpace::standard(2);
        let f = jet(&s, 1, 0, &[1, 0])
            .mul_series(&t_pow(&s, &[2, 1], 3))
            .unwrap()
            .checked_mul(&jet(&s, 1, 0, &[0, 1]))
            .unwrap();
        assert_eq!(
            f.total_derivative(0).total_derivative(1),
            f.total_derivative(1).total_derivative(0)
        );
    }

    #[test]
    fn normalize_unit_clears_monomial_content() {
        let s = uni();
        let x = jet(&s, 1, 0, &[0]);
        let f = x
            .checked_mul(&jet(&s, 1, 0, &[1]))
            .unwrap()
            .mul_monomial(&Scalar::rational(qf(1, 2)), &Exponent::from_ints(&[-1]))
            .unwrap()
            .checked_sub(&DiffPolynomial::from_series(TruncatedSeries::one(s.clone()), 1))
            .unwrap();
        let n = f.normalize_unit().unwrap();
        assert_eq!(n.to_string(), "x*x' - 2*t");
    }

    #[test]
    fn printing() {
        assert_eq!(sec3_f().to_string(), "t*x' - x - t");
        let s = SeriesSpace::standard(2);
        let f = jet(&s, 1, 0, &[1, 0])
            .mul_series(&(&t_pow(&s, &[0, 0], 1) + &t_pow(&s, &[1, 0], 1)))
            .unwrap()
            .checked_sub(&jet(&s, 1, 0, &[0, 0]).scale(&Scalar::rational(qf(1, 2))))
            .unwrap();
        assert_eq!(f.to_string(), "(1 + t1)*D[x;t1] - (1/2)*x");
    }
}
