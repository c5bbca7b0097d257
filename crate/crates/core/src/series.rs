//! Truncated exact multivariate series with rational exponents, their
//! supports, and the valuation maps into rank-`n` tropical numbers.
//!
//! A series is known exactly for every exponent `e` with weight `w·e < N`,
//! where `N` is its bound; a missing bound means the series is exact (a
//! finite sum). Ties in the weight order are broken lexicographically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denom_u64, fmt_q, lcm_u64, primitive, Q};
use crate::scalar::{CoeffValuation, Scalar};
use crate::tropical::TropValue;

/// An exponent vector with rational components.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<Q>);

impl Exponent {
    pub fn zero(m: usize) -> Self {
        Exponent(vec![Q::zero(); m])
    }

    pub fn unit(m: usize, j: usize) -> Self {
        let mut e = Exponent::zero(m);
        e.0[j] = Q::one();
        e
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Exponent(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Q) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", fmt_q(&self.0[0]));
        }
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_q(x))?;
        }
        write!(f, ")")
    }
}

/// Grid denominators and truncation weight shared by a family of series.
///
/// The weight is kept as the primitive positive integer vector on its ray;
/// [`SeriesSpace::new`] reports the factor a raw bound has to be multiplied
/// with to stay consistent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesSpace {
    grid: Vec<u64>,
    weight: Vec<Q>,
}

impl SeriesSpace {
    pub fn new(grid: Vec<u64>, weight: Vec<Q>) -> Result<(Arc<Self>, Q)> {
        if grid.is_empty() || grid.len() != weight.len() {
            return Err(Error::InvalidArgument(format!(
                "grid {:?} and weight of length {} do not describe the same number of variables",
                grid,
                weight.len()
            )));
        }
        if grid.contains(&0) {
            return Err(Error::InvalidArgument("grid denominators must be positive".into()));
        }
        if weight.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        let (weight, factor) = primitive(&weight);
        Ok((Arc::new(SeriesSpace { grid, weight }), factor))
    }

    /// Integer grid and unit weights in `m` variables.
    pub fn standard(m: usize) -> Arc<Self> {
        Arc::new(SeriesSpace {
            grid: vec![1; m],
            weight: vec![Q::one(); m],
        })
    }

    pub fn num_vars(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[u64] {
        &self.grid
    }

    pub fn weight(&self) -> &[Q] {
        &self.weight
    }

    pub fn weight_of(&self, e: &Exponent) -> Q {
        self.weight.iter().zip(&e.0).map(|(w, x)| w * x).sum()
    }

    pub fn on_grid(&self, e: &Exponent) -> bool {
        e.0.len() == self.grid.len()
            && e.0.iter().zip(&self.grid).all(|(x, d)| d % denom_u64(x) == 0)
    }

    fn check_on_grid(&self, e: &Exponent) -> Result<()> {
        if e.len() != self.num_vars() {
            return Err(Error::SpaceMismatch(format!(
                "exponent {e} has {} components, expected {}",
                e.len(),
                self.num_vars()
            )));
        }
        if self.on_grid(e) {
            Ok(())
        } else {
            Err(Error::OffGrid {
                exponent: e.to_string(),
                grid: self.grid.clone(),
            })
        }
    }

    /// The same space on the coarsest grid refining both grids.
    pub fn with_grid(&self, grid: &[u64]) -> SeriesSpace {
        SeriesSpace {
            grid: self.grid.iter().zip(grid).map(|(a, b)| lcm_u64(*a, *b)).collect(),
            weight: self.weight.clone(),
        }
    }

    /// The coarsest refinement of this space containing `e`.
    pub fn refined_for(&self, e: &Exponent) -> SeriesSpace {
        let g: Vec<u64> = e.0.iter().map(denom_u64).collect();
        self.with_grid(&g)
    }

    /// Common space of two operands: equal weights, grids refined to the lcm.
    pub fn merge(a: &Arc<SeriesSpace>, b: &Arc<SeriesSpace>) -> Result<Arc<SeriesSpace>> {
        if Arc::ptr_eq(a, b) || a == b {
            return Ok(a.clone());
        }
        if a.num_vars() != b.num_vars() {
            return Err(Error::SpaceMismatch(format!(
                "{} vs {} independent variables",
                a.num_vars(),
                b.num_vars()
            )));
        }
        if a.weight != b.weight {
            return Err(Error::SpaceMismatch("different weight vectors".into()));
        }
        Ok(Arc::new(a.with_grid(&b.grid)))
    }

    /// Weight order with lexicographic tie-breaking.
    pub fn cmp_exponents(&self, a: &Exponent, b: &Exponent) -> Ordering {
        self.weight_of(a)
            .cmp(&self.weight_of(b))
            .then_with(|| a.cmp(b))
    }

    /// Leading part of a tropical value: the exponent itself for one variable,
    /// `(w·e, e_1, …, e_m)` otherwise, so that lex order is the weight order.
    pub fn order_key(&self, e: &Exponent) -> Vec<Q> {
        if self.num_vars() == 1 {
            e.0.clone()
        } else {
            let mut k = Vec::with_capacity(e.len() + 1);
            k.push(self.weight_of(e));
            k.extend(e.0.iter().cloned());
            k
        }
    }

    /// Rank of the tropical values attached to series of this space.
    pub fn value_rank(&self) -> usize {
        if self.num_vars() == 1 {
            2
        } else {
            self.num_vars() + 2
        }
    }

    pub fn value(&self, e: &Exponent, v: Q) -> TropValue {
        let mut k = self.order_key(e);
        k.push(v);
        TropValue::finite(k)
    }

    /// Default variable names: `t` for one variable, `t1, …, tm` otherwise.
    pub fn default_names(&self) -> Vec<String> {
        if self.num_vars() == 1 {
            vec!["t".to_string()]
        } else {
            (1..=self.num_vars()).map(|i| format!("t{i}")).collect()
        }
    }
}

fn min_bound(a: &Option<Q>, b: &Option<Q>) -> Option<Q> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(x.min(y).clone()),
    }
}

fn below(bound: &Option<Q>, w: &Q) -> bool {
    bound.as_ref().is_none_or(|n| w < n)
}

/// Sparse truncated series with exact scalar coefficients.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    space: Arc<SeriesSpace>,
    terms: BTreeMap<Exponent, Scalar>,
    bound: Option<Q>,
}

impl PartialEq for TruncatedSeries {
    /// Grids are a validation attribute; two series on different grids with
    /// the same terms, weight and bound are equal.
    fn eq(&self, other: &Self) -> bool {
        self.space.weight == other.space.weight
            && self.terms == other.terms
            && self.bound == other.bound
    }
}

impl TruncatedSeries {
    /// The exact zero series.
    pub fn zero(space: Arc<SeriesSpace>) -> Self {
        TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound: None,
        }
    }

    /// A series about which nothing is known below weight `bound`.
    pub fn unknown(space: Arc<SeriesSpace>, bound: Q) -> Self {
        TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound: Some(bound),
        }
    }

    pub fn constant(space: Arc<SeriesSpace>, c: Scalar) -> Self {
        let m = space.num_vars();
        let mut s = TruncatedSeries::zero(space);
        if !c.is_zero() {
            s.terms.insert(Exponent::zero(m), c);
        }
        s
    }

    pub fn one(space: Arc<SeriesSpace>) -> Self {
        TruncatedSeries::constant(space, Scalar::one())
    }

    /// Exact monomial `c·t^e`; the grid is refined when `e` requires it.
    pub fn monomial(space: Arc<SeriesSpace>, c: Scalar, e: Exponent) -> Result<Self> {
        if e.len() != space.num_vars() {
            return Err(Error::SpaceMismatch(format!(
                "exponent {e} for {} variables",
                space.num_vars()
            )));
        }
        let space = if space.on_grid(&e) {
            space
        } else {
            Arc::new(space.refined_for(&e))
        };
        let mut s = TruncatedSeries::zero(space);
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        Ok(s)
    }

    /// Sums the given terms; terms at or above the bound are dropped.
    pub fn from_terms<I>(space: Arc<SeriesSpace>, terms: I, bound: Option<Q>) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut s = TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound,
        };
        for (e, c) in terms {
            s.space.check_on_grid(&e)?;
            if below(&s.bound, &s.space.weight_of(&e)) {
                s.add_term(e, &c);
            }
        }
        Ok(s)
    }

    fn add_term(&mut self, e: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    pub fn num_vars(&self) -> usize {
        self.space.num_vars()
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn bound(&self) -> Option<&Q> {
        self.bound.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.bound.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.bound.is_none() && self.terms.is_empty()
    }

    /// No known nonzero term (exact zero or zero below the bound).
    pub fn is_zero_below_bound(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> Option<&Scalar> {
        self.terms.get(e)
    }

    /// Terms in increasing weight order.
    pub fn ordered_terms(&self) -> Vec<(&Exponent, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.space.cmp_exponents(a.0, b.0));
        v
    }

    /// The weight-minimal term.
    pub fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms
            .iter()
            .min_by(|a, b| self.space.cmp_exponents(a.0, b.0))
    }

    /// Lower bound on the weight of the true lowest term; `None` stands for
    /// +∞ (the exact zero series).
    pub fn order_lower_bound(&self) -> Option<Q> {
        match self.leading() {
            Some((e, _)) => Some(self.space.weight_of(e)),
            None => self.bound.clone(),
        }
    }

    /// Lowers the bound to `n` (never raises it).
    pub fn truncate(&self, n: Q) -> Self {
        let bound = min_bound(&self.bound, &Some(n));
        TruncatedSeries {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| below(&bound, &self.space.weight_of(e)))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            bound,
        }
    }

    /// Same terms on a space with the given grid refinement.
    pub fn with_space(&self, space: Arc<SeriesSpace>) -> Result<Self> {
        for e in self.terms.keys() {
            space.check_on_grid(e)?;
        }
        if space.weight != self.space.weight {
            return Err(Error::SpaceMismatch("different weight vectors".into()));
        }
        Ok(TruncatedSeries {
            space,
            terms: self.terms.clone(),
            bound: self.bound.clone(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let space = SeriesSpace::merge(&self.space, &other.space)?;
        let bound = min_bound(&self.bound, &other.bound);
        let mut out = TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound,
        };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            if below(&out.bound, &out.space.weight_of(e)) {
                out.add_term(e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    /// Product; the bound is `min(N_a + lb(b), N_b + lb(a))` where `lb` is the
    /// lower bound on the weight of the true lowest term.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let space = SeriesSpace::merge(&self.space, &other.space)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(TruncatedSeries::zero(space));
        }
        let lb_a = self.order_lower_bound().expect("nonzero");
        let lb_b = other.order_lower_bound().expect("nonzero");
        let from_a = self.bound.as_ref().map(|n| n + &lb_b);
        let from_b = other.bound.as_ref().map(|n| n + &lb_a);
        let bound = min_bound(&from_a, &from_b);
        let mut out = TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound,
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                if below(&out.bound, &out.space.weight_of(&e)) {
                    out.add_term(e, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = TruncatedSeries::one(self.space.clone());
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero(self.space.clone());
        }
        TruncatedSeries {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
            bound: self.bound.clone(),
        }
    }

    /// Multiplication by the exact monomial `c·t^e`.
    pub fn mul_monomial(&self, c: &Scalar, e: &Exponent) -> Result<Self> {
        let m = TruncatedSeries::monomial(self.space.clone(), c.clone(), e.clone())?;
        self.checked_mul(&m)
    }

    /// Term-wise `∂/∂t_j`; the bound drops by `w_j`.
    pub fn derivative(&self, j: usize) -> Self {
        let unit = Exponent::unit(self.num_vars(), j);
        let mut out = TruncatedSeries {
            space: self.space.clone(),
            terms: BTreeMap::new(),
            bound: self.bound.as_ref().map(|n| n - &self.space.weight[j]),
        };
        for (e, c) in &self.terms {
            if e.0[j].is_zero() {
                continue;
            }
            let c = c * &Scalar::rational(e.0[j].clone());
            out.add_term(e.sub(&unit), &c);
        }
        out
    }

    /// Rank-2 valuation `(order, v_K(leading coefficient))` for one variable;
    /// for several variables the order part is `(w·e, e)` of the
    /// weight-minimal exponent.
    pub fn valuation(&self, vk: CoeffValuation) -> Result<TropValue> {
        match self.leading() {
            Some((e, c)) => Ok(self.space.value(e, vk.value(c)?)),
            None if self.is_exact() => Ok(TropValue::infinite(self.space.value_rank())),
            None => Err(Error::IndeterminateBelowBound(fmt_q(self.bound.as_ref().unwrap()))),
        }
    }

    /// `ṽ` under the trivial coefficient valuation.
    pub fn support(&self) -> SupportSet {
        SupportSet {
            space: self.space.clone(),
            points: self.terms.keys().cloned().collect(),
            bound: self.bound.clone(),
        }
    }

    /// `ṽ` under an arbitrary coefficient valuation.
    pub fn trop_coefficients(&self, vk: CoeffValuation) -> Result<TropSeries> {
        let mut entries = BTreeMap::new();
        for (e, c) in &self.terms {
            entries.insert(e.clone(), vk.value(c)?);
        }
        Ok(TropSeries {
            space: self.space.clone(),
            entries,
            bound: self.bound.clone(),
        })
    }

    /// Relabels exponents through an injective map onto a new space; the
    /// bound is passed explicitly because only the caller knows how the
    /// weights correspond.
    pub fn map_exponents<F>(&self, space: Arc<SeriesSpace>, bound: Option<Q>, f: F) -> Result<Self>
    where
        F: Fn(&Exponent) -> Exponent,
    {
        let mut out = TruncatedSeries {
            space,
            terms: BTreeMap::new(),
            bound,
        };
        for (e, c) in &self.terms {
            let img = f(e);
            if !out.space.on_grid(&img) {
                out.space = Arc::new(out.space.refined_for(&img));
            }
            if below(&out.bound, &out.space.weight_of(&img)) {
                out.add_term(img, c);
            }
        }
        Ok(out)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (e, c) in self.ordered_terms() {
            push_signed(&mut out, c, &format_tpart(e, names));
        }
        if let Some(n) = &self.bound {
            if out.is_empty() {
                out.push_str(&format!("O[{}]", fmt_q(n)));
            } else {
                out.push_str(&format!(" + O[{}]", fmt_q(n)));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with(&self.space.default_names()))
    }
}

macro_rules! series_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: &TruncatedSeries) -> TruncatedSeries {
                self.$checked(rhs).expect("series operands from incompatible spaces")
            }
        }
    };
}
series_op!(Add, add, checked_add);
series_op!(Sub, sub, checked_sub);
series_op!(Mul, mul, checked_mul);

/// `t1^2*t2^(1/2)`; empty for the zero exponent.
pub fn format_tpart(e: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (x, name) in e.0.iter().zip(names) {
        if x.is_zero() {
            continue;
        }
        if x.is_one() {
            parts.push(name.clone());
        } else if x.is_integer() && x.is_positive() {
            parts.push(format!("{name}^{}", fmt_q(x)));
        } else {
            parts.push(format!("{name}^({})", fmt_q(x)));
        }
    }
    parts.join("*")
}

/// Splits a scalar into a sign and a printable magnitude suitable as a
/// factor: `3`, `(1/2)`, `sqrt(2)`, `(1 + sqrt(2))`.
pub fn scalar_factor(c: &Scalar) -> (bool, String) {
    match c.as_rational() {
        Some(a) => {
            let neg = a.is_negative();
            let mag = a.abs();
            let s = if mag.is_integer() {
                fmt_q(&mag)
            } else {
                format!("({})", fmt_q(&mag))
            };
            (neg, s)
        }
        None => {
            let b = c.irrational_part();
            let d = c.radicand().unwrap();
            if c.rational_part().is_zero() {
                let neg = b.is_negative();
                let mag = b.abs();
                let s = if mag.is_one() {
                    format!("sqrt({d})")
                } else if mag.is_integer() {
                    format!("{}*sqrt({d})", fmt_q(&mag))
                } else {
                    format!("({})*sqrt({d})", fmt_q(&mag))
                };
                (neg, s)
            } else {
                let a = c.rational_part();
                let a_s = if a.is_integer() {
                    fmt_q(a)
                } else {
                    format!("({})", fmt_q(a))
                };
                let mag = b.abs();
                let r = if mag.is_one() {
                    format!("sqrt({d})")
                } else if mag.is_integer() {
                    format!("{}*sqrt({d})", fmt_q(&mag))
                } else {
                    format!("({})*sqrt({d})", fmt_q(&mag))
                };
                let op = if b.is_negative() { "-" } else { "+" };
                (false, format!("({a_s} {op} {r})"))
            }
        }
    }
}

/// Appends `± c*rest` to a sum being built.
pub fn push_signed(out: &mut String, c: &Scalar, rest: &str) {
    let (neg, mag) = scalar_factor(c);
    let body = if rest.is_empty() {
        mag
    } else if c.is_one() || (neg && (-c).is_one()) {
        rest.to_string()
    } else {
        format!("{mag}*{rest}")
    };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    out.push_str(&body);
}

/// A Boolean series: the set of exponents of a series, with the same
/// truncation semantics.
#[derive(Clone, Debug)]
pub struct SupportSet {
    space: Arc<SeriesSpace>,
    points: BTreeSet<Exponent>,
    bound: Option<Q>,
}

impl PartialEq for SupportSet {
    fn eq(&self, other: &Self) -> bool {
        self.space.weight == other.space.weight
            && self.points == other.points
            && self.bound == other.bound
    }
}

impl SupportSet {
    pub fn new<I>(space: Arc<SeriesSpace>, points: I, bound: Option<Q>) -> Result<Self>
    where
        I: IntoIterator<Item = Exponent>,
    {
        let points: BTreeSet<Exponent> = points.into_iter().collect();
        for p in &points {
            space.check_on_grid(p)?;
            if !below(&bound, &space.weight_of(p)) {
                return Err(Error::InvalidArgument(format!(
                    "support point {p} is not below the bound {}",
                    fmt_q(bound.as_ref().unwrap())
                )));
            }
        }
        Ok(SupportSet {
            space,
            points,
            bound,
        })
    }

    /// An exactly known finite support.
    pub fn exact<I>(space: Arc<SeriesSpace>, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = Exponent>,
    {
        SupportSet::new(space, points, None)
    }

    pub fn space(&self) -> &Arc<SeriesSpace> {
        &self.space
    }

    pub fn points(&self) -> &BTreeSet<Exponent> {
        &self.points
    }

    pub fn bound(&self) -> Option<&Q> {
        self.bound.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.bound.is_none()
    }

    pub fn leading(&self) -> Option<&Exponent> {
        self.points
            .iter()
            .min_by(|a, b| self.space.cmp_exponents(a, b))
    }

    /// Support-level derivation in `t_j`: points with `e_j = 0` die, the
    /// others shift by `-unit_j`.
    pub fn derivative(&self, j: usize) -> SupportSet {
        let unit = Exponent::unit(self.space.num_vars(), j);
        SupportSet {
            space: self.space.clone(),
            points: self
                .points
                .iter()
                .filter(|e| !e.0[j].is_zero())
                .map(|e| e.sub(&unit))
                .collect(),
            bound: self.bound.as_ref().map(|n| n - &self.space.weight[j]),
        }
    }

    /// Applies `∂^α`.
    pub fn derivative_multi(&self, alpha: &[u32]) -> SupportSet {
        let mut s = self.clone();
        for (j, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                s = s.derivative(j);
            }
        }
        s
    }

    /// `Φ`: the minimum of the support with Boolean coefficient 0.
    pub fn phi(&self) -> Result<TropValue> {
        match self.leading() {
            Some(e) => Ok(self.space.value(e, Q::zero())),
            None if self.is_exact() => Ok(TropValue::infinite(self.space.value_rank())),
            None => Err(Error::IndeterminateBelowBound(fmt_q(self.bound.as_ref().unwrap()))),
        }
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")?;
        if let Some(n) = &self.bound {
            write!(f, " bound {}", fmt_q(n))?;
        }
        Ok(())
    }
}

/// A series with tropical coefficients: exponent ↦ `v_K(coefficient)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TropSeries {
    space: Arc<SeriesSpace>,
    entries: BTreeMap<Exponent, Q>,
    bound: Option<Q>,
}

impl TropSeries {
    pub fn entries(&self) -> &BTreeMap<Exponent, Q> {
        &self.entries
    }

    pub fn bound(&self) -> Option<&Q> {
        self.bound.as_ref()
    }

    pub fn support(&self) -> SupportSet {
        SupportSet {
            space: self.space.clone(),
            points: self.entries.keys().cloned().collect(),
            bound: self.bound.clone(),
        }
    }

    /// `Φ`: `(lowest exponent, its tropical coefficient)`.
    pub fn phi(&self) -> Result<TropValue> {
        let lead = self
            .entries
            .iter()
            .min_by(|a, b| self.space.cmp_exponents(a.0, b.0));
        match lead {
            Some((e, v)) => Ok(self.space.value(e, v.clone())),
            None if self.bound.is_none() => Ok(TropValue::infinite(self.space.value_rank())),
            None => Err(Error::IndeterminateBelowBound(fmt_q(self.bound.as_ref().unwrap()))),
        }
    }
}
