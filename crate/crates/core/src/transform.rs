//! Shift, ramification and blow-up transformations.
//!
//! A spec describes the substitution `s = κ(t^d)` of the old independent
//! variables `s` by monomials in new variables `t`, together with the
//! dependent-variable change `z_i = t^l · x_i(s)`. Row `i` of the exponent
//! matrix `M` is the exponent vector of the monomial substituted for `s_i`,
//! so a monomial `s^e` becomes `t^(Mᵀe)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffpoly::{DiffPolynomial, GeneratorSet, JetVar};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{denom_u64, fmt_q, is_nonneg_integer, lcm_u64, parse_q, q, Q};
use crate::scalar::{CoeffValuation, Scalar};
use crate::series::{Exponent, SeriesSpace, SupportSet, TruncatedSeries};
use crate::tropicalize::search_boolean_solutions;

/// One combinatorial blow-up `σ_{I,j}`: `s_i = t_i·t_j` for `i ∈ I \ {j}`.
/// Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blowup {
    pub set: Vec<usize>,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransformSpec {
    power: Vec<u64>,
    shift: Vec<Q>,
    blowups: Vec<Blowup>,
}

impl TransformSpec {
    pub fn new(power: Vec<u64>, shift: Vec<Q>, blowups: Vec<Blowup>) -> Result<Self> {
        let m = power.len();
        if m == 0 {
            return Err(Error::InvalidSpec("no independent variables".into()));
        }
        if shift.len() != m {
            return Err(Error::InvalidSpec(format!(
                "power has {m} entries but shift has {}",
                shift.len()
            )));
        }
        if power.contains(&0) {
            return Err(Error::InvalidSpec("powers must be positive".into()));
        }
        for b in &blowups {
            let mut sorted = b.set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != b.set.len() || sorted.len() < 2 {
                return Err(Error::InvalidSpec("a blow-up needs at least two distinct indices".into()));
            }
            if sorted.iter().any(|&i| i >= m) || !sorted.contains(&b.target) {
                return Err(Error::InvalidSpec(format!(
                    "blow-up {} is not valid for {m} variables",
                    format_blowup(b)
                )));
            }
        }
        Ok(TransformSpec {
            power,
            shift,
            blowups,
        })
    }

    pub fn identity(m: usize) -> Self {
        TransformSpec {
            power: vec![1; m],
            shift: vec![Q::zero(); m],
            blowups: Vec::new(),
        }
    }

    /// The univariate `σ_{k,l}`.
    pub fn power_shift(k: u64, l: Q) -> Result<Self> {
        TransformSpec::new(vec![k], vec![l], Vec::new())
    }

    pub fn num_vars(&self) -> usize {
        self.power.len()
    }

    pub fn power(&self) -> &[u64] {
        &self.power
    }

    pub fn shift(&self) -> &[Q] {
        &self.shift
    }

    pub fn blowups(&self) -> &[Blowup] {
        &self.blowups
    }

    /// `power 1,1; shift 0,-1/2; blowup {1,2}->2`. Missing `power` or `shift`
    /// default to ones and zeros in `m` variables.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let mut power = None;
        let mut shift = None;
        let mut blowups = Vec::new();
        for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, rest) = clause.split_once(char::is_whitespace).unwrap_or((clause, ""));
            let rest = rest.trim();
            match key {
                "power" => {
                    let v = rest
                        .split(',')
                        .map(|x| {
                            x.trim()
                                .parse::<u64>()
                                .map_err(|_| Error::InvalidSpec(format!("bad power '{}'", x.trim())))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    power = Some(v);
                }
                "shift" => {
                    let v = rest
                        .split(',')
                        .map(|x| parse_q(x.trim()).ok_or_else(|| Error::InvalidSpec(format!("bad shift '{}'", x.trim()))))
                        .collect::<Result<Vec<_>>>()?;
                    shift = Some(v);
                }
                "blowup" => blowups.push(parse_blowup(rest)?),
                other => return Err(Error::InvalidSpec(format!("unknown clause '{other}'"))),
            }
        }
        let m = power
            .as_ref()
            .map(Vec::len)
            .or(shift.as_ref().map(Vec::len))
            .unwrap_or(m);
        TransformSpec::new(
            power.unwrap_or_else(|| vec![1; m]),
            shift.unwrap_or_else(|| vec![Q::zero(); m]),
            blowups,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SpecJson::from(self)).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: SpecJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let shift = raw
            .shift
            .iter()
            .map(|s| parse_q(s).ok_or_else(|| Error::InvalidSpec(format!("bad shift '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        let blowups = raw
            .blowups
            .iter()
            .map(|b| {
                if b.set.contains(&0) || b.target == 0 {
                    return Err(Error::InvalidSpec("blow-up indices are 1-based".into()));
                }
                Ok(Blowup {
                    set: b.set.iter().map(|i| i - 1).collect(),
                    target: b.target - 1,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TransformSpec::new(raw.power, shift, blowups)
    }
}

fn parse_blowup(text: &str) -> Result<Blowup> {
    let bad = || Error::InvalidSpec(format!("bad blow-up '{text}', expected {{i,j,..}}->j"));
    let (set, target) = text.split_once("->").ok_or_else(bad)?;
    let set = set.trim().trim_start_matches('{').trim_end_matches('}');
    let idx = |s: &str| -> Result<usize> {
        match s.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(bad()),
        }
    };
    Ok(Blowup {
        set: set.split(',').map(idx).collect::<Result<_>>()?,
        target: idx(target)?,
    })
}

fn format_blowup(b: &Blowup) -> String {
    let set: Vec<String> = b.set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}->{}", set.join(","), b.target + 1)
}

impl fmt::Display for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power: Vec<String> = self.power.iter().map(u64::to_string).collect();
        let shift: Vec<String> = self.shift.iter().map(fmt_q).collect();
        write!(f, "power {}; shift {}", power.join(","), shift.join(","))?;
        for b in &self.blowups {
            write!(f, "; blowup {}", format_blowup(b))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BlowupJson {
    set: Vec<usize>,
    target: usize,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    power: Vec<u64>,
    shift: Vec<String>,
    blowups: Vec<BlowupJson>,
}

impl From<&TransformSpec> for SpecJson {
    fn from(s: &TransformSpec) -> Self {
        SpecJson {
            power: s.power.clone(),
            shift: s.shift.iter().map(fmt_q).collect(),
            blowups: s
                .blowups
                .iter()
                .map(|b| BlowupJson {
                    set: b.set.iter().map(|i| i + 1).collect(),
                    target: b.target + 1,
                })
                .collect(),
        }
    }
}

/// `M` and `M⁻¹` for `s = κ(t^d)`.
pub fn kappa_exponent_map(spec: &TransformSpec) -> Result<(Matrix, Matrix)> {
    let m = spec.num_vars();
    let mut a = linalg::identity(m);
    for b in &spec.blowups {
        let mut step = linalg::identity(m);
        for &i in &b.set {
            if i != b.target {
                step[i][b.target] = Q::one();
            }
        }
        a = linalg::mul(&a, &step);
    }
    let mat: Matrix = a
        .iter()
        .map(|row| row.iter().zip(&spec.power).map(|(x, &d)| x * q(d as i64)).collect())
        .collect();
    let inv = linalg::invert(&mat).ok_or(Error::SingularExponentMatrix)?;
    Ok((mat, inv))
}

/// Precomputed data of one spec acting on one source space.
struct Action {
    shift: Exponent,
    mat: Matrix,
    mat_t: Matrix,
    inv: Matrix,
    inv_t: Matrix,
    source: Arc<SeriesSpace>,
    target: Arc<SeriesSpace>,
    /// `w'` before normalisation (`M⁻¹ w`) and its normalisation factor.
    target_raw: Vec<Q>,
    target_factor: Q,
}

impl Action {
    fn new(spec: &TransformSpec, source: &Arc<SeriesSpace>) -> Result<Self> {
        if source.num_vars() != spec.num_vars() {
            return Err(Error::SpaceMismatch(format!(
                "spec for {} variables applied to {}",
                spec.num_vars(),
                source.num_vars()
            )));
        }
        let (mat, inv) = kappa_exponent_map(spec)?;
        let target_raw = linalg::mul_vec(&inv, source.weight());
        if target_raw.iter().any(|w| !w.is_positive()) {
            return Err(Error::IncompatibleWeight(format!(
                "weight ({}) is not positive after the substitution",
                target_raw.iter().map(fmt_q).collect::<Vec<_>>().join(",")
            )));
        }
        let (target, target_factor) = SeriesSpace::new(vec![1; spec.num_vars()], target_raw.clone())?;
        Ok(Action {
            shift: Exponent(spec.shift.clone()),
            mat_t: linalg::transpose(&mat),
            inv_t: linalg::transpose(&inv),
            mat,
            inv,
            source: source.clone(),
            target,
            target_raw,
            target_factor,
        })
    }

    /// Source space matching a target space, for the inverse direction.
    fn from_target(spec: &TransformSpec, target: &Arc<SeriesSpace>) -> Result<Self> {
        let (mat, _) = kappa_exponent_map(spec)?;
        let raw = linalg::mul_vec(&mat, target.weight());
        let (source, _) = SeriesSpace::new(vec![1; spec.num_vars()], raw)?;
        let mut a = Action::new(spec, &source)?;
        a.target = target.clone();
        Ok(a)
    }

    fn coeff_exponent(&self, e: &Exponent) -> Exponent {
        Exponent(linalg::mul_vec(&self.mat_t, &e.0))
    }

    fn forward(&self, e: &Exponent) -> Exponent {
        self.coeff_exponent(e).add(&self.shift)
    }

    fn backward(&self, e: &Exponent) -> Exponent {
        Exponent(linalg::mul_vec(&self.inv_t, &e.sub(&self.shift).0))
    }

    fn raw_shift_weight(&self) -> Q {
        self.target_raw.iter().zip(&self.shift.0).map(|(w, l)| w * l).sum()
    }

    fn forward_bound(&self, n: Option<&Q>) -> Option<Q> {
        n.map(|n| (n + self.raw_shift_weight()) * &self.target_factor)
    }

    fn coeff_bound(&self, n: Option<&Q>) -> Option<Q> {
        n.map(|n| n * &self.target_factor)
    }

    /// Target bound back to a source bound, in the source's normalisation.
    fn backward_bound(&self, n: Option<&Q>) -> Option<Q> {
        n.map(|n| {
            let raw_w: Vec<Q> = self.target.weight().to_vec();
            let shift_w: Q = raw_w.iter().zip(&self.shift.0).map(|(w, l)| w * l).sum();
            let src_raw = linalg::mul_vec(&self.mat, &raw_w);
            let (_, factor) = crate::rational::primitive(&src_raw);
            (n - shift_w) * factor
        })
    }
}

fn space_for_points<'a, I>(base: &Arc<SeriesSpace>, points: I) -> Arc<SeriesSpace>
where
    I: IntoIterator<Item = &'a Exponent>,
{
    let mut grid = base.grid().to_vec();
    for p in points {
        for (g, x) in grid.iter_mut().zip(&p.0) {
            *g = lcm_u64(*g, denom_u64(x));
        }
    }
    Arc::new(base.with_grid(&grid))
}

/// `ψ_i = t^l · φ_i(κ(t^d))` by the exponent action, without checking that
/// the result is a power series.
pub fn apply_to_series(spec: &TransformSpec, phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let act = Action::new(spec, phi.space())?;
    phi.map_exponents(act.target.clone(), act.forward_bound(phi.bound()), |e| act.forward(e))
}

/// The forward transform of candidate solutions; every resulting exponent
/// must be a nonnegative integer vector.
pub fn transform_series(spec: &TransformSpec, phi: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    phi.iter()
        .map(|p| {
            let psi = apply_to_series(spec, p)?;
            if let Some(bad) = psi.terms().keys().find(|e| !e.0.iter().all(is_nonneg_integer)) {
                return Err(Error::OffGridResult(format!("exponent {bad} is not a nonnegative integer vector")));
            }
            let (integer, _) = SeriesSpace::new(vec![1; spec.num_vars()], psi.space().weight().to_vec())?;
            psi.with_space(integer)
        })
        .collect()
}

/// `φ_i(s) = s^{-l'}·ψ_i(κ⁻¹(s))`: the formal inverse on series.
pub fn inverse_transform_series(spec: &TransformSpec, psi: &TruncatedSeries) -> Result<TruncatedSeries> {
    let act = Action::from_target(spec, psi.space())?;
    psi.map_exponents(act.source.clone(), act.backward_bound(psi.bound()), |e| act.backward(e))
}

/// `κ` on a support: `e ↦ Mᵀe + l`.
pub fn transform_support(spec: &TransformSpec, a: &SupportSet) -> Result<SupportSet> {
    let act = Action::new(spec, a.space())?;
    let pts: Vec<Exponent> = a.points().iter().map(|e| act.forward(e)).collect();
    let space = space_for_points(&act.target, &pts);
    SupportSet::new(space, pts, act.forward_bound(a.bound()))
}

/// `κ⁻¹` on a support: `e ↦ M⁻ᵀ(e − l)`, grid refined by the powers.
pub fn inverse_transform_support(spec: &TransformSpec, a: &SupportSet) -> Result<SupportSet> {
    let act = Action::from_target(spec, a.space())?;
    let pts: Vec<Exponent> = a.points().iter().map(|e| act.backward(e)).collect();
    let base = Arc::new(act.source.with_grid(spec.power()));
    let space = space_for_points(&base, &pts);
    SupportSet::new(space, pts, act.backward_bound(a.bound()))
}

/// Computes `t^l · φ(κ(t^d))` by multiplying substituted monomials as
/// series and compares its support with the exponent-map image of
/// `supp(φ)`.
pub fn support_equivariance_check(spec: &TransformSpec, phi: &[TruncatedSeries]) -> Result<bool> {
    for p in phi {
        let act = Action::new(spec, p.space())?;
        let mut subst = TruncatedSeries::zero(act.target.clone());
        for (e, c) in p.terms() {
            let mut term = TruncatedSeries::monomial(act.target.clone(), c.clone(), act.shift.clone())?;
            for (i, x) in e.0.iter().enumerate() {
                let row = Exponent(act.mat[i].iter().map(|y| y * x).collect());
                term = term.mul_monomial(&Scalar::one(), &row)?;
            }
            subst = subst.checked_add(&term)?;
        }
        if let Some(n) = act.forward_bound(p.bound()) {
            subst = subst.truncate(n);
        }
        let lhs = subst.support();
        let rhs = transform_support(spec, &p.support())?;
        if lhs.points() != rhs.points() || lhs.bound() != rhs.bound() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `inverse ∘ forward = identity` on a support.
pub fn support_roundtrip_check(spec: &TransformSpec, a: &SupportSet) -> Result<bool> {
    let back = inverse_transform_support(spec, &transform_support(spec, a)?)?;
    Ok(back.points() == a.points() && back.bound() == a.bound())
}

/// Rewrites every generator in the new variables: coefficients become
/// `A(κ(t^d))`, jets `∂^α x_i` are expressed through `z_i = t^l x_i` by the
/// chain rule, and the result is cleared by a unit monomial.
pub fn transform_system(spec: &TransformSpec, g: &GeneratorSet) -> Result<GeneratorSet> {
    let act = Action::new(spec, g.space())?;
    let m = spec.num_vars();
    let n = g.num_dep();
    let mut rewriter = JetRewriter {
        act: &act,
        num_dep: n,
        memo: BTreeMap::new(),
    };
    let mut out = Vec::with_capacity(g.generators().len());
    for f in g.generators() {
        let mut acc = DiffPolynomial::zero(act.target.clone(), n);
        for (mono, c) in f.terms() {
            let coeff = c.map_exponents(act.target.clone(), act.coeff_bound(c.bound()), |e| act.coeff_exponent(e))?;
            let mut term = DiffPolynomial::from_series(coeff, n);
            for (jet, &k) in mono.powers() {
                term = term.checked_mul(&rewriter.image(jet)?.pow(k)?)?;
            }
            acc = acc.checked_add(&term)?;
        }
        debug_assert_eq!(acc.num_indep(), m);
        out.push(acc.normalize_unit()?);
    }
    GeneratorSet::new(out)
}

struct JetRewriter<'a> {
    act: &'a Action,
    num_dep: usize,
    memo: BTreeMap<JetVar, DiffPolynomial>,
}

impl JetRewriter<'_> {
    fn image(&mut self, jet: &JetVar) -> Result<DiffPolynomial> {
        if let Some(p) = self.memo.get(jet) {
            return Ok(p.clone());
        }
        let m = jet.deriv.len();
        let p = match jet.deriv.iter().position(|&k| k > 0) {
            None => {
                let z = DiffPolynomial::jet(self.act.target.clone(), self.num_dep, JetVar::base(jet.var, m));
                let neg_l = Exponent(self.act.shift.0.iter().map(|x| -x).collect());
                z.mul_monomial(&Scalar::one(), &neg_l)?
            }
            Some(j) => {
                let mut lower = jet.clone();
                lower.deriv[j] -= 1;
                let prev = self.image(&lower)?;
                self.derive(&prev, j)?
            }
        };
        self.memo.insert(jet.clone(), p.clone());
        Ok(p)
    }

    /// `∂/∂s_j = t^{-M_j} Σ_k (M⁻¹)_{kj} t_k ∂/∂t_k`.
    fn derive(&self, p: &DiffPolynomial, j: usize) -> Result<DiffPolynomial> {
        let m = self.act.mat.len();
        let row = &self.act.mat[j];
        let mut acc = DiffPolynomial::zero(self.act.target.clone(), self.num_dep);
        for k in 0..m {
            let c = &self.act.inv[k][j];
            if c.is_zero() {
                continue;
            }
            let e = Exponent((0..m).map(|i| if i == k { Q::one() - &row[i] } else { -&row[i] }).collect());
            let term = p.total_derivative(k).mul_monomial(&Scalar::rational(c.clone()), &e)?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }
}

/// One candidate of the bounded `(k, l)` enumeration.
#[derive(Clone, Debug)]
pub struct PowerShiftCandidate {
    pub spec: TransformSpec,
    pub system: GeneratorSet,
    pub supports: Vec<SupportSet>,
}

/// Heuristic helper for one independent variable: tries `k = 1..=k_max` and
/// `l = j/k` for `0 ≤ j ≤ l_max·k`, transforms the system, and keeps the
/// specs whose transformed system has a nonzero boolean support in the
/// window that survives `deriv_bound` derivatives. Finding minimal `(k, l)`
/// in general is open; this only explores a box.
pub fn search_power_shift(
    g: &GeneratorSet,
    k_max: u64,
    l_max: u64,
    window: u32,
    deriv_bound: u32,
    vk: CoeffValuation,
) -> Result<Vec<PowerShiftCandidate>> {
    if g.num_indep() != 1 {
        return Err(Error::InvalidArgument("power/shift search needs one independent variable".into()));
    }
    let mut specs = Vec::new();
    for k in 1..=k_max {
        for j in 0..=l_max * k {
            let l = Q::new((j as i64).into(), (k as i64).into());
            specs.push(TransformSpec::power_shift(k, l)?);
        }
    }
    let found = specs
        .into_par_iter()
        .map(|spec| -> Result<Option<PowerShiftCandidate>> {
            let system = retighten(&transform_system(&spec, g)?)?;
            if system.space().grid() != [1] {
                return Ok(None);
            }
            finish(spec, system, window, deriv_bound, vk)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn finish(
    spec: TransformSpec,
    system: GeneratorSet,
    window: u32,
    deriv_bound: u32,
    vk: CoeffValuation,
) -> Result<Option<PowerShiftCandidate>> {
    let supports: Vec<SupportSet> = search_boolean_solutions(&system, window, deriv_bound, vk)?
        .into_iter()
        .filter(|s| !s.points().is_empty())
        .collect();
    Ok((!supports.is_empty()).then_some(PowerShiftCandidate { spec, system, supports }))
}

/// The same generators on the coarsest grid holding their exponents.
pub fn retighten(g: &GeneratorSet) -> Result<GeneratorSet> {
    let m = g.num_indep();
    let mut grid = vec![1u64; m];
    for f in g.generators() {
        for c in f.terms().values() {
            for e in c.terms().keys() {
                for (d, x) in grid.iter_mut().zip(&e.0) {
                    *d = lcm_u64(*d, denom_u64(x));
                }
            }
        }
    }
    let (space, _) = SeriesSpace::new(grid, g.space().weight().to_vec())?;
    let gens = g
        .generators()
        .iter()
        .map(|f| {
            DiffPolynomial::from_terms(
                space.clone(),
                f.num_dep(),
                f.terms()
                    .iter()
                    .map(|(mono, c)| Ok((mono.clone(), c.with_space(space.clone())?)))
                    .collect::<Result<Vec<_>>>()?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    GeneratorSet::new(gens)
}
