//! Lexicographic min-plus semirings of rank `n`.
//!
//! A [`TropValue`] of rank 1 restricted to `{0, ∞}` plays the role of the
//! Boolean semiring; rank 1 in general is the tropical semiring and rank 2 is
//! the target of the valuation on power series.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropValue {
    /// The additive identity of the given rank.
    Infinite(usize),
    Finite(Vec<Q>),
}

impl TropValue {
    pub fn infinite(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be positive");
        TropValue::Infinite(rank)
    }

    pub fn finite(coords: Vec<Q>) -> Self {
        assert!(!coords.is_empty(), "rank must be positive");
        TropValue::Finite(coords)
    }

    /// The multiplicative identity `(0, …, 0)`.
    pub fn one(rank: usize) -> Self {
        TropValue::finite(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        match self {
            TropValue::Infinite(r) => *r,
            TropValue::Finite(c) => c.len(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropValue::Infinite(_))
    }

    pub fn coords(&self) -> Option<&[Q]> {
        match self {
            TropValue::Infinite(_) => None,
            TropValue::Finite(c) => Some(c),
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch(self.rank(), other.rank()))
        }
    }

    /// Total order underlying ⊕: lexicographic on coordinates, Infinite last.
    pub fn lex_cmp(&self, other: &Self) -> Result<Ordering> {
        self.check_rank(other)?;
        Ok(match (self, other) {
            (TropValue::Infinite(_), TropValue::Infinite(_)) => Ordering::Equal,
            (TropValue::Infinite(_), _) => Ordering::Greater,
            (_, TropValue::Infinite(_)) => Ordering::Less,
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
        })
    }

    /// ⊕: lexicographic minimum.
    pub fn trop_add(&self, other: &Self) -> Result<Self> {
        Ok(match self.lex_cmp(other)? {
            Ordering::Greater => other.clone(),
            _ => self.clone(),
        })
    }

    /// ⊙: componentwise sum, Infinite absorbing.
    pub fn trop_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => {
                TropValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => TropValue::Infinite(self.rank()),
        })
    }

    /// `k`-fold ⊙-power for a nonnegative integer `k`.
    pub fn trop_pow(&self, k: u32) -> Self {
        match self {
            TropValue::Infinite(r) if k > 0 => TropValue::Infinite(*r),
            TropValue::Infinite(r) => TropValue::one(*r),
            TropValue::Finite(a) => {
                let k = Q::from_integer(k.into());
                TropValue::Finite(a.iter().map(|x| x * &k).collect())
            }
        }
    }
}

/// ⊕ of a list; `None` for the empty list (whose rank is unknown).
pub fn trop_sum(terms: &[TropValue]) -> Result<Option<TropValue>> {
    let mut it = terms.iter();
    let Some(first) = it.next() else {
        return Ok(None);
    };
    let mut acc = first.clone();
    for t in it {
        acc = acc.trop_add(t)?;
    }
    Ok(Some(acc))
}

/// True iff deleting any single summand leaves the ⊕-sum unchanged, i.e. the
/// minimum is Infinite or attained at least twice. The empty sum vanishes.
pub fn tropically_vanishes(terms: &[TropValue]) -> Result<bool> {
    let Some(min) = trop_sum(terms)? else {
        return Ok(true);
    };
    if min.is_infinite() {
        return Ok(true);
    }
    let attained = terms.iter().filter(|t| **t == min).count();
    Ok(attained >= 2)
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Infinite(_) => write!(f, "inf"),
            TropValue::Finite(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", fmt_q(x))?;
                }
                write!(f, ")")
            }
        }
    }
}
