//! Coefficient field: the rationals, optionally extended by one square root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// `a + b·√D`. `radicand` is 0 exactly when `b` is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Q,
    b: Q,
    radicand: u64,
}

impl Scalar {
    pub fn rational(a: Q) -> Self {
        Scalar {
            a,
            b: Q::zero(),
            radicand: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(q(n))
    }

    /// `a + b·√d`; `d` must be square-free and at least 2.
    pub fn quadratic(a: Q, b: Q, d: u64) -> Self {
        assert!(is_square_free(d) && d >= 2, "radicand {d} must be square-free and >= 2");
        if b.is_zero() {
            Scalar::rational(a)
        } else {
            Scalar { a, b, radicand: d }
        }
    }

    pub fn sqrt(d: u64) -> Self {
        Scalar::quadratic(Q::zero(), Q::one(), d)
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn irrational_part(&self) -> &Q {
        &self.b
    }

    /// `None` for rational scalars.
    pub fn radicand(&self) -> Option<u64> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.b.is_zero().then_some(&self.a)
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("scalars from different quadratic extensions: sqrt({d}) and sqrt({e})"),
        }
    }

    fn build(a: Q, b: Q, d: u64) -> Self {
        if b.is_zero() {
            Scalar::rational(a)
        } else {
            Scalar { a, b, radicand: d }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = Q::from_integer(BigInt::from(self.radicand));
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        Some(Scalar::build(&self.a / &norm, -(&self.b / &norm), self.radicand))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Scalar::one(), |acc, _| &acc * self)
    }

    /// Sign of a rational scalar, `None` for irrational ones.
    pub fn rational_sign(&self) -> Option<std::cmp::Ordering> {
        self.as_rational().map(|a| a.cmp(&Q::zero()))
    }
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        Scalar::build(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        Scalar::build(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.common_radicand(rhs);
        let dq = Q::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dq;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::build(a, b, d)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-&self.a, -&self.b, self.radicand)
    }
}

impl From<Q> for Scalar {
    fn from(a: Q) -> Self {
        Scalar::rational(a)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_q(&self.a));
        }
        let root = format!("sqrt({})", self.radicand);
        let irr = if self.b.is_one() {
            root
        } else if (-&self.b).is_one() {
            format!("-{root}")
        } else if self.b.is_integer() {
            format!("{}*{root}", fmt_q(&self.b))
        } else {
            format!("({})*{root}", fmt_q(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{irr}")
        } else {
            write!(f, "{} + {irr}", fmt_q(&self.a))
        }
    }
}

/// The valuation `v_K` on coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffValuation {
    Trivial,
    PAdic(u64),
}

impl CoeffValuation {
    /// `v_K(c)` for a nonzero scalar.
    pub fn value(&self, c: &Scalar) -> Result<Q> {
        assert!(!c.is_zero(), "valuation of zero is infinite; callers handle it");
        match self {
            CoeffValuation::Trivial => Ok(Q::zero()),
            CoeffValuation::PAdic(p) => {
                let a = c.as_rational().ok_or_else(|| {
                    Error::UnsupportedValuation(format!("{p}-adic on {c}"))
                })?;
                let p = BigInt::from(*p);
                Ok(Q::from_integer(BigInt::from(
                    multiplicity(a.numer(), &p) - multiplicity(a.denom(), &p),
                )))
            }
        }
    }
}

impl fmt::Display for CoeffValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffValuation::Trivial => write!(f, "trivial"),
            CoeffValuation::PAdic(p) => write!(f, "padic {p}"),
        }
    }
}

fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}
