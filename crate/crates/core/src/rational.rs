//! Exact rationals and the one-point extension by `+∞`.
//!
//! Everything numeric in the crate is a [`Q`]; text form is always
//! `"num/den"` with a positive, reduced denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Canonical `"num/den"` text.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"a/b"` or a bare integer `"a"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(x: &Q) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// A rational or `+∞`; the derived order puts `Inf` above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QInf {
    Fin(Q),
    Inf,
}

impl QInf {
    pub fn zero() -> Self {
        QInf::Fin(Q::zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, QInf::Inf)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            QInf::Fin(x) => Some(x),
            QInf::Inf => None,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(QInf::Inf),
            other => parse_q(other).map(QInf::Fin),
        }
    }

    pub fn cmp_q(&self, other: &Q) -> Ordering {
        match self {
            QInf::Fin(x) => x.cmp(other),
            QInf::Inf => Ordering::Greater,
        }
    }
}

impl From<Q> for QInf {
    fn from(x: Q) -> Self {
        QInf::Fin(x)
    }
}

impl Add for &QInf {
    type Output = QInf;
    fn add(self, rhs: &QInf) -> QInf {
        match (self, rhs) {
            (QInf::Fin(a), QInf::Fin(b)) => QInf::Fin(a + b),
            _ => QInf::Inf,
        }
    }
}

impl Add<&Q> for &QInf {
    type Output = QInf;
    fn add(self, rhs: &Q) -> QInf {
        match self {
            QInf::Fin(a) => QInf::Fin(a + rhs),
            QInf::Inf => QInf::Inf,
        }
    }
}

impl fmt::Display for QInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QInf::Fin(x) => write!(f, "{}", fmt_q(x)),
            QInf::Inf => write!(f, "inf"),
        }
    }
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_is_reduced() {
        assert_eq!(fmt_q(&q(6, -4)), "-3/2");
        assert_eq!(fmt_q(&qi(0)), "0/1");
        assert_eq!(parse_q("10/4").unwrap(), q(5, 2));
        assert_eq!(parse_q(" -7 ").unwrap(), qi(-7));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
    }

    #[test]
    fn infinity_orders_last() {
        assert!(QInf::Inf > QInf::Fin(qi(1_000_000)));
        assert!(QInf::Fin(q(-1, 2)) < QInf::zero());
        assert_eq!(&QInf::Fin(qi(1)) + &QInf::Inf, QInf::Inf);
        assert_eq!(QInf::parse("inf").unwrap(), QInf::Inf);
    }
}
