//! Truncated Puiseux series with rational coefficients.
//!
//! A [`PuiseuxScalar`] is a finite sum `Σ c_e t^e` together with a precision
//! `N`: the element is only known modulo terms of exponent `≥ N`. Exact
//! elements carry precision `+∞`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q, QInf};

/// Outcome of a valuation query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValResult {
    /// Known exactly; `QInf::Inf` for the exact zero.
    Exact(QInf),
    /// Only known to be at least this bound.
    AboveBound(Q),
}

impl ValResult {
    /// Lower bound on the valuation, exact when the result is exact.
    pub fn lower(&self) -> QInf {
        match self {
            ValResult::Exact(v) => v.clone(),
            ValResult::AboveBound(n) => QInf::Fin(n.clone()),
        }
    }

    pub fn exact(&self) -> Option<&QInf> {
        match self {
            ValResult::Exact(v) => Some(v),
            ValResult::AboveBound(_) => None,
        }
    }

    /// Decides `val < bound`, failing when the digits needed are truncated.
    pub fn lt(&self, bound: &Q) -> Result<bool> {
        match self {
            ValResult::Exact(v) => Ok(v.cmp_q(bound).is_lt()),
            ValResult::AboveBound(n) if n >= bound => Ok(false),
            ValResult::AboveBound(n) => Err(Error::InsufficientPrecision(format!(
                "valuation known only above {}, compared with {}",
                fmt_q(n),
                fmt_q(bound)
            ))),
        }
    }

    /// Decides `val <= bound`.
    pub fn le(&self, bound: &Q) -> Result<bool> {
        match self {
            ValResult::Exact(v) => Ok(v.cmp_q(bound).is_le()),
            ValResult::AboveBound(n) if n > bound => Ok(false),
            ValResult::AboveBound(n) => Err(Error::InsufficientPrecision(format!(
                "valuation known only above {}, compared with {}",
                fmt_q(n),
                fmt_q(bound)
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxScalar {
    terms: BTreeMap<Q, Q>,
    prec: QInf,
}

impl Default for PuiseuxScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl PuiseuxScalar {
    /// Builds a scalar, dropping zero coefficients and terms at or beyond `prec`.
    pub fn new(terms: impl IntoIterator<Item = (Q, Q)>, prec: QInf) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if prec.cmp_q(&e).is_le() {
                continue;
            }
            let slot = map.entry(e).or_insert_with(Q::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        PuiseuxScalar { terms: map, prec }
    }

    pub fn zero() -> Self {
        PuiseuxScalar {
            terms: BTreeMap::new(),
            prec: QInf::Inf,
        }
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_q(c: Q) -> Self {
        Self::monomial(c, Q::zero())
    }

    /// `c · t^e`, exact.
    pub fn monomial(c: Q, e: Q) -> Self {
        Self::new([(e, c)], QInf::Inf)
    }

    /// `t^e`, exact.
    pub fn t_pow(e: Q) -> Self {
        Self::monomial(Q::one(), e)
    }

    /// The inexact zero `O(t^n)`.
    pub fn big_o(n: Q) -> Self {
        PuiseuxScalar {
            terms: BTreeMap::new(),
            prec: QInf::Fin(n),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Q, Q> {
        &self.terms
    }

    pub fn precision(&self) -> &QInf {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_inf()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.prec.is_inf()
    }

    /// True when no terms are known, exact or not.
    pub fn is_zero_like(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn val(&self) -> ValResult {
        match (self.terms.keys().next(), &self.prec) {
            (Some(e), _) => ValResult::Exact(QInf::Fin(e.clone())),
            (None, QInf::Inf) => ValResult::Exact(QInf::Inf),
            (None, QInf::Fin(n)) => ValResult::AboveBound(n.clone()),
        }
    }

    /// Leading `(exponent, coefficient)` if any term is known.
    pub fn leading(&self) -> Option<(&Q, &Q)> {
        self.terms.iter().next()
    }

    /// Exact finite valuation or an error naming why it is unavailable.
    pub fn exact_val(&self) -> Result<Q> {
        match self.val() {
            ValResult::Exact(QInf::Fin(v)) => Ok(v),
            ValResult::Exact(QInf::Inf) => Err(Error::ZeroDivision),
            ValResult::AboveBound(n) => Err(Error::InsufficientPrecision(format!(
                "valuation only known to be at least {}",
                fmt_q(&n)
            ))),
        }
    }

    /// Drops everything at exponent `≥ n`.
    pub fn truncate(&self, n: &Q) -> Self {
        let prec = std::cmp::min(self.prec.clone(), QInf::Fin(n.clone()));
        Self::new(self.terms.clone(), prec)
    }

    /// Forgets the truncation, reading the known terms as an exact element.
    pub fn exactify(&self) -> Self {
        PuiseuxScalar {
            terms: self.terms.clone(),
            prec: QInf::Inf,
        }
    }

    /// Multiplication by `t^e`; exact.
    pub fn shift(&self, e: &Q) -> Self {
        PuiseuxScalar {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            prec: &self.prec + e,
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxScalar {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Inverse with `rel` digits of relative precision: the result is `a⁻¹`
    /// modulo `t^(rel − val a)`. Inverses of exact monomials are exact.
    pub fn inv(&self, rel: &Q) -> Result<Self> {
        let v = self.exact_val()?;
        let (_, c0) = self.leading().expect("finite valuation has a leading term");
        let c0 = c0.clone();
        // unit part u = a t^{-v} / c0 = 1 + w, with w of positive order
        let unit = self.shift(&-&v).scale(&(Q::one() / &c0));
        let w = &unit - &Self::one();
        let rel_avail = match &unit.prec {
            QInf::Fin(n) => std::cmp::min(n.clone(), rel.clone()),
            QInf::Inf => rel.clone(),
        };
        let out = if w.is_exact_zero() {
            Self::one()
        } else {
            let minus_w = (-&w).truncate(&rel_avail);
            let mut acc = Self::one().truncate(&rel_avail);
            let mut power = Self::one();
            loop {
                power = (&power * &minus_w).truncate(&rel_avail);
                if power.terms.is_empty() {
                    break;
                }
                acc = &acc + &power;
            }
            acc
        };
        Ok(out.scale(&(Q::one() / c0)).shift(&-v))
    }
}

impl Add for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn add(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        let prec = std::cmp::min(self.prec.clone(), rhs.prec.clone());
        PuiseuxScalar::new(
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
            prec,
        )
    }
}

impl Neg for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn neg(self) -> PuiseuxScalar {
        PuiseuxScalar {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }
}

impl Sub for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn sub(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        self + &(-rhs)
    }
}

impl Mul for &PuiseuxScalar {
    type Output = PuiseuxScalar;
    fn mul(self, rhs: &PuiseuxScalar) -> PuiseuxScalar {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return PuiseuxScalar::zero();
        }
        let va = self.val().lower();
        let vb = rhs.val().lower();
        let prec = std::cmp::min(&va + &rhs.prec, &vb + &self.prec);
        let mut out: BTreeMap<Q, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if prec.cmp_q(&e).is_le() {
                    continue;
                }
                *out.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        PuiseuxScalar::new(out, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxScalar {
            type Output = PuiseuxScalar;
            fn $m(self, rhs: PuiseuxScalar) -> PuiseuxScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for PuiseuxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})t^({})", fmt_q(c), fmt_q(e))?;
        }
        match &self.prec {
            QInf::Inf if first => write!(f, "0"),
            QInf::Inf => Ok(()),
            QInf::Fin(n) => {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "O(t^({}))", fmt_q(n))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    fn s(terms: &[(Q, i64)], prec: Option<Q>) -> PuiseuxScalar {
        PuiseuxScalar::new(
            terms.iter().map(|(e, c)| (e.clone(), qi(*c))),
            prec.map(QInf::Fin).unwrap_or(QInf::Inf),
        )
    }

    #[test]
    fn add_cancels_exactly() {
        let a = s(&[(q(1, 2), 1)], Some(qi(3)));
        let b = s(&[(q(1, 2), -1)], Some(qi(3)));
        let c = &a + &b;
        assert!(c.terms().is_empty());
        assert_eq!(c.precision(), &QInf::Fin(qi(3)));
        assert_eq!(c.val(), ValResult::AboveBound(qi(3)));

        let one_t = s(&[(qi(0), 1), (qi(1), 1)], None);
        assert_eq!(&one_t + &PuiseuxScalar::zero(), one_t);

        let a = s(&[(qi(0), 1), (q(1, 4), 1)], None);
        let d = &a + &PuiseuxScalar::from_q(qi(-1));
        assert_eq!(d, PuiseuxScalar::t_pow(q(1, 4)));
        assert_eq!(d.val(), ValResult::Exact(QInf::Fin(q(1, 4))));
    }

    #[test]
    fn products() {
        let a = PuiseuxScalar::t_pow(q(1, 2));
        let b = PuiseuxScalar::t_pow(q(1, 3));
        assert_eq!(&a * &b, PuiseuxScalar::t_pow(q(5, 6)));
        let p = s(&[(qi(0), 1), (qi(1), 1)], None);
        let m = s(&[(qi(0), 1), (qi(1), -1)], None);
        assert_eq!(&p * &m, s(&[(qi(0), 1), (qi(2), -1)], None));
        let inv_t = PuiseuxScalar::t_pow(qi(-1));
        let x = s(&[(qi(1), 1), (qi(2), -1)], None);
        assert_eq!(&inv_t * &x, m);
    }

    #[test]
    fn product_precision_follows_the_rule() {
        // (t + O(t^3)) * (1 + t) is known to O(t^3)
        let a = s(&[(qi(1), 1)], Some(qi(3)));
        let b = s(&[(qi(0), 1), (qi(1), 1)], None);
        let c = &a * &b;
        assert_eq!(c, s(&[(qi(1), 1), (qi(2), 1)], Some(qi(3))));
    }

    #[test]
    fn inverses() {
        let a = s(&[(qi(0), 1), (qi(1), 1)], None);
        let r = a.inv(&qi(3)).unwrap();
        assert_eq!(r, s(&[(qi(0), 1), (qi(1), -1), (qi(2), 1)], Some(qi(3))));
        assert_eq!(
            PuiseuxScalar::t_pow(qi(2)).inv(&qi(5)).unwrap(),
            PuiseuxScalar::t_pow(qi(-2))
        );
        assert_eq!(
            PuiseuxScalar::from_q(qi(2)).inv(&qi(1)).unwrap(),
            PuiseuxScalar::from_q(q(1, 2))
        );
        assert!(matches!(
            PuiseuxScalar::zero().inv(&qi(1)),
            Err(Error::ZeroDivision)
        ));
        assert!(matches!(
            PuiseuxScalar::big_o(qi(4)).inv(&qi(1)),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn valuations() {
        let a = s(&[(qi(-1), 1), (qi(0), -1)], None);
        assert_eq!(a.val(), ValResult::Exact(QInf::Fin(qi(-1))));
        assert_eq!(PuiseuxScalar::big_o(qi(5)).val(), ValResult::AboveBound(qi(5)));
        assert_eq!(PuiseuxScalar::zero().val(), ValResult::Exact(QInf::Inf));
        assert!(ValResult::AboveBound(qi(5)).lt(&qi(6)).is_err());
        assert!(!ValResult::AboveBound(qi(5)).lt(&qi(5)).unwrap());
    }

    fn arb_scalar() -> impl Strategy<Value = PuiseuxScalar> {
        (
            prop::collection::vec(((-6i64..12, 1i64..4), -5i64..6), 1..5),
            prop::option::of(8i64..20),
        )
            .prop_map(|(ts, p)| {
                PuiseuxScalar::new(
                    ts.into_iter().map(|((n, d), c)| (q(n, d), qi(c))),
                    p.map(|p| QInf::Fin(qi(p))).unwrap_or(QInf::Inf),
                )
            })
    }

    fn arb_exact() -> impl Strategy<Value = PuiseuxScalar> {
        prop::collection::vec(((-6i64..12, 1i64..4), -5i64..6), 1..5).prop_map(|ts| {
            PuiseuxScalar::new(ts.into_iter().map(|((n, d), c)| (q(n, d), qi(c))), QInf::Inf)
        })
    }

    proptest! {
        #[test]
        fn ultrametric(a in arb_exact(), b in arb_exact()) {
            let (va, vb, vs) = (a.val(), b.val(), (&a + &b).val());
            if let (Some(va), Some(vb), Some(vs)) = (va.exact(), vb.exact(), vs.exact()) {
                let m = std::cmp::min(va, vb);
                prop_assert!(vs >= m);
                if va != vb {
                    prop_assert_eq!(vs, m);
                }
            }
        }

        #[test]
        fn multiplicative(a in arb_exact(), b in arb_exact()) {
            let p = &a * &b;
            match (a.val(), b.val(), p.val()) {
                (ValResult::Exact(x), ValResult::Exact(y), ValResult::Exact(z)) => {
                    prop_assert_eq!(&x + &y, z)
                }
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }

        #[test]
        fn inverse_contract(
            tail in prop::collection::vec(((1i64..12, 1i64..4), -5i64..6), 0..5),
            lead in prop::sample::select(vec![-3i64, -1, 1, 2, 5]),
            n in 1i64..10,
        ) {
            let a = PuiseuxScalar::new(
                std::iter::once((qi(0), qi(lead)))
                    .chain(tail.into_iter().map(|((e, d), c)| (q(e, d), qi(c)))),
                QInf::Inf,
            );
            let r = a.inv(&qi(n)).unwrap();
            let defect = &(&r * &a) - &PuiseuxScalar::one();
            match defect.val() {
                ValResult::AboveBound(b) => prop_assert!(b >= qi(n)),
                ValResult::Exact(v) => prop_assert!(v.is_inf() && r.is_exact()),
            }
        }

        #[test]
        fn truncation_commutes(a in arb_scalar(), b in arb_scalar(), cut in 0i64..8) {
            let cut = qi(cut);
            let fine = &a * &b;
            let coarse = &a.truncate(&cut) * &b.truncate(&cut);
            // the coarse result is a truncation of the fine one
            let n = match coarse.precision() { QInf::Fin(n) => n.clone(), QInf::Inf => unreachable!() };
            prop_assert_eq!(fine.truncate(&n).terms().clone(), coarse.terms().clone());
            let sum_f = &a + &b;
            let sum_c = &a.truncate(&cut) + &b.truncate(&cut);
            let n = match sum_c.precision() { QInf::Fin(n) => n.clone(), QInf::Inf => unreachable!() };
            prop_assert_eq!(sum_f.truncate(&n).terms().clone(), sum_c.terms().clone());
        }
    }
}
