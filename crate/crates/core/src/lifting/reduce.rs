//! The reduction `h(λ; g; f; 𝐢𝐣)`: a univariate `h` such that
//! `g + h(x^v) f` has every line coefficient off the two endpoints pushed
//! above `λ` in tilted valuation.
//!
//! Valuations along the line `𝐢₀ + n v` are measured relative to `f`'s
//! endpoints: `w_n(F) = val(F_n) − val(c₀) − n (val c₁ − val c₀)`. In these
//! units the endpoints of both inputs sit at `0` and the margin `μ` is the
//! minimum of `w_n` over `n ∉ {0, 1}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::lattice::{is_primitive, sub_e, Exp};
use crate::puiseux::{PuiseuxScalar, ValResult};
use crate::rational::{fmt_q, qi, QInf, Q};
use crate::troppoly::{support_on_line, LaurentPoly1, LaurentPoly2};

/// Coefficients of a polynomial on the line, indexed by `n`.
pub type LineCoeffs = BTreeMap<i64, PuiseuxScalar>;

/// One elimination `g ← g − a x^{shift} f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub a: PuiseuxScalar,
    pub shift: i64,
    /// `M₊ − M₋` before and after the step.
    pub measure_before: i64,
    pub measure_after: i64,
    pub threshold: QInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub h: LaurentPoly1,
    /// `μ` of `f` and the starting `μ` of `g`.
    pub lambda0: QInf,
    pub lambda1: QInf,
    /// Final `M₋`, `M₊` (at the last threshold).
    pub m_minus: i64,
    pub m_plus: i64,
    pub history: Vec<ReductionStep>,
    /// Number of threshold escalations performed.
    pub escalations: usize,
    /// Lower bound on `μ(g + h f)` after reduction.
    pub final_mu: QInf,
    /// The reduced line coefficients of `g + h f`.
    pub reduced: LineCoeffs,
}

/// Tilt applied to coefficient `n`.
#[derive(Clone, Debug)]
struct Tilt {
    nu0: Q,
    nu: Q,
}

impl Tilt {
    fn offset(&self, n: i64) -> Q {
        &self.nu0 + qi(n) * &self.nu
    }

    fn of(&self, n: i64, c: &PuiseuxScalar) -> ValResult {
        let off = self.offset(n);
        match c.val() {
            ValResult::Exact(QInf::Fin(v)) => ValResult::Exact(QInf::Fin(v - off)),
            ValResult::Exact(QInf::Inf) => ValResult::Exact(QInf::Inf),
            ValResult::AboveBound(b) => ValResult::AboveBound(b - off),
        }
    }
}

/// Whether the coefficient counts in `M±` at threshold `t`. Truncated
/// coefficients known to lie above `λ` are negligible.
fn counts(w: &ValResult, t: &QInf, lambda: &Q) -> Result<bool> {
    match w {
        ValResult::Exact(QInf::Inf) => Ok(false),
        ValResult::Exact(QInf::Fin(v)) => Ok(match t {
            QInf::Fin(t) => v < t,
            QInf::Inf => true,
        }),
        ValResult::AboveBound(b) => {
            if b > lambda {
                return Ok(false);
            }
            match t {
                QInf::Fin(t) if b >= t => Ok(false),
                _ => Err(Error::InsufficientPrecision(format!(
                    "line coefficient known only above {} (tilted), needed beyond {}",
                    fmt_q(b),
                    fmt_q(lambda)
                ))),
            }
        }
    }
}

/// Minimum tilted valuation off the endpoints, ignoring negligible terms.
fn line_mu(coeffs: &LineCoeffs, tilt: &Tilt, lambda: &Q) -> Result<QInf> {
    let mut best = QInf::Inf;
    for (&n, c) in coeffs {
        if n == 0 || n == 1 {
            continue;
        }
        match tilt.of(n, c) {
            ValResult::Exact(v) => best = best.min(v),
            ValResult::AboveBound(b) if &b > lambda => {}
            ValResult::AboveBound(b) => {
                return Err(Error::InsufficientPrecision(format!(
                    "line coefficient {n} known only above {} (tilted)",
                    fmt_q(&b)
                )))
            }
        }
    }
    Ok(best)
}

fn m_bounds(g: &LineCoeffs, tilt: &Tilt, t: &QInf, lambda: &Q) -> Result<(i64, i64)> {
    let mut lo = 0;
    let mut hi = 1;
    for (&n, c) in g {
        if counts(&tilt.of(n, c), t, lambda)? {
            if n <= 0 {
                lo = lo.min(n);
            } else {
                hi = hi.max(n);
            }
        }
    }
    Ok((lo, hi))
}

fn endpoint_val(c: &LineCoeffs, n: i64, what: &str) -> Result<Q> {
    let v = c
        .get(&n)
        .ok_or_else(|| Error::HypothesisViolation(format!("{what} has no coefficient at index {n}")))?;
    v.exact_val()
}

/// `g ← g + s · x^{shift} f` on line coefficients.
fn axpy(g: &mut LineCoeffs, s: &PuiseuxScalar, shift: i64, f: &LineCoeffs) {
    for (&m, c) in f {
        let k = m + shift;
        let sum = match g.get(&k) {
            Some(old) => old + &(s * c),
            None => s * c,
        };
        if sum.is_exact_zero() {
            g.remove(&k);
        } else {
            g.insert(k, sum);
        }
    }
}

/// Reduction on line coefficients. `rel` is the relative precision used for
/// series inverses.
pub fn reduce_line(lambda: &Q, g: &LineCoeffs, f: &LineCoeffs, rel: &Q) -> Result<Reduction> {
    if lambda < &qi(0) {
        return Err(Error::HypothesisViolation("negative reduction level".into()));
    }
    let (f0, f1) = (endpoint_val(f, 0, "f")?, endpoint_val(f, 1, "f")?);
    let (g0, g1) = (endpoint_val(g, 0, "g")?, endpoint_val(g, 1, "g")?);
    if f0 != g0 || f1 != g1 {
        return Err(Error::HypothesisViolation(format!(
            "endpoint valuations differ: f ({}, {}), g ({}, {})",
            fmt_q(&f0),
            fmt_q(&f1),
            fmt_q(&g0),
            fmt_q(&g1)
        )));
    }
    let tilt = Tilt {
        nu0: f0.clone(),
        nu: &f1 - &f0,
    };
    let lambda0 = line_mu(f, &tilt, lambda)?;
    let lambda1 = line_mu(g, &tilt, lambda)?;
    let zero = QInf::zero();
    if lambda0 <= zero || lambda1 <= zero {
        return Err(Error::HypothesisViolation(format!(
            "line margins must be positive, got {lambda0} and {lambda1}"
        )));
    }
    let c0_inv = f[&0].inv(rel)?;
    let c1_inv = f[&1].inv(rel)?;

    let mut cur = g.clone();
    let mut h = LaurentPoly1::default();
    let mut history = Vec::new();
    let mut escalations: usize = 0;
    let (mut m_minus, mut m_plus) = (0, 1);
    loop {
        let l1 = line_mu(&cur, &tilt, lambda)?;
        if l1.cmp_q(lambda).is_gt() {
            return Ok(Reduction {
                h,
                lambda0,
                lambda1,
                m_minus,
                m_plus,
                history,
                escalations: escalations.saturating_sub(1),
                final_mu: l1,
                reduced: cur,
            });
        }
        escalations += 1;
        let t = &lambda0 + &l1;
        (m_minus, m_plus) = m_bounds(&cur, &tilt, &t, lambda)?;
        while m_plus - m_minus > 1 {
            let before = m_plus - m_minus;
            let (a, shift) = if m_plus > 1 {
                (&cur[&m_plus] * &c1_inv, m_plus - 1)
            } else {
                (&cur[&m_minus] * &c0_inv, m_minus)
            };
            let neg = -&a;
            axpy(&mut cur, &neg, shift, f);
            h.add_term(shift, &neg);
            (m_minus, m_plus) = m_bounds(&cur, &tilt, &t, lambda)?;
            let after = m_plus - m_minus;
            if after >= before {
                return Err(Error::InsufficientPrecision(
                    "elimination step did not shrink the active range".into(),
                ));
            }
            history.push(ReductionStep {
                a,
                shift,
                measure_before: before,
                measure_after: after,
                threshold: t.clone(),
            });
        }
    }
}

/// Line coefficients of `p` along `i0 + n (i1 − i0)`.
pub fn line_coeffs(p: &LaurentPoly2, i0: Exp, i1: Exp) -> Result<LineCoeffs> {
    let d = sub_e(i1, i0);
    if !is_primitive(d) {
        return Err(Error::NotPrimitive(d));
    }
    Ok(support_on_line(p.terms(), i0, i1)
        .into_iter()
        .map(|(n, e)| (n, p.coef(e).unwrap().clone()))
        .collect())
}

/// The reduction `h(λ; g; f; seg)` for bivariate inputs.
pub fn reduce(lambda: &Q, g: &LaurentPoly2, f: &LaurentPoly2, seg: (Exp, Exp), rel: &Q) -> Result<Reduction> {
    let (i0, i1) = seg;
    for (p, name) in [(f, "f"), (g, "g")] {
        for e in [i0, i1] {
            if p.coef(e).is_none() {
                return Err(Error::HypothesisViolation(format!("{name} has no coefficient at {e:?}")));
            }
        }
    }
    reduce_line(lambda, &line_coeffs(g, i0, i1)?, &line_coeffs(f, i0, i1)?, rel)
}
