//! Solving `V(f, g)` on one selected component and moving one coefficient of
//! `g` so that the solution becomes a prescribed target.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Exp;
use crate::intersect::{ComponentGeometry, ComponentKind, Divisor};
use crate::puiseux::{PuiseuxScalar, ValResult};
use crate::rational::{fmt_q, qi, QInf, Q};
use crate::troppoly::LaurentPoly2;

use super::normalize::{eliminate, normalize, Elimination, Frame};

/// Relative precision for series inverses when none is configured.
pub fn default_rel(level: &Q) -> Q {
    level * qi(2) + qi(16)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum SolveStatus {
    /// Points were found on the component.
    Found,
    /// The eliminant vanishes identically along the ray; no point at any
    /// depth.
    EmptyAbsolute,
    /// No point within the given lattice distance of the ray's end.
    EmptyCertifiedToDepth { depth: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSolution {
    pub component: usize,
    pub kind: ComponentKind,
    /// Offsets from `P₊`, with multiplicity, sorted.
    pub offsets: Vec<Q>,
    pub divisor: Divisor,
    pub status: SolveStatus,
    /// Valuation of the eliminant's constant term in the frame.
    pub e0_val: ValResult,
    /// Reduction level used.
    pub level: Q,
    /// Relative precision that succeeded.
    pub rel: Q,
}

/// Reduction level needed to read `L` off the eliminant.
fn level_for(l: &ComponentGeometry, cap: &Q) -> Result<Q> {
    match l.kind {
        ComponentKind::Segment2 => Ok(l.length().unwrap() / qi(2)),
        ComponentKind::Ray1 => Ok(cap.clone()),
        _ => Err(Error::NotALsComponent(l.index)),
    }
}

fn frame_for(f: &LaurentPoly2, g: &LaurentPoly2, l: &ComponentGeometry) -> Result<Frame> {
    let phi2 = l.phi2.ok_or(Error::NotALsComponent(l.index))?;
    normalize(f, g, l, phi2.0)
}

fn offsets_from(l: &ComponentGeometry, e0: &ValResult, elim: &Elimination, level: &Q) -> Result<(Vec<Q>, SolveStatus)> {
    let exact = match e0 {
        ValResult::Exact(QInf::Fin(v)) if v < level || (l.kind == ComponentKind::Ray1 && v == level) => {
            Some(v.clone())
        }
        ValResult::Exact(_) => None,
        ValResult::AboveBound(b) if b >= level => None,
        ValResult::AboveBound(b) => {
            return Err(Error::InsufficientPrecision(format!(
                "constant term of the eliminant known only above {}, needed to {}",
                fmt_q(b),
                fmt_q(level)
            )))
        }
    };
    if let Some(v) = &exact {
        if v < &Q::zero() {
            return Err(Error::HypothesisViolation(format!(
                "eliminant constant term has negative valuation {}",
                fmt_q(v)
            )));
        }
    }
    Ok(match l.kind {
        ComponentKind::Segment2 => {
            let len = l.length().unwrap();
            match exact {
                Some(v) => {
                    let far = &len - &v;
                    (vec![v, far], SolveStatus::Found)
                }
                None => (vec![level.clone(), level.clone()], SolveStatus::Found),
            }
        }
        _ => match exact {
            Some(v) => (vec![v], SolveStatus::Found),
            None if matches!(e0, ValResult::Exact(QInf::Inf)) && elim.stabilized() => {
                (Vec::new(), SolveStatus::EmptyAbsolute)
            }
            None => (
                Vec::new(),
                SolveStatus::EmptyCertifiedToDepth { depth: fmt_q(level) },
            ),
        },
    })
}

fn solve_at(f: &LaurentPoly2, g: &LaurentPoly2, l: &ComponentGeometry, level: &Q, rel: &Q) -> Result<ComponentSolution> {
    let fr = frame_for(f, g, l)?;
    let elim = eliminate(level, &fr.g, &fr.f, fr.seg(), rel)?;
    let e0_val = elim.e0(fr.seg()).val();
    let (offsets, status) = offsets_from(l, &e0_val, &elim, level)?;
    let mut divisor = Divisor::default();
    for s in &offsets {
        divisor.add(l.point_at(s).expect("selectable components have a cell"), 1);
    }
    Ok(ComponentSolution {
        component: l.index,
        kind: l.kind,
        offsets,
        divisor,
        status,
        e0_val,
        level: level.clone(),
        rel: rel.clone(),
    })
}

/// Runs `op` at `rel`, retrying once at twice the precision.
pub(crate) fn with_retry<T>(rel: &Q, mut op: impl FnMut(&Q) -> Result<T>) -> Result<T> {
    match op(rel) {
        Err(e) if e.is_precision() => op(&(rel * qi(2))),
        r => r,
    }
}

/// `V(f, g) ∩ L` for a selected component. Rays are searched to lattice
/// depth `cap`; segments are always decided.
pub fn solve_component(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    l: &ComponentGeometry,
    cap: &Q,
    rel: Option<&Q>,
) -> Result<ComponentSolution> {
    let level = level_for(l, cap)?;
    let rel = rel.cloned().unwrap_or_else(|| default_rel(&level));
    let sol = with_retry(&rel, |r| solve_at(f, g, l, &level, r))?;
    if cfg!(debug_assertions) && l.kind == ComponentKind::Ray1 && sol.status == SolveStatus::Found {
        let deeper = &level + qi(1);
        if let Ok(again) = solve_at(f, g, l, &deeper, &default_rel(&deeper).max(sol.rel.clone())) {
            debug_assert_eq!(again.offsets, sol.offsets, "ray solution moved with depth");
        }
    }
    Ok(sol)
}

/// A replaced coefficient of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub exp: Exp,
    pub old: PuiseuxScalar,
    pub new: PuiseuxScalar,
    pub component: usize,
    pub target_offset: Q,
}

/// Target offsets on `L` and the reduction level for the patch.
fn target_for(l: &ComponentGeometry, target: &Divisor) -> Result<(Q, Q)> {
    for p in target.entries().keys() {
        if !l.contains(p) {
            return Err(Error::TargetOffComponent(p.to_string()));
        }
    }
    let offs = l.offsets(target);
    match l.kind {
        ComponentKind::Segment2 => {
            let len = l.length().unwrap();
            let half = &len / qi(2);
            if offs.len() != 2 || &offs[0] + &offs[1] != len {
                return Err(Error::InvalidRestriction(format!(
                    "segment component {} needs two points symmetric about its midpoint",
                    l.index
                )));
            }
            Ok((offs[0].clone(), half))
        }
        ComponentKind::Ray1 => match offs.as_slice() {
            [s] => Ok((s.clone(), s.clone())),
            _ => Err(Error::InvalidRestriction(format!(
                "ray component {} needs exactly one point",
                l.index
            ))),
        },
        _ => Err(Error::NotALsComponent(l.index)),
    }
}

fn adjust_at(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    l: &ComponentGeometry,
    child: Exp,
    target: &Q,
    level: &Q,
    rel: &Q,
) -> Result<Option<(LaurentPoly2, Patch)>> {
    let fr = normalize(f, g, l, child)?;
    let elim = eliminate(level, &fr.g, &fr.f, fr.seg(), rel)?;
    let e0 = elim.e0(fr.seg());
    let (now, _) = offsets_from(l, &e0.val(), &elim, level)?;
    let wanted = match l.kind {
        ComponentKind::Segment2 => vec![target.clone(), l.length().unwrap() - target],
        _ => vec![target.clone()],
    };
    if now == wanted {
        return Ok(None);
    }
    let g00 = fr.g.coef((0, 0)).ok_or(Error::MissingEndpointCoefficient(fr.i0))?;
    let base = g00 - &e0;
    let new_frame = if target.is_zero() {
        (1..=3)
            .map(|k| &base + &PuiseuxScalar::from_q(qi(k)))
            .find(|c| matches!(c.val(), ValResult::Exact(QInf::Fin(ref v)) if v.is_zero()))
            .ok_or_else(|| Error::HypothesisViolation("no constant keeps the coefficient's valuation".into()))?
    } else {
        &base + &PuiseuxScalar::t_pow(target.clone())
    };
    if new_frame.exact_val()? != Q::zero() {
        return Err(Error::HypothesisViolation(
            "patched coefficient changes valuation".into(),
        ));
    }
    let new = new_frame.exactify().shift(&fr.g_val);
    let old = g.coef(fr.i0).cloned().ok_or(Error::MissingEndpointCoefficient(fr.i0))?;
    let mut out = g.clone();
    out.set(fr.i0, new.clone());
    Ok(Some((
        out,
        Patch {
            exp: fr.i0,
            old,
            new,
            component: l.index,
            target_offset: target.clone(),
        },
    )))
}

/// Replaces the coefficient of `g` at `child`, an endpoint of `L`'s dual
/// edge in `g`, so that `V(f, g') ∩ L` equals `target` restricted to `L`.
/// Returns `None` if `g` already has that intersection.
pub fn adjust_coefficient(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    l: &ComponentGeometry,
    target: &Divisor,
    child: Exp,
    rel: Option<&Q>,
) -> Result<Option<(LaurentPoly2, Patch)>> {
    let (s, level) = target_for(l, target)?;
    let rel = rel.cloned().unwrap_or_else(|| default_rel(&level));
    with_retry(&rel, |r| adjust_at(f, g, l, child, &s, &level, r))
}
