//! The lifting pipeline: validate a target divisor, order the selected
//! components, patch `g` one coefficient per component and verify.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{check_smooth, curve_complex, Point};
use crate::intersect::{
    classify, dist_de, validate_divisor, Carrier, ComponentGeometry, ComponentKind, Divisor,
    IntersectionReport,
};
use crate::rational::{fmt_q, qi, QInf, Q};
use crate::troppoly::{mu, tropicalize, LaurentPoly2};

use super::plan::{plan_order, Mode, OrderPlan};
use super::solve::{adjust_coefficient, solve_component, Patch};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftConfig {
    pub mode: Mode,
    /// Depth to which rays are searched when verifying.
    pub cap: Q,
    /// Relative precision for series inverses; derived from the levels
    /// when unset.
    pub precision: Option<Q>,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            mode: Mode::Auto,
            cap: qi(16),
            precision: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    pub component: usize,
    /// Offsets from `P₊`.
    pub target: Vec<String>,
    pub solved: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    pub g_prime: LaurentPoly2,
    pub patches: Vec<Patch>,
    pub verification: Vec<VerifyRecord>,
    /// Largest reduction level used by any solve.
    pub certified_depth: Q,
    pub mode: Mode,
    pub plan: OrderPlan,
}

fn margin_of(g: &LaurentPoly2, l: &ComponentGeometry) -> Result<QInf> {
    let (i, j) = l.phi2.ok_or(Error::NotALsComponent(l.index))?;
    mu(g, i, j)
}

/// First selected component whose target is not strictly inside the margin.
fn margin_failure(
    g: &LaurentPoly2,
    report: &IntersectionReport,
    selection: &[usize],
    dists: &[QInf],
) -> Result<Option<Error>> {
    for (&k, dist) in selection.iter().zip(dists) {
        let margin = margin_of(g, &report.components[k])?;
        if dist >= &margin {
            return Ok(Some(Error::MuBound {
                component: k,
                dist: dist.to_string(),
                margin: margin.to_string(),
            }));
        }
    }
    Ok(None)
}

fn resolve_plan(
    g: &LaurentPoly2,
    report: &IntersectionReport,
    selection: &[usize],
    dists: &[QInf],
    mode: Mode,
) -> Result<OrderPlan> {
    match mode {
        Mode::Margin => {
            let plan = plan_order(report, selection, Mode::Margin)?;
            match margin_failure(g, report, selection, dists)? {
                Some(e) => Err(e),
                None => Ok(plan),
            }
        }
        Mode::Span => plan_order(report, selection, Mode::Span),
        Mode::Auto => {
            let Some(why) = margin_failure(g, report, selection, dists)? else {
                return plan_order(report, selection, Mode::Margin);
            };
            match plan_order(report, selection, Mode::Span) {
                Err(Error::OrderingFailure(msg)) => {
                    Err(Error::OrderingFailure(format!("{msg}; margin order unavailable: {why}")))
                }
                r => r,
            }
        }
    }
}

fn level_of(l: &ComponentGeometry, dist: &QInf) -> Q {
    match l.kind {
        ComponentKind::Segment2 => l.length().unwrap() / qi(2),
        _ => dist.finite().cloned().unwrap_or_else(|| qi(0)),
    }
}

/// Lifts `d` on the selected components: returns `g'` with
/// `trop(g') = trop(g)` and `V(f, g') ∩ L = D|_L` for every selected `L`.
pub fn lift(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    d: &Divisor,
    selection: &[usize],
    cfg: &LiftConfig,
) -> Result<LiftResult> {
    let report = classify(f, g)?;
    let v = validate_divisor(d, &report, selection);
    if !v.valid {
        return Err(Error::InvalidDivisor(v.violations));
    }
    let dists = selection
        .iter()
        .map(|&k| dist_de(d, &report.stable_divisor, &report.components[k]))
        .collect::<Result<Vec<_>>>()?;
    let plan = resolve_plan(g, &report, selection, &dists, cfg.mode)?;

    let mut top = cfg.cap.clone();
    for (&k, dist) in selection.iter().zip(&dists) {
        top = top.max(level_of(&report.components[k], dist));
    }
    let rel = cfg.precision.clone().unwrap_or_else(|| &top * qi(2) + qi(16));

    let mut g_cur = g.clone();
    let mut patches = Vec::new();
    for step in &plan.steps {
        let l = &report.components[step.component];
        if plan.mode == Mode::Margin {
            let pos = selection.iter().position(|&k| k == step.component).unwrap();
            let margin = margin_of(&g_cur, l)?;
            if dists[pos] >= margin {
                return Err(Error::MuBound {
                    component: step.component,
                    dist: dists[pos].to_string(),
                    margin: margin.to_string(),
                });
            }
        }
        let target = d.restrict(|p| l.contains(p));
        if let Some((next, patch)) = adjust_coefficient(f, &g_cur, l, &target, step.child, Some(&rel))? {
            g_cur = next;
            patches.push(patch);
        }
    }

    let (verification, certified_depth) = verify(f, &g_cur, d, &report, selection, &dists, cfg, &rel)?;
    if let Some(bad) = verification.iter().find(|r| !r.ok) {
        return Err(Error::VerificationMismatch(bad.component));
    }
    if tropicalize(&g_cur)? != tropicalize(g)? {
        return Err(Error::HypothesisViolation("patching changed the tropicalization of g".into()));
    }
    Ok(LiftResult {
        g_prime: g_cur,
        patches,
        verification,
        certified_depth,
        mode: plan.mode,
        plan,
    })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    d: &Divisor,
    report: &IntersectionReport,
    selection: &[usize],
    dists: &[QInf],
    cfg: &LiftConfig,
    rel: &Q,
) -> Result<(Vec<VerifyRecord>, Q)> {
    let mut records = Vec::new();
    let mut depth = qi(0);
    for (&k, dist) in selection.iter().zip(dists) {
        let l = &report.components[k];
        let cap = match dist {
            QInf::Fin(x) => x.max(&cfg.cap).clone(),
            QInf::Inf => cfg.cap.clone(),
        };
        let sol = solve_component(f, g, l, &cap, Some(rel))?;
        depth = depth.max(sol.level.clone());
        let target = l.offsets(d);
        records.push(VerifyRecord {
            component: k,
            ok: sol.offsets == target,
            target: target.iter().map(fmt_q).collect(),
            solved: sol.offsets.iter().map(fmt_q).collect(),
        });
    }
    Ok((records, depth))
}

/// Compares `V(f, g)` with `d` on each selected component without patching.
pub fn verify_divisor(
    f: &LaurentPoly2,
    g: &LaurentPoly2,
    d: &Divisor,
    selection: &[usize],
    cfg: &LiftConfig,
) -> Result<Vec<VerifyRecord>> {
    let report = classify(f, g)?;
    let dists = selection
        .iter()
        .map(|&k| {
            let l = report.components.get(k).ok_or(Error::NotALsComponent(k))?;
            if !l.is_selectable() {
                return Err(Error::NotALsComponent(k));
            }
            Ok(dist_de(d, &report.stable_divisor, l).unwrap_or(QInf::Inf))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut top = cfg.cap.clone();
    for (&k, dist) in selection.iter().zip(&dists) {
        top = top.max(level_of(&report.components[k], dist));
    }
    let rel = cfg.precision.clone().unwrap_or_else(|| &top * qi(2) + qi(16));
    Ok(verify(f, g, d, &report, selection, &dists, cfg, &rel)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSmoothReport {
    pub applicable: bool,
    pub reasons: Vec<String>,
}

/// Checks the setting where `f` is the standard tropical line through the
/// origin and `g` is smooth: then every component is a point or a selectable
/// ray and the lifting applies.
pub fn check_line_smooth(f: &LaurentPoly2, g: &LaurentPoly2, d: Option<&Divisor>) -> Result<LineSmoothReport> {
    let tf = tropicalize(f)?;
    let tg = tropicalize(g)?;
    let mut reasons = Vec::new();
    let standard = [((0, 0), qi(0)), ((0, 1), qi(0)), ((1, 0), qi(0))];
    if !tf.terms().iter().map(|(e, a)| (*e, a.clone())).eq(standard) {
        reasons.push(format!("trop(f) = {tf} is not max(x, y, 0)"));
    }
    let cg = curve_complex(&tg);
    if !check_smooth(&cg).smooth {
        reasons.push("V(trop g) is not smooth".into());
    }
    if cg.vertex_index(&Point::origin()).is_some() {
        reasons.push("the vertex of the line is a vertex of V(trop g)".into());
    }
    if let Some(d) = d {
        let report = classify(f, g)?;
        for c in &report.components {
            if let Carrier::Ray { .. } = c.carrier() {
                let n = d.restrict(|p| c.contains(p)).degree();
                if n != 1 {
                    reasons.push(format!("ray component {} carries {n} points of D", c.index));
                }
            }
        }
    }
    Ok(LineSmoothReport {
        applicable: reasons.is_empty(),
        reasons,
    })
}
