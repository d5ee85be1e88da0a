//! Labelling intersection components and checking target divisors.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::components::{components_of, Carrier, Component};
use super::divisor::Divisor;
use super::stable::stable_divisor_of;
use crate::error::{Error, Result};
use crate::geometry::lattice::{lattice_dist, twice_hull_area};
use crate::geometry::{curve_complex, Cell, CurveComplex, Exp, Point};
use crate::rational::{fmt_q, q, QInf, Q};
use crate::troppoly::{tropicalize, LaurentPoly2, TropPoly2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentKind {
    ProperPoint,
    Ray1,
    Segment2,
    Other,
}

/// Which input polynomial owns a curve vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Owner {
    F,
    G,
}

/// The exponent opposite the containing edge in the smooth dual triangle of
/// an endpoint vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Apex {
    pub exp: Exp,
    pub owner: Owner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGeometry {
    pub index: usize,
    pub kind: ComponentKind,
    pub component: Component,
    /// Total stable multiplicity on the component.
    pub multiplicity: i64,
    /// Dual simplexes of the edges of `V(F)` and `V(G)` containing the
    /// component (rays and segments only).
    pub phi1: Option<(Exp, Exp)>,
    pub phi2: Option<(Exp, Exp)>,
    pub apex_plus: Option<Apex>,
    pub apex_minus: Option<Apex>,
}

impl ComponentGeometry {
    pub fn carrier(&self) -> &Carrier {
        &self.component.carrier
    }

    pub fn is_selectable(&self) -> bool {
        matches!(self.kind, ComponentKind::Ray1 | ComponentKind::Segment2)
    }

    /// Upper endpoint (the ray's end for rays).
    pub fn plus(&self) -> Option<&Point> {
        match &self.component.carrier {
            Carrier::Segment { plus, .. } => Some(plus),
            Carrier::Ray { end, .. } => Some(end),
            _ => None,
        }
    }

    /// The carrier as a cell parametrised from `P₊` (lattice length units).
    pub fn cell(&self) -> Option<Cell> {
        match &self.component.carrier {
            Carrier::Segment { plus, minus } => Some(Cell::segment(plus, minus)),
            Carrier::Ray { end, dir } => Some(Cell::ray(end, *dir)),
            _ => None,
        }
    }

    /// Lattice length of a segment carrier.
    pub fn length(&self) -> Option<Q> {
        match &self.component.carrier {
            Carrier::Segment { plus, minus } => Some(lattice_dist(plus, minus)),
            _ => None,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.component.contains(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub components: Vec<ComponentGeometry>,
    pub stable_divisor: Divisor,
    pub proper_divisor: Divisor,
}

impl IntersectionReport {
    pub fn selectable(&self) -> Vec<usize> {
        self.components
            .iter()
            .filter(|c| c.is_selectable())
            .map(|c| c.index)
            .collect()
    }
}

/// Edge of a curve whose relative interior contains `p`, if unique.
fn unique_edge(c: &CurveComplex, p: &Point) -> Option<usize> {
    match c.edges_through(p).as_slice() {
        [k] => Some(*k),
        _ => None,
    }
}

/// Endpoint structure: exactly one curve has a smooth vertex at `p` whose
/// triangle contains that curve's edge; the other curve passes through `p`
/// on a multiplicity-1 edge.
fn endpoint_apex(
    p: &Point,
    cf: &CurveComplex,
    cg: &CurveComplex,
    phi1: (Exp, Exp),
    phi2: (Exp, Exp),
) -> Option<Apex> {
    let vf = cf.vertex_index(p);
    let vg = cg.vertex_index(p);
    let (owner, curve, other, v, phi) = match (vf, vg) {
        (Some(v), None) => (Owner::F, cf, cg, v, phi1),
        (None, Some(v)) => (Owner::G, cg, cf, v, phi2),
        _ => return None,
    };
    let cell = &curve.vertex_cells[v];
    if cell.len() != 3 || twice_hull_area(cell) != 1 {
        return None;
    }
    if !cell.contains(&phi.0) || !cell.contains(&phi.1) {
        return None;
    }
    let k = unique_edge(other, p)?;
    if other.edges[k].multiplicity != 1 {
        return None;
    }
    let exp = cell.iter().copied().find(|&e| e != phi.0 && e != phi.1)?;
    Some(Apex { exp, owner })
}

fn no_inner_vertex(cell: &Cell, cf: &CurveComplex, cg: &CurveComplex) -> bool {
    !cf.vertices.iter().chain(&cg.vertices).any(|v| cell.contains_inner(v))
}

fn classify_one(
    index: usize,
    component: Component,
    multiplicity: i64,
    cf: &CurveComplex,
    cg: &CurveComplex,
) -> ComponentGeometry {
    let mut out = ComponentGeometry {
        index,
        kind: ComponentKind::Other,
        component,
        multiplicity,
        phi1: None,
        phi2: None,
        apex_plus: None,
        apex_minus: None,
    };
    let (cell, inner, needed) = match &out.component.carrier {
        Carrier::Point(_) => {
            if multiplicity > 0 {
                out.kind = ComponentKind::ProperPoint;
            }
            return out;
        }
        Carrier::Segment { plus, minus } => {
            let cell = Cell::segment(plus, minus);
            let mid = cell.at(&(cell.hi.clone().unwrap() * q(1, 2)));
            (cell, mid, 2)
        }
        Carrier::Ray { end, dir } => {
            let cell = Cell::ray(end, *dir);
            let inner = cell.at(&Q::from_integer(1.into()));
            (cell, inner, 1)
        }
        _ => return out,
    };
    if multiplicity != needed || !no_inner_vertex(&cell, cf, cg) {
        return out;
    }
    let (Some(kf), Some(kg)) = (unique_edge(cf, &inner), unique_edge(cg, &inner)) else {
        return out;
    };
    let (ef, eg) = (&cf.edges[kf], &cg.edges[kg]);
    if ef.multiplicity != 1 || eg.multiplicity != 1 {
        return out;
    }
    let (phi1, phi2) = (ef.dual, eg.dual);
    let ends = cell.endpoints();
    let Some(plus) = endpoint_apex(&ends[0], cf, cg, phi1, phi2) else {
        return out;
    };
    let minus = if needed == 2 {
        match endpoint_apex(&ends[1], cf, cg, phi1, phi2) {
            Some(a) => Some(a),
            None => return out,
        }
    } else {
        None
    };
    out.kind = if needed == 2 {
        ComponentKind::Segment2
    } else {
        ComponentKind::Ray1
    };
    out.phi1 = Some(phi1);
    out.phi2 = Some(phi2);
    out.apex_plus = Some(plus);
    out.apex_minus = minus;
    out
}

/// Classification of `V(F) ∩ V(G)` for tropical inputs.
pub fn classify_trop(f: &TropPoly2, g: &TropPoly2) -> IntersectionReport {
    let cf = curve_complex(f);
    let cg = curve_complex(g);
    let stable = stable_divisor_of(f, &cf, g, &cg);
    let mut proper = Divisor::default();
    let components = components_of(&cf, &cg)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let m: i64 = stable
                .entries()
                .iter()
                .filter(|(p, _)| c.contains(p))
                .map(|(_, m)| m)
                .sum();
            let geo = classify_one(k, c, m, &cf, &cg);
            if let (ComponentKind::ProperPoint, Carrier::Point(p)) = (geo.kind, geo.carrier()) {
                proper.add(p.clone(), m);
            }
            geo
        })
        .collect();
    IntersectionReport {
        components,
        stable_divisor: stable,
        proper_divisor: proper,
    }
}

/// Classification of the intersection of the tropicalizations.
pub fn classify(f: &LaurentPoly2, g: &LaurentPoly2) -> Result<IntersectionReport> {
    Ok(classify_trop(&tropicalize(f)?, &tropicalize(g)?))
}

fn restriction_points(d: &Divisor, l: &ComponentGeometry) -> Vec<Point> {
    d.restrict(|p| l.contains(p)).expanded()
}

/// Lattice distance between `D|_L` and `E|_L`: from `P₊` to the nearer
/// point of `D` on a segment, from the end to the point of `D` on a ray.
pub fn dist_de(d: &Divisor, e: &Divisor, l: &ComponentGeometry) -> Result<QInf> {
    let pts = restriction_points(d, l);
    let plus = l
        .plus()
        .ok_or_else(|| Error::InvalidRestriction(format!("component {} has no endpoint", l.index)))?;
    match l.kind {
        ComponentKind::Segment2 => {
            if pts.len() != 2 {
                return Err(Error::InvalidRestriction(format!(
                    "{} points on segment component {}",
                    pts.len(),
                    l.index
                )));
            }
            debug_assert_eq!(l.offsets(e), vec![Q::zero(), l.length().unwrap()]);
            Ok(QInf::Fin(pts.iter().map(|p| lattice_dist(plus, p)).min().unwrap()))
        }
        ComponentKind::Ray1 => match pts.as_slice() {
            [] => Ok(QInf::Inf),
            [p] => Ok(QInf::Fin(lattice_dist(plus, p))),
            _ => Err(Error::InvalidRestriction(format!(
                "{} points on ray component {}",
                pts.len(),
                l.index
            ))),
        },
        _ => Err(Error::InvalidRestriction(format!(
            "component {} is not a ray or segment",
            l.index
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    NegativeMultiplicity { point: String, mult: i64 },
    NotSelectable { component: usize },
    ProperPointMismatch { point: String, expected: i64, found: i64 },
    SegmentDegree { component: usize, degree: i64 },
    SegmentAsymmetric { component: usize, near: String, far: String },
    RayDegree { component: usize, degree: i64 },
    StraySupport { point: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationResult {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the local conditions on `D` that the lifting consumes. `selection`
/// lists component indices.
pub fn validate_divisor(d: &Divisor, report: &IntersectionReport, selection: &[usize]) -> ValidationResult {
    let mut violations = Vec::new();
    for (p, &m) in d.entries() {
        if m < 0 {
            violations.push(Violation::NegativeMultiplicity {
                point: p.to_string(),
                mult: m,
            });
        }
    }
    let mut selected: Vec<&ComponentGeometry> = Vec::new();
    for &k in selection {
        match report.components.get(k) {
            Some(c) if c.is_selectable() => selected.push(c),
            _ => violations.push(Violation::NotSelectable { component: k }),
        }
    }
    for c in report.components.iter().filter(|c| c.kind == ComponentKind::ProperPoint) {
        let Carrier::Point(p) = c.carrier() else { continue };
        let (expected, found) = (report.stable_divisor.mult(p), d.mult(p));
        if expected != found {
            violations.push(Violation::ProperPointMismatch {
                point: p.to_string(),
                expected,
                found,
            });
        }
    }
    for c in &selected {
        let on = d.restrict(|p| c.contains(p));
        let degree = on.degree();
        match c.kind {
            ComponentKind::Segment2 => {
                if degree != 2 || on.entries().values().any(|&m| m < 0) {
                    violations.push(Violation::SegmentDegree {
                        component: c.index,
                        degree,
                    });
                    continue;
                }
                let plus = c.plus().unwrap();
                let len = c.length().unwrap();
                let mut offs: Vec<Q> = on.expanded().iter().map(|p| lattice_dist(plus, p)).collect();
                offs.sort();
                if &offs[0] + &offs[1] != len {
                    violations.push(Violation::SegmentAsymmetric {
                        component: c.index,
                        near: fmt_q(&offs[0]),
                        far: fmt_q(&offs[1]),
                    });
                }
            }
            ComponentKind::Ray1 => {
                if degree != 1 || on.entries().len() != 1 {
                    violations.push(Violation::RayDegree {
                        component: c.index,
                        degree,
                    });
                }
            }
            _ => unreachable!(),
        }
    }
    for p in d.entries().keys() {
        let covered = selected.iter().any(|c| c.contains(p))
            || report
                .components
                .iter()
                .any(|c| c.kind == ComponentKind::ProperPoint && c.contains(p));
        if !covered {
            violations.push(Violation::StraySupport { point: p.to_string() });
        }
    }
    ValidationResult {
        valid: violations.is_empty(),
        violations,
    }
}

impl ComponentGeometry {
    /// Target restricted to the component, offsets measured from `P₊`.
    pub fn offsets(&self, d: &Divisor) -> Vec<Q> {
        let Some(plus) = self.plus() else { return Vec::new() };
        let mut v: Vec<Q> = restriction_points(d, self)
            .iter()
            .map(|p| lattice_dist(plus, p))
            .collect();
        v.sort();
        v
    }

    /// The point at lattice distance `s` from `P₊` along the carrier.
    pub fn point_at(&self, s: &Q) -> Option<Point> {
        let cell = self.cell()?;
        debug_assert!(!s.is_zero() || cell.lo.is_some());
        Some(cell.at(s))
    }
}
