//! Wire formats. Every rational is a `"num/den"` string and every exponent a
//! two-element array; values convert to and from the domain types exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CurveComplex, EdgeShape, Exp, Point};
use crate::intersect::{Apex, Carrier, ComponentGeometry, Divisor, IntersectionReport, Owner};
use crate::lifting::{LiftResult, VerifyRecord};
use crate::puiseux::PuiseuxScalar;
use crate::rational::{fmt_q, parse_q, QInf, Q};
use crate::troppoly::{LaurentPoly2, TropPoly2};

fn parse_qinf(s: &str) -> Result<QInf> {
    QInf::parse(s)
}

fn fmt_qinf(x: &QInf) -> String {
    match x {
        QInf::Fin(q) => fmt_q(q),
        QInf::Inf => "inf".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTerm {
    pub e: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub terms: Vec<ScalarTerm>,
    #[serde(default = "inf")]
    pub prec: String,
}

fn inf() -> String {
    "inf".into()
}

impl From<&PuiseuxScalar> for ScalarJson {
    fn from(s: &PuiseuxScalar) -> Self {
        ScalarJson {
            terms: s
                .terms()
                .iter()
                .map(|(e, c)| ScalarTerm { e: fmt_q(e), c: fmt_q(c) })
                .collect(),
            prec: fmt_qinf(s.precision()),
        }
    }
}

impl TryFrom<&ScalarJson> for PuiseuxScalar {
    type Error = Error;
    fn try_from(j: &ScalarJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((parse_q(&t.e)?, parse_q(&t.c)?)))
            .collect::<Result<Vec<(Q, Q)>>>()?;
        Ok(PuiseuxScalar::new(terms, parse_qinf(&j.prec)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropTerm {
    pub exp: Exp,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropJson {
    pub terms: Vec<TropTerm>,
}

impl From<&TropPoly2> for TropJson {
    fn from(f: &TropPoly2) -> Self {
        TropJson {
            terms: f
                .terms()
                .iter()
                .map(|(e, a)| TropTerm { exp: *e, alpha: fmt_q(a) })
                .collect(),
        }
    }
}

impl TryFrom<&TropJson> for TropPoly2 {
    type Error = Error;
    fn try_from(j: &TropJson) -> Result<Self> {
        TropPoly2::from_terms(
            j.terms
                .iter()
                .map(|t| Ok((t.exp, parse_q(&t.alpha)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTerm {
    pub exp: Exp,
    pub coef: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub terms: Vec<LaurentTerm>,
}

impl From<&LaurentPoly2> for LaurentJson {
    fn from(f: &LaurentPoly2) -> Self {
        LaurentJson {
            terms: f
                .terms()
                .iter()
                .map(|(e, c)| LaurentTerm { exp: *e, coef: c.into() })
                .collect(),
        }
    }
}

impl TryFrom<&LaurentJson> for LaurentPoly2 {
    type Error = Error;
    fn try_from(j: &LaurentJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.exp, PuiseuxScalar::try_from(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly2::new(terms))
    }
}

/// Either kind of polynomial file, told apart by its term keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyInput {
    Trop(TropPoly2),
    Laurent(LaurentPoly2),
}

pub fn parse_poly(text: &str) -> Result<PolyInput> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let terms = v
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| Error::Parse("expected an object with a \"terms\" array".into()))?;
    if terms.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let from = |e: serde_json::Error| Error::Parse(e.to_string());
    if terms[0].get("alpha").is_some() {
        let j: TropJson = serde_json::from_value(v).map_err(from)?;
        Ok(PolyInput::Trop(TropPoly2::try_from(&j)?))
    } else if terms[0].get("coef").is_some() {
        let j: LaurentJson = serde_json::from_value(v).map_err(from)?;
        Ok(PolyInput::Laurent(LaurentPoly2::try_from(&j)?))
    } else {
        Err(Error::Parse("terms carry neither \"alpha\" nor \"coef\"".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub x: String,
    pub y: String,
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        PointJson { x: fmt_q(&p.x), y: fmt_q(&p.y) }
    }
}

impl TryFrom<&PointJson> for Point {
    type Error = Error;
    fn try_from(j: &PointJson) -> Result<Self> {
        Ok(Point::new(parse_q(&j.x)?, parse_q(&j.y)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorPoint {
    pub x: String,
    pub y: String,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub points: Vec<DivisorPoint>,
}

impl From<&Divisor> for DivisorJson {
    fn from(d: &Divisor) -> Self {
        DivisorJson {
            points: d
                .entries()
                .iter()
                .map(|(p, &m)| DivisorPoint { x: fmt_q(&p.x), y: fmt_q(&p.y), mult: m })
                .collect(),
        }
    }
}

impl TryFrom<&DivisorJson> for Divisor {
    type Error = Error;
    fn try_from(j: &DivisorJson) -> Result<Self> {
        j.points
            .iter()
            .map(|p| Ok((Point::new(parse_q(&p.x)?, parse_q(&p.y)?), p.mult)))
            .collect::<Result<Vec<_>>>()
            .map(Divisor::new)
    }
}

/// Selection files are either a bare index array or `{"components": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelectionJson {
    List(Vec<usize>),
    Object { components: Vec<usize> },
}

impl SelectionJson {
    pub fn indices(&self) -> &[usize] {
        match self {
            SelectionJson::List(v) | SelectionJson::Object { components: v } => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CarrierJson {
    Point { at: PointJson },
    Segment { plus: PointJson, minus: PointJson },
    Ray { end: PointJson, dir: Exp },
    Line { base: PointJson, dir: Exp },
    Complex { pieces: usize },
}

impl From<&Carrier> for CarrierJson {
    fn from(c: &Carrier) -> Self {
        match c {
            Carrier::Point(p) => CarrierJson::Point { at: p.into() },
            Carrier::Segment { plus, minus } => CarrierJson::Segment {
                plus: plus.into(),
                minus: minus.into(),
            },
            Carrier::Ray { end, dir } => CarrierJson::Ray { end: end.into(), dir: *dir },
            Carrier::Line { base, dir } => CarrierJson::Line { base: base.into(), dir: *dir },
            Carrier::Complex(ps) => CarrierJson::Complex { pieces: ps.len() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexJson {
    pub exp: Exp,
    pub owner: String,
}

impl From<&Apex> for ApexJson {
    fn from(a: &Apex) -> Self {
        ApexJson {
            exp: a.exp,
            owner: match a.owner {
                Owner::F => "f".into(),
                Owner::G => "g".into(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub index: usize,
    pub kind: String,
    pub carrier: CarrierJson,
    pub multiplicity: i64,
    pub phi1: Option<(Exp, Exp)>,
    pub phi2: Option<(Exp, Exp)>,
    pub apex_plus: Option<ApexJson>,
    pub apex_minus: Option<ApexJson>,
}

impl From<&ComponentGeometry> for ComponentJson {
    fn from(c: &ComponentGeometry) -> Self {
        ComponentJson {
            index: c.index,
            kind: format!("{:?}", c.kind),
            carrier: c.carrier().into(),
            multiplicity: c.multiplicity,
            phi1: c.phi1,
            phi2: c.phi2,
            apex_plus: c.apex_plus.as_ref().map(Into::into),
            apex_minus: c.apex_minus.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub components: Vec<ComponentJson>,
    pub stable_divisor: DivisorJson,
    pub proper_divisor: DivisorJson,
    pub selectable: Vec<usize>,
}

impl From<&IntersectionReport> for ReportJson {
    fn from(r: &IntersectionReport) -> Self {
        ReportJson {
            components: r.components.iter().map(Into::into).collect(),
            stable_divisor: (&r.stable_divisor).into(),
            proper_divisor: (&r.proper_divisor).into(),
            selectable: r.selectable(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchJson {
    pub exp: Exp,
    pub old: ScalarJson,
    pub new: ScalarJson,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub component: usize,
    pub target: Vec<String>,
    pub solved: Vec<String>,
    pub ok: bool,
}

impl From<&VerifyRecord> for VerifyJson {
    fn from(v: &VerifyRecord) -> Self {
        VerifyJson {
            component: v.component,
            target: v.target.clone(),
            solved: v.solved.clone(),
            ok: v.ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftJson {
    pub gprime: LaurentJson,
    pub patches: Vec<PatchJson>,
    pub verify: Vec<VerifyJson>,
    pub depth: String,
    pub mode: String,
    pub order: Vec<Exp>,
}

impl From<&LiftResult> for LiftJson {
    fn from(r: &LiftResult) -> Self {
        LiftJson {
            gprime: (&r.g_prime).into(),
            patches: r
                .patches
                .iter()
                .map(|p| PatchJson {
                    exp: p.exp,
                    old: (&p.old).into(),
                    new: (&p.new).into(),
                    component: p.component,
                })
                .collect(),
            verify: r.verification.iter().map(Into::into).collect(),
            depth: fmt_q(&r.certified_depth),
            mode: serde_json::to_value(r.mode).unwrap().as_str().unwrap().to_string(),
            order: r.plan.vertices.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    /// `"segment"`, `"ray"` or `"line"`.
    pub shape: String,
    pub from: PointJson,
    /// Other endpoint for segments.
    pub to: Option<PointJson>,
    pub dir: Exp,
    pub dual: (Exp, Exp),
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub vertices: Vec<PointJson>,
    pub edges: Vec<EdgeJson>,
}

impl From<&CurveComplex> for CurveJson {
    fn from(c: &CurveComplex) -> Self {
        CurveJson {
            vertices: c.vertices.iter().map(Into::into).collect(),
            edges: c
                .edges
                .iter()
                .map(|e| {
                    let (shape, to) = match &e.shape {
                        EdgeShape::Segment(_, b) => ("segment", Some((&c.vertices[*b]).into())),
                        EdgeShape::Ray(..) => ("ray", None),
                        EdgeShape::Line => ("line", None),
                    };
                    let from = match &e.shape {
                        EdgeShape::Segment(a, _) | EdgeShape::Ray(a, _) => (&c.vertices[*a]).into(),
                        EdgeShape::Line => (&e.cell.origin).into(),
                    };
                    EdgeJson {
                        shape: shape.into(),
                        from,
                        to,
                        dir: e.cell.dir,
                        dual: e.dual,
                        multiplicity: e.multiplicity,
                    }
                })
                .collect(),
        }
    }
}
