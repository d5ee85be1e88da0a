//! Connected components of the set-theoretic intersection of two curves.

use crate::geometry::lattice::{det_e, det_q, dot_e, Exp};
use crate::geometry::{curve_complex, Cell, CurveComplex, Point};
use crate::troppoly::TropPoly2;

/// A piece of the overlay: a point or a one-dimensional cell of positive
/// length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Point(Point),
    Cell(Cell),
}

impl Piece {
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Piece::Point(q) => q == p,
            Piece::Cell(c) => c.contains(p),
        }
    }

    fn touches(&self, other: &Piece) -> bool {
        match (self, other) {
            (Piece::Point(p), o) | (o, Piece::Point(p)) => o.contains(p),
            (Piece::Cell(a), Piece::Cell(b)) => meet(a, b).is_some(),
        }
    }

    /// A point used to order pieces.
    fn anchor(&self) -> Point {
        match self {
            Piece::Point(p) => p.clone(),
            Piece::Cell(c) => c.endpoints().into_iter().min().unwrap_or_else(|| c.origin.clone()),
        }
    }
}

/// Shape of a connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Point(Point),
    /// Bounded segment; `plus` is the endpoint with the larger `(y, x)`.
    Segment { plus: Point, minus: Point },
    Ray { end: Point, dir: Exp },
    Line { base: Point, dir: Exp },
    /// Not a single straight piece.
    Complex(Vec<Piece>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub pieces: Vec<Piece>,
    pub carrier: Carrier,
    /// Overlap unbounded in both directions.
    pub unbounded_overlap: bool,
}

impl Component {
    pub fn contains(&self, p: &Point) -> bool {
        self.pieces.iter().any(|x| x.contains(p))
    }
}

fn max_lo(a: &Option<crate::Q>, b: &Option<crate::Q>) -> Option<crate::Q> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(std::cmp::max(x, y).clone()),
    }
}

fn min_hi(a: &Option<crate::Q>, b: &Option<crate::Q>) -> Option<crate::Q> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some(x), Some(y)) => Some(std::cmp::min(x, y).clone()),
    }
}

/// Range of `b` expressed in the parameter of `a`, for collinear cells.
fn reparam(a: &Cell, b: &Cell) -> Option<(Option<crate::Q>, Option<crate::Q>)> {
    let s0 = a.param(&b.origin)?;
    if det_e(a.dir, b.dir) != 0 {
        return None;
    }
    Some(if dot_e(a.dir, b.dir) > 0 {
        (b.lo.as_ref().map(|x| &s0 + x), b.hi.as_ref().map(|x| &s0 + x))
    } else {
        (b.hi.as_ref().map(|x| &s0 - x), b.lo.as_ref().map(|x| &s0 - x))
    })
}

/// Intersection of two closed cells.
pub fn meet(a: &Cell, b: &Cell) -> Option<Piece> {
    let det = det_e(a.dir, b.dir);
    if det != 0 {
        let w = b.origin.sub(&a.origin);
        let da = (crate::rational::qi(a.dir.0), crate::rational::qi(a.dir.1));
        let db = (crate::rational::qi(b.dir.0), crate::rational::qi(b.dir.1));
        let d = crate::rational::qi(det);
        let s = det_q(&w, &db) / &d;
        let u = det_q(&w, &da) / &d;
        return (a.in_range(&s) && b.in_range(&u)).then(|| Piece::Point(a.at(&s)));
    }
    let (blo, bhi) = reparam(a, b)?;
    let lo = max_lo(&a.lo, &blo);
    let hi = min_hi(&a.hi, &bhi);
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => None,
        (Some(l), Some(h)) if l == h => Some(Piece::Point(a.at(l))),
        _ => Some(Piece::Cell(Cell {
            origin: a.origin.clone(),
            dir: a.dir,
            lo,
            hi,
        })),
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn upper_first(a: Point, b: Point) -> (Point, Point) {
    if (&a.y, &a.x) >= (&b.y, &b.x) {
        (a, b)
    } else {
        (b, a)
    }
}

fn carrier_of(pieces: &[Piece]) -> (Carrier, bool) {
    let cells: Vec<&Cell> = pieces
        .iter()
        .filter_map(|p| match p {
            Piece::Cell(c) => Some(c),
            _ => None,
        })
        .collect();
    let Some(base) = cells.first() else {
        let Piece::Point(p) = &pieces[0] else { unreachable!() };
        return (Carrier::Point(p.clone()), false);
    };
    let mut lo = base.lo.clone();
    let mut hi = base.hi.clone();
    for c in &cells[1..] {
        let Some((clo, chi)) = reparam(base, c) else {
            let unbounded = cells.iter().any(|c| c.lo.is_none() && c.hi.is_none());
            return (Carrier::Complex(pieces.to_vec()), unbounded);
        };
        lo = match (&lo, &clo) {
            (Some(x), Some(y)) => Some(std::cmp::min(x, y).clone()),
            _ => None,
        };
        hi = match (&hi, &chi) {
            (Some(x), Some(y)) => Some(std::cmp::max(x, y).clone()),
            _ => None,
        };
    }
    let carrier = match (lo, hi) {
        (Some(l), Some(h)) => {
            let (plus, minus) = upper_first(base.at(&l), base.at(&h));
            Carrier::Segment { plus, minus }
        }
        (Some(l), None) => Carrier::Ray {
            end: base.at(&l),
            dir: base.dir,
        },
        (None, Some(h)) => Carrier::Ray {
            end: base.at(&h),
            dir: (-base.dir.0, -base.dir.1),
        },
        (None, None) => Carrier::Line {
            base: base.origin.clone(),
            dir: base.dir,
        },
    };
    let unbounded = matches!(carrier, Carrier::Line { .. });
    (carrier, unbounded)
}

/// Components of `V(F) ∩ V(G)` from precomputed curves.
pub fn components_of(cf: &CurveComplex, cg: &CurveComplex) -> Vec<Component> {
    let mut pieces: Vec<Piece> = Vec::new();
    for ef in &cf.edges {
        for eg in &cg.edges {
            if let Some(p) = meet(&ef.cell, &eg.cell) {
                if !pieces.contains(&p) {
                    pieces.push(p);
                }
            }
        }
    }
    let n = pieces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in a + 1..n {
            if pieces[a].touches(&pieces[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Piece>> = Default::default();
    for (k, p) in pieces.into_iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(p);
    }
    let mut out: Vec<Component> = groups
        .into_values()
        .map(|mut ps| {
            ps.sort_by_key(|p| p.anchor());
            let (carrier, unbounded_overlap) = carrier_of(&ps);
            Component {
                pieces: ps,
                carrier,
                unbounded_overlap,
            }
        })
        .collect();
    out.sort_by_key(|c| c.pieces.iter().map(|p| p.anchor()).min().unwrap_or_else(Point::origin));
    out
}

/// Connected components of `V(F) ∩ V(G)`.
pub fn components(f: &TropPoly2, g: &TropPoly2) -> Vec<Component> {
    components_of(&curve_complex(f), &curve_complex(g))
}

/// Whether a component is a single point.
pub fn is_point(c: &Component) -> bool {
    matches!(c.carrier, Carrier::Point(_))
}
