//! Tropical plane curves as polyhedral complexes dual to the subdivision.

use num_traits::Zero;
use serde::Serialize;

use super::lattice::{dot_e, lattice_len, primitive, primitive_q, simplex, sub_e, Exp, Point};
use super::subdivision::{dual_subdivision, DualSubdivision};
use crate::rational::{qi, Q};
use crate::troppoly::TropPoly2;

/// A closed convex subset of a line: `origin + s·dir` for `s` in `[lo, hi]`,
/// `None` meaning unbounded on that side. `dir` is primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub origin: Point,
    pub dir: Exp,
    pub lo: Option<Q>,
    pub hi: Option<Q>,
}

impl Cell {
    pub fn segment(a: &Point, b: &Point) -> Cell {
        let (dir, len) = primitive_q(&b.sub(a));
        Cell {
            origin: a.clone(),
            dir,
            lo: Some(Q::zero()),
            hi: Some(len),
        }
    }

    pub fn ray(from: &Point, dir: Exp) -> Cell {
        Cell {
            origin: from.clone(),
            dir,
            lo: Some(Q::zero()),
            hi: None,
        }
    }

    pub fn line(base: &Point, dir: Exp) -> Cell {
        Cell {
            origin: base.clone(),
            dir,
            lo: None,
            hi: None,
        }
    }

    pub fn at(&self, s: &Q) -> Point {
        self.origin.add_scaled(s, self.dir)
    }

    /// Parameter of a point on the carrier line, or `None` off the line.
    pub fn param(&self, p: &Point) -> Option<Q> {
        let w = p.sub(&self.origin);
        let (dx, dy) = (qi(self.dir.0), qi(self.dir.1));
        if &w.0 * &dy - &w.1 * &dx != Q::zero() {
            return None;
        }
        Some((&w.0 * &dx + &w.1 * &dy) / qi(dot_e(self.dir, self.dir)))
    }

    pub fn in_range(&self, s: &Q) -> bool {
        self.lo.as_ref().is_none_or(|lo| s >= lo) && self.hi.as_ref().is_none_or(|hi| s <= hi)
    }

    pub fn in_open_range(&self, s: &Q) -> bool {
        self.lo.as_ref().is_none_or(|lo| s > lo) && self.hi.as_ref().is_none_or(|hi| s < hi)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.param(p).is_some_and(|s| self.in_range(&s))
    }

    /// Relative interior membership.
    pub fn contains_inner(&self, p: &Point) -> bool {
        self.param(p).is_some_and(|s| self.in_open_range(&s))
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_some() && self.hi.is_some()
    }

    /// Finite endpoints of the cell.
    pub fn endpoints(&self) -> Vec<Point> {
        let mut v = Vec::new();
        if let Some(lo) = &self.lo {
            v.push(self.at(lo));
        }
        if let Some(hi) = &self.hi {
            v.push(self.at(hi));
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeShape {
    /// Bounded edge between two vertex indices.
    Segment(usize, usize),
    /// Unbounded edge from a vertex index in a primitive direction.
    Ray(usize, Exp),
    /// Full line (only when the Newton polygon is a segment).
    Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveEdge {
    pub shape: EdgeShape,
    pub dual: (Exp, Exp),
    pub multiplicity: i64,
    pub cell: Cell,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComplex {
    pub vertices: Vec<Point>,
    /// The dual 2-cell of each vertex (counter-clockwise lattice polygon).
    pub vertex_cells: Vec<Vec<Exp>>,
    pub edges: Vec<CurveEdge>,
}

impl CurveComplex {
    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.edges.iter().any(|e| e.cell.contains(p))
    }

    /// Edges whose relative interior contains `p`.
    pub fn edges_through(&self, p: &Point) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| self.edges[k].cell.contains_inner(p))
            .collect()
    }

    /// Outgoing primitive direction and multiplicity of every edge at vertex `v`.
    pub fn star(&self, v: usize) -> Vec<(Exp, i64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            match e.shape {
                EdgeShape::Segment(a, _) if a == v => out.push((e.cell.dir, e.multiplicity)),
                EdgeShape::Segment(_, b) if b == v => {
                    out.push(((-e.cell.dir.0, -e.cell.dir.1), e.multiplicity))
                }
                EdgeShape::Ray(a, d) if a == v => out.push((d, e.multiplicity)),
                _ => {}
            }
        }
        out
    }
}

fn solve_vertex(f: &TropPoly2, cell: &[Exp]) -> Point {
    let (a, b, c) = (cell[0], cell[1], cell[2]);
    let (u, w) = (sub_e(b, a), sub_e(c, a));
    let alpha = |e: Exp| f.coef(e).expect("cell vertex in support").clone();
    let r1 = alpha(a) - alpha(b);
    let r2 = alpha(a) - alpha(c);
    let det = qi(u.0 * w.1 - u.1 * w.0);
    let x = (&r1 * qi(w.1) - &r2 * qi(u.1)) / &det;
    let y = (&r2 * qi(u.0) - &r1 * qi(w.0)) / &det;
    Point::new(x, y)
}

/// The curve `V(F)` with multiplicities, built from [`dual_subdivision`].
pub fn curve_complex(f: &TropPoly2) -> CurveComplex {
    let sub = dual_subdivision(f);
    curve_from_subdivision(f, &sub)
}

pub fn curve_from_subdivision(f: &TropPoly2, sub: &DualSubdivision) -> CurveComplex {
    let vertices: Vec<Point> = sub.faces.iter().map(|c| solve_vertex(f, c)).collect();
    debug_assert!(vertices.iter().zip(&sub.faces).all(|(p, c)| {
        let m = f.eval(p);
        c.iter().all(|&e| f.coef(e).unwrap() + p.dot_exp(e) == m)
    }));
    let mut edges = Vec::with_capacity(sub.edges.len());
    for (k, &(i, j)) in sub.edges.iter().enumerate() {
        let d = sub_e(j, i);
        let multiplicity = lattice_len(d);
        let perp = primitive((-d.1, d.0));
        let (shape, cell) = match sub.edge_faces[k].as_slice() {
            [a, b] => {
                let cell = Cell::segment(&vertices[*a], &vertices[*b]);
                (EdgeShape::Segment(*a, *b), cell)
            }
            [a] => {
                // point away from the rest of the face
                let other = sub.faces[*a]
                    .iter()
                    .copied()
                    .find(|&e| e != i && e != j)
                    .expect("face has a third vertex");
                let dir = if dot_e(sub_e(other, i), perp) > 0 {
                    (-perp.0, -perp.1)
                } else {
                    perp
                };
                (EdgeShape::Ray(*a, dir), Cell::ray(&vertices[*a], dir))
            }
            [] => {
                let rhs = f.coef(i).unwrap() - f.coef(j).unwrap();
                let s = rhs / qi(dot_e(d, d));
                let base = Point::new(&s * qi(d.0), &s * qi(d.1));
                (EdgeShape::Line, Cell::line(&base, perp))
            }
            _ => unreachable!("an edge borders at most two faces"),
        };
        edges.push(CurveEdge {
            shape,
            dual: simplex(i, j),
            multiplicity,
            cell,
        });
    }
    CurveComplex {
        vertices,
        vertex_cells: sub.faces.clone(),
        edges,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothReport {
    pub vertex_smooth: Vec<bool>,
    pub unit_edges: bool,
    pub smooth: bool,
}

/// Smooth vertices have a dual triangle of area 1/2; a smooth curve also has
/// every edge of multiplicity 1.
pub fn check_smooth(c: &CurveComplex) -> SmoothReport {
    let vertex_smooth: Vec<bool> = c
        .vertex_cells
        .iter()
        .map(|cell| cell.len() == 3 && super::lattice::twice_hull_area(cell) == 1)
        .collect();
    let unit_edges = c.edges.iter().all(|e| e.multiplicity == 1);
    let smooth = unit_edges && vertex_smooth.iter().all(|&s| s);
    SmoothReport {
        vertex_smooth,
        unit_edges,
        smooth,
    }
}

/// Weighted sum of outgoing directions at a vertex; zero when balanced.
pub fn balance_defect(c: &CurveComplex, v: usize) -> Exp {
    c.star(v)
        .into_iter()
        .fold((0, 0), |acc, (d, m)| (acc.0 + m * d.0, acc.1 + m * d.1))
}
