//! Regular subdivisions of Newton polygons induced by tropical coefficients.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{convex_hull, dot_e, orient, primitive, simplex, sub_e, Exp};
use crate::rational::{qi, Q};
use crate::troppoly::TropPoly2;

/// Cells of the subdivision dual to a tropical curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSubdivision {
    /// Dimension of the Newton polygon (0, 1 or 2).
    pub dim: usize,
    /// Lattice points that are vertices of some cell.
    pub points: Vec<Exp>,
    /// 1-cells as sorted pairs; for a segment Newton polygon, the pieces of
    /// its upper hull.
    pub edges: Vec<(Exp, Exp)>,
    /// 2-cells as counter-clockwise vertex cycles.
    pub faces: Vec<Vec<Exp>>,
    /// Support points lying on each 2-cell's lifted face, vertices or not.
    pub face_marked: Vec<Vec<Exp>>,
    /// Faces containing each edge (one on the hull, two inside).
    pub edge_faces: Vec<Vec<usize>>,
}

impl DualSubdivision {
    pub fn edge_index(&self, e: (Exp, Exp)) -> Option<usize> {
        let e = simplex(e.0, e.1);
        self.edges.binary_search(&e).ok()
    }

    /// Twice the area of a face.
    pub fn face_twice_area(&self, k: usize) -> i64 {
        super::lattice::twice_hull_area(&self.faces[k])
    }
}

/// Sign of `z_p − plane(p)` for the plane through the lifted triangle `abc`.
fn side(a: (Exp, &Q), b: (Exp, &Q), c: (Exp, &Q), p: (Exp, &Q)) -> i32 {
    let (u, v) = (sub_e(b.0, a.0), sub_e(c.0, a.0));
    let (uz, vz) = (b.1 - a.1, c.1 - a.1);
    // normal = (u, uz) × (v, vz)
    let nx = qi(u.1) * &vz - &uz * qi(v.1);
    let ny = &uz * qi(v.0) - qi(u.0) * &vz;
    let nz = u.0 * v.1 - u.1 * v.0;
    let w = sub_e(p.0, a.0);
    let s = nx * qi(w.0) + ny * qi(w.1) + qi(nz) * (p.1 - a.1);
    let sign = if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    };
    sign * nz.signum() as i32
}

/// The subdivision of `Newt(F)` given by the upper faces of the lifted points
/// `(i, j, α_ij)`. Ties are kept as non-simplicial cells.
pub fn dual_subdivision(f: &TropPoly2) -> DualSubdivision {
    let pts: Vec<(Exp, &Q)> = f.terms().iter().map(|(&e, a)| (e, a)).collect();
    let support: Vec<Exp> = pts.iter().map(|p| p.0).collect();
    let hull = convex_hull(&support);
    match hull.len() {
        1 => DualSubdivision {
            dim: 0,
            points: hull,
            edges: vec![],
            faces: vec![],
            face_marked: vec![],
            edge_faces: vec![],
        },
        2 => segment_subdivision(&pts),
        _ => polygon_subdivision(&pts),
    }
}

fn segment_subdivision(pts: &[(Exp, &Q)]) -> DualSubdivision {
    let base = pts.iter().map(|p| p.0).min().expect("nonempty");
    let far = pts.iter().map(|p| p.0).max().expect("nonempty");
    let d = primitive(sub_e(far, base));
    let dd = dot_e(d, d);
    let mut lifted: Vec<(i64, &Q, Exp)> = pts
        .iter()
        .map(|&(e, a)| (dot_e(sub_e(e, base), d) / dd, a, e))
        .collect();
    lifted.sort_by_key(|x| x.0);
    // upper hull of (k, α)
    let mut up: Vec<(i64, &Q, Exp)> = Vec::new();
    for p in lifted {
        while up.len() >= 2 {
            let (a, b) = (&up[up.len() - 2], &up[up.len() - 1]);
            // drop b unless it lies strictly above segment a–p
            let cross = qi(b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * qi(p.0 - a.0);
            if cross >= Q::zero() {
                up.pop();
            } else {
                break;
            }
        }
        up.push(p);
    }
    let points: Vec<Exp> = {
        let mut v: Vec<Exp> = up.iter().map(|p| p.2).collect();
        v.sort();
        v
    };
    let mut edges: Vec<(Exp, Exp)> = up.windows(2).map(|w| simplex(w[0].2, w[1].2)).collect();
    edges.sort();
    let n = edges.len();
    DualSubdivision {
        dim: 1,
        points,
        edges,
        faces: vec![],
        face_marked: vec![],
        edge_faces: vec![vec![]; n],
    }
}

fn polygon_subdivision(pts: &[(Exp, &Q)]) -> DualSubdivision {
    let n = pts.len();
    let mut cells: BTreeSet<Vec<Exp>> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if orient(pts[a].0, pts[b].0, pts[c].0) == 0 {
                    continue;
                }
                let mut on = Vec::new();
                let mut upper = true;
                for p in pts {
                    match side(pts[a], pts[b], pts[c], *p) {
                        1 => {
                            upper = false;
                            break;
                        }
                        0 => on.push(p.0),
                        _ => {}
                    }
                }
                if upper {
                    on.sort();
                    cells.insert(on);
                }
            }
        }
    }
    let mut faces = Vec::new();
    let mut face_marked = Vec::new();
    for marked in cells {
        faces.push(convex_hull(&marked));
        face_marked.push(marked);
    }
    let mut edge_map: BTreeMap<(Exp, Exp), Vec<usize>> = BTreeMap::new();
    for (k, face) in faces.iter().enumerate() {
        for t in 0..face.len() {
            let e = simplex(face[t], face[(t + 1) % face.len()]);
            edge_map.entry(e).or_default().push(k);
        }
    }
    let points: BTreeSet<Exp> = faces.iter().flatten().copied().collect();
    let (edges, edge_faces): (Vec<_>, Vec<_>) = edge_map.into_iter().unzip();
    DualSubdivision {
        dim: 2,
        points: points.into_iter().collect(),
        edges,
        faces,
        face_marked,
        edge_faces,
    }
}
