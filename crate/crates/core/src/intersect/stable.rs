//! Stable intersection divisors from local mixed cells.
//!
//! At a point `P` of `V(F) ∩ V(G)` let `σ` and `τ` be the cells of the two
//! subdivisions dual to `P` (the hulls of the terms attaining the maxima).
//! Any fine mixed subdivision of `σ + τ` has parallelogram cells whose `|det|`
//! sum to the mixed area of `σ` and `τ`; that sum is the stable multiplicity
//! at `P`. It vanishes unless both cells are at least one-dimensional and not
//! parallel segments, so only finitely many candidates need checking.

use std::collections::BTreeSet;

use super::components::{meet, Piece};
use super::divisor::Divisor;
use crate::error::{Error, Result};
use crate::geometry::lattice::{det_e, mixed_area, sub_e};
use crate::geometry::{curve_complex, CurveComplex, CurveEdge, Point};
use crate::troppoly::TropPoly2;

/// Stable multiplicity at a single point.
pub fn local_multiplicity(f: &TropPoly2, g: &TropPoly2, p: &Point) -> i64 {
    let sigma = f.argmax(p);
    let tau = g.argmax(p);
    if sigma.len() < 2 || tau.len() < 2 {
        return 0;
    }
    mixed_area(&sigma, &tau)
}

/// Points where the stable multiplicity can be positive.
pub fn candidates(cf: &CurveComplex, cg: &CurveComplex) -> BTreeSet<Point> {
    let mut out = BTreeSet::new();
    for ef in &cf.edges {
        for eg in &cg.edges {
            if det_e(ef.cell.dir, eg.cell.dir) == 0 {
                continue;
            }
            if let Some(Piece::Point(p)) = meet(&ef.cell, &eg.cell) {
                out.insert(p);
            }
        }
    }
    out.extend(cf.vertices.iter().filter(|v| cg.contains(v)).cloned());
    out.extend(cg.vertices.iter().filter(|v| cf.contains(v)).cloned());
    out
}

pub fn stable_divisor_of(f: &TropPoly2, cf: &CurveComplex, g: &TropPoly2, cg: &CurveComplex) -> Divisor {
    Divisor::new(
        candidates(cf, cg)
            .into_iter()
            .map(|p| {
                let m = local_multiplicity(f, g, &p);
                (p, m)
            })
            .filter(|(_, m)| *m > 0),
    )
}

/// The stable intersection divisor of `V(F)` and `V(G)`.
pub fn stable_divisor(f: &TropPoly2, g: &TropPoly2) -> Divisor {
    stable_divisor_of(f, &curve_complex(f), g, &curve_complex(g))
}

/// Multiplicity of a transverse crossing, `m₁ m₂ |det(v₁, v₂)|`, checked
/// against the determinant of the two dual simplexes.
pub fn transverse_mult(e1: &CurveEdge, e2: &CurveEdge) -> Result<i64> {
    let primal = det_e(e1.cell.dir, e2.cell.dir).abs();
    if primal == 0 {
        return Err(Error::ParallelEdges);
    }
    let primal = e1.multiplicity * e2.multiplicity * primal;
    let dual = det_e(sub_e(e1.dual.1, e1.dual.0), sub_e(e2.dual.1, e2.dual.0)).abs();
    assert_eq!(primal, dual, "primal and dual multiplicities disagree");
    Ok(primal)
}
