//! Lattice utilities, regular subdivisions and tropical curve complexes.

pub mod curve;
pub mod lattice;
pub mod subdivision;

pub use curve::{
    balance_defect, check_smooth, curve_complex, curve_from_subdivision, Cell, CurveComplex,
    CurveEdge, EdgeShape, SmoothReport,
};
pub use lattice::{lattice_dist, unimodular_to_e1, Exp, LatticeAffineMap, Point};
pub use subdivision::{dual_subdivision, DualSubdivision};

use crate::troppoly::{LaurentPoly2, TropPoly2};

/// Reindexing by a unimodular affine map: exponents move by the map, points
/// by its dual action.
pub trait Transform {
    fn transform(&self, m: &LatticeAffineMap) -> Self;
}

impl Transform for LaurentPoly2 {
    fn transform(&self, m: &LatticeAffineMap) -> Self {
        self.map_exponents(|e| m.apply(e))
    }
}

impl Transform for TropPoly2 {
    fn transform(&self, m: &LatticeAffineMap) -> Self {
        self.map_exponents(|e| m.apply(e))
    }
}

impl Transform for Point {
    fn transform(&self, m: &LatticeAffineMap) -> Self {
        m.point(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::puiseux::PuiseuxScalar;
    use crate::troppoly::tropicalize;

    #[test]
    fn transform_round_trip_and_identity() {
        let (f, _) = fixtures::ex1(PuiseuxScalar::one(), PuiseuxScalar::one());
        let id = LatticeAffineMap::identity();
        assert_eq!(f.transform(&id), f);
        let m = unimodular_to_e1((1, 0), (0, 1)).unwrap();
        assert_eq!(f.transform(&m).transform(&m.inverse()), f);
    }

    #[test]
    fn curve_conjugation_on_ex1() {
        let (f, _) = fixtures::ex1(PuiseuxScalar::one(), PuiseuxScalar::one());
        let tf = tropicalize(&f).unwrap();
        let m = unimodular_to_e1((1, 0), (0, 1)).unwrap();
        let direct = curve_complex(&tf);
        let moved = curve_complex(&tf.transform(&m));
        let mut a: Vec<Point> = direct.vertices.iter().map(|p| m.point(p)).collect();
        let mut b = moved.vertices.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let mut ea: Vec<(Vec<Point>, i64)> = direct
            .edges
            .iter()
            .map(|e| {
                let mut ps: Vec<Point> = e.cell.endpoints().iter().map(|p| m.point(p)).collect();
                ps.sort();
                (ps, e.multiplicity)
            })
            .collect();
        let mut eb: Vec<(Vec<Point>, i64)> = moved
            .edges
            .iter()
            .map(|e| {
                let mut ps = e.cell.endpoints();
                ps.sort();
                (ps, e.multiplicity)
            })
            .collect();
        ea.sort();
        eb.sort();
        assert_eq!(ea, eb);
        for e in &direct.edges {
            if let EdgeShape::Ray(_, d) = e.shape {
                let img = m.direction(d);
                assert!(moved.edges.iter().any(|x| matches!(x.shape, EdgeShape::Ray(_, d2) if d2 == img)));
            }
        }
    }
}
