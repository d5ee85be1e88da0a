//! Lattice points, rational points and unimodular reindexing.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, gcd, qi, Q};

/// An exponent vector in ℤ².
pub type Exp = (i64, i64);

/// A point of ℚ², ordered lexicographically by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(qi(x), qi(y))
    }

    pub fn origin() -> Self {
        Point::int(0, 0)
    }

    pub fn dot_exp(&self, e: Exp) -> Q {
        &self.x * qi(e.0) + &self.y * qi(e.1)
    }

    pub fn add_scaled(&self, s: &Q, d: Exp) -> Point {
        Point::new(&self.x + s * qi(d.0), &self.y + s * qi(d.1))
    }

    pub fn sub(&self, o: &Point) -> (Q, Q) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.x), fmt_q(&self.y))
    }
}

pub fn sub_e(a: Exp, b: Exp) -> Exp {
    (a.0 - b.0, a.1 - b.1)
}

pub fn add_e(a: Exp, b: Exp) -> Exp {
    (a.0 + b.0, a.1 + b.1)
}

pub fn scale_e(k: i64, a: Exp) -> Exp {
    (k * a.0, k * a.1)
}

pub fn det_e(a: Exp, b: Exp) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn dot_e(a: Exp, b: Exp) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

pub fn det_q(a: &(Q, Q), b: &(Q, Q)) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// Lattice length of an integer vector: the gcd of its entries.
pub fn lattice_len(d: Exp) -> i64 {
    gcd(d.0, d.1)
}

pub fn is_primitive(d: Exp) -> bool {
    lattice_len(d) == 1
}

/// Primitive vector along a nonzero integer vector.
pub fn primitive(d: Exp) -> Exp {
    let g = lattice_len(d);
    assert!(g > 0, "zero vector has no direction");
    (d.0 / g, d.1 / g)
}

/// Unordered pair in canonical (sorted) order.
pub fn simplex(a: Exp, b: Exp) -> (Exp, Exp) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Primitive integer direction of a nonzero rational vector, and the factor
/// `s` with `v = s · dir`.
pub fn primitive_q(v: &(Q, Q)) -> (Exp, Q) {
    let l = num_integer::Integer::lcm(v.0.denom(), v.1.denom());
    let lq = Q::from_integer(l);
    let a = (&v.0 * &lq).to_integer();
    let b = (&v.1 * &lq).to_integer();
    let g = num_integer::Integer::gcd(&a, &b);
    assert!(!g.is_zero(), "zero vector has no direction");
    let dir = (
        i64::try_from(&a / &g).expect("direction fits i64"),
        i64::try_from(&b / &g).expect("direction fits i64"),
    );
    let s = Q::new(g, num_bigint::BigInt::from(1)) / lq;
    (dir, s)
}

/// Lattice distance between two rational points: `|b − a|` divided by the
/// length of the primitive vector along it.
pub fn lattice_dist(a: &Point, b: &Point) -> Q {
    let v = b.sub(a);
    if v.0.is_zero() && v.1.is_zero() {
        return Q::zero();
    }
    primitive_q(&v).1.abs()
}

/// Extended Euclid on `(a, b)`: returns `(g, u, v)` with `ua + vb = g ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// `e ↦ M e + shift` on exponents with `det M = ±1`. Evaluation points move
/// by the inverse transpose, which keeps every `τ` value up to a global affine
/// function of the point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeAffineMap {
    pub matrix: [[i64; 2]; 2],
    pub shift: Exp,
}

impl LatticeAffineMap {
    pub fn identity() -> Self {
        LatticeAffineMap {
            matrix: [[1, 0], [0, 1]],
            shift: (0, 0),
        }
    }

    pub fn det(&self) -> i64 {
        let m = &self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn linear(&self, e: Exp) -> Exp {
        let m = &self.matrix;
        (m[0][0] * e.0 + m[0][1] * e.1, m[1][0] * e.0 + m[1][1] * e.1)
    }

    pub fn apply(&self, e: Exp) -> Exp {
        add_e(self.linear(e), self.shift)
    }

    pub fn inverse(&self) -> Self {
        let m = &self.matrix;
        let d = self.det();
        // adjugate divided by ±1
        let inv = [[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]];
        let mut out = LatticeAffineMap {
            matrix: inv,
            shift: (0, 0),
        };
        let s = out.linear(self.shift);
        out.shift = (-s.0, -s.1);
        out
    }

    /// Dual action on points, `P ↦ M⁻ᵀ P`.
    pub fn point(&self, p: &Point) -> Point {
        let m = &self.matrix;
        let d = qi(self.det());
        // M^{-T} = (1/det) [[m11, -m10], [-m01, m00]]
        Point::new(
            (qi(m[1][1]) * &p.x - qi(m[1][0]) * &p.y) * &d,
            (-qi(m[0][1]) * &p.x + qi(m[0][0]) * &p.y) * &d,
        )
    }

    /// Dual action on integer directions.
    pub fn direction(&self, v: Exp) -> Exp {
        let m = &self.matrix;
        let d = self.det();
        (
            (m[1][1] * v.0 - m[1][0] * v.1) * d,
            (-m[0][1] * v.0 + m[0][0] * v.1) * d,
        )
    }

    /// Composition `self ∘ other` on exponents.
    pub fn compose(&self, other: &LatticeAffineMap) -> Self {
        let a = &self.matrix;
        let b = &other.matrix;
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        LatticeAffineMap {
            matrix: m,
            shift: self.apply(other.shift),
        }
    }

    /// Flips the sign of the second output coordinate.
    pub fn flip_second(&self) -> Self {
        let m = &self.matrix;
        LatticeAffineMap {
            matrix: [m[0], [-m[1][0], -m[1][1]]],
            shift: (self.shift.0, -self.shift.1),
        }
    }
}

/// A unimodular affine map sending `i0 ↦ (0,0)` and `i1 ↦ (1,0)`.
pub fn unimodular_to_e1(i0: Exp, i1: Exp) -> Result<LatticeAffineMap> {
    let d = sub_e(i1, i0);
    if !is_primitive(d) {
        return Err(Error::NotPrimitive(d));
    }
    let (_, u, v) = ext_gcd(d.0, d.1);
    let mut second = [-d.1, d.0];
    if second[1] < 0 || (second[1] == 0 && second[0] < 0) {
        second = [d.1, -d.0];
    }
    let mut map = LatticeAffineMap {
        matrix: [[u, v], second],
        shift: (0, 0),
    };
    let s = map.linear(i0);
    map.shift = (-s.0, -s.1);
    Ok(map)
}

/// Twice the signed area of triangle `abc`.
pub fn orient(a: Exp, b: Exp, c: Exp) -> i64 {
    det_e(sub_e(b, a), sub_e(c, a))
}

/// Strict convex hull in counter-clockwise order (collinear points dropped).
/// Degenerate inputs return their extreme points.
pub fn convex_hull(points: &[Exp]) -> Vec<Exp> {
    let mut pts: Vec<Exp> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Exp> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Exp> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

/// Twice the area of the convex hull of the points.
pub fn twice_hull_area(points: &[Exp]) -> i64 {
    let h = convex_hull(points);
    if h.len() < 3 {
        return 0;
    }
    let mut s = 0;
    for k in 0..h.len() {
        s += det_e(h[k], h[(k + 1) % h.len()]);
    }
    s.abs()
}

/// Euclidean mixed area `area(A+B) − area(A) − area(B)`, an integer for
/// lattice polygons.
pub fn mixed_area(a: &[Exp], b: &[Exp]) -> i64 {
    let sum: Vec<Exp> = a
        .iter()
        .flat_map(|&p| b.iter().map(move |&q| add_e(p, q)))
        .collect();
    let twice = twice_hull_area(&sum) - twice_hull_area(a) - twice_hull_area(b);
    debug_assert!(twice % 2 == 0);
    twice / 2
}
