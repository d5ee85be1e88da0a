//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here calls the production code it checks.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use troplift_core::geometry::{curve_complex, Cell};
use troplift_core::rational::{q, qi};
use troplift_core::{Divisor, Exp, LaurentPoly2, PuiseuxScalar, QInf, TropPoly2, ValResult, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A tropical polynomial with `1..=max_terms` distinct exponents in
/// `[0, side]²` and integer coefficients in `[lo, hi]`.
pub fn random_trop(r: &mut ChaCha8Rng, max_terms: usize, side: i64, lo: i64, hi: i64) -> TropPoly2 {
    let mut cells: Vec<Exp> = (0..=side).flat_map(|i| (0..=side).map(move |j| (i, j))).collect();
    cells.shuffle(r);
    let n = r.gen_range(1..=max_terms);
    TropPoly2::from_terms(cells.into_iter().take(n).map(|e| (e, qi(r.gen_range(lo..=hi))))).unwrap()
}

/// The Laurent polynomial `Σ c t^{-α} x^e` with small nonzero `c`.
pub fn lift_trop(r: &mut ChaCha8Rng, f: &TropPoly2) -> LaurentPoly2 {
    LaurentPoly2::new(f.terms().iter().map(|(e, a)| {
        let c = [1, 2, 3, -1, -2][r.gen_range(0..5)];
        (*e, PuiseuxScalar::monomial(qi(c), -a.clone()))
    }))
}

// ---------------------------------------------------------------- hulls

fn cross(o: Exp, a: Exp, b: Exp) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Twice the area of the convex hull (Andrew's monotone chain).
pub fn hull_area2(points: &[Exp]) -> i64 {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let mut lower: Vec<Exp> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<Exp> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let n = lower.len();
    (0..n)
        .map(|k| {
            let (a, b) = (lower[k], lower[(k + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<i64>()
        .abs()
}

/// Mixed area of two lattice polygons from the Minkowski sum:
/// `A(P + Q) − A(P) − A(Q)`.
pub fn mixed_volume(a: &[Exp], b: &[Exp]) -> i64 {
    let sum: Vec<Exp> = a.iter().flat_map(|x| b.iter().map(move |y| (x.0 + y.0, x.1 + y.1))).collect();
    let twice = hull_area2(&sum) - hull_area2(a) - hull_area2(b);
    assert!(twice % 2 == 0);
    twice / 2
}

// ---------------------------------------------------------- perturbation

/// `x0 + ε x1`, compared lexicographically as `ε → 0⁺`.
#[derive(Clone, Debug)]
struct Eps(Q, Q);

/// `Some(sign)` of `a − b` for small `ε > 0`; `None` if it vanishes
/// identically (the direction is not generic).
fn eps_cmp(a: &Eps, b: &Q) -> Option<i32> {
    let d0 = &a.0 - b;
    if !d0.is_zero() {
        return Some(if d0.is_positive() { 1 } else { -1 });
    }
    if !a.1.is_zero() {
        return Some(if a.1.is_positive() { 1 } else { -1 });
    }
    None
}

fn in_range(s: &Eps, c: &Cell) -> Option<bool> {
    let lo_ok = match &c.lo {
        None => true,
        Some(lo) => eps_cmp(s, lo)? > 0,
    };
    let hi_ok = match &c.hi {
        None => true,
        Some(hi) => eps_cmp(s, hi)? < 0,
    };
    Some(lo_ok && hi_ok)
}

fn det2(a: (&Q, &Q), b: (&Q, &Q)) -> Q {
    a.0 * b.1 - a.1 * b.0
}

/// Stable intersection as the limit of `(V(F) + εv) ∩ V(G)`, for one
/// direction `v`. `None` if `v` is not generic for this pair.
pub fn perturbed_intersection(f: &TropPoly2, g: &TropPoly2, v: (Q, Q)) -> Option<Divisor> {
    let cf = curve_complex(f);
    let cg = curve_complex(g);
    let mut out = Divisor::default();
    for ef in &cf.edges {
        for eg in &cg.edges {
            let (da, db) = (ef.cell.dir, eg.cell.dir);
            let det = da.0 * db.1 - da.1 * db.0;
            if det == 0 {
                // a generic shift separates parallel edges
                let w = (&eg.cell.origin.x - &ef.cell.origin.x, &eg.cell.origin.y - &ef.cell.origin.y);
                let dq = (qi(da.0), qi(da.1));
                if det2((&w.0, &w.1), (&dq.0, &dq.1)).is_zero() && det2((&v.0, &v.1), (&dq.0, &dq.1)).is_zero() {
                    return None;
                }
                continue;
            }
            let d = qi(det);
            let (dq_a, dq_b) = ((qi(da.0), qi(da.1)), (qi(db.0), qi(db.1)));
            // origin_a + εv + s da = origin_b + u db
            let w0 = (&eg.cell.origin.x - &ef.cell.origin.x, &eg.cell.origin.y - &ef.cell.origin.y);
            let w1 = (-v.0.clone(), -v.1.clone());
            let s = Eps(
                det2((&w0.0, &w0.1), (&dq_b.0, &dq_b.1)) / &d,
                det2((&w1.0, &w1.1), (&dq_b.0, &dq_b.1)) / &d,
            );
            let u = Eps(
                det2((&w0.0, &w0.1), (&dq_a.0, &dq_a.1)) / &d,
                det2((&w1.0, &w1.1), (&dq_a.0, &dq_a.1)) / &d,
            );
            if in_range(&s, &ef.cell)? && in_range(&u, &eg.cell)? {
                let p = ef.cell.at(&s.0);
                out.add(p, ef.multiplicity * eg.multiplicity * det.abs());
            }
        }
    }
    Some(out)
}

/// Directions tried in order until one is generic.
pub fn generic_directions() -> Vec<(Q, Q)> {
    vec![
        (q(1, 1), q(3, 7)),
        (q(-2, 5), q(1, 3)),
        (q(5, 11), q(-7, 13)),
        (q(-3, 17), q(-11, 19)),
        (q(13, 3), q(2, 23)),
    ]
}

pub fn perturbation_oracle(f: &TropPoly2, g: &TropPoly2) -> Divisor {
    generic_directions()
        .into_iter()
        .find_map(|v| perturbed_intersection(f, g, v))
        .expect("no generic direction in the fixed list")
}

// ------------------------------------------------------------------- mu

/// `min_n val(c_{i+n(j−i)}) − val(c_i) − n (val c_j − val c_i)` by scanning
/// a window of `n` wide enough for the support.
pub fn mu_brute(f: &LaurentPoly2, i: Exp, j: Exp) -> QInf {
    let val = |e: Exp| match f.coef(e).map(|c| c.val()) {
        Some(ValResult::Exact(QInf::Fin(v))) => Some(v),
        _ => None,
    };
    let vi = val(i).unwrap();
    let vj = val(j).unwrap();
    let span = f
        .terms()
        .keys()
        .map(|e| e.0.abs().max(e.1.abs()))
        .max()
        .unwrap_or(0)
        + i.0.abs().max(i.1.abs())
        + 2;
    let mut best = QInf::Inf;
    for n in -2 * span..=2 * span {
        if n == 0 || n == 1 {
            continue;
        }
        let e = (i.0 + n * (j.0 - i.0), i.1 + n * (j.1 - i.1));
        if let Some(v) = val(e) {
            let m = v - &vi - qi(n) * (&vj - &vi);
            best = best.min(QInf::Fin(m));
        }
    }
    best
}

// -------------------------------------------------------- univariate lines

pub type Line = BTreeMap<i64, PuiseuxScalar>;

/// An admissible reduction instance: endpoint valuations `0` and `ν` shared
/// by `f` and `g`, every other coefficient strictly above the tilt.
pub fn random_line_pair(r: &mut ChaCha8Rng) -> (Line, Line, Q) {
    let nu = q(r.gen_range(-4..=4), r.gen_range(1..=2));
    let unit = |r: &mut ChaCha8Rng| qi([1, 2, 3, -1, -3][r.gen_range(0..5)]);
    let make = |r: &mut ChaCha8Rng, max_w: i64| {
        let mut line = Line::new();
        line.insert(0, PuiseuxScalar::monomial(unit(r), qi(0)));
        line.insert(1, PuiseuxScalar::monomial(unit(r), nu.clone()));
        for _ in 0..r.gen_range(0..=4) {
            let n = r.gen_range(-3..=4);
            if n == 0 || n == 1 {
                continue;
            }
            let w = q(r.gen_range(1..=2 * max_w), 2);
            let c = PuiseuxScalar::monomial(unit(r), qi(n) * &nu + w);
            let slot = line.entry(n).or_default();
            *slot = &*slot + &c;
        }
        line.retain(|_, c| !c.is_exact_zero());
        line
    };
    let f = make(r, 3);
    let g = make(r, 5);
    (f, g, qi(r.gen_range(1..=8)))
}

/// Tilted valuation `val(c_n) − n ν`, with `ν = val c₁ − val c₀` and
/// `val c₀ = 0` (as in [`random_line_pair`]).
pub fn tilted(c: &PuiseuxScalar, n: i64, nu: &Q) -> ValResult {
    match c.val() {
        ValResult::Exact(QInf::Fin(v)) => ValResult::Exact(QInf::Fin(v - qi(n) * nu)),
        ValResult::AboveBound(b) => ValResult::AboveBound(b - qi(n) * nu),
        other => other,
    }
}

/// `g + Σ a_k x^k f` by direct convolution.
pub fn apply_h(g: &Line, h: &BTreeMap<i64, PuiseuxScalar>, f: &Line) -> Line {
    let mut out = g.clone();
    for (k, a) in h {
        for (m, c) in f {
            let slot = out.entry(k + m).or_default();
            *slot = &*slot + &(a * c);
        }
    }
    out.retain(|_, c| !c.is_exact_zero());
    out
}
