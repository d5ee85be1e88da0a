//! Worked example pairs used by tests, benches and the CLI fixtures.

use crate::puiseux::PuiseuxScalar;
use crate::rational::qi;
use crate::troppoly::LaurentPoly2;

/// `Σ t^{v} x^i y^j` from `((i, j), v)` pairs, all coefficients 1.
pub fn monomials(terms: &[((i64, i64), i64)]) -> LaurentPoly2 {
    LaurentPoly2::new(
        terms
            .iter()
            .map(|&(e, v)| (e, PuiseuxScalar::t_pow(qi(v)))),
    )
}

/// `a x + b y + 1`.
pub fn line(a: PuiseuxScalar, b: PuiseuxScalar) -> LaurentPoly2 {
    LaurentPoly2::new([((1, 0), a), ((0, 1), b), ((0, 0), PuiseuxScalar::one())])
}

/// The pair whose intersection consists of two multiplicity-2 segments on the
/// y-axis sharing one dual simplex in the line's subdivision.
pub fn ex1(a: PuiseuxScalar, b: PuiseuxScalar) -> (LaurentPoly2, LaurentPoly2) {
    let f = monomials(&[
        ((1, 3), 0),
        ((1, 2), 2),
        ((0, 3), 0),
        ((1, 1), 5),
        ((0, 2), 1),
        ((0, 1), 5),
        ((0, 0), 10),
    ]);
    (f, line(a, b))
}

/// The pair with three multiplicity-2 segments whose dual simplexes in the
/// line's subdivision form a triangle.
pub fn ex2(a: PuiseuxScalar, b: PuiseuxScalar) -> (LaurentPoly2, LaurentPoly2) {
    let f = monomials(&[
        ((3, 3), 3),
        ((3, 2), 1),
        ((2, 3), 1),
        ((2, 2), 0),
        ((2, 1), 1),
        ((1, 2), 1),
        ((1, 1), 1),
        ((0, 0), 3),
    ]);
    (f, line(a, b))
}

/// The acyclic pair of two cubics: three multiplicity-2 segments whose dual
/// edges in `g` form a star. The constant term of `f` is `t^{-1}`; with `t`
/// the hexagon of `V(trop f)` slides onto the corner of `V(trop g)` and the
/// three segments merge (see [`ex3_as_printed`]).
pub fn ex3() -> (LaurentPoly2, LaurentPoly2) {
    ex3_with_constant(-1)
}

/// The same pair with constant term `t`.
pub fn ex3_as_printed() -> (LaurentPoly2, LaurentPoly2) {
    ex3_with_constant(1)
}

fn ex3_with_constant(v: i64) -> (LaurentPoly2, LaurentPoly2) {
    let f = monomials(&[
        ((2, 2), 3),
        ((2, 1), 2),
        ((1, 2), 2),
        ((1, 1), 0),
        ((1, 0), 0),
        ((0, 1), 0),
        ((0, 0), v),
    ]);
    let g = monomials(&[((2, 2), 3), ((1, 1), 0), ((1, 0), 0), ((0, 1), 0)]);
    (f, g)
}
