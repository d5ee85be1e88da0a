//! Shared inputs for the benchmarks.

use troplift_core::rational::q;
use troplift_core::{classify, fixtures, Divisor, LaurentPoly2, PuiseuxScalar, Q};

/// The acyclic three-segment pair with a target at the given offsets.
pub fn ex3_target(offsets: [Q; 3]) -> (LaurentPoly2, LaurentPoly2, Divisor, Vec<usize>) {
    let (f, g) = fixtures::ex3();
    let r = classify(&f, &g).expect("fixture classifies");
    let sel = r.selectable();
    let mut d = r.proper_divisor.clone();
    for (&k, s) in sel.iter().zip(offsets) {
        let l = &r.components[k];
        d.add(l.point_at(&s).unwrap(), 1);
        d.add(l.point_at(&(l.length().unwrap() - &s)).unwrap(), 1);
    }
    (f, g, d, sel)
}

pub fn default_ex3_target() -> (LaurentPoly2, LaurentPoly2, Divisor, Vec<usize>) {
    ex3_target([q(1, 4), q(1, 3), q(1, 5)])
}

/// The two-segment pair with `a = 1 + t^{1/4}`, whose segments solve to
/// off-centre points.
pub fn ex1_generic() -> (LaurentPoly2, LaurentPoly2) {
    let a = &PuiseuxScalar::one() + &PuiseuxScalar::t_pow(q(1, 4));
    fixtures::ex1(a, PuiseuxScalar::one())
}
