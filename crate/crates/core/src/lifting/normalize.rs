//! Moving a component into the standard frame and forming the eliminant
//! `G(λ; g; f; 𝐢𝐣)`.
//!
//! In the frame the dual simplex of both containing edges is
//! `{(0,0), (1,0)}`, the coefficients of `f` and `g` at the origin have
//! valuation 0, and the apex at `P₊` has second coordinate `+1` (the apex at
//! `P₋`, for segments, has `−1`). `f` is moved by a monomial so that its
//! edge lines up with `g`'s, and both are rescaled by powers of `t`; neither
//! changes the curves or `V(f, g)`.

use crate::error::{Error, Result};
use crate::geometry::lattice::{add_e, sub_e};
use crate::geometry::{unimodular_to_e1, Exp, LatticeAffineMap, Transform};
use crate::intersect::{Apex, ComponentGeometry, Owner};
use crate::puiseux::PuiseuxScalar;
use crate::rational::{fmt_q, Q};
use crate::troppoly::LaurentPoly2;

use super::reduce::{reduce, Reduction};

#[derive(Clone, Debug)]
pub struct Frame {
    /// Exponents of `g` map to the frame by this map.
    pub map: LatticeAffineMap,
    /// `f` is multiplied by `x^{f_shift}` before the map.
    pub f_shift: Exp,
    /// Valuations removed from `f` and `g` (at `i0`).
    pub f_val: Q,
    pub g_val: Q,
    /// The endpoint of `Φ₂` sent to the origin, and the other one.
    pub i0: Exp,
    pub i1: Exp,
    pub f: LaurentPoly2,
    pub g: LaurentPoly2,
    pub apex_plus: Exp,
    pub apex_minus: Option<Exp>,
}

fn apex_in_g_coords(a: &Apex, f_shift: Exp) -> Exp {
    match a.owner {
        Owner::F => add_e(a.exp, f_shift),
        Owner::G => a.exp,
    }
}

/// The standard frame for `L` with `i0` (an endpoint of `Φ₂(L)`) at the
/// origin.
pub fn normalize(f: &LaurentPoly2, g: &LaurentPoly2, l: &ComponentGeometry, i0: Exp) -> Result<Frame> {
    let (Some(phi1), Some(phi2), Some(ap)) = (l.phi1, l.phi2, l.apex_plus) else {
        return Err(Error::NotALsComponent(l.index));
    };
    let i1 = if phi2.0 == i0 {
        phi2.1
    } else if phi2.1 == i0 {
        phi2.0
    } else {
        return Err(Error::HypothesisViolation(format!(
            "{i0:?} is not an endpoint of the dual edge {phi2:?}"
        )));
    };
    let v = sub_e(i1, i0);
    let f_shift = if sub_e(phi1.1, phi1.0) == v {
        sub_e(i0, phi1.0)
    } else if sub_e(phi1.0, phi1.1) == v {
        sub_e(i0, phi1.1)
    } else {
        return Err(Error::HypothesisViolation(format!(
            "dual edges {phi1:?} and {phi2:?} are not translates"
        )));
    };
    let fs = f.map_exponents(|e| add_e(e, f_shift));
    let val_at = |p: &LaurentPoly2, e: Exp, name: &str| -> Result<Q> {
        p.coef(e)
            .ok_or_else(|| Error::HypothesisViolation(format!("{name} has no coefficient at {e:?}")))?
            .exact_val()
    };
    let f_val = val_at(&fs, i0, "f")?;
    let g_val = val_at(g, i0, "g")?;
    let mut map = unimodular_to_e1(i0, i1)?;
    let plus = map.apply(apex_in_g_coords(&ap, f_shift));
    if plus.1 == -1 {
        map = map.flip_second();
    } else if plus.1 != 1 {
        return Err(Error::HypothesisViolation(format!(
            "apex at the upper endpoint sits at height {}",
            plus.1
        )));
    }
    let apex_plus = map.apply(apex_in_g_coords(&ap, f_shift));
    let apex_minus = l.apex_minus.map(|a| map.apply(apex_in_g_coords(&a, f_shift)));
    if let Some(m) = apex_minus {
        if m.1 != -1 {
            return Err(Error::HypothesisViolation(format!(
                "apex at the lower endpoint sits at height {}",
                m.1
            )));
        }
    }
    let frame = Frame {
        f: fs.shift_t(&-&f_val).transform(&map),
        g: g.shift_t(&-&g_val).transform(&map),
        map,
        f_shift,
        f_val,
        g_val,
        i0,
        i1,
        apex_plus,
        apex_minus,
    };
    frame.check(l)?;
    Ok(frame)
}

impl Frame {
    /// The endpoint valuations match and `P₊` lies over the edge.
    fn check(&self, l: &ComponentGeometry) -> Result<()> {
        let v = |p: &LaurentPoly2, e: Exp| p.coef(e).map(|c| c.exact_val()).transpose();
        let (c10, d10) = (v(&self.f, (1, 0))?, v(&self.g, (1, 0))?);
        if c10.is_none() || c10 != d10 {
            return Err(Error::HypothesisViolation("coefficients at (1,0) do not match".into()));
        }
        let plus = self.map.point(l.plus().expect("selectable components have an endpoint"));
        if Some(&plus.x) != c10.as_ref() {
            return Err(Error::HypothesisViolation(format!(
                "upper endpoint maps to x = {}, expected {}",
                fmt_q(&plus.x),
                fmt_q(c10.as_ref().unwrap())
            )));
        }
        Ok(())
    }

    pub fn seg(&self) -> (Exp, Exp) {
        ((0, 0), (1, 0))
    }
}

/// The eliminant together with the two reductions it was built from.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub poly: LaurentPoly2,
    pub g_red: Reduction,
    pub f_red: Reduction,
    /// `g + h'(x^v) f` and `f + h(x^v) f`.
    pub g_lambda: LaurentPoly2,
    pub f_lambda: LaurentPoly2,
}

impl Elimination {
    /// Coefficient at `seg.0`, zero when absent.
    pub fn e0(&self, seg: (Exp, Exp)) -> PuiseuxScalar {
        self.poly.coef(seg.0).cloned().unwrap_or_else(PuiseuxScalar::zero)
    }

    /// The line carries nothing but the endpoints, exactly, in both reduced
    /// inputs.
    pub fn stabilized(&self) -> bool {
        let bare = |r: &Reduction| r.reduced.keys().all(|&n| n == 0 || n == 1);
        bare(&self.g_red) && bare(&self.f_red)
    }
}

/// `G = g_λ − (d'_{i1} / c'_{i1}) f_λ` with the coefficient at `i1` set to
/// an exact zero.
pub fn eliminate(lambda: &Q, g: &LaurentPoly2, f: &LaurentPoly2, seg: (Exp, Exp), rel: &Q) -> Result<Elimination> {
    let (i0, i1) = seg;
    let v = sub_e(i1, i0);
    let g_red = reduce(lambda, g, f, seg, rel)?;
    let f_red = reduce(lambda, f, f, seg, rel)?;
    let g_lambda = g.add(&f.mul_line_poly(&g_red.h, v));
    let f_lambda = f.add(&f.mul_line_poly(&f_red.h, v));
    let c1 = f_lambda
        .coef(i1)
        .ok_or(Error::MissingEndpointCoefficient(i1))?;
    let d1 = g_lambda
        .coef(i1)
        .ok_or(Error::MissingEndpointCoefficient(i1))?;
    let quotient = d1 * &c1.inv(rel)?;
    let mut poly = g_lambda.add(&f_lambda.mul_monomial(&-&quotient, (0, 0)));
    poly.set(i1, PuiseuxScalar::zero());
    Ok(Elimination {
        poly,
        g_red,
        f_red,
        g_lambda,
        f_lambda,
    })
}

/// `G(λ; g; f; seg)`.
pub fn build_g(lambda: &Q, g: &LaurentPoly2, f: &LaurentPoly2, seg: (Exp, Exp), rel: &Q) -> Result<LaurentPoly2> {
    Ok(eliminate(lambda, g, f, seg, rel)?.poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::intersect::{classify, ComponentKind};
    use crate::rational::{q, qi};

    #[test]
    fn shared_ray_eliminates_exactly() {
        let f = fixtures::line(PuiseuxScalar::one(), PuiseuxScalar::one());
        let g = LaurentPoly2::new([
            ((1, 0), PuiseuxScalar::one()),
            ((0, 1), PuiseuxScalar::one()),
            ((0, 0), PuiseuxScalar::t_pow(qi(-1))),
        ]);
        let e = eliminate(&qi(0), &g, &f, ((1, 0), (0, 1)), &qi(20)).unwrap();
        assert!(e.g_red.h.is_zero() && e.f_red.h.is_zero());
        assert_eq!(e.poly, g.add(&f.mul_monomial(&-&PuiseuxScalar::one(), (0, 0))));
        assert!(e.poly.coef((1, 0)).is_none());
        assert!(e.poly.coef((0, 1)).is_none());
    }

    #[test]
    fn ex1_frame_and_constant_term() {
        let a = &PuiseuxScalar::one() + &PuiseuxScalar::t_pow(q(1, 4));
        let (f, g) = fixtures::ex1(a.clone(), PuiseuxScalar::one());
        let r = classify(&f, &g).unwrap();
        for l in r.components.iter().filter(|c| c.kind == ComponentKind::Segment2) {
            let fr = normalize(&f, &g, l, (0, 0)).unwrap();
            assert_eq!(fr.apex_plus.1, 1);
            assert_eq!(fr.apex_minus.map(|m| m.1), Some(-1));
            let e = eliminate(&qi(0), &fr.g, &fr.f, fr.seg(), &qi(20)).unwrap();
            let e00 = e.e0(fr.seg());
            assert_eq!(e00, &PuiseuxScalar::one() - &a);
        }
    }
}
