//! Exact tropical plane curve intersections and the lifting of target
//! divisors on multiplicity-1 rays and multiplicity-2 segments.
//!
//! The crate works over Puiseux series with rational coefficients and
//! exponents ([`puiseux`]). Tropical polynomials and curves live in
//! [`troppoly`] and [`geometry`]. Intersections, stable intersection divisors
//! and component classification are in [`intersect`]. The reduction, the
//! per-component solver and the lifting pipeline are in [`lifting`].

pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod intersect;
pub mod json;
pub mod lifting;
pub mod puiseux;
pub mod rational;
pub mod troppoly;

pub use error::{Error, Result};
pub use geometry::{
    check_smooth, curve_complex, dual_subdivision, lattice_dist, unimodular_to_e1, CurveComplex,
    DualSubdivision, Exp, LatticeAffineMap, Point, Transform,
};
pub use intersect::{
    classify, components, dist_de, stable_divisor, transverse_mult, validate_divisor,
    ComponentGeometry, ComponentKind, Divisor, IntersectionReport, ValidationResult,
};
pub use lifting::{
    adjust_coefficient, build_g, check_line_smooth, lift, plan_order, reduce, solve_component, verify_divisor,
    ComponentSolution, LiftConfig, LiftResult, Mode, OrderPlan,
};
pub use puiseux::{PuiseuxScalar, ValResult};
pub use rational::{Q, QInf};
pub use troppoly::{mu, mu_n, tau, tau_line, trop_eval, tropicalize, LaurentPoly2, TropPoly2, Tropical};
