//! Intersections of two tropical curves: components, stable intersection
//! divisors, classification and target validation.

pub mod classify;
pub mod components;
pub mod divisor;
pub mod stable;

pub use classify::{
    classify, classify_trop, dist_de, validate_divisor, Apex, ComponentGeometry, ComponentKind,
    IntersectionReport, Owner, ValidationResult, Violation,
};
pub use components::{components, components_of, is_point, meet, Carrier, Component, Piece};
pub use divisor::Divisor;
pub use stable::{local_multiplicity, stable_divisor, stable_divisor_of, transverse_mult};
