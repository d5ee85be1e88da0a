//! Reduction, per-component solving and the lifting pipeline.

pub mod lift;
pub mod normalize;
pub mod plan;
pub mod reduce;
pub mod solve;

pub use lift::{check_line_smooth, lift, verify_divisor, LiftConfig, LiftResult, LineSmoothReport, VerifyRecord};
pub use normalize::{build_g, eliminate, normalize, Elimination, Frame};
pub use plan::{plan_order, Mode, OrderPlan, PlanStep};
pub use reduce::{line_coeffs, reduce, reduce_line, LineCoeffs, Reduction, ReductionStep};
pub use solve::{adjust_coefficient, solve_component, ComponentSolution, Patch, SolveStatus};
