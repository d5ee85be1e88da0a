use thiserror::Error;

use crate::intersect::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by an exact zero")]
    ZeroDivision,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("direction {0:?} is not primitive")]
    NotPrimitive((i64, i64)),
    #[error("no coefficient at endpoint {0:?}")]
    MissingEndpointCoefficient((i64, i64)),
    #[error("edges are parallel")]
    ParallelEdges,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("component {0} is neither a multiplicity-1 ray nor a multiplicity-2 segment")]
    NotALsComponent(usize),
    #[error("target point ({0}) does not lie on the component")]
    TargetOffComponent(String),
    #[error("divisor restriction is not valid: {0}")]
    InvalidRestriction(String),
    #[error("divisor rejected with {} violation(s)", .0.len())]
    InvalidDivisor(Vec<Violation>),
    #[error("selected components {components:?} share the dual simplex {simplex:?}")]
    InjectivityFailure {
        simplex: ((i64, i64), (i64, i64)),
        components: Vec<usize>,
    },
    #[error("dual simplexes of the selection contain the cycle {cycle:?}")]
    CycleFailure { cycle: Vec<(i64, i64)> },
    #[error("no admissible vertex order: {0}")]
    OrderingFailure(String),
    #[error("component {component}: target distance {dist} is not below the margin {margin}")]
    MuBound {
        component: usize,
        dist: String,
        margin: String,
    },
    #[error("verification failed on component {0}")]
    VerificationMismatch(usize),
    #[error("polynomial has empty support")]
    EmptyPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short stable name used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDivision => "ZeroDivision",
            Error::InsufficientPrecision(_) => "InsufficientPrecision",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::MissingEndpointCoefficient(_) => "MissingEndpointCoefficient",
            Error::ParallelEdges => "ParallelEdges",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::NotALsComponent(_) => "NotALsComponent",
            Error::TargetOffComponent(_) => "TargetOffComponent",
            Error::InvalidRestriction(_) => "InvalidRestriction",
            Error::InvalidDivisor(_) => "InvalidDivisor",
            Error::InjectivityFailure { .. } => "InjectivityFailure",
            Error::CycleFailure { .. } => "CycleFailure",
            Error::OrderingFailure(_) => "OrderingFailure",
            Error::MuBound { .. } => "MuBoundFailure",
            Error::VerificationMismatch(_) => "VerificationMismatch",
            Error::EmptyPolynomial => "EmptyPolynomial",
            Error::Parse(_) => "ParseError",
        }
    }

    /// Process exit code used by the command line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidDivisor(_)
            | Error::InvalidRestriction(_)
            | Error::TargetOffComponent(_)
            | Error::NotALsComponent(_)
            | Error::VerificationMismatch(_) => 2,
            Error::InjectivityFailure { .. }
            | Error::CycleFailure { .. }
            | Error::OrderingFailure(_)
            | Error::MuBound { .. }
            | Error::HypothesisViolation(_) => 3,
            Error::InsufficientPrecision(_) => 4,
            Error::Parse(_) | Error::EmptyPolynomial => 5,
            _ => 1,
        }
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::InsufficientPrecision(_))
    }
}
