//! Wolfe's method as an exact state machine.
//!
//! A run starts from the point of least norm, then alternates major
//! cycles (insert an improving point chosen by an [`InsertionRule`]) and
//! minor cycles (walk from the current point towards the affine minimizer
//! and drop a point whenever the walk hits a face), until Wolfe's
//! criterion certifies optimality. Every step is recorded as a
//! [`TraceEvent`].

mod brute;
mod instance;
mod kernel;
mod solver;
mod trace;

use std::fmt;
use std::str::FromStr;

pub use brute::{brute_force_min_norm, brute_force_min_norm_capped, BRUTE_FORCE_CAP};
pub use instance::{Instance, InstanceError};
pub use solver::{
    initial_point, is_corral, minor_step, select_entering, solve, solve_observed, solve_quiet, MinorStep, Solution,
    SolverState,
};
pub use trace::{EventKind, TraceEvent, TraceFormat};

use crate::geometry::GeometryError;

/// Which improving point enters the potential corral in a major cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[non_exhaustive]
pub enum InsertionRule {
    /// Improving point of least norm.
    MinNorm,
    /// Improving point minimizing `x · p`.
    LinOpt,
}

impl InsertionRule {
    pub const ALL: [InsertionRule; 2] = [InsertionRule::MinNorm, InsertionRule::LinOpt];

    pub fn name(self) -> &'static str {
        match self {
            InsertionRule::MinNorm => "minnorm",
            InsertionRule::LinOpt => "linopt",
        }
    }
}

impl fmt::Display for InsertionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InsertionRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "minnorm" => Ok(InsertionRule::MinNorm),
            "linopt" => Ok(InsertionRule::LinOpt),
            other => Err(format!("unknown insertion rule {other:?} (expected minnorm or linopt)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WolfeError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    /// The potential corral stopped being affinely independent. Exact
    /// arithmetic rules this out, so it signals a bug.
    #[error("potential corral {corral:?} became affinely dependent in major cycle {major}")]
    LostIndependence { major: usize, corral: Vec<usize> },
    #[error("minor step needs a nonpositive affine coefficient")]
    NoNonpositiveCoefficient,
    #[error("brute force limited to {cap} points, instance has {points}")]
    TooLarge { points: usize, cap: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
