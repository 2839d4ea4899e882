//! Piecewise-linear fuzzy sets and the numeric primitives the interpolation
//! methods are built from.

mod cuts;
mod defuzz;
mod distance;
mod levels;
mod set;

pub use cuts::{set_from_alpha_cuts, AlphaCut, AssembledSet};
pub use defuzz::{cog_defuzzify, cog_from_samples, sample_points, DEFAULT_NUM_POINTS};
pub use distance::{lower_upper_distance, minkowski_distance, power_mean};
pub use levels::{breakpoint_levels, generate_levels, AlphaLevelScheme, DEFAULT_USER_LEVELS};
pub use set::{CnfReport, CnfViolation, PiecewiseLinearFuzzySet, ReferencePointKind};

use thiserror::Error;

/// Absolute tolerance for ordering and nesting checks on breakpoint
/// coordinates.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("α level {0} is outside [0, 1]")]
    LevelOutOfRange(f64),
    #[error("invalid fuzzy set: {0}")]
    InvalidSet(CnfReport),
    #[error("duplicate x = {x} with conflicting membership values {first} and {second}")]
    ConflictingDuplicate { x: f64, first: f64, second: f64 },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("α-cut list is missing level {0}")]
    MissingLevel(f64),
    #[error("α-cuts are not sorted by level")]
    UnsortedCuts,
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Minkowski exponent must be >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("user-defined α-level count must be >= 2, got {0}")]
    TooFewLevels(usize),
    #[error("number of sample points must be >= 2, got {0}")]
    TooFewPoints(usize),
}
