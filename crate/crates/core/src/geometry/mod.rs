//! Exact rational linear algebra and the affine/convex optimality tests
//! the Wolfe solver is built on. There is no tolerance anywhere here:
//! every comparison is an exact sign decision.

mod affine;
mod gram_schmidt;
mod matrix;
mod vector;

pub use affine::{
    affine_criterion_holds, affine_minimizer, barycentric_coordinates, min_norm_on_line, wolfe_violators,
    AffineMinimizer,
};
pub use gram_schmidt::gram_schmidt_complement;
pub use matrix::{solve_full_column_rank, solve_linear_system, RationalMatrix};
pub use vector::RationalVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("empty point set")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("points are affinely dependent")]
    AffinelyDependent,
    #[error("line through two equal points")]
    EqualPoints,
}

/// True when the points are affinely independent (columns of the point
/// matrix with a ones-row appended are linearly independent).
pub fn affinely_independent<P: AsRef<RationalVector>>(points: &[P]) -> bool {
    if points.is_empty() {
        return true;
    }
    let lifted: Vec<RationalVector> = points
        .iter()
        .map(|p| p.as_ref().concat(&[crate::rational::int(1)]))
        .collect();
    RationalMatrix::from_columns(&lifted).rank() == points.len()
}
