//! Exact-arithmetic Wolfe method for the minimum-norm point of a polytope
//! given by its vertices, the recursive family of instances on which the
//! minnorm insertion rule visits exponentially many corrals, and the chain
//! of strongly-polynomial reductions from linear programming down to
//! distance-to-a-simplex.

pub mod geometry;
pub mod hard;
pub mod io;
pub mod rational;
pub mod reductions;
pub mod wolfe;

pub use geometry::{RationalMatrix, RationalVector};
pub use rational::Rational;
pub use wolfe::{solve, InsertionRule, Instance, Solution};
