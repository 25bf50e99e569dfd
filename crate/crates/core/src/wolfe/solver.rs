use std::borrow::Borrow;

use num_traits::{One, Zero};

use super::kernel::{self, GramKernel};
use super::{InsertionRule, Instance, TraceEvent, WolfeError};
use crate::geometry::{affine_minimizer, barycentric_coordinates, wolfe_violators, GeometryError, RationalVector};
use crate::rational::Rational;

/// Potential corral `I`, its convex coefficients and the current point
/// `x = Σ λ_i p_i`. `corral` keeps insertion order; `lambda` is aligned
/// with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState {
    pub corral: Vec<usize>,
    pub lambda: Vec<Rational>,
    pub x: RationalVector,
}

impl SolverState {
    fn points<'a>(&self, instance: &'a Instance) -> Vec<&'a RationalVector> {
        self.corral.iter().map(|&i| instance.point(i)).collect()
    }
}

/// Result of a finished run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Minimum-norm point of the polytope.
    pub x: RationalVector,
    pub norm_squared: Rational,
    /// Final corral, in insertion order.
    pub corral: Vec<usize>,
    /// Strictly positive coefficients of `x` over `corral`.
    pub lambda: Vec<Rational>,
    pub major_cycles: usize,
    pub minor_cycles: usize,
    /// Corrals reached, counting the initial singleton.
    pub corrals_visited: usize,
}

/// Index of a point of least norm, smallest index on ties.
pub fn initial_point(instance: &Instance) -> usize {
    (0..instance.len())
        .min_by(|&a, &b| instance.norm_squared(a).cmp(instance.norm_squared(b)).then(a.cmp(&b)))
        .expect("instances are never empty")
}

/// Improving point chosen by `rule` at `x`, or `None` when `x` satisfies
/// Wolfe's criterion.
pub fn select_entering(instance: &Instance, x: &RationalVector, rule: InsertionRule) -> Option<usize> {
    let violators = wolfe_violators(x, instance.points());
    match rule {
        InsertionRule::MinNorm => violators
            .into_iter()
            .min_by(|&a, &b| instance.norm_squared(a).cmp(instance.norm_squared(b)).then(a.cmp(&b))),
        InsertionRule::LinOpt => violators
            .into_iter()
            .map(|j| (instance.point(j).dot(x), j))
            .min()
            .map(|(_, j)| j),
    }
}

/// One minor cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorStep {
    /// State after the removal; `state.x` is the point `z` on `[x, y]`.
    pub state: SolverState,
    pub removed: usize,
    pub theta: Rational,
}

/// Moves from `state.x` towards `y = Σ alpha_i p_i` until the boundary of
/// the current hull,
///
/// ```text
/// θ = min_{i : α_i ≤ 0} λ_i / (λ_i − α_i),     z = θy + (1−θ)x,
/// ```
///
/// and drops the smallest-index point whose weight `θα_i + (1−θ)λ_i`
/// vanishes. The coefficients of `z` over the reduced set come from an
/// exact solve.
pub fn minor_step(instance: &Instance, state: &SolverState, alpha: &[Rational]) -> Result<MinorStep, WolfeError> {
    assert_eq!(
        alpha.len(),
        state.corral.len(),
        "one affine coefficient per corral point"
    );
    let zero = Rational::zero();
    let theta = state
        .lambda
        .iter()
        .zip(alpha)
        .filter(|(_, a)| **a <= zero)
        .map(|(l, a)| if l.is_zero() { zero.clone() } else { l / (l - a) })
        .min()
        .ok_or(WolfeError::NoNonpositiveCoefficient)?;
    let points = state.points(instance);
    let y = RationalVector::combination(&points, alpha);
    let z = y.lerp(&state.x, &theta);
    let one_minus = Rational::one() - &theta;
    let weights: Vec<Rational> = state
        .lambda
        .iter()
        .zip(alpha)
        .map(|(l, a)| &theta * a + &one_minus * l)
        .collect();
    let (position, removed) = state
        .corral
        .iter()
        .enumerate()
        .filter(|(k, _)| weights[*k].is_zero())
        .map(|(k, &i)| (k, i))
        .min_by_key(|&(_, i)| i)
        .expect("the minimizing ratio always zeroes a weight");
    let mut corral = state.corral.clone();
    corral.remove(position);
    let remaining: Vec<&RationalVector> = corral.iter().map(|&i| instance.point(i)).collect();
    let lambda = barycentric_coordinates(&remaining, &z)?;
    debug_assert!(lambda
        .iter()
        .zip(
            weights
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != position)
                .map(|(_, w)| w)
        )
        .all(|(a, b)| a == b));
    Ok(MinorStep {
        state: SolverState { corral, lambda, x: z },
        removed,
        theta,
    })
}

/// Whether an affinely independent set is a corral: its affine minimizer
/// has strictly positive coefficients.
pub fn is_corral<P: Borrow<RationalVector>>(points: &[P]) -> Result<bool, GeometryError> {
    Ok(affine_minimizer(points)?.is_strictly_convex())
}

/// Runs Wolfe's method and collects the full trace.
pub fn solve(instance: &Instance, rule: InsertionRule) -> Result<(Solution, Vec<TraceEvent>), WolfeError> {
    let mut trace = Vec::new();
    let solution = solve_observed(instance, rule, |e| trace.push(e.clone()))?;
    Ok((solution, trace))
}

/// Runs Wolfe's method, handing each trace event to `observer` as it
/// happens.
pub fn solve_observed<F: FnMut(&TraceEvent)>(
    instance: &Instance,
    rule: InsertionRule,
    mut observer: F,
) -> Result<Solution, WolfeError> {
    let kernel = GramKernel::new(instance.points());
    let result = kernel::run(&kernel, rule, |e| {
        observer(&TraceEvent {
            kind: e.kind,
            major: e.major,
            minor: e.minor,
            entering: e.entering,
            leaving: e.leaving,
            corral: e.corral.to_vec(),
            x: kernel.combine(e.corral, e.x),
            y: e.y.map(|y| kernel.combine(e.corral, y)),
            theta: e.theta.map(|(p, q)| kernel::ratio(p, q)),
        })
    })?;
    Ok(finish(&kernel, result))
}

/// Runs Wolfe's method without building trace events.
pub fn solve_quiet(instance: &Instance, rule: InsertionRule) -> Result<Solution, WolfeError> {
    let kernel = GramKernel::new(instance.points());
    let result = kernel::run(&kernel, rule, |_| {})?;
    Ok(finish(&kernel, result))
}

fn finish(kernel: &GramKernel, result: kernel::KernelResult) -> Solution {
    Solution {
        x: kernel.combine(&result.corral, &result.lambda),
        norm_squared: kernel.norm_squared(&result.corral, &result.lambda),
        lambda: result.lambda.to_rationals(),
        corral: result.corral,
        major_cycles: result.major_cycles,
        minor_cycles: result.minor_cycles,
        corrals_visited: result.corrals_visited,
    }
}
