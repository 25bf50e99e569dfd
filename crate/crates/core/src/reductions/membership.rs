use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ReductionError;
use crate::geometry::{
    affinely_independent, gram_schmidt_complement, solve_full_column_rank, RationalMatrix, RationalVector,
};
use crate::rational::{int, Rational};
use crate::wolfe::{solve_quiet, InsertionRule, Instance};

/// Decides whether the origin lies in the convex hull of a point set.
pub trait MembershipOracle {
    fn contains_origin(&mut self, points: &[RationalVector]) -> Result<bool, ReductionError>;
}

impl<F> MembershipOracle for F
where
    F: FnMut(&[RationalVector]) -> Result<bool, ReductionError>,
{
    fn contains_origin(&mut self, points: &[RationalVector]) -> Result<bool, ReductionError> {
        self(points)
    }
}

/// Result of the redundancy pass: convex coefficients over all input
/// points, nonzero exactly on `kept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyResult {
    pub coefficients: RationalVector,
    pub kept: Vec<usize>,
    pub oracle_calls: usize,
}

/// Finds `x ≥ 0`, `Σ x = 1`, `Σ x_i p_i = 0` with a membership oracle.
///
/// One call on the whole set (NO ends the search), then for each point in
/// order: drop it if the origin stays in the hull without it. The survivors
/// are affinely independent with the origin in their relative interior, so
/// a square-or-tall exact solve recovers the coefficients. An empty set
/// counts as NO.
pub fn zvpm_to_zvpmd<O: MembershipOracle + ?Sized>(
    points: &[RationalVector],
    oracle: &mut O,
) -> Result<Option<RedundancyResult>, ReductionError> {
    if points.is_empty() || !oracle.contains_origin(points)? {
        return Ok(None);
    }
    let mut calls = 1;
    let mut kept: Vec<usize> = (0..points.len()).collect();
    for i in 0..points.len() {
        let without: Vec<usize> = kept.iter().copied().filter(|&k| k != i).collect();
        if without.is_empty() {
            continue;
        }
        let subset: Vec<RationalVector> = without.iter().map(|&k| points[k].clone()).collect();
        calls += 1;
        if oracle.contains_origin(&subset)? {
            kept = without;
        }
    }
    let lifted: Vec<RationalVector> = kept.iter().map(|&k| points[k].concat(&[Rational::one()])).collect();
    let rhs = RationalVector::zeros(points[0].dim()).concat(&[Rational::one()]);
    let local = solve_full_column_rank(&RationalMatrix::from_columns(&lifted), &rhs)
        .ok_or(ReductionError::RedundancySystem { kept: kept.len() })?;
    if local.coords().iter().any(|v| !v.is_positive()) {
        return Err(ReductionError::RedundancySystem { kept: kept.len() });
    }
    let mut full = vec![Rational::zero(); points.len()];
    for (&k, v) in kept.iter().zip(local.into_coords()) {
        full[k] = v;
    }
    Ok(Some(RedundancyResult {
        coefficients: RationalVector::new(full),
        kept,
        oracle_calls: calls,
    }))
}

/// `T`, `ε = 1/(n·d·(dT)^d)` and the decision threshold
/// `1/(d·(dT)^{2d})` for `n` points in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftParameters {
    /// Largest absolute numerator or denominator over all coordinates.
    pub t: BigInt,
    pub epsilon: Rational,
    pub threshold: Rational,
}

impl LiftParameters {
    pub fn of(points: &[RationalVector]) -> Self {
        let n = points.len();
        let d = points.first().map_or(1, RationalVector::dim).max(1);
        let t = points
            .iter()
            .flat_map(|p| p.coords())
            .flat_map(|v| [v.numer().abs(), v.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::one);
        let dt_d: BigInt = num_traits::pow(BigInt::from(d) * &t, d);
        let epsilon = Rational::new(BigInt::one(), BigInt::from(n * d) * &dt_d);
        let threshold = Rational::new(BigInt::one(), BigInt::from(d) * &dt_d * &dt_d);
        Self { t, epsilon, threshold }
    }
}

/// Affinely independent lift of a point set: the columns of
///
/// ```text
/// B = [ v_1 .. v_d ; ε·v_{d+1} .. ε·v_{d+t} ]
/// ```
///
/// where `v_1..v_d` are the coordinate rows and `v_{d+1}..v_{d+t}` an
/// orthogonal basis of the complement of `span(1, v_1..v_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvsInstance {
    pub points: Vec<RationalVector>,
    pub parameters: LiftParameters,
    /// Number of added coordinates `t`.
    pub lift_rows: usize,
}

pub fn lift_to_simplex(points: &[RationalVector]) -> Result<DvsInstance, ReductionError> {
    let n = points.len();
    let d = points.first().ok_or(ReductionError::EmptyPointSet)?.dim();
    let parameters = LiftParameters::of(points);
    let mut rows = vec![RationalVector::new(vec![int(1); n])];
    rows.extend((0..d).map(|i| RationalVector::new(points.iter().map(|p| p[i].clone()).collect())));
    let complement = gram_schmidt_complement(&rows, n);
    let lift_rows = complement.len();
    let b_rows: Vec<RationalVector> = rows[1..]
        .iter()
        .cloned()
        .chain(complement.iter().map(|v| v.scaled(&parameters.epsilon)))
        .collect();
    let b = RationalMatrix::from_rows(&b_rows.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>());
    let lifted: Vec<RationalVector> = (0..n).map(|j| b.column(j)).collect();
    let mut with_ones = b_rows;
    with_ones.push(RationalVector::new(vec![int(1); n]));
    let check = RationalMatrix::from_rows(&with_ones.iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>());
    if check.rank() != n {
        return Err(ReductionError::LiftNotIndependent);
    }
    Ok(DvsInstance {
        points: lifted,
        parameters,
        lift_rows,
    })
}

/// Squared distance from the origin to the simplex spanned by affinely
/// independent points, computed with Wolfe's method.
pub fn dvs_answer(points: &[RationalVector]) -> Result<Rational, ReductionError> {
    if points.is_empty() {
        return Err(ReductionError::EmptyPointSet);
    }
    if !affinely_independent(points) {
        return Err(ReductionError::NotASimplex);
    }
    let instance = Instance::new(points.to_vec())?;
    Ok(solve_quiet(&instance, InsertionRule::MinNorm)?.norm_squared)
}

/// Membership of the origin decided by one distance-to-simplex query on
/// the lifted points: YES iff the squared distance is below the
/// threshold.
pub fn zvpmd_via_dvs<F>(points: &[RationalVector], mut dvs: F) -> Result<bool, ReductionError>
where
    F: FnMut(&[RationalVector]) -> Result<Rational, ReductionError>,
{
    if points.is_empty() {
        return Ok(false);
    }
    let lifted = lift_to_simplex(points)?;
    let distance = dvs(&lifted.points)?;
    Ok(distance < lifted.parameters.threshold)
}

/// Membership decided by Wolfe's method on the raw points: YES iff the
/// minimum-norm point is the origin.
pub fn direct_membership(points: &[RationalVector]) -> Result<bool, ReductionError> {
    if points.is_empty() {
        return Ok(false);
    }
    let instance = Instance::new(points.to_vec())?;
    Ok(solve_quiet(&instance, InsertionRule::MinNorm)?.x.is_zero())
}
