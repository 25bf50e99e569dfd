use std::borrow::Borrow;
use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{solve_full_column_rank, solve_linear_system, GeometryError, RationalMatrix, RationalVector};
use crate::rational::Rational;

/// Minimum-norm point of an affine hull together with its affine
/// coefficients (`Σ coefficients = 1`, `point = Σ coefficients_i · p_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMinimizer {
    pub point: RationalVector,
    pub coefficients: Vec<Rational>,
}

impl AffineMinimizer {
    /// All coefficients strictly positive: the point lies in the relative
    /// interior of the convex hull.
    pub fn is_strictly_convex(&self) -> bool {
        self.coefficients.iter().all(|a| *a > Rational::zero())
    }

    pub fn is_convex(&self) -> bool {
        self.coefficients.iter().all(|a| *a >= Rational::zero())
    }
}

fn check_dims<P: Borrow<RationalVector>>(points: &[P]) -> Result<usize, GeometryError> {
    let dim = points.first().ok_or(GeometryError::Empty)?.borrow().dim();
    for (index, p) in points.iter().enumerate() {
        let found = p.borrow().dim();
        if found != dim {
            return Err(GeometryError::DimensionMismatch {
                index,
                expected: dim,
                found,
            });
        }
    }
    Ok(dim)
}

/// Affine minimizer of an affinely independent point set, from the exact
/// bordered-Gram KKT system
///
/// ```text
/// [ G  1 ] [ α ]   [ 0 ]
/// [ 1ᵀ 0 ] [ μ ] = [ 1 ]      G_ij = p_i · p_j
/// ```
///
/// The system is singular exactly when the points are affinely dependent.
pub fn affine_minimizer<P: Borrow<RationalVector>>(points: &[P]) -> Result<AffineMinimizer, GeometryError> {
    check_dims(points)?;
    let k = points.len();
    if k == 1 {
        return Ok(AffineMinimizer {
            point: points[0].borrow().clone(),
            coefficients: vec![Rational::one()],
        });
    }
    let mut kkt = RationalMatrix::zeros(k + 1, k + 1);
    for i in 0..k {
        for j in i..k {
            let g = points[i].borrow().dot(points[j].borrow());
            kkt[(j, i)] = g.clone();
            kkt[(i, j)] = g;
        }
        kkt[(i, k)] = Rational::one();
        kkt[(k, i)] = Rational::one();
    }
    let mut rhs = RationalVector::zeros(k + 1).into_coords();
    rhs[k] = Rational::one();
    let solution = solve_linear_system(&kkt, &RationalVector::new(rhs)).ok_or(GeometryError::AffinelyDependent)?;
    let mut coefficients = solution.into_coords();
    coefficients.truncate(k);
    let refs: Vec<&RationalVector> = points.iter().map(Borrow::borrow).collect();
    let point = RationalVector::combination(&refs, &coefficients);
    Ok(AffineMinimizer { point, coefficients })
}

/// Coefficients `λ` with `Σ λ_i p_i = target` and `Σ λ_i = 1`, for
/// affinely independent `points` and `target` in their affine hull.
pub fn barycentric_coordinates<P: Borrow<RationalVector>>(
    points: &[P],
    target: &RationalVector,
) -> Result<Vec<Rational>, GeometryError> {
    let dim = check_dims(points)?;
    if target.dim() != dim {
        return Err(GeometryError::DimensionMismatch {
            index: points.len(),
            expected: dim,
            found: target.dim(),
        });
    }
    let lifted: Vec<RationalVector> = points.iter().map(|p| p.borrow().concat(&[Rational::one()])).collect();
    let matrix = RationalMatrix::from_columns(&lifted);
    solve_full_column_rank(&matrix, &target.concat(&[Rational::one()]))
        .map(RationalVector::into_coords)
        .ok_or(GeometryError::AffinelyDependent)
}

/// Minimum-norm point of the line through distinct `a` and `b`:
/// `λa + (1−λ)b` with `λ = b·(b−a)/‖b−a‖²`.
pub fn min_norm_on_line(a: &RationalVector, b: &RationalVector) -> Result<(RationalVector, Rational), GeometryError> {
    check_dims(&[a, b])?;
    let diff = b - a;
    let denom = diff.norm_squared();
    if denom.is_zero() {
        return Err(GeometryError::EqualPoints);
    }
    let lambda = b.dot(&diff) / denom;
    Ok((a.lerp(b, &lambda), lambda))
}

/// Indices `j` with `p_j · x < ‖x‖²`: the points violating Wolfe's
/// optimality criterion at `x`.
pub fn wolfe_violators<P: Borrow<RationalVector>>(x: &RationalVector, points: &[P]) -> Vec<usize> {
    let threshold = x.norm_squared();
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let p: &RationalVector = (*p).borrow();
            p.dot(x).cmp(&threshold) == Ordering::Less
        })
        .map(|(j, _)| j)
        .collect()
}

/// `p_i · x = ‖x‖²` for every point: `x` is the minimum-norm point of the
/// affine hull (when it lies in it).
pub fn affine_criterion_holds<P: Borrow<RationalVector>>(x: &RationalVector, points: &[P]) -> bool {
    let threshold = x.norm_squared();
    points.iter().all(|p| {
        let p: &RationalVector = p.borrow();
        p.dot(x) == threshold
    })
}
