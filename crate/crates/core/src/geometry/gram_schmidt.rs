use num_traits::Zero;

use super::RationalVector;
use crate::rational::Rational;

/// Orthogonal basis of the orthogonal complement of `span(rows)` in `Q^n`.
///
/// Runs unnormalized Gram-Schmidt over `rows` followed by `e_1..e_n`,
/// dropping zero residuals, and keeps the residuals that came from the
/// standard basis. Each returned vector is divided by its 1-norm, which
/// bounds its 2-norm, so `‖v‖₂ ≤ 1` holds without square roots.
pub fn gram_schmidt_complement(rows: &[RationalVector], n: usize) -> Vec<RationalVector> {
    for r in rows {
        assert_eq!(r.dim(), n, "gram_schmidt_complement row of wrong dimension");
    }
    let mut basis = Vec::new();
    for r in rows {
        orthogonalize(r.clone(), &mut basis);
    }
    (0..n)
        .filter_map(|i| orthogonalize(RationalVector::unit(n, i), &mut basis))
        .map(|v| {
            let scale = v.norm1().recip();
            v.scaled(&scale)
        })
        .collect()
}

/// Subtracts the projections onto `basis` (pairs of vector and squared
/// norm); a nonzero residual is appended to `basis` and returned.
fn orthogonalize(v: RationalVector, basis: &mut Vec<(RationalVector, Rational)>) -> Option<RationalVector> {
    let mut residual = v.clone();
    for (b, b_norm) in basis.iter() {
        let c = v.dot(b);
        if !c.is_zero() {
            residual = &residual - &b.scaled(&(c / b_norm));
        }
    }
    if residual.is_zero() {
        return None;
    }
    let norm = residual.norm_squared();
    basis.push((residual.clone(), norm));
    Some(residual)
}
