use num_traits::Zero;

use super::{Instance, WolfeError};
use crate::geometry::{affine_minimizer, RationalVector};

/// Default limit on the number of points brute force will enumerate.
pub const BRUTE_FORCE_CAP: usize = 16;

/// Minimum-norm point by exhaustive search over all affinely independent
/// subsets of at most `d + 1` points whose affine minimizer is a convex
/// combination of them. Independent of the solver; used as a test oracle.
pub fn brute_force_min_norm(instance: &Instance) -> Result<RationalVector, WolfeError> {
    brute_force_min_norm_capped(instance, BRUTE_FORCE_CAP)
}

pub fn brute_force_min_norm_capped(instance: &Instance, cap: usize) -> Result<RationalVector, WolfeError> {
    let n = instance.len();
    if n > cap {
        return Err(WolfeError::TooLarge { points: n, cap });
    }
    let max_size = (instance.dim() + 1).min(n);
    let mut best: Option<RationalVector> = None;
    for mask in 1u64..(1u64 << n) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let subset: Vec<&RationalVector> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| instance.point(i))
            .collect();
        let Ok(am) = affine_minimizer(&subset) else {
            continue;
        };
        if !am.is_convex() {
            continue;
        }
        let better = best
            .as_ref()
            .map_or(true, |b| am.point.norm_squared() < b.norm_squared());
        if better {
            let done = am.point.norm_squared().is_zero();
            best = Some(am.point);
            if done {
                break;
            }
        }
    }
    Ok(best.expect("every singleton is a candidate"))
}
