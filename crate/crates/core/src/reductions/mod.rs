//! Strongly-polynomial reductions from linear programming to the distance
//! from the origin to a simplex:
//!
//! ```text
//! LP → FP → BFP → VPM → ZVPM → ZVPMD → DVS
//! ```
//!
//! Each stage is a pure transformation with a map sending answers of the
//! next stage back. [`solve_lp`] composes them and answers every
//! feasibility question by going all the way down to [`dvs_answer`].
//! Magnitudes grow very fast along the chain, so end-to-end runs are only
//! practical for tiny programs.

mod membership;
mod stages;

pub use membership::{
    direct_membership, dvs_answer, lift_to_simplex, zvpm_to_zvpmd, zvpmd_via_dvs, DvsInstance, LiftParameters,
    MembershipOracle, RedundancyResult,
};
pub use stages::{
    bfp_to_vpm, fp_to_bfp, lp_to_fp, split_difference, vpm_to_bfp_solution, vpm_to_zvpm, BfpInstance, FpInstance,
    MagnitudeBounds, VpmInstance, ZvpmInstance,
};

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use crate::geometry::{RationalMatrix, RationalVector};
use crate::wolfe::WolfeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("{what} has length {found}, expected {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("distance query needs affinely independent points")]
    NotASimplex,
    #[error("lifted points are not affinely independent")]
    LiftNotIndependent,
    #[error("coefficient system on {kept} surviving points has no positive solution")]
    RedundancySystem { kept: usize },
    #[error("recovered point fails {0}")]
    Certificate(&'static str),
    #[error(transparent)]
    Wolfe(#[from] WolfeError),
}

impl From<crate::wolfe::InstanceError> for ReductionError {
    fn from(e: crate::wolfe::InstanceError) -> Self {
        ReductionError::Wolfe(e.into())
    }
}

/// `max cᵀx` subject to `A x ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub a: RationalMatrix,
    pub b: RationalVector,
    pub c: RationalVector,
}

impl LpInstance {
    pub fn new(a: RationalMatrix, b: RationalVector, c: RationalVector) -> Result<Self, ReductionError> {
        if b.dim() != a.rows() {
            return Err(ReductionError::Shape {
                what: "b",
                expected: a.rows(),
                found: b.dim(),
            });
        }
        if c.dim() != a.cols() {
            return Err(ReductionError::Shape {
                what: "c",
                expected: a.cols(),
                found: c.dim(),
            });
        }
        Ok(Self { a, b, c })
    }

    pub fn is_feasible(&self, x: &RationalVector) -> bool {
        let ax = self.a.mul_vec(x);
        ax.coords().iter().zip(self.b.coords()).all(|(l, r)| l <= r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(RationalVector),
    Infeasible,
    Infinite,
}

/// How feasibility questions are answered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OracleMode {
    /// Down the whole chain to a distance-to-simplex query.
    #[default]
    Chain,
    /// Origin membership answered by Wolfe's method on the raw points,
    /// skipping the lift. Useful to isolate faults.
    Direct,
}

impl FromStr for OracleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "chain" => Ok(OracleMode::Chain),
            "direct" => Ok(OracleMode::Direct),
            other => Err(format!("unknown oracle mode {other:?} (expected chain or direct)")),
        }
    }
}

fn membership(mode: OracleMode) -> impl FnMut(&[RationalVector]) -> Result<bool, ReductionError> {
    move |points: &[RationalVector]| match mode {
        OracleMode::Chain => zvpmd_via_dvs(points, dvs_answer),
        OracleMode::Direct => direct_membership(points),
    }
}

/// Answers `A x = b, x ≥ 0` through BFP, VPM, ZVPM and the redundancy
/// pass, mapping the solution back at each step.
pub fn solve_fp(fp: &FpInstance, mode: OracleMode) -> Result<Option<RationalVector>, ReductionError> {
    let bfp = fp_to_bfp(fp);
    let vpm = bfp_to_vpm(&bfp);
    let zvpm = vpm_to_zvpm(&vpm);
    let mut oracle = membership(mode);
    let Some(found) = zvpm_to_zvpmd(&zvpm.points, &mut oracle)? else {
        return Ok(None);
    };
    let y = found.coefficients;
    debug_assert!(zvpm.is_solution(&y) && vpm.is_solution(&y));
    let x = vpm_to_bfp_solution(&bfp, &y);
    if !bfp.is_solution(&x) || !fp.is_solution(&x) {
        return Err(ReductionError::Certificate("the feasibility system"));
    }
    Ok(Some(x))
}

/// Solves the program by two feasibility questions: one for `A x ≤ b`,
/// one for its optimality conditions.
pub fn solve_lp(lp: &LpInstance, mode: OracleMode) -> Result<LpOutcome, ReductionError> {
    let n = lp.a.cols();
    let (feasibility, kkt) = lp_to_fp(lp);
    let Some(witness) = solve_fp(&feasibility, mode)? else {
        return Ok(LpOutcome::Infeasible);
    };
    if !lp.is_feasible(&split_difference(&witness, n)) {
        return Err(ReductionError::Certificate("A x ≤ b"));
    }
    let Some(z) = solve_fp(&kkt, mode)? else {
        return Ok(LpOutcome::Infinite);
    };
    let x = split_difference(&z, n);
    let y = RationalVector::new(z.coords()[2 * n..2 * n + lp.a.rows()].to_vec());
    let dual_feasible = lp.a.transpose().mul_vec(&y) == lp.c && y.coords().iter().all(|v| !v.is_negative());
    if !lp.is_feasible(&x) || !dual_feasible || lp.b.dot(&y) != lp.c.dot(&x) {
        return Err(ReductionError::Certificate("the optimality conditions"));
    }
    Ok(LpOutcome::Optimal(x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StageTag {
    Fp,
    Bfp,
    Vpm,
    Zvpm,
    Zvpmd,
    Dvs,
}

impl StageTag {
    pub fn name(self) -> &'static str {
        match self {
            StageTag::Fp => "FP",
            StageTag::Bfp => "BFP",
            StageTag::Vpm => "VPM",
            StageTag::Zvpm => "ZVPM",
            StageTag::Zvpmd => "ZVPMD",
            StageTag::Dvs => "DVS",
        }
    }
}

impl fmt::Display for StageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StagePayload {
    /// `A x = b, x ≥ 0`, with `Σ x ≤ bound` when present.
    System {
        a: RationalMatrix,
        b: RationalVector,
        bound: Option<crate::rational::Rational>,
    },
    Points(Vec<RationalVector>),
}

/// How an answer at this stage becomes an answer one stage up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BackMap {
    /// `x = x⁺ − x⁻` over the first `2n` coordinates.
    SplitDifference {
        n: usize,
    },
    Identity,
    /// `x = factor · y` on the first `keep` coordinates.
    Scale {
        factor: crate::rational::Rational,
        keep: usize,
    },
    /// Coefficients of the surviving points, zero elsewhere.
    Redundancy,
    /// YES iff the squared distance is below `threshold`.
    Threshold {
        threshold: crate::rational::Rational,
        epsilon: crate::rational::Rational,
        lift_rows: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageInstance {
    pub tag: StageTag,
    pub payload: StagePayload,
    pub back_map: BackMap,
}

/// Every stage instance for one feasibility system of the program, down
/// to the lifted simplex of the first membership query.
pub fn stage_dump(lp: &LpInstance, use_kkt: bool) -> Result<Vec<StageInstance>, ReductionError> {
    let n = lp.a.cols();
    let (feasibility, kkt) = lp_to_fp(lp);
    let fp = if use_kkt { kkt } else { feasibility };
    let bfp = fp_to_bfp(&fp);
    let vpm = bfp_to_vpm(&bfp);
    let zvpm = vpm_to_zvpm(&vpm);
    let dvs = lift_to_simplex(&zvpm.points)?;
    let system = |a: &RationalMatrix, b: &RationalVector, bound| StagePayload::System {
        a: a.clone(),
        b: b.clone(),
        bound,
    };
    Ok(vec![
        StageInstance {
            tag: StageTag::Fp,
            payload: system(&fp.a, &fp.b, None),
            back_map: BackMap::SplitDifference { n },
        },
        StageInstance {
            tag: StageTag::Bfp,
            payload: system(&bfp.a, &bfp.b, Some(bfp.bound.clone())),
            back_map: BackMap::Identity,
        },
        StageInstance {
            tag: StageTag::Vpm,
            payload: system(&vpm.a, &vpm.b, None),
            back_map: BackMap::Scale {
                factor: bfp.bound.clone(),
                keep: bfp.a.cols(),
            },
        },
        StageInstance {
            tag: StageTag::Zvpm,
            payload: StagePayload::Points(zvpm.points.clone()),
            back_map: BackMap::Identity,
        },
        StageInstance {
            tag: StageTag::Zvpmd,
            payload: StagePayload::Points(zvpm.points),
            back_map: BackMap::Redundancy,
        },
        StageInstance {
            tag: StageTag::Dvs,
            payload: StagePayload::Points(dvs.points),
            back_map: BackMap::Threshold {
                threshold: dvs.parameters.threshold,
                epsilon: dvs.parameters.epsilon,
                lift_rows: dvs.lift_rows,
            },
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn lp(a: &[&[i64]], b: &[i64], c: &[i64]) -> LpInstance {
        LpInstance::new(
            RationalMatrix::from_integer_rows(a),
            RationalVector::from_integers(b),
            RationalVector::from_integers(c),
        )
        .unwrap()
    }

    #[test]
    fn one_variable_programs() {
        for mode in [OracleMode::Direct, OracleMode::Chain] {
            assert_eq!(
                solve_lp(&lp(&[&[1]], &[5], &[1]), mode).unwrap(),
                LpOutcome::Optimal(RationalVector::from_integers(&[5]))
            );
            assert_eq!(
                solve_lp(&lp(&[&[1], &[-1]], &[-1, -2], &[1]), mode).unwrap(),
                LpOutcome::Infeasible
            );
            assert_eq!(solve_lp(&lp(&[&[-1]], &[0], &[1]), mode).unwrap(), LpOutcome::Infinite);
        }
    }

    #[test]
    fn unit_box_direct() {
        let box_lp = lp(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[1, 1, 0, 0], &[1, 1]);
        let LpOutcome::Optimal(x) = solve_lp(&box_lp, OracleMode::Direct).unwrap() else {
            panic!("box is bounded");
        };
        assert_eq!(box_lp.c.dot(&x), int(2));
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = RationalMatrix::from_integer_rows(&[&[1, 2]]);
        assert!(LpInstance::new(
            a.clone(),
            RationalVector::from_integers(&[1, 2]),
            RationalVector::from_integers(&[1, 1])
        )
        .is_err());
        assert!(LpInstance::new(
            a,
            RationalVector::from_integers(&[1]),
            RationalVector::from_integers(&[1])
        )
        .is_err());
    }

    #[test]
    fn dump_has_every_stage() {
        let stages = stage_dump(&lp(&[&[1]], &[2], &[1]), false).unwrap();
        let tags: Vec<&str> = stages.iter().map(|s| s.tag.name()).collect();
        assert_eq!(tags, ["FP", "BFP", "VPM", "ZVPM", "ZVPMD", "DVS"]);
    }
}
