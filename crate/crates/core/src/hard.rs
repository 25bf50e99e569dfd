//! The recursive family `P_d` on which the minnorm rule visits
//! exponentially many corrals, plus two small fixed instances.
//!
//! `P_1 = {(1)}`. For odd `d > 1`, with `x*`, `M`, `m` taken from
//! `P_{d-2}`, the points of `P_{d-2}` are padded with two zeros and four
//! points are appended:
//!
//! ```text
//! p = (x*/2, m/4,  M)        r = (0, m/4,  M + 2)
//! q = (x*/2, m/4, -(M + 1))  s = (0, m/4, -(M + 3))
//! ```
//!
//! `M_d` is the largest 1-norm of a point and `m_d = ‖x*_d‖∞`.

use num_traits::{One, Zero};

use crate::geometry::RationalVector;
use crate::rational::{int, Rational};
use crate::wolfe::{solve, EventKind, InsertionRule, Instance, WolfeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HardError {
    #[error("dimension must be odd and positive, got {0}")]
    InvalidDimension(i64),
    #[error(transparent)]
    Wolfe(#[from] WolfeError),
}

fn check_dim(d: i64) -> Result<usize, HardError> {
    if d < 1 || d % 2 == 0 {
        return Err(HardError::InvalidDimension(d));
    }
    Ok(d as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardFamilyRecord {
    pub d: usize,
    pub instance: Instance,
    /// `M_d`: largest 1-norm among the points.
    pub max_l1: Rational,
    /// `m_d = ‖x*_d‖∞`.
    pub optimum_linf: Rational,
    /// Minimum-norm point of `conv P_d`, from the closed-form recurrence.
    pub optimum: RationalVector,
}

/// Builds `P_d`. The optimum comes from the recurrence
/// `x*_d = λ(x*_{d-2}, 0, 0) + (1−λ)w` with `w = (m_{d-2}/4) e_{d-1}` and
/// `λ = ‖w‖²/(‖x*_{d-2}‖² + ‖w‖²)`, not from running the solver.
pub fn generate_pd(d: i64) -> Result<HardFamilyRecord, HardError> {
    let d = check_dim(d)?;
    let mut points = vec![RationalVector::from_integers(&[1])];
    let mut optimum = RationalVector::from_integers(&[1]);
    let mut max_l1 = int(1);
    let mut optimum_linf = int(1);
    for dim in (3..=d).step_by(2) {
        let quarter = &optimum_linf / int(4);
        let half_opt = optimum.scaled(&Rational::new(1.into(), 2.into()));
        let tail = |head: &RationalVector, last: Rational| head.concat(&[quarter.clone(), last]);
        let zeros = RationalVector::zeros(dim - 2);
        let new_points = [
            tail(&half_opt, max_l1.clone()),
            tail(&half_opt, -(&max_l1 + int(1))),
            tail(&zeros, &max_l1 + int(2)),
            tail(&zeros, -(&max_l1 + int(3))),
        ];
        points = points.iter().map(|p| p.padded(2)).collect();
        points.extend(new_points);

        let w = RationalVector::zeros(dim - 2).concat(&[quarter.clone(), Rational::zero()]);
        let lambda = orthogonal_weight(&optimum, &w);
        optimum = optimum.padded(2).lerp(&w, &lambda);
        max_l1 = points.iter().map(RationalVector::norm1).max().expect("nonempty");
        optimum_linf = optimum.norm_inf();
    }
    let instance = Instance::new(points).map_err(WolfeError::from)?;
    Ok(HardFamilyRecord {
        d,
        instance,
        max_l1,
        optimum_linf,
        optimum,
    })
}

/// `5·2^{k-1} − 4` for `d = 2k − 1`.
pub fn predicted_count(d: i64) -> Result<usize, HardError> {
    let d = check_dim(d)?;
    let k = (d + 1) / 2;
    Ok(5 * (1usize << (k - 1)) - 4)
}

/// Corral sequence for the minnorm rule on `P_d`, unrolled from the
/// recursion `C_{d-2}, O_{d-2}p, pq, qr, rs, C_{d-2}rs`. Index sets are
/// sorted and 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorralSequencePrediction {
    pub d: usize,
    pub sequence: Vec<Vec<usize>>,
}

impl CorralSequencePrediction {
    pub fn count(&self) -> usize {
        self.sequence.len()
    }
}

pub fn predicted_sequence(d: i64) -> Result<CorralSequencePrediction, HardError> {
    let d = check_dim(d)?;
    let mut sequence = vec![vec![0]];
    let mut n = 1;
    for _ in (3..=d).step_by(2) {
        let (p, q, r, s) = (n, n + 1, n + 2, n + 3);
        let mut optimal_plus_p = sequence.last().expect("nonempty").clone();
        optimal_plus_p.push(p);
        let mut next = sequence.clone();
        next.push(optimal_plus_p);
        next.extend([vec![p, q], vec![q, r], vec![r, s]]);
        next.extend(sequence.iter().map(|c| {
            let mut c = c.clone();
            c.extend([r, s]);
            c
        }));
        sequence = next;
        n += 4;
    }
    Ok(CorralSequencePrediction { d, sequence })
}

/// Four points of `R³` on which point 1 enters, leaves and re-enters
/// under the minnorm rule.
pub fn reentry_example() -> Instance {
    Instance::new(vec![
        RationalVector::from_integers(&[1, 0, 0]),
        RationalVector::from_fractions(&[(1, 2), (1, 4), (1, 1)]),
        RationalVector::from_fractions(&[(1, 2), (1, 4), (-1, 1)]),
        RationalVector::from_fractions(&[(-2, 1), (1, 4), (0, 1)]),
    ])
    .expect("fixed instance is valid")
}

/// Simplex in `R³` whose minnorm and linopt runs differ.
pub fn figure1_example() -> Instance {
    Instance::new(vec![
        RationalVector::from_fractions(&[(4, 5), (9, 10), (0, 1)]),
        RationalVector::from_fractions(&[(3, 2), (-1, 2), (0, 1)]),
        RationalVector::from_fractions(&[(-1, 1), (-1, 1), (2, 1)]),
        RationalVector::from_fractions(&[(-4, 1), (3, 2), (2, 1)]),
    ])
    .expect("fixed instance is valid")
}

/// Position where observed and predicted corral sequences disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorralDiff {
    pub position: usize,
    pub predicted: Option<Vec<usize>>,
    pub observed: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialReport {
    pub d: usize,
    pub rule: InsertionRule,
    pub observed_count: usize,
    /// Observed corrals as sorted index sets.
    pub observed: Vec<Vec<usize>>,
    /// Only the minnorm rule has a prediction.
    pub predicted_count: Option<usize>,
    pub diffs: Vec<CorralDiff>,
    /// Whether the solver's optimum equals the closed-form one.
    pub optimum_matches: bool,
}

impl ExponentialReport {
    /// `None` when there is nothing to compare against.
    pub fn matches(&self) -> Option<bool> {
        self.predicted_count
            .map(|p| p == self.observed_count && self.diffs.is_empty() && self.optimum_matches)
    }
}

/// Runs `rule` on `P_d` and compares the visited corrals with the
/// prediction. A mismatch is reported, not raised.
pub fn verify_exponential(d: i64, rule: InsertionRule) -> Result<ExponentialReport, HardError> {
    let record = generate_pd(d)?;
    let (solution, trace) = solve(&record.instance, rule)?;
    let observed: Vec<Vec<usize>> = trace
        .iter()
        .filter(|e| e.kind == EventKind::CorralReached)
        .map(|e| e.corral_set())
        .collect();
    let (predicted_count, diffs) = if rule == InsertionRule::MinNorm {
        let prediction = predicted_sequence(d)?;
        let len = prediction.count().max(observed.len());
        let diffs = (0..len)
            .filter_map(|i| {
                let p = prediction.sequence.get(i);
                let o = observed.get(i);
                (p != o).then(|| CorralDiff {
                    position: i,
                    predicted: p.cloned(),
                    observed: o.cloned(),
                })
            })
            .collect();
        (Some(prediction.count()), diffs)
    } else {
        (None, Vec::new())
    };
    Ok(ExponentialReport {
        d: record.d,
        rule,
        observed_count: observed.len(),
        observed,
        predicted_count,
        diffs,
        optimum_matches: solution.x == record.optimum,
    })
}

/// `λ` of the recurrence step, exposed for property tests:
/// `‖w‖² / (‖x‖² + ‖w‖²)`.
pub fn orthogonal_weight(x: &RationalVector, w: &RationalVector) -> Rational {
    let ww = w.norm_squared();
    if ww.is_zero() {
        return Rational::one();
    }
    &ww / (x.norm_squared() + &ww)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn base_case() {
        let r = generate_pd(1).unwrap();
        assert_eq!(r.instance.points(), [RationalVector::from_integers(&[1])]);
        assert_eq!((r.max_l1, r.optimum_linf), (int(1), int(1)));
    }

    #[test]
    fn third_member() {
        let r = generate_pd(3).unwrap();
        let expected = [
            RationalVector::from_integers(&[1, 0, 0]),
            RationalVector::from_fractions(&[(1, 2), (1, 4), (1, 1)]),
            RationalVector::from_fractions(&[(1, 2), (1, 4), (-2, 1)]),
            RationalVector::from_fractions(&[(0, 1), (1, 4), (3, 1)]),
            RationalVector::from_fractions(&[(0, 1), (1, 4), (-4, 1)]),
        ];
        assert_eq!(r.instance.points(), expected);
        assert_eq!(r.max_l1, rat(17, 4));
        assert_eq!(r.optimum, RationalVector::from_fractions(&[(1, 17), (4, 17), (0, 1)]));
        assert_eq!(r.optimum_linf, rat(4, 17));
    }

    #[test]
    fn point_counts() {
        for d in [1, 3, 5, 7, 9] {
            assert_eq!(generate_pd(d).unwrap().instance.len(), 2 * d as usize - 1);
        }
    }

    #[test]
    fn rejects_bad_dimensions() {
        for d in [-1, 0, 2, 8] {
            assert_eq!(generate_pd(d), Err(HardError::InvalidDimension(d)));
            assert_eq!(predicted_count(d), Err(HardError::InvalidDimension(d)));
        }
    }

    #[test]
    fn counts_follow_recurrence() {
        let counts: Vec<usize> = [1, 3, 5, 7, 9, 11, 13]
            .iter()
            .map(|&d| predicted_count(d).unwrap())
            .collect();
        assert_eq!(counts, [1, 6, 16, 36, 76, 156, 316]);
        for d in [1, 3, 5, 7, 9] {
            assert_eq!(predicted_sequence(d).unwrap().count(), predicted_count(d).unwrap());
        }
    }

    #[test]
    fn unrolled_sequence_for_three() {
        let s = predicted_sequence(3).unwrap().sequence;
        assert_eq!(
            s,
            vec![vec![0], vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 3, 4]]
        );
    }

    #[test]
    fn small_members_verify() {
        for d in [1, 3, 5] {
            let report = verify_exponential(d, InsertionRule::MinNorm).unwrap();
            assert_eq!(report.matches(), Some(true), "{report:?}");
        }
        let linopt = verify_exponential(3, InsertionRule::LinOpt).unwrap();
        assert_eq!(linopt.matches(), None);
        assert!(linopt.optimum_matches);
    }
}
