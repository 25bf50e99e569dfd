use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{LpInstance, ReductionError};
use crate::geometry::{RationalMatrix, RationalVector};
use crate::rational::Rational;

/// `A x = b, x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpInstance {
    pub a: RationalMatrix,
    pub b: RationalVector,
}

impl FpInstance {
    pub fn new(a: RationalMatrix, b: RationalVector) -> Result<Self, ReductionError> {
        if a.rows() != b.dim() {
            return Err(ReductionError::Shape {
                what: "right-hand side",
                expected: a.rows(),
                found: b.dim(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn is_solution(&self, x: &RationalVector) -> bool {
        x.dim() == self.a.cols() && x.coords().iter().all(|v| !v.is_negative()) && self.a.mul_vec(x) == self.b
    }
}

/// `A x = b, x ≥ 0, Σ x ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfpInstance {
    pub a: RationalMatrix,
    pub b: RationalVector,
    pub bound: Rational,
    pub magnitudes: MagnitudeBounds,
}

impl BfpInstance {
    pub fn is_solution(&self, x: &RationalVector) -> bool {
        let fp = FpInstance {
            a: self.a.clone(),
            b: self.b.clone(),
        };
        fp.is_solution(x) && x.coords().iter().sum::<Rational>() <= self.bound
    }
}

/// `A x = b, x ≥ 0, Σ x = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VpmInstance {
    pub a: RationalMatrix,
    pub b: RationalVector,
}

impl VpmInstance {
    pub fn is_solution(&self, x: &RationalVector) -> bool {
        let fp = FpInstance {
            a: self.a.clone(),
            b: self.b.clone(),
        };
        fp.is_solution(x) && x.coords().iter().sum::<Rational>() == Rational::one()
    }
}

/// `Σ x_i p_i = 0, x ≥ 0, Σ x = 1` over the columns `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZvpmInstance {
    pub points: Vec<RationalVector>,
}

impl ZvpmInstance {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, RationalVector::dim)
    }

    pub fn is_solution(&self, x: &RationalVector) -> bool {
        x.dim() == self.points.len()
            && x.coords().iter().all(|v| !v.is_negative())
            && x.coords().iter().sum::<Rational>() == Rational::one()
            && RationalVector::combination(&self.points, x.coords()).is_zero()
    }
}

/// Feasibility system `[A −A I](x⁺, x⁻, s) = b` and the KKT system whose
/// solutions are exactly the optimal primal/dual pairs:
///
/// ```text
/// [ −cᵀ  cᵀ  bᵀ |         ]   [ x⁺ ]   [  0 ]
/// [  A   −A  0  | I       ]   [ x⁻ ]   [  b ]
/// [  0    0  Aᵀ | (d+2n+1)]   [ y  ] = [  c ]
/// [  0    0 −Aᵀ |         ]   [ s  ]   [ −c ]
/// ```
///
/// Both back-map by `x = x⁺ − x⁻`.
pub fn lp_to_fp(lp: &LpInstance) -> (FpInstance, FpInstance) {
    let (d, n) = (lp.a.rows(), lp.a.cols());
    let neg_a = lp.a.scaled(&-Rational::one());

    let mut feas = RationalMatrix::zeros(d, 2 * n + d);
    feas.set_block(0, 0, &lp.a);
    feas.set_block(0, n, &neg_a);
    feas.set_block(0, 2 * n, &RationalMatrix::identity(d));

    let rows = 1 + d + 2 * n;
    let mut kkt = RationalMatrix::zeros(rows, 2 * n + d + rows);
    for j in 0..n {
        kkt[(0, j)] = -lp.c[j].clone();
        kkt[(0, n + j)] = lp.c[j].clone();
    }
    for i in 0..d {
        kkt[(0, 2 * n + i)] = lp.b[i].clone();
    }
    kkt.set_block(1, 0, &lp.a);
    kkt.set_block(1, n, &neg_a);
    let at = lp.a.transpose();
    kkt.set_block(1 + d, 2 * n, &at);
    kkt.set_block(1 + d + n, 2 * n, &at.scaled(&-Rational::one()));
    kkt.set_block(0, 2 * n + d, &RationalMatrix::identity(rows));

    let mut rhs = vec![Rational::zero()];
    rhs.extend(lp.b.coords().iter().cloned());
    rhs.extend(lp.c.coords().iter().cloned());
    rhs.extend(lp.c.coords().iter().map(|v| -v));

    (
        FpInstance {
            a: feas,
            b: lp.b.clone(),
        },
        FpInstance {
            a: kkt,
            b: RationalVector::new(rhs),
        },
    )
}

/// `x = x⁺ − x⁻` from a solution of either system of [`lp_to_fp`].
pub fn split_difference(solution: &RationalVector, n: usize) -> RationalVector {
    RationalVector::new((0..n).map(|j| &solution[j] - &solution[n + j]).collect())
}

/// `D`, `N` and the bound `M = n·D^{d(n+1)·min(d³,n³)}·N^{d(n+1)}` on the
/// coordinate sum of some vertex of `{A x = b, x ≥ 0}`. Zero entries count
/// as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnitudeBounds {
    /// Largest denominator over `A` and `b`.
    pub max_denominator: BigInt,
    /// Largest numerator magnitude over `A` and `b`, plus one.
    pub max_numerator: BigInt,
    pub bound: BigInt,
}

impl MagnitudeBounds {
    pub fn of(fp: &FpInstance) -> Self {
        let (d, n) = (fp.a.rows(), fp.a.cols());
        let entries = || fp.a.entries().chain(fp.b.coords());
        let max_denominator: BigInt = entries().map(|v| v.denom().abs()).max().unwrap_or_else(BigInt::one);
        let max_numerator: BigInt = entries().map(|v| v.numer().abs()).max().unwrap_or_else(BigInt::zero) + 1;
        let cube = d.min(n).pow(3);
        let base = d * (n + 1);
        let bound = BigInt::from(n)
            * num_traits::pow(max_denominator.clone(), base * cube)
            * num_traits::pow(max_numerator.clone(), base);
        Self {
            max_denominator,
            max_numerator,
            bound,
        }
    }
}

/// Adds `Σ x ≤ M`; solutions map back unchanged.
pub fn fp_to_bfp(fp: &FpInstance) -> BfpInstance {
    let magnitudes = MagnitudeBounds::of(fp);
    BfpInstance {
        a: fp.a.clone(),
        b: fp.b.clone(),
        bound: Rational::from_integer(magnitudes.bound.clone()),
        magnitudes,
    }
}

/// `[M·A 0](y, z) = b` on the simplex; back-map `x = M·y`.
pub fn bfp_to_vpm(bfp: &BfpInstance) -> VpmInstance {
    let (d, n) = (bfp.a.rows(), bfp.a.cols());
    let mut a = RationalMatrix::zeros(d, n + 1);
    a.set_block(0, 0, &bfp.a.scaled(&bfp.bound));
    VpmInstance { a, b: bfp.b.clone() }
}

pub fn vpm_to_bfp_solution(bfp: &BfpInstance, y: &RationalVector) -> RationalVector {
    RationalVector::new(y.coords()[..bfp.a.cols()].iter().map(|v| v * &bfp.bound).collect())
}

/// Columns `a_i − b`; solutions map back unchanged.
pub fn vpm_to_zvpm(vpm: &VpmInstance) -> ZvpmInstance {
    ZvpmInstance {
        points: vpm.a.columns().iter().map(|col| col - &vpm.b).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn lp(a: &[&[i64]], b: &[i64], c: &[i64]) -> LpInstance {
        LpInstance::new(
            RationalMatrix::from_integer_rows(a),
            RationalVector::from_integers(b),
            RationalVector::from_integers(c),
        )
        .unwrap()
    }

    #[test]
    fn fp_shapes() {
        let (feas, kkt) = lp_to_fp(&lp(&[&[1, 2], &[3, 4], &[5, 6]], &[1, 2, 3], &[1, 1]));
        assert_eq!((feas.a.rows(), feas.a.cols()), (3, 7));
        assert_eq!((kkt.a.rows(), kkt.a.cols()), (8, 4 + 3 + 8));
        assert_eq!(kkt.b, RationalVector::from_integers(&[0, 1, 2, 3, 1, 1, -1, -1]));
    }

    #[test]
    fn kkt_solution_for_single_bound() {
        // max x s.t. x ≤ 5: x⁺ = 5, y = 1, first slack 0.
        let (_, kkt) = lp_to_fp(&lp(&[&[1]], &[5], &[1]));
        let z = RationalVector::from_integers(&[5, 0, 1, 0, 0, 0, 0]);
        assert!(kkt.is_solution(&z));
        assert_eq!(split_difference(&z, 1), RationalVector::from_integers(&[5]));
    }

    #[test]
    fn bound_formula() {
        let fp = FpInstance::new(
            RationalMatrix::from_integer_rows(&[&[1]]),
            RationalVector::from_integers(&[2]),
        )
        .unwrap();
        let m = MagnitudeBounds::of(&fp);
        assert_eq!(
            (m.max_denominator.clone(), m.max_numerator.clone(), m.bound.clone()),
            (1.into(), 3.into(), 9.into())
        );
        let zero = FpInstance::new(
            RationalMatrix::from_integer_rows(&[&[0]]),
            RationalVector::from_integers(&[0]),
        )
        .unwrap();
        let m = MagnitudeBounds::of(&zero);
        assert_eq!((m.max_denominator, m.max_numerator), (1.into(), 1.into()));
    }

    #[test]
    fn bounded_to_simplex_and_back() {
        let fp = FpInstance::new(
            RationalMatrix::from_integer_rows(&[&[1]]),
            RationalVector::from_integers(&[2]),
        )
        .unwrap();
        let bfp = fp_to_bfp(&fp);
        let vpm = bfp_to_vpm(&bfp);
        let y = RationalVector::new(vec![rat(2, 9), rat(7, 9)]);
        assert!(vpm.is_solution(&y));
        let x = vpm_to_bfp_solution(&bfp, &y);
        assert_eq!(x, RationalVector::from_integers(&[2]));
        assert!(bfp.is_solution(&x));
        assert!(!vpm.is_solution(&RationalVector::new(vec![int(0), int(1)])));
    }

    #[test]
    fn translated_columns() {
        let vpm = VpmInstance {
            a: RationalMatrix::from_integer_rows(&[&[1, 3]]),
            b: RationalVector::from_integers(&[2]),
        };
        let zvpm = vpm_to_zvpm(&vpm);
        assert_eq!(
            zvpm.points,
            [
                RationalVector::from_integers(&[-1]),
                RationalVector::from_integers(&[1])
            ]
        );
        let x = RationalVector::new(vec![rat(1, 2), rat(1, 2)]);
        assert!(zvpm.is_solution(&x) && vpm.is_solution(&x));
    }
}
