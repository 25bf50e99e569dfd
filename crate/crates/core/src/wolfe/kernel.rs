//! Coefficient-space engine behind the solver.
//!
//! Points are scaled by a common denominator `c` to integers, so every
//! decision reduces to integer arithmetic on the Gram matrix `G` of the
//! scaled points. The affine minimizer of a set `I` uses the symmetric
//! system `(c²E + G_I) v = 1` (`E` all ones), whose solution is
//! proportional to the affine coefficients and whose matrix is positive
//! definite exactly when `I` is affinely independent. Its fraction-free
//! elimination is extended by one row per entering point and rebuilt from
//! the removal position in minor cycles.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use rug::integer::Order;
use rug::{Assign, Integer};

use super::{EventKind, InsertionRule, WolfeError};
use crate::geometry::RationalVector;
use crate::rational::Rational;

pub(crate) fn to_gmp(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u32_digits();
    let magnitude = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -magnitude
    } else {
        magnitude
    }
}

pub(crate) fn from_gmp(v: &Integer) -> BigInt {
    let magnitude = BigInt::from_slice(Sign::Plus, &v.to_digits::<u32>(Order::Lsf));
    if v.cmp0() == Ordering::Less {
        -magnitude
    } else {
        magnitude
    }
}

/// `num / den` reduced with GMP, then handed over without a second gcd.
pub(crate) fn ratio(num: &Integer, den: &Integer) -> Rational {
    let q = rug::Rational::from((num, den));
    Rational::new_raw(from_gmp(q.numer()), from_gmp(q.denom()))
}

/// Coefficient vector `num / den`, `den > 0`, aligned with a corral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Scaled {
    pub num: Vec<Integer>,
    pub den: Integer,
}

impl Scaled {
    fn unit() -> Self {
        Self {
            num: vec![Integer::from(1)],
            den: Integer::from(1),
        }
    }

    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for v in &self.num {
            if g == 1 {
                return;
            }
            g.gcd_mut(v);
        }
        if g > 1 {
            for v in &mut self.num {
                v.div_exact_mut(&g);
            }
            self.den.div_exact_mut(&g);
        }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num.iter().map(|v| ratio(v, &self.den)).collect()
    }
}

/// Exact data the engine works from.
pub(crate) struct GramKernel {
    /// Points times the common denominator `c`.
    scaled_points: Vec<Vec<Integer>>,
    c: Integer,
    gram: Vec<Vec<Integer>>,
    /// `c² + G_ij`.
    bordered: Vec<Vec<Integer>>,
}

impl GramKernel {
    pub fn new(points: &[RationalVector]) -> Self {
        let c_big = points
            .iter()
            .flat_map(|p| p.coords())
            .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let c = to_gmp(&c_big);
        let scaled_points: Vec<Vec<Integer>> = points
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|v| to_gmp(&(v.numer() * (&c_big / v.denom()))))
                    .collect()
            })
            .collect();
        let n = points.len();
        let c2 = Integer::from(c.square_ref());
        let mut gram = vec![vec![Integer::new(); n]; n];
        let mut bordered = vec![vec![Integer::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut g = Integer::new();
                for (a, b) in scaled_points[i].iter().zip(&scaled_points[j]) {
                    g += a * b;
                }
                let h = Integer::from(&g + &c2);
                gram[i][j] = g.clone();
                gram[j][i] = g;
                bordered[i][j] = h.clone();
                bordered[j][i] = h;
            }
        }
        Self {
            scaled_points,
            c,
            gram,
            bordered,
        }
    }

    pub fn len(&self) -> usize {
        self.gram.len()
    }

    /// `Σ coeff_i p_{corral_i}` as an exact vector.
    pub fn combine(&self, corral: &[usize], coeffs: &Scaled) -> RationalVector {
        let dim = self.scaled_points.first().map_or(0, Vec::len);
        let den = Integer::from(&coeffs.den * &self.c);
        let coords = (0..dim)
            .map(|t| {
                let mut acc = Integer::new();
                for (&i, a) in corral.iter().zip(&coeffs.num) {
                    acc += a * &self.scaled_points[i][t];
                }
                ratio(&acc, &den)
            })
            .collect();
        RationalVector::new(coords)
    }

    /// `(G λ)_j` numerators for every point, and `‖x‖²` numerator
    /// `Σ_i λ_i (Gλ)_{corral_i}`; true values divide by `den·c²` and
    /// `den²·c²`.
    fn products(&self, corral: &[usize], lambda: &Scaled) -> (Vec<Integer>, Integer) {
        let u: Vec<Integer> = (0..self.len())
            .map(|j| {
                let mut acc = Integer::new();
                for (&i, a) in corral.iter().zip(&lambda.num) {
                    if a.cmp0() != Ordering::Equal {
                        acc += a * &self.gram[i][j];
                    }
                }
                acc
            })
            .collect();
        let mut s = Integer::new();
        for (&i, a) in corral.iter().zip(&lambda.num) {
            s += a * &u[i];
        }
        (u, s)
    }

    pub fn norm_squared(&self, corral: &[usize], lambda: &Scaled) -> Rational {
        let (_, s) = self.products(corral, lambda);
        let den = Integer::from(lambda.den.square_ref()) * Integer::from(self.c.square_ref());
        ratio(&s, &den)
    }
}

/// Fraction-free elimination of `c²E + G_I` with a ones right-hand side.
/// `rows[k][j - k]` holds the stage-`k` entry `(k, j)` for `j ≥ k`.
#[derive(Default)]
struct Factor {
    rows: Vec<Vec<Integer>>,
    rhs: Vec<Integer>,
}

impl Factor {
    /// Appends `point` after the current members; `false` if the enlarged
    /// set is affinely dependent.
    fn push(&mut self, kernel: &GramKernel, members: &[usize], point: usize) -> bool {
        let m = self.rows.len();
        debug_assert_eq!(members.len(), m);
        let mut cur: Vec<Integer> = members
            .iter()
            .map(|&i| kernel.bordered[i][point].clone())
            .chain(std::iter::once(kernel.bordered[point][point].clone()))
            .collect();
        let mut cur_b = Integer::from(1);
        let mut prev = Integer::from(1);
        let mut t1 = Integer::new();
        for k in 0..m {
            let ck = cur[k].clone();
            self.rows[k].push(ck.clone());
            let pivot = &self.rows[k][0];
            for j in k + 1..=m {
                t1.assign(pivot * &cur[j]);
                t1 -= &ck * &self.rows[k][j - k];
                cur[j].assign(&t1);
                cur[j].div_exact_mut(&prev);
            }
            t1.assign(pivot * &cur_b);
            t1 -= &ck * &self.rhs[k];
            cur_b.assign(&t1);
            cur_b.div_exact_mut(&prev);
            prev.assign(pivot);
        }
        let last = cur.pop().expect("nonempty");
        if last.cmp0() != Ordering::Greater {
            for k in 0..m {
                self.rows[k].pop();
            }
            return false;
        }
        self.rows.push(vec![last]);
        self.rhs.push(cur_b);
        true
    }

    /// Drops everything from position `r` on.
    fn truncate(&mut self, r: usize) {
        self.rows.truncate(r);
        self.rhs.truncate(r);
        for (k, row) in self.rows.iter_mut().enumerate() {
            row.truncate(r - k);
        }
    }

    /// Affine coefficients of the minimizer, normalized to sum one.
    fn affine_coefficients(&self) -> Scaled {
        let m = self.rows.len();
        let det = &self.rows[m - 1][0];
        let mut x = vec![Integer::new(); m];
        for i in (0..m).rev() {
            let mut acc = Integer::from(&self.rhs[i] * det);
            for j in i + 1..m {
                acc -= &self.rows[i][j - i] * &x[j];
            }
            acc.div_exact_mut(&self.rows[i][0]);
            x[i] = acc;
        }
        let den: Integer = x.iter().sum();
        let mut out = Scaled { num: x, den };
        out.reduce();
        out
    }
}

pub(crate) struct KernelEvent<'a> {
    pub kind: EventKind,
    pub major: usize,
    pub minor: usize,
    pub entering: Option<usize>,
    pub leaving: Option<usize>,
    pub corral: &'a [usize],
    /// Coefficients of `x` over `corral`.
    pub x: &'a Scaled,
    /// Coefficients of the affine minimizer over `corral`.
    pub y: Option<&'a Scaled>,
    /// `θ` as numerator and denominator.
    pub theta: Option<(&'a Integer, &'a Integer)>,
}

pub(crate) struct KernelResult {
    pub corral: Vec<usize>,
    pub lambda: Scaled,
    pub major_cycles: usize,
    pub minor_cycles: usize,
    pub corrals_visited: usize,
}

fn least_norm(kernel: &GramKernel, candidates: impl Iterator<Item = usize>) -> Option<usize> {
    candidates.min_by(|&a, &b| kernel.gram[a][a].cmp(&kernel.gram[b][b]).then(a.cmp(&b)))
}

pub(crate) fn run<F: FnMut(&KernelEvent)>(
    kernel: &GramKernel,
    rule: InsertionRule,
    mut observer: F,
) -> Result<KernelResult, WolfeError> {
    let start = least_norm(kernel, 0..kernel.len()).expect("instances are never empty");
    let mut corral = vec![start];
    let mut lambda = Scaled::unit();
    let mut factor = Factor::default();
    factor.push(kernel, &[], start);
    let (mut major, mut minor_total, mut corrals) = (0, 0, 1);
    observer(&KernelEvent {
        kind: EventKind::CorralReached,
        major: 0,
        minor: 0,
        entering: None,
        leaving: None,
        corral: &corral,
        x: &lambda,
        y: None,
        theta: None,
    });

    loop {
        let (u, s) = kernel.products(&corral, &lambda);
        if s.cmp0() == Ordering::Equal {
            break;
        }
        // p_j · x < ‖x‖²  ⇔  u_j · den < s
        let violators = (0..kernel.len()).filter(|&j| Integer::from(&u[j] * &lambda.den) < s);
        let entering = match rule {
            InsertionRule::MinNorm => least_norm(kernel, violators),
            InsertionRule::LinOpt => violators.min_by(|&a, &b| u[a].cmp(&u[b]).then(a.cmp(&b))),
        };
        let Some(entering) = entering else {
            break;
        };
        major += 1;
        let lost = |corral: &[usize]| WolfeError::LostIndependence {
            major,
            corral: corral.to_vec(),
        };
        if !factor.push(kernel, &corral, entering) {
            corral.push(entering);
            return Err(lost(&corral));
        }
        corral.push(entering);
        lambda.num.push(Integer::new());
        let mut alpha = factor.affine_coefficients();
        observer(&KernelEvent {
            kind: EventKind::MajorEnter,
            major,
            minor: 0,
            entering: Some(entering),
            leaving: None,
            corral: &corral,
            x: &lambda,
            y: Some(&alpha),
            theta: None,
        });

        let mut minor = 0;
        while alpha.num.iter().any(|a| a.cmp0() != Ordering::Greater) {
            minor += 1;
            // θ = min over α_i ≤ 0 of λ_i/(λ_i − α_i), as p/q with q > 0.
            let (mut tp, mut tq): (Option<Integer>, Integer) = (None, Integer::from(1));
            for (l, a) in lambda.num.iter().zip(&alpha.num) {
                if a.cmp0() == Ordering::Greater {
                    continue;
                }
                let (p, q) = if l.cmp0() == Ordering::Equal {
                    (Integer::new(), Integer::from(1))
                } else {
                    let p = Integer::from(l * &alpha.den);
                    let q = Integer::from(&p - &Integer::from(a * &lambda.den));
                    (p, q)
                };
                let better = match &tp {
                    None => true,
                    Some(bp) => Integer::from(&p * &tq) < Integer::from(bp * &q),
                };
                if better {
                    tp = Some(p);
                    tq = q;
                }
            }
            let tp = tp.ok_or(WolfeError::NoNonpositiveCoefficient)?;
            let g = Integer::from(tp.gcd_ref(&tq));
            let (tp, tq) = if g > 1 {
                (tp.div_exact(&g), tq.div_exact(&g))
            } else {
                (tp, tq)
            };
            // w = θα + (1−θ)λ over the common denominator q·den_α·den_λ.
            let rest = Integer::from(&tq - &tp);
            let weights: Vec<Integer> = lambda
                .num
                .iter()
                .zip(&alpha.num)
                .map(|(l, a)| Integer::from(&tp * a) * &lambda.den + Integer::from(&rest * l) * &alpha.den)
                .collect();
            let position = corral
                .iter()
                .enumerate()
                .filter(|(k, _)| weights[*k].cmp0() == Ordering::Equal)
                .min_by_key(|(_, &i)| i)
                .map(|(k, _)| k)
                .expect("the minimizing ratio always zeroes a weight");
            let removed = corral.remove(position);
            let mut next = Scaled {
                num: weights,
                den: Integer::from(&tq * &alpha.den) * &lambda.den,
            };
            next.num.remove(position);
            next.reduce();
            lambda = next;

            factor.truncate(position);
            for k in position..corral.len() {
                if !factor.push(kernel, &corral[..k], corral[k]) {
                    return Err(lost(&corral));
                }
            }
            alpha = factor.affine_coefficients();
            observer(&KernelEvent {
                kind: EventKind::MinorRemove,
                major,
                minor,
                entering: None,
                leaving: Some(removed),
                corral: &corral,
                x: &lambda,
                y: Some(&alpha),
                theta: Some((&tp, &tq)),
            });
        }
        minor_total += minor;
        lambda = alpha;
        corrals += 1;
        observer(&KernelEvent {
            kind: EventKind::CorralReached,
            major,
            minor,
            entering: None,
            leaving: None,
            corral: &corral,
            x: &lambda,
            y: None,
            theta: None,
        });
    }

    Ok(KernelResult {
        corral,
        lambda,
        major_cycles: major,
        minor_cycles: minor_total,
        corrals_visited: corrals,
    })
}
