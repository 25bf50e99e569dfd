#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use minnorm::geometry::{
    affine_minimizer, affinely_independent, gram_schmidt_complement, solve_linear_system, wolfe_violators,
    RationalMatrix, RationalVector,
};
use minnorm::rational::{int, rat, Rational};
use minnorm::reductions::LpInstance;
use minnorm::wolfe::{is_corral, solve, EventKind, InsertionRule, Instance, Solution, TraceEvent};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, num: i64, den: i64) -> RationalVector {
    RationalVector::new((0..dim).map(|_| random_rational(rng, num, den)).collect())
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize, num: i64, den: i64) -> Vec<RationalVector> {
    (0..n).map(|_| random_vector(rng, dim, num, den)).collect()
}

/// Embeds `v` at coordinate `offset` of a `dim`-vector.
pub fn embed(v: &RationalVector, offset: usize, dim: usize) -> RationalVector {
    let mut coords = vec![Rational::zero(); dim];
    for (i, c) in v.coords().iter().enumerate() {
        coords[offset + i] = c.clone();
    }
    RationalVector::new(coords)
}

static CHECKED_RUNS: AtomicUsize = AtomicUsize::new(0);

/// Number of runs that went through [`checked_solve`] in this process.
pub fn checked_runs() -> usize {
    CHECKED_RUNS.load(Ordering::Relaxed)
}

/// Runs the solver and checks every run invariant exactly: corrals at
/// corral events, strictly decreasing norms, no repeated corral, at most
/// `d + 1` minor cycles per major cycle, independence after each entry,
/// a convex certificate for the answer and an empty violator set.
pub fn checked_solve(instance: &Instance, rule: InsertionRule) -> Result<(Solution, Vec<TraceEvent>), String> {
    let (solution, trace) = solve(instance, rule).map_err(|e| format!("solver error: {e}"))?;
    CHECKED_RUNS.fetch_add(1, Ordering::Relaxed);
    let points = |set: &[usize]| -> Vec<RationalVector> { set.iter().map(|&i| instance.point(i).clone()).collect() };
    let mut seen = HashSet::new();
    let mut last_norm: Option<Rational> = None;
    for event in &trace {
        match event.kind {
            EventKind::CorralReached => {
                let set = event.corral_set();
                if !is_corral(&points(&set)).map_err(|e| e.to_string())? {
                    return Err(format!("{set:?} is not a corral"));
                }
                if !seen.insert(set.clone()) {
                    return Err(format!("corral {set:?} visited twice"));
                }
                let norm = event.x.norm_squared();
                if last_norm.as_ref().is_some_and(|prev| norm >= *prev) {
                    return Err(format!("norm did not decrease at {set:?}"));
                }
                last_norm = Some(norm);
                if event.minor > instance.dim() + 1 {
                    return Err(format!("{} minor cycles in major cycle {}", event.minor, event.major));
                }
            }
            EventKind::MajorEnter => {
                if !affinely_independent(&points(&event.corral)) {
                    return Err(format!("dependent after entering at major cycle {}", event.major));
                }
            }
            _ => {}
        }
    }
    if !wolfe_violators(&solution.x, instance.points()).is_empty() {
        return Err("final point has violators".into());
    }
    let lambda_sum: Rational = solution.lambda.iter().sum();
    if !lambda_sum.is_one() || solution.lambda.iter().any(|l| !l.is_positive()) {
        return Err("final coefficients are not a strict convex combination".into());
    }
    let corral_points = points(&solution.corral);
    if RationalVector::combination(&corral_points, &solution.lambda) != solution.x {
        return Err("final coefficients do not reproduce x".into());
    }
    let am = affine_minimizer(&corral_points).map_err(|e| e.to_string())?;
    if am.point != solution.x || solution.norm_squared != solution.x.norm_squared() {
        return Err("final corral minimizer differs from x".into());
    }
    Ok((solution, trace))
}

/// Outcome of the reference LP solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReferenceOutcome {
    Optimal(Rational),
    Infeasible,
    Infinite,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `max cᵀx s.t. A x ≤ b` by enumerating every basis of the standard form
/// `[A −A I](x⁺, x⁻, s) = b ≥ 0`: basic feasible solutions give the
/// vertices, and basic directions with nonnegative entries give the
/// extreme rays of the recession cone.
pub fn reference_lp(lp: &LpInstance) -> ReferenceOutcome {
    let (d, n) = (lp.a.rows(), lp.a.cols());
    let width = 2 * n + d;
    let mut m = RationalMatrix::zeros(d, width);
    for i in 0..d {
        for j in 0..n {
            m[(i, j)] = lp.a[(i, j)].clone();
            m[(i, n + j)] = -lp.a[(i, j)].clone();
        }
        m[(i, 2 * n + i)] = Rational::one();
    }
    let cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < n {
                lp.c[j].clone()
            } else if j < 2 * n {
                -lp.c[j - n].clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut best: Option<Rational> = None;
    let mut improving_ray = false;
    for basis in subsets(width, d) {
        let mb = RationalMatrix::from_columns(&basis.iter().map(|&j| m.column(j)).collect::<Vec<_>>());
        let Some(y) = solve_linear_system(&mb, &lp.b) else {
            continue;
        };
        if y.coords().iter().all(|v| !v.is_negative()) {
            let value: Rational = basis.iter().zip(y.coords()).map(|(&j, v)| &cost[j] * v).sum();
            if best.as_ref().map_or(true, |b| value > *b) {
                best = Some(value);
            }
        }
        for j in (0..width).filter(|j| !basis.contains(j)) {
            let Some(r) = solve_linear_system(&mb, &m.column(j).scaled(&-Rational::one())) else {
                continue;
            };
            if r.coords().iter().all(|v| !v.is_negative()) {
                let gain: Rational = &cost[j]
                    + basis
                        .iter()
                        .zip(r.coords())
                        .map(|(&k, v)| &cost[k] * v)
                        .sum::<Rational>();
                if gain.is_positive() {
                    improving_ray = true;
                }
            }
        }
    }
    match best {
        None => ReferenceOutcome::Infeasible,
        Some(_) if improving_ray => ReferenceOutcome::Infinite,
        Some(v) => ReferenceOutcome::Optimal(v),
    }
}

pub fn random_lp(rng: &mut ChaCha8Rng) -> LpInstance {
    let d = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=3);
    let entry = |rng: &mut ChaCha8Rng| int(rng.gen_range(-3..=3));
    let a: Vec<Vec<Rational>> = (0..d).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
    let b = RationalVector::new((0..d).map(|_| entry(rng)).collect());
    let c = RationalVector::new((0..n).map(|_| entry(rng)).collect());
    LpInstance::new(RationalMatrix::from_rows(&a), b, c).expect("shapes agree")
}

/// Affinely independent random points spanning coordinates
/// `offset..offset + span` of `R^dim`, with a nonzero affine minimizer.
fn independent_block(
    rng: &mut ChaCha8Rng,
    count: usize,
    span: usize,
    offset: usize,
    dim: usize,
) -> Option<Vec<RationalVector>> {
    let pts: Vec<RationalVector> = (0..count)
        .map(|_| embed(&random_vector(rng, span, 6, 4), offset, dim))
        .collect();
    if !affinely_independent(&pts) || affine_minimizer(&pts).ok()?.point.is_zero() {
        return None;
    }
    Some(pts)
}

/// Separable minimizer: for `P ⊂ span(e_1..e_j)` and
/// `Q ⊂ span(e_{j+1}..e_d)` with nonzero affine minimizers `x`, `y`, the
/// minimizer of `P ∪ Q` is `λx + (1−λ)y`, `λ = ‖y‖²/(‖x‖² + ‖y‖²)`.
/// `Ok(false)` means the sample was rejected.
pub fn separable_trial(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let dim = rng.gen_range(2..=5);
    let j = rng.gen_range(1..dim);
    let (kp, kq) = (rng.gen_range(1..=j), rng.gen_range(1..=dim - j));
    let Some(p) = independent_block(rng, kp, j, 0, dim) else {
        return Ok(false);
    };
    let Some(q) = independent_block(rng, kq, dim - j, j, dim) else {
        return Ok(false);
    };
    let x = affine_minimizer(&p).map_err(|e| e.to_string())?.point;
    let y = affine_minimizer(&q).map_err(|e| e.to_string())?.point;
    let union: Vec<RationalVector> = p.iter().chain(&q).cloned().collect();
    let combined = affine_minimizer(&union).map_err(|e| format!("union rejected: {e}"))?;
    let lambda = y.norm_squared() / (x.norm_squared() + y.norm_squared());
    let expected = x.lerp(&y, &lambda);
    if combined.point != expected {
        return Err(format!("minimizer {} differs from {}", combined.point, expected));
    }
    Ok(true)
}

/// Corral extension: for a corral `P` with minimizer `x ≠ 0` and
/// `q ∈ span(x, span(P)^⊥)` with `q·x < min(‖q‖², ‖x‖²)`, `P ∪ {q}` is a
/// corral whose minimizer is `λx + (1−λ)q`, `λ = q·(q−x)/‖q−x‖²`.
pub fn extension_trial(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let dim = rng.gen_range(2..=5);
    let k = rng.gen_range(1..dim);
    let p = random_points(rng, k, dim, 6, 4);
    if !affinely_independent(&p) || !is_corral(&p).map_err(|e| e.to_string())? {
        return Ok(false);
    }
    let x = affine_minimizer(&p).map_err(|e| e.to_string())?.point;
    if x.is_zero() {
        return Ok(false);
    }
    let perp = gram_schmidt_complement(&p, dim);
    let mut q = x.scaled(&rat(rng.gen_range(-8..=7), 8));
    for w in &perp {
        q = RationalVector::combination(&[q, w.clone()], &[Rational::one(), random_rational(rng, 4, 3)]);
    }
    let qx = q.dot(&x);
    if qx >= q.norm_squared() || qx >= x.norm_squared() {
        return Ok(false);
    }
    let mut union = p.clone();
    union.push(q.clone());
    if !is_corral(&union).map_err(|e| format!("union rejected: {e}"))? {
        return Err("extended set is not a corral".into());
    }
    let diff = RationalVector::combination(&[q.clone(), x.clone()], &[Rational::one(), -Rational::one()]);
    let lambda = q.dot(&diff) / diff.norm_squared();
    let expected = x.lerp(&q, &lambda);
    let found = affine_minimizer(&union).map_err(|e| e.to_string())?.point;
    if found != expected {
        return Err(format!("minimizer {found} differs from {expected}"));
    }
    Ok(true)
}

/// Orthogonal extension keeps the improving half-space inside the
/// subspace: for `P ⊂ A = span(e_1..e_j)`, `Q ⊂ A^⊥`, `x` the minimizer of
/// `P` and `y` that of `P ∪ Q`, each `a ∈ A` has `a·y < ‖y‖²` iff
/// `a·x < ‖x‖²`, provided `y ≠ 0`.
pub fn halfspace_trial(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    let dim = rng.gen_range(2..=5);
    let j = rng.gen_range(1..dim);
    let p: Vec<RationalVector> = (0..rng.gen_range(1..=j))
        .map(|_| embed(&random_vector(rng, j, 6, 4), 0, dim))
        .collect();
    let q: Vec<RationalVector> = (0..rng.gen_range(1..=dim - j))
        .map(|_| embed(&random_vector(rng, dim - j, 6, 4), j, dim))
        .collect();
    let union: Vec<RationalVector> = p.iter().chain(&q).cloned().collect();
    if !affinely_independent(&union) {
        return Ok(false);
    }
    let x = affine_minimizer(&p).map_err(|e| e.to_string())?.point;
    let y = affine_minimizer(&union).map_err(|e| e.to_string())?.point;
    // With 0 in aff(P ∪ Q), H_y is empty rather than a half-space and the
    // claim fails whenever x ≠ 0; the argument needs y ≠ 0.
    if y.is_zero() {
        return Ok(false);
    }
    let (nx, ny) = (x.norm_squared(), y.norm_squared());
    for _ in 0..20 {
        let a = embed(&random_vector(rng, j, 8, 4), 0, dim);
        if (a.dot(&y) < ny) != (a.dot(&x) < nx) {
            return Err(format!("test point {a} separates {x} and {y} differently"));
        }
    }
    // x and the points of P lie on both boundaries.
    for a in p.iter().chain(std::iter::once(&x)) {
        if (a.dot(&y) < ny) != (a.dot(&x) < nx) {
            return Err(format!("boundary point {a} classified differently"));
        }
    }
    Ok(true)
}

/// Runs `trial` until `target` samples are accepted.
pub fn run_trials(
    seed: u64,
    target: usize,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Result<bool, String>,
) -> Result<usize, String> {
    let mut rng = rng(seed);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < target {
        attempts += 1;
        if attempts > target * 200 {
            return Err(format!("only {accepted} of {target} samples accepted"));
        }
        if trial(&mut rng)? {
            accepted += 1;
        }
    }
    Ok(accepted)
}
