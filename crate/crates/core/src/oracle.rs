//! Independent reference solutions.
//!
//! Water-filling: for a multiplier `lambda > 0` every activity takes its
//! capped stationary value `x_j(lambda) = min(1, alpha_j / (lambda p_j))`.
//! The total load `sum_j p_j x_j(lambda)` is continuous and nonincreasing in
//! `lambda`, so the optimal multiplier is the root of
//! [`lambda_excess`], found here by plain bisection. None of this shares code
//! with the combinatorial solvers in [`crate::solver`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, Solution, SolveTrace, Terminal};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct BisectionConfig<T> {
    /// Stop once `hi - lo <= lambda_tol * hi`.
    pub lambda_tol: T,
    /// Stop once `|excess|` is below this fraction of the load carried by the
    /// uncapped variables.
    pub excess_tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for BisectionConfig<T> {
    fn default() -> Self {
        Self {
            lambda_tol: T::default_eps() * T::lit(0.1),
            excess_tol: T::default_eps(),
            max_iter: 200,
        }
    }
}

/// Oracle output: the solution and the multiplier that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Bisection<T> {
    pub solution: Solution<T>,
    pub lambda: T,
    pub iterations: usize,
}

/// `(total load, load of uncapped variables)` at `lambda`.
fn capped_load<T: Scalar>(inst: &Instance<T>, lambda: T) -> (T, T) {
    inst.alpha()
        .iter()
        .zip(inst.p())
        .fold((T::zero(), T::zero()), |(total, free), (&a, &p)| {
            let demand = a / (lambda * p);
            if demand < T::one() {
                (total + p * demand, free + p * demand)
            } else {
                (total + p, free)
            }
        })
}

/// `sum_j p_j min(1, alpha_j / (lambda p_j)) - m`.
pub fn lambda_excess<T: Scalar>(inst: &Instance<T>, lambda: T) -> Result<T> {
    if !(lambda > T::zero()) {
        return Err(Error::NonPositiveLambda {
            value: lambda.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(capped_load(inst, lambda).0 - inst.m())
}

/// Water-filling solution by bisection on the multiplier.
///
/// The search starts from `[min_j alpha_j / p_j, 1 / m]`: at the left end
/// every variable is capped and the excess is `sum p - m > 0`; at the right
/// end the uncapped load is at most `1 / lambda = m`. If rounding puts an end
/// on the wrong side it is pushed outward by a factor of two.
pub fn solve_bisection<T: Scalar>(inst: &Instance<T>, cfg: &BisectionConfig<T>) -> Result<Bisection<T>> {
    if inst.total_price() <= inst.m() {
        return Ok(Bisection {
            solution: Solution::all_ones(inst),
            lambda: T::zero(),
            iterations: 0,
        });
    }
    let two = T::lit(2.0);
    let excess = |lambda: T| capped_load(inst, lambda).0 - inst.m();

    let mut lo = (0..inst.len())
        .map(|j| inst.ratio(j))
        .fold(T::infinity(), T::min);
    let mut hi = T::one() / inst.m();
    if !(excess(lo) > T::zero()) {
        lo = lo / two;
    }
    if !(excess(hi) <= T::zero()) {
        hi = hi * two;
    }
    if !(lo > T::zero() && lo < hi && excess(lo) > T::zero() && excess(hi) <= T::zero()) {
        return Err(Error::BracketFailure);
    }

    let mut lambda = None;
    let mut iterations = 0;
    while lambda.is_none() && iterations < cfg.max_iter {
        iterations += 1;
        let mid = lo + (hi - lo) / two;
        if mid <= lo || mid >= hi || hi - lo <= cfg.lambda_tol * hi {
            // bracket exhausted: keep the end with the smaller excess
            lambda = Some(if excess(lo).abs() <= excess(hi).abs() { lo } else { hi });
            break;
        }
        let (total, free) = capped_load(inst, mid);
        let e = total - inst.m();
        if e.abs() <= cfg.excess_tol * free {
            lambda = Some(mid);
        } else if e > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lambda = lambda.ok_or(Error::MaxIterExceeded(cfg.max_iter))?;

    let x = inst
        .alpha()
        .iter()
        .zip(inst.p())
        .map(|(&a, &p)| (a / (lambda * p)).min(T::one()))
        .collect();
    let trace = SolveTrace {
        rounds: Vec::new(),
        terminal: Terminal::Interior,
    };
    Ok(Bisection {
        solution: Solution::assemble(inst, x, trace),
        lambda,
        iterations,
    })
}

/// A feasible point drawn deterministically from `seed`: `u_j` uniform in
/// `(0, 1]`, scaled by `min(1, m / sum_j p_j u_j)`.
pub fn random_feasible<T: Scalar>(inst: &Instance<T>, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<T> = (0..inst.len())
        .map(|_| T::lit(1.0 - rng.random::<f64>()))
        .collect();
    let mut scale = (inst.m() / inst.load(&u)).min(T::one());
    loop {
        let z: Vec<T> = u.iter().map(|&v| v * scale).collect();
        if inst.load(&z) <= inst.m() {
            return z;
        }
        scale = scale * (T::one() - T::epsilon() * T::lit(4.0));
    }
}
