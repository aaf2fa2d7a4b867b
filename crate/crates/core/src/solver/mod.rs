//! The exact fix-and-renormalize algorithm and its duality certificate.
//!
//! Both solvers walk the activities in decreasing bang-per-buck order
//! `alpha_j / p_j`. While the largest remaining renormalized demand
//! `alpha_j m_res / (A p_j)` exceeds one, the whole group of activities tied
//! at the top ratio is fixed at `x_j = 1` and removed, which shrinks the
//! residual capacity `m_res` and the remaining weight mass `A`. Once no demand
//! exceeds one the free variables take `alpha_j m_res / (A p_j)`.
//!
//! [`solve_iterative`] does this round by round on a priority queue;
//! [`solve_sorted`] sorts once and scans prefixes. Both produce bitwise
//! identical results under any permutation of the input, because every sum
//! is taken over values in sorted order.

mod certificate;
mod iterative;
mod sorted;

use std::cmp::Ordering;

pub use certificate::{check_kkt, dual_certificate, multipliers_from_point, DualCertificate, KktReport};
pub use iterative::solve_iterative;
pub use sorted::solve_sorted;

use crate::model::{Instance, Round, Solution, SolveTrace, Terminal};
pub(crate) use crate::scalar::{indexed_sum, multiset_sum};
use crate::scalar::Scalar;

/// Which algorithm to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Iterative,
    #[default]
    Sorted,
    Bisection,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Iterative, Method::Sorted, Method::Bisection];

    pub fn name(self) -> &'static str {
        match self {
            Method::Iterative => "iterative",
            Method::Sorted => "sorted",
            Method::Bisection => "bisection",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "iterative" => Ok(Method::Iterative),
            "sorted" => Ok(Method::Sorted),
            "bisection" => Ok(Method::Bisection),
            other => Err(format!("unknown method '{other}'")),
        }
    }
}

/// Runs the chosen method. Bisection uses the default oracle configuration
/// and can only fail on corrupted input.
pub fn solve<T: Scalar>(inst: &Instance<T>, method: Method, eps: T) -> crate::Result<Solution<T>> {
    match method {
        Method::Iterative => Ok(solve_iterative(inst, eps)),
        Method::Sorted => Ok(solve_sorted(inst, eps)),
        Method::Bisection => {
            crate::oracle::solve_bisection(inst, &Default::default()).map(|b| b.solution)
        }
    }
}

/// Canonical processing order: ratio descending, then weight, then price,
/// then index. Items equal in everything but the index are interchangeable.
pub(crate) fn canonical_cmp<T: Scalar>(inst: &Instance<T>, i: usize, j: usize) -> Ordering {
    let (a, p) = (inst.alpha(), inst.p());
    let desc = |x: T, y: T| y.partial_cmp(&x).unwrap_or(Ordering::Equal);
    desc(inst.ratio(i), inst.ratio(j))
        .then_with(|| desc(a[i], a[j]))
        .then_with(|| desc(p[i], p[j]))
        .then_with(|| i.cmp(&j))
}

/// Two ratios belong to the same tie group.
pub(crate) fn tied<T: Scalar>(top: T, r: T, eps: T) -> bool {
    r >= top - eps * top
}

/// Builds a round record from a freshly fixed group.
pub(crate) fn round<T: Scalar>(mut group: Vec<usize>, residual: T, mass: T) -> Round<T> {
    group.sort_unstable();
    Round {
        fixed_indices: group,
        residual_capacity: residual,
        weight_mass: mass,
    }
}

/// Turns the final fixed/free split into a solution. Sums are recomputed from
/// scratch so that rounding in the running totals does not leak into `x`.
pub(crate) fn finish<T: Scalar>(
    inst: &Instance<T>,
    fixed: &[bool],
    rounds: Vec<Round<T>>,
    terminal: Terminal,
) -> Solution<T> {
    let (alpha, p) = (inst.alpha(), inst.p());
    let fixed_price = multiset_sum((0..inst.len()).filter(|&j| fixed[j]).map(|j| p[j]).collect());
    let residual = inst.m() - fixed_price;
    let mut x = vec![T::one(); inst.len()];
    match terminal {
        Terminal::AllOnes => {}
        Terminal::Interior => {
            let mass = multiset_sum((0..inst.len()).filter(|&j| !fixed[j]).map(|j| alpha[j]).collect());
            let level = residual / mass;
            for j in (0..inst.len()).filter(|&j| !fixed[j]) {
                // demands within eps above one count as interior; clip them to the bound
                x[j] = (alpha[j] * level / p[j]).min(T::one());
            }
        }
        Terminal::SingleVariableFormula => {
            for j in (0..inst.len()).filter(|&j| !fixed[j]) {
                x[j] = (residual / p[j]).min(T::one());
            }
        }
    }
    Solution::assemble(inst, x, SolveTrace { rounds, terminal })
}
