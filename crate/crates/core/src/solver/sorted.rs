use std::cmp::Ordering;

use super::{canonical_cmp, finish, indexed_sum, round, tied};
use crate::model::{Instance, Solution, Terminal};
use crate::scalar::Scalar;

/// One sort, then a prefix scan over tie groups of the ratio order.
///
/// Activities fixed at one always form a prefix of the decreasing-ratio order,
/// so it suffices to find the first prefix `k` after which the next ratio
/// `r` satisfies `r * m_k <= A_k * (1 + eps)`. `O(L log L)`.
pub fn solve_sorted<T: Scalar>(inst: &Instance<T>, eps: T) -> Solution<T> {
    let (alpha, p) = (inst.alpha(), inst.p());
    if inst.total_price() <= inst.m() {
        return Solution::all_ones(inst);
    }

    let n = inst.len();
    let order = canonical_order(inst);

    let mut k = 0;
    let mut residual = inst.m();
    let mut mass = inst.weight_mass();
    let mut rounds = Vec::new();
    let bound = T::one() + eps;

    let terminal = loop {
        let top = inst.ratio(order[k]);
        if top * residual <= mass * bound {
            break Terminal::Interior;
        }
        if n - k == 1 {
            break Terminal::SingleVariableFormula;
        }
        let end = k + order[k..]
            .iter()
            .take_while(|&&j| tied(top, inst.ratio(j), eps))
            .count();
        let group = &order[k..end];
        let next_residual = residual - indexed_sum(p, group);
        if end == n || next_residual <= T::zero() {
            break Terminal::Interior;
        }
        residual = next_residual;
        mass = mass - indexed_sum(alpha, group);
        rounds.push(round(group.to_vec(), residual, mass));
        k = end;
    };

    let mut fixed = vec![false; n];
    for &j in &order[..k] {
        fixed[j] = true;
    }
    finish(inst, &fixed, rounds, terminal)
}

/// Indices in canonical order. Sorting on the ratio alone is much cheaper
/// than the full key; runs of exactly equal ratios are then put in order.
fn canonical_order<T: Scalar>(inst: &Instance<T>) -> Vec<usize> {
    let mut keyed: Vec<(T, usize)> = (0..inst.len()).map(|j| (inst.ratio(j), j)).collect();
    keyed.sort_unstable_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(Ordering::Equal));
    let mut order: Vec<usize> = keyed.iter().map(|k| k.1).collect();
    let mut start = 0;
    while start < keyed.len() {
        let end = start + keyed[start..].iter().take_while(|k| k.0 == keyed[start].0).count();
        if end - start > 1 {
            order[start..end].sort_unstable_by(|&i, &j| canonical_cmp(inst, i, j));
        }
        start = end;
    }
    order
}
