use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{canonical_cmp, finish, indexed_sum, round, tied};
use crate::model::{Instance, Solution, Terminal};
use crate::scalar::Scalar;

/// Heap entry ordered so that the canonically first activity pops first.
struct Entry<'a, T> {
    inst: &'a Instance<T>,
    index: usize,
}

impl<T: Scalar> PartialEq for Entry<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl<T: Scalar> Eq for Entry<'_, T> {}

impl<T: Scalar> PartialOrd for Entry<'_, T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for Entry<'_, T> {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(self.inst, other.index, self.index)
    }
}

/// Round-by-round form of the exact algorithm.
///
/// Each round looks at the free activities, renormalizes their weights to
/// `alpha_j / A` and asks whether the largest demand
/// `(alpha_j / A) m_res / p_j` is at most `1 + eps`. If so the free variables
/// take those demands. Otherwise every activity tied at the largest ratio is
/// fixed at one and the round repeats on the smaller problem. A priority queue
/// supplies the argmax group, so a round costs `O(g log L)` for a group of
/// size `g` instead of a full rescan.
pub fn solve_iterative<T: Scalar>(inst: &Instance<T>, eps: T) -> Solution<T> {
    let (alpha, p) = (inst.alpha(), inst.p());
    if inst.total_price() <= inst.m() {
        return Solution::all_ones(inst);
    }

    let mut free: BinaryHeap<Entry<'_, T>> = (0..inst.len()).map(|index| Entry { inst, index }).collect();
    let mut fixed = vec![false; inst.len()];
    let mut rounds = Vec::new();
    let mut residual = inst.m();
    let mut mass = inst.weight_mass();
    let bound = T::one() + eps;

    let terminal = loop {
        let top = free.peek().expect("free set is never exhausted").index;
        let demand = alpha[top] / mass * residual / p[top];
        if demand <= bound {
            break Terminal::Interior;
        }
        if free.len() == 1 {
            break Terminal::SingleVariableFormula;
        }

        let top_ratio = inst.ratio(top);
        let mut group = Vec::new();
        while let Some(e) = free.peek() {
            if !tied(top_ratio, inst.ratio(e.index), eps) {
                break;
            }
            group.push(free.pop().expect("peeked").index);
        }
        let next_residual = residual - indexed_sum(p, &group);
        if free.is_empty() || next_residual <= T::zero() {
            // Only reachable when eps is large compared to the gaps between
            // ratios; the whole group is then within eps of its bound.
            free.extend(group.into_iter().map(|index| Entry { inst, index }));
            break Terminal::Interior;
        }
        residual = next_residual;
        mass = mass - indexed_sum(alpha, &group);
        for &j in &group {
            fixed[j] = true;
        }
        rounds.push(round(group, residual, mass));
    };

    finish(inst, &fixed, rounds, terminal)
}
