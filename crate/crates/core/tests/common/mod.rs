#![allow(dead_code)]

use logknap::io::{generate_instance, GeneratorConfig};
use logknap::{Instance64, Solution64};

pub const EPS: f64 = 1e-12;

pub fn worked_example() -> Instance64 {
    Instance64::new(vec![1.0 / 3.0; 3], vec![1.0, 2.0, 3.0], 5.0).unwrap()
}

pub fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn generated(len: usize, seed: u64, tightness: f64, skew: f64) -> Instance64 {
    generate_instance(&GeneratorConfig {
        len,
        seed,
        tightness,
        price_range: (1.0, 10.0),
        weight_skew: skew,
    })
    .unwrap()
}

/// Fixed-at-one structure: the set `{j : x_j = 1}` is closed upward in the
/// ratio order, and when some unbounded demand exceeds one the whole top
/// ratio group sits at one and is a proper subset.
pub fn structure_violation(inst: &Instance64, sol: &Solution64) -> Option<String> {
    let at_one = |v: f64| v >= 1.0 - 1e-12;
    let n = inst.len();
    let ratios: Vec<f64> = (0..n).map(|j| inst.ratio(j)).collect();
    let min_fixed = (0..n)
        .filter(|&j| at_one(sol.x[j]))
        .map(|j| ratios[j])
        .fold(f64::INFINITY, f64::min);
    if let Some(j) = (0..n).find(|&j| ratios[j] > min_fixed * (1.0 + EPS) && !at_one(sol.x[j])) {
        return Some(format!("index {j} outranks a fixed index but x = {}", sol.x[j]));
    }
    if inst.is_nontrivial() {
        let rmax = ratios.iter().copied().fold(0.0, f64::max);
        let overloaded = (0..n).any(|j| inst.alpha()[j] * inst.m() / inst.p()[j] > 1.0 + EPS);
        if overloaded {
            let top: Vec<usize> = (0..n).filter(|&j| ratios[j] >= rmax * (1.0 - EPS)).collect();
            if let Some(&j) = top.iter().find(|&&j| !at_one(sol.x[j])) {
                return Some(format!("argmax index {j} not at one: {}", sol.x[j]));
            }
            if top.len() == n {
                return Some("argmax group is the whole index set".into());
            }
        }
    }
    let mut seen = vec![false; n];
    let mut prev = inst.m();
    for r in &sol.trace.rounds {
        for &j in &r.fixed_indices {
            if std::mem::replace(&mut seen[j], true) {
                return Some(format!("index {j} fixed twice"));
            }
        }
        if !(r.residual_capacity > 0.0 && r.residual_capacity < prev) {
            return Some(format!("residual {} after {prev}", r.residual_capacity));
        }
        prev = r.residual_capacity;
    }
    None
}
