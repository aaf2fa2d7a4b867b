//! Problem and solution data.
//!
//! An [`Instance`] holds the weights `alpha` (normalized onto the simplex),
//! the per-activity prices `p` and the capacity `m` of the problem
//!
//! ```text
//! maximize   sum_j alpha_j ln x_j
//! subject to sum_j p_j x_j <= m,   0 <= x_j <= 1.
//! ```
//!
//! Raw weights only need to be strictly positive: intake divides each of them
//! by their sum, so `(1, 1, 1)` and `(1/3, 1/3, 1/3)` describe the same
//! problem. The normalization factor is not kept.

use crate::error::{Error, Result};
use crate::scalar::{multiset_sum, sum, Scalar};

fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn check_finite<T: Scalar>(values: &[T], field: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { field })
    }
}

fn check_len(field: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            field,
            expected,
            found,
        })
    }
}

/// A validated log-linear knapsack instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    alpha: Vec<T>,
    p: Vec<T>,
    m: T,
    // order-independent sums, cached
    weight_mass: T,
    total_price: T,
}

impl<T: Scalar> Instance<T> {
    /// Validates raw input and normalizes the weights onto the simplex.
    pub fn new(raw_alpha: Vec<T>, raw_p: Vec<T>, raw_m: T) -> Result<Self> {
        if raw_alpha.is_empty() {
            return Err(Error::EmptyInstance);
        }
        check_len("p", raw_alpha.len(), raw_p.len())?;
        check_finite(&raw_alpha, "alpha")?;
        check_finite(&raw_p, "p")?;
        check_finite(&[raw_m], "m")?;
        if let Some((index, &value)) = raw_alpha.iter().enumerate().find(|(_, a)| **a <= T::zero()) {
            return Err(Error::NonPositiveWeight {
                index,
                value: to_f64(value),
            });
        }
        if let Some((index, &value)) = raw_p.iter().enumerate().find(|(_, p)| **p <= T::zero()) {
            return Err(Error::NonPositivePrice {
                index,
                value: to_f64(value),
            });
        }
        if raw_m <= T::zero() {
            return Err(Error::NonPositiveCapacity {
                value: to_f64(raw_m),
            });
        }
        let total = multiset_sum(raw_alpha.clone());
        if !total.is_finite() {
            return Err(Error::NonFinite { field: "alpha" });
        }
        let alpha: Vec<T> = raw_alpha.into_iter().map(|a| a / total).collect();
        Ok(Self {
            weight_mass: multiset_sum(alpha.clone()),
            total_price: multiset_sum(raw_p.clone()),
            alpha,
            p: raw_p,
            m: raw_m,
        })
    }

    /// Builds the knapsack form of a resource-allocation problem in which
    /// activity `j` may receive at most `caps[j]` units of a resource of which
    /// `m` units exist. Solving the result and mapping back with
    /// [`Instance::allocation_of`] gives the allocation maximizing
    /// `sum_j alpha_j ln y_j`; the two objectives differ by the constant
    /// `sum_j alpha_j ln caps_j`.
    pub fn from_allocation(alpha: Vec<T>, caps: Vec<T>, m: T) -> Result<Self> {
        Self::new(alpha, caps, m)
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn p(&self) -> &[T] {
        &self.p
    }

    pub fn m(&self) -> T {
        self.m
    }

    /// Number of activities.
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    /// Always false for a validated instance.
    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `sum_j p_j`, independent of the order of the activities.
    pub fn total_price(&self) -> T {
        self.total_price
    }

    /// `sum_j alpha_j` after normalization; one up to rounding.
    pub fn weight_mass(&self) -> T {
        self.weight_mass
    }

    /// True when `sum p > m`, i.e. the all-ones point is infeasible and the
    /// packaging constraint binds at the optimum.
    pub fn is_nontrivial(&self) -> bool {
        self.total_price() > self.m
    }

    /// Bang-per-buck ratio `alpha_j / p_j`.
    pub fn ratio(&self, j: usize) -> T {
        self.alpha[j] / self.p[j]
    }

    /// `sum_j alpha_j ln x_j`.
    pub fn objective(&self, x: &[T]) -> Result<T> {
        check_len("x", self.len(), x.len())?;
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !(**v > T::zero())) {
            return Err(Error::DomainError {
                index,
                value: to_f64(value),
            });
        }
        Ok(sum(self.alpha.iter().zip(x).map(|(&a, &v)| a * v.ln())))
    }

    /// Multiplies prices and capacity by `t`; the feasible set in `x` and the
    /// optimum do not change.
    pub fn scale(&self, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::NonPositiveScale { value: to_f64(t) });
        }
        let p: Vec<T> = self.p.iter().map(|&p| t * p).collect();
        Ok(Self {
            alpha: self.alpha.clone(),
            total_price: multiset_sum(p.clone()),
            weight_mass: self.weight_mass,
            p,
            m: t * self.m,
        })
    }

    /// Resource amounts `y_j = p_j x_j` for a knapsack point `x`.
    pub fn allocation_of(&self, x: &[T]) -> Result<Vec<T>> {
        check_len("x", self.len(), x.len())?;
        Ok(self.p.iter().zip(x).map(|(&p, &v)| p * v).collect())
    }

    /// `sum_j p_j x_j`.
    pub fn load(&self, x: &[T]) -> T {
        sum(self.p.iter().zip(x).map(|(&p, &v)| p * v))
    }
}

/// How the solver finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// `sum p <= m`: every variable sits at its upper bound.
    AllOnes,
    /// The remaining variables take their unbounded optimum
    /// `alpha_j m_res / (A p_j)`.
    Interior,
    /// One variable was left and absorbed the residual capacity.
    SingleVariableFormula,
}

/// One fix-to-one step of the exact algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct Round<T> {
    /// 0-based indices fixed at 1 in this round, ascending.
    pub fixed_indices: Vec<usize>,
    /// Capacity left for the still-free variables after this round.
    pub residual_capacity: T,
    /// Sum of the original weights over the still-free variables.
    pub weight_mass: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace<T> {
    pub rounds: Vec<Round<T>>,
    pub terminal: Terminal,
}

impl<T> SolveTrace<T> {
    /// Fixed groups, round by round.
    pub fn fixed_groups(&self) -> Vec<Vec<usize>> {
        self.rounds.iter().map(|r| r.fixed_indices.clone()).collect()
    }
}

/// Optimal point with its objective value and how it was found.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// Packaging constraint holds with equality (`sum p >= m`).
    pub tight: bool,
    pub trace: SolveTrace<T>,
}

impl<T: Scalar> Solution<T> {
    pub(crate) fn assemble(inst: &Instance<T>, x: Vec<T>, trace: SolveTrace<T>) -> Self {
        let objective = sum(inst.alpha().iter().zip(&x).map(|(&a, &v)| a * v.ln()));
        let tight = inst.total_price() >= inst.m();
        Self {
            x,
            objective,
            tight,
            trace,
        }
    }

    pub(crate) fn all_ones(inst: &Instance<T>) -> Self {
        Self::assemble(
            inst,
            vec![T::one(); inst.len()],
            SolveTrace {
                rounds: Vec::new(),
                terminal: Terminal::AllOnes,
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Instance<f64> {
        Instance::new(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0], 5.0).unwrap()
    }

    #[test]
    fn normalizes_weights() {
        let inst = example();
        for &a in inst.alpha() {
            assert!((a - 1.0 / 3.0).abs() < 1e-15);
        }
        assert_eq!(inst.p(), &[1.0, 2.0, 3.0]);
        assert_eq!(inst.m(), 5.0);
    }

    #[test]
    fn simplex_weights_unchanged() {
        let inst = Instance::new(vec![0.5, 0.5], vec![1.0, 1.0], 1.0).unwrap();
        assert_eq!(inst.alpha(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Instance::new(vec![0.5, -0.5], vec![1.0, 1.0], 1.0),
            Err(Error::NonPositiveWeight {
                index: 1,
                value: -0.5
            })
        );
        assert_eq!(
            Instance::<f64>::new(vec![], vec![], 1.0),
            Err(Error::EmptyInstance)
        );
        assert!(matches!(
            Instance::new(vec![1.0], vec![0.0], 1.0),
            Err(Error::NonPositivePrice { index: 0, .. })
        ));
        assert!(matches!(
            Instance::new(vec![1.0], vec![1.0], 0.0),
            Err(Error::NonPositiveCapacity { .. })
        ));
        assert!(matches!(
            Instance::new(vec![f64::NAN], vec![1.0], 1.0),
            Err(Error::NonFinite { field: "alpha" })
        ));
        assert!(matches!(
            Instance::new(vec![1.0], vec![1.0], f64::INFINITY),
            Err(Error::NonFinite { field: "m" })
        ));
        assert!(matches!(
            Instance::new(vec![1.0], vec![1.0, 2.0], 1.0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn objective_values() {
        let inst = example();
        assert_eq!(inst.objective(&[1.0, 1.0, 1.0]).unwrap(), 0.0);
        let v = inst.objective(&[1.0, 1.0, 2.0 / 3.0]).unwrap();
        assert!((v - (-0.13515504)).abs() < 1e-8);
        let half = Instance::new(vec![0.5, 0.5], vec![1.0, 1.0], 1.0).unwrap();
        let e2 = (-2.0f64).exp();
        assert!((half.objective(&[e2, e2]).unwrap() + 2.0).abs() < 1e-15);
        assert!(matches!(
            inst.objective(&[1.0, 0.0, 1.0]),
            Err(Error::DomainError { index: 1, .. })
        ));
    }

    #[test]
    fn scaling() {
        let inst = example();
        let scaled = inst.scale(2.0).unwrap();
        assert_eq!(scaled.p(), &[2.0, 4.0, 6.0]);
        assert_eq!(scaled.m(), 10.0);
        assert_eq!(inst.scale(1.0).unwrap(), inst);
        assert!(matches!(inst.scale(0.0), Err(Error::NonPositiveScale { .. })));
    }

    #[test]
    fn allocation_helpers() {
        let inst = Instance::from_allocation(vec![1.0 / 3.0; 3], vec![1.0, 2.0, 3.0], 5.0).unwrap();
        assert_eq!(inst.p(), example().p());
        let y = inst.allocation_of(&[1.0, 1.0, 2.0 / 3.0]).unwrap();
        assert_eq!(y, vec![1.0, 2.0, 2.0]);
        assert_eq!(inst.allocation_of(&[0.0; 3]).unwrap(), vec![0.0; 3]);
        assert!(matches!(
            inst.allocation_of(&[1.0, 1.0]),
            Err(Error::LengthMismatch { .. })
        ));

        let pair = Instance::from_allocation(vec![1.0, 1.0], vec![2.0, 2.0], 4.0).unwrap();
        assert_eq!(pair.alpha(), &[0.5, 0.5]);
        assert!(matches!(
            Instance::from_allocation(vec![1.0], vec![0.0], 1.0),
            Err(Error::NonPositivePrice { .. })
        ));
    }

    #[test]
    fn works_in_single_precision() {
        let inst = Instance::<f32>::new(vec![1.0, 3.0], vec![1.0, 1.0], 1.0).unwrap();
        assert_eq!(inst.alpha(), &[0.25, 0.75]);
    }
}
