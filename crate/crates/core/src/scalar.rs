//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point type the solver can run on (`f32` or `f64`).
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Relative tolerance used for every boundary comparison unless overridden.
    fn default_eps() -> Self;

    /// Converts an `f64` literal. Panics only for values the type cannot hold,
    /// which never happens for the finite constants used in this crate.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl Scalar for f64 {
    fn default_eps() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn default_eps() -> Self {
        1e-6
    }
}

/// Plain left-to-right sum.
pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// Sum of a multiset that does not depend on the order the values come in.
/// Two-term sums are exact-order-independent already.
pub(crate) fn multiset_sum<T: Scalar>(mut values: Vec<T>) -> T {
    if values.len() <= 2 {
        return sum(values);
    }
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    sum(values)
}


/// [`multiset_sum`] over `values[j]` for `j` in `indices`.
pub(crate) fn indexed_sum<T: Scalar>(values: &[T], indices: &[usize]) -> T {
    match indices {
        [] => T::zero(),
        [j] => values[*j],
        _ => multiset_sum(indices.iter().map(|&j| values[j]).collect()),
    }
}
