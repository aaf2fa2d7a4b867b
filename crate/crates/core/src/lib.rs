//! Exact solver for the log-linear continuous knapsack problem
//!
//! ```text
//! maximize   sum_j alpha_j ln x_j
//! subject to sum_j p_j x_j <= m,   0 <= x_j <= 1,
//! ```
//!
//! with an optimality certificate built from the KKT multipliers and an
//! independent water-filling oracle for cross-checking.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64`/`*32` aliases below name the common instantiations. Document I/O is
//! `f64` only.
//!
//! ```
//! use logknap::{solve_sorted, Instance64};
//!
//! let inst = Instance64::new(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0], 5.0).unwrap();
//! let sol = solve_sorted(&inst, 1e-12);
//! assert!((sol.x[2] - 2.0 / 3.0).abs() < 1e-12);
//! ```

pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use model::{Instance, Round, Solution, SolveTrace, Terminal};
pub use oracle::{lambda_excess, random_feasible, solve_bisection, Bisection, BisectionConfig};
pub use scalar::Scalar;
pub use solver::{
    check_kkt, dual_certificate, multipliers_from_point, solve, solve_iterative, solve_sorted,
    DualCertificate, KktReport, Method,
};

pub type Instance64 = Instance<f64>;
pub type Instance32 = Instance<f32>;
pub type Solution64 = Solution<f64>;
pub type Solution32 = Solution<f32>;
pub type DualCertificate64 = DualCertificate<f64>;
pub type DualCertificate32 = DualCertificate<f32>;
pub type KktReport64 = KktReport<f64>;
pub type KktReport32 = KktReport<f32>;
