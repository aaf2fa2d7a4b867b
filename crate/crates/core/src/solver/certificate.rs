//! Lagrange multipliers for the packaging constraint and the upper bounds,
//! and a checker for the resulting KKT system.
//!
//! At the optimum of a nontrivial instance there is `lambda > 0` and
//! `mu >= 0` with
//!
//! ```text
//! alpha_j / x_j = lambda p_j + mu_j     for every j
//! mu_j (1 - x_j) = 0                    for every j
//! ```
//!
//! The objective is strictly concave, so a point that satisfies these
//! together with primal feasibility is the unique global maximizer.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::{sum, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate<T> {
    /// Multiplier of `sum p_j x_j <= m`.
    pub lambda: T,
    /// Multipliers of `x_j <= 1`.
    pub mu: Vec<T>,
}

fn check_positive<T: Scalar>(x: &[T]) -> Result<()> {
    match x.iter().enumerate().find(|(_, v)| !(**v > T::zero())) {
        Some((index, v)) => Err(Error::DomainError {
            index,
            value: v.to_f64().unwrap_or(f64::NAN),
        }),
        None => Ok(()),
    }
}

/// Reads the multipliers off a point without asking whether it is feasible.
///
/// `lambda` comes from the free variable (`x_j < 1`) carrying the largest
/// load `p_j x_j`, as `alpha_j / (p_j x_j)`. When every variable sits at one
/// the weights sum to one and `lambda = 1 / m`. Then
/// `mu_j = max(0, alpha_j / x_j - lambda p_j)`.
pub fn multipliers_from_point<T: Scalar>(inst: &Instance<T>, x: &[T]) -> Result<DualCertificate<T>> {
    if x.len() != inst.len() {
        return Err(Error::LengthMismatch {
            field: "x",
            expected: inst.len(),
            found: x.len(),
        });
    }
    check_positive(x)?;
    let (alpha, p) = (inst.alpha(), inst.p());
    let anchor = (0..inst.len())
        .filter(|&j| x[j] < T::one())
        .fold(None, |best: Option<usize>, j| match best {
            Some(b) if p[b] * x[b] >= p[j] * x[j] => Some(b),
            _ => Some(j),
        });
    let lambda = match anchor {
        Some(j) => alpha[j] / (p[j] * x[j]),
        None => T::one() / inst.m(),
    };
    let mu = (0..inst.len())
        .map(|j| (alpha[j] / x[j] - lambda * p[j]).max(T::zero()))
        .collect();
    Ok(DualCertificate { lambda, mu })
}

/// Certificate for a solver output on a nontrivial instance.
///
/// Fails with [`Error::NoCertificateNeeded`] when `sum p <= m` and with
/// [`Error::InconsistentSolution`] when `x` is infeasible beyond `tol`.
pub fn dual_certificate<T: Scalar>(inst: &Instance<T>, x: &[T], tol: T) -> Result<DualCertificate<T>> {
    if !inst.is_nontrivial() {
        return Err(Error::NoCertificateNeeded);
    }
    if x.len() != inst.len() {
        return Err(Error::LengthMismatch {
            field: "x",
            expected: inst.len(),
            found: x.len(),
        });
    }
    check_positive(x)?;
    if let Some(j) = x.iter().position(|&v| v > T::one() + tol) {
        return Err(Error::InconsistentSolution(format!("x[{j}] = {} exceeds 1", x[j])));
    }
    let load = inst.load(x);
    if load > inst.m() * (T::one() + tol) {
        return Err(Error::InconsistentSolution(format!(
            "load {load} exceeds capacity {}",
            inst.m()
        )));
    }
    multipliers_from_point(inst, x)
}

/// Result of [`check_kkt`]; `verdict` is the conjunction of everything else.
#[derive(Debug, Clone, PartialEq)]
pub struct KktReport<T> {
    /// `max_j |alpha_j / x_j - lambda p_j - mu_j|`
    pub stationarity_residual: T,
    /// `max_j |mu_j (1 - x_j)|`
    pub comp_slack_residual: T,
    /// `sum_j p_j x_j`
    pub load: T,
    pub primal_feasibility: bool,
    pub dual_feasibility: bool,
    /// `sum_j mu_j < 1`
    pub mu_mass_ok: bool,
    pub verdict: bool,
}

impl<T: Scalar> KktReport<T> {
    /// Names of the conditions that failed.
    pub fn failures(&self, tol: T) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.primal_feasibility {
            out.push("primal_feasibility");
        }
        if !self.dual_feasibility {
            out.push("dual_feasibility");
        }
        if !(self.stationarity_residual <= tol) {
            out.push("stationarity");
        }
        if !(self.comp_slack_residual <= tol) {
            out.push("complementary_slackness");
        }
        if !self.mu_mass_ok {
            out.push("mu_mass");
        }
        out
    }
}

impl<T: Scalar> fmt::Display for KktReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "stationarity_residual: {:e}", self.stationarity_residual)?;
        writeln!(f, "comp_slack_residual: {:e}", self.comp_slack_residual)?;
        writeln!(f, "load: {}", self.load)?;
        writeln!(f, "primal_feasibility: {}", self.primal_feasibility)?;
        writeln!(f, "dual_feasibility: {}", self.dual_feasibility)?;
        writeln!(f, "mu_mass_ok: {}", self.mu_mass_ok)?;
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Evaluates every KKT condition of `x` against `cert`.
///
/// Primal feasibility allows a relative slack of `tol` on the capacity and an
/// absolute slack of `tol` on the bounds, and demands `|load - m| <= tol m`
/// when `sum p > m`. Dual feasibility is `lambda > 0` and `mu_j >= -tol`.
pub fn check_kkt<T: Scalar>(
    inst: &Instance<T>,
    x: &[T],
    cert: &DualCertificate<T>,
    tol: T,
) -> Result<KktReport<T>> {
    if !(tol > T::zero()) {
        return Err(Error::NonPositiveTolerance {
            value: tol.to_f64().unwrap_or(f64::NAN),
        });
    }
    for (field, len) in [("x", x.len()), ("mu", cert.mu.len())] {
        if len != inst.len() {
            return Err(Error::LengthMismatch {
                field,
                expected: inst.len(),
                found: len,
            });
        }
    }
    check_positive(x)?;
    let (alpha, p, m) = (inst.alpha(), inst.p(), inst.m());

    let mut stationarity = T::zero();
    let mut comp_slack = T::zero();
    for j in 0..inst.len() {
        let s = (alpha[j] / x[j] - cert.lambda * p[j] - cert.mu[j]).abs();
        let c = (cert.mu[j] * (T::one() - x[j])).abs();
        // NaN must poison the residuals, not vanish in max()
        stationarity = if s.is_nan() || s > stationarity { s } else { stationarity };
        comp_slack = if c.is_nan() || c > comp_slack { c } else { comp_slack };
    }

    let load = inst.load(x);
    let within_capacity = load <= m + tol * m;
    let within_bounds = x.iter().all(|&v| v <= T::one() + tol);
    let tight = !inst.is_nontrivial() || (load - m).abs() <= tol * m;
    let primal_feasibility = within_capacity && within_bounds && tight;
    let dual_feasibility = cert.lambda > T::zero() && cert.mu.iter().all(|&u| u >= -tol);
    let mu_mass_ok = sum(cert.mu.iter().copied()) < T::one();

    let verdict = primal_feasibility
        && dual_feasibility
        && mu_mass_ok
        && stationarity <= tol
        && comp_slack <= tol;
    Ok(KktReport {
        stationarity_residual: stationarity,
        comp_slack_residual: comp_slack,
        load,
        primal_feasibility,
        dual_feasibility,
        mu_mass_ok,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Instance<f64> {
        Instance::new(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0], 5.0).unwrap()
    }

    #[test]
    fn worked_example_certificate() {
        let inst = example();
        let x = [1.0, 1.0, 2.0 / 3.0];
        let cert = dual_certificate(&inst, &x, 1e-12).unwrap();
        assert!((cert.lambda - 1.0 / 6.0).abs() <= 1e-12);
        assert!((cert.mu[0] - 1.0 / 6.0).abs() <= 1e-12);
        assert!(cert.mu[1].abs() <= 1e-12);
        assert_eq!(cert.mu[2], 0.0);
        let report = check_kkt(&inst, &x, &cert, 1e-12).unwrap();
        assert!(report.verdict, "{report}");
        assert!(report.stationarity_residual <= 1e-12);
        assert!(report.comp_slack_residual <= 1e-12);
    }

    #[test]
    fn symmetric_interior_certificate() {
        let inst = Instance::new(vec![0.5, 0.5], vec![1.0, 1.0], 1.0).unwrap();
        let cert = dual_certificate(&inst, &[0.5, 0.5], 1e-12).unwrap();
        assert_eq!(cert.lambda, 1.0);
        assert_eq!(cert.mu, vec![0.0, 0.0]);
    }

    #[test]
    fn trivial_instance_needs_no_certificate() {
        let inst = Instance::new(vec![0.5, 0.5], vec![1.0, 1.0], 2.0).unwrap();
        assert_eq!(
            dual_certificate(&inst, &[1.0, 1.0], 1e-12),
            Err(Error::NoCertificateNeeded)
        );
    }

    #[test]
    fn infeasible_point_has_no_certificate() {
        let inst = example();
        assert!(matches!(
            dual_certificate(&inst, &[1.0, 1.0, 1.0], 1e-12),
            Err(Error::InconsistentSolution(_))
        ));
        assert!(matches!(
            dual_certificate(&inst, &[1.5, 1.0, 0.1], 1e-12),
            Err(Error::InconsistentSolution(_))
        ));
    }

    #[test]
    fn all_ones_point_falls_back_to_inverse_capacity() {
        let inst = example();
        let cert = multipliers_from_point(&inst, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(cert.lambda, 1.0 / 5.0);
    }

    #[test]
    fn wrong_multiplier_fails_stationarity() {
        let inst = example();
        let x = [1.0, 1.0, 2.0 / 3.0];
        let cert = DualCertificate {
            lambda: 1.0,
            mu: vec![0.0; 3],
        };
        let report = check_kkt(&inst, &x, &cert, 1e-12).unwrap();
        assert!(!report.verdict);
        let expected = (0..3)
            .map(|j| (inst.alpha()[j] / x[j] - inst.p()[j]).abs())
            .fold(0.0, f64::max);
        assert!((report.stationarity_residual - expected).abs() < 1e-15);
        assert!(report.failures(1e-12).contains(&"stationarity"));
    }

    #[test]
    fn infeasible_point_fails_primal() {
        let inst = example();
        let cert = multipliers_from_point(&inst, &[1.0, 1.0, 1.0]).unwrap();
        let report = check_kkt(&inst, &[1.0, 1.0, 1.0], &cert, 1e-12).unwrap();
        assert!(!report.primal_feasibility);
        assert!(!report.verdict);
        assert_eq!(report.load, 6.0);
    }

    #[test]
    fn checker_rejects_bad_arguments() {
        let inst = example();
        let cert = DualCertificate {
            lambda: 1.0,
            mu: vec![0.0; 3],
        };
        assert!(matches!(
            check_kkt(&inst, &[1.0, 0.0, 0.5], &cert, 1e-9),
            Err(Error::DomainError { index: 1, .. })
        ));
        assert!(matches!(
            check_kkt(&inst, &[1.0, 1.0], &cert, 1e-9),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            check_kkt(&inst, &[1.0, 1.0, 0.5], &cert, 0.0),
            Err(Error::NonPositiveTolerance { .. })
        ));
    }
}
