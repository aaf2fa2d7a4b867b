//! Instance and solution documents, CSV intake, and the seeded generator.
//!
//! Instance document:
//!
//! ```json
//! {"version": 1, "alpha": [1, 1, 1], "p": [1, 2, 3], "m": 5}
//! ```
//!
//! Solution document (`lambda` and `mu` only when a certificate is attached,
//! `fixed_rounds` uses 1-based indices):
//!
//! ```json
//! {"version": 1, "x": [1.0, 1.0, 0.6666666666666666], "objective": -0.135,
//!  "tight": true, "fixed_rounds": [[1]], "lambda": 0.16666666666666666,
//!  "mu": [0.16666666666666669, 0.0, 0.0]}
//! ```
//!
//! Numbers are written as the shortest decimal that reads back to the same
//! `f64`, so documents round-trip bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::scalar::Scalar;
use crate::solver::DualCertificate;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    version: Option<u32>,
    alpha: Vec<f64>,
    p: Vec<f64>,
    m: f64,
}

fn check_version(version: Option<u32>) -> Result<()> {
    match version {
        None | Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::Parse(format!("unsupported version {v}"))),
    }
}

/// Reads an instance document and validates it.
pub fn parse_instance(text: &str) -> Result<Instance<f64>> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(doc.version)?;
    if doc.alpha.len() != doc.p.len() {
        return Err(Error::Parse(format!(
            "length mismatch: alpha has {} entries, p has {}",
            doc.alpha.len(),
            doc.p.len()
        )));
    }
    Instance::new(doc.alpha, doc.p, doc.m)
}

pub fn serialize_instance(inst: &Instance<f64>) -> String {
    let doc = InstanceDoc {
        version: Some(FORMAT_VERSION),
        alpha: inst.alpha().to_vec(),
        p: inst.p().to_vec(),
        m: inst.m(),
    };
    serde_json::to_string_pretty(&doc).expect("instance document serializes")
}

/// Reads the spreadsheet form: a first line `m=<num>`, then one `alpha,p`
/// row per activity. Blank lines and an optional `alpha,p` header are skipped.
pub fn parse_instance_csv(text: &str) -> Result<Instance<f64>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV document".into()))?;
    let m = header
        .strip_prefix("m=")
        .ok_or_else(|| Error::Parse(format!("expected 'm=<num>' header, got '{header}'")))?;
    let m = parse_number(m, "m")?;
    let (mut alpha, mut p) = (Vec::new(), Vec::new());
    for (row, line) in lines.enumerate() {
        if row == 0 && line.replace(' ', "").eq_ignore_ascii_case("alpha,p") {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 2 {
            return Err(Error::Parse(format!(
                "row '{line}' must have exactly two cells: alpha,p"
            )));
        }
        alpha.push(parse_number(cells[0], "alpha")?);
        p.push(parse_number(cells[1], "p")?);
    }
    Instance::new(alpha, p, m)
}

fn parse_number(cell: &str, field: &str) -> Result<f64> {
    cell.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{field}: '{cell}' is not a number")))
}

/// Parsed solution document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub x: Vec<f64>,
    pub objective: f64,
    pub tight: bool,
    /// 1-based indices fixed at one, round by round.
    #[serde(default)]
    pub fixed_rounds: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<f64>>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl SolutionDoc {
    pub fn certificate(&self) -> Option<DualCertificate<f64>> {
        match (self.lambda, &self.mu) {
            (Some(lambda), Some(mu)) => Some(DualCertificate {
                lambda,
                mu: mu.clone(),
            }),
            _ => None,
        }
    }
}

pub fn serialize_solution(sol: &Solution<f64>, cert: Option<&DualCertificate<f64>>) -> String {
    let doc = SolutionDoc {
        version: FORMAT_VERSION,
        x: sol.x.clone(),
        objective: sol.objective,
        tight: sol.tight,
        fixed_rounds: sol
            .trace
            .rounds
            .iter()
            .map(|r| r.fixed_indices.iter().map(|j| j + 1).collect())
            .collect(),
        lambda: cert.map(|c| c.lambda),
        mu: cert.map(|c| c.mu.clone()),
    };
    serde_json::to_string_pretty(&doc).expect("solution document serializes")
}

pub fn parse_solution(text: &str) -> Result<SolutionDoc> {
    let doc: SolutionDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    check_version(Some(doc.version))?;
    if doc.fixed_rounds.iter().flatten().any(|&j| j == 0) {
        return Err(Error::Parse("fixed_rounds indices are 1-based".into()));
    }
    if (doc.lambda.is_some()) != (doc.mu.is_some()) {
        return Err(Error::Parse("lambda and mu must appear together".into()));
    }
    Ok(doc)
}

/// Settings of [`generate_instance`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub len: usize,
    pub seed: u64,
    /// Capacity as a fraction of `sum p`, in `(0, 1]`.
    pub tightness: f64,
    /// Prices are drawn uniformly from `[lo, hi]`.
    pub price_range: (f64, f64),
    /// Raw weights are `exp(weight_skew * g_j)` with `g_j` standard normal.
    pub weight_skew: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            len: 10,
            seed: 0,
            tightness: 0.6,
            price_range: (1.0, 10.0),
            weight_skew: 0.0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.price_range;
        if self.len == 0 {
            Err(Error::Config("L must be at least 1".into()))
        } else if !(self.tightness > 0.0 && self.tightness <= 1.0) {
            Err(Error::Config(format!(
                "tightness {} must lie in (0, 1]",
                self.tightness
            )))
        } else if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            Err(Error::Config(format!(
                "price range ({lo}, {hi}) must satisfy 0 < lo <= hi < inf"
            )))
        } else if !(self.weight_skew >= 0.0 && self.weight_skew.is_finite()) {
            Err(Error::Config(format!(
                "weight skew {} must be a finite nonnegative number",
                self.weight_skew
            )))
        } else {
            Ok(())
        }
    }
}

/// Draws a random instance; identical configurations give identical
/// instances. With `tightness < 1` the result always has `sum p > m`.
pub fn generate_instance<T: Scalar>(cfg: &GeneratorConfig) -> Result<Instance<T>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (lo, hi) = cfg.price_range;
    let mut alpha = Vec::with_capacity(cfg.len);
    let mut p = Vec::with_capacity(cfg.len);
    for _ in 0..cfg.len {
        let g: f64 = rng.sample(StandardNormal);
        let u: f64 = rng.random();
        alpha.push(T::lit((cfg.weight_skew * g).exp()));
        p.push(T::lit(lo + (hi - lo) * u));
    }
    // same summation as Instance::total_price, so tightness 1 is exactly trivial
    let total = crate::scalar::multiset_sum(p.clone());
    let m = T::lit(cfg.tightness) * total;
    Instance::new(alpha, p, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve_sorted;

    const EXAMPLE: &str = r#"{"alpha": [1, 1, 1], "p": [1, 2, 3], "m": 5}"#;

    #[test]
    fn parses_documents() {
        let inst = parse_instance(
            r#"{"alpha": [0.333333333333333, 0.333333333333333, 0.333333333333334], "p": [1, 2, 3], "m": 5}"#,
        )
        .unwrap();
        for &a in inst.alpha() {
            assert!((a - 1.0 / 3.0).abs() < 1e-14);
        }
        assert_eq!(inst.p(), &[1.0, 2.0, 3.0]);
        assert_eq!(parse_instance(EXAMPLE).unwrap().m(), 5.0);
    }

    #[test]
    fn rejects_malformed_documents() {
        let missing = parse_instance(r#"{"alpha": [1], "p": [1]}"#).unwrap_err();
        assert!(matches!(missing, Error::Parse(ref s) if s.contains("missing field `m`")));
        let mismatch = parse_instance(r#"{"alpha": [1], "p": [1, 2], "m": 1}"#).unwrap_err();
        assert!(matches!(mismatch, Error::Parse(ref s) if s.contains("length mismatch")));
        assert!(matches!(parse_instance("not json"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_instance(r#"{"version": 2, "alpha": [1], "p": [1], "m": 1}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_instance(r#"{"alpha": [1], "p": [1], "m": 0}"#),
            Err(Error::NonPositiveCapacity { .. })
        ));
    }

    #[test]
    fn csv_intake() {
        let inst = parse_instance_csv("m=5\nalpha,p\n1,1\n1,2\n1,3\n").unwrap();
        assert_eq!(inst, parse_instance(EXAMPLE).unwrap());
        assert!(matches!(parse_instance_csv("5\n1,1"), Err(Error::Parse(_))));
        assert!(matches!(parse_instance_csv("m=5\n1,1,1"), Err(Error::Parse(_))));
        assert!(matches!(parse_instance_csv("m=5\n1,x"), Err(Error::Parse(_))));
    }

    #[test]
    fn solution_document_layout() {
        let inst = parse_instance(EXAMPLE).unwrap();
        let sol = solve_sorted(&inst, 1e-12);
        let text = serialize_solution(&sol, None);
        let doc = parse_solution(&text).unwrap();
        assert_eq!(doc.fixed_rounds, vec![vec![1]]);
        assert!(doc.tight);
        assert!(doc.lambda.is_none() && doc.mu.is_none());
        assert!(!text.contains("lambda"));
        assert_eq!(doc.x[2], 0.6666666666666666);
        assert!(text.contains("0.6666666666666666"));

        let cert = DualCertificate {
            lambda: 1.0 / 6.0,
            mu: vec![1.0 / 6.0, 0.0, 0.0],
        };
        let doc = parse_solution(&serialize_solution(&sol, Some(&cert))).unwrap();
        assert_eq!(doc.certificate(), Some(cert));

        let trivial = parse_instance(r#"{"alpha": [1, 1], "p": [1, 1], "m": 2}"#).unwrap();
        let doc = parse_solution(&serialize_solution(&solve_sorted(&trivial, 1e-12), None)).unwrap();
        assert!(doc.fixed_rounds.is_empty());
    }

    #[test]
    fn generator_contract() {
        let cfg = GeneratorConfig {
            len: 3,
            seed: 11,
            tightness: 5.0 / 6.0,
            price_range: (1.0, 1.0),
            weight_skew: 0.0,
        };
        let inst: Instance<f64> = generate_instance(&cfg).unwrap();
        assert_eq!(inst.p(), &[1.0, 1.0, 1.0]);
        assert!((inst.m() - 2.5).abs() < 1e-15);
        assert!(inst.alpha().iter().all(|&a| (a - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(inst, generate_instance(&cfg).unwrap());

        let full = GeneratorConfig {
            tightness: 1.0,
            len: 50,
            ..GeneratorConfig::default()
        };
        let inst: Instance<f64> = generate_instance(&full).unwrap();
        assert!(!inst.is_nontrivial());
        assert!(solve_sorted(&inst, 1e-12).x.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn generator_rejects_bad_config() {
        let bad = [
            GeneratorConfig { len: 0, ..Default::default() },
            GeneratorConfig { tightness: 0.0, ..Default::default() },
            GeneratorConfig { tightness: 1.5, ..Default::default() },
            GeneratorConfig { price_range: (0.0, 1.0), ..Default::default() },
            GeneratorConfig { price_range: (2.0, 1.0), ..Default::default() },
            GeneratorConfig { weight_skew: -1.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(generate_instance::<f64>(&cfg), Err(Error::Config(_))), "{cfg:?}");
        }
    }
}
