use std::fs;
use std::path::Path;

use anyhow::Context;
use logknap::io::{
    generate_instance, parse_instance, parse_instance_csv, parse_solution, serialize_instance,
    serialize_solution, GeneratorConfig,
};
use logknap::{check_kkt, dual_certificate, multipliers_from_point, Instance64, Method};

use crate::Failure;

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Input(format!("--{name} must be a positive number, got {v}")))
    }
}

pub fn read_instance(path: &Path) -> Result<Instance64, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let inst = if is_csv {
        parse_instance_csv(&text)
    } else {
        parse_instance(&text)
    };
    inst.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n"))
            .with_context(|| format!("writing {}", p.display()))
            .map_err(Failure::from),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn solution_document(
    inst: &Instance64,
    method: Method,
    eps: f64,
    with_certificate: bool,
    kkt_tol: f64,
) -> Result<String, Failure> {
    let sol = logknap::solve(inst, method, eps)?;
    if !with_certificate || !inst.is_nontrivial() {
        if with_certificate {
            eprintln!("note: sum p <= m, x = 1 is optimal without multipliers");
        }
        return Ok(serialize_solution(&sol, None));
    }
    let cert = dual_certificate(inst, &sol.x, kkt_tol)
        .map_err(|e| Failure::Certificate(format!("certificate construction failed: {e}")))?;
    let report = check_kkt(inst, &sol.x, &cert, kkt_tol)
        .map_err(|e| Failure::Certificate(format!("certificate check failed: {e}")))?;
    if !report.verdict {
        return Err(Failure::Certificate(format!(
            "certificate rejected ({}):\n{report}",
            report.failures(kkt_tol).join(", ")
        )));
    }
    Ok(serialize_solution(&sol, Some(&cert)))
}

pub fn solve(
    input: &Path,
    output: Option<&Path>,
    method: Method,
    eps: f64,
    with_certificate: bool,
    kkt_tol: f64,
) -> Result<(), Failure> {
    let eps = positive("eps", eps)?;
    let kkt_tol = positive("kkt-tol", kkt_tol)?;
    let inst = read_instance(input)?;
    let doc = solution_document(&inst, method, eps, with_certificate, kkt_tol)?;
    write_output(output, &doc)
}

pub fn verify(input: &Path, solution: &Path, eps: f64) -> Result<(), Failure> {
    let eps = positive("eps", eps)?;
    let inst = read_instance(input)?;
    let text = fs::read_to_string(solution).with_context(|| format!("reading {}", solution.display()))?;
    let doc = parse_solution(&text).map_err(|e| Failure::Input(format!("{}: {e}", solution.display())))?;
    if doc.x.len() != inst.len() {
        return Err(Failure::Input(format!(
            "LengthMismatch: solution has {} entries, instance has {}",
            doc.x.len(),
            inst.len()
        )));
    }
    if let Some(j) = doc.x.iter().position(|&v| !(v > 0.0)) {
        return Err(Failure::Verification(format!(
            "DomainError: x[{j}] = {} must be > 0",
            doc.x[j]
        )));
    }

    if !inst.is_nontrivial() {
        let all_ones = doc.x.iter().all(|&v| (v - 1.0).abs() <= eps);
        println!("trivial instance: sum p = {} <= m = {}", inst.total_price(), inst.m());
        println!("verdict: {all_ones}");
        return if all_ones {
            Ok(())
        } else {
            Err(Failure::Verification("x must equal 1 when sum p <= m".into()))
        };
    }

    let cert = match doc.certificate() {
        Some(c) => c,
        None => multipliers_from_point(&inst, &doc.x)?,
    };
    let report = check_kkt(&inst, &doc.x, &cert, eps)?;
    println!("lambda: {}", cert.lambda);
    println!("{report}");
    if report.verdict {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "failed conditions: {}",
            report.failures(eps).join(", ")
        )))
    }
}

pub fn generate(cfg: GeneratorConfig, output: Option<&Path>) -> Result<(), Failure> {
    let inst: Instance64 = generate_instance(&cfg)?;
    write_output(output, &serialize_instance(&inst))
}
