use std::io::Write;
use std::time::Instant;

use logknap::io::{generate_instance, GeneratorConfig};
use logknap::{solve, Instance64, Method};

use crate::Failure;

const EPS: f64 = 1e-12;

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub len: usize,
    pub method: Method,
    pub rep: usize,
    pub wall_time_ms: f64,
    pub max_dev: f64,
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn records(sizes: &[usize], seed: u64, reps: usize) -> Result<Vec<BenchRecord>, Failure> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Failure::Input("--sizes must list positive integers".into()));
    }
    if reps == 0 {
        return Err(Failure::Input("--reps must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(sizes.len() * reps * Method::ALL.len());
    for &len in sizes {
        for rep in 0..reps {
            let inst: Instance64 = generate_instance(&GeneratorConfig {
                len,
                seed: seed.wrapping_add(rep as u64),
                tightness: 0.6,
                price_range: (1.0, 10.0),
                weight_skew: 1.0,
            })?;
            let oracle = solve(&inst, Method::Bisection, EPS)?;
            for method in Method::ALL {
                let start = Instant::now();
                let sol = solve(&inst, method, EPS)?;
                let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
                out.push(BenchRecord {
                    len,
                    method,
                    rep,
                    wall_time_ms,
                    max_dev: max_dev(&sol.x, &oracle.x),
                });
            }
        }
    }
    Ok(out)
}

pub fn run(sizes: &[usize], seed: u64, reps: usize, sink: &mut impl Write) -> Result<(), Failure> {
    let rows = records(sizes, seed, reps)?;
    let mut emit = || -> std::io::Result<()> {
        writeln!(sink, "L,method,rep,wall_time_ms,max_dev")?;
        for r in &rows {
            writeln!(
                sink,
                "{},{},{},{:.3},{:e}",
                r.len,
                r.method.name(),
                r.rep,
                r.wall_time_ms,
                r.max_dev
            )?;
        }
        Ok(())
    };
    emit().map_err(|e| Failure::Input(format!("writing CSV: {e}")))
}
