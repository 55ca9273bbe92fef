//! Runtime of full worst-case verification against schedule size.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::io::generate::{generate_schedule, GenerateOptions};
use crate::model::Network;
use crate::verify::{Mode, Scope, Verifier};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub flights: usize,
    pub scenarios: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkTable {
    pub rows: Vec<BenchmarkRow>,
    /// Least-squares slope of log time against log size; needs two sizes.
    pub exponent: Option<f64>,
}

impl fmt::Display for BenchmarkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "flights\tscenarios\tseconds")?;
        for r in &self.rows {
            writeln!(f, "{}\t{}\t{:.4}", r.flights, r.scenarios, r.seconds)?;
        }
        if let Some(k) = self.exponent {
            writeln!(f, "# fitted exponent {k:.3}")?;
        }
        Ok(())
    }
}

/// Slope of the least-squares line through `(ln n, ln t)`.
pub fn fit_exponent(rows: &[BenchmarkRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.seconds > 0.0)
        .map(|r| ((r.flights as f64).ln(), r.seconds.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// For each size, generates a schedule with `seed` and times a worst-case
/// sweep over all nodes. Each size is timed `repeats` times (at least once)
/// and the fastest run is kept.
pub fn run_benchmark(network: &Network, sizes: &[usize], seed: u64, jobs: usize, repeats: usize) -> Result<BenchmarkTable> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let schedule = generate_schedule(network, &GenerateOptions::new(n, seed))?;
        let verifier = Verifier::new(network, &schedule).mode(Mode::Worst).jobs(jobs);
        let mut best = f64::INFINITY;
        let mut scenarios = 0;
        for _ in 0..repeats.max(1) {
            let start = Instant::now();
            scenarios = verifier.sweep(Scope::All).scenarios;
            best = best.min(start.elapsed().as_secs_f64());
        }
        rows.push(BenchmarkRow {
            flights: n,
            scenarios,
            seconds: best,
        });
    }
    let exponent = fit_exponent(&rows);
    Ok(BenchmarkTable { rows, exponent })
}
