//! Benchmark harness: random graphs over an `(n, p)` grid, random targets,
//! per-algorithm timing.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::collapse::{self, Algorithm, CollapseRequest};
use crate::error::{Error, Result};
use crate::gen::{pick_targets, stream_rng, GenConfig, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Chordal graphs; CMSA against SAHR.
    Decomposable,
    /// Random trees plus edges; CMSA, and brute force under the vertex cap.
    General,
}

impl Suite {
    pub fn model(self) -> Model {
        match self {
            Suite::Decomposable => Model::Chordal,
            Suite::General => Model::TreeEr,
        }
    }

    pub fn algorithms(self, n: usize, cap: usize) -> Vec<Algorithm> {
        match self {
            Suite::Decomposable => vec![Algorithm::Cmsa, Algorithm::Sahr],
            Suite::General if n <= cap => vec![Algorithm::Cmsa, Algorithm::Brute],
            Suite::General => vec![Algorithm::Cmsa],
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub probabilities: Vec<f64>,
    pub reps: usize,
    pub targets_per_graph: usize,
    pub seed: u64,
    pub enum_cap: usize,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidConfig(msg));
        if self.reps == 0 {
            return invalid("reps must be positive".into());
        }
        if self.sizes.is_empty() || self.probabilities.is_empty() {
            return invalid("empty size or probability grid".into());
        }
        for &n in &self.sizes {
            for &p in &self.probabilities {
                GenConfig::new(self.suite.model(), n, p, 0)?;
            }
            if self.targets_per_graph > n {
                return invalid(format!("{} targets requested from {n} vertices", self.targets_per_graph));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub model: Model,
    pub n: usize,
    pub p: f64,
    pub algorithm: Algorithm,
    pub replicate_count: usize,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
    pub mean_edges: f64,
    /// Mean size of the returned collapsible set.
    pub mean_result_size: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
    /// Replicates where the algorithms returned different sets.
    pub disagreements: usize,
}

pub const CSV_HEADER: &str = "model,n,p,algorithm,reps,mean_s,std_s,mean_edges,seed";

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{:.9},{:.9},{:.3},{}",
                r.model, r.n, r.p, r.algorithm, r.replicate_count, r.mean_seconds, r.stddev_seconds, r.mean_edges, self.seed
            )
            .unwrap();
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:<8} {:>6} {:>7} {:<6} {:>5} {:>12} {:>12} {:>11} {:>9}\n",
            "model", "n", "p", "alg", "reps", "mean_s", "std_s", "mean_edges", "mean_|B|"
        );
        for r in &self.rows {
            writeln!(
                out,
                "{:<8} {:>6} {:>7} {:<6} {:>5} {:>12.6} {:>12.6} {:>11.1} {:>9.1}",
                r.model.name(),
                r.n,
                r.p,
                r.algorithm.name(),
                r.replicate_count,
                r.mean_seconds,
                r.stddev_seconds,
                r.mean_edges,
                r.mean_result_size
            )
            .unwrap();
        }
        writeln!(out, "seed {}  disagreements {}", self.seed, self.disagreements).unwrap();
        out
    }

    pub fn row(&self, n: usize, p: f64, algorithm: Algorithm) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n && r.p == p && r.algorithm == algorithm)
    }
}

/// Graph and target seeds for every replicate of grid cell `cell`.
fn replicate_seeds(seed: u64, cell: usize, reps: usize) -> Vec<(u64, u64)> {
    let mut rng = stream_rng(seed, cell as u64 + 1);
    (0..reps).map(|_| (rng.random(), rng.random())).collect()
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs the grid sequentially. Only algorithm execution is timed.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let model = config.suite.model();
    let mut rows = Vec::new();
    let mut disagreements = 0;
    let mut cell = 0;
    for &n in &config.sizes {
        for &p in &config.probabilities {
            let algorithms = config.suite.algorithms(n, config.enum_cap);
            let mut times = vec![Vec::with_capacity(config.reps); algorithms.len()];
            let mut sizes = vec![0usize; algorithms.len()];
            let mut edges = 0usize;
            for (graph_seed, target_seed) in replicate_seeds(config.seed, cell, config.reps) {
                let g = GenConfig::new(model, n, p, graph_seed)?.generate()?;
                edges += g.m();
                let targets = pick_targets(&g, config.targets_per_graph, target_seed)?;
                let req = CollapseRequest::new(&g, targets)?;
                let mut first = None;
                for (i, &alg) in algorithms.iter().enumerate() {
                    let outcome = collapse::run(alg, &req, config.enum_cap)?;
                    times[i].push(outcome.elapsed.as_secs_f64());
                    sizes[i] += outcome.result.len();
                    match &first {
                        None => first = Some(outcome.result),
                        Some(b) if *b != outcome.result => disagreements += 1,
                        Some(_) => {}
                    }
                }
            }
            let reps = config.reps as f64;
            for (i, &alg) in algorithms.iter().enumerate() {
                let (mean, std) = mean_std(&times[i]);
                rows.push(BenchRow {
                    model,
                    n,
                    p,
                    algorithm: alg,
                    replicate_count: config.reps,
                    mean_seconds: mean,
                    stddev_seconds: std,
                    mean_edges: edges as f64 / reps,
                    mean_result_size: sizes[i] as f64 / reps,
                });
            }
            cell += 1;
        }
    }
    Ok(BenchReport { seed: config.seed, rows, disagreements })
}
