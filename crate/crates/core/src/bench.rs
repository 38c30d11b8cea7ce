//! Wall-clock timing harness comparing engines across dimensions.

use std::time::Instant;

use crate::engines::Engine;
use crate::error::{Error, Result};
use crate::random::{derive_seed, Sampler};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub engines: Vec<Engine>,
    pub repetitions: usize,
    /// Runs before timing starts; their timings are discarded.
    pub warmup: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            n_min: 2,
            n_max: 6,
            engines: Engine::ALL.to_vec(),
            repetitions: 10,
            warmup: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub engine: Engine,
    pub n: usize,
    pub mean_ns: f64,
    pub stddev_ns: f64,
    pub median_ns: f64,
}

pub const CSV_HEADER: &str = "engine,n,mean_ns,stddev_ns,median_ns";

/// Times every engine on one seeded tuple per dimension. Engine/dimension
/// pairs outside an engine's guard are skipped.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if cfg.repetitions == 0 {
        return Err(Error::TooSmall {
            op: "bench repetitions",
            n: 0,
            min: 1,
        });
    }
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return Err(Error::TooSmall {
            op: "bench dimension",
            n: cfg.n_min,
            min: 1,
        });
    }
    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let tuple = Sampler::new(derive_seed(cfg.seed, n as u64)).tuple(n);
        for &engine in &cfg.engines {
            if !engine.supports(n) {
                continue;
            }
            for _ in 0..cfg.warmup {
                std::hint::black_box(engine.evaluate(&tuple)?);
            }
            let mut samples = Vec::with_capacity(cfg.repetitions);
            for _ in 0..cfg.repetitions {
                let start = Instant::now();
                std::hint::black_box(engine.evaluate(std::hint::black_box(&tuple))?);
                samples.push(start.elapsed().as_nanos() as f64);
            }
            rows.push(summarise(engine, n, samples));
        }
    }
    Ok(rows)
}

fn summarise(engine: Engine, n: usize, mut samples: Vec<f64>) -> BenchRow {
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let var = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    let median = if samples.len().is_multiple_of(2) {
        0.5 * (samples[mid - 1] + samples[mid])
    } else {
        samples[mid]
    };
    BenchRow {
        engine,
        n,
        mean_ns: mean,
        stddev_ns: var.sqrt(),
        median_ns: median,
    }
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.1},{:.1},{:.1}\n",
            r.engine.name(),
            r.n,
            r.mean_ns,
            r.stddev_ns,
            r.median_ns
        ));
    }
    out
}

/// Median-time ratio `slow / fast` at dimension `n`, if both were measured.
pub fn speedup(rows: &[BenchRow], n: usize, fast: Engine, slow: Engine) -> Option<f64> {
    let median = |e: Engine| {
        rows.iter()
            .find(|r| r.n == n && r.engine == e)
            .map(|r| r.median_ns)
    };
    Some(median(slow)? / median(fast)?)
}
