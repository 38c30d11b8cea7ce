//! Randomised property suite for a polydeterminant evaluator.
//!
//! Every property is checked on `trials` seeded instances per dimension and
//! reported as the worst relative deviation. The evaluator is injectable so
//! that a faulty implementation can be shown to fail the suite.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{compositions, multinomial};
use crate::engines::{
    polydet_permutation_pair, polydet_subset_sum, polydet_trace_formula, polydet_volume,
};
use crate::error::{Error, Result};
use crate::random::{derive_seed, MatrixKind, Sampler};
use crate::scalar::relative_deviation;
use crate::{Complex, ComplexMatrix, ComplexTuple};

/// Names of the checked properties, in report order.
pub const PROPERTIES: [&str; 11] = [
    "determinant",
    "symmetry",
    "multilinearity",
    "trace",
    "conjugation_invariance",
    "subset_sum_identity",
    "det_of_sum",
    "left_factorization",
    "right_factorization",
    "trace_formula",
    "volume_form",
];

/// Largest dimension the suite accepts (bounded by the trace-formula guard).
pub const MAX_SUITE_N: usize = 7;

/// Deviations are measured relative to `max(|lhs|, |rhs|, DEVIATION_FLOOR)`.
pub const DEVIATION_FLOOR: f64 = 1e-6;

pub type Evaluator = dyn Fn(&ComplexTuple) -> Result<Complex> + Sync;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub tolerance: f64,
    /// `Some(0)` runs sequentially; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 50,
            n_min: 2,
            n_max: 5,
            tolerance: 1e-9,
            threads: threads_from_env(),
        }
    }
}

/// Reads `POLYDET_THREADS`; unparsable values are ignored.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("POLYDET_THREADS").ok()?.trim().parse().ok()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyEntry {
    pub property: &'static str,
    pub n: usize,
    pub trials: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub entries: Vec<PropertyEntry>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    /// One line per property and dimension.
    pub fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|e| {
                format!(
                    "{:<24} n={} trials={} max_dev={:.3e} {}\n",
                    e.property,
                    e.n,
                    e.trials,
                    e.max_deviation,
                    if e.passed { "PASS" } else { "FAIL" }
                )
            })
            .collect()
    }
}

/// Reference evaluator used by default: the subset-sum engine.
pub fn default_evaluator(t: &ComplexTuple) -> Result<Complex> {
    Ok(polydet_subset_sum(t)?.value)
}

pub fn run_property_suite(cfg: &SuiteConfig, eval: &Evaluator) -> Result<SuiteReport> {
    if cfg.n_min < 2 || cfg.n_min > cfg.n_max {
        return Err(Error::TooSmall {
            op: "property suite",
            n: cfg.n_min,
            min: 2,
        });
    }
    if cfg.n_max > MAX_SUITE_N {
        return Err(Error::GuardExceeded {
            op: "property suite",
            n: cfg.n_max,
            max: MAX_SUITE_N,
        });
    }
    let mut entries = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for (index, &property) in PROPERTIES.iter().enumerate() {
            let deviations = map_trials(cfg, |trial| {
                let seed = derive_seed(
                    cfg.seed,
                    ((n as u64) << 32) | ((index as u64) << 20) | trial as u64,
                );
                check(property, n, &mut Sampler::new(seed), eval)
            })?;
            let max_deviation = deviations.into_iter().fold(0.0f64, f64::max);
            entries.push(PropertyEntry {
                property,
                n,
                trials: cfg.trials,
                max_deviation,
                tolerance: cfg.tolerance,
                passed: max_deviation <= cfg.tolerance,
            });
        }
    }
    Ok(SuiteReport {
        seed: cfg.seed,
        entries,
    })
}

fn map_trials<F>(cfg: &SuiteConfig, f: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<f64> + Sync + Send,
{
    match cfg.threads {
        Some(0) => (0..cfg.trials).map(f).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Unsupported(e.to_string()))?
            .install(|| (0..cfg.trials).into_par_iter().map(&f).collect()),
        None => (0..cfg.trials).into_par_iter().map(f).collect(),
    }
}

fn dev(a: Complex, b: Complex) -> f64 {
    let d = relative_deviation(&a, &b, DEVIATION_FLOOR);
    if d.is_nan() {
        f64::INFINITY
    } else {
        d
    }
}

fn check(property: &str, n: usize, s: &mut Sampler, eval: &Evaluator) -> Result<f64> {
    let t = s.tuple(n);
    let one = ComplexMatrix::identity(n);
    match property {
        "determinant" => {
            let a = s.matrix(n, MatrixKind::General);
            Ok(dev(eval(&ComplexTuple::repeated(&a))?, a.det()))
        }
        "symmetry" => {
            let i = (s.uniform() * n as f64) as usize % n;
            let j = (i + 1 + (s.uniform() * (n - 1) as f64) as usize % (n - 1)) % n;
            Ok(dev(eval(&t.swapped(i, j))?, eval(&t)?))
        }
        "multilinearity" => {
            let slot = (s.uniform() * n as f64) as usize % n;
            let (alpha, beta) = (s.complex(), s.complex());
            let b = s.matrix(n, MatrixKind::General);
            let c = s.matrix(n, MatrixKind::General);
            let mix = b.scale(&alpha).add(&c.scale(&beta))?;
            let lhs = eval(&t.with_item(slot, mix)?)?;
            let rhs = alpha * eval(&t.with_item(slot, b)?)? + beta * eval(&t.with_item(slot, c)?)?;
            Ok(dev(lhs, rhs))
        }
        "trace" => {
            let a = s.matrix(n, MatrixKind::General);
            let mut items = vec![one; n];
            items[0] = a.clone();
            Ok(dev(eval(&ComplexTuple::new(items)?)?, a.trace() / n as f64))
        }
        "conjugation_invariance" => {
            let u = s.matrix(n, MatrixKind::General);
            let inv = u.inverse()?;
            let conj = t.map(|a| u.matmul(a).and_then(|m| m.matmul(&inv)).expect("same size"));
            Ok(dev(eval(&conj)?, eval(&t)?))
        }
        "subset_sum_identity" => Ok(dev(
            polydet_subset_sum(&t)?.value,
            polydet_permutation_pair(&t)?.value,
        )),
        "det_of_sum" => {
            let r = 2 + (s.uniform() * 2.0) as usize;
            let mats: Vec<ComplexMatrix> =
                (0..r).map(|_| s.matrix(n, MatrixKind::General)).collect();
            let mut sum = ComplexMatrix::zeros(n);
            for m in &mats {
                sum = sum.add(m)?;
            }
            let mut rhs = Complex::new(0.0, 0.0);
            for counts in compositions(n, r) {
                let args: Vec<ComplexMatrix> = counts
                    .iter()
                    .zip(&mats)
                    .flat_map(|(&k, m)| std::iter::repeat_n(m.clone(), k))
                    .collect();
                rhs += eval(&ComplexTuple::new(args)?)? * multinomial(n, &counts)? as f64;
            }
            Ok(dev(sum.det(), rhs))
        }
        "left_factorization" | "right_factorization" => {
            let m = s.matrix(n, MatrixKind::General);
            let left = property == "left_factorization";
            let moved =
                t.map(|a| if left { m.matmul(a) } else { a.matmul(&m) }.expect("same size"));
            Ok(dev(eval(&moved)?, m.det() * eval(&t)?))
        }
        "trace_formula" => Ok(dev(polydet_trace_formula(&t)?.value, eval(&t)?)),
        "volume_form" => Ok(dev(polydet_volume(&t)?.value, eval(&t)?)),
        other => Err(Error::Unsupported(format!("property {other}"))),
    }
}
