//! Evaluators of the polydeterminant `eps(A_1, .., A_N)`.
//!
//! Five independent routes are provided:
//!
//! | engine             | formula                                              | cost            |
//! |--------------------|------------------------------------------------------|-----------------|
//! | `naive`            | double Levi-Civita contraction over index tuples     | `N^N + (N!)^2 N`|
//! | `permutation_pair` | signed double sum over permutation pairs             | `(N!)^2 N`      |
//! | `subset_sum`       | inclusion-exclusion over determinants of subset sums | `2^N N^3`       |
//! | `trace_formula`    | Cayley-Hamilton trace-monomial expansion             | `N! p(N)`       |
//! | `volume`           | average of `N!` row-mixed oriented volumes           | `N! N^3`        |
//!
//! All of them are generic over [`Scalar`], so the same code runs in
//! floating point and in exact rational arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{
    cayley_hamilton_coefficient, compositions, enumerate_partition_vectors, factorial,
    iterate_permutations, iterate_subsets, levi_civita, multinomial, MAX_SUBSET_N,
};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Engine {
    Naive,
    PermutationPair,
    #[default]
    SubsetSum,
    TraceFormula,
    Volume,
}

impl Engine {
    pub const ALL: [Engine; 5] = [
        Engine::Naive,
        Engine::PermutationPair,
        Engine::SubsetSum,
        Engine::TraceFormula,
        Engine::Volume,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Naive => "naive",
            Engine::PermutationPair => "permutation_pair",
            Engine::SubsetSum => "subset_sum",
            Engine::TraceFormula => "trace_formula",
            Engine::Volume => "volume",
        }
    }

    /// Largest dimension the engine accepts.
    pub fn max_n(self) -> usize {
        match self {
            Engine::Naive => 6,
            Engine::PermutationPair => 8,
            Engine::SubsetSum => MAX_SUBSET_N,
            Engine::TraceFormula => 7,
            Engine::Volume => 8,
        }
    }

    pub fn supports(self, n: usize) -> bool {
        n >= 1 && n <= self.max_n()
    }

    pub fn evaluate<S: Scalar>(self, t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
        let n = t.n();
        if !self.supports(n) {
            return Err(Error::GuardExceeded {
                op: self.name(),
                n,
                max: self.max_n(),
            });
        }
        let value = match self {
            Engine::Naive => naive_sum(t),
            Engine::PermutationPair => permutation_pair_sum(t),
            Engine::SubsetSum => subset_sum(t),
            Engine::TraceFormula => trace_formula_sum(t),
            Engine::Volume => volume_sum(t),
        };
        Ok(PolydetResult {
            value,
            engine: self,
            n,
        })
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::UnknownEngine(s.to_owned()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolydetResult<S> {
    pub value: S,
    pub engine: Engine,
    pub n: usize,
}

pub fn polydet_naive<S: Scalar>(t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
    Engine::Naive.evaluate(t)
}

pub fn polydet_permutation_pair<S: Scalar>(t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
    Engine::PermutationPair.evaluate(t)
}

pub fn polydet_subset_sum<S: Scalar>(t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
    Engine::SubsetSum.evaluate(t)
}

pub fn polydet_trace_formula<S: Scalar>(t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
    Engine::TraceFormula.evaluate(t)
}

pub fn polydet_volume<S: Scalar>(t: &MatrixTuple<S>) -> Result<PolydetResult<S>> {
    Engine::Volume.evaluate(t)
}

/// Dispatches to `engine`, or to `subset_sum` when none is given.
pub fn polydet<S: Scalar>(t: &MatrixTuple<S>, engine: Option<Engine>) -> Result<PolydetResult<S>> {
    engine.unwrap_or_default().evaluate(t)
}

/// Like [`polydet`] but takes the engine by name.
pub fn polydet_named<S: Scalar>(
    t: &MatrixTuple<S>,
    engine: Option<&str>,
) -> Result<PolydetResult<S>> {
    let engine = engine.map(str::parse).transpose()?;
    polydet(t, engine)
}

fn inv_factorial<S: Scalar>(n: usize) -> S {
    S::one() / S::from_i64(factorial(n) as i64)
}

/// Every index tuple in `{1..n}^n` with a non-zero Levi-Civita symbol, with that symbol.
fn nonzero_levi_civita_tuples(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut idx = vec![1usize; n];
    loop {
        let sign = levi_civita(&idx).expect("indices in range");
        if sign != 0 {
            out.push((idx.iter().map(|i| i - 1).collect(), sign));
        }
        // odometer increment
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n {
                idx[k] += 1;
                break;
            }
            idx[k] = 1;
        }
    }
}

fn naive_sum<S: Scalar>(t: &MatrixTuple<S>) -> S {
    let n = t.n();
    let tuples = nonzero_levi_civita_tuples(n);
    let mut total = S::zero();
    for (rows, s1) in &tuples {
        for (cols, s2) in &tuples {
            let mut prod = S::one();
            for (k, a) in t.items().iter().enumerate() {
                prod = prod * a.get(rows[k], cols[k]).clone();
            }
            total = if s1 * s2 > 0 {
                total + prod
            } else {
                total - prod
            };
        }
    }
    total * inv_factorial(n)
}

fn permutation_pair_sum<S: Scalar>(t: &MatrixTuple<S>) -> S {
    let n = t.n();
    let perms: Vec<_> = iterate_permutations(n).expect("guarded").collect();
    let mut total = S::zero();
    for sigma in &perms {
        for mu in &perms {
            let mut prod = S::one();
            for (k, a) in t.items().iter().enumerate() {
                prod = prod * a.get(sigma.images()[k], mu.images()[k]).clone();
            }
            total = if sigma.sign() * mu.sign() > 0 {
                total + prod
            } else {
                total - prod
            };
        }
    }
    total * inv_factorial(n)
}

fn subset_sum<S: Scalar>(t: &MatrixTuple<S>) -> S {
    let n = t.n();
    let mut total = S::zero();
    for subset in iterate_subsets(n).expect("guarded") {
        let mut members = subset.members();
        let first = members.next().expect("non-empty subset");
        let mut sum = t.items()[first].clone();
        for i in members {
            sum.add_assign_unchecked(&t.items()[i]);
        }
        let det = sum.det();
        total = if (n - subset.cardinality()).is_multiple_of(2) {
            total + det
        } else {
            total - det
        };
    }
    total * inv_factorial(n)
}

/// Traces of `A_{s_1} A_{s_2} .. A_{s_k}` for every sequence `s` of distinct
/// argument indices, keyed by [`word_key`].
fn word_traces<S: Scalar>(items: &[Matrix<S>]) -> HashMap<u64, S> {
    fn walk<S: Scalar>(
        items: &[Matrix<S>],
        prefix: &Matrix<S>,
        key: u64,
        used: u32,
        out: &mut HashMap<u64, S>,
    ) {
        out.insert(key, prefix.trace());
        for (i, a) in items.iter().enumerate() {
            if used >> i & 1 == 0 {
                let product = prefix.mul_unchecked(a);
                walk(items, &product, key * 8 + i as u64 + 1, used | 1 << i, out);
            }
        }
    }
    let mut out = HashMap::new();
    for (i, a) in items.iter().enumerate() {
        walk(items, a, i as u64 + 1, 1 << i, &mut out);
    }
    out
}

fn word_key(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |acc, &i| acc * 8 + i as u64 + 1)
}

fn trace_formula_sum<S: Scalar>(t: &MatrixTuple<S>) -> S {
    let n = t.n();
    let traces = word_traces(t.items());
    let perms: Vec<_> = iterate_permutations(n).expect("guarded").collect();
    let mut total = S::zero();
    for class in enumerate_partition_vectors(n) {
        let parts = class.parts();
        let mut x = S::zero();
        for sigma in &perms {
            let mut prod = S::one();
            let mut start = 0;
            for &len in &parts {
                prod = prod * traces[&word_key(&sigma.images()[start..start + len])].clone();
                start += len;
            }
            x = x + prod;
        }
        total = total + x * S::from_ratio(&cayley_hamilton_coefficient(&class));
    }
    total * inv_factorial(n)
}

/// Row `i` of the mixed matrix is row `i` of `A_{sigma(i)}`; each summand is an
/// oriented volume and enters with weight `+1`.
fn volume_sum<S: Scalar>(t: &MatrixTuple<S>) -> S {
    let n = t.n();
    let mut total = S::zero();
    for sigma in iterate_permutations(n).expect("guarded") {
        let mixed = Matrix::from_fn(n, |i, j| t.items()[sigma.images()[i]].get(i, j).clone());
        total = total + mixed.det();
    }
    total * inv_factorial(n)
}

/// `det(A_1 + .. + A_r)` through the multinomial expansion
/// `sum_k N!/(k_1!..k_r!) eps({A_1}^{k_1}, .., {A_r}^{k_r})`, each term
/// evaluated with `engine` (default `subset_sum`).
pub fn det_of_sum<S: Scalar>(matrices: &[Matrix<S>], engine: Option<Engine>) -> Result<S> {
    let n = matrices.first().map(Matrix::n).ok_or(Error::EmptyMatrix)?;
    if let Some(bad) = matrices.iter().find(|m| m.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.n(),
        });
    }
    let mut total = S::zero();
    for counts in compositions(n, matrices.len()) {
        let weight = multinomial(n, &counts)?;
        let args: Vec<Matrix<S>> = counts
            .iter()
            .zip(matrices)
            .flat_map(|(&k, m)| std::iter::repeat_n(m.clone(), k))
            .collect();
        let eps = polydet(&MatrixTuple::new(args)?, engine)?.value;
        total = total + eps * S::from_i64(weight as i64);
    }
    Ok(total)
}
