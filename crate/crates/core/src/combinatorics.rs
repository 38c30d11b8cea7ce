//! Permutations, subsets and partition vectors.

use crate::error::{Error, Result};
use crate::Rational;

/// Largest `n` accepted by [`iterate_permutations`].
pub const MAX_PERMUTATION_N: usize = 10;
/// Largest `n` accepted by [`iterate_subsets`].
pub const MAX_SUBSET_N: usize = 24;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A permutation of `{0, .., n-1}` together with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
            sign: 1,
        }
    }

    /// Zero-based images: `self.images()[k]` is `sigma(k)`.
    pub fn images(&self) -> &[usize] {
        &self.mapping
    }

    /// One-based images, as in `sigma(1), .., sigma(n)`.
    pub fn one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|i| i + 1).collect()
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// Advances to the lexicographic successor, tracking the sign.
    fn advance(&mut self) -> bool {
        let a = &mut self.mapping;
        let n = a.len();
        if n < 2 {
            return false;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| a[i] < a[i + 1]) else {
            return false;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| a[j] > a[i])
            .expect("successor exists");
        a.swap(i, j);
        a[i + 1..].reverse();
        let transpositions = 1 + (n - i - 1) / 2;
        if transpositions % 2 == 1 {
            self.sign = -self.sign;
        }
        true
    }
}

/// Lexicographic stream over all `n!` permutations.
pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// All permutations of `n` objects in lexicographic order, identity first.
pub fn iterate_permutations(n: usize) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::TooSmall {
            op: "iterate_permutations",
            n,
            min: 1,
        });
    }
    if n > MAX_PERMUTATION_N {
        return Err(Error::GuardExceeded {
            op: "iterate_permutations",
            n,
            max: MAX_PERMUTATION_N,
        });
    }
    Ok(Permutations {
        next: Some(Permutation::identity(n)),
    })
}

/// Levi-Civita symbol for one-based indices drawn from `{1..N}`, `N = indices.len()`.
pub fn levi_civita(indices: &[usize]) -> Result<i8> {
    let n = indices.len();
    let mut seen = vec![false; n];
    let mut repeated = false;
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        repeated |= std::mem::replace(&mut seen[i - 1], true);
    }
    if repeated {
        return Ok(0);
    }
    Ok(parity_sign(indices.iter().map(|i| i - 1)))
}

/// Sign of a bijection given as zero-based images, by cycle decomposition.
pub(crate) fn parity_sign(images: impl Iterator<Item = usize>) -> i8 {
    let perm: Vec<usize> = images.collect();
    let mut visited = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut k = start;
        while !visited[k] {
            visited[k] = true;
            k = perm[k];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `(n_1, .., n_N)` with `n_1 + 2 n_2 + .. + N n_N = N`: the multiplicities
/// of the parts of an integer partition of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionVector {
    counts: Vec<usize>,
}

impl PartitionVector {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let weighted: usize = counts.iter().enumerate().map(|(k, c)| (k + 1) * c).sum();
        if counts.is_empty() || weighted != counts.len() {
            return Err(Error::InvalidPartition(counts));
        }
        Ok(Self { counts })
    }

    /// The dimension `N`.
    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Parts in non-decreasing order, e.g. `(1, 1, 0)` gives `[1, 2]`.
    pub fn parts(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat_n(k + 1, c))
            .collect()
    }

    /// Number of trace factors, `n_1 + .. + n_N`.
    pub fn trace_factors(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// All partition vectors of `n`, in reverse lexicographic order of the
/// count vector: `(n, 0, ..)` first, `(0, .., 1)` last.
pub fn enumerate_partition_vectors(n: usize) -> Vec<PartitionVector> {
    fn fill(k: usize, remaining: usize, counts: &mut Vec<usize>, out: &mut Vec<PartitionVector>) {
        let n = counts.len();
        if k == n {
            if remaining == 0 {
                out.push(PartitionVector {
                    counts: counts.clone(),
                });
            }
            return;
        }
        let part = k + 1;
        for c in (0..=remaining / part).rev() {
            counts[k] = c;
            fill(k + 1, remaining - c * part, counts, out);
        }
        counts[k] = 0;
    }
    let mut out = Vec::new();
    if n > 0 {
        fill(0, n, &mut vec![0; n], &mut out);
    }
    out
}

/// `(-1)^{n_1 + .. + n_N + N} / (1^{n_1} 2^{n_2} .. N^{n_N} n_1! .. n_N!)`.
pub fn cayley_hamilton_coefficient(p: &PartitionVector) -> Rational {
    let sign = if (p.trace_factors() + p.n()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Rational::new(sign, class_denominator(p) as i64)
}

fn class_denominator(p: &PartitionVector) -> u64 {
    p.counts()
        .iter()
        .enumerate()
        .map(|(k, &c)| ((k + 1) as u64).pow(c as u32) * factorial(c))
        .product()
}

/// Number of distinct trace monomials in the class `p`: `N! |C_p|`.
pub fn count_distinct_terms(p: &PartitionVector) -> u64 {
    factorial(p.n()) / class_denominator(p)
}

/// `N! / (k_1! .. k_r!)`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<u64> {
    if parts.iter().sum::<usize>() != n {
        return Err(Error::PartsSumMismatch {
            total: n,
            parts: parts.to_vec(),
        });
    }
    // Product of binomials keeps intermediates small.
    let mut acc = 1u64;
    let mut seen = 0u64;
    for &k in parts {
        for i in 1..=k as u64 {
            seen += 1;
            acc = acc * seen / i;
        }
    }
    Ok(acc)
}

/// All `(k_1, .., k_r)` with non-negative entries summing to `n`, in reverse
/// lexicographic order.
pub fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn fill(k: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k + 1 == cur.len() {
            cur[k] = remaining;
            out.push(cur.clone());
            return;
        }
        for c in (0..=remaining).rev() {
            cur[k] = c;
            fill(k + 1, remaining - c, cur, out);
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        fill(0, n, &mut vec![0; r], &mut out);
    }
    out
}

/// Non-empty subset of slot indices, bit `i` standing for slot `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u32,
}

impl SubsetMask {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.bits >> slot & 1 == 1
    }

    /// Zero-based members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |&i| self.contains(i))
    }
}

/// The `2^n - 1` non-empty subsets of `{1..n}` in increasing bit order.
pub fn iterate_subsets(n: usize) -> Result<impl Iterator<Item = SubsetMask>> {
    if n > MAX_SUBSET_N {
        return Err(Error::GuardExceeded {
            op: "iterate_subsets",
            n,
            max: MAX_SUBSET_N,
        });
    }
    Ok((1u32..(1u32 << n)).map(|bits| SubsetMask { bits }))
}
