//! Exact trace-monomial expansions of the polydeterminant.
//!
//! `expand_polydet` walks all `N!` argument orderings of every partition
//! class template, canonicalises each trace word up to cyclic rotation and
//! merges equal monomials. Coefficients stay exact; they only become floats
//! inside [`evaluate`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cayley_hamilton_coefficient, compositions, enumerate_partition_vectors, factorial,
    iterate_permutations, multinomial, PartitionVector,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::Rational;

/// Largest dimension [`expand_polydet`] and [`expand_det_of_sum`] accept.
pub const MAX_EXPANSION_N: usize = 6;

/// `Tr(A_{l_1} A_{l_2} ..)`, stored as its lexicographically minimal rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceWord {
    letters: Vec<String>,
}

impl TraceWord {
    /// Builds a canonical word. Panics on an empty letter list.
    pub fn new<I, L>(letters: I) -> Self
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        canonicalize(Self {
            letters: letters.into_iter().map(Into::into).collect(),
        })
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl Ord for TraceWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for TraceWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimal rotation of the letter sequence. Reversal is not applied:
/// `Tr(ABC)` and `Tr(ACB)` stay distinct.
pub fn canonicalize(w: TraceWord) -> TraceWord {
    let letters = w.letters;
    assert!(!letters.is_empty(), "trace word must be non-empty");
    let k = letters.len();
    let best = (0..k)
        .min_by(|&a, &b| {
            (0..k)
                .map(|i| &letters[(a + i) % k])
                .cmp((0..k).map(|i| &letters[(b + i) % k]))
        })
        .unwrap_or(0);
    let mut rotated = letters;
    rotated.rotate_left(best);
    TraceWord { letters: rotated }
}

/// Coefficient times a product of traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMonomial {
    pub coefficient: Rational,
    words: Vec<TraceWord>,
}

impl TraceMonomial {
    pub fn new(coefficient: Rational, mut words: Vec<TraceWord>) -> Self {
        words.sort();
        Self { coefficient, words }
    }

    pub fn words(&self) -> &[TraceWord] {
        &self.words
    }

    /// Partition class `(n_1, .., n_N)` given by the word lengths.
    pub fn class(&self) -> PartitionVector {
        let n: usize = self.words.iter().map(TraceWord::len).sum();
        let mut counts = vec![0; n];
        for w in &self.words {
            counts[w.len() - 1] += 1;
        }
        PartitionVector::new(counts).expect("word lengths partition the degree")
    }
}

/// Merged, canonically ordered sum of trace monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceExpansion {
    n: usize,
    terms: Vec<TraceMonomial>,
}

/// Monomials with more trace factors come first, then word order.
fn term_order(a: &[TraceWord], b: &[TraceWord]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

impl TraceExpansion {
    fn from_merged(n: usize, merged: BTreeMap<Vec<TraceWord>, Rational>) -> Self {
        let mut terms: Vec<TraceMonomial> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(words, coefficient)| TraceMonomial { coefficient, words })
            .collect();
        terms.sort_by(|a, b| term_order(&a.words, &b.words));
        Self { n, terms }
    }

    /// Merges and orders arbitrary monomials of total degree `n`.
    pub fn from_terms(n: usize, terms: Vec<TraceMonomial>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<TraceWord>, Rational> = BTreeMap::new();
        for t in terms {
            let degree: usize = t.words.iter().map(TraceWord::len).sum();
            if degree != n {
                return Err(Error::Parse(format!(
                    "monomial of degree {degree} in an expansion of degree {n}"
                )));
            }
            let mut words = t.words;
            words.sort();
            *merged.entry(words).or_insert_with(Rational::zero) += t.coefficient;
        }
        Ok(Self::from_merged(n, merged))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[TraceMonomial] {
        &self.terms
    }

    /// Coefficient of the monomial with exactly these words (zero if absent).
    pub fn coefficient_of(&self, words: &[TraceWord]) -> Rational {
        let mut key = words.to_vec();
        key.sort();
        self.terms
            .iter()
            .find(|t| t.words == key)
            .map_or_else(Rational::zero, |t| t.coefficient)
    }

    /// Every label that occurs, sorted.
    pub fn labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .terms
            .iter()
            .flat_map(|t| t.words.iter().flat_map(|w| w.letters.iter().cloned()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The same expansion with every label renamed through `f`, re-canonicalised.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                TraceMonomial::new(
                    t.coefficient,
                    t.words
                        .iter()
                        .map(|w| TraceWord::new(w.letters.iter().map(|l| f(l))))
                        .collect(),
                )
            })
            .collect();
        Self::from_terms(self.n, terms).expect("relabelling preserves degree")
    }
}

/// Trace expansion of `eps(labels[0], .., labels[n-1])`. Labels may repeat;
/// repeated labels merge into the corresponding collapsed expansion.
pub fn expand_polydet<L: AsRef<str>>(n: usize, labels: &[L]) -> Result<TraceExpansion> {
    if n < 2 {
        return Err(Error::TooSmall {
            op: "expand_polydet",
            n,
            min: 2,
        });
    }
    if n > MAX_EXPANSION_N {
        return Err(Error::GuardExceeded {
            op: "expand_polydet",
            n,
            max: MAX_EXPANSION_N,
        });
    }
    if labels.len() != n {
        return Err(Error::LabelCount {
            expected: n,
            found: labels.len(),
        });
    }
    let scale = Rational::new(1, factorial(n) as i64);
    let perms: Vec<_> = iterate_permutations(n)?.collect();
    let mut merged: BTreeMap<Vec<TraceWord>, Rational> = BTreeMap::new();
    for class in enumerate_partition_vectors(n) {
        let weight = cayley_hamilton_coefficient(&class) * scale;
        let parts = class.parts();
        for sigma in &perms {
            let mut words = Vec::with_capacity(parts.len());
            let mut start = 0;
            for &len in &parts {
                let letters = sigma.images()[start..start + len]
                    .iter()
                    .map(|&i| labels[i].as_ref().to_owned());
                words.push(TraceWord::new(letters));
                start += len;
            }
            words.sort();
            *merged.entry(words).or_insert_with(Rational::zero) += weight;
        }
    }
    Ok(TraceExpansion::from_merged(n, merged))
}

/// Evaluates the expansion with each label bound to a matrix of dimension `e.n()`.
pub fn evaluate<S: Scalar>(e: &TraceExpansion, binding: &HashMap<String, Matrix<S>>) -> Result<S> {
    let mut cache: HashMap<&TraceWord, S> = HashMap::new();
    let mut total = S::zero();
    for term in &e.terms {
        let mut prod = S::from_ratio(&term.coefficient);
        for w in &term.words {
            if let Some(v) = cache.get(w) {
                prod = prod * v.clone();
                continue;
            }
            let mut acc: Option<Matrix<S>> = None;
            for l in &w.letters {
                let m = binding
                    .get(l)
                    .ok_or_else(|| Error::UnboundLabel(l.clone()))?;
                if m.n() != e.n {
                    return Err(Error::DimensionMismatch {
                        expected: e.n,
                        found: m.n(),
                    });
                }
                acc = Some(match acc {
                    None => m.clone(),
                    Some(a) => a.mul_unchecked(m),
                });
            }
            let tr = acc.expect("non-empty word").trace();
            cache.insert(w, tr.clone());
            prod = prod * tr;
        }
        total = total + prod;
    }
    Ok(total)
}

/// One term of the multinomial expansion of `det(A_1 + .. + A_r)`:
/// `weight * eps({A_1}^{counts[0]}, ..)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetSumTerm {
    pub counts: Vec<usize>,
    pub weight: u64,
}

pub fn expand_det_of_sum(n: usize, r: usize) -> Result<Vec<DetSumTerm>> {
    if n > MAX_EXPANSION_N {
        return Err(Error::GuardExceeded {
            op: "expand_det_of_sum",
            n,
            max: MAX_EXPANSION_N,
        });
    }
    if r == 0 || r > n {
        return Err(Error::GuardExceeded {
            op: "expand_det_of_sum (summand count)",
            n: r,
            max: n,
        });
    }
    compositions(n, r)
        .into_iter()
        .map(|counts| {
            Ok(DetSumTerm {
                weight: multinomial(n, &counts)?,
                counts,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Self::Text),
            "latex" => Ok(Self::Latex),
            "json" => Ok(Self::Json),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    n: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coef: [String; 2],
    words: Vec<Vec<String>>,
}

pub fn render(e: &TraceExpansion, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_signed(
            e,
            write_text_coef,
            |w| format!("Tr({})", w.letters.join("*")),
            "*",
        ),
        RenderFormat::Latex => {
            let sep = if e.labels().iter().all(|l| l.chars().count() == 1) {
                ""
            } else {
                " "
            };
            render_signed(
                e,
                write_latex_coef,
                |w| format!("\\mathrm{{Tr}}({})", w.letters.join(sep)),
                "\\,",
            )
        }
        RenderFormat::Json => {
            let doc = ExpansionJson {
                n: e.n,
                terms: e
                    .terms
                    .iter()
                    .map(|t| TermJson {
                        coef: [
                            t.coefficient.numer().to_string(),
                            t.coefficient.denom().to_string(),
                        ],
                        words: t.words.iter().map(|w| w.letters.clone()).collect(),
                    })
                    .collect(),
            };
            serde_json::to_string(&doc).expect("plain data serialises")
        }
    }
}

fn render_signed(
    e: &TraceExpansion,
    coef: impl Fn(&mut String, &Rational),
    word: impl Fn(&TraceWord) -> String,
    join: &str,
) -> String {
    if e.terms.is_empty() {
        return "0".to_owned();
    }
    let mut out = String::new();
    for (i, t) in e.terms.iter().enumerate() {
        let negative = t.coefficient.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        coef(&mut out, &t.coefficient.abs());
        let words: Vec<String> = t.words.iter().map(&word).collect();
        out.push_str(&words.join(join));
    }
    out
}

fn write_text_coef(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}*", c.numer());
    } else {
        let _ = write!(out, "{}/{}*", c.numer(), c.denom());
    }
}

fn write_latex_coef(out: &mut String, c: &Rational) {
    if c.is_integer() {
        let _ = write!(out, "{}\\,", c.numer());
    } else {
        let _ = write!(out, "\\frac{{{}}}{{{}}}\\,", c.numer(), c.denom());
    }
}

/// Parses the JSON produced by [`render`] (`RenderFormat::Json`).
pub fn parse_json(s: &str) -> Result<TraceExpansion> {
    let doc: ExpansionJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        let num: i64 = t.coef[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator `{}`", t.coef[0])))?;
        let den: i64 = t.coef[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{}`", t.coef[1])))?;
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        if t.words.iter().any(Vec::is_empty) {
            return Err(Error::Parse("empty trace word".into()));
        }
        terms.push(TraceMonomial::new(
            Rational::new(num, den),
            t.words.into_iter().map(TraceWord::new).collect(),
        ));
    }
    TraceExpansion::from_terms(doc.n, terms)
}
