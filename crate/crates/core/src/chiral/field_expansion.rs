//! Closed-form `eps(A_1, A_1, A_2)` polynomial in the `N = 3` meson components.

use super::fields::assemble_complex;
use super::generators::build_generators;
use crate::engines::polydet;
use crate::error::{Error, Result};
use crate::random::{derive_seed, Sampler};
use crate::{Complex, ComplexTuple};

/// Normalisation of the singlet generator used to build `A_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingletConvention {
    /// `t^0 = 1/sqrt(6)`, the normalisation of the rest of the crate.
    Standard,
    /// `2 t^0 = sqrt(2/3)`, i.e. `lambda^0` in place of `t^0`.
    Lambda0,
}

/// Cubic polynomial `sum c * phi1^i phi1^j phi2^k` as a term table.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldPolynomial {
    terms: Vec<(f64, usize, usize, usize)>,
}

impl FieldPolynomial {
    /// The table as printed, including the isovector bracket that lists only
    /// `(phi1^2)^2 + (phi1^3)^2`.
    pub fn printed() -> Self {
        Self {
            terms: table(false),
        }
    }

    /// The table with `(phi1^1)^2` restored to the isovector bracket.
    pub fn restored() -> Self {
        Self { terms: table(true) }
    }

    pub fn terms(&self) -> &[(f64, usize, usize, usize)] {
        &self.terms
    }

    pub fn evaluate(&self, phi1: &[Complex], phi2: &[Complex]) -> Complex {
        self.terms
            .iter()
            .map(|&(c, i, j, k)| phi1[i] * phi1[j] * phi2[k] * c)
            .sum()
    }
}

fn table(restore: bool) -> Vec<(f64, usize, usize, usize)> {
    let r3 = 3f64.sqrt();
    let r6 = 6f64.sqrt();
    let h = 0.5;
    let q = 1.0 / (2.0 * r3);
    let mut t = vec![
        (4.0 * (2.0f64 / 3.0).sqrt(), 0, 0, 0),
        (h, 4, 6, 1),
        (-h, 4, 7, 2),
        (-q, 4, 8, 4),
        (h, 5, 7, 1),
        (h, 5, 6, 2),
        (-q, 5, 8, 5),
        (-q, 6, 8, 6),
        (-q, 7, 8, 7),
        (1.0 / r3, 2, 8, 2),
        (-h, 2, 7, 4),
        (h, 2, 6, 5),
        (h, 2, 5, 6),
        (-h, 2, 4, 7),
        (1.0 / r3, 1, 8, 1),
        (h, 1, 6, 4),
        (h, 1, 7, 5),
        (h, 1, 4, 6),
        (h, 1, 5, 7),
        (1.0 / r3, 3, 8, 3),
        (h, 3, 4, 4),
        (h, 3, 5, 5),
        (-h, 3, 6, 6),
        (-h, 3, 7, 7),
        (-1.0 / r6, 8, 8, 0),
        (-q, 8, 8, 8),
    ];
    for i in [6, 7] {
        t.extend([(-1.0 / r6, i, i, 0), (-0.25, i, i, 3), (-q / 2.0, i, i, 8)]);
    }
    for i in [4, 5] {
        t.extend([(-1.0 / r6, i, i, 0), (0.25, i, i, 3), (-q / 2.0, i, i, 8)]);
    }
    let isovector: &[usize] = if restore { &[1, 2, 3] } else { &[2, 3] };
    for &i in isovector {
        t.extend([(-1.0 / r6, i, i, 0), (q, i, i, 8)]);
    }
    for a in 1..9 {
        t.push((-(2.0f64 / 3.0).sqrt(), 0, a, a));
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldExpansionReport {
    /// Least-squares `kappa` in `P = kappa * eps`.
    pub kappa: Complex,
    /// `max |P - kappa eps| / max |P|` over the samples.
    pub max_residual: f64,
    pub samples: usize,
}

impl FieldExpansionReport {
    pub fn proportional(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

/// Samples random complex `phi_1, phi_2` (components uniform in `[-1, 1)` for
/// real and imaginary parts), builds `A_k` with the chosen singlet
/// normalisation, and fits the polynomial against the engine value of
/// `eps(A_1, A_1, A_2)`.
pub fn verify_field_expansion(
    poly: &FieldPolynomial,
    convention: SingletConvention,
    seed: u64,
    samples: usize,
) -> Result<FieldExpansionReport> {
    if samples == 0 {
        return Err(Error::Degenerate("no samples".into()));
    }
    let basis = build_generators(3)?;
    let singlet_scale = match convention {
        SingletConvention::Standard => 1.0,
        SingletConvention::Lambda0 => 2.0,
    };
    let mut pairs = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut s = Sampler::new(derive_seed(seed, i as u64));
        let phi1: Vec<Complex> = (0..9).map(|_| s.complex()).collect();
        let phi2: Vec<Complex> = (0..9).map(|_| s.complex()).collect();
        let p = poly.evaluate(&phi1, &phi2);
        let scaled = |phi: &[Complex]| {
            let mut v = phi.to_vec();
            v[0] *= singlet_scale;
            assemble_complex(&basis, &v)
        };
        let a1 = scaled(&phi1)?;
        let a2 = scaled(&phi2)?;
        let e = polydet(&ComplexTuple::new(vec![a1.clone(), a1, a2])?, None)?.value;
        pairs.push((e, p));
    }
    let norm: f64 = pairs.iter().map(|(e, _)| e.norm_sqr()).sum();
    let pmax = pairs.iter().fold(0.0f64, |m, (_, p)| m.max(p.norm()));
    if norm < 1e-300 || pmax < 1e-300 {
        return Err(Error::Degenerate("vanishing samples".into()));
    }
    let kappa = pairs.iter().map(|(e, p)| e.conj() * p).sum::<Complex>() / norm;
    let worst = pairs
        .iter()
        .fold(0.0f64, |m, (e, p)| m.max((p - kappa * e).norm()));
    Ok(FieldExpansionReport {
        kappa,
        max_residual: worst / pmax,
        samples,
    })
}
