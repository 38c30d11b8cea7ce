//! Deterministic random test matrices.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Each uniform draw takes one `next_u64()`, keeps the
//! top 53 bits `u = (x >> 11) / 2^53` and maps it to `2u - 1` in `[-1, 1)`.
//! A general matrix consumes draws in row-major order, real part before
//! imaginary part. The other kinds are deterministic functions of that
//! general sample, so `(n, seed, kind)` fixes the output bit for bit.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Matrix, MatrixTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    /// Entries with real and imaginary parts uniform on `[-1, 1)`.
    General,
    /// Q factor of a Gram-Schmidt QR of a general sample, with a real
    /// positive R diagonal.
    Unitary,
    /// Unitary rescaled by `det^{-1/n}` (principal branch).
    SpecialUnitary,
    /// `(G + G^dagger)/2` with the trace projected out.
    TracelessHermitian,
}

/// A seeded stream of test inputs.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on `[-1, 1)`.
    pub fn uniform(&mut self) -> f64 {
        let u = (self.rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        2.0 * u - 1.0
    }

    pub fn complex(&mut self) -> Complex64 {
        let re = self.uniform();
        let im = self.uniform();
        Complex64::new(re, im)
    }

    pub fn matrix(&mut self, n: usize, kind: MatrixKind) -> Matrix<Complex64> {
        let general = Matrix::from_fn(n, |_, _| self.complex());
        match kind {
            MatrixKind::General => general,
            MatrixKind::Unitary => orthonormalize(&general),
            MatrixKind::SpecialUnitary => to_special(&orthonormalize(&general)),
            MatrixKind::TracelessHermitian => {
                let h = general
                    .add(&general.conj_transpose())
                    .unwrap()
                    .scale(&Complex64::new(0.5, 0.0));
                let shift = h.trace() / n as f64;
                h.sub(&Matrix::identity(n).scale(&shift)).unwrap()
            }
        }
    }

    /// `n` general matrices drawn consecutively from the stream.
    pub fn tuple(&mut self, n: usize) -> MatrixTuple<Complex64> {
        MatrixTuple::new(
            (0..n)
                .map(|_| self.matrix(n, MatrixKind::General))
                .collect(),
        )
        .expect("n matrices of size n")
    }
}

pub fn random_matrix(n: usize, seed: u64, kind: MatrixKind) -> Matrix<Complex64> {
    Sampler::new(seed).matrix(n, kind)
}

/// Per-item seed derived from a master seed (SplitMix64 finaliser), so
/// parallel loops can draw independent reproducible streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Column-wise Gram-Schmidt with one reorthogonalisation pass.
fn orthonormalize(g: &Matrix<Complex64>) -> Matrix<Complex64> {
    let n = g.n();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| *g.get(i, j)).collect())
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let v = cols[k][i] * proj;
                    cols[j][i] -= v;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    Matrix::from_fn(n, |i, j| cols[j][i])
}

fn to_special(u: &Matrix<Complex64>) -> Matrix<Complex64> {
    let d = u.det();
    let n = u.n() as f64;
    let root = Complex64::from_polar(d.norm().powf(1.0 / n), d.arg() / n);
    u.scale(&root.inv())
}
