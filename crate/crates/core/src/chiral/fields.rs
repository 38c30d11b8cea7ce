use serde::{Deserialize, Serialize};

use super::generators::GeneratorBasis;
use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix};

/// Scalar (`s^a`) and pseudoscalar (`p^a`) components of one meson multiplet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Multiplet {
    pub s: Vec<f64>,
    pub p: Vec<f64>,
}

impl Multiplet {
    pub fn zero(n: usize) -> Self {
        Self {
            s: vec![0.0; n * n],
            p: vec![0.0; n * n],
        }
    }

    /// Complex components `phi^a = s^a + i p^a`.
    pub fn phi(&self) -> Vec<Complex> {
        self.s
            .iter()
            .zip(&self.p)
            .map(|(&s, &p)| Complex::new(s, p))
            .collect()
    }
}

/// JSON: `{"n": 3, "multiplets": [{"s": [..9..], "p": [..9..]}, ..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldConfiguration {
    pub n: usize,
    pub multiplets: Vec<Multiplet>,
}

impl FieldConfiguration {
    pub fn zero(n: usize, count: usize) -> Self {
        Self {
            n,
            multiplets: vec![Multiplet::zero(n); count],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let len = self.n * self.n;
        for m in &self.multiplets {
            for v in [&m.s, &m.p] {
                if v.len() != len {
                    return Err(Error::LengthMismatch {
                        expected: len,
                        found: v.len(),
                    });
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite);
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Couplings `c_1..c_4` (complex) and the condensate `f_0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Couplings {
    pub c1: Complex,
    pub c2: Complex,
    pub c3: Complex,
    pub c4: Complex,
    pub f0: f64,
}

#[derive(Serialize, Deserialize)]
struct CouplingsJson {
    #[serde(default)]
    c1: [f64; 2],
    #[serde(default)]
    c2: [f64; 2],
    #[serde(default)]
    c3: [f64; 2],
    #[serde(default)]
    c4: [f64; 2],
    #[serde(default)]
    f0: f64,
}

impl Couplings {
    pub fn zero() -> Self {
        let z = Complex::new(0.0, 0.0);
        Self {
            c1: z,
            c2: z,
            c3: z,
            c4: z,
            f0: 0.0,
        }
    }

    /// Parses `{"c1": [re, im], .., "f0": x}`; missing entries are zero.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: CouplingsJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let c = |v: [f64; 2]| Complex::new(v[0], v[1]);
        let out = Self {
            c1: c(j.c1),
            c2: c(j.c2),
            c3: c(j.c3),
            c4: c(j.c4),
            f0: j.f0,
        };
        let all = [j.c1, j.c2, j.c3, j.c4].concat();
        if all
            .iter()
            .chain(std::iter::once(&j.f0))
            .any(|x| !x.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let p = |z: Complex| [z.re, z.im];
        let j = CouplingsJson {
            c1: p(self.c1),
            c2: p(self.c2),
            c3: p(self.c3),
            c4: p(self.c4),
            f0: self.f0,
        };
        serde_json::to_string(&j).expect("plain data serialises")
    }
}

/// `(1/sqrt 2) sum_a (s^a + i p^a) t^a`.
pub fn assemble_field_matrix(
    basis: &GeneratorBasis,
    s: &[f64],
    p: &[f64],
) -> Result<ComplexMatrix> {
    let len = basis.len();
    for v in [s, p] {
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: v.len(),
            });
        }
    }
    let phi: Vec<Complex> = s.iter().zip(p).map(|(&s, &p)| Complex::new(s, p)).collect();
    assemble_complex(basis, &phi)
}

/// `(1/sqrt 2) sum_a phi^a t^a` for complex components.
pub fn assemble_complex(basis: &GeneratorBasis, phi: &[Complex]) -> Result<ComplexMatrix> {
    if phi.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            found: phi.len(),
        });
    }
    let mut out = ComplexMatrix::zeros(basis.n());
    for (t, &z) in basis.iter().zip(phi) {
        out = out.add(&t.scale(&(z / std::f64::consts::SQRT_2)))?;
    }
    Ok(out)
}

/// Inverse of [`assemble_complex`]: `phi^a = 2 sqrt(2) Tr(A t^a)`.
pub fn project_fields(basis: &GeneratorBasis, a: &ComplexMatrix) -> Result<Vec<Complex>> {
    basis
        .iter()
        .map(|t| Ok(a.matmul(t)?.trace() * (2.0 * std::f64::consts::SQRT_2)))
        .collect()
}
