use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix};

/// `t^0 = 1/sqrt(2N)` followed by the `N^2 - 1` traceless Hermitian
/// generators, all normalised to `Tr(t^a t^b) = delta^{ab} / 2`.
///
/// Generator order is the generalised Gell-Mann nesting: for each column
/// `j = 1..N-1`, the symmetric and antisymmetric pair for every row `i < j`,
/// then the `j`-th diagonal generator. For `N = 3` this is `lambda^1..lambda^8 / 2`.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    n: usize,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn get(&self, a: usize) -> &ComplexMatrix {
        &self.generators[a]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.generators.iter()
    }
}

pub fn build_generators(n: usize) -> Result<GeneratorBasis> {
    if !(2..=5).contains(&n) {
        return Err(Error::Unsupported(format!(
            "generator basis for n = {n}; supported 2..=5"
        )));
    }
    let half = Complex::new(0.5, 0.0);
    let mut generators =
        vec![ComplexMatrix::identity(n).scale(&Complex::new(1.0 / (2.0 * n as f64).sqrt(), 0.0))];
    for j in 1..n {
        for i in 0..j {
            let mut sym = ComplexMatrix::zeros(n);
            sym.set(i, j, half);
            sym.set(j, i, half);
            generators.push(sym);
            let mut anti = ComplexMatrix::zeros(n);
            anti.set(i, j, Complex::new(0.0, -0.5));
            anti.set(j, i, Complex::new(0.0, 0.5));
            generators.push(anti);
        }
        let norm = 0.5 * (2.0 / (j * (j + 1)) as f64).sqrt();
        let diag = (0..n)
            .map(|k| match k.cmp(&j) {
                std::cmp::Ordering::Less => Complex::new(norm, 0.0),
                std::cmp::Ordering::Equal => Complex::new(-(j as f64) * norm, 0.0),
                std::cmp::Ordering::Greater => Complex::new(0.0, 0.0),
            })
            .collect();
        generators.push(ComplexMatrix::from_diagonal(diag));
    }
    Ok(GeneratorBasis { n, generators })
}
