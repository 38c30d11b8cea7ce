use crate::engines::polydet;
use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix, ComplexTuple};

/// Minkowski metric, signature `(+, -, -, -)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Upper,
    Lower,
}

/// Real `4x4` Lorentz matrix `Lambda^mu_nu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform {
    pub m: [[f64; 4]; 4],
}

impl LorentzTransform {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { m }
    }

    /// Boost with the given rapidity along spatial axis 1, 2 or 3.
    pub fn boost(axis: usize, rapidity: f64) -> Result<Self> {
        if !(1..=3).contains(&axis) {
            return Err(Error::IndexOutOfRange { index: axis, n: 4 });
        }
        let mut t = Self::identity();
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        t.m[0][0] = ch;
        t.m[axis][axis] = ch;
        t.m[0][axis] = -sh;
        t.m[axis][0] = -sh;
        Ok(t)
    }

    /// Rotation by `angle` in the plane of spatial axes `i` and `j`.
    pub fn rotation(i: usize, j: usize, angle: f64) -> Result<Self> {
        if i == j {
            return Err(Error::Degenerate(format!("rotation plane ({i}, {j})")));
        }
        for axis in [i, j] {
            if !(1..=3).contains(&axis) {
                return Err(Error::IndexOutOfRange { index: axis, n: 4 });
            }
        }
        let mut t = Self::identity();
        let (c, s) = (angle.cos(), angle.sin());
        t.m[i][i] = c;
        t.m[j][j] = c;
        t.m[i][j] = -s;
        t.m[j][i] = s;
        Ok(t)
    }

    pub fn compose(&self, other: &Self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Self { m }
    }

    /// `(Lambda^{-1})^mu_nu = g^{mu mu} Lambda^nu_mu g_{nu nu}`.
    pub fn inverse(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = METRIC[i] * self.m[j][i] * METRIC[j];
            }
        }
        Self { m }
    }

    /// Factor applied to an index of the given variance: `Lambda` for upper,
    /// `Lambda^{-T}` for lower.
    fn index_map(&self, v: Variance) -> [[f64; 4]; 4] {
        match v {
            Variance::Upper => self.m,
            Variance::Lower => {
                let inv = self.inverse().m;
                let mut m = [[0.0; 4]; 4];
                for (i, row) in m.iter_mut().enumerate() {
                    for (j, x) in row.iter_mut().enumerate() {
                        *x = inv[j][i];
                    }
                }
                m
            }
        }
    }
}

/// Matrix-valued tensor of rank 1 or 2 over Minkowski indices, components
/// stored in row-major index order.
#[derive(Clone, Debug)]
pub struct LorentzIndexedFamily {
    variance: Vec<Variance>,
    components: Vec<ComplexMatrix>,
}

impl LorentzIndexedFamily {
    pub fn new(variance: Vec<Variance>, components: Vec<ComplexMatrix>) -> Result<Self> {
        let rank = variance.len();
        if !(1..=2).contains(&rank) {
            return Err(Error::Unsupported(format!("Lorentz rank {rank}")));
        }
        let expected = 4usize.pow(rank as u32);
        if components.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: components.len(),
            });
        }
        let n = components[0].n();
        if let Some(bad) = components.iter().find(|m| m.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(Self {
            variance,
            components,
        })
    }

    pub fn vector(variance: Variance, components: [ComplexMatrix; 4]) -> Result<Self> {
        Self::new(vec![variance], components.into())
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn component(&self, index: &[usize]) -> &ComplexMatrix {
        let flat = index.iter().fold(0, |acc, &i| acc * 4 + i);
        &self.components[flat]
    }

    fn linear_map(&self, maps: &[[[f64; 4]; 4]]) -> Self {
        let n = self.n();
        let rank = self.rank();
        let mut out = vec![ComplexMatrix::zeros(n); self.components.len()];
        for (target, slot) in out.iter_mut().enumerate() {
            let tidx: Vec<usize> = if rank == 1 {
                vec![target]
            } else {
                vec![target / 4, target % 4]
            };
            for (source, m) in self.components.iter().enumerate() {
                let sidx: Vec<usize> = if rank == 1 {
                    vec![source]
                } else {
                    vec![source / 4, source % 4]
                };
                let w: f64 = (0..rank).map(|k| maps[k][tidx[k]][sidx[k]]).product();
                if w != 0.0 {
                    *slot = slot
                        .add(&m.scale(&Complex::new(w, 0.0)))
                        .expect("same size");
                }
            }
        }
        Self {
            variance: self.variance.clone(),
            components: out,
        }
    }

    /// Raises or lowers indices with the metric to reach `target`.
    pub fn with_variance(&self, target: &[Variance]) -> Result<Self> {
        if target.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: target.len(),
            });
        }
        let maps: Vec<[[f64; 4]; 4]> = self
            .variance
            .iter()
            .zip(target)
            .map(|(from, to)| {
                let mut m = [[0.0; 4]; 4];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = if from == to { 1.0 } else { METRIC[i] };
                }
                m
            })
            .collect();
        let mut out = self.linear_map(&maps);
        out.variance = target.to_vec();
        Ok(out)
    }

    /// Applies `Lambda` to every index according to its variance.
    pub fn transform(&self, lambda: &LorentzTransform) -> Self {
        let maps: Vec<_> = self.variance.iter().map(|&v| lambda.index_map(v)).collect();
        self.linear_map(&maps)
    }
}

/// `sum_{mu nu} eps(V_mu, V_nu, T^{mu nu})` for `N = 3` matrices; `V` must
/// carry a lower index and `T` two upper indices.
pub fn lorentz_contracted_polydet(
    v: &LorentzIndexedFamily,
    t: &LorentzIndexedFamily,
) -> Result<Complex> {
    if v.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: v.rank(),
        });
    }
    if t.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: t.rank(),
        });
    }
    if v.variance() != [Variance::Lower] {
        return Err(Error::VarianceMismatch(
            "vector family must carry a lower index".into(),
        ));
    }
    if t.variance() != [Variance::Upper, Variance::Upper] {
        return Err(Error::VarianceMismatch(
            "tensor family must carry two upper indices".into(),
        ));
    }
    if v.n() != 3 || t.n() != 3 {
        let found = if v.n() != 3 { v.n() } else { t.n() };
        return Err(Error::DimensionMismatch { expected: 3, found });
    }
    let mut sum = Complex::new(0.0, 0.0);
    for mu in 0..4 {
        for nu in 0..4 {
            let tuple = ComplexTuple::new(vec![
                v.component(&[mu]).clone(),
                v.component(&[nu]).clone(),
                t.component(&[mu, nu]).clone(),
            ])?;
            sum += polydet(&tuple, None)?.value;
        }
    }
    Ok(sum)
}

/// As [`lorentz_contracted_polydet`], first moving indices into place with the metric.
pub fn lorentz_contracted_polydet_converting(
    v: &LorentzIndexedFamily,
    t: &LorentzIndexedFamily,
) -> Result<Complex> {
    if v.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: v.rank(),
        });
    }
    if t.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: t.rank(),
        });
    }
    let v = v.with_variance(&[Variance::Lower])?;
    let t = t.with_variance(&[Variance::Upper, Variance::Upper])?;
    lorentz_contracted_polydet(&v, &t)
}
