use std::collections::BTreeMap;
use std::fmt;

use super::fields::{assemble_field_matrix, Couplings, FieldConfiguration};
use super::generators::{build_generators, GeneratorBasis};
use super::LAGRANGIAN_FLAVORS;
use crate::engines::polydet;
use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix, ComplexTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    S,
    P,
}

/// One of the 36 real fields: multiplet 1 or 2, scalar or pseudoscalar, index 0..9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldId {
    pub multiplet: u8,
    pub part: Part,
    pub index: usize,
}

impl FieldId {
    pub fn s(multiplet: u8, index: usize) -> Self {
        Self {
            multiplet,
            part: Part::S,
            index,
        }
    }

    pub fn p(multiplet: u8, index: usize) -> Self {
        Self {
            multiplet,
            part: Part::P,
            index,
        }
    }

    pub fn all() -> Vec<FieldId> {
        let dim = LAGRANGIAN_FLAVORS * LAGRANGIAN_FLAVORS;
        let mut out = Vec::with_capacity(4 * dim);
        for multiplet in [1, 2] {
            for part in [Part::S, Part::P] {
                out.extend((0..dim).map(|index| FieldId {
                    multiplet,
                    part,
                    index,
                }));
            }
        }
        out
    }
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.part {
            Part::S => 's',
            Part::P => 'p',
        };
        write!(f, "{p}{}_{}", self.multiplet, self.index)
    }
}

/// Real coefficient of one field monomial in the Lagrangian.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    /// Sorted, with repetition.
    pub fields: Vec<FieldId>,
    pub coefficient: f64,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.fields.len()
    }

    /// Count of fields from the given multiplet.
    pub fn multiplet_count(&self, multiplet: u8) -> usize {
        self.fields
            .iter()
            .filter(|f| f.multiplet == multiplet)
            .count()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.fields.iter().map(ToString::to_string).collect();
        write!(f, "{:+e} {}", self.coefficient, names.join("*"))
    }
}

fn eps3(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<Complex> {
    Ok(polydet(
        &ComplexTuple::new(vec![a.clone(), b.clone(), c.clone()])?,
        None,
    )?
    .value)
}

fn check_configuration(cfg: &FieldConfiguration) -> Result<()> {
    if cfg.n != LAGRANGIAN_FLAVORS {
        return Err(Error::Unsupported(format!(
            "Lagrangian for n = {}; only n = {LAGRANGIAN_FLAVORS}",
            cfg.n
        )));
    }
    if cfg.multiplets.len() != 2 {
        return Err(Error::MultipletCount {
            expected: 2,
            found: cfg.multiplets.len(),
        });
    }
    cfg.validate()
}

/// `(A_1, A_2)` for a configuration; `shifted` adds `f_0 t^0` to `A_1`.
pub fn field_matrices(
    cfg: &FieldConfiguration,
    f0: f64,
    shifted: bool,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_configuration(cfg)?;
    let basis = build_generators(cfg.n)?;
    let mut a1 = assemble_field_matrix(&basis, &cfg.multiplets[0].s, &cfg.multiplets[0].p)?;
    let a2 = assemble_field_matrix(&basis, &cfg.multiplets[1].s, &cfg.multiplets[1].p)?;
    if shifted {
        a1 = a1.add(&basis.get(0).scale(&Complex::new(f0, 0.0)))?;
    }
    Ok((a1, a2))
}

/// `2 Re[c1 det A1 + c2 det A2 + c3 eps(A1,A1,A2) + c4 eps(A1,A2,A2)]`.
pub fn lagrangian_value(cfg: &FieldConfiguration, c: &Couplings, shifted: bool) -> Result<f64> {
    let (a1, a2) = field_matrices(cfg, c.f0, shifted)?;
    let sum = c.c1 * a1.det()
        + c.c2 * a2.det()
        + c.c3 * eps3(&a1, &a1, &a2)?
        + c.c4 * eps3(&a1, &a2, &a2)?;
    Ok(2.0 * sum.re)
}

fn with_field(mut cfg: FieldConfiguration, field: FieldId, value: f64) -> FieldConfiguration {
    let m = &mut cfg.multiplets[usize::from(field.multiplet) - 1];
    match field.part {
        Part::S => m.s[field.index] = value,
        Part::P => m.p[field.index] = value,
    }
    cfg
}

/// Central second difference of the shifted Lagrangian along one field at the vacuum.
pub fn vacuum_curvature(c: &Couplings, field: FieldId, step: f64) -> Result<f64> {
    let vacuum = FieldConfiguration::zero(LAGRANGIAN_FLAVORS, 2);
    let at = |x: f64| lagrangian_value(&with_field(vacuum.clone(), field, x), c, true);
    Ok((at(step)? - 2.0 * at(0.0)? + at(-step)?) / (step * step))
}

fn unit_matrix(basis: &GeneratorBasis, field: FieldId) -> ComplexMatrix {
    let phase = match field.part {
        Part::S => Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Part::P => Complex::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
    };
    basis.get(field.index).scale(&phase)
}

/// Every monomial of degree 1..=3 in the 36 real fields with a non-vanishing
/// coefficient in the shifted Lagrangian, sorted by degree then fields.
pub fn enumerate_vertices(c: &Couplings) -> Result<Vec<Vertex>> {
    let basis = build_generators(LAGRANGIAN_FLAVORS)?;
    let mut first: Vec<(Option<FieldId>, ComplexMatrix)> = Vec::new();
    if c.f0 != 0.0 {
        first.push((None, basis.get(0).scale(&Complex::new(c.f0, 0.0))));
    }
    let mut second = Vec::new();
    for field in FieldId::all() {
        let slot = if field.multiplet == 1 {
            &mut first
        } else {
            &mut second
        };
        slot.push((Some(field), unit_matrix(&basis, field)));
    }

    let mut acc: BTreeMap<Vec<FieldId>, Complex> = BTreeMap::new();
    let terms = [
        (c.c1, [&first, &first, &first]),
        (c.c2, [&second, &second, &second]),
        (c.c3, [&first, &first, &second]),
        (c.c4, [&first, &second, &second]),
    ];
    for (coupling, [la, lb, lc]) in terms {
        if coupling == Complex::new(0.0, 0.0) {
            continue;
        }
        for (fa, ma) in la.iter() {
            for (fb, mb) in lb.iter() {
                for (fc, mc) in lc.iter() {
                    let mut key: Vec<FieldId> =
                        [fa, fb, fc].into_iter().flatten().copied().collect();
                    if key.is_empty() {
                        continue;
                    }
                    key.sort();
                    *acc.entry(key).or_default() += coupling * eps3(ma, mb, mc)?;
                }
            }
        }
    }

    let values: Vec<(Vec<FieldId>, f64)> = acc.into_iter().map(|(k, v)| (k, 2.0 * v.re)).collect();
    let scale = values.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
    let mut out: Vec<Vertex> = values
        .into_iter()
        .filter(|(_, v)| v.abs() > 1e-12 * scale.max(1.0))
        .map(|(fields, coefficient)| Vertex {
            fields,
            coefficient,
        })
        .collect();
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.fields.cmp(&b.fields))
    });
    Ok(out)
}
