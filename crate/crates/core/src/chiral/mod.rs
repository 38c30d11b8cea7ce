//! Flavour-physics layer: meson field matrices built on a generator basis,
//! chiral and axial transformations, the four-term anomalous Lagrangian and
//! the Lorentz-contracted polydeterminant.

mod field_expansion;
mod fields;
mod generators;
mod lagrangian;
mod lorentz;
mod transform;

pub use field_expansion::{
    verify_field_expansion, FieldExpansionReport, FieldPolynomial, SingletConvention,
};
pub use fields::{
    assemble_complex, assemble_field_matrix, project_fields, Couplings, FieldConfiguration,
    Multiplet,
};
pub use generators::{build_generators, GeneratorBasis};
pub use lagrangian::{
    enumerate_vertices, field_matrices, lagrangian_value, vacuum_curvature, FieldId, Part, Vertex,
};
pub use lorentz::{
    lorentz_contracted_polydet, lorentz_contracted_polydet_converting, LorentzIndexedFamily,
    LorentzTransform, Variance, METRIC,
};
pub use transform::{
    axial_pair, axial_phase_law, check_invariance, chiral_transform, u1_pair, vector_pair,
    InvarianceReport, UNITARITY_TOL,
};

/// Flavour count of the Lagrangian layer.
pub const LAGRANGIAN_FLAVORS: usize = 3;
