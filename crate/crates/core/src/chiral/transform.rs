use crate::engines::polydet;
use crate::error::{Error, Result};
use crate::{Complex, ComplexMatrix, ComplexTuple};

/// Maximum `||U U^dagger - 1||_max` accepted for a transformation matrix.
pub const UNITARITY_TOL: f64 = 1e-8;

/// Moduli below this make the invariance ratio meaningless.
const RATIO_FLOOR: f64 = 1e-12;

fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    let deviation = u.unitarity_defect();
    if deviation > UNITARITY_TOL || !deviation.is_finite() {
        return Err(Error::NonUnitary { deviation });
    }
    Ok(())
}

/// `A -> U_L A U_R^dagger`.
pub fn chiral_transform(
    a: &ComplexMatrix,
    ul: &ComplexMatrix,
    ur: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    check_unitary(ul)?;
    check_unitary(ur)?;
    ul.matmul(a)?.matmul(&ur.conj_transpose())
}

/// Phase picked up by a monomial with `count` field matrices under the axial
/// transformation of angle `theta`: `exp(-i theta sqrt(2/N) count)`.
pub fn axial_phase_law(n: usize, theta: f64, count: usize) -> Complex {
    Complex::from_polar(1.0, -theta * (2.0 / n as f64).sqrt() * count as f64)
}

/// `U_L = exp(-i theta_L t^0)`, `U_R = exp(-i theta_R t^0)`.
pub fn u1_pair(n: usize, theta_l: f64, theta_r: f64) -> (ComplexMatrix, ComplexMatrix) {
    let k = 1.0 / (2.0 * n as f64).sqrt();
    let id = ComplexMatrix::identity(n);
    (
        id.scale(&Complex::from_polar(1.0, -theta_l * k)),
        id.scale(&Complex::from_polar(1.0, -theta_r * k)),
    )
}

/// `theta_L = -theta_R = theta`.
pub fn axial_pair(n: usize, theta: f64) -> (ComplexMatrix, ComplexMatrix) {
    u1_pair(n, theta, -theta)
}

/// `theta_L = theta_R = theta`.
pub fn vector_pair(n: usize, theta: f64) -> (ComplexMatrix, ComplexMatrix) {
    u1_pair(n, theta, theta)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvarianceReport {
    pub before: Complex,
    pub after: Complex,
    /// `eps(transformed) / eps(original)`.
    pub ratio: Complex,
    /// `det(U_L) * conj(det(U_R))`.
    pub predicted: Complex,
    /// `|ratio - 1| < 1e-9`.
    pub su_invariant: bool,
}

impl InvarianceReport {
    pub fn deviation_from_prediction(&self) -> f64 {
        (self.ratio - self.predicted).norm()
    }
}

/// Transforms every matrix of the tuple and compares polydeterminants.
pub fn check_invariance(
    t: &ComplexTuple,
    ul: &ComplexMatrix,
    ur: &ComplexMatrix,
) -> Result<InvarianceReport> {
    let transformed = t
        .items()
        .iter()
        .map(|a| chiral_transform(a, ul, ur))
        .collect::<Result<Vec<_>>>()?;
    let before = polydet(t, None)?.value;
    let after = polydet(&ComplexTuple::new(transformed)?, None)?.value;
    if before.norm() < RATIO_FLOOR {
        return Err(Error::IndeterminateRatio {
            modulus: before.norm(),
        });
    }
    let ratio = after / before;
    Ok(InvarianceReport {
        before,
        after,
        ratio,
        predicted: ul.det() * ur.det().conj(),
        su_invariant: (ratio - Complex::new(1.0, 0.0)).norm() < 1e-9,
    })
}
