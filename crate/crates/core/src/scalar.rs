//! Scalar abstraction shared by the matrix layer and every engine.
//!
//! Engines only need field arithmetic, a magnitude for pivot selection and
//! conversions from small integers and exact rationals. Floating types
//! (`f32`, `f64`, and their complex counterparts) and exact rationals
//! (`BigRational`, `Complex<BigRational>`) all implement [`Scalar`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use crate::Rational;

pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn conj(&self) -> Self;

    /// Absolute value, as f64. Used for pivoting and tolerance checks.
    fn modulus(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(r: &Rational) -> Self;

    fn to_complex64(&self) -> Complex<f64>;

    fn is_finite(&self) -> bool;
}

macro_rules! impl_real_float {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                *self
            }

            fn modulus(&self) -> f64 {
                f64::from(self.abs())
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn from_ratio(r: &Rational) -> Self {
                (*r.numer() as f64 / *r.denom() as f64) as $t
            }

            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(f64::from(*self), 0.0)
            }

            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
        }

        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn modulus(&self) -> f64 {
                f64::from(self.norm())
            }

            fn from_i64(v: i64) -> Self {
                Complex::new(v as $t, 0.0)
            }

            fn from_ratio(r: &Rational) -> Self {
                Complex::new(<$t as Scalar>::from_ratio(r), 0.0)
            }

            fn to_complex64(&self) -> Complex<f64> {
                Complex::new(f64::from(self.re), f64::from(self.im))
            }

            fn is_finite(&self) -> bool {
                self.re.is_finite() && self.im.is_finite()
            }
        }
    };
}

impl_real_float!(f32);
impl_real_float!(f64);

fn big_ratio_to_f64(r: &BigRational) -> f64 {
    // Ratio<BigInt>::to_f64 handles huge numerators/denominators gracefully.
    r.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn modulus(&self) -> f64 {
        big_ratio_to_f64(self).abs()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(r: &Rational) -> Self {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }

    fn to_complex64(&self) -> Complex<f64> {
        Complex::new(big_ratio_to_f64(self), 0.0)
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for Complex<BigRational> {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn modulus(&self) -> f64 {
        self.to_complex64().norm()
    }

    fn from_i64(v: i64) -> Self {
        Complex::new(
            BigRational::from_i64(v),
            <BigRational as num_traits::Zero>::zero(),
        )
    }

    fn from_ratio(r: &Rational) -> Self {
        Complex::new(
            BigRational::from_ratio(r),
            <BigRational as num_traits::Zero>::zero(),
        )
    }

    fn to_complex64(&self) -> Complex<f64> {
        Complex::new(big_ratio_to_f64(&self.re), big_ratio_to_f64(&self.im))
    }

    fn is_finite(&self) -> bool {
        true
    }
}

/// Relative closeness with an absolute floor: `|a - b| <= max(rel * max(|a|, |b|), abs)`.
pub fn close<S: Scalar>(a: &S, b: &S, rel: f64, abs: f64) -> bool {
    relative_deviation(a, b, abs) <= rel || (a.clone() - b.clone()).modulus() <= abs
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_deviation<S: Scalar>(a: &S, b: &S, floor: f64) -> f64 {
    let diff = (a.clone() - b.clone()).modulus();
    let scale = a.modulus().max(b.modulus()).max(floor);
    diff / scale
}
