//! Coefficient rings.
//!
//! Everything downstream of the diagram layer (polynomials, Frobenius
//! algebras, chain complexes, matrices) is written against [`Ring`] and
//! [`Field`], so the same code runs over `i64`, [`BigInt`], [`BigRational`],
//! [`F2`] and [`Complex64`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    /// True when the element has a multiplicative inverse in the ring.
    fn is_unit(&self) -> bool;
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Ring for i64 {
    fn from_i64(n: i64) -> Self {
        n
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Ring for BigInt {
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Ring for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

impl Field for BigRational {}

impl Ring for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
}

impl Field for Complex64 {}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct F2(bool);

impl F2 {
    pub const ZERO: F2 = F2(false);
    pub const ONE: F2 = F2(true);

    pub fn new(n: i64) -> Self {
        F2(n.rem_euclid(2) == 1)
    }
}

impl fmt::Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Div for F2 {
    type Output = F2;
    fn div(self, rhs: F2) -> F2 {
        assert!(rhs.0, "division by zero in F2");
        self
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

impl AddAssign for F2 {
    fn add_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

impl SubAssign for F2 {
    fn sub_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

impl MulAssign for F2 {
    fn mul_assign(&mut self, rhs: F2) {
        self.0 &= rhs.0;
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2::ONE
    }
}

impl Ring for F2 {
    fn from_i64(n: i64) -> Self {
        F2::new(n)
    }
    fn is_unit(&self) -> bool {
        self.0
    }
}

impl Field for F2 {}

/// Coefficient selection for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Z2")]
    F2,
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Coefficients::Integers => "Z",
            Coefficients::Rationals => "Q",
            Coefficients::F2 => "Z2",
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `(-1)^n` as a ring element.
pub fn sign_pow<R: Ring>(n: usize) -> R {
    if n % 2 == 0 {
        R::one()
    } else {
        -R::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::ONE + F2::ONE, F2::ZERO);
        assert_eq!(F2::new(-3), F2::ONE);
        assert_eq!(-F2::ONE, F2::ONE);
        assert_eq!(F2::ONE * F2::ZERO, F2::ZERO);
        assert!(F2::ONE.is_unit());
        assert!(!F2::ZERO.is_unit());
    }

    #[test]
    fn units() {
        assert!((-1i64).is_unit());
        assert!(!2i64.is_unit());
        assert!(BigInt::from(-1).is_unit());
        assert!(!BigInt::from(0).is_unit());
        assert!(BigRational::from_i64(2).is_unit());
        assert_eq!(sign_pow::<i64>(3), -1);
        assert_eq!(sign_pow::<i64>(4), 1);
    }
}
