use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field: the rationals or a prime field `F_p`.
///
/// The characteristic is a runtime tag so one build can sweep over primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `F_p`, rejecting composite or oversized `p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldScalar {
        match *self {
            Field::Rational => FieldScalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldScalar::Mod {
                value: reduce_i64(n, p),
                p,
            },
        }
    }

    /// Rational `num/den` (reduced mod p in positive characteristic).
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldScalar> {
        let d = self.from_i64(den);
        self.from_i64(num).checked_div(&d)
    }

    pub fn check(&self, other: Field) -> Result<()> {
        if *self == other {
            Ok(())
        } else {
            Err(Error::MixedCharacteristic {
                left: *self,
                right: other,
            })
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub(crate) fn reduce_i64(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid on i64
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i64) as u32)
}

/// An element of `F_p` (canonical residue) or `Q` (lowest terms).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Mod { value: u32, p: u32 },
    Rat(BigRational),
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Mod { p, .. } => Field::Prime(*p),
            FieldScalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Mod { value, .. } => *value == 0,
            FieldScalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Mod { value, .. } => *value == 1,
            FieldScalar::Rat(r) => r.is_one(),
        }
    }

    /// Integer value, when the scalar is one (always for `F_p`, as the residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldScalar::Mod { value, .. } => Some(*value as i64),
            FieldScalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            FieldScalar::Rat(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FieldScalar::Mod { value, .. } => *value as f64,
            FieldScalar::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn binary(
        &self,
        other: &FieldScalar,
        modop: impl Fn(u64, u64, u64) -> u64,
        ratop: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<FieldScalar> {
        match (self, other) {
            (FieldScalar::Mod { value: a, p }, FieldScalar::Mod { value: b, p: q }) if p == q => {
                Ok(FieldScalar::Mod {
                    value: modop(*a as u64, *b as u64, *p as u64) as u32,
                    p: *p,
                })
            }
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => Ok(FieldScalar::Rat(ratop(a, b))),
            _ => Err(Error::MixedCharacteristic {
                left: self.field(),
                right: other.field(),
            }),
        }
    }

    pub fn checked_add(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, |a, b, p| (a + b) % p, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, |a, b, p| (a + p - b) % p, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &FieldScalar) -> Result<FieldScalar> {
        self.binary(other, |a, b, p| (a * b) % p, |a, b| a * b)
    }

    pub fn checked_div(&self, other: &FieldScalar) -> Result<FieldScalar> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        match self {
            FieldScalar::Mod { value, p } => inv_mod(*value, *p)
                .map(|value| FieldScalar::Mod { value, p: *p })
                .ok_or(Error::DivisionByZero),
            FieldScalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            FieldScalar::Rat(r) => Ok(FieldScalar::Rat(r.recip())),
        }
    }

    pub fn pow(&self, mut e: u64) -> FieldScalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Mod { value, .. } => write!(f, "{value}"),
            FieldScalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            FieldScalar::Rat(r) => {
                if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

// Operator forms panic on mixed characteristic; use the `checked_*` methods
// on untrusted input.
macro_rules! scalar_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                self.$checked(rhs).expect("mixed characteristic")
            }
        }
        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                self.$checked(&rhs).expect("mixed characteristic")
            }
        }
    };
}

scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Mod { value, p } => FieldScalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
            FieldScalar::Rat(r) => FieldScalar::Rat(-r),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

/// Element arithmetic behind the dense kernels. One implementation per
/// storage layout, so the elimination loops are monomorphized.
pub(crate) trait Arith {
    type E: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> FieldScalar;
    fn from_scalar(&self, a: &FieldScalar) -> Self::E;
    /// `a -= f * b`, the hot loop of elimination.
    fn axpy_neg(&self, a: &mut [Self::E], f: &Self::E, b: &[Self::E]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = self.sub(x, &self.mul(f, y));
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeArith(pub u32);

impl Arith for PrimeArith {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.0
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.0 as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.0 as u64 - *b as u64) % self.0 as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.0 - *a) % self.0
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.0).expect("inverse of zero")
    }
    fn from_i64(&self, n: i64) -> u32 {
        reduce_i64(n, self.0)
    }
    fn to_scalar(&self, a: &u32) -> FieldScalar {
        FieldScalar::Mod {
            value: *a,
            p: self.0,
        }
    }
    fn from_scalar(&self, a: &FieldScalar) -> u32 {
        match a {
            FieldScalar::Mod { value, .. } => *value,
            FieldScalar::Rat(_) => unreachable!("field checked by caller"),
        }
    }
    fn axpy_neg(&self, a: &mut [u32], f: &u32, b: &[u32]) {
        if *f == 0 {
            return;
        }
        let p = self.0 as u64;
        let g = p - *f as u64;
        for (x, y) in a.iter_mut().zip(b) {
            *x = ((*x as u64 + g * *y as u64) % p) as u32;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rat(a.clone())
    }
    fn from_scalar(&self, a: &FieldScalar) -> BigRational {
        match a {
            FieldScalar::Rat(r) => r.clone(),
            FieldScalar::Mod { .. } => unreachable!("field checked by caller"),
        }
    }
    fn axpy_neg(&self, a: &mut [BigRational], f: &BigRational, b: &[BigRational]) {
        if f.is_zero() {
            return;
        }
        for (x, y) in a.iter_mut().zip(b) {
            if !y.is_zero() {
                *x -= f * y;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::prime(13), Ok(Field::Prime(13)));
    }

    #[test]
    fn mixed_characteristic_is_rejected() {
        let a = Field::Prime(5).one();
        let b = Field::Prime(7).one();
        let q = Field::Rational.one();
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::MixedCharacteristic { .. })
        ));
        assert!(a.checked_mul(&q).is_err());
    }

    #[test]
    fn inverses_and_negatives() {
        for p in [2u32, 5, 13] {
            let f = Field::Prime(p);
            for n in 1..p as i64 {
                let a = f.from_i64(n);
                assert!((&a * &a.inv().unwrap()).is_one());
                assert!((&a + &(-&a)).is_zero());
            }
            assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        }
        let q = Field::Rational;
        let a = q.from_ratio(-3, 7).unwrap();
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(a.to_string(), "-3/7");
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = Field::Prime(7);
        for n in 0..7 {
            assert_eq!(f.from_i64(n).pow(7), f.from_i64(n));
        }
    }
}
