//! Dual numbers `K[ε]/(ε²)` and matrices over them.
//!
//! A point over `K[ε]` lying over a `K`-point `x` is `x + εv`; the ε-part `v`
//! is a tangent vector at `x`.

use std::ops::{Add, Mul, Neg, Sub};

use super::matrix::DenseMatrix;
use super::scalar::{Field, FieldScalar};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualScalar {
    pub a: FieldScalar,
    pub b: FieldScalar,
}

impl DualScalar {
    pub fn new(a: FieldScalar, b: FieldScalar) -> Result<Self> {
        a.field().check(b.field())?;
        Ok(DualScalar { a, b })
    }

    pub fn constant(a: FieldScalar) -> Self {
        let b = a.field().zero();
        DualScalar { a, b }
    }

    pub fn epsilon(field: Field) -> Self {
        DualScalar {
            a: field.zero(),
            b: field.one(),
        }
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn checked_mul(&self, other: &DualScalar) -> Result<DualScalar> {
        let a = self.a.checked_mul(&other.a)?;
        let b = self
            .a
            .checked_mul(&other.b)?
            .checked_add(&self.b.checked_mul(&other.a)?)?;
        Ok(DualScalar { a, b })
    }

    pub fn checked_add(&self, other: &DualScalar) -> Result<DualScalar> {
        Ok(DualScalar {
            a: self.a.checked_add(&other.a)?,
            b: self.b.checked_add(&other.b)?,
        })
    }

    pub fn pow(&self, mut e: u64) -> DualScalar {
        let mut base = self.clone();
        let mut acc = DualScalar::constant(self.field().one());
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

impl Add for &DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: &DualScalar) -> DualScalar {
        self.checked_add(rhs).expect("mixed characteristic")
    }
}

impl Sub for &DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: &DualScalar) -> DualScalar {
        DualScalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: &DualScalar) -> DualScalar {
        self.checked_mul(rhs).expect("mixed characteristic")
    }
}

impl Neg for &DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

/// Matrix `A + εB` over the dual numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMatrix {
    pub value: DenseMatrix,
    pub eps: DenseMatrix,
}

impl DualMatrix {
    pub fn new(value: DenseMatrix, eps: DenseMatrix) -> Result<Self> {
        value.field().check(eps.field())?;
        if value.rows() != eps.rows() || value.cols() != eps.cols() {
            return Err(crate::Error::Shape("value and ε parts differ in shape".into()));
        }
        Ok(DualMatrix { value, eps })
    }

    pub fn constant(value: DenseMatrix) -> Self {
        let eps = DenseMatrix::zeros(value.field(), value.rows(), value.cols());
        DualMatrix { value, eps }
    }

    /// `εM`.
    pub fn infinitesimal(m: DenseMatrix) -> Self {
        let value = DenseMatrix::zeros(m.field(), m.rows(), m.cols());
        DualMatrix { value, eps: m }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::constant(DenseMatrix::identity(field, n))
    }

    pub fn add(&self, other: &DualMatrix) -> Result<DualMatrix> {
        Ok(DualMatrix {
            value: self.value.add(&other.value)?,
            eps: self.eps.add(&other.eps)?,
        })
    }

    pub fn sub(&self, other: &DualMatrix) -> Result<DualMatrix> {
        Ok(DualMatrix {
            value: self.value.sub(&other.value)?,
            eps: self.eps.sub(&other.eps)?,
        })
    }

    /// `(A + εB)(C + εD) = AC + ε(AD + BC)`.
    pub fn mul(&self, other: &DualMatrix) -> Result<DualMatrix> {
        let value = self.value.mul(&other.value)?;
        let eps = self.value.mul(&other.eps)?.add(&self.eps.mul(&other.value)?)?;
        Ok(DualMatrix { value, eps })
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<DualMatrix> {
        Ok(DualMatrix {
            value: self.value.scale(c)?,
            eps: self.eps.scale(c)?,
        })
    }

    pub fn pow(&self, k: u32) -> Result<DualMatrix> {
        let mut acc = DualMatrix::identity(self.value.field(), self.value.rows());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}
