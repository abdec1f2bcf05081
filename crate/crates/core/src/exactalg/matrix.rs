use std::fmt;

use num_rational::BigRational;

use super::scalar::{Arith, Field, FieldScalar, PrimeArith, RatArith};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Storage {
    Mod(u32, Vec<u32>),
    Rat(Vec<BigRational>),
}

/// Runs `$body` with `$ar` bound to the arithmetic and `$data` to the entries.
macro_rules! with_arith {
    ($storage:expr, |$ar:ident, $data:ident| $body:expr) => {
        match $storage {
            Storage::Mod(p, $data) => {
                let $ar = PrimeArith(*p);
                $body
            }
            Storage::Rat($data) => {
                let $ar = RatArith;
                $body
            }
        }
    };
}


pub(crate) trait Wrap: Arith {
    fn wrap(&self, data: Vec<Self::E>) -> Storage;
}

impl Wrap for PrimeArith {
    fn wrap(&self, data: Vec<u32>) -> Storage {
        Storage::Mod(self.0, data)
    }
}

impl Wrap for RatArith {
    fn wrap(&self, data: Vec<BigRational>) -> Storage {
        Storage::Rat(data)
    }
}

/// Dense row-major matrix over `F_p` or `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    pub(crate) data: Storage,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix<{}>{}x{} ", self.field(), self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let data = match field {
            Field::Prime(p) => Storage::Mod(p, vec![0; rows * cols]),
            Field::Rational => Storage::Rat(vec![RatArith.zero(); rows * cols]),
        };
        DenseMatrix { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set_i64(i, i, 1);
        }
        m
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = match field {
            Field::Prime(p) => {
                let ar = PrimeArith(p);
                ar.wrap(entries.iter().map(|&n| ar.from_i64(n)).collect())
            }
            Field::Rational => {
                RatArith.wrap(entries.iter().map(|&n| RatArith.from_i64(n)).collect())
            }
        };
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds a matrix from scalars, rejecting mixed characteristics.
    pub fn from_scalars(
        field: Field,
        rows: usize,
        cols: usize,
        entries: &[FieldScalar],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in entries {
            field.check(e.field())?;
        }
        let mut m = Self::zeros(field, rows, cols);
        with_arith!(&mut m.data, |ar, data| {
            for (slot, e) in data.iter_mut().zip(entries) {
                *slot = ar.from_scalar(e);
            }
        });
        Ok(m)
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<FieldScalar>]) -> Result<Self> {
        let mut flat = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} != {cols}", r.len())));
            }
            flat.extend(r.iter().cloned());
        }
        Self::from_scalars(field, rows.len(), cols, &flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Storage::Mod(p, _) => Field::Prime(*p),
            Storage::Rat(_) => Field::Rational,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> FieldScalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let k = i * self.cols + j;
        with_arith!(&self.data, |ar, data| ar.to_scalar(&data[k]))
    }

    pub fn set(&mut self, i: usize, j: usize, value: &FieldScalar) -> Result<()> {
        self.field().check(value.field())?;
        let k = i * self.cols + j;
        with_arith!(&mut self.data, |ar, data| data[k] = ar.from_scalar(value));
        Ok(())
    }

    pub fn set_i64(&mut self, i: usize, j: usize, value: i64) {
        let k = i * self.cols + j;
        with_arith!(&mut self.data, |ar, data| data[k] = ar.from_i64(value));
    }

    pub fn row(&self, i: usize) -> Vec<FieldScalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries in row-major order.
    pub fn to_vec(&self) -> Vec<FieldScalar> {
        with_arith!(&self.data, |ar, data| data
            .iter()
            .map(|x| ar.to_scalar(x))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        with_arith!(&self.data, |ar, data| data.iter().all(|x| ar.is_zero(x)))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field(), self.rows)
    }

    fn same_field(&self, other: &DenseMatrix) -> Result<()> {
        self.field().check(other.field())
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.elementwise(other, false)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.elementwise(other, true)
    }

    fn elementwise(&self, other: &DenseMatrix, subtract: bool) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = match (&self.data, &other.data) {
            (Storage::Mod(p, a), Storage::Mod(_, b)) => {
                let ar = PrimeArith(*p);
                ar.wrap(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| if subtract { ar.sub(x, y) } else { ar.add(x, y) })
                        .collect(),
                )
            }
            (Storage::Rat(a), Storage::Rat(b)) => RatArith.wrap(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if subtract { x - y } else { x + y })
                    .collect(),
            ),
            _ => unreachable!(),
        };
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Storage::Mod(p, a), Storage::Mod(_, b)) => {
                let p64 = *p as u64;
                let mut out = vec![0u32; n * m];
                let mut acc = vec![0u64; m];
                for i in 0..n {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for l in 0..k {
                        let x = a[i * k + l] as u64;
                        if x == 0 {
                            continue;
                        }
                        for (j, y) in b[l * m..(l + 1) * m].iter().enumerate() {
                            acc[j] = (acc[j] + x * *y as u64) % p64;
                        }
                    }
                    for j in 0..m {
                        out[i * m + j] = acc[j] as u32;
                    }
                }
                Storage::Mod(*p, out)
            }
            (Storage::Rat(a), Storage::Rat(b)) => {
                let mut out = vec![RatArith.zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if num_traits::Zero::is_zero(x) {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[l * m + j];
                            if !num_traits::Zero::is_zero(y) {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Storage::Rat(out)
            }
            _ => unreachable!(),
        };
        Ok(DenseMatrix {
            rows: n,
            cols: m,
            data,
        })
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<DenseMatrix> {
        self.field().check(c.field())?;
        let mut out = self.clone();
        with_arith!(&mut out.data, |ar, data| {
            let c = ar.from_scalar(c);
            data.iter_mut().for_each(|x| *x = ar.mul(&c, x));
        });
        Ok(out)
    }

    pub fn neg(&self) -> DenseMatrix {
        let mut out = self.clone();
        with_arith!(&mut out.data, |ar, data| data
            .iter_mut()
            .for_each(|x| *x = ar.neg(x)));
        out
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, &self.get(i, j)).expect("same field");
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = DenseMatrix::identity(self.field(), self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Commutator `AB - BA`.
    pub fn commutator(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        let col = DenseMatrix::from_scalars(self.field(), v.len(), 1, v)?;
        Ok(self.mul(&col)?.to_vec())
    }

    /// Stacks matrices with equal column count on top of each other.
    pub fn vstack(field: Field, cols: usize, blocks: &[&DenseMatrix]) -> Result<DenseMatrix> {
        let mut out = DenseMatrix::zeros(field, 0, cols);
        for b in blocks {
            field.check(b.field())?;
            if b.cols != cols {
                return Err(Error::Shape("vstack column mismatch".into()));
            }
            match (&mut out.data, &b.data) {
                (Storage::Mod(_, a), Storage::Mod(_, x)) => a.extend_from_slice(x),
                (Storage::Rat(a), Storage::Rat(x)) => a.extend_from_slice(x),
                _ => unreachable!(),
            }
            out.rows += b.rows;
        }
        Ok(out)
    }

    /// Reduced row-echelon form and its pivot columns. The pivot in each
    /// column is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut out = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let pivots = with_arith!(&mut out.data, |ar, data| rref_in_place(&ar, data, rows, cols));
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : Mv = 0}` in canonical form.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let field = self.field();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); n];
            v[free] = field.one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(k, free);
            }
            vectors.push(v);
        }
        Subspace::from_vectors(field, n, &vectors).expect("same field")
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    pub fn determinant(&self) -> Result<FieldScalar> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        Ok(with_arith!(&mut m.data, |ar, data| {
            let mut det = ar.one();
            let mut ok = true;
            for c in 0..n {
                let Some(pr) = (c..n).find(|&r| !ar.is_zero(&data[r * n + c])) else {
                    ok = false;
                    break;
                };
                if pr != c {
                    for j in 0..n {
                        data.swap(pr * n + j, c * n + j);
                    }
                    det = ar.neg(&det);
                }
                let piv = data[c * n + c].clone();
                det = ar.mul(&det, &piv);
                let inv = ar.inv(&piv);
                let pivot_row: Vec<_> = data[c * n..(c + 1) * n].to_vec();
                for r in c + 1..n {
                    let f = ar.mul(&data[r * n + c], &inv);
                    if !ar.is_zero(&f) {
                        ar.axpy_neg(&mut data[r * n..(r + 1) * n], &f, &pivot_row);
                    }
                }
            }
            if ok {
                ar.to_scalar(&det)
            } else {
                ar.to_scalar(&ar.zero())
            }
        }))
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let field = self.field();
        let mut aug = DenseMatrix::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, &self.get(i, j))?;
            }
            aug.set_i64(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        let mut out = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, &r.get(i, n + j))?;
            }
        }
        Ok(out)
    }

    /// Smallest `k ≥ 1` with `M^k = 0`, if `M` is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=self.rows.max(1) {
            if acc.is_zero() {
                return Some(k);
            }
            acc = acc.mul(self).ok()?;
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }
}

/// In-place reduced row echelon form; returns pivot columns.
pub(crate) fn rref_in_place<A: Arith>(
    ar: &A,
    data: &mut [A::E],
    rows: usize,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&data[r * cols + c]);
        for j in c..cols {
            data[r * cols + j] = ar.mul(&data[r * cols + j], &inv);
        }
        let pivot_row: Vec<A::E> = data[r * cols + c..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c].clone();
            if !ar.is_zero(&f) {
                ar.axpy_neg(&mut data[i * cols + c..(i + 1) * cols], &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
