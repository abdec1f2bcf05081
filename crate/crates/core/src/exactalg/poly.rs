//! Multivariate polynomials over `F_p` or `Q` with named variables, used to
//! evaluate group families at a generic point.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::dual::DualScalar;
use super::matrix::DenseMatrix;
use super::scalar::{Field, FieldScalar};
use crate::error::{Error, Result};

/// Coefficient field plus an ordered list of variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(field: Field, names: &[S]) -> Self {
        PolyRing {
            field,
            vars: names.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn zero(&self) -> GenericPoly {
        GenericPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: FieldScalar) -> Result<GenericPoly> {
        self.field.check(c.field())?;
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.insert(vec![0; self.vars.len()], c);
        }
        Ok(p)
    }

    pub fn from_i64(&self, n: i64) -> GenericPoly {
        self.constant(self.field.from_i64(n)).expect("same field")
    }

    pub fn var(&self, name: &str) -> Result<GenericPoly> {
        let i = self.index_of(name)?;
        Ok(self.var_at(i))
    }

    pub fn var_at(&self, i: usize) -> GenericPoly {
        let mut exp = vec![0; self.vars.len()];
        exp[i] = 1;
        let mut p = self.zero();
        p.terms.insert(exp, self.field.one());
        p
    }
}

/// Polynomial as a map from dense exponent tuples to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPoly {
    ring: PolyRing,
    terms: BTreeMap<Vec<u32>, FieldScalar>,
}

impl GenericPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldScalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// The constant coefficient, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<FieldScalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_ring(&self, other: &GenericPoly) -> Result<()> {
        self.ring.field.check(other.ring.field)?;
        if self.ring.vars != other.ring.vars {
            return Err(Error::Shape("polynomials from different rings".into()));
        }
        Ok(())
    }

    fn insert_term(&mut self, exp: Vec<u32>, c: FieldScalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &GenericPoly) -> Result<GenericPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> GenericPoly {
        GenericPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GenericPoly) -> Result<GenericPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GenericPoly) -> Result<GenericPoly> {
        self.check_ring(other)?;
        let mut out = self.ring.zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<GenericPoly> {
        self.ring.field.check(c.field())?;
        let mut out = self.ring.zero();
        if c.is_zero() {
            return Ok(out);
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), x * c);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> GenericPoly {
        let mut acc = self.ring.from_i64(1);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Re-expresses the polynomial in a ring whose variable list extends this
    /// one's.
    pub fn lift(&self, ring: &PolyRing) -> Result<GenericPoly> {
        self.ring.field.check(ring.field)?;
        let k = self.ring.vars.len();
        if ring.vars.len() < k || ring.vars[..k] != self.ring.vars[..] {
            return Err(Error::Shape("target ring does not extend the source ring".into()));
        }
        let pad = ring.vars.len() - k;
        Ok(GenericPoly {
            ring: ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.extend(std::iter::repeat_n(0, pad));
                    (e, c.clone())
                })
                .collect(),
        })
    }

    pub fn eval(&self, point: &[FieldScalar]) -> Result<FieldScalar> {
        if point.len() != self.ring.vars.len() {
            return Err(Error::Shape("evaluation point has wrong arity".into()));
        }
        let mut acc = self.ring.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.checked_mul(&x.pow(k as u64))?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Evaluation at a point over the dual numbers.
    pub fn eval_dual(&self, point: &[DualScalar]) -> Result<DualScalar> {
        if point.len() != self.ring.vars.len() {
            return Err(Error::Shape("evaluation point has wrong arity".into()));
        }
        let mut acc = DualScalar::constant(self.ring.field.zero());
        for (e, c) in &self.terms {
            let mut t = DualScalar::constant(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.checked_mul(&x.pow(k as u64))?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for GenericPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            self.ring.vars[i].clone()
                        } else {
                            format!("{}^{k}", self.ring.vars[i])
                        }
                    })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Square or rectangular matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<GenericPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GenericPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape("polynomial matrix entry count".into()));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn constant(ring: &PolyRing, m: &DenseMatrix) -> Result<Self> {
        let entries = m
            .to_vec()
            .into_iter()
            .map(|c| ring.constant(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m.rows(), m.cols(), entries)
    }

    pub fn get(&self, i: usize, j: usize) -> &GenericPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("polynomial matrix product".into()));
        }
        let ring = self.entries.first().map(|p| p.ring.clone());
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = match &ring {
                    Some(r) => r.zero(),
                    None => other.get(0, 0).ring.zero(),
                };
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, other.cols, entries)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("polynomial matrix difference".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn lift(&self, ring: &PolyRing) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.lift(ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn eval(&self, point: &[FieldScalar]) -> Result<DenseMatrix> {
        let field = self
            .entries
            .first()
            .map(|p| p.ring.field)
            .unwrap_or(Field::Rational);
        let vals = self
            .entries
            .iter()
            .map(|p| p.eval(point))
            .collect::<Result<Vec<_>>>()?;
        DenseMatrix::from_scalars(field, self.rows, self.cols, &vals)
    }

    /// Evaluates at a dual point, returning the value and ε-parts.
    pub fn eval_dual(&self, point: &[DualScalar]) -> Result<super::dual::DualMatrix> {
        let field = self
            .entries
            .first()
            .map(|p| p.ring.field)
            .unwrap_or(Field::Rational);
        let mut a = Vec::with_capacity(self.entries.len());
        let mut b = Vec::with_capacity(self.entries.len());
        for p in &self.entries {
            let d = p.eval_dual(point)?;
            a.push(d.a);
            b.push(d.b);
        }
        super::dual::DualMatrix::new(
            DenseMatrix::from_scalars(field, self.rows, self.cols, &a)?,
            DenseMatrix::from_scalars(field, self.rows, self.cols, &b)?,
        )
    }
}

/// Coefficient matrix of a family of constraints `poly = 0` that are linear
/// in `unknowns`, with every other variable treated as a formal parameter.
///
/// Each (constraint, parameter monomial) pair contributes one row, holding
/// the coefficients of the unknowns in that monomial. The nullspace is the
/// set of unknown values satisfying every constraint identically in the
/// parameters.
pub fn generic_linear_extract(conditions: &[GenericPoly], unknowns: &[&str]) -> Result<DenseMatrix> {
    let Some(first) = conditions.first() else {
        return Ok(DenseMatrix::zeros(Field::Rational, 0, unknowns.len()));
    };
    let ring = first.ring.clone();
    let field = ring.field;
    let slots = unknowns
        .iter()
        .map(|u| ring.index_of(u))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: BTreeMap<(usize, Vec<u32>), Vec<FieldScalar>> = BTreeMap::new();
    for (idx, poly) in conditions.iter().enumerate() {
        first.check_ring(poly)?;
        for (exp, c) in &poly.terms {
            let degree: u32 = slots.iter().map(|&s| exp[s]).sum();
            let hit = slots.iter().position(|&s| exp[s] > 0);
            match (degree, hit) {
                (0, _) => return Err(Error::InhomogeneousConstraint { index: idx }),
                (1, Some(j)) => {
                    let mut key = exp.clone();
                    key[slots[j]] = 0;
                    let row = rows
                        .entry((idx, key))
                        .or_insert_with(|| vec![field.zero(); unknowns.len()]);
                    row[j] = &row[j] + c;
                }
                (_, hit) => {
                    return Err(Error::NonlinearConstraint {
                        index: idx,
                        unknown: unknowns[hit.unwrap_or(0)].to_string(),
                    })
                }
            }
        }
    }
    let rows: Vec<Vec<FieldScalar>> = rows.into_values().collect();
    DenseMatrix::from_rows(field, unknowns.len(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_times_unknown_forces_zero() {
        let ring = PolyRing::new(Field::Prime(5), &["t", "y1"]);
        let c = ring.var("t").unwrap().mul(&ring.var("y1").unwrap()).unwrap();
        let m = generic_linear_extract(&[c], &["y1"]).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.get(0, 0), Field::Prime(5).one());
        assert_eq!(m.nullspace().dim(), 0);
    }

    #[test]
    fn trivial_constraint_gives_no_rows() {
        let ring = PolyRing::new(Field::Rational, &["t", "y"]);
        let m = generic_linear_extract(&[ring.zero()], &["y"]).unwrap();
        assert_eq!(m.rows(), 0);
        assert_eq!(m.nullspace().dim(), 1);
    }

    #[test]
    fn nonlinear_constraint_is_identified() {
        let ring = PolyRing::new(Field::Rational, &["t", "y"]);
        let y = ring.var("y").unwrap();
        let ok = ring.var("t").unwrap().mul(&y).unwrap();
        let bad = y.mul(&y).unwrap();
        assert_eq!(
            generic_linear_extract(&[ok, bad], &["y"]),
            Err(Error::NonlinearConstraint {
                index: 1,
                unknown: "y".into()
            })
        );
    }

    #[test]
    fn inhomogeneous_constraint_is_rejected() {
        let ring = PolyRing::new(Field::Rational, &["t", "y"]);
        let c = ring.var("y").unwrap().add(&ring.var("t").unwrap()).unwrap();
        assert_eq!(
            generic_linear_extract(&[c], &["y"]),
            Err(Error::InhomogeneousConstraint { index: 0 })
        );
    }

    #[test]
    fn coefficients_collect_per_parameter_monomial() {
        // (t^2 - 1) y1 + t y2 = 0 identically  =>  y1 = y2 = 0
        let ring = PolyRing::new(Field::Prime(7), &["t", "y1", "y2"]);
        let t = ring.var("t").unwrap();
        let c = t
            .pow(2)
            .sub(&ring.from_i64(1))
            .unwrap()
            .mul(&ring.var("y1").unwrap())
            .unwrap()
            .add(&t.mul(&ring.var("y2").unwrap()).unwrap())
            .unwrap();
        let m = generic_linear_extract(&[c], &["y1", "y2"]).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.nullspace().dim(), 0);
    }

    #[test]
    fn display_is_readable() {
        let ring = PolyRing::new(Field::Rational, &["t", "s"]);
        let p = ring.var("t").unwrap().pow(2).add(&ring.from_i64(3)).unwrap();
        assert_eq!(p.to_string(), "3 + t^2");
    }
}
