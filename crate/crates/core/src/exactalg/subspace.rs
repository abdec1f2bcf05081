use super::matrix::DenseMatrix;
use super::scalar::{Field, FieldScalar};
use crate::error::{Error, Result};

/// A linear subspace of `K^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two subspaces are equal iff their canonical bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DenseMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DenseMatrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn whole(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: DenseMatrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &DenseMatrix) -> Self {
        let (r, pivots) = m.rref();
        let field = m.field();
        let n = m.cols();
        let mut basis = DenseMatrix::zeros(field, pivots.len(), n);
        for i in 0..pivots.len() {
            for j in 0..n {
                basis.set(i, j, &r.get(i, j)).expect("same field");
            }
        }
        Subspace {
            ambient_dim: n,
            basis,
            pivots,
        }
    }

    pub fn from_vectors(field: Field, ambient_dim: usize, vectors: &[Vec<FieldScalar>]) -> Result<Self> {
        let m = DenseMatrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical basis, one row per basis vector.
    pub fn basis_matrix(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldScalar>> {
        self.basis.row_vectors()
    }

    fn check_vector(&self, v: &[FieldScalar]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        for x in v {
            self.field().check(x.field())?;
        }
        Ok(())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[FieldScalar]) -> Result<Option<Vec<FieldScalar>>> {
        self.check_vector(v)?;
        let coeffs: Vec<FieldScalar> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residual = v.to_vec();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in residual.iter_mut().enumerate() {
                let b = self.basis.get(k, j);
                if !b.is_zero() {
                    *slot = &*slot - &(c * &b);
                }
            }
        }
        Ok(residual.iter().all(|x| x.is_zero()).then_some(coeffs))
    }

    pub fn contains(&self, v: &[FieldScalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.field().check(other.field())?;
        let stacked = DenseMatrix::vstack(
            self.field(),
            self.ambient_dim,
            &[&self.basis, &other.basis],
        )?;
        Ok(Subspace::from_matrix(&stacked))
    }

    /// Rows `C` with `ker C = self`: for every non-pivot column `c`,
    /// `v[c] - Σ_k v[pivot_k] b_k[c] = 0`.
    pub fn membership_conditions(&self) -> DenseMatrix {
        let field = self.field();
        let n = self.ambient_dim;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = DenseMatrix::zeros(field, free.len(), n);
        for (row, &c) in free.iter().enumerate() {
            out.set_i64(row, c, 1);
            for (k, &pc) in self.pivots.iter().enumerate() {
                let b = self.basis.get(k, c);
                if !b.is_zero() {
                    out.set(row, pc, &-b).expect("same field");
                }
            }
        }
        out
    }

    /// `{v ∈ self : M v = 0}`.
    pub fn kernel_within(&self, map: &DenseMatrix) -> Result<Subspace> {
        self.field().check(map.field())?;
        if map.cols() != self.ambient_dim {
            return Err(Error::Shape("map does not act on the ambient space".into()));
        }
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        // M restricted to the span: columns are M b_k
        let restricted = map.mul(&self.basis.transpose())?;
        let coeffs = restricted.nullspace();
        if coeffs.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient_dim));
        }
        let vectors = coeffs.basis_matrix().mul(&self.basis)?;
        Ok(Subspace::from_matrix(&vectors))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.kernel_within(&other.membership_conditions())
    }

    /// Image of the subspace under `map` (acting on column vectors).
    pub fn image(&self, map: &DenseMatrix) -> Result<Subspace> {
        let imgs = map.mul(&self.basis.transpose())?.transpose();
        Ok(Subspace::from_matrix(&imgs))
    }
}

/// Common kernel of a family of maps, intersected one at a time so the
/// working subspace shrinks as early as possible.
pub fn common_kernel<I>(field: Field, ambient_dim: usize, maps: I) -> Result<Subspace>
where
    I: IntoIterator<Item = DenseMatrix>,
{
    let mut k = Subspace::whole(field, ambient_dim);
    for m in maps {
        if k.dim() == 0 {
            break;
        }
        k = k.kernel_within(&m)?;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vec<FieldScalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let f = Field::Prime(7);
        let a = Subspace::from_vectors(f, 3, &[v(f, &[1, 2, 3]), v(f, &[0, 1, 1])]).unwrap();
        let b = Subspace::from_vectors(f, 3, &[v(f, &[1, 3, 4]), v(f, &[2, 4, 6])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn membership_conditions_cut_out_the_subspace() {
        let q = Field::Rational;
        let s = Subspace::from_vectors(q, 4, &[v(q, &[1, 0, 2, 0]), v(q, &[0, 1, -1, 3])]).unwrap();
        let c = s.membership_conditions();
        assert_eq!(c.nullspace(), s);
    }

    #[test]
    fn intersection_and_sum_dimensions() {
        let q = Field::Rational;
        let a = Subspace::from_vectors(q, 3, &[v(q, &[1, 0, 0]), v(q, &[0, 1, 0])]).unwrap();
        let b = Subspace::from_vectors(q, 3, &[v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i, Subspace::from_vectors(q, 3, &[v(q, &[0, 1, 0])]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Subspace::whole(q, 3));
    }

    #[test]
    fn coordinates_reconstruct() {
        let f = Field::Prime(5);
        let s = Subspace::from_vectors(f, 3, &[v(f, &[1, 1, 0]), v(f, &[0, 1, 1])]).unwrap();
        let x = v(f, &[2, 3, 1]);
        let c = s.coordinates(&x).unwrap().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(s.coordinates(&v(f, &[1, 0, 0])).unwrap(), None);
    }
}
