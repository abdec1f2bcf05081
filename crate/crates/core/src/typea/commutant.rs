use serde::Serialize;

use super::family::{lie_center_generic, GroupFamily};
use super::jordan::{jordan_nilpotent, jordan_type_of_nilpotent, JordanType};
use crate::error::{Error, Result};
use crate::exactalg::{common_kernel, DenseMatrix, Field, FieldScalar, Subspace};

/// Row-major coordinates of a matrix in `K^{n²}`.
pub(crate) fn flatten(m: &DenseMatrix) -> Vec<FieldScalar> {
    m.to_vec()
}

pub(crate) fn unflatten(field: Field, n: usize, v: &[FieldScalar]) -> DenseMatrix {
    DenseMatrix::from_scalars(field, n, n, v).expect("n² coordinates")
}

/// Span of a set of `n × n` matrices as a subspace of `K^{n²}`.
pub fn matrix_span(field: Field, n: usize, mats: &[DenseMatrix]) -> Result<Subspace> {
    let rows: Vec<Vec<FieldScalar>> = mats.iter().map(flatten).collect();
    Subspace::from_vectors(field, n * n, &rows)
}

pub fn subspace_matrices(s: &Subspace, n: usize) -> Vec<DenseMatrix> {
    s.basis_vectors()
        .iter()
        .map(|v| unflatten(s.field(), n, v))
        .collect()
}

/// Matrix of `M ↦ MB − BM` on row-major coordinates.
fn commutator_map(b: &DenseMatrix) -> DenseMatrix {
    let n = b.rows();
    let field = b.field();
    let mut l = DenseMatrix::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // (MB)_{ij} = Σ_k M_{ik} B_{kj}
                let c = b.get(k, j);
                if !c.is_zero() {
                    let col = i * n + k;
                    l.set(row, col, &(&l.get(row, col) + &c)).expect("same field");
                }
                // (BM)_{ij} = Σ_k B_{ik} M_{kj}
                let c = b.get(i, k);
                if !c.is_zero() {
                    let col = k * n + j;
                    l.set(row, col, &(&l.get(row, col) - &c)).expect("same field");
                }
            }
        }
    }
    l
}

/// `{M : MB = BM for every B in mats}` as a subspace of `K^{n²}`.
pub fn commuting_space(field: Field, n: usize, mats: &[DenseMatrix]) -> Result<Subspace> {
    for b in mats {
        field.check(b.field())?;
        if b.rows() != n || b.cols() != n {
            return Err(Error::Shape(format!("expected {n}×{n} matrices")));
        }
    }
    common_kernel(field, n * n, mats.iter().map(commutator_map))
}

fn require_square(x: &DenseMatrix) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    Ok(x.rows())
}

/// Basis of `{M : MX = XM}`. For nilpotent `X` the dimension is checked
/// against the partition formula.
pub fn commutant(x: &DenseMatrix) -> Result<Vec<DenseMatrix>> {
    let n = require_square(x)?;
    let s = commuting_space(x.field(), n, std::slice::from_ref(x))?;
    if n > 0 && x.is_nilpotent() {
        let jt = jordan_type_of_nilpotent(x)?;
        if jt.commutant_dim() != s.dim() {
            return Err(Error::Consistency(format!(
                "commutant of type {jt} has dim {} but the partition formula gives {}",
                s.dim(),
                jt.commutant_dim()
            )));
        }
    }
    Ok(subspace_matrices(&s, n))
}

/// Basis of the matrices commuting with the whole commutant of `X`.
pub fn bicommutant(x: &DenseMatrix) -> Result<Vec<DenseMatrix>> {
    let n = require_square(x)?;
    let c = commutant(x)?;
    let s = commuting_space(x.field(), n, &c)?;
    Ok(subspace_matrices(&s, n))
}

/// Smallest `d` with `I, X, …, X^d` linearly dependent.
pub fn minimal_polynomial_degree(x: &DenseMatrix) -> Result<usize> {
    let n = require_square(x)?;
    let field = x.field();
    let mut rows = Vec::new();
    let mut pw = DenseMatrix::identity(field, n);
    for d in 0..=n {
        rows.push(flatten(&pw));
        if Subspace::from_vectors(field, n * n, &rows)?.dim() < rows.len() {
            return Ok(d);
        }
        pw = pw.mul(x)?;
    }
    Err(Error::Consistency("powers stayed independent beyond n".into()))
}

/// `span{I, X, …, X^{d−1}}`.
pub fn polynomial_span(x: &DenseMatrix, d: usize) -> Result<Subspace> {
    let n = require_square(x)?;
    let mut mats = Vec::with_capacity(d);
    let mut pw = DenseMatrix::identity(x.field(), n);
    for _ in 0..d {
        mats.push(pw.clone());
        pw = pw.mul(x)?;
    }
    matrix_span(x.field(), n, &mats)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantReport {
    pub partition: JordanType,
    pub field: String,
    pub dim_commutant: usize,
    pub dim_algebra_center: usize,
    pub dim_lie_center_generic: usize,
    pub min_poly_degree: usize,
    pub contains_x: bool,
    pub bicommutant_is_polynomial_span: bool,
    pub smooth_verdict: bool,
}

/// Center of the commutant computed twice: as the bicommutant, and as the
/// fixed points of conjugation by a generic unit of the commutant acting
/// on its Lie algebra.
pub fn commutant_report(jt: &JordanType, field: Field) -> Result<CommutantReport> {
    let x = jordan_nilpotent(jt, field);
    let n = jt.n();
    let com = commutant(&x)?;
    let bic = commuting_space(field, n, &com)?;
    let fam = GroupFamily::commutant_units(&x)?;
    let generic = lie_center_generic(&fam)?;
    let d = minimal_polynomial_degree(&x)?;
    Ok(CommutantReport {
        partition: jt.clone(),
        field: field.to_string(),
        dim_commutant: com.len(),
        dim_algebra_center: bic.dim(),
        dim_lie_center_generic: generic.dim(),
        min_poly_degree: d,
        contains_x: bic.contains(&flatten(&x))?,
        bicommutant_is_polynomial_span: bic == polynomial_span(&x, d)? && bic == generic,
        smooth_verdict: bic.dim() == generic.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jt(parts: &[usize]) -> JordanType {
        JordanType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn commutant_of_zero_is_everything() {
        let z = DenseMatrix::zeros(Field::Rational, 2, 2);
        assert_eq!(commutant(&z).unwrap().len(), 4);
        assert_eq!(bicommutant(&z).unwrap().len(), 1);
    }

    #[test]
    fn regular_commutant_is_polynomial_span() {
        for f in [Field::Rational, Field::Prime(3)] {
            for n in 1..=5 {
                let x = jordan_nilpotent(&JordanType::regular(n).unwrap(), f);
                let c = commutant(&x).unwrap();
                assert_eq!(c.len(), n);
                assert_eq!(matrix_span(f, n, &c).unwrap(), polynomial_span(&x, n).unwrap());
                assert_eq!(bicommutant(&x).unwrap().len(), n);
            }
        }
    }

    #[test]
    fn hook_two_one() {
        let f = Field::Prime(5);
        let x = jordan_nilpotent(&jt(&[2, 1]), f);
        assert_eq!(commutant(&x).unwrap().len(), 5);
        assert_eq!(bicommutant(&x).unwrap().len(), 2);
        assert_eq!(minimal_polynomial_degree(&x).unwrap(), 2);
    }

    #[test]
    fn commutant_elements_commute() {
        let f = Field::Prime(7);
        let x = jordan_nilpotent(&jt(&[3, 2, 2]), f);
        for m in commutant(&x).unwrap() {
            assert!(m.commutator(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn non_nilpotent_commutant() {
        let q = Field::Rational;
        let d = DenseMatrix::from_i64(q, 2, 2, &[1, 0, 0, 2]).unwrap();
        assert_eq!(commutant(&d).unwrap().len(), 2);
        assert_eq!(minimal_polynomial_degree(&d).unwrap(), 2);
    }

    #[test]
    fn report_examples() {
        let r = commutant_report(&jt(&[2, 1]), Field::Prime(7)).unwrap();
        assert_eq!((r.dim_algebra_center, r.dim_lie_center_generic), (2, 2));
        assert!(r.contains_x && r.smooth_verdict && r.bicommutant_is_polynomial_span);

        let r = commutant_report(&jt(&[1, 1, 1]), Field::Rational).unwrap();
        assert_eq!((r.dim_algebra_center, r.dim_lie_center_generic, r.min_poly_degree), (1, 1, 1));
        assert!(r.contains_x);

        let r = commutant_report(&JordanType::regular(4).unwrap(), Field::Prime(5)).unwrap();
        assert_eq!((r.dim_algebra_center, r.dim_lie_center_generic, r.min_poly_degree), (4, 4, 4));
    }
}
