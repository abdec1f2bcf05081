//! Fixtures shared by the criterion benches.

use regnilp_core::{DenseMatrix, Field};

/// Deterministic dense `rows × cols` matrix of rank about `rank`.
pub fn fixture_matrix(field: Field, rows: usize, cols: usize, rank: usize) -> DenseMatrix {
    let left: Vec<i64> = (0..rows * rank).map(|k| ((k * 7 + 3) % 11) as i64 - 5).collect();
    let right: Vec<i64> = (0..rank * cols).map(|k| ((k * 5 + 1) % 13) as i64 - 6).collect();
    let l = DenseMatrix::from_i64(field, rows, rank, &left).unwrap();
    let r = DenseMatrix::from_i64(field, rank, cols, &right).unwrap();
    l.mul(&r).unwrap()
}
