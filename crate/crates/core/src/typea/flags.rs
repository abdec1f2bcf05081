use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Field, Subspace};

pub const FLAG_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlagCount {
    pub total: u128,
    pub preserved: u128,
}

/// Number of complete flags in `F_q^n`, `Π_{i=1}^n (q^i − 1)/(q − 1)`.
pub fn flag_count(n: usize, q: u64) -> Option<u128> {
    let q = q as u128;
    let mut total: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 1..=n {
        qi = qi.checked_mul(q)?;
        total = total.checked_mul((qi - 1) / (q - 1))?;
    }
    Some(total)
}

/// Enumerates every complete flag `0 ⊂ V_1 ⊂ … ⊂ V_n = F_q^n` and counts
/// those with `X V_i ⊆ V_i` for all `i`.
pub fn flags_preserved(x: &DenseMatrix, q: u64) -> Result<FlagCount> {
    let field = Field::prime(q)?;
    field.check(x.field())?;
    if !x.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = x.rows();
    let bound = flag_count(n, q).unwrap_or(u128::MAX);
    if bound > FLAG_BUDGET {
        return Err(Error::FlagBudgetExceeded {
            count: bound,
            budget: FLAG_BUDGET,
        });
    }
    let mut count = FlagCount {
        total: 0,
        preserved: 0,
    };
    walk(x, q, &Subspace::zero(field, n), true, &mut count)?;
    if count.total != bound {
        return Err(Error::Consistency(format!(
            "enumerated {} flags, expected {bound}",
            count.total
        )));
    }
    Ok(count)
}

fn walk(x: &DenseMatrix, q: u64, v: &Subspace, stable: bool, count: &mut FlagCount) -> Result<()> {
    let n = v.ambient_dim();
    if v.dim() == n {
        count.total += 1;
        if stable {
            count.preserved += 1;
        }
        return Ok(());
    }
    let field = v.field();
    let free: Vec<usize> = (0..n).filter(|j| !v.pivots().contains(j)).collect();
    // one representative per line of F^n / V: supported on the non-pivot
    // columns with leading coefficient 1
    let k = free.len();
    let total = (q as u128).pow(k as u32);
    for code in 1..total {
        let mut digits = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            digits.push((c % q as u128) as i64);
            c /= q as u128;
        }
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        let mut vec = vec![field.zero(); n];
        for (&j, &d) in free.iter().zip(&digits) {
            vec[j] = field.from_i64(d);
        }
        let next = v.sum(&Subspace::from_vectors(field, n, std::slice::from_ref(&vec))?)?;
        let still = stable && next.contains(&x.mul_vec(&vec)?)?;
        walk(x, q, &next, still, count)?;
    }
    Ok(())
}
