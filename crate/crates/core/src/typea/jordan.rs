use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Field};

/// Partition indexing a nilpotent orbit in `gl_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct JordanType {
    parts: Vec<usize>,
}

impl JordanType {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not nonincreasing")));
        }
        Ok(JordanType { parts })
    }

    /// The single block `(n)`.
    pub fn regular(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn conjugate(&self) -> JordanType {
        let parts = (1..=self.parts[0])
            .map(|k| self.parts.iter().filter(|&&l| l >= k).count())
            .collect();
        JordanType { parts }
    }

    /// `Σ (2i − 1) λ_i`, the dimension of the commutant of a nilpotent of
    /// this type.
    pub fn commutant_dim(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &l)| (2 * i + 1) * l)
            .sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<JordanType> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<JordanType>) {
            if rest == 0 {
                out.push(JordanType { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                go(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for JordanType {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<JordanType> for Vec<usize> {
    fn from(jt: JordanType) -> Vec<usize> {
        jt.parts
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for JordanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Block-diagonal nilpotent with one Jordan block per part, 1s on the
/// superdiagonal.
pub fn jordan_nilpotent(jt: &JordanType, field: Field) -> DenseMatrix {
    let n = jt.n();
    let mut m = DenseMatrix::zeros(field, n, n);
    let mut start = 0;
    for &l in jt.parts() {
        for i in start..start + l - 1 {
            m.set_i64(i, i + 1, 1);
        }
        start += l;
    }
    m
}

/// Jordan type of a nilpotent matrix read off from `rank(Y^k)`.
pub fn jordan_type_of_nilpotent(y: &DenseMatrix) -> Result<JordanType> {
    if !y.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    let n = y.rows();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    let mut ranks = vec![n];
    let mut pw = y.clone();
    while *ranks.last().unwrap() > 0 {
        if ranks.len() > n {
            return Err(Error::NotNilpotent);
        }
        ranks.push(pw.rank());
        pw = pw.mul(y)?;
    }
    // at_least[k] = number of blocks of size ≥ k+1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in (0..at_least.len()).rev() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, at_least[k] - next));
    }
    JordanType::new(parts)
}

/// Whether `y` is nilpotent with a single Jordan block.
pub fn is_regular_nilpotent(y: &DenseMatrix) -> bool {
    y.is_square()
        && y.is_nilpotent()
        && jordan_type_of_nilpotent(y).is_ok_and(|jt| jt.is_regular())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| JordanType::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(JordanType::new(vec![1, 2]).is_err());
        assert!(JordanType::new(vec![]).is_err());
        assert!(JordanType::new(vec![2, 0]).is_err());
    }

    #[test]
    fn conjugate_is_involutive() {
        for n in 1..=7 {
            for jt in JordanType::all(n) {
                assert_eq!(jt.conjugate().conjugate(), jt);
                assert_eq!(jt.conjugate().n(), n);
            }
        }
        let jt = JordanType::new(vec![3, 1]).unwrap();
        assert_eq!(jt.conjugate().parts(), &[2, 1, 1]);
    }

    #[test]
    fn commutant_dim_agrees_with_conjugate_squares() {
        for n in 1..=8 {
            for jt in JordanType::all(n) {
                let sq: usize = jt.conjugate().parts().iter().map(|l| l * l).sum();
                assert_eq!(jt.commutant_dim(), sq, "{jt}");
            }
        }
        assert_eq!(JordanType::new(vec![3]).unwrap().commutant_dim(), 3);
        assert_eq!(JordanType::new(vec![2, 1]).unwrap().commutant_dim(), 5);
    }

    #[test]
    fn small_jordan_matrices() {
        let f = Field::Prime(5);
        let z = jordan_nilpotent(&JordanType::new(vec![1, 1]).unwrap(), f);
        assert!(z.is_zero());
        let m = jordan_nilpotent(&JordanType::new(vec![2, 1]).unwrap(), f);
        assert_eq!(m, DenseMatrix::from_i64(f, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap());
    }

    #[test]
    fn rank_sequence_recovers_type() {
        for f in [Field::Rational, Field::Prime(2)] {
            for n in 1..=6 {
                for jt in JordanType::all(n) {
                    let x = jordan_nilpotent(&jt, f);
                    assert_eq!(jordan_type_of_nilpotent(&x).unwrap(), jt);
                }
            }
        }
    }

    #[test]
    fn square_of_regular_block() {
        let f = Field::Rational;
        let x = jordan_nilpotent(&JordanType::regular(4).unwrap(), f);
        let x2 = x.pow(2).unwrap();
        assert_eq!(jordan_type_of_nilpotent(&x2).unwrap().parts(), &[2, 2]);
        assert!(!is_regular_nilpotent(&x2));
        assert!(is_regular_nilpotent(&x));
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let i = DenseMatrix::identity(Field::Prime(3), 2);
        assert!(matches!(jordan_type_of_nilpotent(&i), Err(Error::NotNilpotent)));
    }

    #[test]
    fn parse_and_display() {
        let jt: JordanType = "(3,1,1)".parse().unwrap();
        assert_eq!(jt.to_string(), "(3,1,1)");
        assert!("(1,3)".parse::<JordanType>().is_err());
    }
}
