use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Integer character of a split torus.
pub type Character = Vec<i64>;

/// Torus weights on the tangent space of `P(V)` at the line through a
/// weight vector of weight `λ_c`, where `V = ⊕ V_{λ_i}` with the given
/// multiplicities: `0` with multiplicity `dim V_{λ_c} − 1` and `λ_i − λ_c`
/// with multiplicity `dim V_{λ_i}` for `i ≠ c`. Zero multiplicities are
/// dropped and the result is sorted by character.
pub fn ptangent_weights(weights: &[(Character, usize)], chosen: usize) -> Result<Vec<(Character, usize)>> {
    let Some((first, _)) = weights.first() else {
        return Err(Error::EmptyWeights);
    };
    let rank = first.len();
    if weights.iter().any(|(w, _)| w.len() != rank) {
        return Err(Error::InvalidWeights("characters have different lengths".into()));
    }
    let Some((base, mult)) = weights.get(chosen) else {
        return Err(Error::InvalidWeights(format!("index {chosen} out of range")));
    };
    if *mult == 0 {
        return Err(Error::InvalidWeights("chosen weight has multiplicity 0".into()));
    }
    let mut out: BTreeMap<Character, usize> = BTreeMap::new();
    for (i, (w, m)) in weights.iter().enumerate() {
        let diff: Character = w.iter().zip(base).map(|(a, b)| a - b).collect();
        let m = if i == chosen { m - 1 } else { *m };
        if i != chosen && diff.iter().all(|&d| d == 0) {
            return Err(Error::InvalidWeights(format!("weight {w:?} is listed twice")));
        }
        if m > 0 {
            *out.entry(diff).or_default() += m;
        }
    }
    Ok(out.into_iter().collect())
}

/// The same weights read off the affine chart `{S_c ≠ 0}` of `P(V)`,
/// basis vector by basis vector.
///
/// With `S_j` the coordinate functions of a weight basis, the torus acts on
/// `S_j` by `−λ_j`, so the chart coordinate `S_j / S_c` has character
/// `λ_c − λ_j`. These span `m/m²` at the origin; the tangent space is its
/// dual.
pub fn ptangent_weights_chart(weights: &[(Character, usize)], chosen: usize) -> Result<Vec<(Character, usize)>> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let mut basis: Vec<&Character> = Vec::new();
    let mut origin = None;
    for (i, (w, m)) in weights.iter().enumerate() {
        if i == chosen && *m > 0 {
            origin = Some(basis.len());
        }
        basis.extend(std::iter::repeat_n(w, *m));
    }
    let Some(c) = origin else {
        return Err(Error::InvalidWeights("chosen weight is not present".into()));
    };
    let mut out: BTreeMap<Character, usize> = BTreeMap::new();
    for (j, w) in basis.iter().enumerate() {
        if j == c {
            continue;
        }
        let cotangent: Character = basis[c].iter().zip(w.iter()).map(|(a, b)| a - b).collect();
        let tangent: Character = cotangent.iter().map(|x| -x).collect();
        *out.entry(tangent).or_default() += 1;
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_weight() {
        assert_eq!(ptangent_weights(&[(vec![3], 4)], 0).unwrap(), vec![(vec![0], 3)]);
        assert!(ptangent_weights(&[(vec![3], 1)], 0).unwrap().is_empty());
    }

    #[test]
    fn two_lines() {
        let w = [(vec![1, 0], 1), (vec![0, 1], 1)];
        assert_eq!(ptangent_weights(&w, 0).unwrap(), vec![(vec![-1, 1], 1)]);
    }

    #[test]
    fn three_weights() {
        let w = [(vec![2], 1), (vec![4], 1), (vec![6], 2)];
        assert_eq!(ptangent_weights(&w, 0).unwrap(), vec![(vec![2], 1), (vec![4], 2)]);
    }

    #[test]
    fn chart_agrees_on_examples() {
        let cases: Vec<(Vec<(Character, usize)>, usize)> = vec![
            (vec![(vec![3], 4)], 0),
            (vec![(vec![1, 0], 1), (vec![0, 1], 1)], 1),
            (vec![(vec![2], 1), (vec![4], 1), (vec![6], 2)], 2),
        ];
        for (w, c) in cases {
            assert_eq!(ptangent_weights(&w, c).unwrap(), ptangent_weights_chart(&w, c).unwrap());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(ptangent_weights(&[], 0), Err(Error::EmptyWeights)));
        assert!(ptangent_weights(&[(vec![1], 0)], 0).is_err());
        assert!(ptangent_weights(&[(vec![1], 1)], 1).is_err());
        assert!(ptangent_weights(&[(vec![1], 1), (vec![1], 2)], 0).is_err());
        assert!(ptangent_weights(&[(vec![1], 1), (vec![1, 2], 2)], 0).is_err());
    }
}
