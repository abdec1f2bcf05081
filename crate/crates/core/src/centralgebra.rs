//! Centralizers, iterated kernels, normalizers and centers inside a
//! Chevalley algebra, their weight multisets under the canonical grading,
//! and the per-cell report collecting the regular-nilpotent identities.

use serde::{Deserialize, Serialize};

use crate::check::Check;
use crate::chevalley::{ChevalleyAlgebra, CocharacterGrading};
use crate::error::{Error, Result};
use crate::exactalg::{common_kernel, DenseMatrix, FieldScalar, Subspace};
use crate::rootsys::{classify_prime, exponents_by_height, PrimeClass, RootKind, RootSystem};

/// `c_g(X) = ker ad(X)`.
pub fn lie_centralizer(alg: &ChevalleyAlgebra, x: &[FieldScalar]) -> Result<Subspace> {
    Ok(alg.ad(x)?.nullspace())
}

/// `ker ad(X)^k`.
pub fn ker_ad_power(alg: &ChevalleyAlgebra, x: &[FieldScalar], k: u32) -> Result<Subspace> {
    if k == 0 {
        return Err(Error::Shape("power must be at least 1".into()));
    }
    Ok(alg.ad(x)?.pow(k)?.nullspace())
}

/// `{Y : [Y, s] ∈ S for all s ∈ S}`.
///
/// With `C` the membership conditions of `S`, the requirement on `Y` for a
/// basis vector `s_j` is `C ad(s_j) Y = 0`.
pub fn lie_normalizer(alg: &ChevalleyAlgebra, s: &Subspace) -> Result<Subspace> {
    let field = alg.field();
    field.check(s.field())?;
    if s.ambient_dim() != alg.dim() {
        return Err(Error::Shape("subspace does not live in the algebra".into()));
    }
    let cond = s.membership_conditions();
    if cond.rows() == 0 {
        return Ok(Subspace::whole(field, alg.dim()));
    }
    let maps = s
        .basis_vectors()
        .into_iter()
        .map(|v| alg.ad(&v).and_then(|ad| cond.mul(&ad)))
        .collect::<Result<Vec<DenseMatrix>>>()?;
    common_kernel(field, alg.dim(), maps)
}

/// Center of the algebra: common kernel of all `ad(b_i)`. The simple root
/// vectors go first since they cut the kernel down fastest.
pub fn lie_center(alg: &ChevalleyAlgebra) -> Result<Subspace> {
    let r = alg.rank();
    let npos = alg.root_system().num_positive();
    let mut order: Vec<usize> = (0..r).map(|i| r + i).collect();
    order.extend((0..r).map(|i| r + npos + i));
    let rest: Vec<usize> = (0..alg.dim()).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    common_kernel(alg.field(), alg.dim(), order.into_iter().map(|i| alg.ad_basis(i)))
}

/// Multiset of weights `w` with multiplicity `dim(S ∩ g(φ;w))`, sorted.
///
/// Fails with [`Error::NotGraded`] unless `S` is the sum of its
/// intersections with the weight spaces.
pub fn weight_multiset(s: &Subspace, grading: &CocharacterGrading) -> Result<Vec<i64>> {
    if grading.weights.len() != s.ambient_dim() {
        return Err(Error::Shape("grading does not match the ambient space".into()));
    }
    let field = s.field();
    let mut weights: Vec<i64> = grading.weights.clone();
    weights.sort_unstable();
    weights.dedup();
    let basis = s.basis_vectors();
    let mut out = Vec::new();
    let mut total = 0;
    for w in weights {
        let projected: Vec<Vec<FieldScalar>> = basis
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if grading.weights[i] == w {
                            x.clone()
                        } else {
                            field.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for p in &projected {
            if !s.contains(p)? {
                return Err(Error::NotGraded);
            }
        }
        let dim = Subspace::from_vectors(field, s.ambient_dim(), &projected)?.dim();
        total += dim;
        out.extend(std::iter::repeat_n(w, dim));
    }
    debug_assert_eq!(total, s.dim());
    Ok(out)
}

/// `a \ b` for sorted multisets; `None` unless `b ⊆ a`.
pub fn multiset_difference(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut rest = a.to_vec();
    for x in b {
        let pos = rest.iter().position(|y| y == x)?;
        rest.remove(pos);
    }
    Some(rest)
}

/// Everything measured around the regular nilpotent for one
/// (type, rank, prime) cell. Verdicts are recomputed from the fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularReport {
    pub kind: RootKind,
    pub rank: usize,
    pub p: u64,
    pub prime_class: PrimeClass,
    pub dim_c: usize,
    pub dim_ker_ad2: usize,
    pub dim_n: usize,
    pub dim_lie_center: usize,
    pub dim_n0: usize,
    pub weights_c: Vec<i64>,
    pub weights_n: Vec<i64>,
    pub weights_n_mod_c: Vec<i64>,
    pub expected_exponents: Vec<u32>,
    pub c_abelian: bool,
    pub x_in_c: bool,
    pub x_spans_weight_two: bool,
    pub c_in_n: bool,
    pub n_in_ker_ad2: bool,
}

impl RegularReport {
    pub fn expected_weights_c(&self) -> Vec<i64> {
        self.expected_exponents.iter().map(|&k| 2 * k as i64).collect()
    }

    pub fn expected_weights_n_mod_c(&self) -> Vec<i64> {
        let mut w: Vec<i64> = std::iter::once(0)
            .chain(self.expected_exponents.iter().skip(1).map(|&k| 2 * k as i64 - 2))
            .collect();
        w.sort_unstable();
        w
    }

    pub fn verdicts(&self) -> Vec<Check> {
        let r = self.rank;
        let z = self.dim_lie_center;
        let mult2 = self.weights_c.iter().filter(|&&w| w == 2).count();
        let nonzero_positive = self.weights_n.iter().all(|&w| w >= 0);
        let checks = vec![
            Check::exact("dim c(X) = r", r, self.dim_c),
            Check::exact("dim ker ad(X)^2 = 2r", 2 * r, self.dim_ker_ad2),
            Check::exact("dim n = 2r + dim z(g)", 2 * r + z, self.dim_n),
            Check::exact("weights of c(X) = {2k_i}", self.expected_weights_c(), self.weights_c.clone()),
            Check::exact("multiplicity of weight 2 in c(X)", 1, mult2),
            Check::exact(
                "weights of n/c(X) = {0} + {2k_i - 2 : i >= 2}",
                self.expected_weights_n_mod_c(),
                self.weights_n_mod_c.clone(),
            ),
            Check::holds("nonzero weights on n are positive", nonzero_positive),
            Check::exact("dim n(0) = 1 + dim z(g)", 1 + z, self.dim_n0),
            Check::holds("c(X) is abelian", self.c_abelian),
            Check::holds("X lies in c(X)", self.x_in_c),
            Check::holds("X spans c(X)(2)", self.x_spans_weight_two),
            Check::holds("c(X) within n", self.c_in_n),
            Check::holds("n within ker ad(X)^2", self.n_in_ker_ad2),
        ];
        if self.prime_class == PrimeClass::VeryGood {
            checks
        } else {
            checks.into_iter().map(Check::advisory).collect()
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts().iter().all(|c| c.passed())
    }
}

/// Builds the reduced algebra, its regular nilpotent `X`, and measures
/// `c = c_g(X)`, `ker ad(X)^2`, the normalizer `n` of `c`, the center, and
/// the weight multisets. Check failures are recorded, never raised.
pub fn regular_report(kind: RootKind, rank: usize, p: u64) -> Result<RegularReport> {
    let prime_class = classify_prime(kind, rank, p)?;
    let rs = RootSystem::new(kind, rank)?;
    let alg = ChevalleyAlgebra::new(&rs)?.reduce_mod(p)?;
    regular_report_for(&alg, prime_class)
}

pub fn regular_report_for(alg: &ChevalleyAlgebra, prime_class: PrimeClass) -> Result<RegularReport> {
    let rs = alg.root_system();
    let field = alg.field();
    let grading = alg.canonical_grading();
    let x = alg.regular_nilpotent().coords;

    let c = lie_centralizer(alg, &x)?;
    let ker2 = ker_ad_power(alg, &x, 2)?;
    let n = lie_normalizer(alg, &c)?;
    let z = lie_center(alg)?;

    let weights_c = weight_multiset(&c, &grading)?;
    let weights_n = weight_multiset(&n, &grading)?;
    let weights_n_mod_c = multiset_difference(&weights_n, &weights_c).unwrap_or_default();

    let basis_c = c.basis_vectors();
    let mut c_abelian = true;
    'outer: for (i, u) in basis_c.iter().enumerate() {
        for v in &basis_c[i + 1..] {
            if alg.bracket(u, v)?.iter().any(|s| !s.is_zero()) {
                c_abelian = false;
                break 'outer;
            }
        }
    }
    let x_in_c = c.contains(&x)?;
    let two = grading.weight_spaces(field).remove(&2);
    let x_spans_weight_two = match two {
        Some(w2) => {
            let c2 = c.intersection(&w2)?;
            c2.dim() == 1 && c2.contains(&x)?
        }
        None => false,
    };

    Ok(RegularReport {
        kind: rs.kind(),
        rank: rs.rank(),
        p: field.characteristic() as u64,
        prime_class,
        dim_c: c.dim(),
        dim_ker_ad2: ker2.dim(),
        dim_n: n.dim(),
        dim_lie_center: z.dim(),
        dim_n0: weights_n.iter().filter(|&&w| w == 0).count(),
        weights_c,
        weights_n,
        weights_n_mod_c,
        expected_exponents: exponents_by_height(rs).exponents,
        c_abelian,
        x_in_c,
        x_spans_weight_two,
        c_in_n: c.is_subspace_of(&n)?,
        n_in_ker_ad2: n.is_subspace_of(&ker2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced(kind: RootKind, r: usize, p: u64) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(&RootSystem::new(kind, r).unwrap())
            .unwrap()
            .reduce_mod(p)
            .unwrap()
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let a = reduced(RootKind::A, 2, 7);
        let zero = vec![a.field().zero(); a.dim()];
        assert_eq!(lie_centralizer(&a, &zero).unwrap().dim(), a.dim());
    }

    #[test]
    fn regular_centralizer_weights() {
        for (k, r, expect) in [
            (RootKind::A, 2, vec![2, 4]),
            (RootKind::G, 2, vec![2, 10]),
        ] {
            let a = reduced(k, r, 7);
            let x = a.regular_nilpotent().coords;
            let c = lie_centralizer(&a, &x).unwrap();
            assert_eq!(c.dim(), 2);
            assert_eq!(weight_multiset(&c, &a.canonical_grading()).unwrap(), expect);
        }
    }

    #[test]
    fn ker_ad_squared() {
        for (k, r, dim) in [(RootKind::A, 2, 4), (RootKind::A, 3, 6)] {
            let a = reduced(k, r, 7);
            let x = a.regular_nilpotent().coords;
            assert_eq!(ker_ad_power(&a, &x, 2).unwrap().dim(), dim);
            assert_eq!(
                ker_ad_power(&a, &x, 1).unwrap(),
                lie_centralizer(&a, &x).unwrap()
            );
        }
    }

    #[test]
    fn normalizer_examples() {
        let a = reduced(RootKind::A, 2, 7);
        let whole = Subspace::whole(a.field(), a.dim());
        assert_eq!(lie_normalizer(&a, &whole).unwrap(), whole);
        let x = a.regular_nilpotent().coords;
        let c = lie_centralizer(&a, &x).unwrap();
        let n = lie_normalizer(&a, &c).unwrap();
        assert_eq!(n.dim(), 4);
        let w = weight_multiset(&n, &a.canonical_grading()).unwrap();
        assert_eq!(w, vec![0, 2, 2, 4]);
        let b2 = reduced(RootKind::B, 2, 7);
        let x = b2.regular_nilpotent().coords;
        let c = lie_centralizer(&b2, &x).unwrap();
        assert_eq!(lie_normalizer(&b2, &c).unwrap().dim(), 4);
    }

    #[test]
    fn center_examples() {
        assert_eq!(lie_center(&reduced(RootKind::A, 2, 7)).unwrap().dim(), 0);
        assert_eq!(lie_center(&reduced(RootKind::A, 2, 3)).unwrap().dim(), 1);
        assert_eq!(lie_center(&reduced(RootKind::A, 1, 7)).unwrap().dim(), 0);
    }

    #[test]
    fn ungraded_subspace_is_rejected() {
        let a = reduced(RootKind::A, 1, 5);
        let f = a.field();
        // h + e mixes weights 0 and 2
        let s = Subspace::from_vectors(f, 3, &[vec![f.one(), f.one(), f.zero()]]).unwrap();
        assert_eq!(
            weight_multiset(&s, &a.canonical_grading()),
            Err(Error::NotGraded)
        );
        let whole = Subspace::whole(f, 3);
        assert_eq!(
            weight_multiset(&whole, &a.canonical_grading()).unwrap(),
            vec![-2, 0, 2]
        );
    }

    #[test]
    fn report_examples() {
        let a2 = regular_report(RootKind::A, 2, 7).unwrap();
        assert!(a2.all_pass(), "{:#?}", a2.verdicts());
        assert_eq!(a2.weights_c, vec![2, 4]);
        let g2 = regular_report(RootKind::G, 2, 7).unwrap();
        assert!(g2.all_pass(), "{:#?}", g2.verdicts());
        assert_eq!(g2.weights_c, vec![2, 10]);
        assert_eq!(g2.weights_n_mod_c, vec![0, 8]);
        let a1 = regular_report(RootKind::A, 1, 5).unwrap();
        assert_eq!((a1.dim_c, a1.dim_n), (1, 2));
        assert_eq!(a1.weights_n_mod_c, vec![0]);
    }
}
