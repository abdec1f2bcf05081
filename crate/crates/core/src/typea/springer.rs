use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::jordan::{is_regular_nilpotent, jordan_nilpotent, jordan_type_of_nilpotent, JordanType};
use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, DualMatrix, Field, FieldScalar};

/// Coefficients of `σ(X) = I + Σ a_i X^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpringerCoeffs {
    a: Vec<FieldScalar>,
}

impl SpringerCoeffs {
    pub fn new(a: Vec<FieldScalar>) -> Result<Self> {
        let Some(a1) = a.first() else {
            return Err(Error::InvalidCoefficients("no coefficients".into()));
        };
        let field = a1.field();
        for c in &a {
            field.check(c.field())?;
        }
        if a1.is_zero() {
            return Err(Error::InvalidCoefficients("a_1 must be invertible".into()));
        }
        Ok(SpringerCoeffs { a })
    }

    pub fn from_i64(field: Field, a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.a
    }

    pub fn a1(&self) -> &FieldScalar {
        &self.a[0]
    }

    pub fn field(&self) -> Field {
        self.a[0].field()
    }

    /// Uniformly random coefficients of length `len` with `a_1 ≠ 0`.
    pub fn random<R: Rng>(rng: &mut R, field: Field, len: usize) -> Self {
        let mut a = Vec::with_capacity(len.max(1));
        loop {
            let c = random_scalar(rng, field);
            if !c.is_zero() {
                a.push(c);
                break;
            }
        }
        for _ in 1..len {
            a.push(random_scalar(rng, field));
        }
        SpringerCoeffs { a }
    }
}

pub(crate) fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> FieldScalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.random_range(0..p as i64)),
        Field::Rational => field.from_i64(rng.random_range(-5..=5)),
    }
}

pub(crate) fn random_matrix<R: Rng>(rng: &mut R, field: Field, n: usize) -> DenseMatrix {
    let entries: Vec<FieldScalar> = (0..n * n).map(|_| random_scalar(rng, field)).collect();
    DenseMatrix::from_scalars(field, n, n, &entries).expect("n² entries")
}

pub fn random_invertible<R: Rng>(rng: &mut R, field: Field, n: usize) -> DenseMatrix {
    loop {
        let g = random_matrix(rng, field, n);
        if !g.determinant().expect("square").is_zero() {
            return g;
        }
    }
}

/// `P S P⁻¹` with `S` random strictly upper triangular.
pub fn random_nilpotent<R: Rng>(rng: &mut R, field: Field, n: usize) -> DenseMatrix {
    let mut s = DenseMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in i + 1..n {
            s.set(i, j, &random_scalar(rng, field)).expect("same field");
        }
    }
    let p = random_invertible(rng, field, n);
    let pinv = p.inverse().expect("invertible");
    p.mul(&s).and_then(|m| m.mul(&pinv)).expect("square")
}

fn require_nilpotent(x: &DenseMatrix) -> Result<()> {
    if !x.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// `I + Σ a_i X^i` for nilpotent `X`.
pub fn springer_apply(c: &SpringerCoeffs, x: &DenseMatrix) -> Result<DenseMatrix> {
    c.field().check(x.field())?;
    require_nilpotent(x)?;
    let n = x.rows();
    let mut out = DenseMatrix::identity(x.field(), n);
    let mut pw = out.clone();
    for a in c.coeffs().iter().take(n.max(1)) {
        pw = pw.mul(x)?;
        if pw.is_zero() {
            break;
        }
        out = out.add(&pw.scale(a)?)?;
    }
    Ok(out)
}

/// `σ` on dual matrices, `I + Σ a_i Y^i`.
fn springer_apply_dual(c: &SpringerCoeffs, y: &DualMatrix) -> Result<DualMatrix> {
    let field = y.value.field();
    let n = y.value.rows();
    let mut out = DualMatrix::identity(field, n);
    let mut pw = out.clone();
    for a in c.coeffs() {
        pw = pw.mul(y)?;
        out = out.add(&pw.scale(a)?)?;
    }
    Ok(out)
}

/// Coefficients `b_1, …, b_{len}` of the compositional inverse of
/// `Σ a_i x^i`, truncated at degree `len`.
pub fn reversion(c: &SpringerCoeffs, len: usize) -> Result<Vec<FieldScalar>> {
    let field = c.field();
    let inv_a1 = c.a1().inv()?;
    // g[k] = coefficient of y^k, g[0] = 0
    let mut g = vec![field.zero(); len + 1];
    if len == 0 {
        return Ok(Vec::new());
    }
    g[1] = inv_a1.clone();
    let trunc_mul = |p: &[FieldScalar], q: &[FieldScalar]| {
        let mut r = vec![field.zero(); len + 1];
        for (i, a) in p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in q.iter().enumerate().take(len + 1 - i) {
                r[i + j] = &r[i + j] + &(a * b);
            }
        }
        r
    };
    for m in 2..=len {
        // coefficient of y^m in f(g) with g[m] still 0
        let mut pw = g.clone();
        let mut coef = field.zero();
        for a in c.coeffs().iter().take(m) {
            coef = &coef + &(a * &pw[m]);
            pw = trunc_mul(&pw, &g);
        }
        g[m] = -&(&coef * &inv_a1);
    }
    Ok(g[1..].to_vec())
}

/// The nilpotent `X` with `σ(X) = U`.
pub fn springer_invert(c: &SpringerCoeffs, u: &DenseMatrix) -> Result<DenseMatrix> {
    c.field().check(u.field())?;
    if !u.is_square() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    let n = u.rows();
    let nil = u.sub(&DenseMatrix::identity(u.field(), n))?;
    if !nil.is_nilpotent() {
        return Err(Error::NotUnipotent);
    }
    let b = reversion(c, n.saturating_sub(1).max(1))?;
    let mut out = DenseMatrix::zeros(u.field(), n, n);
    let mut pw = DenseMatrix::identity(u.field(), n);
    for bj in &b {
        pw = pw.mul(&nil)?;
        if pw.is_zero() {
            break;
        }
        out = out.add(&pw.scale(bj)?)?;
    }
    Ok(out)
}

/// Per-sample seed so that results do not depend on scheduling.
fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `map(gXg⁻¹) = g map(X) g⁻¹` on random invertible `g` and nilpotent `X`.
pub fn equivariance_check_with<F>(map: F, samples: usize, n: usize, field: Field, seed: u64) -> Result<bool>
where
    F: Fn(&DenseMatrix) -> Result<DenseMatrix> + Sync,
{
    let results = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let g = random_invertible(&mut rng, field, n);
            let x = random_nilpotent(&mut rng, field, n);
            let ginv = g.inverse()?;
            let lhs = map(&g.mul(&x)?.mul(&ginv)?)?;
            let rhs = g.mul(&map(&x)?)?.mul(&ginv)?;
            Ok(lhs == rhs)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|b| b))
}

pub fn equivariance_check(c: &SpringerCoeffs, samples: usize, n: usize, seed: u64) -> Result<bool> {
    equivariance_check_with(|x| springer_apply(c, x), samples, n, c.field(), seed)
}

/// Coordinates of `v` in the (independent) list `basis`.
fn coordinates_in(basis: &[DenseMatrix], v: &DenseMatrix) -> Result<Vec<FieldScalar>> {
    let field = v.field();
    let n2 = v.rows() * v.cols();
    let mut cols: Vec<Vec<FieldScalar>> = basis.iter().map(|b| b.to_vec()).collect();
    cols.push(v.to_vec());
    let m = DenseMatrix::from_rows(field, n2, &cols)?.transpose();
    let k = m.nullspace();
    let last = basis.len();
    for w in k.basis_vectors() {
        if !w[last].is_zero() {
            let s = -&w[last].inv()?;
            return w[..last].iter().map(|x| x.checked_mul(&s)).collect();
        }
    }
    Err(Error::Consistency("vector outside the span of the basis".into()))
}

/// Matrix of `dγ₀` on the basis `X, X², …, X^{n−1}` of `Lie(R_u C)`: column
/// `j` holds the coordinates of the ε-part of `σ(ε X^j)`.
pub fn dgamma0(c: &SpringerCoeffs, x_reg: &DenseMatrix) -> Result<DenseMatrix> {
    c.field().check(x_reg.field())?;
    require_nilpotent(x_reg)?;
    if !is_regular_nilpotent(x_reg) {
        return Err(Error::NotRegular);
    }
    let n = x_reg.rows();
    let basis: Vec<DenseMatrix> = (1..n as u32).map(|j| x_reg.pow(j)).collect::<Result<_>>()?;
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let img = springer_apply_dual(c, &DualMatrix::infinitesimal(b.clone()))?;
        cols.push(coordinates_in(&basis, &img.eps)?);
    }
    Ok(DenseMatrix::from_rows(x_reg.field(), basis.len(), &cols)?.transpose())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTangent {
    /// Diagonal of `dγ₀` on `Lie(R_u C)` of the pair, first factor first.
    pub scalars: Vec<String>,
    pub diagonal: bool,
    pub scalar_multiple: bool,
}

/// `dγ₀` for `(X, Y) ↦ (I + αX, I + βY)` at the regular pair
/// `(J_n, J_m)` inside block-diagonal `gl_{n+m}`.
pub fn product_dgamma0(n: usize, m: usize, alpha: &FieldScalar, beta: &FieldScalar) -> Result<ProductTangent> {
    let field = alpha.field();
    field.check(beta.field())?;
    if n < 2 || m < 2 {
        return Err(Error::Shape("both factors need n, m ≥ 2".into()));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidCoefficients("α and β must be nonzero".into()));
    }
    let xn = jordan_nilpotent(&JordanType::regular(n)?, field);
    let xm = jordan_nilpotent(&JordanType::regular(m)?, field);
    let embed = |a: &DenseMatrix, b: &DenseMatrix| -> DenseMatrix {
        let mut out = DenseMatrix::zeros(field, n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, &a.get(i, j)).expect("same field");
            }
        }
        for i in 0..m {
            for j in 0..m {
                out.set(n + i, n + j, &b.get(i, j)).expect("same field");
            }
        }
        out
    };
    let zn = DenseMatrix::zeros(field, n, n);
    let zm = DenseMatrix::zeros(field, m, m);
    let mut basis = Vec::new();
    for j in 1..n as u32 {
        basis.push(embed(&xn.pow(j)?, &zm));
    }
    for j in 1..m as u32 {
        basis.push(embed(&zn, &xm.pow(j)?));
    }
    let sa = SpringerCoeffs::new(vec![alpha.clone()])?;
    let sb = SpringerCoeffs::new(vec![beta.clone()])?;
    let sigma = |y: &DualMatrix| -> Result<DualMatrix> {
        let split = |d: &DenseMatrix, off: usize, k: usize| {
            let mut out = DenseMatrix::zeros(field, k, k);
            for i in 0..k {
                for j in 0..k {
                    out.set(i, j, &d.get(off + i, off + j)).expect("same field");
                }
            }
            out
        };
        let top = DualMatrix::new(split(&y.value, 0, n), split(&y.eps, 0, n))?;
        let bot = DualMatrix::new(split(&y.value, n, m), split(&y.eps, n, m))?;
        let a = springer_apply_dual(&sa, &top)?;
        let b = springer_apply_dual(&sb, &bot)?;
        DualMatrix::new(embed(&a.value, &b.value), embed(&a.eps, &b.eps))
    };
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let img = sigma(&DualMatrix::infinitesimal(b.clone()))?;
        cols.push(coordinates_in(&basis, &img.eps)?);
    }
    let d = DenseMatrix::from_rows(field, basis.len(), &cols)?.transpose();
    let k = basis.len();
    let diag: Vec<FieldScalar> = (0..k).map(|i| d.get(i, i)).collect();
    let diagonal = (0..k).all(|i| (0..k).all(|j| i == j || d.get(i, j).is_zero()));
    let scalar_multiple = diagonal && diag.iter().all(|s| *s == diag[0]);
    Ok(ProductTangent {
        scalars: diag.iter().map(|s| s.to_string()).collect(),
        diagonal,
        scalar_multiple,
    })
}

/// ε-part of `σ(εX)`, the velocity of `t ↦ σ(tX)` at `t = 0`.
pub fn curve_tangent(c: &SpringerCoeffs, x: &DenseMatrix) -> Result<DenseMatrix> {
    c.field().check(x.field())?;
    require_nilpotent(x)?;
    Ok(springer_apply_dual(c, &DualMatrix::infinitesimal(x.clone()))?.eps)
}

/// On random `a`, `Σ a_i J_n^i` is regular exactly when `a_1 ≠ 0`. Every
/// fourth sample forces `a_1 = 0`.
pub fn regular_locus_check(n: usize, field: Field, samples: usize, seed: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Shape("n must be positive".into()));
    }
    let x = jordan_nilpotent(&JordanType::regular(n)?, field);
    let powers: Vec<DenseMatrix> = (1..n as u32).map(|i| x.pow(i)).collect::<Result<_>>()?;
    let results = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = sample_rng(seed, s);
            let mut a: Vec<FieldScalar> = (0..powers.len()).map(|_| random_scalar(&mut rng, field)).collect();
            if s % 4 == 3 {
                if let Some(a1) = a.first_mut() {
                    *a1 = field.zero();
                }
            }
            let mut y = DenseMatrix::zeros(field, n, n);
            for (ai, p) in a.iter().zip(&powers) {
                y = y.add(&p.scale(ai)?)?;
            }
            let regular = jordan_type_of_nilpotent(&y)?.is_regular();
            let a1_nonzero = n == 1 || !a[0].is_zero();
            Ok(regular == a1_nonzero)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|b| b))
}

/// For regular `X` and nilpotent `N = Σ_{i≥1} a_i X^i`, whether `σ(N) − I`
/// is nilpotent and `σ(N)` lies in the commutant of `X`.
pub fn unipotent_in_commutant(c: &SpringerCoeffs, x: &DenseMatrix, a: &[FieldScalar]) -> Result<bool> {
    let n = x.rows();
    let mut nil = DenseMatrix::zeros(x.field(), n, n);
    let mut pw = DenseMatrix::identity(x.field(), n);
    for ai in a {
        pw = pw.mul(x)?;
        nil = nil.add(&pw.scale(ai)?)?;
    }
    let u = springer_apply(c, &nil)?;
    let unipotent = u.sub(&DenseMatrix::identity(x.field(), n))?.is_nilpotent();
    let com = super::commutant::commutant(x)?;
    let span = super::commutant::matrix_span(x.field(), n, &com)?;
    Ok(unipotent && span.contains(&u.to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::Prime(7)
    }

    #[test]
    fn coefficients_need_invertible_a1() {
        assert!(SpringerCoeffs::from_i64(f7(), &[0, 1]).is_err());
        assert!(SpringerCoeffs::from_i64(f7(), &[7, 1]).is_err());
        assert!(SpringerCoeffs::new(vec![]).is_err());
        assert!(SpringerCoeffs::from_i64(f7(), &[3]).is_ok());
    }

    #[test]
    fn apply_examples() {
        let f = f7();
        let x = jordan_nilpotent(&JordanType::regular(3).unwrap(), f);
        let c = SpringerCoeffs::from_i64(f, &[1, 0]).unwrap();
        let i = DenseMatrix::identity(f, 3);
        assert_eq!(springer_apply(&c, &x).unwrap(), i.add(&x).unwrap());
        let z = DenseMatrix::zeros(f, 3, 3);
        assert_eq!(springer_apply(&c, &z).unwrap(), i);
        let c = SpringerCoeffs::from_i64(f, &[4]).unwrap();
        let x2 = jordan_nilpotent(&JordanType::regular(2).unwrap(), f);
        assert_eq!(
            springer_apply(&c, &x2).unwrap(),
            DenseMatrix::from_i64(f, 2, 2, &[1, 4, 0, 1]).unwrap()
        );
        assert!(matches!(springer_apply(&c, &i), Err(Error::NotNilpotent)));
    }

    #[test]
    fn invert_examples() {
        let f = Field::Prime(13);
        let c = SpringerCoeffs::from_i64(f, &[3, 5, 7, 1]).unwrap();
        let i = DenseMatrix::identity(f, 5);
        assert!(springer_invert(&c, &i).unwrap().is_zero());
        let x = jordan_nilpotent(&JordanType::regular(4).unwrap(), f);
        let c1 = SpringerCoeffs::from_i64(f, &[1]).unwrap();
        let u = DenseMatrix::identity(f, 4).add(&x).unwrap();
        assert_eq!(springer_invert(&c1, &u).unwrap(), x);
        assert!(matches!(
            springer_invert(&c, &i.scale(&f.from_i64(2)).unwrap()),
            Err(Error::NotUnipotent)
        ));
    }

    #[test]
    fn reversion_of_exponential_like_series() {
        // f = x + x², f⁻¹ = y − y² + 2y³ − 5y⁴ (Catalan numbers)
        let q = Field::Rational;
        let c = SpringerCoeffs::from_i64(q, &[1, 1]).unwrap();
        let b = reversion(&c, 4).unwrap();
        assert_eq!(b, vec![q.from_i64(1), q.from_i64(-1), q.from_i64(2), q.from_i64(-5)]);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for field in [Field::Prime(13), Field::Prime(2), Field::Rational] {
            for _ in 0..20 {
                let n = rng.random_range(1..=5);
                let c = SpringerCoeffs::random(&mut rng, field, n);
                let x = random_nilpotent(&mut rng, field, n);
                let u = springer_apply(&c, &x).unwrap();
                assert_eq!(springer_invert(&c, &u).unwrap(), x);
            }
        }
    }

    #[test]
    fn equivariance_and_negative_control() {
        let f = f7();
        let c = SpringerCoeffs::from_i64(f, &[2, 3]).unwrap();
        assert!(equivariance_check(&c, 100, 3, 0).unwrap());
        let corrupted = |x: &DenseMatrix| -> Result<DenseMatrix> {
            springer_apply(&c, x)?.add(&x.transpose().mul(x)?)
        };
        assert!(!equivariance_check_with(corrupted, 20, 3, f, 0).unwrap());
    }

    #[test]
    fn dgamma0_is_a1_times_identity() {
        let f = f7();
        let x = jordan_nilpotent(&JordanType::regular(4).unwrap(), f);
        let c = SpringerCoeffs::from_i64(f, &[1, 0, 0]).unwrap();
        assert!(dgamma0(&c, &x).unwrap().is_identity());
        let c = SpringerCoeffs::from_i64(f, &[5, 2, 6]).unwrap();
        let expected = DenseMatrix::identity(f, 3).scale(&f.from_i64(5)).unwrap();
        assert_eq!(dgamma0(&c, &x).unwrap(), expected);
        let y = jordan_nilpotent(&JordanType::new(vec![2, 2]).unwrap(), f);
        assert!(matches!(dgamma0(&c, &y), Err(Error::NotRegular)));
    }

    #[test]
    fn product_examples() {
        let f = f7();
        let r = product_dgamma0(2, 2, &f.from_i64(2), &f.from_i64(3)).unwrap();
        assert_eq!(r.scalars, vec!["2", "3"]);
        assert!(r.diagonal && !r.scalar_multiple);
        let r = product_dgamma0(3, 2, &f.from_i64(5), &f.from_i64(5)).unwrap();
        assert_eq!(r.scalars, vec!["5", "5", "5"]);
        assert!(r.scalar_multiple);
        let q = Field::Rational;
        assert!(product_dgamma0(2, 3, &q.one(), &q.one()).unwrap().scalar_multiple);
    }

    #[test]
    fn curve_tangent_examples() {
        let f = f7();
        let x = jordan_nilpotent(&JordanType::new(vec![3, 1]).unwrap(), f);
        let c = SpringerCoeffs::from_i64(f, &[1, 4]).unwrap();
        assert_eq!(curve_tangent(&c, &x).unwrap(), x);
        let c = SpringerCoeffs::from_i64(f, &[3, 4]).unwrap();
        let t = curve_tangent(&c, &x).unwrap();
        assert_eq!(t, x.scale(&f.from_i64(3)).unwrap());
        assert_eq!(t.scale(&f.from_i64(3).inv().unwrap()).unwrap(), x);
        assert!(curve_tangent(&c, &DenseMatrix::zeros(f, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn regular_locus() {
        assert!(regular_locus_check(5, Field::Prime(11), 100, 0).unwrap());
        assert!(regular_locus_check(4, Field::Rational, 40, 1).unwrap());
    }

    #[test]
    fn polynomial_nilpotents_map_into_commutant_units() {
        let f = Field::Prime(5);
        let x = jordan_nilpotent(&JordanType::regular(4).unwrap(), f);
        let c = SpringerCoeffs::from_i64(f, &[2, 1, 3]).unwrap();
        let a = vec![f.from_i64(1), f.from_i64(4), f.from_i64(2)];
        assert!(unipotent_in_commutant(&c, &x, &a).unwrap());
    }
}
