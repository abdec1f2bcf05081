//! Chevalley-basis Lie algebras built from a root system, their reductions
//! mod `p`, the regular nilpotent `Σ e_α` over the simple roots, and the
//! grading by the cocharacter `φ = Σ_{β>0} β∨`.
//!
//! Basis order: `h_1 … h_r`, then `e_γ` for the positive roots, then for the
//! negative roots, both in root-system order.
//!
//! Structure constants `[e_α, e_β] = N_{α,β} e_{α+β}` come from the
//! extraspecial pairs: for each non-simple positive root `γ`, the pair
//! `(α, γ - α)` with `α` earliest in the root order gets the positive sign
//! `N = p + 1`; every other constant is forced by the standard relations
//! among the `N`'s (antisymmetry, the cyclic relation for `α + β + γ = 0`,
//! and the four-root relation for `α + β + γ + δ = 0`).

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{DenseMatrix, Field, FieldScalar, Subspace};
use crate::rootsys::{classify_prime, PrimeClass, RootSystem};

/// Sparse integer vector `[(basis index, coefficient)]`.
pub type SparseVec = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    roots: Vec<Vec<i64>>,
    field: Field,
    table: Vec<SparseVec>,
}

/// Root-pair constants `N_{x,y}`, indexed by positions in `rs.all_roots()`.
struct Constants<'a> {
    rs: &'a RootSystem,
    roots: Vec<Vec<i64>>,
    npos: usize,
    positive: HashMap<(usize, usize), i64>,
}

impl<'a> Constants<'a> {
    fn neg(&self, k: usize) -> usize {
        if k < self.npos {
            k + self.npos
        } else {
            k - self.npos
        }
    }

    fn len(&self, k: usize) -> i64 {
        self.rs.inner(&self.roots[k], &self.roots[k])
    }

    fn sum(&self, x: usize, y: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[x]
            .iter()
            .zip(&self.roots[y])
            .map(|(a, b)| a + b)
            .collect();
        self.rs.root_index(&s)
    }

    /// `p + 1` where `p` is the largest `k` with `y - k x` a root.
    fn string_factor(&self, x: usize, y: usize) -> i64 {
        let mut p = 0;
        let mut v = self.roots[y].clone();
        loop {
            for (a, b) in v.iter_mut().zip(&self.roots[x]) {
                *a -= b;
            }
            if self.rs.is_root(&v) {
                p += 1;
            } else {
                return p + 1;
            }
        }
    }

    /// `N_{x,y}` as a rational, reducing mixed-sign pairs to positive pairs
    /// whose sum has smaller height.
    fn get(&self, x: usize, y: usize) -> Ratio<i64> {
        let Some(s) = self.sum(x, y) else {
            return Ratio::from_integer(0);
        };
        let (xp, yp) = (x < self.npos, y < self.npos);
        match (xp, yp) {
            (true, true) => Ratio::from_integer(
                *self
                    .positive
                    .get(&(x, y))
                    .unwrap_or_else(|| panic!("N({x},{y}) requested before it was computed")),
            ),
            (false, false) => -self.get(self.neg(x), self.neg(y)),
            (false, true) => -self.get(y, x),
            (true, false) => {
                // x + y + z = 0 with z = -(x + y)
                let z = self.neg(s);
                if s < self.npos {
                    // y, z negative: N_{x,y} = (z,z)/(x,x) N_{y,z}
                    Ratio::new(self.len(z), self.len(x)) * self.get(y, z)
                } else {
                    // z, x positive: N_{x,y} = (z,z)/(y,y) N_{z,x}
                    Ratio::new(self.len(z), self.len(y)) * self.get(z, x)
                }
            }
        }
    }

    fn build(rs: &'a RootSystem) -> Result<Self> {
        let roots = rs.all_roots();
        let npos = rs.num_positive();
        let mut c = Constants {
            rs,
            roots,
            npos,
            positive: HashMap::new(),
        };
        // positive roots are already sorted by height
        for g in 0..npos {
            if RootSystem::height(&c.roots[g]) < 2 {
                continue;
            }
            let pairs: Vec<(usize, usize)> = (0..npos)
                .filter_map(|x| {
                    let diff: Vec<i64> = c.roots[g]
                        .iter()
                        .zip(&c.roots[x])
                        .map(|(a, b)| a - b)
                        .collect();
                    rs.root_index(&diff)
                        .filter(|&y| y < npos)
                        .map(|y| (x, y))
                })
                .collect();
            let &(alpha, beta) = pairs.first().ok_or_else(|| {
                Error::StructureConstants(format!("root {:?} has no decomposition", c.roots[g]))
            })?;
            let nab = c.string_factor(alpha, beta);
            c.positive.insert((alpha, beta), nab);
            c.positive.insert((beta, alpha), -nab);
            let len_g = c.len(g);
            for &(xi, zeta) in &pairs {
                if xi >= zeta || (xi, zeta) == (alpha, beta) {
                    continue;
                }
                let (mxi, mzeta) = (c.neg(xi), c.neg(zeta));
                let mut acc = Ratio::from_integer(0);
                if let Some(bx) = c.sum(beta, mxi) {
                    acc += c.get(beta, mxi) * c.get(alpha, mzeta) / c.len(bx);
                }
                if let Some(ax) = c.sum(alpha, mxi) {
                    acc += c.get(mxi, alpha) * c.get(beta, mzeta) / c.len(ax);
                }
                let n = acc * len_g / nab;
                if !n.is_integer() {
                    return Err(Error::StructureConstants(format!(
                        "non-integral N for roots {:?}, {:?}",
                        c.roots[xi], c.roots[zeta]
                    )));
                }
                let n = n.to_integer();
                if n.abs() != c.string_factor(xi, zeta) {
                    return Err(Error::StructureConstants(format!(
                        "|N| = {} for roots {:?}, {:?}",
                        n.abs(),
                        c.roots[xi],
                        c.roots[zeta]
                    )));
                }
                c.positive.insert((xi, zeta), n);
                c.positive.insert((zeta, xi), -n);
            }
        }
        Ok(c)
    }
}

fn add_into(acc: &mut BTreeMap<usize, i64>, k: usize, c: i64, modulus: Option<i64>) {
    let e = acc.entry(k).or_insert(0);
    *e += c;
    if let Some(p) = modulus {
        *e = e.rem_euclid(p);
    }
}

fn finish(acc: BTreeMap<usize, i64>) -> SparseVec {
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

impl ChevalleyAlgebra {
    /// Characteristic-zero algebra with integer structure constants. The
    /// invariants (antisymmetry, the `h`-action, `[e_γ, e_{-γ}] = h_γ`,
    /// `|N_{α,β}| = p + 1` and the Jacobi identity) are checked before
    /// returning.
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let consts = Constants::build(rs)?;
        let r = rs.rank();
        let roots = consts.roots.clone();
        let nroots = roots.len();
        let d = r + nroots;
        let mut table = vec![Vec::new(); d * d];
        for k in 0..nroots {
            let e = r + k;
            for i in 0..r {
                let c = rs.pairing_simple(&roots[k], i);
                if c != 0 {
                    table[i * d + e] = vec![(e, c)];
                    table[e * d + i] = vec![(e, -c)];
                }
            }
            for l in 0..nroots {
                let f = r + l;
                if l == consts.neg(k) {
                    table[e * d + f] = rs
                        .coroot_coefficients(&roots[k])
                        .into_iter()
                        .enumerate()
                        .filter(|&(_, c)| c != 0)
                        .collect();
                } else if let Some(s) = consts.sum(k, l) {
                    let n = consts.get(k, l);
                    debug_assert!(n.is_integer());
                    table[e * d + f] = vec![(r + s, n.to_integer())];
                }
            }
        }
        let alg = ChevalleyAlgebra {
            rs: rs.clone(),
            roots,
            field: Field::Rational,
            table,
        };
        alg.verify_antisymmetry()?;
        if r <= 5 && rs.kind() != crate::RootKind::E {
            alg.verify_jacobi()?;
        } else {
            alg.verify_jacobi_sampled(10_000, 0)?;
        }
        Ok(alg)
    }

    /// Reduces the structure constants mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Result<Self> {
        let field = Field::prime(p)?;
        let p = p as i64;
        let table = self
            .table
            .iter()
            .map(|v| {
                v.iter()
                    .map(|&(k, c)| (k, c.rem_euclid(p)))
                    .filter(|&(_, c)| c != 0)
                    .collect()
            })
            .collect();
        let alg = ChevalleyAlgebra {
            rs: self.rs.clone(),
            roots: self.roots.clone(),
            field,
            table,
        };
        alg.verify_antisymmetry()?;
        alg.verify_graded(&alg.canonical_grading())?;
        Ok(alg)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn field(&self) -> Field {
        self.field
    }

    fn modulus(&self) -> Option<i64> {
        match self.field {
            Field::Prime(p) => Some(p as i64),
            Field::Rational => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.roots.len()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Index of `e_γ` for a root `γ`.
    pub fn root_vector_index(&self, root: &[i64]) -> Option<usize> {
        self.rs.root_index(root).map(|k| self.rank() + k)
    }

    pub fn basis_label(&self, i: usize) -> String {
        let r = self.rank();
        if i < r {
            format!("h{}", i + 1)
        } else {
            let v = &self.roots[i - r];
            format!(
                "e[{}]",
                v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            )
        }
    }

    /// `[b_i, b_j]` as a sparse vector of basis coefficients.
    pub fn structure_constant(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}` (0 when `α + β` is not
    /// a root).
    pub fn n_const(&self, alpha: &[i64], beta: &[i64]) -> Option<i64> {
        let i = self.root_vector_index(alpha)?;
        let j = self.root_vector_index(beta)?;
        let sum: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        let Some(k) = self.root_vector_index(&sum) else {
            return Some(0);
        };
        Some(
            self.structure_constant(i, j)
                .iter()
                .find(|&&(t, _)| t == k)
                .map_or(0, |&(_, c)| c),
        )
    }

    fn bracket_sparse(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> SparseVec {
        let m = self.modulus();
        let mut acc = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in self.structure_constant(i, j) {
                    add_into(&mut acc, k, a * b * c, m);
                }
            }
        }
        finish(acc)
    }

    pub fn verify_antisymmetry(&self) -> Result<()> {
        let d = self.dim();
        let m = self.modulus();
        for i in 0..d {
            for j in i..d {
                let mut acc = BTreeMap::new();
                for &(k, c) in self.structure_constant(i, j) {
                    add_into(&mut acc, k, c, m);
                }
                for &(k, c) in self.structure_constant(j, i) {
                    add_into(&mut acc, k, c, m);
                }
                if !finish(acc).is_empty() {
                    return Err(Error::StructureConstants(format!(
                        "[{}, {}] is not antisymmetric",
                        self.basis_label(i),
                        self.basis_label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    fn jacobi_triple(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let m = self.modulus();
        let mut acc = BTreeMap::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.structure_constant(b, c);
            for (t, v) in self.bracket_sparse(&[(a, 1)], inner) {
                add_into(&mut acc, t, v, m);
            }
        }
        if finish(acc).is_empty() {
            Ok(())
        } else {
            Err(Error::JacobiViolation(i, j, k))
        }
    }

    /// Exhaustive check over all triples `i < j < k`; with antisymmetry this
    /// covers every ordered triple.
    pub fn verify_jacobi(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    self.jacobi_triple(i, j, k)?;
                }
            }
        }
        Ok(())
    }

    pub fn verify_jacobi_sampled(&self, samples: usize, seed: u64) -> Result<()> {
        let d = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (i, j, k) = (
                rng.random_range(0..d),
                rng.random_range(0..d),
                rng.random_range(0..d),
            );
            self.jacobi_triple(i, j, k)?;
        }
        Ok(())
    }

    /// `[x, y]` for coordinate vectors over the algebra's field.
    pub fn bracket(&self, x: &[FieldScalar], y: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        let d = self.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::Shape("bracket of vectors of the wrong length".into()));
        }
        let f = self.field;
        let mut out = vec![f.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            f.check(xi.field())?;
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                f.check(yj.field())?;
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for &(k, c) in self.structure_constant(i, j) {
                    out[k] = &out[k] + &(&xy * &f.from_i64(c));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`, acting on column vectors: column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[FieldScalar]) -> Result<DenseMatrix> {
        let d = self.dim();
        if x.len() != d {
            return Err(Error::Shape("ad of a vector of the wrong length".into()));
        }
        let f = self.field;
        let mut entries = vec![f.zero(); d * d];
        for (i, xi) in x.iter().enumerate() {
            f.check(xi.field())?;
            if xi.is_zero() {
                continue;
            }
            for j in 0..d {
                for &(k, c) in self.structure_constant(i, j) {
                    entries[k * d + j] = &entries[k * d + j] + &(xi * &f.from_i64(c));
                }
            }
        }
        DenseMatrix::from_scalars(f, d, d, &entries)
    }

    /// `ad(b_i)` for a basis element.
    pub fn ad_basis(&self, i: usize) -> DenseMatrix {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(self.field, d, d);
        for j in 0..d {
            for &(k, c) in self.structure_constant(i, j) {
                m.set_i64(k, j, c);
            }
        }
        m
    }

    pub fn basis_vector(&self, i: usize) -> Vec<FieldScalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Regular nilpotent `X = Σ e_α` over the simple roots, together with the
    /// prime classification when the characteristic is not very good.
    pub fn regular_nilpotent(&self) -> RegularNilpotent {
        let r = self.rank();
        let mut coords = vec![self.field.zero(); self.dim()];
        for i in 0..r {
            // simple roots are the first r positive roots
            coords[r + i] = self.field.one();
        }
        let class = match self.field {
            Field::Rational => None,
            Field::Prime(p) => {
                classify_prime(self.rs.kind(), self.rs.rank(), p as u64).ok()
            }
        };
        RegularNilpotent {
            coords,
            prime_class: class,
        }
    }

    /// Grading by `φ = Σ_{β>0} β∨`: `weight(e_γ) = Σ_{β>0} ⟨γ, β∨⟩`,
    /// `weight(h_i) = 0`.
    pub fn canonical_grading(&self) -> CocharacterGrading {
        let r = self.rank();
        let mut weights = vec![0i64; r];
        for g in &self.roots {
            let w: i64 = self
                .rs
                .positive_roots()
                .iter()
                .map(|b| self.rs.pairing(g, b))
                .sum();
            weights.push(w);
        }
        CocharacterGrading { weights }
    }

    /// Checks `[g(i), g(j)] ⊆ g(i + j)` on every basis pair.
    pub fn verify_graded(&self, grading: &CocharacterGrading) -> Result<()> {
        let d = self.dim();
        if grading.weights.len() != d {
            return Err(Error::Shape("grading does not match the basis".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let w = grading.weights[i] + grading.weights[j];
                if let Some(&(k, _)) = self
                    .structure_constant(i, j)
                    .iter()
                    .find(|&&(k, _)| grading.weights[k] != w)
                {
                    return Err(Error::StructureConstants(format!(
                        "[{}, {}] has a component on {} outside weight {w}",
                        self.basis_label(i),
                        self.basis_label(j),
                        self.basis_label(k)
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn build_chevalley(rs: &RootSystem) -> Result<ChevalleyAlgebra> {
    ChevalleyAlgebra::new(rs)
}

pub fn reduce_mod(alg: &ChevalleyAlgebra, p: u64) -> Result<ChevalleyAlgebra> {
    alg.reduce_mod(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularNilpotent {
    pub coords: Vec<FieldScalar>,
    /// `None` in characteristic 0.
    pub prime_class: Option<PrimeClass>,
}

impl RegularNilpotent {
    pub fn warning(&self) -> Option<String> {
        match self.prime_class {
            Some(c) if c != PrimeClass::VeryGood => Some(format!(
                "characteristic is {c} for this type; regularity checks may fail"
            )),
            _ => None,
        }
    }
}

/// Integer weight per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterGrading {
    pub weights: Vec<i64>,
}

impl CocharacterGrading {
    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    /// `g(φ; w)` for each weight `w` occurring; these are coordinate
    /// subspaces since the basis is homogeneous.
    pub fn weight_spaces(&self, field: Field) -> BTreeMap<i64, Subspace> {
        let d = self.weights.len();
        let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.weights.iter().enumerate() {
            groups.entry(w).or_default().push(i);
        }
        groups
            .into_iter()
            .map(|(w, idx)| {
                let vectors: Vec<Vec<FieldScalar>> = idx
                    .iter()
                    .map(|&i| {
                        let mut v = vec![field.zero(); d];
                        v[i] = field.one();
                        v
                    })
                    .collect();
                (w, Subspace::from_vectors(field, d, &vectors).expect("same field"))
            })
            .collect()
    }
}

pub fn canonical_grading(alg: &ChevalleyAlgebra) -> CocharacterGrading {
    alg.canonical_grading()
}

pub fn weight_spaces(alg: &ChevalleyAlgebra, grading: &CocharacterGrading) -> BTreeMap<i64, Subspace> {
    grading.weight_spaces(alg.field())
}
