//! Root systems of types A–G in simple-root coordinates, their exponents and
//! Coxeter spectra, and the classification of bad / good / very good primes.
//!
//! Cartan convention: `cartan[i][j] = ⟨α_i∨, α_j⟩`, so the pairing of a root
//! `γ = Σ c_j α_j` with the coroot `α_i∨` is `Σ_j c_j cartan[i][j]`. Simple
//! roots are numbered as in Bourbaki's plates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootKind {
    pub fn letter(self) -> char {
        match self {
            RootKind::A => 'A',
            RootKind::B => 'B',
            RootKind::C => 'C',
            RootKind::D => 'D',
            RootKind::E => 'E',
            RootKind::F => 'F',
            RootKind::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<RootKind> {
        Some(match c.to_ascii_uppercase() {
            'A' => RootKind::A,
            'B' => RootKind::B,
            'C' => RootKind::C,
            'D' => RootKind::D,
            'E' => RootKind::E,
            'F' => RootKind::F,
            'G' => RootKind::G,
            _ => return None,
        })
    }

    pub fn is_legal_rank(self, rank: usize) -> bool {
        match self {
            RootKind::A => rank >= 1,
            RootKind::B => rank >= 2,
            RootKind::C => rank >= 3,
            RootKind::D => rank >= 4,
            RootKind::E => (6..=8).contains(&rank),
            RootKind::F => rank == 4,
            RootKind::G => rank == 2,
        }
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A type label such as `G2` or `A5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub kind: RootKind,
    pub rank: usize,
}

impl CartanType {
    pub fn new(kind: RootKind, rank: usize) -> Result<Self> {
        if !kind.is_legal_rank(rank) {
            return Err(Error::IllegalType {
                kind: kind.letter(),
                rank,
            });
        }
        Ok(CartanType { kind, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or(Error::IllegalType { kind: '?', rank: 0 })?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::IllegalType {
            kind: letter,
            rank: 0,
        })?;
        let kind = RootKind::from_letter(letter).ok_or(Error::IllegalType { kind: letter, rank })?;
        CartanType::new(kind, rank)
    }
}

/// Symmetric Gram matrix `(α_i, α_j)` of the simple roots, scaled to integers.
fn gram_matrix(kind: RootKind, r: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; r]; r];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match kind {
        RootKind::A => {
            for i in 0..r {
                g[i][i] = 2;
            }
            for i in 0..r.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        RootKind::B => {
            // α_1 … α_{r-1} long, α_r short
            for i in 0..r {
                g[i][i] = if i + 1 == r { 2 } else { 4 };
            }
            for i in 0..r - 1 {
                link(&mut g, i, i + 1, -2);
            }
        }
        RootKind::C => {
            // α_1 … α_{r-1} short, α_r long
            for i in 0..r {
                g[i][i] = if i + 1 == r { 4 } else { 2 };
            }
            for i in 0..r - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, r - 2, r - 1, -2);
        }
        RootKind::D => {
            for i in 0..r {
                g[i][i] = 2;
            }
            for i in 0..r - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, r - 3, r - 1, -1);
        }
        RootKind::E => {
            for i in 0..r {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..r - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        RootKind::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        RootKind::G => {
            // α_1 short, α_2 long
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Number of positive roots, by the closed-form count for each type.
pub fn expected_positive_roots(kind: RootKind, r: usize) -> usize {
    match (kind, r) {
        (RootKind::A, r) => r * (r + 1) / 2,
        (RootKind::B | RootKind::C, r) => r * r,
        (RootKind::D, r) => r * (r - 1),
        (RootKind::E, 6) => 36,
        (RootKind::E, 7) => 63,
        (RootKind::E, 8) => 120,
        (RootKind::F, _) => 24,
        (RootKind::G, _) => 6,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    /// Generates the positive roots by root strings: for a positive root `γ`
    /// and simple `α_i`, `γ + α_i` is a root iff `p - ⟨γ, α_i∨⟩ > 0` where
    /// `p` is the largest `m` with `γ - mα_i` a root.
    ///
    /// Roots are ordered by height, then by descending lexicographic order of
    /// their coordinates (so the simple roots come first, in index order).
    pub fn new(kind: RootKind, rank: usize) -> Result<Self> {
        let cartan_type = CartanType::new(kind, rank)?;
        let gram = gram_matrix(kind, rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[i][i]).collect())
            .collect();

        let unit = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let mut known: HashSet<Vec<i64>> = (0..rank).map(unit).collect();
        let mut layer: Vec<Vec<i64>> = (0..rank).map(unit).collect();
        let mut positive = layer.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for g in &layer {
                for i in 0..rank {
                    let pairing: i64 = (0..rank).map(|j| g[j] * cartan[i][j]).sum();
                    let mut p = 0;
                    let mut down = g.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pairing > 0 {
                        let mut up = g.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            for r in &next {
                known.insert(r.clone());
            }
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut index = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.clone(), k);
        }
        let n = positive.len();
        for (k, r) in positive.iter().enumerate() {
            index.insert(r.iter().map(|x| -x).collect(), n + k);
        }
        let rs = RootSystem {
            cartan_type,
            cartan,
            gram,
            positive,
            index,
        };
        rs.check_invariants()?;
        Ok(rs)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            if self.cartan[i][i] != 2 || (0..r).any(|j| j != i && self.cartan[i][j] > 0) {
                return Err(Error::StructureConstants("malformed Cartan matrix".into()));
            }
        }
        if self.positive.len() != expected_positive_roots(self.kind(), r) {
            return Err(Error::StructureConstants(format!(
                "{} positive roots generated for {}, expected {}",
                self.positive.len(),
                self.cartan_type,
                expected_positive_roots(self.kind(), r)
            )));
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn kind(&self) -> RootKind {
        self.cartan_type.kind
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Positive roots followed by their negatives, in the same order.
    pub fn all_roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive.clone();
        out.extend(
            self.positive
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        out
    }

    /// Index in [`Self::all_roots`], if `v` is a root.
    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn max_height(&self) -> i64 {
        self.positive.iter().map(|r| Self::height(r)).max().unwrap_or(0)
    }

    /// `(x, y)` for vectors in simple-root coordinates.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let r = self.rank();
        let mut s = 0;
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }

    /// `⟨γ, α_i∨⟩`.
    pub fn pairing_simple(&self, root: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| root[j] * self.cartan[i][j]).sum()
    }

    /// `⟨γ, β∨⟩ = 2(γ, β)/(β, β)`.
    pub fn pairing(&self, root: &[i64], coroot_of: &[i64]) -> i64 {
        2 * self.inner(root, coroot_of) / self.inner(coroot_of, coroot_of)
    }

    /// Coordinates of `γ∨` in the basis of simple coroots:
    /// `γ∨ = Σ_j c_j (α_j, α_j)/(γ, γ) α_j∨`.
    pub fn coroot_coefficients(&self, root: &[i64]) -> Vec<i64> {
        let len = self.inner(root, root);
        (0..self.rank())
            .map(|j| {
                let num = root[j] * self.gram[j][j];
                debug_assert_eq!(num % len, 0);
                num / len
            })
            .collect()
    }

    /// Matrix of the simple reflection `s_i` on simple-root coordinates
    /// (acting on column vectors).
    pub fn simple_reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0i64; r]; r];
        for j in 0..r {
            m[j][j] = 1;
            // s_i(α_j) = α_j - ⟨α_j, α_i∨⟩ α_i
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    /// `s_1 s_2 ⋯ s_r`.
    pub fn coxeter_element(&self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut acc: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        for i in 0..r {
            acc = int_matmul(&acc, &self.simple_reflection(i));
        }
        acc
    }

    /// `|W|` by breadth-first closure of the simple reflections.
    pub fn weyl_group_order(&self) -> usize {
        let r = self.rank();
        let gens: Vec<Vec<Vec<i64>>> = (0..r).map(|i| self.simple_reflection(i)).collect();
        let id: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let next = int_matmul(&w, g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.len()
    }
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

pub fn build_root_system(kind: RootKind, rank: usize) -> Result<RootSystem> {
    RootSystem::new(kind, rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentData {
    pub exponents: Vec<u32>,
    pub degrees: Vec<u32>,
    pub coxeter_number: u32,
}

/// Exponents as the dual partition of the height distribution of the
/// positive roots: `k`-th exponent counts the heights `j` with at least
/// `r + 1 - k` positive roots of height `j`.
pub fn exponents_by_height(rs: &RootSystem) -> ExponentData {
    let max_h = rs.max_height() as usize;
    let mut counts = vec![0usize; max_h + 1];
    for r in rs.positive_roots() {
        counts[RootSystem::height(r) as usize] += 1;
    }
    let m = &counts[1..];
    let mut exponents: Vec<u32> = (1..=rs.rank())
        .map(|i| m.iter().filter(|&&c| c >= i).count() as u32)
        .collect();
    exponents.sort_unstable();
    let degrees = exponents.iter().map(|k| k + 1).collect();
    ExponentData {
        exponents,
        degrees,
        coxeter_number: max_h as u32 + 1,
    }
}

/// Eigenvalues of the Coxeter element `s_1 ⋯ s_r` in floating point.
pub fn coxeter_spectrum(rs: &RootSystem) -> Result<Vec<Complex<f64>>> {
    let r = rs.rank();
    let c = rs.coxeter_element();
    let m = DMatrix::from_fn(r, r, |i, j| c[i][j] as f64);
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-14, 10_000).ok_or(Error::EigenNonConvergence)?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Largest distance between the Coxeter spectrum and `{exp(2πi k_j/h)}`
/// under the optimal matching (sorting both by argument).
pub fn coxeter_spectrum_deviation(rs: &RootSystem) -> Result<f64> {
    let data = exponents_by_height(rs);
    let h = data.coxeter_number as f64;
    let mut expected: Vec<Complex<f64>> = data
        .exponents
        .iter()
        .map(|&k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / h))
        .collect();
    let mut got = coxeter_spectrum(rs)?;
    let arg = |z: &Complex<f64>| z.arg().rem_euclid(2.0 * std::f64::consts::PI);
    expected.sort_by(|a, b| arg(a).total_cmp(&arg(b)));
    got.sort_by(|a, b| arg(a).total_cmp(&arg(b)));
    if got.len() != expected.len() {
        return Ok(f64::INFINITY);
    }
    Ok(got
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

pub fn coxeter_spectrum_check(rs: &RootSystem, tol: f64) -> Result<bool> {
    Ok(coxeter_spectrum_deviation(rs)? <= tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeClass {
    Bad,
    GoodNotVeryGood,
    VeryGood,
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::Bad => "bad",
            PrimeClass::GoodNotVeryGood => "good-not-very-good",
            PrimeClass::VeryGood => "very-good",
        })
    }
}

/// `p = 2` is bad outside type A, `p = 3` is bad for G2, F4 and E, `p = 5`
/// is bad for E8; a good prime is very good unless the type is `A_r` with
/// `r ≡ -1 (mod p)`.
pub fn classify_prime(kind: RootKind, rank: usize, p: u64) -> Result<PrimeClass> {
    CartanType::new(kind, rank)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let bad = match p {
        2 => kind != RootKind::A,
        3 => matches!(kind, RootKind::G | RootKind::F | RootKind::E),
        5 => kind == RootKind::E && rank == 8,
        _ => false,
    };
    Ok(if bad {
        PrimeClass::Bad
    } else if kind == RootKind::A && (rank as u64 + 1) % p == 0 {
        PrimeClass::GoodNotVeryGood
    } else {
        PrimeClass::VeryGood
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heights(rs: &RootSystem) -> Vec<i64> {
        rs.positive_roots().iter().map(|r| RootSystem::height(r)).collect()
    }

    #[test]
    fn small_systems() {
        let a1 = RootSystem::new(RootKind::A, 1).unwrap();
        assert_eq!(a1.num_positive(), 1);
        let a2 = RootSystem::new(RootKind::A, 2).unwrap();
        assert_eq!(heights(&a2), vec![1, 1, 2]);
        let g2 = RootSystem::new(RootKind::G, 2).unwrap();
        assert_eq!(heights(&g2), vec![1, 1, 2, 3, 4, 5]);
        // highest root of G2 is 3α_1 + 2α_2
        assert_eq!(g2.positive_roots().last().unwrap(), &vec![3, 2]);
    }

    #[test]
    fn illegal_types_rejected() {
        assert!(RootSystem::new(RootKind::C, 2).is_err());
        assert!(RootSystem::new(RootKind::E, 5).is_err());
        assert!(RootSystem::new(RootKind::A, 0).is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert_eq!(
            "f4".parse::<CartanType>().unwrap(),
            CartanType::new(RootKind::F, 4).unwrap()
        );
    }

    #[test]
    fn simple_roots_first_and_nonnegative() {
        for (k, r) in [(RootKind::B, 3), (RootKind::E, 6), (RootKind::F, 4)] {
            let rs = RootSystem::new(k, r).unwrap();
            for i in 0..r {
                let mut e = vec![0; r];
                e[i] = 1;
                assert_eq!(rs.positive_roots()[i], e);
            }
            assert!(rs.positive_roots().iter().flatten().all(|&c| c >= 0));
        }
    }

    #[test]
    fn exponent_examples() {
        let e = |k, r| exponents_by_height(&RootSystem::new(k, r).unwrap());
        assert_eq!(e(RootKind::A, 1).exponents, vec![1]);
        assert_eq!(e(RootKind::A, 1).coxeter_number, 2);
        assert_eq!(e(RootKind::A, 3).exponents, vec![1, 2, 3]);
        assert_eq!(e(RootKind::A, 3).coxeter_number, 4);
        assert_eq!(e(RootKind::G, 2).exponents, vec![1, 5]);
        assert_eq!(e(RootKind::G, 2).coxeter_number, 6);
        assert_eq!(e(RootKind::G, 2).degrees, vec![2, 6]);
    }

    #[test]
    fn coxeter_spectrum_small_cases() {
        let a1 = RootSystem::new(RootKind::A, 1).unwrap();
        let s = coxeter_spectrum(&a1).unwrap();
        assert!((s[0] - Complex::new(-1.0, 0.0)).norm() < 1e-12);
        for (k, r) in [(RootKind::A, 2), (RootKind::G, 2)] {
            assert!(coxeter_spectrum_check(&RootSystem::new(k, r).unwrap(), 1e-8).unwrap());
        }
    }

    #[test]
    fn prime_classification_examples() {
        assert_eq!(classify_prime(RootKind::E, 8, 5).unwrap(), PrimeClass::Bad);
        assert_eq!(
            classify_prime(RootKind::A, 3, 2).unwrap(),
            PrimeClass::GoodNotVeryGood
        );
        assert_eq!(classify_prime(RootKind::A, 2, 5).unwrap(), PrimeClass::VeryGood);
        assert_eq!(classify_prime(RootKind::A, 2, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn coroots_of_long_and_short_roots() {
        let g2 = RootSystem::new(RootKind::G, 2).unwrap();
        // short simple root: coroot is α_1∨ itself
        assert_eq!(g2.coroot_coefficients(&[1, 0]), vec![1, 0]);
        // highest short root 2α_1 + α_2 has coroot 2α_1∨ + 3α_2∨
        assert_eq!(g2.coroot_coefficients(&[2, 1]), vec![2, 3]);
        for r in g2.positive_roots() {
            assert_eq!(g2.pairing(r, r), 2);
        }
    }
}
