use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use regnilp_core::centralgebra::regular_report_for;
use regnilp_core::chevalley::ChevalleyAlgebra;
use regnilp_core::rootsys::{
    classify_prime, coxeter_spectrum_deviation, exponents_by_height, PrimeClass,
};
use regnilp_core::typea::{
    center_report, curve_tangent, dgamma0, equivariance_check, flags_preserved, jordan_nilpotent,
    nonsmooth_center_report, product_dgamma0, ptangent_weights, ptangent_weights_chart,
    random_nilpotent, regular_locus_check, springer_apply, springer_invert, commutant_report,
    unipotent_in_commutant, Character, GroupFamily, JordanType, SpringerCoeffs,
};
use regnilp_core::{CartanType, Check, Error, Field, FieldScalar, RootKind, RootSystem, Verdict};
use serde_json::{json, Value};

use crate::report::CaseReport;

/// Parsed command-line parameters shared by all suites.
#[derive(Clone, Debug)]
pub struct Params {
    pub kind: Option<RootKind>,
    pub rank: Option<usize>,
    pub primes: Vec<u64>,
    pub n: Option<usize>,
    pub coeffs: Option<Vec<(i64, i64)>>,
    pub seed: u64,
    pub include_e_types: bool,
    pub tol: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            kind: None,
            rank: None,
            primes: Vec::new(),
            n: None,
            coeffs: None,
            seed: 0,
            include_e_types: false,
            tol: 1e-8,
        }
    }
}

pub const SPRINGER_SAMPLES: usize = 50;
pub const PTANGENT_SAMPLES: usize = 100;

fn ct(kind: RootKind, rank: usize) -> CartanType {
    CartanType::new(kind, rank).expect("grid types are legal")
}

fn grid(spec: &[(RootKind, std::ops::RangeInclusive<usize>)]) -> Vec<CartanType> {
    spec.iter()
        .flat_map(|(k, rs)| rs.clone().map(move |r| ct(*k, r)))
        .collect()
}

fn e_types() -> Vec<CartanType> {
    grid(&[(RootKind::E, 6..=8)])
}

pub fn exponent_grid() -> Vec<CartanType> {
    use RootKind::*;
    grid(&[(A, 1..=7), (B, 2..=4), (C, 3..=4), (D, 4..=5), (G, 2..=2), (F, 4..=4)])
}

pub fn regular_grid() -> Vec<CartanType> {
    use RootKind::*;
    grid(&[(A, 1..=5), (B, 2..=4), (C, 3..=3), (D, 4..=4), (G, 2..=2), (F, 4..=4)])
}

/// Applies `--type`/`--rank` to a default grid. A fully specified type is
/// used even when the grid does not contain it.
fn select_types(default: Vec<CartanType>, p: &Params) -> Vec<CartanType> {
    if let (Some(k), Some(r)) = (p.kind, p.rank) {
        return vec![ct(k, r)];
    }
    let mut all = default;
    if p.include_e_types || p.kind == Some(RootKind::E) {
        all.extend(e_types());
    }
    all.into_iter()
        .filter(|t| p.kind.is_none_or(|k| t.kind == k))
        .filter(|t| p.rank.is_none_or(|r| t.rank == r))
        .collect()
}

fn primes_or(p: &Params, default: &[u64]) -> Vec<u64> {
    if p.primes.is_empty() {
        default.to_vec()
    } else {
        p.primes.clone()
    }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn error_check(name: &str, e: &Error) -> Check {
    Check::exact(name, "ok".to_string(), e.to_string())
}

/// Exponents from root heights against the Coxeter spectrum, with exact
/// side checks on root counts, duality and `|W| = Π d_i`.
pub fn exponents(p: &Params) -> Vec<CaseReport> {
    let types = select_types(exponent_grid(), p);
    types
        .par_iter()
        .map(|t| {
            let mut case = CaseReport::new(params(&[("type", json!(t.to_string()))]));
            let rs = match RootSystem::new(t.kind, t.rank) {
                Ok(rs) => rs,
                Err(e) => {
                    case.push(error_check("root system", &e));
                    return case;
                }
            };
            let data = exponents_by_height(&rs);
            let r = t.rank;
            case.push(match coxeter_spectrum_deviation(&rs) {
                Ok(dev) => Check::within("Coxeter spectrum = exp(2 pi i k_j / h)", p.tol, dev),
                Err(e) => error_check("Coxeter spectrum", &e),
            });
            let sum: u32 = data.exponents.iter().sum();
            case.push(Check::exact("sum of exponents = #positive roots", rs.num_positive() as u32, sum));
            let dual = (0..r).all(|i| data.exponents[i] + data.exponents[r - 1 - i] == data.coxeter_number);
            case.push(Check::holds("k_i + k_(r+1-i) = h", dual));
            case.push(Check::exact("smallest exponent", 1, data.exponents[0]));
            let order: u128 = data.degrees.iter().map(|&d| d as u128).product();
            if order <= 100_000 {
                case.push(Check::exact(
                    "|W| = product of degrees",
                    rs.weyl_group_order() as u128,
                    order,
                ));
            } else {
                case.push(Check::skipped("|W| = product of degrees", "Weyl group too large to enumerate"));
            }
            case
        })
        .collect()
}

fn jacobi_check(alg: &ChevalleyAlgebra, seed: u64) -> Check {
    let r = if alg.root_system().kind() == RootKind::E {
        alg.verify_jacobi_sampled(10_000, seed)
    } else {
        alg.verify_jacobi()
    };
    match r {
        Ok(()) => Check::holds("Jacobi identity", true),
        Err(e) => error_check("Jacobi identity", &e),
    }
}

/// Centralizer, normalizer and weight identities at the regular nilpotent.
/// Cells at primes that are not very good run as advisory.
pub fn regular(p: &Params) -> Vec<CaseReport> {
    let types = select_types(regular_grid(), p);
    let primes = primes_or(p, &[5, 7, 11, 13]);
    let per_type: Vec<Vec<CaseReport>> = types
        .par_iter()
        .map(|t| {
            let built = RootSystem::new(t.kind, t.rank).and_then(|rs| ChevalleyAlgebra::new(&rs));
            let jacobi = built.as_ref().ok().map(|a| jacobi_check(a, p.seed));
            primes
                .iter()
                .map(|&q| {
                    let class = classify_prime(t.kind, t.rank, q).unwrap_or(PrimeClass::Bad);
                    let mut case = CaseReport::new(params(&[
                        ("type", json!(t.to_string())),
                        ("p", json!(q)),
                        ("prime_class", json!(class.to_string())),
                    ]));
                    let advisory = class != PrimeClass::VeryGood;
                    let alg = match &built {
                        Ok(a) => a,
                        Err(e) => {
                            case.push(error_check("Chevalley algebra", e));
                            return case;
                        }
                    };
                    case.checks.extend(jacobi.clone());
                    let res = alg.reduce_mod(q).and_then(|red| regular_report_for(&red, class));
                    match res {
                        Ok(rep) => case.checks.extend(rep.verdicts()),
                        Err(e) if advisory => {
                            case.push(Check::skipped("regular report", &format!("{class} prime: {e}")))
                        }
                        Err(e) => case.push(error_check("regular report", &e)),
                    }
                    case
                })
                .collect()
        })
        .collect();
    per_type.into_iter().flatten().collect()
}

fn coeffs_for(p: &Params, field: Field, rng: &mut ChaCha8Rng, len: usize) -> Result<SpringerCoeffs, Error> {
    match &p.coeffs {
        Some(cs) => {
            let a = cs
                .iter()
                .map(|&(num, den)| field.from_ratio(num, den))
                .collect::<Result<Vec<_>, _>>()?;
            SpringerCoeffs::new(a)
        }
        None => Ok(SpringerCoeffs::random(rng, field, len)),
    }
}

fn springer_cell(p: &Params, n: usize, q: u64) -> CaseReport {
    let field = Field::Prime(q as u32);
    let mut case = CaseReport::new(params(&[("n", json!(n)), ("p", json!(q))]));
    let samples = if p.coeffs.is_some() { 1 } else { SPRINGER_SAMPLES };
    let cell_seed = mix(p.seed, n as u64, q);
    let x_reg = jordan_nilpotent(&JordanType::regular(n).expect("n >= 1"), field);
    let eye = regnilp_core::DenseMatrix::identity(field, n - 1);
    let mut ok = [0usize; 5];
    for s in 0..samples {
        let run = || -> Result<[bool; 5], Error> {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(cell_seed, s as u64, 0));
            let c = coeffs_for(p, field, &mut rng, (n - 1).max(1))?;
            let dg = dgamma0(&c, &x_reg)?;
            let x = random_nilpotent(&mut rng, field, n);
            let tangent = curve_tangent(&c, &x)?;
            let u = springer_apply(&c, &x)?;
            let a: Vec<FieldScalar> = (1..n)
                .map(|_| field.from_i64(rng.random_range(0..q as i64)))
                .collect();
            Ok([
                dg == eye.scale(c.a1())?,
                tangent == x.scale(c.a1())?,
                springer_invert(&c, &u)? == x,
                equivariance_check(&c, 4, n, rng.random())?,
                unipotent_in_commutant(&c, &x_reg, &a)?,
            ])
        };
        match run() {
            Ok(flags) => {
                for (k, f) in flags.iter().enumerate() {
                    ok[k] += *f as usize;
                }
            }
            Err(e) => {
                case.push(error_check("Springer sample", &e));
                return case;
            }
        }
    }
    let names = [
        "samples with dgamma0 = a_1 I",
        "samples with curve tangent = a_1 X",
        "samples with invert(apply(X)) = X",
        "samples with conjugation equivariance",
        "samples with sigma(sum a_i X^i) unipotent in the commutant",
    ];
    for (name, k) in names.iter().zip(ok) {
        case.push(Check::exact(name, samples, k));
    }
    case.push(match regular_locus_check(n, field, 100, cell_seed) {
        Ok(b) => Check::holds("sum a_i X^i regular iff a_1 != 0", b),
        Err(e) => error_check("regular locus", &e),
    });
    case
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}

/// Tangent map of `σ(X) = I + Σ a_i X^i` on random coefficients per
/// `(n, p)` cell, and the product counterexample.
pub fn springer(p: &Params) -> Vec<CaseReport> {
    let ns: Vec<usize> = match p.n {
        Some(n) => vec![n],
        None => (2..=6).collect(),
    };
    let primes = primes_or(p, &[5, 7, 13]);
    let cells: Vec<(usize, u64)> = ns.iter().flat_map(|&n| primes.iter().map(move |&q| (n, q))).collect();
    let mut cases: Vec<CaseReport> = cells.par_iter().map(|&(n, q)| springer_cell(p, n, q)).collect();
    for &q in &primes {
        let field = Field::Prime(q as u32);
        for (n, m, a, b) in [(2, 2, 1, 1), (2, 2, 2, 3), (3, 2, 5, 5), (3, 3, 2, 4)] {
            let (alpha, beta) = (field.from_i64(a), field.from_i64(b));
            let mut case = CaseReport::new(params(&[
                ("product", json!(format!("GL{n} x GL{m}"))),
                ("alpha", json!(alpha.to_string())),
                ("beta", json!(beta.to_string())),
                ("p", json!(q)),
            ]));
            if alpha.is_zero() || beta.is_zero() {
                case.push(Check::skipped("product tangent", "alpha or beta vanishes mod p"));
            } else {
                match product_dgamma0(n, m, &alpha, &beta) {
                    Ok(r) => {
                        let mut expected = vec![alpha.to_string(); n - 1];
                        expected.extend(vec![beta.to_string(); m - 1]);
                        case.push(Check::exact("diagonal scalars", expected, r.scalars));
                        case.push(Check::holds("dgamma0 is diagonal", r.diagonal));
                        case.push(Check::exact("scalar multiple of identity", alpha == beta, r.scalar_multiple));
                    }
                    Err(e) => case.push(error_check("product tangent", &e)),
                }
            }
            cases.push(case);
        }
    }
    cases
}

/// Bicommutant against generic-point Lie center for every Jordan type.
pub fn gl_centers(p: &Params) -> Vec<CaseReport> {
    let ns: Vec<usize> = match p.n {
        Some(n) => vec![n],
        None => (1..=5).collect(),
    };
    let fields: Vec<Field> = if p.primes.is_empty() {
        vec![Field::Prime(5), Field::Prime(7), Field::Rational]
    } else {
        p.primes.iter().map(|&q| Field::Prime(q as u32)).collect()
    };
    let cells: Vec<(Field, JordanType)> = fields
        .iter()
        .flat_map(|&f| ns.iter().flat_map(move |&n| JordanType::all(n).into_iter().map(move |jt| (f, jt))))
        .collect();
    cells
        .par_iter()
        .map(|(f, jt)| {
            let mut case = CaseReport::new(params(&[
                ("field", json!(f.to_string())),
                ("partition", json!(jt.to_string())),
            ]));
            match commutant_report(jt, *f) {
                Ok(r) => {
                    case.push(Check::exact("dim commutant = sum (2i-1) lambda_i", jt.commutant_dim(), r.dim_commutant));
                    case.push(Check::exact(
                        "dim bicommutant = dim generic Lie center",
                        r.dim_algebra_center,
                        r.dim_lie_center_generic,
                    ));
                    case.push(Check::exact("dim bicommutant = deg minimal polynomial", r.min_poly_degree, r.dim_algebra_center));
                    case.push(Check::holds("X in bicommutant", r.contains_x));
                    case.push(Check::holds("bicommutant = span of powers of X", r.bicommutant_is_polynomial_span));
                }
                Err(e) => case.push(error_check("commutant report", &e)),
            }
            case
        })
        .collect()
}

/// The family `diag(t, t^p, 1) + s E_23` and the `GL_2` foil.
pub fn nonsmooth(p: &Params) -> Vec<CaseReport> {
    let primes = primes_or(p, &[2, 3, 5]);
    let mut cases = Vec::new();
    for &q in &primes {
        let mut case = CaseReport::new(params(&[("family", json!("diag(t, t^p, 1) + s E23")), ("p", json!(q))]));
        match nonsmooth_center_report(q) {
            Ok(r) => {
                case.push(Check::exact("dim Lie Z", 1, r.dim_lie_z));
                case.push(Check::exact("dim Z_red", 0, r.dim_z_red));
                case.push(Check::exact("smooth", false, r.smooth));
            }
            Err(e) => case.push(error_check("center report", &e)),
        }
        cases.push(case);
        let mut foil = CaseReport::new(params(&[("family", json!("GL2")), ("p", json!(q))]));
        match GroupFamily::general_linear(2, Field::Prime(q as u32)).and_then(|f| center_report(&f)) {
            Ok(r) => {
                foil.push(Check::exact("dim Lie Z", 1, r.dim_lie_z));
                foil.push(Check::exact("dim Z_red", 1, r.dim_z_red));
                foil.push(Check::exact("smooth", true, r.smooth));
            }
            Err(e) => foil.push(error_check("center report", &e)),
        }
        cases.push(foil);
    }
    cases
}

fn flag_case(parts: &[usize], q: u64, expect: impl Fn(u128) -> Check) -> CaseReport {
    let jt = JordanType::new(parts.to_vec()).expect("valid partition");
    let mut case = CaseReport::new(params(&[
        ("n", json!(jt.n())),
        ("q", json!(q)),
        ("jordan_type", json!(jt.to_string())),
    ]));
    let x = jordan_nilpotent(&jt, Field::Prime(q as u32));
    match flags_preserved(&x, q) {
        Ok(c) => case.push(expect(c.preserved)),
        Err(e @ Error::FlagBudgetExceeded { .. }) => case.push(Check::skipped("flags preserved", &e.to_string())),
        Err(e) => case.push(error_check("flags preserved", &e)),
    }
    case
}

/// Complete flags of `F_q^n` stable under a nilpotent.
pub fn flags(p: &Params) -> Vec<CaseReport> {
    let regular_cells: Vec<(usize, u64)> = match (p.n, p.primes.is_empty()) {
        (None, true) => vec![(3, 2), (3, 3), (4, 2)],
        (n, _) => {
            let ns = n.map_or(vec![3, 4], |n| vec![n]);
            let qs = primes_or(p, &[2, 3]);
            ns.iter().flat_map(|&n| qs.iter().map(move |&q| (n, q))).collect()
        }
    };
    let mut cases: Vec<CaseReport> = regular_cells
        .iter()
        .map(|&(n, q)| flag_case(&[n], q, |k| Check::exact("flags preserved by regular X", 1, k)))
        .collect();
    if p.n.is_none() && p.primes.is_empty() {
        cases.push(flag_case(&[2, 1], 2, |k| Check {
            name: "type (2,1) preserves more than one flag".into(),
            expected: json!("> 1"),
            actual: json!(k),
            verdict: if k > 1 { Verdict::Pass } else { Verdict::Fail },
        }));
        cases.push(flag_case(&[1, 1, 1], 2, |k| Check::exact("X = 0 preserves every flag", 21, k)));
    }
    cases
}

fn random_weights(rng: &mut ChaCha8Rng) -> (Vec<(Character, usize)>, usize) {
    let rank = rng.random_range(1..=3);
    let count = rng.random_range(1..=5);
    let mut ws: Vec<(Character, usize)> = Vec::new();
    while ws.len() < count {
        let w: Character = (0..rank).map(|_| rng.random_range(-4..=4)).collect();
        if ws.iter().all(|(v, _)| *v != w) {
            ws.push((w, rng.random_range(1..=3)));
        }
    }
    let chosen = rng.random_range(0..count);
    (ws, chosen)
}

/// Tangent weights on projective space against the affine-chart count.
pub fn ptangent(p: &Params) -> Vec<CaseReport> {
    let mut fixed = CaseReport::new(params(&[("configurations", json!("fixed"))]));
    let examples: Vec<(&str, Vec<(Character, usize)>, usize, Vec<(Character, usize)>)> = vec![
        ("single weight of multiplicity 3", vec![(vec![5], 3)], 0, vec![(vec![0], 2)]),
        ("two lines", vec![(vec![1], 1), (vec![3], 1)], 0, vec![(vec![2], 1)]),
        (
            "weights 2, 4, 6(x2) at 2",
            vec![(vec![2], 1), (vec![4], 1), (vec![6], 2)],
            0,
            vec![(vec![2], 1), (vec![4], 2)],
        ),
    ];
    for (name, w, c, expected) in examples {
        fixed.push(match ptangent_weights(&w, c) {
            Ok(got) => Check::exact(name, expected, got),
            Err(e) => error_check(name, &e),
        });
    }
    let mut random = CaseReport::new(params(&[
        ("configurations", json!("random")),
        ("seed", json!(p.seed)),
    ]));
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut agree = 0;
    for _ in 0..PTANGENT_SAMPLES {
        let (w, c) = random_weights(&mut rng);
        if let (Ok(a), Ok(b)) = (ptangent_weights(&w, c), ptangent_weights_chart(&w, c)) {
            agree += (a == b) as usize;
        }
    }
    random.push(Check::exact("configurations agreeing with the chart", PTANGENT_SAMPLES, agree));
    vec![fixed, random]
}
