//! Known values from the classification tables and small hand computations.

use regnilp_core::centralgebra::{
    ker_ad_power, lie_center, lie_centralizer, lie_normalizer, regular_report, weight_multiset,
};
use regnilp_core::chevalley::ChevalleyAlgebra;
use regnilp_core::rootsys::{classify_prime, exponents_by_height, PrimeClass};
use regnilp_core::typea::{
    flags_preserved, jordan_nilpotent, nonsmooth_center_report, ptangent_weights, JordanType,
};
use regnilp_core::{Field, RootKind, RootSystem, Subspace};

use RootKind::*;

fn exponent_table() -> Vec<(RootKind, usize, Vec<u32>)> {
    let mut t: Vec<(RootKind, usize, Vec<u32>)> = Vec::new();
    for r in 1..=7 {
        t.push((A, r, (1..=r as u32).collect()));
    }
    for r in 2..=5 {
        t.push((B, r, (0..r as u32).map(|i| 2 * i + 1).collect()));
    }
    for r in 3..=5 {
        t.push((C, r, (0..r as u32).map(|i| 2 * i + 1).collect()));
    }
    t.push((D, 4, vec![1, 3, 3, 5]));
    t.push((D, 5, vec![1, 3, 4, 5, 7]));
    t.push((D, 6, vec![1, 3, 5, 5, 7, 9]));
    t.push((G, 2, vec![1, 5]));
    t.push((F, 4, vec![1, 5, 7, 11]));
    t.push((E, 6, vec![1, 4, 5, 7, 8, 11]));
    t.push((E, 7, vec![1, 5, 7, 9, 11, 13, 17]));
    t.push((E, 8, vec![1, 7, 11, 13, 17, 19, 23, 29]));
    t
}

#[test]
fn exponents_match_tables() {
    for (k, r, exps) in exponent_table() {
        let rs = RootSystem::new(k, r).unwrap();
        let data = exponents_by_height(&rs);
        assert_eq!(data.exponents, exps, "{k}{r}");
        assert_eq!(data.coxeter_number, exps.last().unwrap() + 1, "{k}{r}");
        assert_eq!(rs.num_positive() as u32, exps.iter().sum::<u32>(), "{k}{r}");
    }
}

#[test]
fn weyl_group_orders() {
    let fact = |n: usize| (1..=n).product::<usize>();
    for r in 1..=5 {
        assert_eq!(RootSystem::new(A, r).unwrap().weyl_group_order(), fact(r + 1));
    }
    for r in 2..=4 {
        assert_eq!(RootSystem::new(B, r).unwrap().weyl_group_order(), (1 << r) * fact(r));
    }
    assert_eq!(RootSystem::new(D, 4).unwrap().weyl_group_order(), 192);
    assert_eq!(RootSystem::new(G, 2).unwrap().weyl_group_order(), 12);
    assert_eq!(RootSystem::new(F, 4).unwrap().weyl_group_order(), 1152);
}

#[test]
fn prime_classes() {
    let cases = [
        (A, 1, 2, PrimeClass::GoodNotVeryGood),
        (A, 2, 3, PrimeClass::GoodNotVeryGood),
        (A, 2, 2, PrimeClass::VeryGood),
        (A, 4, 5, PrimeClass::GoodNotVeryGood),
        (B, 3, 2, PrimeClass::Bad),
        (B, 3, 3, PrimeClass::VeryGood),
        (C, 3, 2, PrimeClass::Bad),
        (D, 4, 2, PrimeClass::Bad),
        (D, 4, 3, PrimeClass::VeryGood),
        (G, 2, 3, PrimeClass::Bad),
        (G, 2, 5, PrimeClass::VeryGood),
        (F, 4, 3, PrimeClass::Bad),
        (E, 6, 3, PrimeClass::Bad),
        (E, 6, 5, PrimeClass::VeryGood),
        (E, 8, 5, PrimeClass::Bad),
        (E, 8, 7, PrimeClass::VeryGood),
    ];
    for (k, r, p, want) in cases {
        assert_eq!(classify_prime(k, r, p).unwrap(), want, "{k}{r} at {p}");
    }
}

fn algebra(k: RootKind, r: usize, p: u64) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(&RootSystem::new(k, r).unwrap())
        .unwrap()
        .reduce_mod(p)
        .unwrap()
}

#[test]
fn chevalley_dimensions() {
    for (k, r, dim) in [(A, 2, 8), (B, 2, 10), (G, 2, 14), (F, 4, 52), (E, 6, 78)] {
        assert_eq!(algebra(k, r, 7).dim(), dim, "{k}{r}");
    }
}

#[test]
fn centers() {
    assert_eq!(lie_center(&algebra(A, 2, 3)).unwrap().dim(), 1);
    assert_eq!(lie_center(&algebra(A, 2, 7)).unwrap().dim(), 0);
    assert_eq!(lie_center(&algebra(A, 1, 7)).unwrap().dim(), 0);
    assert_eq!(lie_center(&algebra(A, 1, 2)).unwrap().dim(), 1);
}

#[test]
fn small_centralizers() {
    let a2 = algebra(A, 2, 7);
    let x = a2.regular_nilpotent().coords;
    let g = a2.canonical_grading();
    let c = lie_centralizer(&a2, &x).unwrap();
    assert_eq!(weight_multiset(&c, &g).unwrap(), vec![2, 4]);
    assert_eq!(ker_ad_power(&a2, &x, 2).unwrap().dim(), 4);
    let n = lie_normalizer(&a2, &c).unwrap();
    assert_eq!(weight_multiset(&n, &g).unwrap(), vec![0, 2, 2, 4]);

    let a3 = algebra(A, 3, 7);
    let x3 = a3.regular_nilpotent().coords;
    assert_eq!(ker_ad_power(&a3, &x3, 2).unwrap().dim(), 6);

    let b2 = algebra(B, 2, 7);
    let xb = b2.regular_nilpotent().coords;
    let cb = lie_centralizer(&b2, &xb).unwrap();
    assert_eq!(lie_normalizer(&b2, &cb).unwrap().dim(), 4);

    let a1 = algebra(A, 1, 5);
    let whole = Subspace::whole(a1.field(), a1.dim());
    assert_eq!(weight_multiset(&whole, &a1.canonical_grading()).unwrap(), vec![-2, 0, 2]);
}

#[test]
fn regular_report_examples() {
    let r = regular_report(A, 2, 7).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.weights_c, vec![2, 4]);

    let r = regular_report(G, 2, 7).unwrap();
    assert_eq!(r.weights_c, vec![2, 10]);
    assert_eq!(r.weights_n_mod_c, vec![0, 8]);

    let r = regular_report(A, 1, 5).unwrap();
    assert_eq!((r.dim_c, r.dim_n), (1, 2));
    assert_eq!(r.weights_n_mod_c, vec![0]);
}

#[test]
fn regular_report_e6_at_7() {
    let r = regular_report(E, 6, 7).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.weights_c, vec![2, 8, 10, 14, 16, 22]);
}

#[test]
fn bad_prime_reports_fail_as_data() {
    // the regular nilpotent of G2 at p = 3 has a larger centralizer
    let r = regular_report(G, 2, 3).unwrap();
    assert_eq!(r.prime_class, PrimeClass::Bad);
    assert!(r.dim_c > 2);
    assert!(r.verdicts().iter().all(|c| c.verdict != regnilp_core::Verdict::Fail));
}

#[test]
fn nonsmooth_example() {
    for p in [2, 3, 5] {
        let r = nonsmooth_center_report(p).unwrap();
        assert_eq!((r.dim_lie_z, r.dim_z_red, r.smooth), (1, 0, false));
    }
}

#[test]
fn flag_counts() {
    let f2 = Field::Prime(2);
    let zero = jordan_nilpotent(&JordanType::new(vec![1, 1, 1]).unwrap(), f2);
    assert_eq!(flags_preserved(&zero, 2).unwrap().preserved, 21);
    let reg = jordan_nilpotent(&JordanType::regular(3).unwrap(), f2);
    assert_eq!(flags_preserved(&reg, 2).unwrap().preserved, 1);
}

#[test]
fn ptangent_example() {
    let w = [(vec![2], 1), (vec![4], 1), (vec![6], 2)];
    assert_eq!(ptangent_weights(&w, 0).unwrap(), vec![(vec![2], 1), (vec![4], 2)]);
}
