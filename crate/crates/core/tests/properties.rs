use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use regnilp_core::exactalg::{generic_linear_extract, DualScalar, PolyRing};
use regnilp_core::typea::{
    bicommutant, commutant, jordan_nilpotent, matrix_span, minimal_polynomial_degree,
    polynomial_span, springer_apply, springer_invert, JordanType, SpringerCoeffs,
};
use regnilp_core::{DenseMatrix, Field, Subspace};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Prime(2)),
        Just(Field::Prime(5)),
        Just(Field::Prime(13)),
        Just(Field::Rational),
    ]
}

fn matrix_strategy() -> impl Strategy<Value = DenseMatrix> {
    (field_strategy(), 1usize..=6, 1usize..=6).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |e| DenseMatrix::from_i64(f, r, c, &e).unwrap())
    })
}

fn nilpotent_strategy() -> impl Strategy<Value = DenseMatrix> {
    (field_strategy(), 1usize..=5).prop_flat_map(|(f, n)| {
        (
            prop::collection::vec(-3i64..=3, n * n),
            prop::collection::vec(-3i64..=3, n * n),
        )
            .prop_filter_map("conjugator must be invertible", move |(s, p)| {
                let mut upper = DenseMatrix::from_i64(f, n, n, &s).unwrap();
                for i in 0..n {
                    for j in 0..=i {
                        upper.set_i64(i, j, 0);
                    }
                }
                let p = DenseMatrix::from_i64(f, n, n, &p).unwrap();
                let pinv = p.inverse().ok()?;
                Some(p.mul(&upper).unwrap().mul(&pinv).unwrap())
            })
    })
}

fn coeffs_strategy(f: Field) -> impl Strategy<Value = SpringerCoeffs> {
    prop::collection::vec(-6i64..=6, 1..=5)
        .prop_filter_map("a_1 must be invertible", move |a| SpringerCoeffs::from_i64(f, &a).ok())
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        let k = m.nullspace();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn row_space_is_canonical(m in matrix_strategy()) {
        let s = m.row_space();
        let again = Subspace::from_matrix(s.basis_matrix());
        prop_assert_eq!(&s, &again);
        prop_assert_eq!(s.dim(), m.rank());
        for row in m.row_vectors() {
            prop_assert!(s.contains(&row).unwrap());
        }
    }

    #[test]
    fn transpose_preserves_rank(m in matrix_strategy()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn springer_round_trip(
        (x, c) in nilpotent_strategy().prop_flat_map(|x| {
            let f = x.field();
            (Just(x), coeffs_strategy(f))
        })
    ) {
        let u = springer_apply(&c, &x).unwrap();
        prop_assert!(u.sub(&DenseMatrix::identity(x.field(), x.rows())).unwrap().is_nilpotent());
        prop_assert_eq!(springer_invert(&c, &u).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn dual_numbers_differentiate_polynomials(
        coeffs in prop::collection::vec(-5i64..=5, 1..6),
        a in -5i64..=5,
        p in prop_oneof![Just(Field::Prime(7)), Just(Field::Rational)],
    ) {
        // f(a + ε) = f(a) + f'(a) ε
        let eval = |x: &DualScalar| {
            let mut acc = DualScalar::constant(p.zero());
            for &c in coeffs.iter().rev() {
                acc = &(&acc * x) + &DualScalar::constant(p.from_i64(c));
            }
            acc
        };
        let fa: i64 = coeffs.iter().rev().fold(0, |acc, &c| acc * a + c);
        let dfa: i64 = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| i as i64 * c * a.pow(i as u32 - 1))
            .sum();
        let got = eval(&DualScalar::new(p.from_i64(a), p.one()).unwrap());
        prop_assert_eq!(got.a, p.from_i64(fa));
        prop_assert_eq!(got.b, p.from_i64(dfa));
    }

    #[test]
    fn linear_extract_solutions_specialize(
        c in prop::collection::vec(-3i64..=3, 4),
        t in -4i64..=4,
        s in -4i64..=4,
    ) {
        // conditions c0 t y1 + c1 y2 and c2 s y1 + c3 t s y2 must vanish for
        // every (t, s); any nullspace vector kills them at a sample point
        let f = Field::Prime(13);
        let ring = PolyRing::new(f, &["t", "s", "y1", "y2"]);
        let (tv, sv, y1, y2) = (
            ring.var("t").unwrap(),
            ring.var("s").unwrap(),
            ring.var("y1").unwrap(),
            ring.var("y2").unwrap(),
        );
        let k = |i: usize| f.from_i64(c[i]);
        let e1 = tv.mul(&y1).unwrap().scale(&k(0)).unwrap().add(&y2.scale(&k(1)).unwrap()).unwrap();
        let e2 = sv
            .mul(&y1)
            .unwrap()
            .scale(&k(2))
            .unwrap()
            .add(&tv.mul(&sv).unwrap().mul(&y2).unwrap().scale(&k(3)).unwrap())
            .unwrap();
        let m = generic_linear_extract(&[e1.clone(), e2.clone()], &["y1", "y2"]).unwrap();
        let sol = if m.rows() == 0 { DenseMatrix::zeros(f, 0, 2).nullspace() } else { m.nullspace() };
        for v in sol.basis_vectors() {
            let point = [f.from_i64(t), f.from_i64(s), v[0].clone(), v[1].clone()];
            prop_assert!(e1.eval(&point).unwrap().is_zero());
            prop_assert!(e2.eval(&point).unwrap().is_zero());
        }
        let expected_dim = 2 - usize::from(c[0] != 0 || c[2] != 0) - usize::from(c[1] != 0 || c[3] != 0);
        prop_assert_eq!(sol.dim(), expected_dim);
    }
}

#[test]
fn commutant_dimension_formula() {
    for f in [Field::Rational, Field::Prime(2), Field::Prime(3), Field::Prime(7)] {
        for n in 1..=6 {
            for jt in JordanType::all(n) {
                let x = jordan_nilpotent(&jt, f);
                let c = commutant(&x).unwrap();
                let conj_squares: usize = jt.conjugate().parts().iter().map(|l| l * l).sum();
                assert_eq!(c.len(), conj_squares, "{jt} over {f}");
            }
        }
    }
}

#[test]
fn bicommutant_is_polynomial_span() {
    for f in [Field::Rational, Field::Prime(5)] {
        for n in 1..=5 {
            for jt in JordanType::all(n) {
                let x = jordan_nilpotent(&jt, f);
                let d = minimal_polynomial_degree(&x).unwrap();
                assert_eq!(d, jt.parts()[0]);
                let b = bicommutant(&x).unwrap();
                assert_eq!(matrix_span(f, n, &b).unwrap(), polynomial_span(&x, d).unwrap(), "{jt}");
            }
        }
    }
}
