use proptest::prelude::*;
use qplane::cli::{core_residuals, Sampling, FAMILY_BOUND};
use qplane::qalgebra::{random_su3, ring, AlgebraElement, ClassicalPoint, Gen, RawExpr};
use qplane::scalars::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn rewrite_system_is_confluent_up_to_the_bound() {
    let report = ring().system().check_confluence(FAMILY_BOUND).unwrap();
    assert!(report.confluent, "{:?}", report.failures);
    assert!(report.failures.is_empty());
    assert_eq!(report.rule_count(), 36 + FAMILY_BOUND);
    assert!(report.critical_pairs > 0);
    assert_eq!(report.monomial_order, "deglex u12<u13<u21<u23<u31<u32<u11<u22<u33");
}

#[test]
fn without_the_cubic_rule_the_determinant_is_stuck() {
    let quad = ring().system().without_cubic();
    let det = quad.rewriter(0).unwrap().reduce(quad.determinant().clone());
    assert_eq!(det.len(), 6);
    let full = ring().system();
    let det = full.rewriter(FAMILY_BOUND).unwrap().reduce(full.determinant().clone());
    assert_eq!(det.len(), 1);
    assert!(det.keys().next().unwrap().is_empty());
}

#[test]
fn orthogonality_and_trace_hold_exactly() {
    for id in
        ["orthogonality-rows", "orthogonality-rows-starred", "orthogonality-columns", "orthogonality-columns-starred"]
    {
        let residuals = core_residuals(id, &Sampling::default()).unwrap();
        assert_eq!(residuals.len(), 9, "{id}");
        assert!(residuals.iter().all(|r| r.is_zero()), "{id}");
    }
    assert!(core_residuals("q-trace", &Sampling::default()).unwrap().iter().all(|r| r.is_zero()));
}

#[test]
fn sphere_relations() {
    let (z, zs) = (AlgebraElement::z, AlgebraElement::zs);
    let q = Scalar::q_pow(1);
    for i in 1..=3 {
        for j in i + 1..=3 {
            assert_eq!(&z(i) * &z(j), (&z(j) * &z(i)).scale(&q));
        }
    }
    let norm = AlgebraElement::sum(&(1..=3).map(|i| &z(i) * &zs(i)).collect::<Vec<_>>());
    assert_eq!(norm, AlgebraElement::one());
    assert_eq!(&zs(1) * &z(1), AlgebraElement::x());
}

#[test]
fn classical_oracle_agrees_with_raw_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let gens: Vec<Gen> = Gen::all().collect();
    let exprs: Vec<RawExpr> = (0..20)
        .map(|k| RawExpr {
            terms: (0..3)
                .map(|t| {
                    let word = (0..(k + t) % 5).map(|n| gens[(7 * k + 3 * t + 5 * n) % 9]).collect();
                    (word, Scalar::from_int(t as i64 + 1))
                })
                .collect(),
        })
        .collect();
    for _ in 0..10 {
        let point = ClassicalPoint::new(random_su3(&mut rng), 0.3).unwrap();
        for e in &exprs {
            let (a, b) = (point.eval(&e.normal_form()), point.eval_raw(e));
            assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        }
    }
}

#[test]
fn star_of_the_corner_is_a_minor() {
    let u = AlgebraElement::u;
    let minor = &(&u(1, 1) * &u(2, 2)) - &(&u(1, 2) * &u(2, 1)).scale(&Scalar::q_pow(1));
    assert_eq!(u(3, 3).star(), minor);
}

fn word() -> impl Strategy<Value = AlgebraElement> {
    proptest::collection::vec(0u8..9, 0..4).prop_map(|letters| {
        let gens: Vec<Gen> = letters.into_iter().map(Gen::from_index).collect();
        AlgebraElement::from_word(&gens, &Scalar::one())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in word(), b in word(), c in word()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(a in word(), b in word()) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
    }

    #[test]
    fn normal_forms_are_fixed_points(a in word(), b in word()) {
        let ab = &a * &b;
        let again = AlgebraElement::sum(
            &ab.words().iter().map(|(w, c)| AlgebraElement::from_word(w, c)).collect::<Vec<_>>(),
        );
        prop_assert_eq!(again, ab);
    }
}
