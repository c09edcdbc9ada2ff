use proptest::prelude::*;
use qplane::scalars::{qfactorial, qint, Laurent, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec((-4i64..=4, 1i64..=3, -6i32..=6, any::<bool>()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (n, d, e, imag)| {
            let mut t = &Scalar::ratio(n, d) * &Scalar::q_quarter(e);
            if imag {
                t = &t * &Scalar::i();
            }
            &acc + &t
        })
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_a_multiplicative_involution(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn monomials_are_invertible(n in 1i64..=5, d in 1i64..=5, e in -8i32..=8) {
        let m = &Scalar::ratio(n, d) * &Scalar::q_quarter(e);
        let inv = m.inverse().unwrap();
        prop_assert!((&m * &inv).is_one());
    }

    #[test]
    fn q_integer_recursion(n in -6i64..=6) {
        prop_assert_eq!(&qint(2) * &qint(n), &qint(n + 1) + &qint(n - 1));
        prop_assert_eq!(qint(-n), -qint(n));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in proptest::collection::vec((-3i32..=3, -3i128..=3), 1..4)) {
        let p = Laurent::from_terms(a);
        let d = Laurent::q_minus_qinv();
        prop_assert_eq!((&p * &d).div_exact(&d), Some(p));
    }
}

#[test]
fn q_numbers_at_small_arguments() {
    assert!(qint(0).is_zero());
    assert!(qint(1).is_one());
    assert_eq!(qint(2), &Scalar::q_pow(1) + &Scalar::q_pow(-1));
    assert_eq!(qfactorial(3).unwrap(), &qint(3) * &qint(2));
    assert!(qfactorial(-1).is_err());
    assert!(Scalar::zero().inverse().is_none());
}
