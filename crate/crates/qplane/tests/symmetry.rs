use qplane::qalgebra::{AlgebraElement, NWord};
use qplane::sample::{random_element, random_uq_word};
use qplane::scalars::Scalar;
use qplane::symmetry::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

fn u(i: u8, j: u8) -> AlgebraElement {
    AlgebraElement::u(i, j)
}

fn w(s: &str) -> UqWord {
    s.parse().unwrap()
}

fn all_gens() -> Vec<AlgebraElement> {
    (1..=3).flat_map(|i| (1..=3).map(move |j| u(i, j))).collect()
}

#[test]
fn right_action_table() {
    assert_eq!(act_right(&w("E1"), &u(2, 3)), u(1, 3));
    assert_eq!(act_right(&w("K1"), &u(1, 3)), u(1, 3).scale(&Scalar::q_half(-1)));
    assert!(act_right(&w("E2"), &AlgebraElement::one()).is_zero());
    assert_eq!(act_right(&w("F1"), &u(1, 1)), u(2, 1));
    assert_eq!(act_right(&w("K1^-1*K1"), &u(2, 2)), u(2, 2));
}

#[test]
fn left_action_table() {
    assert_eq!(act_left(&w("E1"), &u(2, 1)), u(2, 2));
    // K_2 |> u^3_3 = q^{(delta_{3,3} - delta_{2,3})/2} u^3_3
    assert_eq!(act_left(&w("K2"), &u(3, 3)), u(3, 3).scale(&Scalar::q_half(1)));
    assert!(act_left(&w("F2"), &AlgebraElement::one()).is_zero());
}

#[test]
fn parse_words() {
    assert_eq!(w("K1*K2^2").0, vec![UqGen::K1, UqGen::K2, UqGen::K2]);
    assert_eq!(w("K1^-1").0, vec![UqGen::K1Inv]);
    assert!("E3".parse::<UqWord>().is_err());
    assert!("E1^-1".parse::<UqWord>().is_err());
    assert_eq!(w("E2*E1").to_string(), "E2*E1");
}

#[test]
fn subalgebra_membership() {
    assert!(is_in_sphere(&AlgebraElement::z(2)));
    assert!(is_in_plane(&AlgebraElement::p(2, 3)));
    assert!(!is_in_sphere(&u(1, 1)));
    assert!(!is_in_plane(&AlgebraElement::z(1)));
    for i in 1..=3 {
        for j in 1..=3 {
            assert!(is_in_plane(&AlgebraElement::p(i, j)));
        }
    }
}

fn uq_coproduct(x: &UqWord) -> Vec<(UqWord, UqWord)> {
    let mut out = vec![(UqWord::default(), UqWord::default())];
    for &g in &x.0 {
        let parts: Vec<(UqGen, UqGen)> = match g {
            UqGen::E1 | UqGen::F1 => vec![(g, UqGen::K1), (UqGen::K1Inv, g)],
            UqGen::E2 | UqGen::F2 => vec![(g, UqGen::K2), (UqGen::K2Inv, g)],
            k => vec![(k, k)],
        };
        out = out
            .iter()
            .flat_map(|(a, b)| {
                parts.iter().map(move |(p, r)| {
                    let mut a = a.clone();
                    let mut b = b.clone();
                    a.0.push(*p);
                    b.0.push(*r);
                    (a, b)
                })
            })
            .collect();
    }
    out
}

#[test]
fn module_algebra_compatibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let x = random_uq_word(&mut rng, 2);
        let a = random_element(&mut rng, 2, 2);
        let b = random_element(&mut rng, 2, 2);
        let lhs = act_right(&x, &(&a * &b));
        let rhs = AlgebraElement::sum(
            uq_coproduct(&x).iter().map(|(x1, x2)| &act_right(x1, &a) * &act_right(x2, &b)).collect::<Vec<_>>().iter(),
        );
        assert_eq!(lhs, rhs, "X = {x}, a = {a}, b = {b}");
        let lhs = act_left(&x, &(&a * &b));
        let rhs = AlgebraElement::sum(
            uq_coproduct(&x).iter().map(|(x1, x2)| &act_left(x1, &a) * &act_left(x2, &b)).collect::<Vec<_>>().iter(),
        );
        assert_eq!(lhs, rhs, "X = {x}, a = {a}, b = {b}");
    }
}

#[test]
fn coproduct_of_generator() {
    let expected = (1..=3).fold(TensorElement::zero(), |acc, k| &acc + &TensorElement::pure(&u(1, k), &u(k, 2)));
    assert_eq!(coproduct(&u(1, 2)), expected);
    assert_eq!(coproduct(&AlgebraElement::one()), TensorElement::pure(&AlgebraElement::one(), &AlgebraElement::one()));
    assert!(counit(&AlgebraElement::one()).is_one());
    assert!(counit(&u(1, 2)).is_zero());
    assert!(counit(&(&u(1, 1) * &u(2, 2))).is_one());
}

fn single(v: NWord) -> AlgebraElement {
    AlgebraElement::from_terms(vec![(v, Scalar::one())])
}

type Triple = FxHashMap<(NWord, NWord, NWord), Scalar>;

fn add_triple(acc: &mut Triple, k: (NWord, NWord, NWord), c: Scalar) {
    let slot = acc.entry(k).or_default();
    *slot = &*slot + &c;
}

fn clean(mut t: Triple) -> Triple {
    t.retain(|_, c| !c.is_zero());
    t
}

/// `(f (x) id)` with `f` valued in tensors.
fn expand_left(t: &TensorElement, f: impl Fn(&AlgebraElement) -> TensorElement) -> Triple {
    let mut acc = Triple::default();
    for ((a, b), c) in t.terms() {
        for ((x, y), d) in f(&single(*a)).terms() {
            add_triple(&mut acc, (*x, *y, *b), c * d);
        }
    }
    clean(acc)
}

/// `(id (x) f)` with `f` valued in tensors.
fn expand_right(t: &TensorElement, f: impl Fn(&AlgebraElement) -> TensorElement) -> Triple {
    let mut acc = Triple::default();
    for ((a, b), c) in t.terms() {
        for ((x, y), d) in f(&single(*b)).terms() {
            add_triple(&mut acc, (*a, *x, *y), c * d);
        }
    }
    clean(acc)
}

#[test]
fn coassociativity() {
    let mut samples = all_gens();
    samples.push(&u(1, 2) * &u(3, 1));
    samples.push(AlgebraElement::x());
    for a in &samples {
        let d = coproduct(a);
        assert_eq!(expand_left(&d, coproduct), expand_right(&d, coproduct), "a = {a}");
    }
}

#[test]
fn antipode_axioms() {
    for i in 1..=3 {
        for j in 1..=3 {
            let d = coproduct(&u(i, j));
            let delta = if i == j { AlgebraElement::one() } else { AlgebraElement::zero() };
            assert_eq!(d.map_legs(antipode, |b| b.clone()).multiply(), delta);
            assert_eq!(d.map_legs(|b| b.clone(), antipode).multiply(), delta);
            assert_eq!(antipode(&antipode_inv(&u(i, j))), u(i, j));
            assert_eq!(antipode_inv(&antipode(&u(i, j))), u(i, j));
        }
    }
    let a = &u(1, 2) * &u(2, 3);
    assert_eq!(antipode(&a), &antipode(&u(2, 3)) * &antipode(&u(1, 2)));
}

#[test]
fn left_coaction() {
    let mut samples = all_gens();
    samples.push(AlgebraElement::x());
    for a in &samples {
        let dl = coaction_l(a);
        assert_eq!(dl, coaction_l_literal(a), "a = {a}");
        assert_eq!(expand_right(&dl, coaction_l), expand_left(&dl, coproduct), "a = {a}");
    }
    let one = AlgebraElement::one();
    assert_eq!(coaction_l(&one), TensorElement::pure(&one, &one));
}

#[test]
fn coaction_of_x() {
    let mut expected = TensorElement::zero();
    for j in 1..=3u8 {
        for k in 1..=3u8 {
            let left = (&u(1, k).star() * &u(1, j)).scale(&Scalar::q_pow(-2 * (k as i32 - 1)));
            expected = &expected + &TensorElement::pure(&left, &AlgebraElement::p(j, k));
        }
    }
    assert_eq!(coaction_l(&AlgebraElement::x()), expected);
}

#[test]
fn coaction_commutes_with_right_action() {
    for a in all_gens() {
        for x in ["E1", "F2", "K1"] {
            let x = w(x);
            let lhs = coaction_l(&act_right(&x, &a));
            let rhs = coaction_l(&a).map_legs(|b| b.clone(), |b| act_right(&x, b));
            assert_eq!(lhs, rhs, "X = {x}, a = {a}");
        }
    }
}
