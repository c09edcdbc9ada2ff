use qplane::calculus::{del, delbar, Bidegree, CalculusParams};
use qplane::instanton::*;
use qplane::qalgebra::{AlgebraElement, Gen};
use qplane::scalars::{qint, FunScalar, Scalar};
use qplane::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn both() -> [CalculusParams; 2] {
    [CalculusParams::plus(), CalculusParams::minus()]
}

#[test]
fn every_curvature_step_passes_for_both_signs() {
    for p in both() {
        for r in verify_curvature(&p, None).unwrap() {
            assert!(r.passed, "s = {}: {} left {} terms: {}", p.s_sign(), r.id, r.residual_terms, r.detail);
        }
    }
}

#[test]
fn every_connection_step_passes_for_both_signs() {
    for p in both() {
        for r in verify_connection(&p, None).unwrap() {
            assert!(r.passed, "s = {}: {} left {} terms: {}", p.s_sign(), r.id, r.residual_terms, r.detail);
        }
    }
}

#[test]
fn curvature_is_anti_selfdual() {
    for p in both() {
        let ([f11, f12, f22], flags) = curvature_components(&p).unwrap();
        assert_eq!(flags, [true, true, true]);
        assert!(f12.is_zero());
        assert!(!f11.is_zero() && !f22.is_zero());
    }
}

#[test]
fn single_step_runs_alone() {
    let r = verify_curvature(&CalculusParams::plus(), Some("psi-del-phi")).unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].passed);
    assert!(matches!(verify_curvature(&CalculusParams::plus(), Some("no-such-step")), Err(Error::Config(_))));
}

#[test]
fn wrong_column_factor_is_detected() {
    // phi f(q^2 x) is not an isometry, so the split and F22^+ = 0 both fail
    let p = CalculusParams::plus();
    let pipeline = InstantonPipeline::new(p.clone(), InstantonData::with_factors(FunScalar::f(0), FunScalar::f(2)));
    let flags = pipeline.asd_flags().unwrap();
    assert!(!flags[2]);
    let split = pipeline.residuals("curvature-split").unwrap();
    assert!(split.iter().any(|r| !r.is_zero()));
}

#[test]
fn connection_vanishes_at_zero_angle() {
    let p = CalculusParams::plus();
    let pipeline = InstantonPipeline::new(p, InstantonData::degenerate());
    for row in pipeline.connection().unwrap() {
        for e in row {
            assert!(e.is_zero());
        }
    }
}

#[test]
fn rational_identities_vanish() {
    assert!(a_function().is_zero());
    assert!(b_function().is_zero());
    for (s0, th, x0) in [(1.1, 0.3, 0.2), (0.9, 0.7, 0.5), (1.3, 0.2, 0.1), (1.05, 1.1, 0.4)] {
        assert!(a_numeric(s0, th, x0).abs() < 1e-10);
        assert!(b_numeric(s0, th, x0).abs() < 1e-10);
    }
}

#[test]
fn x_grade_examples() {
    let x = AlgebraElement::x();
    assert_eq!(form_x_grade(&del(&x)).unwrap(), 1);
    assert_eq!(form_x_grade(&delbar(&x)).unwrap(), -1);
    assert_eq!(x_grade(&AlgebraElement::z(1)).unwrap(), 0);
    assert_eq!(x_grade(&AlgebraElement::z(2)).unwrap(), -1);
    assert_eq!(x_grade(&AlgebraElement::zs(3)).unwrap(), 1);
    assert_eq!(form_x_grade(&phi_closed()).unwrap(), -1);
    assert_eq!(form_x_grade(&phi_star_closed()).unwrap(), 1);
}

fn gen_grade(g: Gen) -> i32 {
    match (g.row(), g.col()) {
        (1, 1) | (2, 1) => 1,
        (3, 2) | (3, 3) => -1,
        _ => 0,
    }
}

#[test]
fn x_grade_is_additive() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let word = |rng: &mut StdRng| -> Vec<Gen> {
            (0..rng.gen_range(0..=2)).map(|_| Gen::from_index(rng.gen_range(0..9))).collect()
        };
        let (wa, wb) = (word(&mut rng), word(&mut rng));
        let (ga, gb): (i32, i32) = (wa.iter().map(|&g| gen_grade(g)).sum(), wb.iter().map(|&g| gen_grade(g)).sum());
        if (ga + gb).abs() > GRADE_WINDOW {
            continue;
        }
        let a = AlgebraElement::from_word(&wa, &Scalar::one());
        let b = AlgebraElement::from_word(&wb, &Scalar::one());
        let ab = &a * &b;
        if ab.is_zero() {
            continue;
        }
        assert_eq!(x_grade(&a).unwrap(), ga);
        assert_eq!(x_grade(&b).unwrap(), gb);
        assert_eq!(x_grade(&ab).unwrap(), ga + gb);
        checked += 1;
    }
}

#[test]
fn functions_move_through_forms() {
    let p = CalculusParams::plus();
    let x = AlgebraElement::x();
    let dx = MixedElement::core(del(&x)).unwrap();
    // del x f(x) = f(q^2 x) del x
    let lhs = dx.right_fun(&FunScalar::f(0));
    let rhs = dx.left_fun(&FunScalar::f(2));
    assert!((&lhs - &rhs).is_zero());
    // delbar x x = q^{-2} x delbar x, through the product of mixed elements
    let dbx = MixedElement::core(delbar(&x)).unwrap();
    let prod = dbx.mul(&MixedElement::fun(FunScalar::x()), &p);
    let expected = dbx.left_fun(&FunScalar::x()).scale(&Scalar::q_pow(-2));
    assert!((&prod - &expected).is_zero());
    // a plain algebra element of grade 0 commutes with functions
    let z1 = MixedElement::algebra(&AlgebraElement::z(1)).unwrap();
    assert!((&z1.right_fun(&FunScalar::f(0)) - &z1.left_fun(&FunScalar::f(0))).is_zero());
}

#[test]
fn powers_of_x_match_the_q_derivative() {
    let x = AlgebraElement::x();
    for n in 1..=5u32 {
        let xn = x.pow(n);
        let lower = x.pow(n - 1);
        let k = n as i32 - 1;
        // del x^n = [n] q^{n-1} x^{n-1} del x and delbar x^n = [n] q^{1-n} x^{n-1} delbar x
        let expected_del = del(&x).left_mul(&lower).scale(&(&qint(n as i64) * &Scalar::q_pow(k)));
        let expected_delbar = delbar(&x).left_mul(&lower).scale(&(&qint(n as i64) * &Scalar::q_pow(-k)));
        assert_eq!(del(&xn), expected_del, "n = {n}");
        assert_eq!(delbar(&xn), expected_delbar, "n = {n}");
        // the same through functions of x
        let g = MixedElement::fun(FunScalar::x_pow(n));
        assert!((&g.del().unwrap() - &MixedElement::core(del(&xn)).unwrap()).is_zero(), "n = {n}");
        assert!((&g.delbar().unwrap() - &MixedElement::core(delbar(&xn)).unwrap()).is_zero(), "n = {n}");
    }
}

#[test]
fn eta_vectors_are_proportional() {
    let v = eta_vector();
    let vp = eta_prime_vector();
    assert_eq!(v.bidegree(), Bidegree(1, 1));
    assert_eq!(v, vp.scale(&Scalar::q_pow(1)));
}

#[test]
fn phi_sum_formula_matches_closed_form() {
    assert_eq!(phi_form(), phi_closed());
}
