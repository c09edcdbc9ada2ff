use qplane::bundles::*;
use qplane::calculus::*;
use qplane::qalgebra::AlgebraElement;
use qplane::scalars::Scalar;

fn z(i: u8) -> AlgebraElement {
    AlgebraElement::z(i)
}

#[test]
fn psi_examples() {
    let m = monopole(1).unwrap();
    assert_eq!(m.generators(), vec![z(1), z(2), z(3)]);
    assert!(m.weights().iter().all(|w| w.is_one()));
    let m = monopole(-1).unwrap();
    let expect = vec![z(1).scale(&Scalar::q_pow(2)), z(2).scale(&Scalar::q_pow(1)), z(3)];
    assert_eq!(m.entries(), expect.as_slice());
    let m = monopole(0).unwrap();
    assert_eq!(m.rank(), 1);
    assert_eq!(m.projection_entry(0, 0), &AlgebraElement::one());
}

#[test]
fn monopoles_are_certified() {
    for n in -3..=3 {
        let m = monopole(n).unwrap();
        let a = n.unsigned_abs() as usize;
        assert_eq!(m.rank(), (a + 1) * (a + 2) / 2);
        assert_eq!(m.psi_dag_psi(), AlgebraElement::one());
    }
    assert!(MonopoleData::build(4, 3).is_err());
}

#[test]
fn curvature_small() {
    for params in [CalculusParams::plus(), CalculusParams::minus()] {
        for n in [-1, 0, 1] {
            let f = curvature_monopole(n, &params).unwrap();
            let expect = kahler_expected(&params).scale(&curvature_factor(n, params.s_sign()));
            assert_eq!(f, expect, "N = {n}, s = {}", params.s_sign());
        }
    }
}

#[test]
fn projections() {
    for n in -3..=3 {
        monopole(n).unwrap().check_projection().unwrap();
    }
}

#[test]
fn curvature_is_proportional_to_kahler() {
    for params in [CalculusParams::plus(), CalculusParams::minus()] {
        for n in [-3, -2, 2, 3] {
            let f = curvature_monopole(n, &params).unwrap();
            let expect = kahler_expected(&params).scale(&curvature_factor(n, params.s_sign()));
            assert_eq!(f, expect, "N = {n}, s = {}", params.s_sign());
        }
    }
}

#[test]
fn curvature_factor_examples() {
    assert!(curvature_factor(1, 1).is_one());
    assert!(curvature_factor(0, -1).is_zero());
    for s in [1, -1] {
        assert_eq!(curvature_factor(-1, s), -Scalar::q_half(3 * s + 2));
    }
}

#[test]
fn follows_identities() {
    for n in [-2, -1, 1, 2] {
        for r in follows_residuals(n).unwrap() {
            assert!(r.is_zero(), "N = {n}: {r}");
        }
    }
}

#[test]
fn dd_psi() {
    let p = AlgebraElement::p;
    for (n, a) in [(1, p(1, 1)), (-1, p(2, 3)), (0, p(1, 2)), (2, p(3, 1)), (-2, p(2, 2))] {
        let r = dd_psi_residual(n, &a).unwrap();
        assert!(r.is_zero(), "N = {n}: {r}");
    }
}

#[test]
fn left_leibniz() {
    let p = AlgebraElement::p;
    for n in [1, -1] {
        let m = monopole(n).unwrap();
        for eta in m.generators() {
            for a in [p(2, 3), p(1, 1), p(3, 2)] {
                let r = left_leibniz_residual(n, &a, &eta).unwrap();
                assert!(r.is_zero(), "N = {n}: {r}");
            }
        }
    }
}

#[test]
fn right_leibniz() {
    let p = AlgebraElement::p;
    for n in [1, -1] {
        let eta = monopole(n).unwrap().generators()[1].clone();
        let a = p(1, 3);
        let lhs = nabla(n, &(&eta * &a)).unwrap();
        let rhs = &nabla(n, &eta).unwrap().right_mul(&a) + &d(&a).left_mul(&eta);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn printed_involution_makes_d_antireal() {
    for a in [AlgebraElement::p(1, 2), AlgebraElement::p(2, 3), z(1)] {
        let da: Form = d(&a);
        assert_eq!(da.map(form_star), -&d(&a.star()));
        assert_eq!(da.map(real_star), d(&a.star()));
    }
}

#[test]
fn conjugation_bridge() {
    for n in [1, -1] {
        for eta in monopole(n).unwrap().generators() {
            let r = left_right_residual(n, &eta).unwrap();
            assert!(r.is_zero(), "N = {n}: {r}");
        }
    }
    assert!(nabla_left(0, &AlgebraElement::one()).unwrap().is_zero());
    assert!(nabla(0, &AlgebraElement::one()).unwrap().is_zero());
}

#[test]
fn hermitian_bridge() {
    let x = AlgebraElement::x();
    let w: Form = [del(&x), -&delbar(&x)].into_iter().collect();
    assert_eq!(w.map(real_star), -&w);
    for n in [1, -1] {
        for eta in monopole(n).unwrap().generators() {
            let r = hermitian_bridge_residual(n, &eta, &w).unwrap();
            assert!(r.is_zero(), "N = {n}: {r}");
            // the antihermitian case: (nabla eta + w eta)^* = nabla^l(eta^*) - eta^* w
            let lhs = (&nabla(n, &eta).unwrap() + &w.right_mul(&eta)).map(real_star);
            let rhs = &nabla_left(-n, &eta.star()).unwrap() - &w.left_mul(&eta.star());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn hermiticity() {
    for n in [1, -1] {
        let gens = monopole(n).unwrap().generators();
        for eta in &gens {
            for xi in &gens {
                let r = hermiticity_residual(n, eta, xi).unwrap();
                assert!(r.is_zero(), "N = {n}: {r}");
            }
        }
    }
}

#[test]
fn hom_into_l2() {
    // Psi_1^dag T Psi_{-1} spans the products z_i z_j, which are the generators of L_2
    let m = monopole(2).unwrap();
    let prods: Vec<AlgebraElement> = (1..=3).flat_map(|i| (1..=3).map(move |j| &z(i) * &z(j))).collect();
    assert_eq!(m.generators().len(), 6);
    for g in m.generators() {
        assert!(prods.contains(&g), "{g}");
    }
}
