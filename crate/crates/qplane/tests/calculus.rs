use qplane::calculus::*;
use qplane::qalgebra::AlgebraElement;
use qplane::sample::random_element;
use qplane::scalars::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn u(i: u8, j: u8) -> AlgebraElement {
    AlgebraElement::u(i, j)
}

fn both() -> [CalculusParams; 2] {
    [CalculusParams::plus(), CalculusParams::minus()]
}

fn form(b: Bidegree, comps: Vec<AlgebraElement>) -> FormElement {
    FormElement::new(b, comps).unwrap()
}

fn qh(n: i32) -> Scalar {
    Scalar::q_half(n)
}

#[test]
fn del_of_plane_generators() {
    let i = Scalar::i();
    for j in 1..=3 {
        for k in 1..=3 {
            let p = AlgebraElement::p(j, k);
            let zs = AlgebraElement::zs(j);
            let c = &i * &Scalar::q_pow(-1);
            let expected = form(Bidegree(1, 0), vec![(&zs * &u(2, k)).scale(&c), (&zs * &u(1, k)).scale(&c)]);
            assert_eq!(del(&p), expected, "del p_{j}{k}");
            let z = AlgebraElement::z(k);
            let expected = form(
                Bidegree(0, 1),
                vec![(&u(1, j).star() * &z).scale(&(&c * &qh(-1))), (&u(2, j).star() * &z).scale(&-(&c * &qh(1)))],
            );
            assert_eq!(delbar(&p), expected, "delbar p_{j}{k}");
        }
    }
}

#[test]
fn del_of_sphere_generators() {
    let c = &Scalar::i() * &qh(-3);
    for j in 1..=3 {
        let expected = form(Bidegree(1, 0), vec![u(2, j).scale(&c), u(1, j).scale(&c)]);
        assert_eq!(del(&AlgebraElement::z(j)), expected);
    }
    assert!(del(&AlgebraElement::one()).is_zero());
    assert!(delbar(&AlgebraElement::one()).is_zero());
}

#[test]
fn del_of_fake_plane_generators() {
    let c = &Scalar::i() * &Scalar::q_pow(-2);
    for k in 1..=3 {
        for l in 1..=3 {
            let a = &AlgebraElement::z(k) * &AlgebraElement::zs(l);
            let zs = AlgebraElement::zs(l);
            let expected = form(Bidegree(1, 0), vec![(&u(2, k) * &zs).scale(&c), (&u(1, k) * &zs).scale(&c)]);
            assert_eq!(del(&a), expected);
            let z = AlgebraElement::z(k);
            let expected = form(
                Bidegree(0, 1),
                vec![(&z * &u(1, l).star()).scale(&(&c * &qh(-1))), (&z * &u(2, l).star()).scale(&-(&c * &qh(1)))],
            );
            assert_eq!(delbar(&a), expected);
        }
    }
}

#[test]
fn kahler_form() {
    for params in both() {
        let full = kahler_full(&params);
        assert!(full.part(Bidegree(2, 0)).is_zero());
        assert!(full.part(Bidegree(0, 2)).is_zero());
        let w = kahler(&params);
        assert_eq!(w, kahler_expected(&params));
        for j in 1..=3 {
            for k in 1..=3 {
                let lhs = w.left_mul(&AlgebraElement::p(j, k));
                let parts: Vec<FormElement> = (1..=3)
                    .map(|l| wedge(&del(&AlgebraElement::p(j, l)), &delbar(&AlgebraElement::p(l, k)), &params))
                    .collect();
                assert_eq!(lhs, FormElement::sum(Bidegree(1, 1), &parts).unwrap(), "j={j} k={k}");
            }
        }
    }
}

#[test]
fn similarly_vanishing_sums() {
    for params in both() {
        for a in 1..=3 {
            for b in 1..=3 {
                let dd: Vec<FormElement> = (1..=3)
                    .map(|c| wedge(&del(&AlgebraElement::p(b, c)), &del(&AlgebraElement::p(c, a)), &params))
                    .collect();
                assert!(FormElement::sum(Bidegree(2, 0), &dd).unwrap().is_zero());
                let bb: Vec<FormElement> = (1..=3)
                    .map(|c| wedge(&delbar(&AlgebraElement::p(b, c)), &delbar(&AlgebraElement::p(c, a)), &params))
                    .collect();
                assert!(FormElement::sum(Bidegree(0, 2), &bb).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn explicit_mixed_product() {
    // del p_ij ^ delbar p_kl against the displayed 4-vector
    for params in both() {
        let s = params.s_sign();
        let (c1, c2) = (params.c(1), params.c(2));
        let ri = Scalar::r().inverse().unwrap();
        for (i, j, k, l) in [(1, 2, 3, 1), (2, 2, 1, 3), (3, 1, 2, 2)] {
            let lhs = wedge(&del(&AlgebraElement::p(i, j)), &delbar(&AlgebraElement::p(k, l)), &params);
            let (a, b) = (u(3, i).star(), u(3, l));
            let sand = |x: AlgebraElement| &(&a * &x) * &b;
            let m = |p: u8, r: u8| &u(p, j) * &u(r, k).star();
            let comps = vec![
                sand(m(2, 1).scale(&-(&qh(s - 1) * c1))),
                sand((&m(2, 2) - &m(1, 1)).scale(&(&(&qh(s) * c1) * &ri))),
                sand(m(1, 2).scale(&(&qh(s + 1) * c1))),
                sand(
                    (&m(2, 2).scale(&Scalar::q_pow(1)) + &m(1, 1).scale(&Scalar::q_pow(-1)))
                        .scale(&-(&(&qh(-3 * s) * c2) * &ri)),
                ),
            ];
            let expected = form(Bidegree(1, 1), comps).scale(&-Scalar::q_pow(-2));
            assert_eq!(lhs, expected);
        }
    }
}

fn basis_forms() -> Vec<FormElement> {
    Bidegree::all().flat_map(|b| (0..b.dim()).map(move |k| FormElement::basis(b, k))).collect()
}

#[test]
fn hodge_squares_and_eigenvalues() {
    for params in both() {
        for w in basis_forms() {
            let k = w.degree() as i64;
            let sign = Scalar::from_int(if k % 2 == 0 { 1 } else { -1 });
            assert_eq!(hodge(&hodge(&w, &params), &params), w.scale(&sign), "{w}");
        }
        let minus = Scalar::from_int(-1);
        for b in [Bidegree(2, 0), Bidegree(0, 2)] {
            let w = FormElement::basis(b, 0);
            assert_eq!(hodge(&w, &params), w.scale(&minus));
        }
        for k in 0..3 {
            let w = FormElement::basis(Bidegree(1, 1), k);
            assert_eq!(hodge(&w, &params), w);
        }
        let w = FormElement::basis(Bidegree(1, 1), 3);
        assert_eq!(hodge(&w, &params), w.scale(&minus));
    }
}

#[test]
fn hodge_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let params = CalculusParams::plus();
    for b in Bidegree::all() {
        let w = form(b, (0..b.dim()).map(|_| random_element(&mut rng, 2, 2)).collect());
        let sign = Scalar::from_int(if b.degree() % 2 == 0 { 1 } else { -1 });
        assert_eq!(hodge(&hodge(&w, &params), &params), w.scale(&sign));
    }
}

#[test]
fn star_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        for b in Bidegree::all() {
            let w = form(b, (0..b.dim()).map(|_| random_element(&mut rng, 2, 2)).collect());
            assert_eq!(form_star(&form_star(&w)), w);
        }
    }
    let a = u(1, 2);
    assert_eq!(form_star(&FormElement::function(a.clone())), FormElement::function(a.star()));
}

#[test]
fn wedge_is_associative_on_basis() {
    for params in both() {
        let basis = basis_forms();
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    let l = wedge(&wedge(a, b, &params), c, &params);
                    let r = wedge(a, &wedge(b, c, &params), &params);
                    assert_eq!(l, r, "{a} {b} {c}");
                }
            }
        }
    }
}

#[test]
fn star_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let params = CalculusParams::plus();
    let bds: Vec<Bidegree> = Bidegree::all().collect();
    for n in 0..50 {
        let (ba, bb) = (bds[n % 9], bds[(n * 4 + 1) % 9]);
        let a = form(ba, (0..ba.dim()).map(|_| random_element(&mut rng, 1, 2)).collect());
        let b = form(bb, (0..bb.dim()).map(|_| random_element(&mut rng, 1, 2)).collect());
        let lhs = form_star(&wedge(&a, &b, &params));
        let rhs = wedge(&form_star(&b), &form_star(&a), &params);
        let sign = if (a.degree() * b.degree()).is_multiple_of(2) { 1 } else { -1 };
        assert_eq!(lhs, rhs.scale(&Scalar::from_int(sign)), "{ba} {bb}");
    }
}

#[test]
fn hermitian_structure() {
    for params in both() {
        let w = kahler(&params);
        let c = &(&(&Scalar::q_pow(-4) * &Scalar::q_half(-6 * params.s_sign())) * &(params.c(2) * params.c(2)))
            * &Scalar::two();
        assert_eq!(hermitian(&w, &w).unwrap(), AlgebraElement::scalar(c));
        assert!(hermitian(&w, &FormElement::zero(Bidegree(1, 1))).unwrap().is_zero());
        assert!(asd_check(&w, &params).unwrap());
        assert!(asd_check(&FormElement::zero(Bidegree(1, 1)), &params).unwrap());
    }
}

#[test]
fn params_validation() {
    let r = Scalar::r();
    let bad = [Scalar::q_half(1) * r.clone(), Scalar::one(), Scalar::q_pow(1), r.clone(), Scalar::one()];
    assert!(CalculusParams::new(1, bad, -1).is_err());
    let wrong_c3 =
        [Scalar::q_half(1) * r.clone(), Scalar::one(), Scalar::q_pow(1), Scalar::one(), Scalar::q_half(1) * r.clone()];
    assert!(CalculusParams::new(1, wrong_c3, -1).is_err());
    let neg = [-(Scalar::q_half(1) * r.clone()), Scalar::one(), Scalar::q_pow(1), r.clone(), -(Scalar::q_half(1) * r)];
    assert!(CalculusParams::new(1, neg, -1).is_err());
}

#[test]
fn unnormalized_c0_breaks_hodge_on_top_holomorphic() {
    for s in [1, -1] {
        let r = Scalar::r();
        let c0 = Scalar::q_half(s) * r.clone();
        let c = [c0.clone(), Scalar::one(), Scalar::q_pow(s), r, c0];
        let params = CalculusParams::new(s, c, -1).unwrap();
        assert!(!params.is_hodge_normalized());
        assert!(CalculusParams::default_for(s).unwrap().is_hodge_normalized());
        for b in [Bidegree(2, 0), Bidegree(0, 2)] {
            let w = FormElement::basis(b, 0);
            assert_eq!(hodge(&hodge(&w, &params), &params), w.scale(&Scalar::q_pow(-s)));
        }
        let w = FormElement::basis(Bidegree(1, 1), 0);
        assert_eq!(hodge(&hodge(&w, &params), &params), w);
    }
}
