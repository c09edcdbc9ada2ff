//! Residuals of the algebraic, symmetry, calculus, Kaehler and monopole identities.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::bundles::{
    curvature_factor, curvature_monopole, dd_psi_residual, follows_residuals, hermiticity_residual,
    left_leibniz_residual, left_right_residual, monopole,
};
use crate::calculus::*;
use crate::families::sphere_relation_residuals;
use crate::qalgebra::{random_su3, ring, AlgebraElement, ClassicalPoint, Gen, NWord, RawExpr};
use crate::report::Residual;
use crate::sample::{random_element, random_uq_word, random_word};
use crate::scalars::Scalar;
use crate::symmetry::*;
use crate::Error;

use super::suite::{Sampling, FAMILY_BOUND};

pub const CORE_STEPS: &[(&str, &str)] = &[
    ("confluence", "every critical pair of the quadratic rules and of the cubic family x y^b z joins"),
    ("cubic-negative-control", "without the cubic rule the quantum determinant has a normal form other than 1"),
    ("orthogonality-rows", "sum_i u^a_i (u^b_i)^* = delta_ab"),
    ("orthogonality-rows-starred", "sum_i q^{2(a-i)} (u^a_i)^* u^b_i = delta_ab"),
    ("orthogonality-columns", "sum_i q^{2(i-b)} u^i_a (u^i_b)^* = delta_ab"),
    ("orthogonality-columns-starred", "sum_i (u^i_a)^* u^i_b = delta_ab"),
    ("q-trace", "q^4 p_11 + q^2 p_22 + p_33 = 1"),
    ("sphere-relations", "z_i z_j = q z_j z_i (i < j), z_i^* z_j = q z_j z_i^* (i != j), [z_i^*, z_i] = (1 - q^2) sum_{j<i} z_j z_j^*, sum_i z_i z_i^* = 1"),
    ("star-involution", "(a^*)^* = a and (ab)^* = b^* a^*"),
    ("normal-form-idempotent", "reducing the words of a normal form again returns it"),
    ("classical-oracle", "at q = 1 a normal form and its raw word agree on random SU(3) matrices"),
    ("classical-determinant", "the quantum determinant is 1 exactly and evaluates to 1 on SU(3) at q = 1"),
];

pub const SYMMETRY_STEPS: &[(&str, &str)] = &[
    ("module-algebra-right", "(ab) <| X = (a <| X_(1)) (b <| X_(2))"),
    ("module-algebra-left", "X |> (ab) = (X_(1) |> a) (X_(2) |> b)"),
    ("coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta"),
    ("counit", "(eps (x) id) Delta = id = (id (x) eps) Delta"),
    ("antipode", "m (S (x) id) Delta(u^i_j) = delta_ij = m (id (x) S) Delta(u^i_j), S S^{-1} = S^{-1} S = id"),
    ("coaction-coassociative", "(id (x) Delta_L) Delta_L = (Delta (x) id) Delta_L, Delta_L = (id (x) S) Delta S^{-1}"),
    ("coaction-equivariant", "Delta_L(a <| X) = (id (x) <| X) Delta_L(a)"),
    ("invariant-subalgebras", "z_i lie in S^5_q and p_ij lie in CP^2_q"),
];

pub const CALCULUS_STEPS: &[(&str, &str)] = &[
    ("del-sphere", "del z_j = i q^{-3/2} (u^2_j, u^1_j)"),
    ("del-plane", "del p_jk = i q^{-1} (z_j^* u^2_k, z_j^* u^1_k), delbar p_jk = i q^{-1} (q^{-1/2} (u^1_j)^* z_k, -q^{1/2} (u^2_j)^* z_k)"),
    ("leibniz", "del(ab) = (del a) b + a del b and delbar(ab) = (delbar a) b + a delbar b on CP^2_q"),
    ("vanishing-sums", "sum_c del p_bc ^ del p_ca = 0 = sum_c delbar p_bc ^ delbar p_ca"),
    ("mixed-product", "del p_ij ^ delbar p_kl = -q^{-2} (u^3_i)^* v u^3_l with v the displayed 4-vector"),
    ("wedge-associative", "(a ^ b) ^ c = a ^ (b ^ c) on basis forms"),
    ("star-involution", "(w^*)^* = w"),
    ("star-antimultiplicative", "(a ^ b)^* = (-1)^{|a||b|} b^* ^ a^*"),
    ("hodge-square", "hodge^2 = (-1)^k on forms of degree k"),
    ("hodge-eigenvalues", "hodge = -1 on Omega^{2,0} + Omega^{0,2}, +1 on Omega^{1,1}_v, -1 on Omega^{1,1}_s"),
];

pub const KAHLER_STEPS: &[(&str, &str)] = &[
    ("kahler-form", "omega_q = q^{-2} q^{-3s/2} c_2 [2]^{1/2} (0,0,0,1)^t"),
    ("kahler-type", "i sum_jk del p_jk ^ delbar p_kj has no (2,0) or (0,2) part"),
    ("kahler-useful", "p_jk omega_q = sum_l del p_jl ^ delbar p_lk for all j, k"),
    ("kahler-asd", "omega_q is anti-selfdual and (omega_q, omega_q) = 2 q^{-4} q^{-3s} c_2^2"),
];

pub const MONOPOLE_STEPS: &[(&str, &str)] = &[
    ("curvature-N=0", "F_N = q^{N-1} [N] omega_q, N = 0"),
    ("curvature-N=1", "F_N = q^{N-1} [N] omega_q, N = 1"),
    ("curvature-N=2", "F_N = q^{N-1} [N] omega_q, N = 2"),
    ("curvature-N=3", "F_N = q^{N-1} [N] omega_q, N = 3"),
    ("curvature-N=-1", "F_N = q^{N+3s/2+2} [N] omega_q, N = -1"),
    ("curvature-N=-2", "F_N = q^{N+3s/2+2} [N] omega_q, N = -2"),
    ("curvature-N=-3", "F_N = q^{N+3s/2+2} [N] omega_q, N = -3"),
    ("left-leibniz", "nabla_N(a eta) = a nabla_N(eta) + q^N (da) eta for a in CP^2_q, N = +-1"),
    ("conjugation-bridge", "(nabla_N eta)^* = nabla^l_{-N}(eta^*), N = +-1"),
    ("hermiticity", "(nabla eta, xi) + (eta, nabla xi) = d(eta^* xi), N = +-1"),
    ("equivariance", "Psi^dag (Psi <| E2) = Psi^dag (Psi <| F2) = (Psi^dag <| E2) Psi = (Psi^dag <| F2) Psi = 0"),
    ("projected-differential", "Psi^dag d(Psi a Psi^dag) Psi = q^N da for a in CP^2_q"),
];

/// `N` of a monopole curvature step.
pub fn curvature_step_n(id: &str) -> Option<i32> {
    id.strip_prefix("curvature-N=")?.parse().ok()
}

fn u(i: u8, j: u8) -> AlgebraElement {
    AlgebraElement::u(i, j)
}

fn failures(bad: Vec<String>) -> Residual {
    let first = bad.first().cloned().unwrap_or_default();
    Residual::Failures(bad.len(), first)
}

pub fn core_residuals(id: &str, cfg: &Sampling) -> Result<Vec<Residual>, Error> {
    let delta = |a: u8, b: u8| if a == b { AlgebraElement::one() } else { AlgebraElement::zero() };
    let ortho = |term: &dyn Fn(u8, u8, u8) -> AlgebraElement| -> Vec<Residual> {
        let mut out = Vec::new();
        for a in 1..=3 {
            for b in 1..=3 {
                let parts: Vec<AlgebraElement> = (1..=3).map(|i| term(a, b, i)).collect();
                out.push(Residual::Algebra(&AlgebraElement::sum(&parts) - &delta(a, b)));
            }
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(match id {
        "confluence" => {
            let r = ring().system().check_confluence(FAMILY_BOUND)?;
            vec![failures(r.failures)]
        }
        "cubic-negative-control" => {
            let quad = ring().system().without_cubic();
            let det = quad.rewriter(0)?.reduce(quad.determinant().clone());
            let one = det.len() == 1 && det.keys().next().is_some_and(|w| w.is_empty());
            vec![Residual::Failures(usize::from(one), "the determinant reduces to 1 without the cubic rule".into())]
        }
        "orthogonality-rows" => ortho(&|a, b, i| &u(a, i) * &u(b, i).star()),
        "orthogonality-rows-starred" => {
            ortho(&|a, b, i| (&u(a, i).star() * &u(b, i)).scale(&Scalar::q_pow(2 * (a as i32 - i as i32))))
        }
        "orthogonality-columns" => {
            ortho(&|a, b, i| (&u(i, a) * &u(i, b).star()).scale(&Scalar::q_pow(2 * (i as i32 - b as i32))))
        }
        "orthogonality-columns-starred" => ortho(&|a, b, i| &u(i, a).star() * &u(i, b)),
        "q-trace" => {
            let p = AlgebraElement::p;
            let trace =
                AlgebraElement::sum(&[p(1, 1).scale(&Scalar::q_pow(4)), p(2, 2).scale(&Scalar::q_pow(2)), p(3, 3)]);
            vec![Residual::Algebra(&trace - &AlgebraElement::one())]
        }
        "sphere-relations" => {
            let z = [1, 2, 3].map(AlgebraElement::z);
            sphere_relation_residuals(&z).into_iter().map(|(_, r)| Residual::Algebra(r)).collect()
        }
        "star-involution" => {
            let d = cfg.max_degree.unwrap_or(3);
            let mut out = Vec::new();
            for _ in 0..2 * cfg.samples {
                let a = random_element(&mut rng, d, 2);
                let b = random_element(&mut rng, d, 2);
                out.push(Residual::Algebra(&a.star().star() - &a));
                out.push(Residual::Algebra(&(&a * &b).star() - &(&b.star() * &a.star())));
            }
            out
        }
        "normal-form-idempotent" => {
            let d = cfg.max_degree.unwrap_or(6);
            (0..cfg.samples)
                .map(|_| {
                    let a = random_element(&mut rng, d, 3);
                    let again: Vec<AlgebraElement> =
                        a.words().iter().map(|(w, c)| AlgebraElement::from_word(w, c)).collect();
                    Residual::Algebra(&AlgebraElement::sum(&again) - &a)
                })
                .collect()
        }
        "classical-oracle" => {
            let d = cfg.max_degree.unwrap_or(4);
            let exprs: Vec<(RawExpr, AlgebraElement)> = (0..50)
                .map(|_| {
                    let terms = (0..3)
                        .map(|_| {
                            let c = &Scalar::from_int(rand::Rng::gen_range(&mut rng, -3..=3))
                                * &Scalar::q_pow(rand::Rng::gen_range(&mut rng, -2..=2));
                            (random_word(&mut rng, d), c)
                        })
                        .collect();
                    let raw = RawExpr { terms };
                    let nf = raw.normal_form();
                    (raw, nf)
                })
                .collect();
            let mut bad = Vec::new();
            for _ in 0..100 {
                let point = ClassicalPoint::new(random_su3(&mut rng), 0.0)?;
                for (raw, nf) in &exprs {
                    let (a, b) = (point.eval_raw(raw), point.eval(nf));
                    if (a - b).norm() > 1e-9 {
                        bad.push(format!("raw {a} against normal form {b} for {nf}"));
                    }
                }
            }
            vec![failures(bad)]
        }
        "classical-determinant" => {
            let det = determinant_raw();
            let mut bad = Vec::new();
            for _ in 0..100 {
                let point = ClassicalPoint::new(random_su3(&mut rng), 0.0)?;
                let v = point.eval_raw(&det);
                if (v - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
                    bad.push(format!("determinant evaluates to {v}"));
                }
            }
            vec![Residual::Algebra(&det.normal_form() - &AlgebraElement::one()), failures(bad)]
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    })
}

/// `sum_sigma (-q)^{l(sigma)} u^1_{sigma 1} u^2_{sigma 2} u^3_{sigma 3}` as raw words.
fn determinant_raw() -> RawExpr {
    const PERMS: [([u8; 3], i32); 6] =
        [([1, 2, 3], 0), ([1, 3, 2], 1), ([2, 1, 3], 1), ([2, 3, 1], 2), ([3, 1, 2], 2), ([3, 2, 1], 3)];
    let terms = PERMS
        .iter()
        .map(|(p, l)| {
            let word: Vec<Gen> = (0..3).map(|r| Gen::new(r as u8 + 1, p[r])).collect();
            (word, (-Scalar::q_pow(1)).pow(*l as u32))
        })
        .collect();
    RawExpr { terms }
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
                    let (mut a, mut b) = (a.clone(), b.clone());
                    a.0.push(*p);
                    b.0.push(*r);
                    (a, b)
                })
            })
            .collect();
    }
    out
}

type Triple = FxHashMap<(NWord, NWord, NWord), Scalar>;

fn single(v: NWord) -> AlgebraElement {
    AlgebraElement::from_terms(vec![(v, Scalar::one())])
}

fn add_triple(acc: &mut Triple, k: (NWord, NWord, NWord), c: Scalar) {
    let slot = acc.entry(k).or_default();
    *slot = &*slot + &c;
}

/// `(f (x) id)` with `f` valued in tensors.
fn expand_left(t: &TensorElement, f: impl Fn(&AlgebraElement) -> TensorElement) -> Triple {
    let mut acc = Triple::default();
    for ((a, b), c) in t.terms() {
        for ((x, y), d) in f(&single(*a)).terms() {
            add_triple(&mut acc, (*x, *y, *b), c * d);
        }
    }
    acc
}

/// `(id (x) f)` with `f` valued in tensors.
fn expand_right(t: &TensorElement, f: impl Fn(&AlgebraElement) -> TensorElement) -> Triple {
    let mut acc = Triple::default();
    for ((a, b), c) in t.terms() {
        for ((x, y), d) in f(&single(*b)).terms() {
            add_triple(&mut acc, (*a, *x, *y), c * d);
        }
    }
    acc
}

fn triple_difference(l: &Triple, r: &Triple, what: &str) -> Residual {
    let mut keys: Vec<&(NWord, NWord, NWord)> = l.keys().chain(r.keys()).collect();
    keys.sort_unstable();
    keys.dedup();
    let zero = Scalar::zero();
    let n = keys.iter().filter(|k| !(l.get(**k).unwrap_or(&zero) - r.get(**k).unwrap_or(&zero)).is_zero()).count();
    Residual::Failures(n, format!("{what}: {n} triple tensor coefficients differ"))
}

fn generators() -> Vec<AlgebraElement> {
    Gen::all().map(AlgebraElement::gen).collect()
}

pub fn symmetry_residuals(id: &str, cfg: &Sampling) -> Result<Vec<Residual>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let d = cfg.max_degree.unwrap_or(2);
    let mut samples = generators();
    samples.push(&u(1, 2) * &u(3, 1));
    samples.push(AlgebraElement::x());
    Ok(match id {
        "module-algebra-right" | "module-algebra-left" => {
            let act = if id.ends_with("right") { act_right } else { act_left };
            (0..cfg.samples)
                .map(|_| {
                    let x = random_uq_word(&mut rng, 2);
                    let a = random_element(&mut rng, d, 2);
                    let b = random_element(&mut rng, d, 2);
                    let parts: Vec<AlgebraElement> =
                        uq_coproduct(&x).iter().map(|(x1, x2)| &act(x1, &a) * &act(x2, &b)).collect();
                    Residual::Algebra(&act(&x, &(&a * &b)) - &AlgebraElement::sum(&parts))
                })
                .collect()
        }
        "coassociativity" => samples
            .iter()
            .map(|a| {
                let dl = coproduct(a);
                triple_difference(&expand_left(&dl, coproduct), &expand_right(&dl, coproduct), &a.to_string())
            })
            .collect(),
        "counit" => {
            let eps = |w: NWord| counit(&single(w));
            let mut out = Vec::new();
            for a in samples.iter().chain([random_element(&mut rng, d, 3)].iter()) {
                let dl = coproduct(a);
                out.push(Residual::Algebra(&dl.contract_left(eps) - a));
                out.push(Residual::Algebra(&dl.contract_right(eps) - a));
            }
            out
        }
        "antipode" => {
            let mut out = Vec::new();
            for i in 1..=3 {
                for j in 1..=3 {
                    let dl = coproduct(&u(i, j));
                    let delta = if i == j { AlgebraElement::one() } else { AlgebraElement::zero() };
                    out.push(Residual::Algebra(&dl.map_legs(antipode, AlgebraElement::clone).multiply() - &delta));
                    out.push(Residual::Algebra(&dl.map_legs(AlgebraElement::clone, antipode).multiply() - &delta));
                    out.push(Residual::Algebra(&antipode(&antipode_inv(&u(i, j))) - &u(i, j)));
                    out.push(Residual::Algebra(&antipode_inv(&antipode(&u(i, j))) - &u(i, j)));
                }
            }
            out
        }
        "coaction-coassociative" => {
            let mut out = Vec::new();
            for a in &samples {
                let dl = coaction_l(a);
                out.push(Residual::Tensor(&dl - &coaction_l_literal(a)));
                out.push(triple_difference(
                    &expand_right(&dl, coaction_l),
                    &expand_left(&dl, coproduct),
                    &a.to_string(),
                ));
            }
            out
        }
        "coaction-equivariant" => {
            let mut out = Vec::new();
            for a in generators() {
                for x in ["E1", "E2", "F1", "F2", "K1", "K2"] {
                    let x: UqWord = x.parse()?;
                    let lhs = coaction_l(&act_right(&x, &a));
                    let rhs = coaction_l(&a).map_legs(AlgebraElement::clone, |b| act_right(&x, b));
                    out.push(Residual::Tensor(&lhs - &rhs));
                }
            }
            out
        }
        "invariant-subalgebras" => {
            let mut bad = Vec::new();
            for i in 1..=3 {
                if !is_in_sphere(&AlgebraElement::z(i)) {
                    bad.push(format!("z{i} is not in the sphere"));
                }
                for j in 1..=3 {
                    if !is_in_plane(&AlgebraElement::p(i, j)) {
                        bad.push(format!("p{i}{j} is not in the plane"));
                    }
                }
            }
            if is_in_plane(&AlgebraElement::z(1)) {
                bad.push("z1 is in the plane".into());
            }
            vec![failures(bad)]
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    })
}

fn form(b: Bidegree, comps: Vec<AlgebraElement>) -> FormElement {
    FormElement::new(b, comps).expect("component count matches the bidegree")
}

fn basis_forms() -> Vec<FormElement> {
    Bidegree::all().flat_map(|b| (0..b.dim()).map(move |k| FormElement::basis(b, k))).collect()
}

fn random_form(rng: &mut ChaCha8Rng, b: Bidegree, d: usize) -> FormElement {
    form(b, (0..b.dim()).map(|_| random_element(rng, d, 2)).collect())
}

fn sign(k: u32) -> Scalar {
    Scalar::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

pub fn calculus_residuals(id: &str, params: &CalculusParams, cfg: &Sampling) -> Result<Vec<Residual>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let p = AlgebraElement::p;
    let qh = Scalar::q_half;
    let i = Scalar::i();
    let diff = |a: FormElement, b: FormElement| Residual::Form(&a - &b);
    Ok(match id {
        "del-sphere" => {
            let c = &i * &qh(-3);
            (1..=3)
                .map(|j| {
                    diff(del(&AlgebraElement::z(j)), form(Bidegree(1, 0), vec![u(2, j).scale(&c), u(1, j).scale(&c)]))
                })
                .collect()
        }
        "del-plane" => {
            let c = &i * &Scalar::q_pow(-1);
            let mut out = Vec::new();
            for j in 1..=3 {
                for k in 1..=3 {
                    let zs = AlgebraElement::zs(j);
                    let expected = form(Bidegree(1, 0), vec![(&zs * &u(2, k)).scale(&c), (&zs * &u(1, k)).scale(&c)]);
                    out.push(diff(del(&p(j, k)), expected));
                    let z = AlgebraElement::z(k);
                    let expected = form(
                        Bidegree(0, 1),
                        vec![
                            (&u(1, j).star() * &z).scale(&(&c * &qh(-1))),
                            (&u(2, j).star() * &z).scale(&-(&c * &qh(1))),
                        ],
                    );
                    out.push(diff(delbar(&p(j, k)), expected));
                }
            }
            out
        }
        "leibniz" => {
            let d = cfg.max_degree.unwrap_or(2);
            let mut plane = || {
                let parts: Vec<AlgebraElement> = (0..d.max(1))
                    .map(|_| p(rand::Rng::gen_range(&mut rng, 1..=3), rand::Rng::gen_range(&mut rng, 1..=3)))
                    .collect();
                parts.iter().skip(1).fold(parts[0].clone(), |acc, x| &acc * x)
            };
            let mut out = Vec::new();
            for _ in 0..cfg.samples.min(50) {
                let (a, b) = (plane(), plane());
                let ab = &a * &b;
                out.push(diff(del(&ab), &del(&a).right_mul(&b) + &del(&b).left_mul(&a)));
                out.push(diff(delbar(&ab), &delbar(&a).right_mul(&b) + &delbar(&b).left_mul(&a)));
            }
            out
        }
        "vanishing-sums" => {
            let mut out = Vec::new();
            for a in 1..=3 {
                for b in 1..=3 {
                    let dd: Vec<FormElement> = (1..=3).map(|c| wedge(&del(&p(b, c)), &del(&p(c, a)), params)).collect();
                    out.push(Residual::Form(FormElement::sum(Bidegree(2, 0), &dd)?));
                    let bb: Vec<FormElement> =
                        (1..=3).map(|c| wedge(&delbar(&p(b, c)), &delbar(&p(c, a)), params)).collect();
                    out.push(Residual::Form(FormElement::sum(Bidegree(0, 2), &bb)?));
                }
            }
            out
        }
        "mixed-product" => {
            let s = params.s_sign();
            let (c1, c2) = (params.c(1), params.c(2));
            let ri = Scalar::r().inverse().expect("r is invertible");
            let mut out = Vec::new();
            for (a, j, k, l) in [(1, 2, 3, 1), (2, 2, 1, 3), (3, 1, 2, 2), (1, 1, 1, 1), (3, 3, 2, 1)] {
                let lhs = wedge(&del(&p(a, j)), &delbar(&p(k, l)), params);
                let (left, right) = (u(3, a).star(), u(3, l));
                let sand = |x: AlgebraElement| &(&left * &x) * &right;
                let m = |r: u8, t: u8| &u(r, j) * &u(t, k).star();
                let comps = vec![
                    sand(m(2, 1).scale(&-(&qh(s - 1) * c1))),
                    sand((&m(2, 2) - &m(1, 1)).scale(&(&(&qh(s) * c1) * &ri))),
                    sand(m(1, 2).scale(&(&qh(s + 1) * c1))),
                    sand(
                        (&m(2, 2).scale(&Scalar::q_pow(1)) + &m(1, 1).scale(&Scalar::q_pow(-1)))
                            .scale(&-(&(&qh(-3 * s) * c2) * &ri)),
                    ),
                ];
                out.push(diff(lhs, form(Bidegree(1, 1), comps).scale(&-Scalar::q_pow(-2))));
            }
            out
        }
        "wedge-associative" => {
            let basis = basis_forms();
            let mut out = Vec::new();
            for a in &basis {
                for b in &basis {
                    let ab = wedge(a, b, params);
                    for c in &basis {
                        out.push(diff(wedge(&ab, c, params), wedge(a, &wedge(b, c, params), params)));
                    }
                }
            }
            out
        }
        "star-involution" => {
            let d = cfg.max_degree.unwrap_or(2);
            let mut out = Vec::new();
            for _ in 0..cfg.samples.div_ceil(9) {
                for b in Bidegree::all() {
                    let w = random_form(&mut rng, b, d);
                    out.push(diff(form_star(&form_star(&w)), w));
                }
            }
            out
        }
        "star-antimultiplicative" => {
            let d = cfg.max_degree.unwrap_or(1);
            let bds: Vec<Bidegree> = Bidegree::all().collect();
            (0..cfg.samples.min(50))
                .map(|n| {
                    let (ba, bb) = (bds[n % 9], bds[(n * 4 + 1) % 9]);
                    let a = random_form(&mut rng, ba, d);
                    let b = random_form(&mut rng, bb, d);
                    let lhs = form_star(&wedge(&a, &b, params));
                    let rhs = wedge(&form_star(&b), &form_star(&a), params);
                    diff(lhs, rhs.scale(&sign(a.degree() as u32 * b.degree() as u32)))
                })
                .collect()
        }
        "hodge-square" => {
            let mut out: Vec<Residual> = basis_forms()
                .into_iter()
                .map(|w| diff(hodge(&hodge(&w, params), params), w.scale(&sign(w.degree() as u32))))
                .collect();
            let d = cfg.max_degree.unwrap_or(2);
            for b in Bidegree::all() {
                let w = random_form(&mut rng, b, d);
                out.push(diff(hodge(&hodge(&w, params), params), w.scale(&sign(b.degree() as u32))));
            }
            out
        }
        "hodge-eigenvalues" => {
            let minus = Scalar::from_int(-1);
            let mut out = Vec::new();
            for b in [Bidegree(2, 0), Bidegree(0, 2)] {
                let w = FormElement::basis(b, 0);
                out.push(diff(hodge(&w, params), w.scale(&minus)));
            }
            for k in 0..3 {
                let w = FormElement::basis(Bidegree(1, 1), k);
                out.push(diff(hodge(&w, params), w));
            }
            let w = FormElement::basis(Bidegree(1, 1), 3);
            out.push(diff(hodge(&w, params), w.scale(&minus)));
            if params.lambda() != -1 {
                return Err(Error::Config("the eigenvalue table is stated for lambda = -1".into()));
            }
            out
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    })
}

pub fn kahler_residuals(id: &str, params: &CalculusParams) -> Result<Vec<Residual>, Error> {
    let p = AlgebraElement::p;
    let w = kahler(params);
    Ok(match id {
        "kahler-form" => vec![Residual::Form(&w - &kahler_expected(params))],
        "kahler-type" => {
            let full = kahler_full(params);
            vec![Residual::Form(full.part(Bidegree(2, 0))), Residual::Form(full.part(Bidegree(0, 2)))]
        }
        "kahler-useful" => {
            let mut out = Vec::new();
            for j in 1..=3 {
                for k in 1..=3 {
                    let parts: Vec<FormElement> =
                        (1..=3).map(|l| wedge(&del(&p(j, l)), &delbar(&p(l, k)), params)).collect();
                    out.push(Residual::Form(&w.left_mul(&p(j, k)) - &FormElement::sum(Bidegree(1, 1), &parts)?));
                }
            }
            out
        }
        "kahler-asd" => {
            let c2 = params.c(2);
            let norm = &(&(&Scalar::q_pow(-4) * &Scalar::q_half(-6 * params.s_sign())) * &(c2 * c2)) * &Scalar::two();
            let asd = asd_check(&w, params)?;
            vec![
                Residual::Algebra(&hermitian(&w, &w)? - &AlgebraElement::scalar(norm)),
                Residual::Failures(usize::from(!asd), "omega_q has a self-dual part".into()),
                Residual::Algebra(AlgebraElement::sum(&sd_part(&w, params)?)),
            ]
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    })
}

fn form_residual(f: crate::calculus::Form) -> Vec<Residual> {
    f.parts().cloned().map(Residual::Form).collect()
}

pub fn monopole_residuals(id: &str, params: &CalculusParams) -> Result<Vec<Residual>, Error> {
    let p = AlgebraElement::p;
    if let Some(n) = curvature_step_n(id) {
        let f = curvature_monopole(n, params)?;
        let expected = kahler_expected(params).scale(&curvature_factor(n, params.s_sign()));
        return Ok(vec![Residual::Form(&f - &expected)]);
    }
    let mut out = Vec::new();
    match id {
        "left-leibniz" => {
            for n in [1, -1] {
                for eta in monopole(n)?.generators() {
                    for a in [p(2, 3), p(1, 1), p(3, 2)] {
                        out.extend(form_residual(left_leibniz_residual(n, &a, &eta)?));
                    }
                }
            }
        }
        "conjugation-bridge" => {
            for n in [1, -1] {
                for eta in monopole(n)?.generators() {
                    out.extend(form_residual(left_right_residual(n, &eta)?));
                }
            }
        }
        "hermiticity" => {
            for n in [1, -1] {
                let gens = monopole(n)?.generators();
                for eta in &gens {
                    for xi in &gens {
                        out.extend(form_residual(hermiticity_residual(n, eta, xi)?));
                    }
                }
            }
        }
        "equivariance" => {
            for n in [-2, -1, 1, 2] {
                out.extend(follows_residuals(n)?.into_iter().map(Residual::Algebra));
            }
        }
        "projected-differential" => {
            for (n, a) in [(1, p(1, 1)), (-1, p(2, 3)), (0, p(1, 2)), (2, p(3, 1)), (-2, p(2, 2))] {
                out.extend(form_residual(dd_psi_residual(n, &a)?));
            }
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    }
    Ok(out)
}
