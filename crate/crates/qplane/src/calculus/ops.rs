use rustc_hash::FxHashMap;

use super::form::{Bidegree, Form, FormElement};
use super::params::CalculusParams;
use crate::qalgebra::AlgebraElement;
use crate::scalars::Scalar;
use crate::symmetry::{act_right, UqGen, UqWord};
use crate::Error;

fn word(gens: &[UqGen]) -> UqWord {
    UqWord::new(gens)
}

/// `del a = i q^{-3/2} (a <| E2, a <| E2 E1)^t`
pub fn del(a: &AlgebraElement) -> FormElement {
    let c = &Scalar::i() * &Scalar::q_half(-3);
    let e2 = act_right(&word(&[UqGen::E2]), a);
    let e21 = act_right(&word(&[UqGen::E1]), &e2);
    FormElement::from_parts(Bidegree(1, 0), vec![e2.scale(&c), e21.scale(&c)])
}

/// `delbar a = i (a <| F2 F1, a <| F2)^t`
pub fn delbar(a: &AlgebraElement) -> FormElement {
    let c = Scalar::i();
    let f2 = act_right(&word(&[UqGen::F2]), a);
    let f21 = act_right(&word(&[UqGen::F1]), &f2);
    FormElement::from_parts(Bidegree(0, 1), vec![f21.scale(&c), f2.scale(&c)])
}

/// `d a = del a + delbar a` on functions.
pub fn d(a: &AlgebraElement) -> Form {
    [del(a), delbar(a)].into_iter().collect()
}

/// Componentwise `d` of a function or of a `(0,0)`-form.
pub fn d_form(w: &FormElement) -> Result<Form, Error> {
    w.expect(Bidegree::ZERO)?;
    Ok(d(w.comp(0)))
}

/// `(w ^ w')_g = sum S^g_{ab} w_a w'_b`
pub fn wedge(w: &FormElement, w2: &FormElement, params: &CalculusParams) -> FormElement {
    let out = w.bidegree() + w2.bidegree();
    if !out.in_diamond() {
        return FormElement::zero(out);
    }
    let table = params
        .table(w.bidegree(), w2.bidegree())
        .unwrap_or_else(|| panic!("no product table for {} x {}", w.bidegree(), w2.bidegree()));
    let mut prods: FxHashMap<(usize, usize), AlgebraElement> = FxHashMap::default();
    let mut acc: Vec<Vec<AlgebraElement>> = vec![Vec::new(); out.dim()];
    for (g, a, b, c) in &table.entries {
        let (x, y) = (w.comp(*a), w2.comp(*b));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let p = prods.entry((*a, *b)).or_insert_with(|| x * y);
        acc[*g].push(p.scale(c));
    }
    FormElement::from_parts(out, acc.iter().map(AlgebraElement::sum).collect())
}

/// Wedge product of inhomogeneous forms.
pub fn wedge_forms(w: &Form, w2: &Form, params: &CalculusParams) -> Form {
    w.parts().flat_map(|a| w2.parts().map(move |b| wedge(a, b, params))).collect()
}

fn j_map(bd: Bidegree, comps: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let st = |a: &AlgebraElement, e: i32| a.star().scale(&Scalar::q_half(e));
    match bd.dim() {
        1 => vec![comps[0].star()],
        2 => vec![-st(&comps[1], -1), st(&comps[0], 1)],
        4 => vec![-st(&comps[2], -2), comps[1].star(), -st(&comps[0], 2), comps[3].star()],
        _ => vec![],
    }
}

/// The antilinear map `J` on components (spin 0, 1/2, 1 blocks).
pub fn j(w: &FormElement) -> FormElement {
    FormElement::from_parts(w.bidegree().swap(), j_map(w.bidegree(), w.comps()))
}

/// The graded involution `w^* = (-1)^i J(w)` for `w` of bidegree `(i, j)`.
pub fn form_star(w: &FormElement) -> FormElement {
    let jw = j(w);
    if w.bidegree().0 % 2 == 1 {
        -&jw
    } else {
        jw
    }
}

/// The involution `(-1)^j J(w)` on `(i, j)`-forms, which agrees with [`form_star`] on even
/// forms and is its negative on odd ones. With [`del`] and [`delbar`] as defined,
/// `d(a^*) = (da)^*` holds for this involution, while [`form_star`] gives `d(a^*) = -(da)^*`.
pub fn real_star(w: &FormElement) -> FormElement {
    let jw = j(w);
    if w.bidegree().1 % 2 == 1 {
        -&jw
    } else {
        jw
    }
}

/// `(eta, xi) = sum_i eta_i^* xi_i`
pub fn hermitian(eta: &FormElement, xi: &FormElement) -> Result<AlgebraElement, Error> {
    if eta.bidegree() != xi.bidegree() {
        if eta.is_zero() || xi.is_zero() {
            return Ok(AlgebraElement::zero());
        }
        return Err(Error::Bidegree(format!("hermitian structure on {} and {}", eta.bidegree(), xi.bidegree())));
    }
    let parts: Vec<AlgebraElement> = eta.comps().iter().zip(xi.comps()).map(|(a, b)| &a.star() * b).collect();
    Ok(AlgebraElement::sum(&parts))
}

/// The Hodge star, defined by `(*w, w') tau_lambda = w^* ^ w'`:
/// `(*w)_k = lambda^{-1} ((w^* ^ e_k)_top)^*`.
pub fn hodge(w: &FormElement, params: &CalculusParams) -> FormElement {
    let ws = form_star(w);
    let target = Bidegree(2 - w.bidegree().1, 2 - w.bidegree().0);
    let table = params.table(ws.bidegree(), target).expect("top-degree product table");
    let lambda = Scalar::from_int(params.lambda() as i64);
    let mut comps = vec![Vec::new(); target.dim()];
    for (_, a, k, c) in &table.entries {
        comps[*k].push(ws.comp(*a).star().scale(&(&c.conj() * &lambda)));
    }
    FormElement::from_parts(target, comps.iter().map(AlgebraElement::sum).collect())
}

/// Components spanning the self-dual part of a `(1,1)`-form: the `v`-triple when
/// `Omega^{1,1}_v` has eigenvalue `+1`, otherwise the `s`-component.
pub fn sd_part(w: &FormElement, params: &CalculusParams) -> Result<Vec<AlgebraElement>, Error> {
    w.expect(Bidegree(1, 1))?;
    if -params.lambda() * params.sign_c0c3() == 1 {
        Ok(w.comps()[..3].to_vec())
    } else {
        Ok(vec![w.comps()[3].clone()])
    }
}

/// True iff the self-dual part vanishes.
pub fn asd_check(w: &FormElement, params: &CalculusParams) -> Result<bool, Error> {
    Ok(sd_part(w, params)?.iter().all(|c| c.is_zero()))
}

/// `omega_q = sum_{jkl} q^{6-2j} p_jk dp_kl ^ dp_lj`, all bidegrees.
pub fn kahler_full(params: &CalculusParams) -> Form {
    let dp: Vec<Vec<Form>> = (1..=3).map(|k| (1..=3).map(|l| d(&AlgebraElement::p(k, l))).collect()).collect();
    let mut parts = Vec::new();
    for j in 1..=3u8 {
        for k in 1..=3u8 {
            let mut inner = Vec::new();
            for l in 1..=3u8 {
                inner.push(wedge_forms(
                    &dp[k as usize - 1][l as usize - 1],
                    &dp[l as usize - 1][j as usize - 1],
                    params,
                ));
            }
            let inner: Form = inner.iter().flat_map(|f| f.parts().cloned()).collect();
            let coeff = AlgebraElement::p(j, k).scale(&Scalar::q_pow(6 - 2 * j as i32));
            parts.push(inner.left_mul(&coeff));
        }
    }
    parts.iter().flat_map(|f| f.parts().cloned()).collect()
}

/// The Kaehler form, the `(1,1)` part of [`kahler_full`].
pub fn kahler(params: &CalculusParams) -> FormElement {
    kahler_full(params).part(Bidegree(1, 1))
}

/// The closed form `q^{-2} q^{-3s/2} c_2 [2]^{1/2} (0,0,0,1)^t`.
pub fn kahler_expected(params: &CalculusParams) -> FormElement {
    let c = &(&(&Scalar::q_pow(-2) * &Scalar::q_half(-3 * params.s_sign())) * params.c(2)) * &Scalar::r();
    FormElement::basis(Bidegree(1, 1), 3).scale(&c)
}

/// Half-exponents `(e1, e2)` with `a <| K1 = q^{e1/2} a` and `a <| K1 K2^2 = q^{e2/2} a`,
/// one pair per component; errors when a component is not a weight vector.
pub fn slot_weights(w: &FormElement) -> Result<Vec<Option<(i32, i32)>>, Error> {
    let k1 = UqWord::new(&[UqGen::K1]);
    let k122 = UqWord::new(&[UqGen::K1, UqGen::K2, UqGen::K2]);
    w.comps()
        .iter()
        .map(|a| {
            if a.is_zero() {
                return Ok(None);
            }
            let e1 = weight(a, &act_right(&k1, a))?;
            let e2 = weight(a, &act_right(&k122, a))?;
            Ok(Some((e1, e2)))
        })
        .collect()
}

fn weight(a: &AlgebraElement, b: &AlgebraElement) -> Result<i32, Error> {
    (-12..=12)
        .find(|&e| a.scale(&Scalar::q_half(e)) == *b)
        .ok_or_else(|| Error::Domain("component is not a weight vector".into()))
}
