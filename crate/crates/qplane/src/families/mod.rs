//! Coacting on connections: the operators `U`, `W`, coacted forms, and the `U(1)` gauge quotient.

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::calculus::{del, delbar, hodge, kahler, real_star, wedge, Bidegree, CalculusParams, FormElement};
use crate::instanton::{phi_closed, phi_star_closed, InstantonPipeline};
use crate::qalgebra::kb::Comb;
use crate::qalgebra::{cubic_relation, quadratic_relations, ring, AlgebraElement, Gen, NWord};
use crate::report::{Residual, StepReport};
use crate::sample::random_element;
use crate::scalars::Scalar;
use crate::symmetry::{act_right, coaction_l, coproduct, TensorElement, UqGen, UqWord};
use crate::Error;

/// `Delta^cop(a) = a_(2) (x) a_(1)`
pub fn coproduct_cop(a: &AlgebraElement) -> TensorElement {
    coproduct(a).flip()
}

/// Applies `a (x) eta -> (a (x) 1) T(eta)` term by term.
fn left_multiplied(t: &TensorElement, f: impl Fn(&AlgebraElement) -> TensorElement) -> TensorElement {
    let one = AlgebraElement::one();
    t.terms().iter().fold(TensorElement::zero(), |acc, ((a, b), c)| {
        let a = AlgebraElement::from_terms(vec![(*a, c.clone())]);
        let eta = AlgebraElement::from_terms(vec![(*b, Scalar::one())]);
        &acc + &(&TensorElement::pure(&a, &one) * &f(&eta))
    })
}

/// `U(a (x) eta) = a S^{-1}(eta_(2)) (x) eta_(1)`
pub fn u_op(t: &TensorElement) -> TensorElement {
    left_multiplied(t, coaction_l)
}

/// `W(a (x) eta) = a eta_(2) (x) eta_(1)`
pub fn w_op(t: &TensorElement) -> TensorElement {
    left_multiplied(t, coproduct_cop)
}

/// `Delta_L` applied to each component of a form: left legs in `O(SU_q(3))`, right legs forming a form.
#[derive(Clone, PartialEq, Eq)]
pub struct CoactedForm {
    bidegree: Bidegree,
    comps: Vec<TensorElement>,
}

impl CoactedForm {
    pub fn new(bidegree: Bidegree, comps: Vec<TensorElement>) -> Result<Self, Error> {
        if comps.len() != bidegree.dim() {
            return Err(Error::Bidegree(format!("{} components for {bidegree}", comps.len())));
        }
        Ok(CoactedForm { bidegree, comps })
    }

    pub fn zero(bidegree: Bidegree) -> Self {
        CoactedForm { bidegree, comps: vec![TensorElement::zero(); bidegree.dim()] }
    }

    /// `sum_k a_k (x) w_k`
    pub fn from_pairs(bidegree: Bidegree, pairs: &[(AlgebraElement, FormElement)]) -> Result<Self, Error> {
        let mut out = Self::zero(bidegree);
        for (a, w) in pairs {
            if w.bidegree() != bidegree {
                return Err(Error::Bidegree(format!("{} in a sum of {bidegree}-forms", w.bidegree())));
            }
            for (slot, c) in out.comps.iter_mut().zip(w.comps()) {
                *slot = &*slot + &TensorElement::pure(a, c);
            }
        }
        Ok(out)
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn comps(&self) -> &[TensorElement] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TensorElement::is_zero)
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(TensorElement::len).sum()
    }

    /// The left legs against linearly independent right words: for every
    /// component and right normal word `b`, the element `sum_a c_ab a`.
    pub fn left_legs(&self) -> Vec<AlgebraElement> {
        let mut out = Vec::new();
        for t in &self.comps {
            let mut by_right: BTreeMap<NWord, Vec<(NWord, Scalar)>> = BTreeMap::new();
            for ((a, b), c) in t.terms() {
                by_right.entry(*b).or_default().push((*a, c.clone()));
            }
            out.extend(by_right.into_values().map(AlgebraElement::from_terms));
        }
        out
    }

    /// Applies a linear map to the right legs, componentwise in the form basis.
    pub fn map_right_forms(&self, f: impl Fn(&FormElement) -> FormElement) -> Result<CoactedForm, Error> {
        // split into (left word, right form) pairs, apply f, and reassemble
        let mut by_left: BTreeMap<NWord, Vec<Vec<(NWord, Scalar)>>> = BTreeMap::new();
        let dim = self.comps.len();
        for (k, t) in self.comps.iter().enumerate() {
            for ((a, b), c) in t.terms() {
                by_left.entry(*a).or_insert_with(|| vec![Vec::new(); dim])[k].push((*b, c.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, comps) in by_left {
            let w = FormElement::new(self.bidegree, comps.into_iter().map(AlgebraElement::from_terms).collect())?;
            pairs.push((AlgebraElement::from_terms(vec![(a, Scalar::one())]), f(&w)));
        }
        let b = pairs.first().map(|(_, w)| w.bidegree()).unwrap_or(self.bidegree);
        Self::from_pairs(b, &pairs)
    }
}

impl std::ops::Sub for &CoactedForm {
    type Output = CoactedForm;
    fn sub(self, rhs: &CoactedForm) -> CoactedForm {
        CoactedForm { bidegree: self.bidegree, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for CoactedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.bidegree)?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CoactedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Delta_L` on a form, extended trivially to the components.
pub fn coact_form(w: &FormElement) -> CoactedForm {
    CoactedForm { bidegree: w.bidegree(), comps: w.comps().iter().map(coaction_l).collect() }
}

/// `sum_{j,k} q^{-2(k-1)} (u^1_k)^* u^1_j (x) w(p_jk)`
fn x_display(w: impl Fn(&AlgebraElement) -> FormElement) -> Result<CoactedForm, Error> {
    let mut pairs = Vec::new();
    for j in 1..=3u8 {
        for k in 1..=3u8 {
            let left =
                (&AlgebraElement::u(1, k).star() * &AlgebraElement::u(1, j)).scale(&Scalar::q_pow(-2 * (k as i32 - 1)));
            pairs.push((left, w(&AlgebraElement::p(j, k))));
        }
    }
    let b = pairs[0].1.bidegree();
    CoactedForm::from_pairs(b, &pairs)
}

/// The displayed coaction of `x`, as a coacted 0-form.
pub fn coaction_x_expected() -> Result<CoactedForm, Error> {
    x_display(|a| FormElement::function(a.clone()))
}

/// The displayed coaction of `del x`.
pub fn coaction_dx_expected() -> Result<CoactedForm, Error> {
    x_display(del)
}

/// The same legs for `delbar x`.
pub fn coaction_dbarx_expected() -> Result<CoactedForm, Error> {
    x_display(delbar)
}

/// `i sum_j q^{-2(j-1)} (u^1_j)^* (x) (u^2_j, u^1_j)`
pub fn coaction_phi_star_expected() -> Result<CoactedForm, Error> {
    let mut pairs = Vec::new();
    for j in 1..=3u8 {
        let left = AlgebraElement::u(1, j).star().scale(&(&Scalar::i() * &Scalar::q_pow(-2 * (j as i32 - 1))));
        let right = FormElement::new(Bidegree(0, 1), vec![AlgebraElement::u(2, j), AlgebraElement::u(1, j)])?;
        pairs.push((left, right));
    }
    CoactedForm::from_pairs(Bidegree(0, 1), &pairs)
}

/// `a <| E2 = a <| F2 = 0` and `a <| K2 = a`: membership in the `*`-subalgebra generated by the first row.
pub fn is_in_first_row_sphere(a: &AlgebraElement) -> bool {
    act_right(&UqWord::single(UqGen::E2), a).is_zero()
        && act_right(&UqWord::single(UqGen::F2), a).is_zero()
        && act_right(&UqWord::single(UqGen::K2), a) == *a
}

/// `(Z_1, Z_2, Z_3) = (q^{-2} (u^1_3)^*, q^{-1} (u^1_2)^*, (u^1_1)^*)`, the images of the sphere generators.
pub fn first_row_sphere_generators() -> [AlgebraElement; 3] {
    [
        AlgebraElement::u(1, 3).star().scale(&Scalar::q_pow(-2)),
        AlgebraElement::u(1, 2).star().scale(&Scalar::q_pow(-1)),
        AlgebraElement::u(1, 1).star(),
    ]
}

/// The core one-forms spanning the connection one-form, with their `U(1)` weights.
pub fn connection_basis() -> [(&'static str, FormElement, i32); 4] {
    let x = AlgebraElement::x();
    [("del x", del(&x), 0), ("delbar x", delbar(&x), 0), ("phi", phi_closed(), 1), ("phi^*", phi_star_closed(), -1)]
}

/// `Some((k, c))` with `w = c b_k` for the first basis form `b_k` proportional to `w`.
pub fn decompose(w: &FormElement, basis: &[FormElement]) -> Option<(usize, Scalar)> {
    let (pos, lead) = w.comps().iter().enumerate().find(|(_, c)| !c.is_zero())?;
    let (word, cw) = &lead.terms()[0];
    basis.iter().enumerate().find_map(|(k, b)| {
        if b.bidegree() != w.bidegree() {
            return None;
        }
        let cb = b.comp(pos).terms().iter().find(|(v, _)| v == word)?.1.clone();
        let c = cw * &cb.inverse()?;
        (b.scale(&c) == *w).then_some((k, c))
    })
}

/// Residuals of the sphere relations evaluated on `z`:
/// `z_i z_j - q z_j z_i` (i<j), `z_i^* z_j - q z_j z_i^*` (i != j),
/// `[z_1^*, z_1]`, `[z_2^*, z_2] - (1-q^2) z_1 z_1^*`, `[z_3^*, z_3] - (1-q^2)(z_1 z_1^* + z_2 z_2^*)`
/// and `z_1 z_1^* + z_2 z_2^* + z_3 z_3^* - 1`.
pub fn sphere_relation_residuals(z: &[AlgebraElement; 3]) -> Vec<(String, AlgebraElement)> {
    let q = Scalar::q_pow(1);
    let zs: Vec<AlgebraElement> = z.iter().map(AlgebraElement::star).collect();
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i < j {
                out.push((format!("z{} z{}", i + 1, j + 1), &(&z[i] * &z[j]) - &(&z[j] * &z[i]).scale(&q)));
            }
            if i != j {
                out.push((format!("z{}^* z{}", i + 1, j + 1), &(&zs[i] * &z[j]) - &(&z[j] * &zs[i]).scale(&q)));
            }
        }
    }
    let one_minus_q2 = &Scalar::one() - &Scalar::q_pow(2);
    let mut lower = AlgebraElement::zero();
    for i in 0..3 {
        let comm = &(&zs[i] * &z[i]) - &(&z[i] * &zs[i]);
        out.push((format!("[z{}^*, z{}]", i + 1, i + 1), &comm - &lower.scale(&one_minus_q2)));
        lower = &lower + &(&z[i] * &zs[i]);
    }
    out.push(("sum z z^*".into(), &lower - &AlgebraElement::one()));
    out
}

/// A Laurent polynomial in the generator `g` of `O(U(1))`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GPoly(BTreeMap<i32, Scalar>);

impl GPoly {
    pub fn zero() -> Self {
        GPoly::default()
    }

    /// `c g^n`
    pub fn monomial(n: i32, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(n, c);
        }
        GPoly(m)
    }

    pub fn one() -> Self {
        Self::monomial(0, Scalar::one())
    }

    pub fn g() -> Self {
        Self::monomial(1, Scalar::one())
    }

    pub fn terms(&self) -> &BTreeMap<i32, Scalar> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.0.iter().fold(GPoly::zero(), |acc, (n, x)| &acc + &GPoly::monomial(*n, x * c))
    }

    /// `g^* = g^{-1}` and conjugate coefficients.
    pub fn star(&self) -> Self {
        self.0.iter().fold(GPoly::zero(), |acc, (n, x)| &acc + &GPoly::monomial(-n, x.conj()))
    }
}

impl std::ops::Add for &GPoly {
    type Output = GPoly;
    fn add(self, rhs: &GPoly) -> GPoly {
        let mut m = self.0.clone();
        for (n, c) in &rhs.0 {
            let slot = m.entry(*n).or_insert_with(Scalar::zero);
            *slot = &*slot + c;
        }
        m.retain(|_, c| !c.is_zero());
        GPoly(m)
    }
}

impl std::ops::Sub for &GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &GPoly) -> GPoly {
        self + &rhs.scale(&Scalar::from_int(-1))
    }
}

impl std::ops::Mul for &GPoly {
    type Output = GPoly;
    fn mul(self, rhs: &GPoly) -> GPoly {
        let mut out = GPoly::zero();
        for (n, a) in &self.0 {
            for (m, b) in &rhs.0 {
                out = &out + &GPoly::monomial(n + m, a * b);
            }
        }
        out
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(n, c)| format!("({c})*g^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `u^i_j -> delta_ij g^{2-j}` on a generator.
fn project_gen(g: Gen) -> Option<i32> {
    (g.row() == g.col()).then(|| 2 - g.col() as i32)
}

/// The projection on a product of generators.
pub fn u1_project_word(gens: &[Gen]) -> GPoly {
    gens.iter()
        .try_fold(0, |acc, &g| project_gen(g).map(|e| acc + e))
        .map(|n| GPoly::monomial(n, Scalar::one()))
        .unwrap_or_default()
}

/// The Hopf projection `O(SU_q(3)) -> O(U(1))`, `u^i_j -> delta_ij g^{2-j}`.
pub fn u1_project(a: &AlgebraElement) -> GPoly {
    a.words().iter().fold(GPoly::zero(), |acc, (w, c)| &acc + &u1_project_word(w).scale(c))
}

/// The projection of a relation given on raw words.
pub fn u1_project_relation(rel: &Comb) -> GPoly {
    let order = ring().system().order();
    rel.iter().fold(GPoly::zero(), |acc, (w, l)| {
        let gens: Vec<Gen> = w.letters().iter().map(|&r| order.gen(r)).collect();
        &acc + &u1_project_word(&gens).scale(&Scalar::from_laurent(l))
    })
}

/// `(pi (x) id) Delta_L` on a form: the right-leg form attached to each power of `g`.
pub fn u1_coact(w: &FormElement) -> Result<BTreeMap<i32, FormElement>, Error> {
    let dim = w.comps().len();
    let mut by_power: BTreeMap<i32, Vec<Vec<(NWord, Scalar)>>> = BTreeMap::new();
    for (k, t) in coact_form(w).comps().iter().enumerate() {
        for ((a, b), c) in t.terms() {
            let left = u1_project(&AlgebraElement::from_terms(vec![(*a, c.clone())]));
            for (n, x) in left.terms() {
                by_power.entry(*n).or_insert_with(|| vec![Vec::new(); dim])[k].push((*b, x.clone()));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (n, comps) in by_power {
        let f = FormElement::new(w.bidegree(), comps.into_iter().map(AlgebraElement::from_terms).collect())?;
        if !f.is_zero() {
            out.insert(n, f);
        }
    }
    Ok(out)
}

/// Residual of `(pi (x) id) Delta_L(w) = g^n (x) w`.
fn u1_weight_residual(w: &FormElement, n: i32) -> Result<Residual, Error> {
    let mut image = u1_coact(w)?;
    let own = image.remove(&n).unwrap_or_else(|| FormElement::zero(w.bidegree()));
    let mut bad = image.len();
    let diff = &own - w;
    if !diff.is_zero() {
        bad += 1;
    }
    let detail = image.iter().map(|(k, f)| format!("g^{k} (x) {f}")).collect::<Vec<_>>().join(" + ");
    Ok(Residual::Failures(bad, format!("{w}: {detail}; g^{n} part differs by {diff}")))
}

/// The coaction identities, in order, with the statement each one checks.
pub const FAMILY_STEPS: &[(&str, &str)] = &[
    (
        "u-w-inverse",
        "U W = W U = id with U(a (x) eta) = a S^{-1}(eta_(2)) (x) eta_(1), W(a (x) eta) = a eta_(2) (x) eta_(1)",
    ),
    ("w-module", "W(a (x) eta omega) = W(a (x) eta) Delta^cop(omega)"),
    ("coaction-x", "Delta_L(x) = sum_{j,k} q^{-2(k-1)} (u^1_k)^* u^1_j (x) p_jk"),
    ("coaction-dx", "Delta_L(del x) = sum_{j,k} q^{-2(k-1)} (u^1_k)^* u^1_j (x) del p_jk"),
    ("coaction-phi-star", "Delta_L(phi^*) = i sum_j q^{-2(j-1)} (u^1_j)^* (x) (u^2_j, u^1_j)"),
    ("coaction-commutes-with-d", "Delta_L(delbar x) = (id (x) delbar) Delta_L(x)"),
    ("left-legs-first-row", "left legs of Delta_L(omega_t) lie in the *-algebra generated by u^1_1, u^1_2, u^1_3"),
    (
        "first-row-sphere-relations",
        "z_1 -> q^{-2} (u^1_3)^*, z_2 -> q^{-1} (u^1_2)^*, z_3 -> (u^1_1)^* respects the sphere relations",
    ),
    ("u1-projection-morphism", "u^i_j -> delta_ij g^{2-j} kills every defining relation and commutes with the star"),
    ("u1-coaction", "x -> 1 (x) x, phi -> g (x) phi, phi^* -> g^* (x) phi^*"),
    ("gauge-conjugation", "omega_t -> diag(1, g^*) (1 (x) omega_t) diag(1, g)"),
    ("kahler-coinvariant", "Delta_L(omega_q) = 1 (x) omega_q"),
    ("split-preserved", "(id (x) hodge) Delta_L = Delta_L hodge on (1,1)-forms, so v- and s-parts are kept"),
];

/// Configuration of the sampled checks.
#[derive(Clone, Debug)]
pub struct FamilyConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: usize,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig { seed: 1, samples: 100, max_degree: 2 }
    }
}

fn random_tensor(rng: &mut StdRng, max_degree: usize) -> TensorElement {
    let a = random_element(rng, max_degree, 2);
    let b = random_element(rng, max_degree, 2);
    let c = random_element(rng, max_degree, 2);
    let d = random_element(rng, max_degree, 2);
    &TensorElement::pure(&a, &b) + &TensorElement::pure(&c, &d)
}

/// Residuals of one coaction step.
pub fn family_residuals(id: &str, params: &CalculusParams, config: &FamilyConfig) -> Result<Vec<Residual>, Error> {
    let x = AlgebraElement::x();
    let diff = |a: &CoactedForm, b: &CoactedForm| -> Vec<Residual> {
        (a - b).comps().iter().cloned().map(Residual::Tensor).collect()
    };
    Ok(match id {
        "u-w-inverse" => {
            let mut rng = StdRng::seed_from_u64(config.seed);
            let one = AlgebraElement::one();
            let unit = TensorElement::pure(&one, &one);
            let mut out: Vec<Residual> = vec![(&u_op(&unit) - &unit).into(), (&w_op(&unit) - &unit).into()];
            for _ in 0..config.samples {
                let t = random_tensor(&mut rng, config.max_degree);
                out.push((&u_op(&w_op(&t)) - &t).into());
                out.push((&w_op(&u_op(&t)) - &t).into());
            }
            out
        }
        "w-module" => {
            let mut rng = StdRng::seed_from_u64(config.seed.wrapping_add(1));
            let mut out: Vec<Residual> = Vec::new();
            for _ in 0..config.samples.div_ceil(5) {
                let a = random_element(&mut rng, config.max_degree, 2);
                let eta = random_element(&mut rng, config.max_degree, 2);
                let omega = random_element(&mut rng, config.max_degree, 2);
                let lhs = w_op(&TensorElement::pure(&a, &(&eta * &omega)));
                let rhs = &w_op(&TensorElement::pure(&a, &eta)) * &coproduct_cop(&omega);
                out.push((&lhs - &rhs).into());
            }
            out
        }
        "coaction-x" => diff(&coact_form(&FormElement::function(x)), &coaction_x_expected()?),
        "coaction-dx" => diff(&coact_form(&del(&x)), &coaction_dx_expected()?),
        "coaction-phi-star" => diff(&coact_form(&phi_star_closed()), &coaction_phi_star_expected()?),
        "coaction-commutes-with-d" => {
            let via_d = coact_form(&FormElement::function(x.clone())).map_right_forms(|w| delbar(w.comp(0)))?;
            let mut out = diff(&coact_form(&delbar(&x)), &via_d);
            out.extend(diff(&coact_form(&delbar(&x)), &coaction_dbarx_expected()?));
            out
        }
        "left-legs-first-row" => {
            let basis = connection_basis();
            let forms: Vec<FormElement> = basis.iter().map(|(_, w, _)| w.clone()).collect();
            let m = InstantonPipeline::generic(params.clone()).connection_closed_form()?;
            let mut bad = 0;
            let mut first = String::new();
            let mut note = |ok: bool, what: String| {
                if !ok {
                    if bad == 0 {
                        first = what;
                    }
                    bad += 1;
                }
            };
            for row in &m {
                for e in row {
                    for t in e.terms() {
                        note(
                            decompose(&t.core, &forms).is_some(),
                            format!("{} is not a multiple of a basis form", t.core),
                        );
                    }
                }
            }
            for (name, w, _) in &basis {
                for leg in coact_form(w).left_legs() {
                    note(is_in_first_row_sphere(&leg), format!("left leg {leg} of {name}"));
                }
            }
            vec![Residual::Failures(bad, first)]
        }
        "first-row-sphere-relations" => {
            let z = first_row_sphere_generators();
            sphere_relation_residuals(&z).into_iter().map(|(_, r)| Residual::Algebra(r)).collect()
        }
        "u1-projection-morphism" => {
            let order = ring().system().order().clone();
            let mut bad = 0;
            let mut first = String::new();
            let mut note = |ok: bool, what: String| {
                if !ok {
                    if bad == 0 {
                        first = what;
                    }
                    bad += 1;
                }
            };
            for (k, rel) in quadratic_relations(&order).iter().enumerate() {
                let img = u1_project_relation(rel);
                note(img.is_zero(), format!("quadratic relation {k} maps to {img}"));
            }
            let img = u1_project_relation(&cubic_relation(&order));
            note(img.is_zero(), format!("determinant relation maps to {img}"));
            for g in Gen::all() {
                let a = AlgebraElement::gen(g);
                let lhs = u1_project(&a.star());
                let rhs = u1_project(&a).star();
                note(lhs == rhs, format!("star of {g}: {lhs} against {rhs}"));
            }
            let px = u1_project(&x);
            note(px.is_zero(), format!("x maps to {px}"));
            let p33 = u1_project(&AlgebraElement::p(3, 3));
            note(p33 == GPoly::one(), format!("p33 maps to {p33}"));
            let pu = u1_project(&AlgebraElement::u(1, 1));
            note(pu == GPoly::g(), format!("u11 maps to {pu}"));
            vec![Residual::Failures(bad, first)]
        }
        "u1-coaction" => vec![
            u1_weight_residual(&FormElement::function(x.clone()), 0)?,
            u1_weight_residual(&del(&x), 0)?,
            u1_weight_residual(&delbar(&x), 0)?,
            u1_weight_residual(&phi_closed(), 1)?,
            u1_weight_residual(&phi_star_closed(), -1)?,
        ],
        "gauge-conjugation" => {
            // entry (i, j) picks up g^{e_i + f_j} with diag(1, g^*) on the left and diag(1, g) on the right
            let basis = connection_basis();
            let forms: Vec<FormElement> = basis.iter().map(|(_, w, _)| w.clone()).collect();
            let mut out = Vec::new();
            for (_, w, n) in &basis {
                out.push(u1_weight_residual(w, *n)?);
            }
            let pipeline = InstantonPipeline::generic(params.clone());
            let m = pipeline.connection_closed_form()?;
            let computed = pipeline.connection()?;
            for (row, crow) in m.iter().zip(computed) {
                for (e, c) in row.iter().zip(crow) {
                    out.push((c - e).into());
                }
            }
            let weight = [[0, 1], [-1, 0]];
            let mut bad = 0;
            let mut first = String::new();
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    for t in e.terms() {
                        let ok = decompose(&t.core, &forms).is_some_and(|(k, _)| basis[k].2 == weight[i][j]);
                        if !ok {
                            if bad == 0 {
                                first = format!("entry ({}, {}) has core {}", i + 1, j + 1, t.core);
                            }
                            bad += 1;
                        }
                    }
                }
            }
            out.push(Residual::Failures(bad, first));
            out
        }
        "kahler-coinvariant" => {
            let k = kahler(params);
            let one = AlgebraElement::one();
            diff(&coact_form(&k), &CoactedForm::from_pairs(k.bidegree(), &[(one, k.clone())])?)
        }
        "split-preserved" => {
            use rand::Rng;
            let mut rng = StdRng::seed_from_u64(config.seed.wrapping_add(2));
            let mut out = Vec::new();
            for _ in 0..config.samples.div_ceil(20) {
                // (1,1)-forms with coefficients in L_1 (x) L_{-1}, which keeps the degrees low
                let i = rng.gen_range(1..=3u8);
                let j = rng.gen_range(1..=3u8);
                let w = if rng.gen_bool(0.5) {
                    wedge(&del(&AlgebraElement::z(i)), &delbar(&AlgebraElement::zs(j)), params)
                } else {
                    wedge(&delbar(&AlgebraElement::zs(i)), &del(&AlgebraElement::z(j)), params)
                };
                let v = FormElement::new(
                    Bidegree(1, 1),
                    vec![w.comp(0).clone(), w.comp(1).clone(), w.comp(2).clone(), AlgebraElement::zero()],
                )?;
                let s = &w - &v;
                for f in [&v, &s, &real_star(&w)] {
                    let lhs = coact_form(&hodge(f, params));
                    let rhs = coact_form(f).map_right_forms(|g| hodge(g, params))?;
                    out.extend(diff(&lhs, &rhs));
                }
                out.push(Residual::Tensor(coact_form(&v).comps()[3].clone()));
                out.extend(coact_form(&s).comps()[..3].iter().cloned().map(Residual::Tensor));
            }
            let zero = coact_form(&FormElement::zero(Bidegree(1, 1)));
            out.push(Residual::Failures(usize::from(!zero.is_zero()), "Delta_L(0) is nonzero".into()));
            out
        }
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    })
}

/// Runs every coaction step, or only `step`.
pub fn verify_families(
    params: &CalculusParams,
    config: &FamilyConfig,
    step: Option<&str>,
) -> Result<Vec<StepReport>, Error> {
    if let Some(s) = step {
        if !FAMILY_STEPS.iter().any(|(id, _)| *id == s) {
            return Err(Error::Config(format!("unknown step {s}")));
        }
    }
    Ok(FAMILY_STEPS
        .iter()
        .filter(|(id, _)| step.is_none_or(|s| s == *id))
        .map(|(id, anchor)| StepReport::run(id, anchor, || family_residuals(id, params, config)))
        .collect())
}
