//! Sums `sum_i g_i(x) w_i` of twisted functions of `x = p_11` times core forms.
//!
//! Every core form `w` carries an x-grade `gamma` with `w x = q^{2 gamma} x w`, so a
//! function passes it as `w g(x) = g(q^{2 gamma} x) w`. Functions are kept to the left.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::calculus::{del, delbar, real_star, sd_part, wedge, Bidegree, CalculusParams, FormElement};
use crate::qalgebra::AlgebraElement;
use crate::scalars::{FunScalar, Scalar};
use crate::symmetry::{act_right, UqGen, UqWord};
use crate::Error;

/// Search window for [`x_grade`].
pub const GRADE_WINDOW: i32 = 3;

/// The integer `gamma` with `a x = q^{2 gamma} x a`, searched in `[-3, 3]`.
pub fn x_grade(a: &AlgebraElement) -> Result<i32, Error> {
    if a.is_zero() {
        return Ok(0);
    }
    let x = AlgebraElement::x();
    let right = a * &x;
    let left = &x * a;
    (-GRADE_WINDOW..=GRADE_WINDOW)
        .find(|&g| left.scale(&Scalar::q_pow(2 * g)) == right)
        .ok_or_else(|| Error::Grade(format!("{a}")))
}

/// Common x-grade of the components of a form.
pub fn form_x_grade(w: &FormElement) -> Result<i32, Error> {
    let mut grade = None;
    for c in w.comps().iter().filter(|c| !c.is_zero()) {
        let g = x_grade(c)?;
        match grade {
            Some(h) if h != g => return Err(Error::Grade(format!("components of grades {h} and {g} in {w}"))),
            _ => grade = Some(g),
        }
    }
    Ok(grade.unwrap_or(0))
}

/// Polynomial in `x` as an algebra element.
pub fn poly_in_x(coeffs: &[Scalar]) -> AlgebraElement {
    let x = AlgebraElement::x();
    let mut out = AlgebraElement::zero();
    for c in coeffs.iter().rev() {
        out = &(&out * &x) + &AlgebraElement::scalar(c.clone());
    }
    out
}

/// One term `fun * core`.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedTerm {
    pub fun: FunScalar,
    pub core: FormElement,
    pub grade: i32,
}

/// A finite sum of terms `g(x) w` with `w` grade-homogeneous.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MixedElement {
    terms: Vec<MixedTerm>,
}

fn k2_weight(a: &AlgebraElement) -> Result<Scalar, Error> {
    let image = act_right(&UqWord::single(UqGen::K2), a);
    (-12..=12)
        .map(Scalar::q_half)
        .find(|c| a.scale(c) == image)
        .ok_or_else(|| Error::Domain(format!("{a} is not a K2 weight vector")))
}

/// Elements on which the twisted Leibniz rule `d(g a) = g da + (dg)(a <| K2)` holds.
fn check_leibniz_factor(a: &AlgebraElement) -> Result<Scalar, Error> {
    let kill = |g: UqGen| act_right(&UqWord::single(g), a);
    if !kill(UqGen::E1).is_zero() || !kill(UqGen::F1).is_zero() || kill(UqGen::K1) != *a {
        return Err(Error::Domain(format!("{a} is not invariant under the su(2) factor")));
    }
    k2_weight(a)
}

fn fun_times_core(g: &FunScalar, w: &FormElement, grade: i32) -> MixedTerm {
    MixedTerm { fun: g.clone(), core: w.clone(), grade }
}

fn core_product(a: &FormElement, b: &FormElement, params: &CalculusParams) -> FormElement {
    match (a.bidegree() == Bidegree::ZERO, b.bidegree() == Bidegree::ZERO) {
        (true, true) => FormElement::function(a.comp(0) * b.comp(0)),
        (true, false) => b.left_mul(a.comp(0)),
        (false, true) => a.right_mul(b.comp(0)),
        (false, false) => wedge(a, b, params),
    }
}

impl MixedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `g(x) w`, certifying the grade of `w`.
    pub fn term(g: FunScalar, w: FormElement) -> Result<Self, Error> {
        let grade = form_x_grade(&w)?;
        Ok(MixedElement { terms: vec![MixedTerm { fun: g, core: w, grade }] }.normalized())
    }

    pub fn core(w: FormElement) -> Result<Self, Error> {
        Self::term(FunScalar::one(), w)
    }

    pub fn algebra(a: &AlgebraElement) -> Result<Self, Error> {
        Self::core(FormElement::function(a.clone()))
    }

    pub fn fun(g: FunScalar) -> Self {
        MixedElement { terms: vec![fun_times_core(&g, &FormElement::function(AlgebraElement::one()), 0)] }.normalized()
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::fun(FunScalar::constant(c))
    }

    pub fn terms(&self) -> &[MixedTerm] {
        &self.terms
    }

    /// Merges terms with equal function, bidegree and grade and drops zero terms.
    /// Idempotent.
    pub fn normalized(self) -> Self {
        let mut out: Vec<MixedTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if t.fun.is_zero() || t.core.is_zero() {
                continue;
            }
            match out
                .iter_mut()
                .find(|o| o.grade == t.grade && o.core.bidegree() == t.core.bidegree() && o.fun == t.fun)
            {
                Some(o) => o.core = &o.core + &t.core,
                None => out.push(t),
            }
        }
        out.retain(|t| !t.core.is_zero());
        MixedElement { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        MixedElement { terms: self.terms.iter().map(|t| MixedTerm { fun: t.fun.scale(c), ..t.clone() }).collect() }
            .normalized()
    }

    /// `g * self`
    pub fn left_fun(&self, g: &FunScalar) -> Self {
        MixedElement { terms: self.terms.iter().map(|t| MixedTerm { fun: g * &t.fun, ..t.clone() }).collect() }
            .normalized()
    }

    /// `self * g`, moving `g` to the left of each core factor.
    pub fn right_fun(&self, g: &FunScalar) -> Self {
        MixedElement {
            terms: self.terms.iter().map(|t| MixedTerm { fun: &t.fun * &g.fun_shift(t.grade), ..t.clone() }).collect(),
        }
        .normalized()
    }

    /// Product: the algebra product when a factor is a function, the wedge product otherwise.
    /// `(g w)(h v) = g h(q^{2 gamma_w} x) (w v)`; grades add.
    pub fn mul(&self, o: &MixedElement, params: &CalculusParams) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                let fun = &a.fun * &b.fun.fun_shift(a.grade);
                let core = core_product(&a.core, &b.core, params);
                terms.push(MixedTerm { fun, core, grade: a.grade + b.grade });
            }
        }
        MixedElement { terms }.normalized()
    }

    /// Recomputes every grade from the core factors.
    pub fn certify(&self) -> Result<(), Error> {
        for t in &self.terms {
            let g = form_x_grade(&t.core)?;
            if g != t.grade {
                return Err(Error::Grade(format!("recorded grade {} but computed {g}", t.grade)));
            }
        }
        Ok(())
    }

    /// The part of bidegree `b`.
    pub fn part(&self, b: Bidegree) -> Self {
        MixedElement { terms: self.terms.iter().filter(|t| t.core.bidegree() == b).cloned().collect() }
    }

    /// Applies a grade-preserving map to every core factor.
    pub fn map_core(&self, f: impl Fn(&FormElement) -> FormElement) -> Self {
        MixedElement { terms: self.terms.iter().map(|t| MixedTerm { core: f(&t.core), ..t.clone() }).collect() }
            .normalized()
    }

    /// `(g w)^* = w^* g^* = g^*(q^{2 gamma'} x) w^*` with the involution making `d` real.
    pub fn star(&self) -> Self {
        MixedElement {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let core = real_star(&t.core);
                    let grade = -t.grade;
                    MixedTerm { fun: t.fun.conj().fun_shift(grade), core, grade }
                })
                .collect(),
        }
        .normalized()
    }

    fn derivative(&self, holomorphic: bool) -> Result<Self, Error> {
        let x = AlgebraElement::x();
        let (dx, shift) = if holomorphic { (del(&x), 1) } else { (delbar(&x), -1) };
        let dx_grade = if holomorphic { 1 } else { -1 };
        let mut terms = Vec::new();
        for t in &self.terms {
            t.core.expect(Bidegree::ZERO)?;
            let a = t.core.comp(0);
            let da = if holomorphic { del(a) } else { delbar(a) };
            terms.push(MixedTerm { fun: t.fun.clone(), core: da, grade: t.grade + dx_grade });
            let dg = t.fun.q_derivative().shift_q(shift);
            if dg.is_zero() {
                continue;
            }
            let w = check_leibniz_factor(a)?;
            terms.push(MixedTerm { fun: dg, core: dx.right_mul(a).scale(&w), grade: t.grade + dx_grade });
        }
        Ok(MixedElement { terms }.normalized())
    }

    /// `del` of a mixed function: `del(g a) = g del a + g'(qx) (del x)(a <| K2)`.
    pub fn del(&self) -> Result<Self, Error> {
        self.derivative(true)
    }

    /// `delbar(g a) = g delbar a + g'(x/q) (delbar x)(a <| K2)`.
    pub fn delbar(&self) -> Result<Self, Error> {
        self.derivative(false)
    }

    pub fn d(&self) -> Result<Self, Error> {
        Ok(&self.del()? + &self.delbar()?)
    }

    /// The self-dual projection of the `(1,1)` part.
    pub fn sd(&self, params: &CalculusParams) -> Result<Self, Error> {
        let part = self.part(Bidegree(1, 1));
        let mut out = Vec::new();
        for t in part.terms {
            let keep = sd_part(&t.core, params)?;
            let mut comps = vec![AlgebraElement::zero(); 4];
            if keep.len() == 3 {
                comps[..3].clone_from_slice(&keep);
            } else {
                comps[3] = keep[0].clone();
            }
            out.push(MixedTerm { core: FormElement::new(Bidegree(1, 1), comps)?, ..t });
        }
        Ok(MixedElement { terms: out }.normalized())
    }

    /// The core forms left after clearing denominators, one per bidegree and root set;
    /// the element is zero iff all of them are.
    pub fn cleared(&self) -> Vec<FormElement> {
        let mut groups: BTreeMap<Bidegree, Vec<&MixedTerm>> = BTreeMap::new();
        for t in &self.terms {
            groups.entry(t.core.bidegree()).or_default().push(t);
        }
        let mut out = Vec::new();
        for (b, ts) in groups {
            let funs: Vec<&FunScalar> = ts.iter().map(|t| &t.fun).collect();
            let nums = FunScalar::common_numerators(&funs);
            let mut by_roots: BTreeMap<Vec<i32>, Vec<FormElement>> = BTreeMap::new();
            for (t, num) in ts.iter().zip(&nums) {
                for (roots, poly) in num {
                    by_roots.entry(roots.clone()).or_default().push(t.core.left_mul(&poly_in_x(poly)));
                }
            }
            for forms in by_roots.values() {
                let total = FormElement::sum(b, forms).expect("homogeneous group");
                if !total.is_zero() {
                    out.push(total);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.cleared().is_empty()
    }

    /// Number of algebra terms surviving [`MixedElement::cleared`].
    pub fn residual_terms(&self) -> usize {
        self.cleared().iter().map(FormElement::size).sum()
    }
}

impl Add for &MixedElement {
    type Output = MixedElement;
    fn add(self, o: &MixedElement) -> MixedElement {
        MixedElement { terms: self.terms.iter().chain(&o.terms).cloned().collect() }.normalized()
    }
}

impl Neg for &MixedElement {
    type Output = MixedElement;
    fn neg(self) -> MixedElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Sub for &MixedElement {
    type Output = MixedElement;
    fn sub(self, o: &MixedElement) -> MixedElement {
        self + &(-o)
    }
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{{{}}} {}", t.fun, t.core)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
