use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::qalgebra::{ring, AlgebraElement, NWord};
use crate::scalars::Scalar;

/// An element of `O(SU_q(3)) (x) O(SU_q(3))` with both legs in normal form.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: Vec<((NWord, NWord), Scalar)>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(items: impl IntoIterator<Item = ((NWord, NWord), Scalar)>) -> Self {
        let mut acc: FxHashMap<(NWord, NWord), Scalar> = FxHashMap::default();
        for (k, c) in items {
            let slot = acc.entry(k).or_default();
            *slot = &*slot + &c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        TensorElement { terms }
    }

    /// `a (x) b`
    pub fn pure(a: &AlgebraElement, b: &AlgebraElement) -> Self {
        Self::from_terms(
            a.terms().iter().flat_map(|(wa, ca)| b.terms().iter().map(move |(wb, cb)| ((*wa, *wb), ca * cb))),
        )
    }

    pub fn terms(&self) -> &[((NWord, NWord), Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x * c)))
    }

    /// Apply linear maps to the two legs, word by word.
    pub fn map_legs(
        &self,
        f: impl Fn(&AlgebraElement) -> AlgebraElement,
        g: impl Fn(&AlgebraElement) -> AlgebraElement,
    ) -> Self {
        let mut fl: FxHashMap<NWord, AlgebraElement> = FxHashMap::default();
        let mut gr: FxHashMap<NWord, AlgebraElement> = FxHashMap::default();
        let mut parts = Vec::new();
        for ((a, b), c) in &self.terms {
            let x = fl.entry(*a).or_insert_with(|| f(&AlgebraElement::from_terms(vec![(*a, Scalar::one())]))).clone();
            let y = gr.entry(*b).or_insert_with(|| g(&AlgebraElement::from_terms(vec![(*b, Scalar::one())]))).clone();
            parts.push(Self::pure(&x.scale(c), &y));
        }
        parts.iter().fold(Self::zero(), |acc, p| &acc + p)
    }

    /// Swap the two legs.
    pub fn flip(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((a, b), c)| ((*b, *a), c.clone())))
    }

    /// Multiply the legs together: `a (x) b -> a b`.
    pub fn multiply(&self) -> AlgebraElement {
        let ring = ring();
        AlgebraElement::from_terms(
            self.terms
                .iter()
                .flat_map(|((a, b), c)| ring.mul_words(*a, *b).into_iter().map(move |(w, l)| (w, c.mul_laurent(&l))))
                .collect(),
        )
    }

    /// `(id (x) f)` where `f` maps the right leg to scalars.
    pub fn contract_right(&self, f: impl Fn(NWord) -> Scalar) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|((a, b), c)| (*a, c * &f(*b))).collect())
    }

    /// `(f (x) id)` where `f` maps the left leg to scalars.
    pub fn contract_left(&self, f: impl Fn(NWord) -> Scalar) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|((a, b), c)| (*b, c * &f(*a))).collect())
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        TensorElement::from_terms(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        TensorElement { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &(-rhs)
    }
}

/// Leg-wise product in the tensor product algebra.
impl Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        let ring = ring();
        let mut out = Vec::new();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                let c = c1 * c2;
                let left = ring.mul_words(*a1, *a2);
                let right = ring.mul_words(*b1, *b2);
                for (wa, la) in &left {
                    for (wb, lb) in &right {
                        out.push(((*wa, *wb), c.mul_laurent(&(la * lb))));
                    }
                }
            }
        }
        TensorElement::from_terms(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Scalar::one();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let l = AlgebraElement::from_terms(vec![(*a, one.clone())]);
                let r = AlgebraElement::from_terms(vec![(*b, one.clone())]);
                format!("({c})*{l} (x) {r}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
