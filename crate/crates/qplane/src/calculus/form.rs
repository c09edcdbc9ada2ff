use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::qalgebra::AlgebraElement;
use crate::scalars::Scalar;
use crate::Error;

/// Bidegree `(i, j)` of a form.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Bidegree(pub u8, pub u8);

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree(0, 0);
    pub const TOP: Bidegree = Bidegree(2, 2);

    /// Dimension of `V^{i,j}`; zero outside the diamond.
    pub fn dim(self) -> usize {
        match (self.0, self.1) {
            (0, 0) | (2, 0) | (0, 2) | (2, 2) => 1,
            (1, 0) | (0, 1) | (2, 1) | (1, 2) => 2,
            (1, 1) => 4,
            _ => 0,
        }
    }

    pub fn degree(self) -> u8 {
        self.0 + self.1
    }

    pub fn in_diamond(self) -> bool {
        self.0 <= 2 && self.1 <= 2
    }

    pub fn swap(self) -> Bidegree {
        Bidegree(self.1, self.0)
    }

    pub fn all() -> impl Iterator<Item = Bidegree> {
        (0..=2).flat_map(|i| (0..=2).map(move |j| Bidegree(i, j)))
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree(self.0 + o.0, self.1 + o.1)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// A homogeneous form: components over the fixed basis of `V^{i,j}`.
/// For bidegree `(1,1)` components `0..3` are the `v`-part and `3` the `s`-part.
#[derive(Clone, Eq, Serialize)]
pub struct FormElement {
    bidegree: Bidegree,
    comps: Vec<AlgebraElement>,
}

impl FormElement {
    pub fn new(bidegree: Bidegree, comps: Vec<AlgebraElement>) -> Result<Self, Error> {
        if comps.len() != bidegree.dim() {
            return Err(Error::Bidegree(format!(
                "{} components for bidegree {bidegree} of dimension {}",
                comps.len(),
                bidegree.dim()
            )));
        }
        Ok(FormElement { bidegree, comps })
    }

    pub(crate) fn from_parts(bidegree: Bidegree, comps: Vec<AlgebraElement>) -> Self {
        debug_assert_eq!(comps.len(), bidegree.dim());
        FormElement { bidegree, comps }
    }

    pub fn zero(bidegree: Bidegree) -> Self {
        FormElement { bidegree, comps: vec![AlgebraElement::zero(); bidegree.dim()] }
    }

    /// A function viewed as a `(0,0)`-form.
    pub fn function(a: AlgebraElement) -> Self {
        FormElement { bidegree: Bidegree::ZERO, comps: vec![a] }
    }

    /// The constant basis form `e_k` of `V^{i,j}`.
    pub fn basis(bidegree: Bidegree, k: usize) -> Self {
        let mut f = Self::zero(bidegree);
        f.comps[k] = AlgebraElement::one();
        f
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn degree(&self) -> u8 {
        self.bidegree.degree()
    }

    pub fn comps(&self) -> &[AlgebraElement] {
        &self.comps
    }

    pub fn comp(&self, k: usize) -> &AlgebraElement {
        &self.comps[k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Number of stored terms over all components.
    pub fn size(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    pub fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Self {
        FormElement { bidegree: self.bidegree, comps: self.comps.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|a| a.scale(c))
    }

    /// `a . omega`
    pub fn left_mul(&self, a: &AlgebraElement) -> Self {
        self.map(|x| a * x)
    }

    /// `omega . a`
    pub fn right_mul(&self, a: &AlgebraElement) -> Self {
        self.map(|x| x * a)
    }

    /// `(1,1)` forms: the `v`-triple.
    pub fn v_part(&self) -> Result<&[AlgebraElement], Error> {
        self.expect(Bidegree(1, 1))?;
        Ok(&self.comps[..3])
    }

    /// `(1,1)` forms: the `s`-component.
    pub fn s_part(&self) -> Result<&AlgebraElement, Error> {
        self.expect(Bidegree(1, 1))?;
        Ok(&self.comps[3])
    }

    pub(crate) fn expect(&self, b: Bidegree) -> Result<(), Error> {
        if self.bidegree == b {
            Ok(())
        } else {
            Err(Error::Bidegree(format!("expected {b}, got {}", self.bidegree)))
        }
    }

    pub fn try_add(&self, o: &FormElement) -> Result<FormElement, Error> {
        if self.bidegree != o.bidegree {
            if o.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(o.clone());
            }
            return Err(Error::Bidegree(format!("{} + {}", self.bidegree, o.bidegree)));
        }
        Ok(FormElement {
            bidegree: self.bidegree,
            comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Sum of forms of one bidegree.
    pub fn sum<'a>(bidegree: Bidegree, items: impl IntoIterator<Item = &'a FormElement>) -> Result<Self, Error> {
        let items: Vec<&FormElement> = items.into_iter().collect();
        let mut comps = Vec::with_capacity(bidegree.dim());
        for k in 0..bidegree.dim() {
            let mut col = Vec::new();
            for f in &items {
                if f.bidegree != bidegree {
                    if f.is_zero() {
                        continue;
                    }
                    return Err(Error::Bidegree(format!("{} in a sum of {bidegree} forms", f.bidegree)));
                }
                col.push(&f.comps[k]);
            }
            comps.push(AlgebraElement::sum(col));
        }
        Ok(FormElement { bidegree, comps })
    }
}

impl PartialEq for FormElement {
    fn eq(&self, o: &Self) -> bool {
        if self.bidegree != o.bidegree {
            return self.is_zero() && o.is_zero();
        }
        self.comps == o.comps
    }
}

// zero forms of every bidegree are equal, so they must hash alike
impl std::hash::Hash for FormElement {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        if !self.is_zero() {
            self.bidegree.hash(h);
            self.comps.hash(h);
        }
    }
}

impl Add for &FormElement {
    type Output = FormElement;
    fn add(self, o: &FormElement) -> FormElement {
        self.try_add(o).expect("bidegree mismatch in form addition")
    }
}

impl Neg for &FormElement {
    type Output = FormElement;
    fn neg(self) -> FormElement {
        self.map(|a| -a)
    }
}

impl Sub for &FormElement {
    type Output = FormElement;
    fn sub(self, o: &FormElement) -> FormElement {
        self + &(-o)
    }
}

impl fmt::Display for FormElement {
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

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An inhomogeneous form, stored by bidegree. Parts outside the diamond are dropped.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Form {
    parts: BTreeMap<Bidegree, FormElement>,
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> impl Iterator<Item = &FormElement> {
        self.parts.values()
    }

    /// The part of bidegree `b` (zero if absent).
    pub fn part(&self, b: Bidegree) -> FormElement {
        self.parts.get(&b).cloned().unwrap_or_else(|| FormElement::zero(b))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn map(&self, f: impl Fn(&FormElement) -> FormElement) -> Self {
        self.parts.values().map(f).collect()
    }

    pub fn left_mul(&self, a: &AlgebraElement) -> Self {
        self.map(|w| w.left_mul(a))
    }

    pub fn right_mul(&self, a: &AlgebraElement) -> Self {
        self.map(|w| w.right_mul(a))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|w| w.scale(c))
    }
}

impl From<FormElement> for Form {
    fn from(w: FormElement) -> Self {
        std::iter::once(w).collect()
    }
}

impl FromIterator<FormElement> for Form {
    fn from_iter<I: IntoIterator<Item = FormElement>>(it: I) -> Self {
        let mut parts: BTreeMap<Bidegree, FormElement> = BTreeMap::new();
        for w in it {
            if !w.bidegree.in_diamond() {
                continue;
            }
            let b = w.bidegree;
            let merged = match parts.remove(&b) {
                Some(old) => &old + &w,
                None => w,
            };
            if !merged.is_zero() {
                parts.insert(b, merged);
            }
        }
        Form { parts }
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        self.parts.values().chain(o.parts.values()).cloned().collect()
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map(|w| -w)
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self + &(-o)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.values().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
