use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::gens::Gen;
use super::ring::ring;
use super::word::NWord;
use crate::scalars::{Laurent, Scalar};

/// An element of `O(SU_q(3))` in normal form: normal words with nonzero
/// scalar coefficients, sorted by word.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: Vec<(NWord, Scalar)>,
}

fn collect(acc: FxHashMap<NWord, Scalar>) -> AlgebraElement {
    let mut terms: Vec<(NWord, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by_key(|t| t.0);
    AlgebraElement { terms }
}

fn add_into(acc: &mut FxHashMap<NWord, Scalar>, w: NWord, c: Scalar) {
    use std::collections::hash_map::Entry;
    match acc.entry(w) {
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            *e.get_mut() = s;
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::from_terms(vec![(NWord::ONE, c)])
    }

    /// Sum of scalar multiples of normal words.
    pub fn from_terms(terms: Vec<(NWord, Scalar)>) -> Self {
        let mut acc = FxHashMap::default();
        for (w, c) in terms {
            add_into(&mut acc, w, c);
        }
        collect(acc)
    }

    pub(crate) fn from_expansion(e: &[(NWord, Laurent)], c: &Scalar) -> Self {
        Self::from_terms(e.iter().map(|(w, l)| (*w, c.mul_laurent(l))).collect())
    }

    /// The generator `u^i_j`.
    pub fn u(i: u8, j: u8) -> Self {
        Self::gen(Gen::new(i, j))
    }

    pub fn gen(g: Gen) -> Self {
        let r = ring().system().order().rank(g);
        AlgebraElement { terms: vec![(NWord::ONE.inc(r), Scalar::one())] }
    }

    /// Normal form of a raw product of generators times a scalar.
    pub fn from_word(gens: &[Gen], c: &Scalar) -> Self {
        let ring = ring();
        let letters: Vec<u8> = gens.iter().map(|&g| ring.system().order().rank(g)).collect();
        Self::from_expansion(&ring.normal_form_word(&letters), c)
    }

    /// `z_i = u^3_i`
    pub fn z(i: u8) -> Self {
        Self::u(3, i)
    }

    /// `z_i^*`
    pub fn zs(i: u8) -> Self {
        Self::z(i).star()
    }

    /// `p_ij = z_i^* z_j`
    pub fn p(i: u8, j: u8) -> Self {
        &Self::zs(i) * &Self::z(j)
    }

    /// `x = p_11`
    pub fn x() -> Self {
        Self::p(1, 1)
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

    pub fn terms(&self) -> &[(NWord, Scalar)] {
        &self.terms
    }

    /// The terms with words spelled out as generators.
    pub fn words(&self) -> Vec<(Vec<Gen>, Scalar)> {
        let order = ring().system().order();
        self.terms.iter().map(|(w, c)| (w.letters().iter().map(|&r| order.gen(r)).collect(), c.clone())).collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(w, _)| w.degree()).max().unwrap_or(0)
    }

    /// The scalar value if this element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(w, c)] if *w == NWord::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(w, x)| (*w, x * c)).filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The `*`-involution: conjugate-linear, anti-multiplicative, with
    /// generators sent to their quantum minors.
    pub fn star(&self) -> Self {
        let mut acc = FxHashMap::default();
        for (w, c) in &self.terms {
            let sw = star_word(*w);
            let cc = c.conj();
            for (v, x) in &sw.terms {
                add_into(&mut acc, *v, x * &cc);
            }
        }
        collect(acc)
    }

    /// Sum of coefficient term counts; a size measure for reports.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|(_, c)| c.len()).sum()
    }

    /// Evaluate at `q = 1` with `u^i_j -> m[i-1][j-1]`, `cos(theta) = c0`,
    /// `sin(theta) = sg0`.
    pub fn eval_classical(&self, m: &[[Complex64; 3]; 3], c0: f64, sg0: f64) -> Complex64 {
        let order = ring().system().order();
        self.terms
            .iter()
            .map(|(w, c)| {
                let mut v = c.eval(1.0, c0, sg0);
                for r in w.letters() {
                    let g = order.gen(r);
                    v *= m[g.row() as usize - 1][g.col() as usize - 1];
                }
                v
            })
            .sum()
    }

    /// Map every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (*w, f(c))).collect())
    }

    /// Sum of a sequence of elements.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a AlgebraElement>) -> Self {
        let mut acc = FxHashMap::default();
        for e in items {
            for (w, c) in &e.terms {
                add_into(&mut acc, *w, c.clone());
            }
        }
        collect(acc)
    }
}

fn star_gen(g: Gen) -> AlgebraElement {
    // (u^i_j)^* = (-q)^{j-i} (u^{k1}_{l1} u^{k2}_{l2} - q u^{k1}_{l2} u^{k2}_{l1})
    let (i, j) = (g.row(), g.col());
    let ks: Vec<u8> = (1..=3).filter(|&k| k != i).collect();
    let ls: Vec<u8> = (1..=3).filter(|&l| l != j).collect();
    let e = j as i32 - i as i32;
    let pref = Scalar::q_pow(e).scale_q(crate::scalars::Q::from_integer(if e % 2 == 0 { 1 } else { -1 }));
    let a = AlgebraElement::from_word(&[Gen::new(ks[0], ls[0]), Gen::new(ks[1], ls[1])], &pref);
    let b = AlgebraElement::from_word(&[Gen::new(ks[0], ls[1]), Gen::new(ks[1], ls[0])], &(&pref * &Scalar::q_pow(1)));
    &a - &b
}

fn star_gens() -> &'static [AlgebraElement; 9] {
    static S: OnceLock<[AlgebraElement; 9]> = OnceLock::new();
    S.get_or_init(|| {
        let order = ring().system().order();
        std::array::from_fn(|r| star_gen(order.gen(r as u8)))
    })
}

fn star_word(w: NWord) -> AlgebraElement {
    static MEMO: OnceLock<dashmap::DashMap<NWord, AlgebraElement>> = OnceLock::new();
    let memo = MEMO.get_or_init(dashmap::DashMap::new);
    if let Some(e) = memo.get(&w) {
        return e.clone();
    }
    let gens = star_gens();
    let mut out = AlgebraElement::one();
    for r in w.letters().into_iter().rev() {
        out = &out * &gens[r as usize];
    }
    if w.degree() <= 6 {
        memo.insert(w, out.clone());
    }
    out
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::sum([self, rhs])
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

type IntTerms = Vec<(NWord, Vec<(i32, i128)>)>;

fn int_terms(a: &AlgebraElement) -> Option<IntTerms> {
    a.terms.iter().map(|(w, c)| Some((*w, c.as_int_laurent()?))).collect()
}

/// Product when every coefficient is an integer Laurent polynomial in `q^{1/4}`,
/// accumulated per (word, exponent) in machine integers.
fn mul_int_laurent(a: &AlgebraElement, b: &AlgebraElement) -> Option<AlgebraElement> {
    let (ta, tb) = (int_terms(a)?, int_terms(b)?);
    let ring = ring();
    let mut acc: FxHashMap<(NWord, i32), i128> = FxHashMap::default();
    let mut c: Vec<(i32, i128)> = Vec::new();
    for (wb, cb) in &tb {
        let letters = wb.letters();
        for (wa, ca) in &ta {
            c.clear();
            for &(e1, k1) in ca {
                for &(e2, k2) in cb {
                    c.push((e1 + e2, k1.checked_mul(k2).expect("coefficient overflow")));
                }
            }
            for (w, l) in ring.fold(*wa, &letters) {
                for &(e1, k1) in &c {
                    for &(e2, k2) in l.terms() {
                        let slot = acc.entry((w, e1 + 2 * e2)).or_insert(0);
                        *slot = slot
                            .checked_add(k1.checked_mul(k2).expect("coefficient overflow"))
                            .expect("coefficient overflow");
                    }
                }
            }
        }
    }
    let mut flat: Vec<((NWord, i32), i128)> = acc.into_iter().filter(|t| t.1 != 0).collect();
    flat.sort_unstable_by_key(|t| t.0);
    let mut terms = Vec::new();
    for chunk in flat.chunk_by(|x, y| x.0 .0 == y.0 .0) {
        terms.push((chunk[0].0 .0, Scalar::from_int_laurent(chunk.iter().map(|t| (t.0 .1, t.1)))));
    }
    Some(AlgebraElement { terms })
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        if self.is_zero() || rhs.is_zero() {
            return AlgebraElement::zero();
        }
        if let Some(out) = mul_int_laurent(self, rhs) {
            return out;
        }
        let ring = ring();
        let mut acc: FxHashMap<NWord, Scalar> = FxHashMap::default();
        for (wb, cb) in &rhs.terms {
            let letters = wb.letters();
            for (wa, ca) in &self.terms {
                let c = ca * cb;
                if letters.is_empty() {
                    add_into(&mut acc, *wa, c);
                    continue;
                }
                for (w, l) in ring.fold(*wa, &letters) {
                    add_into(&mut acc, w, c.mul_laurent(&l));
                }
            }
        }
        collect(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl From<Scalar> for AlgebraElement {
    fn from(c: Scalar) -> Self {
        AlgebraElement::scalar(c)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&(NWord, Scalar)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| b.0.deglex(a.0));
        let order = ring().system().order();
        let parts: Vec<String> = sorted
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.letters().iter().map(|&r| order.gen(r).to_string()).collect();
                if word.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    word.join("*")
                } else {
                    format!("({c})*{}", word.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let order = ring().system().order();
        let terms: Vec<(String, &Scalar)> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<String> = w.letters().iter().map(|&r| order.gen(r).to_string()).collect();
                (if word.is_empty() { "1".to_string() } else { word.join("*") }, c)
            })
            .collect();
        terms.serialize(s)
    }
}
