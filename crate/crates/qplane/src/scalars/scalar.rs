use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use super::{render_q_quarter, Laurent};

/// Rational coefficient.
pub type Q = Ratio<i128>;

/// A monomial `w^s r^r c^c sigma^sg i^i` of the coefficient tower, `w = q^{1/4}`.
///
/// `r`, `sigma` and `i` occur at most once: `r^2 = w^4 + w^-4`,
/// `sigma^2 = 1 - c^2` and `i^2 = -1` are applied during multiplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    pub s: i32,
    pub c: u16,
    pub r: bool,
    pub sg: bool,
    pub i: bool,
}

impl Mono {
    pub const ONE: Mono = Mono { s: 0, c: 0, r: false, sg: false, i: false };

    fn mul(self, o: Mono) -> SmallVec<[(Mono, i128); 8]> {
        let base = Mono { s: self.s + o.s, c: self.c + o.c, r: self.r ^ o.r, sg: self.sg ^ o.sg, i: self.i ^ o.i };
        let sign: i128 = if self.i && o.i { -1 } else { 1 };
        let mut out: SmallVec<[(Mono, i128); 8]> = SmallVec::new();
        out.push((base, sign));
        if self.r && o.r {
            out = out
                .into_iter()
                .flat_map(|(m, k)| [(Mono { s: m.s + 4, ..m }, k), (Mono { s: m.s - 4, ..m }, k)])
                .collect();
        }
        if self.sg && o.sg {
            out = out.into_iter().flat_map(|(m, k)| [(m, k), (Mono { c: m.c + 2, ..m }, -k)]).collect();
        }
        out
    }

    /// Everything but the power of `s`; terms sharing a key form a Laurent
    /// polynomial in `s`.
    fn key(self) -> (u16, bool, bool, bool) {
        (self.c, self.r, self.sg, self.i)
    }
}

/// Denominator `[2]^two (q - q^{-1})^qq`; `[2] = q + q^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct Den {
    pub two: u16,
    pub qq: u16,
}

impl Den {
    fn is_one(self) -> bool {
        self.two == 0 && self.qq == 0
    }
}

/// Exact element of the coefficient tower: Gaussian-rational Laurent
/// polynomials in `s = q^{1/2}`, extended by `r = [2]^{1/2}` and by
/// `c = cos(theta)`, `sigma = sin(theta)`, divided by powers of `[2]` and
/// `q - q^{-1}`.
///
/// The representation is canonical: numerator terms sorted and merged, and
/// the denominator reduced as far as exact division allows. Equality is
/// therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(Mono, Q)>,
    den: Den,
}

fn merge_sorted(mut terms: Vec<(Mono, Q)>) -> Vec<(Mono, Q)> {
    terms.sort_unstable_by_key(|a| a.0);
    let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 += c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

/// Divide `w^4 * P(w)` by `w^8 + eps`, exactly, or fail.
fn div_octic(terms: &[(i32, Q)], eps: i128) -> Option<Vec<(i32, Q)>> {
    let lo = terms[0].0;
    let hi = terms.last().unwrap().0;
    let deg = (hi - lo) as usize;
    if deg < 8 {
        return None;
    }
    let mut a = vec![Q::zero(); deg + 1];
    for (e, c) in terms {
        a[(*e - lo) as usize] = *c;
    }
    let mut quot = vec![Q::zero(); deg - 7];
    for k in (8..=deg).rev() {
        let c = a[k];
        if c.is_zero() {
            continue;
        }
        quot[k - 8] = c;
        a[k - 8] -= c * Q::from_integer(eps);
        a[k] = Q::zero();
    }
    if a[..8].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot.into_iter().enumerate().filter(|t| !t.1.is_zero()).map(|(k, c)| (k as i32 + lo + 4, c)).collect())
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_integer(n as i128))
    }

    pub fn from_q(c: Q) -> Self {
        Self::from_mono(Mono::ONE, c)
    }

    pub fn from_mono(m: Mono, c: Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { terms: vec![(m, c)], den: Den::default() }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(Q::new(n as i128, d as i128))
    }

    /// `q^{n/2}`
    pub fn q_half(n: i32) -> Self {
        Self::q_quarter(2 * n)
    }

    /// `q^{n/4}`
    pub fn q_quarter(n: i32) -> Self {
        Self::from_mono(Mono { s: n, ..Mono::ONE }, Q::one())
    }

    /// `q^n`
    pub fn q_pow(n: i32) -> Self {
        Self::q_half(2 * n)
    }

    /// `r = [2]^{1/2}`
    pub fn r() -> Self {
        Self::from_mono(Mono { r: true, ..Mono::ONE }, Q::one())
    }

    /// `[2] = q + q^{-1}`
    pub fn two() -> Self {
        Self::from_laurent(&(&Laurent::q_pow(1) + &Laurent::q_pow(-1)))
    }

    pub fn q_minus_qinv() -> Self {
        Self::from_laurent(&Laurent::q_minus_qinv())
    }

    pub fn i() -> Self {
        Self::from_mono(Mono { i: true, ..Mono::ONE }, Q::one())
    }

    /// `cos(theta)`
    pub fn c() -> Self {
        Self::from_mono(Mono { c: 1, ..Mono::ONE }, Q::one())
    }

    /// `sin(theta)`
    pub fn sigma() -> Self {
        Self::from_mono(Mono { sg: true, ..Mono::ONE }, Q::one())
    }

    /// `t = sin(2 theta) = 2 c sigma`
    pub fn t() -> Self {
        Self::from_mono(Mono { c: 1, sg: true, ..Mono::ONE }, Q::from_integer(2))
    }

    /// `cos(2 theta) = 2c^2 - 1`
    pub fn cos2() -> Self {
        &Self::from_mono(Mono { c: 2, ..Mono::ONE }, Q::from_integer(2)) - &Self::one()
    }

    pub fn from_laurent(l: &Laurent) -> Self {
        Scalar {
            terms: l.terms().iter().map(|&(e, c)| (Mono { s: 2 * e, ..Mono::ONE }, Q::from_integer(c))).collect(),
            den: Den::default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c_e w^e` with integer `c_e`, when `self` has that form.
    pub(crate) fn as_int_laurent(&self) -> Option<Vec<(i32, i128)>> {
        if !self.den.is_one() {
            return None;
        }
        self.terms
            .iter()
            .map(|(m, c)| (Mono { s: 0, ..*m } == Mono::ONE && c.is_integer()).then(|| (m.s, *c.numer())))
            .collect()
    }

    /// Inverse of [`Scalar::as_int_laurent`]; `terms` must be sorted with distinct exponents.
    pub(crate) fn from_int_laurent(terms: impl IntoIterator<Item = (i32, i128)>) -> Self {
        Scalar {
            terms: terms
                .into_iter()
                .filter(|t| t.1 != 0)
                .map(|(e, c)| (Mono { s: e, ..Mono::ONE }, Q::from_integer(c)))
                .collect(),
            den: Den::default(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.terms.len() == 1 && self.terms[0] == (Mono::ONE, Q::one())
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn den(&self) -> Den {
        self.den
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if this scalar is a rational constant.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if *m == Mono::ONE && self.den.is_one() => Some(*c),
            _ => None,
        }
    }

    fn build(terms: Vec<(Mono, Q)>, den: Den) -> Self {
        let mut out = Scalar { terms: merge_sorted(terms), den };
        out.reduce_den();
        out
    }

    /// Cancel denominator atoms that divide the numerator.
    fn reduce_den(&mut self) {
        if self.terms.is_empty() {
            self.den = Den::default();
            return;
        }
        while self.den.two > 0 {
            match self.div_numerator(1) {
                Some(t) => {
                    self.terms = t;
                    self.den.two -= 1;
                }
                None => break,
            }
        }
        while self.den.qq > 0 {
            match self.div_numerator(-1) {
                Some(t) => {
                    self.terms = t;
                    self.den.qq -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator divided by `w^{-4}(w^8 + eps)`, grouped by the non-`s` part.
    fn div_numerator(&self, eps: i128) -> Option<Vec<(Mono, Q)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        let mut sorted: Vec<&(Mono, Q)> = self.terms.iter().collect();
        sorted.sort_by_key(|a| (a.0.key(), a.0.s));
        let mut start = 0;
        while start < sorted.len() {
            let key = sorted[start].0.key();
            let mut end = start;
            while end < sorted.len() && sorted[end].0.key() == key {
                end += 1;
            }
            let group: Vec<(i32, Q)> = sorted[start..end].iter().map(|t| (t.0.s, t.1)).collect();
            let quot = div_octic(&group, eps)?;
            let m = sorted[start].0;
            out.extend(quot.into_iter().map(|(e, c)| (Mono { s: e, ..m }, c)));
            start = end;
        }
        Some(merge_sorted(out))
    }

    fn numerator_times_laurent(&self, l: &Laurent) -> Vec<(Mono, Q)> {
        let mut out = Vec::with_capacity(self.terms.len() * l.terms().len());
        for &(m, c) in &self.terms {
            for &(e, k) in l.terms() {
                out.push((Mono { s: m.s + 2 * e, ..m }, c * Q::from_integer(k)));
            }
        }
        out
    }

    /// Numerator rewritten over the (larger) denominator `d`.
    fn lift_to(&self, d: Den) -> Vec<(Mono, Q)> {
        if d == self.den {
            return self.terms.clone();
        }
        let mut l = Laurent::one();
        let two = &Laurent::q_pow(1) + &Laurent::q_pow(-1);
        for _ in self.den.two..d.two {
            l = &l * &two;
        }
        for _ in self.den.qq..d.qq {
            l = &l * &Laurent::q_minus_qinv();
        }
        self.numerator_times_laurent(&l)
    }

    pub fn mul_laurent(&self, l: &Laurent) -> Self {
        if l.is_zero() || self.is_zero() {
            return Self::zero();
        }
        if l.terms().len() == 1 {
            let (e, k) = l.terms()[0];
            let k = Q::from_integer(k);
            return Scalar {
                terms: self.terms.iter().map(|&(m, c)| (Mono { s: m.s + 2 * e, ..m }, c * k)).collect(),
                den: self.den,
            };
        }
        Self::build(self.numerator_times_laurent(l), self.den)
    }

    pub fn scale_q(&self, k: Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Scalar { terms: self.terms.iter().map(|&(m, c)| (m, c * k)).collect(), den: self.den }
    }

    /// Multiply by `q^{n/2}`.
    pub fn shift_half(&self, n: i32) -> Self {
        Scalar { terms: self.terms.iter().map(|&(m, c)| (Mono { s: m.s + 2 * n, ..m }, c)).collect(), den: self.den }
    }

    /// Divide by `[2]`.
    pub fn div_two(&self) -> Self {
        Self::build(self.terms.clone(), Den { two: self.den.two + 1, ..self.den })
    }

    /// Divide by `q - q^{-1}`.
    pub fn div_q_minus_qinv(&self) -> Self {
        Self::build(self.terms.clone(), Den { qq: self.den.qq + 1, ..self.den })
    }

    /// Complex conjugate: `s, r, c, sigma` are real.
    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|&(m, c)| (m, if m.i { -c } else { c })).collect(), den: self.den }
    }

    /// Substitute `s -> s^{-1}` (so `q -> q^{-1}`); `[2]` is invariant and
    /// `q - q^{-1}` changes sign.
    pub fn bar(&self) -> Self {
        let sign = if self.den.qq % 2 == 1 { -Q::one() } else { Q::one() };
        Self::build(self.terms.iter().map(|&(m, c)| (Mono { s: -m.s, ..m }, c * sign)).collect(), self.den)
    }

    /// Multiplicative inverse for units of the tower: numerators that are a
    /// single monomial free of `c` and `sigma`, times any product of the
    /// denominator atoms `[2]` and `q - q^{-1}`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut rest = Scalar { terms: self.terms.clone(), den: Den::default() };
        let mut atoms = Den::default();
        while let Some(t) = rest.div_numerator(1) {
            rest.terms = t;
            atoms.two += 1;
        }
        while let Some(t) = rest.div_numerator(-1) {
            rest.terms = t;
            atoms.qq += 1;
        }
        let [(m, c)] = rest.terms.as_slice() else {
            return None;
        };
        if m.c != 0 || m.sg {
            return None;
        }
        let mut inv = Self::from_mono(Mono { s: -m.s, ..Mono::ONE }, c.recip());
        if m.r {
            inv = (&inv * &Self::r()).div_two();
        }
        if m.i {
            inv = -&(&inv * &Self::i());
        }
        let (two, qq) = (Self::two(), Self::q_minus_qinv());
        for _ in 0..self.den.two {
            inv = &inv * &two;
        }
        for _ in 0..self.den.qq {
            inv = &inv * &qq;
        }
        Some(Self::build(inv.terms, Den { two: inv.den.two + atoms.two, qq: inv.den.qq + atoms.qq }))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Evaluate at `q^{1/2} = s0 > 0`, `cos(theta) = c0`, `sin(theta) = sg0`.
    pub fn eval(&self, s0: f64, c0: f64, sg0: f64) -> Complex64 {
        let r0 = (s0 * s0 + 1.0 / (s0 * s0)).sqrt();
        let w0 = s0.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_f64().unwrap_or(f64::NAN) * w0.powi(m.s) * c0.powi(m.c as i32);
            if m.r {
                v *= r0;
            }
            if m.sg {
                v *= sg0;
            }
            acc += if m.i { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) };
        }
        let q0 = s0 * s0;
        let d = (q0 + 1.0 / q0).powi(self.den.two as i32) * (q0 - 1.0 / q0).powi(self.den.qq as i32);
        acc / d
    }

    /// Sign of a real scalar at `q` slightly above 1 and generic theta.
    pub fn sign_near_classical(&self) -> Ordering {
        let v = self.eval(1.01f64.sqrt(), 0.6, 0.8).re;
        v.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let mut t = Vec::with_capacity(self.terms.len() + rhs.terms.len());
            t.extend_from_slice(&self.terms);
            t.extend_from_slice(&rhs.terms);
            return Scalar::build(t, self.den);
        }
        let d = Den { two: self.den.two.max(rhs.den.two), qq: self.den.qq.max(rhs.den.qq) };
        let mut t = self.lift_to(d);
        t.extend(rhs.lift_to(d));
        Scalar::build(t, d)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|&(m, c)| (m, -c)).collect(), den: self.den }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut t = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &rhs.terms {
                let c = ca * cb;
                for (m, k) in ma.mul(mb) {
                    t.push((m, c * Q::from_integer(k)));
                }
            }
        }
        let den = Den { two: self.den.two + rhs.den.two, qq: self.den.qq + rhs.den.qq };
        if den.is_one() {
            Scalar { terms: merge_sorted(t), den }
        } else {
            Scalar::build(t, den)
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<&Laurent> for Scalar {
    fn from(l: &Laurent) -> Self {
        Scalar::from_laurent(l)
    }
}

fn render_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    if m.i {
        parts.push("i".to_string());
    }
    let q = render_q_quarter(m.s);
    if !q.is_empty() {
        parts.push(q);
    }
    if m.r {
        parts.push("r".to_string());
    }
    match m.c {
        0 => {}
        1 => parts.push("c".to_string()),
        k => parts.push(format!("c^{k}")),
    }
    if m.sg {
        parts.push("sn".to_string());
    }
    parts.join("*")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut num = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate().rev() {
            let first = k + 1 == self.terms.len();
            if c.is_negative() {
                num.push_str(if first { "-" } else { " - " });
            } else if !first {
                num.push_str(" + ");
            }
            let mag = c.abs();
            let body = render_mono(m);
            if body.is_empty() {
                num.push_str(&mag.to_string());
            } else if mag.is_one() {
                num.push_str(&body);
            } else {
                num.push_str(&format!("{mag}*{body}"));
            }
        }
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let mut den = Vec::new();
        match self.den.two {
            0 => {}
            1 => den.push("[2]".to_string()),
            k => den.push(format!("[2]^{k}")),
        }
        match self.den.qq {
            0 => {}
            1 => den.push("(q - q^{-1})".to_string()),
            k => den.push(format!("(q - q^{{-1}})^{k}")),
        }
        if self.terms.len() > 1 {
            write!(f, "({num})/{}", den.join("*"))
        } else {
            write!(f, "{num}/{}", den.join("*"))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct TermRepr {
    q_quarter: i32,
    r: u8,
    c: u16,
    sigma: u8,
    i: u8,
    coeff: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            terms: Vec<TermRepr>,
            den_two: u16,
            den_q_minus_qinv: u16,
            text: String,
        }
        Repr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    q_quarter: m.s,
                    r: m.r as u8,
                    c: m.c,
                    sigma: m.sg as u8,
                    i: m.i as u8,
                    coeff: c.to_string(),
                })
                .collect(),
            den_two: self.den.two,
            den_q_minus_qinv: self.den.qq,
            text: self.to_string(),
        }
        .serialize(ser)
    }
}
