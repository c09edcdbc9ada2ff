//! Rational functions of `x` (over the scalar tower) extended by the square
//! roots `f_k = (1 - t^2 q^k x)^{-1/2}`.
//!
//! An element is `sum_S N_S(x) f_S / (x^a prod_k L_k^{n_k})` where
//! `L_k = 1 - t^2 q^k x`, `f_S` is a squarefree product of distinct `f_k`,
//! and the numerators `N_S` are polynomials in `x`. The denominators are
//! products of the atoms `x`, `L_k` with every atom that divides all
//! numerators cancelled, which makes the representation canonical: the
//! `f_S` are linearly independent over the rational functions because the
//! `L_k` are pairwise non-associate linear polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Scalar;

type XPoly = Vec<Scalar>;

fn trim(p: &mut XPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &XPoly, b: &XPoly) -> XPoly {
    let n = a.len().max(b.len());
    let zero = Scalar::zero();
    let mut out: XPoly = (0..n).map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)).collect();
    trim(&mut out);
    out
}

fn poly_mul(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(&mut out);
    out
}

/// `t^2 = 4 c^2 (1 - c^2)`
fn t_squared() -> Scalar {
    let t = Scalar::t();
    &t * &t
}

/// `L_k = 1 - t^2 q^k x`
fn l_poly(k: i32) -> XPoly {
    vec![Scalar::one(), -&(&t_squared() * &Scalar::q_pow(k))]
}

/// `p / L_k` when exact.
fn div_l(p: &XPoly, k: i32) -> Option<XPoly> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() == 1 {
        return None;
    }
    let a = &t_squared() * &Scalar::q_pow(k);
    let mut quot: XPoly = Vec::with_capacity(p.len() - 1);
    quot.push(p[0].clone());
    for j in 1..p.len() - 1 {
        let prev = &a * &quot[j - 1];
        quot.push(&p[j] + &prev);
    }
    let last = &p[p.len() - 1] + &(&a * &quot[p.len() - 2]);
    last.is_zero().then_some(quot)
}

/// Element of the twisted function field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FunScalar {
    num: BTreeMap<Vec<i32>, XPoly>,
    x_den: u32,
    l_den: BTreeMap<i32, u32>,
}

impl FunScalar {
    pub fn zero() -> Self {
        FunScalar::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(vec![c])
    }

    /// Polynomial in `x` from its coefficient list, lowest degree first.
    pub fn from_poly(mut p: Vec<Scalar>) -> Self {
        trim(&mut p);
        let mut num = BTreeMap::new();
        if !p.is_empty() {
            num.insert(Vec::new(), p);
        }
        FunScalar { num, ..Default::default() }
    }

    /// `x^n`
    pub fn x_pow(n: u32) -> Self {
        let mut p = vec![Scalar::zero(); n as usize];
        p.push(Scalar::one());
        Self::from_poly(p)
    }

    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// `f_k = f(q^k x)`
    pub fn f(k: i32) -> Self {
        let mut num = BTreeMap::new();
        num.insert(vec![k], vec![Scalar::one()]);
        FunScalar { num, ..Default::default() }
    }

    /// `L_k = 1 - t^2 q^k x = f_k^{-2}`
    pub fn l(k: i32) -> Self {
        Self::from_poly(l_poly(k))
    }

    /// `1 / L_k`
    pub fn l_inv(k: i32) -> Self {
        let mut out = Self::one();
        out.l_den.insert(k, 1);
        out
    }

    /// `1 / x`
    pub fn x_inv() -> Self {
        FunScalar { x_den: 1, ..Self::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// The scalar value when this element is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.x_den > 0 || !self.l_den.is_empty() || self.num.len() != 1 {
            return None;
        }
        let (set, p) = self.num.iter().next().unwrap();
        (set.is_empty() && p.len() == 1).then(|| p[0].clone())
    }

    /// Numerator terms `(S, N_S)` and the denominator `(a, {k: n_k})`.
    pub fn parts(&self) -> (&BTreeMap<Vec<i32>, Vec<Scalar>>, u32, &BTreeMap<i32, u32>) {
        (&self.num, self.x_den, &self.l_den)
    }

    /// Number of scalar terms in the numerators.
    pub fn size(&self) -> usize {
        self.num.values().flatten().map(Scalar::len).sum()
    }

    fn normalize(mut self) -> Self {
        self.num.retain(|_, p| {
            trim(p);
            !p.is_empty()
        });
        if self.num.is_empty() {
            return Self::zero();
        }
        while self.x_den > 0 && self.num.values().all(|p| p[0].is_zero()) {
            for p in self.num.values_mut() {
                p.remove(0);
            }
            self.x_den -= 1;
        }
        let ks: Vec<i32> = self.l_den.keys().copied().collect();
        for k in ks {
            while self.l_den.get(&k).copied().unwrap_or(0) > 0 {
                let divided: Option<BTreeMap<Vec<i32>, XPoly>> =
                    self.num.iter().map(|(s, p)| div_l(p, k).map(|q| (s.clone(), q))).collect();
                match divided {
                    Some(n) => {
                        self.num = n;
                        let e = self.l_den.get_mut(&k).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.l_den.remove(&k);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Rewrite the numerators over the denominator `(a, l)`, which must be a
    /// multiple of this element's denominator.
    fn lift(&self, a: u32, l: &BTreeMap<i32, u32>) -> BTreeMap<Vec<i32>, XPoly> {
        let mut factor: XPoly = vec![Scalar::zero(); (a - self.x_den) as usize];
        factor.push(Scalar::one());
        for (&k, &n) in l {
            let have = self.l_den.get(&k).copied().unwrap_or(0);
            for _ in have..n {
                factor = poly_mul(&factor, &l_poly(k));
            }
        }
        self.num.iter().map(|(s, p)| (s.clone(), poly_mul(p, &factor))).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FunScalar {
            num: self.num.iter().map(|(s, p)| (s.clone(), p.iter().map(|x| x * c).collect())).collect(),
            x_den: self.x_den,
            l_den: self.l_den.clone(),
        }
        .normalize()
    }

    /// Complex conjugation of the coefficients; `x` and the `f_k` are real.
    pub fn conj(&self) -> Self {
        FunScalar {
            num: self.num.iter().map(|(s, p)| (s.clone(), p.iter().map(Scalar::conj).collect())).collect(),
            x_den: self.x_den,
            l_den: self.l_den.clone(),
        }
    }

    /// Numerators of every item over the least common denominator, keyed by root set.
    /// A sum `sum_i g_i w_i` vanishes iff, for each root set, the polynomial combinations
    /// of the `w_i` read off from these numerators vanish.
    pub fn common_numerators(items: &[&FunScalar]) -> Vec<BTreeMap<Vec<i32>, Vec<Scalar>>> {
        let a = items.iter().map(|g| g.x_den).max().unwrap_or(0);
        let mut l: BTreeMap<i32, u32> = BTreeMap::new();
        for g in items {
            for (&k, &n) in &g.l_den {
                let e = l.entry(k).or_insert(0);
                *e = (*e).max(n);
            }
        }
        items.iter().map(|g| g.lift(a, &l)).collect()
    }

    /// Substitute `x -> q^n x`; relabels `f_k -> f_{k+n}` and `L_k -> L_{k+n}`.
    pub fn shift_q(&self, n: i32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let base = -n * self.x_den as i32;
        FunScalar {
            num: self
                .num
                .iter()
                .map(|(s, p)| {
                    let s2: Vec<i32> = s.iter().map(|k| k + n).collect();
                    let p2 = p.iter().enumerate().map(|(j, c)| c * &Scalar::q_pow(base + n * j as i32)).collect();
                    (s2, p2)
                })
                .collect(),
            x_den: self.x_den,
            l_den: self.l_den.iter().map(|(&k, &e)| (k + n, e)).collect(),
        }
    }

    /// `x -> q^{2m} x`, so `f_k -> f_{k+2m}`.
    pub fn fun_shift(&self, m: i32) -> Self {
        self.shift_q(2 * m)
    }

    /// The q-derivative `(g(qx) - g(q^{-1}x)) / ((q - q^{-1}) x)`.
    pub fn q_derivative(&self) -> Self {
        let diff = &self.shift_q(1) - &self.shift_q(-1);
        let mut out = FunScalar {
            num: diff.num.iter().map(|(s, p)| (s.clone(), p.iter().map(Scalar::div_q_minus_qinv).collect())).collect(),
            x_den: diff.x_den + 1,
            l_den: diff.l_den,
        };
        out = out.normalize();
        out
    }

    /// Evaluate at `q^{1/2} = s0`, `cos(theta) = c0`, `sin(theta) = sg0`,
    /// `x = x0`, taking positive square roots for the `f_k`.
    pub fn eval(&self, s0: f64, c0: f64, sg0: f64, x0: f64) -> Complex64 {
        let q0 = s0 * s0;
        let t2 = (2.0 * c0 * sg0).powi(2);
        let lk = |k: i32| 1.0 - t2 * q0.powi(k) * x0;
        let mut acc = Complex64::new(0.0, 0.0);
        for (set, p) in &self.num {
            let mut v = Complex64::new(0.0, 0.0);
            for (j, c) in p.iter().enumerate() {
                v += c.eval(s0, c0, sg0) * x0.powi(j as i32);
            }
            for &k in set {
                v /= lk(k).sqrt();
            }
            acc += v;
        }
        let mut den = x0.powi(self.x_den as i32);
        for (&k, &n) in &self.l_den {
            den *= lk(k).powi(n as i32);
        }
        acc / den
    }
}

impl Add for &FunScalar {
    type Output = FunScalar;
    fn add(self, rhs: &FunScalar) -> FunScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let a = self.x_den.max(rhs.x_den);
        let mut l = self.l_den.clone();
        for (&k, &n) in &rhs.l_den {
            let e = l.entry(k).or_insert(0);
            *e = (*e).max(n);
        }
        let mut num = self.lift(a, &l);
        for (s, p) in rhs.lift(a, &l) {
            let slot = num.entry(s).or_default();
            *slot = poly_add(slot, &p);
        }
        FunScalar { num, x_den: a, l_den: l }.normalize()
    }
}

impl Neg for &FunScalar {
    type Output = FunScalar;
    fn neg(self) -> FunScalar {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Sub for &FunScalar {
    type Output = FunScalar;
    fn sub(self, rhs: &FunScalar) -> FunScalar {
        self + &(-rhs)
    }
}

impl Mul for &FunScalar {
    type Output = FunScalar;
    fn mul(self, rhs: &FunScalar) -> FunScalar {
        if self.is_zero() || rhs.is_zero() {
            return FunScalar::zero();
        }
        let mut l_den = self.l_den.clone();
        for (&k, &n) in &rhs.l_den {
            *l_den.entry(k).or_insert(0) += n;
        }
        let mut acc = FunScalar::zero();
        for (s1, p1) in &self.num {
            for (s2, p2) in &rhs.num {
                // f_S1 f_S2 = f_{S1 xor S2} / prod_{k in S1 and S2} L_k
                let mut sym: Vec<i32> = s1.iter().filter(|k| !s2.contains(k)).copied().collect();
                sym.extend(s2.iter().filter(|k| !s1.contains(k)));
                sym.sort_unstable();
                let mut den = l_den.clone();
                for k in s1.iter().filter(|k| s2.contains(k)) {
                    *den.entry(*k).or_insert(0) += 1;
                }
                let mut num = BTreeMap::new();
                num.insert(sym, poly_mul(p1, p2));
                let term = FunScalar { num, x_den: self.x_den + rhs.x_den, l_den: den }.normalize();
                acc = &acc + &term;
            }
        }
        acc
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for FunScalar {
            type Output = FunScalar;
            fn $f(self, rhs: FunScalar) -> FunScalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Scalar> for FunScalar {
    fn from(c: Scalar) -> Self {
        FunScalar::constant(c)
    }
}

impl fmt::Display for FunScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (set, p) in &self.num {
            let poly: Vec<String> = p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| match j {
                    0 => format!("({c})"),
                    1 => format!("({c})*x"),
                    _ => format!("({c})*x^{j}"),
                })
                .collect();
            let fs: Vec<String> = set.iter().map(|k| format!("f_{k}")).collect();
            if fs.is_empty() {
                parts.push(poly.join(" + "));
            } else {
                parts.push(format!("[{}]*{}", poly.join(" + "), fs.join("*")));
            }
        }
        write!(f, "{}", parts.join(" + "))?;
        let mut den = Vec::new();
        if self.x_den > 0 {
            den.push(format!("x^{}", self.x_den));
        }
        for (k, n) in &self.l_den {
            den.push(format!("L_{k}^{n}"));
        }
        if !den.is_empty() {
            write!(f, " / ({})", den.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FunScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
