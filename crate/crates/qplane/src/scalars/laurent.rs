//! Laurent polynomials in `s = q^{1/2}` with machine-integer coefficients.
//!
//! This is the coefficient ring of the rewrite rules. It is kept separate from
//! [`Scalar`](super::Scalar) because the normal-form kernel multiplies these
//! millions of times and never needs the extensions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse Laurent polynomial `sum c_e s^e`, sorted by exponent, no zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Laurent {
    terms: Vec<(i32, i128)>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * s^e`
    pub fn monomial(e: i32, c: i128) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Laurent { terms: vec![(e, c)] }
    }

    /// `q^n = s^{2n}`
    pub fn q_pow(n: i32) -> Self {
        Self::monomial(2 * n, 1)
    }

    /// `q - q^{-1}`
    pub fn q_minus_qinv() -> Self {
        Laurent { terms: vec![(-2, -1), (2, 1)] }
    }

    pub fn from_terms(mut terms: Vec<(i32, i128)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(i32, i128)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.checked_add(c).expect("Laurent coefficient overflow"),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Laurent { terms: out }
    }

    /// From terms already sorted by exponent, distinct and nonzero.
    pub(crate) fn from_sorted(terms: Vec<(i32, i128)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0) && terms.iter().all(|t| t.1 != 0));
        Laurent { terms }
    }

    pub fn terms(&self) -> &[(i32, i128)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (0, 1)
    }

    /// Multiply by `s^e`.
    pub fn shift(&self, e: i32) -> Self {
        Laurent { terms: self.terms.iter().map(|&(x, c)| (x + e, c)).collect() }
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e, c.checked_mul(k).expect("Laurent coefficient overflow")))
                .collect(),
        }
    }

    /// Value at `s = s0`.
    pub fn eval(&self, s0: f64) -> f64 {
        self.terms.iter().map(|&(e, c)| c as f64 * s0.powi(e)).sum()
    }

    /// Substitute `s -> s^{-1}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|&(e, c)| (-e, c)).collect())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// over the integers.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let (d_lo, d_hi) = (d.terms[0].0, d.terms.last().unwrap().0);
        let lead = d.terms.last().unwrap().1;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while !rem.is_zero() {
            let (e, c) = *rem.terms.last().unwrap();
            if e - d_hi < rem.terms[0].0 - d_lo || c % lead != 0 {
                return None;
            }
            let k = c / lead;
            quot.push((e - d_hi, k));
            rem = &rem - &d.shift(e - d_hi).scale(k);
        }
        Some(Laurent::from_terms(quot))
    }

    fn add_ref(&self, other: &Laurent, sign: i128) -> Laurent {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let c = a[i].1.checked_add(sign * b[j].1).expect("Laurent coefficient overflow");
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Laurent { terms: out }
    }

    fn mul_ref(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = other.terms[0];
            return self.shift(e).scale(c);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms[0];
            return other.shift(e).scale(c);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut dense = vec![0i128; (hi - lo + 1) as usize];
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                let slot = &mut dense[(ea + eb - lo) as usize];
                *slot = slot
                    .checked_add(ca.checked_mul(cb).expect("Laurent coefficient overflow"))
                    .expect("Laurent coefficient overflow");
            }
        }
        Laurent { terms: dense.into_iter().enumerate().filter(|t| t.1 != 0).map(|(k, c)| (lo + k as i32, c)).collect() }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        self.add_ref(rhs, 1)
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self.add_ref(rhs, -1)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        self.mul_ref(rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(e, c)) in self.terms.iter().enumerate().rev() {
            let first = k + 1 == self.terms.len();
            let mag = c.abs();
            if c < 0 {
                write!(f, "{}", if first { "-" } else { " - " })?;
            } else if !first {
                write!(f, " + ")?;
            }
            let q = super::render_q_half(e);
            match (mag, q.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{q}")?,
                (_, false) => write!(f, "{mag}*{q}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_q_numbers() {
        let two = &Laurent::q_pow(1) + &Laurent::q_pow(-1);
        let sq = &two * &two;
        assert_eq!(sq, Laurent::from_terms(vec![(4, 1), (0, 2), (-4, 1)]));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn rendering_uses_half_powers() {
        let l = Laurent::from_terms(vec![(3, 2), (-2, -1)]);
        assert_eq!(l.to_string(), "2*q^{3/2} - q^{-1}");
    }
}
