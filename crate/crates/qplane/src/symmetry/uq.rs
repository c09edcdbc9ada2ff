use std::fmt;
use std::str::FromStr;

use dashmap::DashMap;
use std::sync::OnceLock;

use crate::qalgebra::{ring, AlgebraElement, Gen, NWord};
use crate::scalars::Scalar;
use crate::Error;

/// Generators of `U_q(su(3))` that act on the coordinate algebra.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum UqGen {
    K1,
    K1Inv,
    K2,
    K2Inv,
    E1,
    E2,
    F1,
    F2,
}

impl UqGen {
    fn index(self) -> u8 {
        match self {
            UqGen::K1 | UqGen::K1Inv | UqGen::E1 | UqGen::F1 => 1,
            _ => 2,
        }
    }

    /// `K_i^{+1}` or `K_i^{-1}` for a Cartan generator.
    fn k_power(self) -> Option<i32> {
        match self {
            UqGen::K1 | UqGen::K2 => Some(1),
            UqGen::K1Inv | UqGen::K2Inv => Some(-1),
            _ => None,
        }
    }

    fn k_of(i: u8, p: i32) -> UqGen {
        match (i, p) {
            (1, 1) => UqGen::K1,
            (1, _) => UqGen::K1Inv,
            (_, 1) => UqGen::K2,
            _ => UqGen::K2Inv,
        }
    }
}

impl fmt::Display for UqGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UqGen::K1 => "K1",
            UqGen::K1Inv => "K1^-1",
            UqGen::K2 => "K2",
            UqGen::K2Inv => "K2^-1",
            UqGen::E1 => "E1",
            UqGen::E2 => "E2",
            UqGen::F1 => "F1",
            UqGen::F2 => "F2",
        };
        write!(f, "{s}")
    }
}

/// A word in the `U_q(su(3))` generators, read left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UqWord(pub Vec<UqGen>);

impl UqWord {
    pub fn new(gens: &[UqGen]) -> Self {
        UqWord(gens.to_vec())
    }

    pub fn single(g: UqGen) -> Self {
        UqWord(vec![g])
    }
}

impl fmt::Display for UqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for UqWord {
    type Err = Error;

    /// Parses products such as `E2*E1`, `K1^-1`, `K1*K2^2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = Vec::new();
        let mut pos = 0;
        for factor in s.split('*') {
            let f = factor.trim();
            let (base, exp) = match f.split_once('^') {
                Some((b, e)) => {
                    let e: i32 =
                        e.trim().parse().map_err(|_| Error::Parse { pos, msg: format!("bad exponent in {f:?}") })?;
                    (b.trim(), e)
                }
                None => (f, 1),
            };
            let g = match base {
                "K1" => UqGen::K1,
                "K2" => UqGen::K2,
                "E1" => UqGen::E1,
                "E2" => UqGen::E2,
                "F1" => UqGen::F1,
                "F2" => UqGen::F2,
                _ => return Err(Error::Parse { pos, msg: format!("unknown U_q generator {base:?}") }),
            };
            match g.k_power() {
                Some(_) => {
                    let k = UqGen::k_of(g.index(), exp.signum());
                    out.extend(std::iter::repeat_n(k, exp.unsigned_abs() as usize));
                }
                None if exp >= 0 => out.extend(std::iter::repeat_n(g, exp as usize)),
                None => return Err(Error::Parse { pos, msg: format!("negative power of {base}") }),
            }
            pos += factor.len() + 1;
        }
        Ok(UqWord(out))
    }
}

/// Which of the two canonical actions.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

fn delta(a: u8, b: u8) -> i32 {
    (a == b) as i32
}

/// Half-exponent `e` with `g <| K_i = q^{e/2} g` (right) or `K_i |> g` (left).
fn k_weight(side: Side, i: u8, g: Gen) -> i32 {
    let idx = match side {
        Side::Right => g.row(),
        Side::Left => g.col(),
    };
    delta(i + 1, idx) - delta(i, idx)
}

/// Image of a generator under `E_i` or `F_i`.
fn raise(side: Side, x: UqGen, g: Gen) -> Option<Gen> {
    let (j, k) = (g.row(), g.col());
    match (side, x) {
        // u^j_k <| E_i = delta_{i+1,j} u^i_k
        (Side::Right, UqGen::E1 | UqGen::E2) => (j == x.index() + 1).then(|| Gen::new(x.index(), k)),
        // u^j_k <| F_i = delta_{i,j} u^{i+1}_k
        (Side::Right, UqGen::F1 | UqGen::F2) => (j == x.index()).then(|| Gen::new(x.index() + 1, k)),
        // E_i |> u^j_k = delta_{i,k} u^j_{i+1}
        (Side::Left, UqGen::E1 | UqGen::E2) => (k == x.index()).then(|| Gen::new(j, x.index() + 1)),
        // F_i |> u^j_k = delta_{i+1,k} u^j_i
        (Side::Left, UqGen::F1 | UqGen::F2) => (k == x.index() + 1).then(|| Gen::new(j, x.index())),
        _ => None,
    }
}

type ActMemo = DashMap<(NWord, UqGen, bool), AlgebraElement>;

fn memo() -> &'static ActMemo {
    static M: OnceLock<ActMemo> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

/// Action of one generator on a normal word, through the iterated coproduct
/// `Delta(E_i) = E_i (x) K_i + K_i^{-1} (x) E_i`, `Delta(K_i) = K_i (x) K_i`.
fn act_word(side: Side, x: UqGen, w: NWord) -> AlgebraElement {
    let key = (w, x, side == Side::Left);
    if let Some(e) = memo().get(&key) {
        return e.clone();
    }
    let ring = ring();
    let order = ring.system().order();
    let letters = w.letters();
    let gens: Vec<Gen> = letters.iter().map(|&r| order.gen(r)).collect();
    let i = x.index();
    let out = match x.k_power() {
        Some(p) => {
            let e: i32 = gens.iter().map(|&g| k_weight(side, i, g)).sum();
            AlgebraElement::from_terms(vec![(w, Scalar::q_half(p * e))])
        }
        None => {
            let mut acc: Vec<(NWord, Scalar)> = Vec::new();
            let weights: Vec<i32> = gens.iter().map(|&g| k_weight(side, i, g)).collect();
            for (pos, &g) in gens.iter().enumerate() {
                let Some(h) = raise(side, x, g) else { continue };
                // prefix carries K_i^{-1}, suffix carries K_i
                let e: i32 = -weights[..pos].iter().sum::<i32>() + weights[pos + 1..].iter().sum::<i32>();
                let c = Scalar::q_half(e);
                let prefix = NWord::from_sorted(&letters[..pos]).expect("prefix of a normal word");
                let mut tail = vec![order.rank(h)];
                tail.extend_from_slice(&letters[pos + 1..]);
                acc.extend(ring.fold(prefix, &tail).into_iter().map(|(v, l)| (v, c.mul_laurent(&l))));
            }
            AlgebraElement::from_terms(acc)
        }
    };
    if w.degree() <= 12 {
        memo().insert(key, out.clone());
    }
    out
}

fn act_gen(side: Side, x: UqGen, a: &AlgebraElement) -> AlgebraElement {
    let parts: Vec<AlgebraElement> = a.terms().iter().map(|(w, c)| act_word(side, x, *w).scale(c)).collect();
    AlgebraElement::sum(parts.iter())
}

/// The right canonical action `a <| X`; `a <| XY = (a <| X) <| Y`.
pub fn act_right(x: &UqWord, a: &AlgebraElement) -> AlgebraElement {
    x.0.iter().fold(a.clone(), |acc, &g| act_gen(Side::Right, g, &acc))
}

/// The left canonical action `X |> a`; `XY |> a = X |> (Y |> a)`.
pub fn act_left(x: &UqWord, a: &AlgebraElement) -> AlgebraElement {
    x.0.iter().rev().fold(a.clone(), |acc, &g| act_gen(Side::Left, g, &acc))
}

/// `a <| E1 = a <| F1 = 0` and `a <| K1 = a`.
pub fn is_in_sphere(a: &AlgebraElement) -> bool {
    act_right(&UqWord::single(UqGen::E1), a).is_zero()
        && act_right(&UqWord::single(UqGen::F1), a).is_zero()
        && act_right(&UqWord::single(UqGen::K1), a) == *a
}

/// Sphere membership and invariance under `K1 K2^2`.
pub fn is_in_plane(a: &AlgebraElement) -> bool {
    is_in_sphere(a) && act_right(&UqWord::new(&[UqGen::K1, UqGen::K2, UqGen::K2]), a) == *a
}
