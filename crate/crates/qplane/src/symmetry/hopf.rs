use std::sync::OnceLock;

use dashmap::DashMap;
use rustc_hash::FxHashMap;

use super::tensor::TensorElement;
use crate::qalgebra::{ring, AlgebraElement, Gen, NWord};
use crate::scalars::{Laurent, Scalar};

type Memo<V> = DashMap<NWord, V>;

fn coproduct_memo() -> &'static Memo<Vec<((NWord, NWord), Laurent)>> {
    static M: OnceLock<Memo<Vec<((NWord, NWord), Laurent)>>> = OnceLock::new();
    M.get_or_init(DashMap::new)
}

fn coproduct_word(w: NWord) -> Vec<((NWord, NWord), Laurent)> {
    if let Some(e) = coproduct_memo().get(&w) {
        return e.clone();
    }
    let ring = ring();
    let order = ring.system().order();
    let mut cur: FxHashMap<(NWord, NWord), Laurent> = FxHashMap::default();
    cur.insert((NWord::ONE, NWord::ONE), Laurent::one());
    for r in w.letters() {
        let g = order.gen(r);
        let mut next: FxHashMap<(NWord, NWord), Laurent> = FxHashMap::default();
        for ((a, b), c) in &cur {
            for k in 1..=3 {
                let left = ring.append(*a, order.rank(Gen::new(g.row(), k)));
                let right = ring.append(*b, order.rank(Gen::new(k, g.col())));
                for (wa, la) in left.iter() {
                    let cl = c * la;
                    for (wb, lb) in right.iter() {
                        let slot = next.entry((*wa, *wb)).or_insert_with(Laurent::zero);
                        *slot = &*slot + &(&cl * lb);
                    }
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        cur = next;
    }
    let out: Vec<_> = cur.into_iter().collect();
    if w.degree() <= 6 {
        coproduct_memo().insert(w, out.clone());
    }
    out
}

/// `Delta(u^i_j) = sum_k u^i_k (x) u^k_j`, extended multiplicatively.
pub fn coproduct(a: &AlgebraElement) -> TensorElement {
    TensorElement::from_terms(
        a.terms().iter().flat_map(|(w, c)| coproduct_word(*w).into_iter().map(move |(k, l)| (k, c.mul_laurent(&l)))),
    )
}

/// `epsilon(u^i_j) = delta_ij`.
pub fn counit(a: &AlgebraElement) -> Scalar {
    let order = ring().system().order();
    a.terms()
        .iter()
        .filter(|(w, _)| {
            w.letters().iter().all(|&r| {
                let g = order.gen(r);
                g.row() == g.col()
            })
        })
        .fold(Scalar::zero(), |acc, (_, c)| &acc + c)
}

/// Anti-multiplicative extension of a map on generators, memoized per word.
fn anti_extend(
    a: &AlgebraElement,
    memo: &Memo<AlgebraElement>,
    on_gen: impl Fn(Gen) -> AlgebraElement,
) -> AlgebraElement {
    let order = ring().system().order();
    let parts: Vec<AlgebraElement> = a
        .terms()
        .iter()
        .map(|(w, c)| {
            let img = match memo.get(w) {
                Some(e) => e.clone(),
                None => {
                    let mut out = AlgebraElement::one();
                    for r in w.letters().into_iter().rev() {
                        out = &out * &on_gen(order.gen(r));
                    }
                    if w.degree() <= 6 {
                        memo.insert(*w, out.clone());
                    }
                    out
                }
            };
            img.scale(c)
        })
        .collect();
    AlgebraElement::sum(parts.iter())
}

/// `S(u^i_j) = (u^j_i)^*`
pub fn antipode(a: &AlgebraElement) -> AlgebraElement {
    static M: OnceLock<Memo<AlgebraElement>> = OnceLock::new();
    static G: OnceLock<Vec<AlgebraElement>> = OnceLock::new();
    let gens = G.get_or_init(|| Gen::all().map(|g| AlgebraElement::u(g.col(), g.row()).star()).collect());
    anti_extend(a, M.get_or_init(DashMap::new), |g| gens[g.index() as usize].clone())
}

/// `S^{-1}(u^i_j) = q^{2(j-i)} (u^j_i)^*`, the inverse of [`antipode`].
pub fn antipode_inv(a: &AlgebraElement) -> AlgebraElement {
    static M: OnceLock<Memo<AlgebraElement>> = OnceLock::new();
    static G: OnceLock<Vec<AlgebraElement>> = OnceLock::new();
    let gens = G.get_or_init(|| {
        Gen::all()
            .map(|g| {
                let e = 2 * (g.col() as i32 - g.row() as i32);
                AlgebraElement::u(g.col(), g.row()).star().scale(&Scalar::q_pow(e))
            })
            .collect()
    });
    anti_extend(a, M.get_or_init(DashMap::new), |g| gens[g.index() as usize].clone())
}

/// The left coaction `Delta_L(a) = S^{-1}(a_(2)) (x) a_(1)`.
pub fn coaction_l(a: &AlgebraElement) -> TensorElement {
    coproduct(a).flip().map_legs(antipode_inv, |b| b.clone())
}

/// `Delta_L = (id (x) S) Delta S^{-1}`, evaluated literally.
pub fn coaction_l_literal(a: &AlgebraElement) -> TensorElement {
    coproduct(&antipode_inv(a)).map_legs(|b| b.clone(), antipode)
}
