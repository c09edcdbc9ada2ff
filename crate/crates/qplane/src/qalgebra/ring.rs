//! The normal-form kernel.
//!
//! Normal words are weakly increasing in generator rank and avoid the cubic
//! family pattern, so they are stored as exponent vectors ([`NWord`]). The
//! only redexes of `w g` with `w` normal sit at its end, which makes
//! `append(w, g)` a small recursion that is memoized.

use std::sync::{Arc, OnceLock, RwLock};

use dashmap::DashMap;
use rustc_hash::FxHashMap;

use super::kb::Comb;
use super::system::RewriteSystem;
use super::word::{NWord, Word};
use crate::scalars::Laurent;

pub type Expansion = Arc<Vec<(NWord, Laurent)>>;

pub struct Ring {
    sys: RewriteSystem,
    /// `quad[9h + g]` for `h > g`: the rewrite of `h g` as `(a, b, coeff)`.
    quad: Vec<Vec<(u8, u8, Laurent)>>,
    family: Option<(u8, u8, u8)>,
    family_rhs: RwLock<Vec<Arc<Vec<(NWord, Laurent)>>>>,
    memo: Option<DashMap<u128, Expansion>>,
}

fn to_nword(w: &Word) -> NWord {
    NWord::from_sorted(w.letters()).expect("rule right-hand side is not sorted")
}

fn accumulate(acc: &mut FxHashMap<NWord, Laurent>, w: NWord, c: Laurent) {
    use std::collections::hash_map::Entry;
    match acc.entry(w) {
        Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

fn regroup(acc: FxHashMap<(NWord, i32), i128>) -> Vec<(NWord, Laurent)> {
    let mut flat: Vec<((NWord, i32), i128)> = acc.into_iter().filter(|t| t.1 != 0).collect();
    flat.sort_unstable_by_key(|t| t.0);
    flat.chunk_by(|x, y| x.0 .0 == y.0 .0)
        .map(|chunk| (chunk[0].0 .0, Laurent::from_sorted(chunk.iter().map(|t| (t.0 .1, t.1)).collect())))
        .collect()
}

impl Ring {
    pub fn new(sys: RewriteSystem, memoize: bool) -> Self {
        let mut quad = vec![Vec::new(); 81];
        for r in sys.quadratic_rules() {
            let l = r.lhs.letters();
            let entry = r
                .rhs
                .iter()
                .map(|(w, c)| {
                    let t = w.letters();
                    assert!(t.len() == 2 && t[0] <= t[1], "quadratic rule with unsorted right-hand side");
                    (t[0], t[1], c.clone())
                })
                .collect();
            assert!(l[0] > l[1]);
            quad[9 * l[0] as usize + l[1] as usize] = entry;
        }
        for h in 0..9 {
            for g in 0..h {
                assert!(
                    sys.quadratic_rules().iter().any(|r| r.lhs.letters() == [h, g]),
                    "descending pair without a rule"
                );
            }
        }
        Ring { family: sys.family(), sys, quad, family_rhs: RwLock::new(Vec::new()), memo: memoize.then(DashMap::new) }
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.len())
    }

    /// Right-hand side of the family member `x y^b z`.
    fn family_rhs(&self, b: usize) -> Arc<Vec<(NWord, Laurent)>> {
        if let Some(r) = self.family_rhs.read().unwrap().get(b - 1) {
            return r.clone();
        }
        let mut guard = self.family_rhs.write().unwrap();
        while guard.len() < b {
            let next = guard.len() + 1;
            let rw = self.sys.rewriter(next).expect("family right-hand side");
            let fam = rw.family().expect("family present");
            let rhs: &Comb = &fam.rhs[next - 1];
            guard.push(Arc::new(rhs.iter().map(|(w, c)| (to_nword(w), c.clone())).collect()));
        }
        guard[b - 1].clone()
    }

    /// Normal form of `w g` for a normal word `w`.
    pub fn append(&self, w: NWord, g: u8) -> Expansion {
        let key = (w.0 as u128) | ((g as u128) << 64);
        if let Some(m) = &self.memo {
            if let Some(e) = m.get(&key) {
                return e.clone();
            }
        }
        let out = Arc::new(self.append_uncached(w, g));
        if let Some(m) = &self.memo {
            m.insert(key, out.clone());
        }
        out
    }

    fn append_uncached(&self, w: NWord, g: u8) -> Vec<(NWord, Laurent)> {
        let top = w.top();
        if let Some(h) = top.filter(|&h| h > g) {
            let rest = w.dec(h);
            let mut acc = FxHashMap::default();
            for (a, b, c) in &self.quad[9 * h as usize + g as usize] {
                for (w1, c1) in self.append(rest, *a).iter() {
                    let c01 = c * c1;
                    for (w2, c2) in self.append(*w1, *b).iter() {
                        accumulate(&mut acc, *w2, &c01 * c2);
                    }
                }
            }
            return acc.into_iter().collect();
        }
        if let Some((x, y, z)) = self.family {
            if g == z && top == Some(y) && w.count(x) > 0 {
                let b = w.count(y) as usize;
                let prefix = w.dec(x).clear(y);
                let mut acc = FxHashMap::default();
                for (t, c) in self.family_rhs(b).iter() {
                    for (v, cv) in self.fold(prefix, &t.letters()) {
                        accumulate(&mut acc, v, c * &cv);
                    }
                }
                return acc.into_iter().collect();
            }
        }
        vec![(w.inc(g), Laurent::one())]
    }

    /// Normal form of `w l_1 l_2 ...` for a normal word `w`.
    pub fn fold(&self, w: NWord, letters: &[u8]) -> Vec<(NWord, Laurent)> {
        let mut cur: Vec<(NWord, Laurent)> = vec![(w, Laurent::one())];
        for &l in letters {
            if cur.len() == 1 && cur[0].1.is_one() {
                cur = self.append(cur[0].0, l).to_vec();
                continue;
            }
            let mut acc: FxHashMap<(NWord, i32), i128> = FxHashMap::default();
            for (u, cu) in &cur {
                for (v, cv) in self.append(*u, l).iter() {
                    for &(e1, k1) in cu.terms() {
                        for &(e2, k2) in cv.terms() {
                            let slot = acc.entry((*v, e1 + e2)).or_insert(0);
                            *slot = slot
                                .checked_add(k1.checked_mul(k2).expect("Laurent coefficient overflow"))
                                .expect("Laurent coefficient overflow");
                        }
                    }
                }
            }
            cur = regroup(acc);
        }
        cur
    }

    /// Normal form of the product of two normal words.
    pub fn mul_words(&self, a: NWord, b: NWord) -> Vec<(NWord, Laurent)> {
        self.fold(a, &b.letters())
    }

    /// Normal form of an arbitrary word in generator ranks.
    pub fn normal_form_word(&self, letters: &[u8]) -> Vec<(NWord, Laurent)> {
        self.fold(NWord::ONE, letters)
    }
}

static RING: OnceLock<Ring> = OnceLock::new();

/// The shared kernel for the default presentation.
pub fn ring() -> &'static Ring {
    RING.get_or_init(|| {
        let memo = std::env::var("QPLANE_NO_MEMO").map_or(true, |v| v.is_empty() || v == "0");
        Ring::new(RewriteSystem::default_system(), memo)
    })
}
