//! Word-level rewriting: naive reduction, critical pairs and Knuth-Bendix
//! completion over `Z[q^{1/2}, q^{-1/2}]`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::word::Word;
use crate::scalars::Laurent;
use crate::Error;

/// A linear combination of words.
pub type Comb = BTreeMap<Word, Laurent>;

pub(crate) fn comb_add(into: &mut Comb, w: Word, c: Laurent) {
    if c.is_zero() {
        return;
    }
    match into.get_mut(&w) {
        Some(slot) => {
            let s = &*slot + &c;
            if s.is_zero() {
                into.remove(&w);
            } else {
                *slot = s;
            }
        }
        None => {
            into.insert(w, c);
        }
    }
}

/// `lhs -> rhs` with every word of `rhs` smaller than `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Comb,
}

/// The parametric cubic family `x y^b z -> rhs_b`, `b >= 1`.
#[derive(Clone, Debug)]
pub struct Family {
    pub x: u8,
    pub y: u8,
    pub z: u8,
    /// `rhs[b-1]` for the `b` computed so far.
    pub rhs: Vec<Comb>,
}

impl Family {
    /// Matches `x y^b z` starting at `i`; returns `b` and the match length.
    fn match_at(&self, w: &[u8], i: usize) -> Option<usize> {
        if w[i] != self.x {
            return None;
        }
        let mut j = i + 1;
        while j < w.len() && w[j] == self.y {
            j += 1;
        }
        (j > i + 1 && j < w.len() && w[j] == self.z).then_some(j - i - 1)
    }
}

/// Naive reducer for a finite rule list plus an optional parametric family.
#[derive(Clone, Debug, Default)]
pub struct WordRewriter {
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    max_len: usize,
    family: Option<Family>,
}

fn unit_inverse(l: &Laurent) -> Option<Laurent> {
    match l.terms() {
        [(e, c)] if c.abs() == 1 => Some(Laurent::monomial(-e, *c)),
        _ => None,
    }
}

impl WordRewriter {
    pub fn new(rules: Vec<Rule>) -> Self {
        let mut w = WordRewriter::default();
        for r in rules {
            w.push(r);
        }
        w
    }

    fn push(&mut self, r: Rule) {
        self.max_len = self.max_len.max(r.lhs.len());
        self.index.insert(r.lhs.clone(), self.rules.len());
        self.rules.push(r);
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    /// Attach the cubic family and precompute its right-hand sides for
    /// `b = 1..=max_b`. `det` is the quantum determinant; the family is
    /// derived from `y^{b-1} det = y^{b-1}`, reduced by the finite rules.
    pub fn with_family(mut self, x: u8, y: u8, z: u8, det: &Comb, max_b: usize) -> Result<Self, Error> {
        let quad = WordRewriter::new(self.rules.clone());
        let mut fam = Family { x, y, z, rhs: Vec::new() };
        for b in 1..=max_b {
            let ys = vec![y; b - 1];
            let mut prod = Comb::new();
            for (w, c) in det {
                comb_add(&mut prod, Word::splice(&ys, w.letters(), &[]), c.clone());
            }
            let mut nf = quad.reduce(prod);
            let lead = Word::splice(&[x], &vec![y; b], &[z]);
            let lc = nf
                .remove(&lead)
                .ok_or_else(|| Error::Domain("determinant does not lead with the family word".into()))?;
            let inv = unit_inverse(&lc).ok_or_else(|| Error::Domain(format!("non-unit leading coefficient {lc}")))?;
            if nf.keys().any(|w| *w > lead) {
                return Err(Error::Domain("family word is not the leading word".into()));
            }
            // lc * lead + rest = y^{b-1}
            let mut rhs = Comb::new();
            comb_add(&mut rhs, Word::from_slice(&ys), inv.clone());
            for (w, c) in nf {
                comb_add(&mut rhs, w, -&(&c * &inv));
            }
            fam.rhs.push(rhs);
        }
        self.family = Some(fam);
        Ok(self)
    }

    /// Leftmost redex: (position, length, replacement).
    fn find_redex(&self, w: &Word) -> Option<(usize, usize, &Comb)> {
        let s = w.letters();
        for i in 0..s.len() {
            for len in 2..=self.max_len.min(s.len() - i) {
                if let Some(&id) = self.index.get(&Word::from_slice(&s[i..i + len])) {
                    return Some((i, len, &self.rules[id].rhs));
                }
            }
            if let Some(f) = &self.family {
                if let Some(b) = f.match_at(s, i) {
                    if let Some(rhs) = f.rhs.get(b - 1) {
                        return Some((i, b + 2, rhs));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Fully reduce a combination, always rewriting its largest word first.
    pub fn reduce(&self, mut work: Comb) -> Comb {
        let mut out = Comb::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_redex(&w) {
                None => {
                    out.insert(w, c);
                }
                Some((i, len, rhs)) => {
                    let s = w.letters();
                    for (t, k) in rhs {
                        comb_add(&mut work, Word::splice(&s[..i], t.letters(), &s[i + len..]), &c * k);
                    }
                }
            }
        }
        out
    }
}

/// Overlaps `(a, b, k)`: the last `k` letters of `lhs_a` equal the first `k`
/// letters of `lhs_b`, with `k` shorter than both.
fn overlaps(a: &Word, b: &Word) -> Vec<usize> {
    let (x, y) = (a.letters(), b.letters());
    (1..x.len().min(y.len())).filter(|&k| x[x.len() - k..] == y[..k]).collect()
}

/// The two one-step reducts of an overlap word, reduced to normal form.
fn critical_difference(rw: &WordRewriter, a: &Rule, b: &Rule, k: usize) -> Comb {
    let (x, y) = (a.lhs.letters(), b.lhs.letters());
    let mut diff = Comb::new();
    for (t, c) in &a.rhs {
        comb_add(&mut diff, Word::splice(&[], t.letters(), &y[k..]), c.clone());
    }
    for (t, c) in &b.rhs {
        comb_add(&mut diff, Word::splice(&x[..x.len() - k], t.letters(), &[]), -c);
    }
    rw.reduce(diff)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletionLog {
    pub input_relations: usize,
    pub rules_added: usize,
    pub rules_removed: usize,
    pub pairs_examined: usize,
    /// Overlap words discarded because they exceed the length bound.
    pub pairs_beyond_bound: usize,
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionConfig {
    pub max_rules: usize,
    /// Only rules and overlaps up to this word length are considered;
    /// `usize::MAX` means unbounded.
    pub max_len: usize,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig { max_rules: 2000, max_len: usize::MAX }
    }
}

/// Knuth-Bendix completion of a set of relations `comb = 0`.
pub fn complete(relations: Vec<Comb>, cfg: CompletionConfig) -> Result<(Vec<Rule>, CompletionLog), Error> {
    let mut log = CompletionLog {
        input_relations: relations.len(),
        rules_added: 0,
        rules_removed: 0,
        pairs_examined: 0,
        pairs_beyond_bound: 0,
        truncated: false,
    };
    let mut active: Vec<Option<Rule>> = Vec::new();
    let mut pending: VecDeque<Comb> = relations.into();
    let mut pairs: VecDeque<(usize, usize, usize)> = VecDeque::new();
    let current = |active: &Vec<Option<Rule>>| WordRewriter::new(active.iter().flatten().cloned().collect());
    let mut rw = current(&active);
    loop {
        while let Some(rel) = pending.pop_front() {
            let mut red = rw.reduce(rel);
            let Some((lead, lc)) = red.pop_last() else { continue };
            let inv = unit_inverse(&lc).ok_or_else(|| Error::Domain(format!("non-unit leading coefficient {lc}")))?;
            if lead.len() > cfg.max_len {
                log.truncated = true;
                continue;
            }
            let rhs: Comb = red.into_iter().map(|(w, c)| (w, -&(&c * &inv))).collect();
            for slot in active.iter_mut() {
                if slot.as_ref().is_some_and(|r| r.lhs.find(lead.letters()).is_some()) {
                    let r = slot.take().unwrap();
                    let mut back = r.rhs.clone();
                    comb_add(&mut back, r.lhs.clone(), Laurent::monomial(0, -1));
                    pending.push_back(back);
                    log.rules_removed += 1;
                }
            }
            let id = active.len();
            let rule = Rule { lhs: lead, rhs };
            active.push(Some(rule));
            log.rules_added += 1;
            let live = active.iter().filter(|r| r.is_some()).count();
            if live > cfg.max_rules {
                return Err(Error::Budget { budget: cfg.max_rules, rules: live, pending: pairs.len() });
            }
            for j in 0..active.len() {
                let Some(other) = &active[j] else { continue };
                let new = active[id].as_ref().unwrap();
                for (a, b, ra, rb) in [(id, j, new, other), (j, id, other, new)] {
                    for k in overlaps(&ra.lhs, &rb.lhs) {
                        if ra.lhs.len() + rb.lhs.len() - k > cfg.max_len {
                            log.pairs_beyond_bound += 1;
                            log.truncated = true;
                        } else {
                            pairs.push_back((a, b, k));
                        }
                    }
                    if a == b {
                        break;
                    }
                }
            }
            rw = current(&active);
        }
        let Some((a, b, k)) = pairs.pop_front() else { break };
        let (Some(ra), Some(rb)) = (&active[a], &active[b]) else { continue };
        log.pairs_examined += 1;
        let d = critical_difference(&rw, ra, rb, k);
        if !d.is_empty() {
            pending.push_back(d);
        }
    }
    let rules: Vec<Rule> = active.into_iter().flatten().collect();
    // Inter-reduce right-hand sides.
    let rw = WordRewriter::new(rules.clone());
    let mut out: Vec<Rule> = rules.into_iter().map(|r| Rule { rhs: rw.reduce(r.rhs.clone()), lhs: r.lhs }).collect();
    out.sort_by(|a, b| a.lhs.cmp(&b.lhs));
    Ok((out, log))
}

/// Outcome of checking every critical pair of a rewriter.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub pairs: usize,
    pub failures: Vec<String>,
}

/// Check every critical pair among the finite rules, and between the finite
/// rules and the family members `b <= max_b`.
pub fn check_pairs(rw: &WordRewriter, max_b: usize) -> PairCheck {
    let mut all: Vec<Rule> = rw.rules.clone();
    if let Some(f) = &rw.family {
        for b in 1..=max_b.min(f.rhs.len()) {
            all.push(Rule { lhs: Word::splice(&[f.x], &vec![f.y; b], &[f.z]), rhs: f.rhs[b - 1].clone() });
        }
    }
    let mut pairs = 0;
    let mut failures = Vec::new();
    for ra in &all {
        for rb in &all {
            for k in overlaps(&ra.lhs, &rb.lhs) {
                pairs += 1;
                let d = critical_difference(rw, ra, rb, k);
                if !d.is_empty() {
                    failures.push(format!(
                        "{:?}/{:?} overlap {k}: {} residual terms",
                        ra.lhs.letters(),
                        rb.lhs.letters(),
                        d.len()
                    ));
                }
            }
        }
        // inclusion ambiguities
        for rb in &all {
            if rb.lhs != ra.lhs && ra.lhs.find(rb.lhs.letters()).is_some() {
                failures.push(format!("{:?} contains {:?}", ra.lhs.letters(), rb.lhs.letters()));
            }
        }
    }
    PairCheck { pairs, failures }
}
