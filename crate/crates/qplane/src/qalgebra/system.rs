use serde::Serialize;

use super::gens::{Gen, GenOrder};
use super::kb::{self, comb_add, Comb, CompletionConfig, CompletionLog, PairCheck, Rule, WordRewriter};
use super::word::Word;
use crate::scalars::Laurent;
use crate::Error;

fn word(order: &GenOrder, gens: &[Gen]) -> Word {
    Word(gens.iter().map(|&g| order.rank(g)).collect())
}

fn q_pow(n: i32) -> Laurent {
    Laurent::q_pow(n)
}

/// The 36 quadratic relations, one per unordered pair of generators.
pub fn quadratic_relations(order: &GenOrder) -> Vec<Comb> {
    let mut out = Vec::new();
    for a in Gen::all() {
        for b in Gen::all() {
            if a.index() >= b.index() {
                continue;
            }
            let (i, k, j, l) = (a.row(), a.col(), b.row(), b.col());
            let mut rel = Comb::new();
            let ab = word(order, &[a, b]);
            let ba = word(order, &[b, a]);
            if k == l || i == j {
                // u^i_k u^j_k = q u^j_k u^i_k (i<j), u^k_i u^k_j = q u^k_j u^k_i (i<j)
                comb_add(&mut rel, ab, Laurent::one());
                comb_add(&mut rel, ba, -&q_pow(1));
            } else if k > l {
                // [u^i_k, u^j_l] = 0 for i<j, l<k
                comb_add(&mut rel, ab, Laurent::one());
                comb_add(&mut rel, ba, Laurent::monomial(0, -1));
            } else {
                // [u^i_k, u^j_l] = (q - q^{-1}) u^i_l u^j_k for i<j, k<l
                comb_add(&mut rel, ab, Laurent::one());
                comb_add(&mut rel, ba, Laurent::monomial(0, -1));
                // u^i_l and u^j_k commute; write their product sorted.
                let mut anti = word(order, &[Gen::new(i, l), Gen::new(j, k)]);
                anti.0.sort_unstable();
                comb_add(&mut rel, anti, -&Laurent::q_minus_qinv());
            }
            out.push(rel);
        }
    }
    out
}

/// `sum_pi (-q)^{l(pi)} u^1_{pi(1)} u^2_{pi(2)} u^3_{pi(3)}`.
pub fn quantum_determinant(order: &GenOrder) -> Comb {
    let perms: [([u8; 3], u32); 6] =
        [([1, 2, 3], 0), ([1, 3, 2], 1), ([2, 1, 3], 1), ([2, 3, 1], 2), ([3, 1, 2], 2), ([3, 2, 1], 3)];
    let mut det = Comb::new();
    for (p, inv) in perms {
        let gens = [Gen::new(1, p[0]), Gen::new(2, p[1]), Gen::new(3, p[2])];
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        comb_add(&mut det, word(order, &gens), Laurent::monomial(2 * inv as i32, sign));
    }
    det
}

/// `det_q - 1`
pub fn cubic_relation(order: &GenOrder) -> Comb {
    let mut rel = quantum_determinant(order);
    comb_add(&mut rel, Word::empty(), Laurent::monomial(0, -1));
    rel
}

/// The completed presentation of `O(SU_q(3))`: the quadratic rules obtained
/// by completing the commutation relations, and the cubic relation as a
/// parametric family `x y^b z` (the leading word of the quantum determinant
/// with `b` copies of its middle letter).
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    order: GenOrder,
    quadratic: Vec<Rule>,
    det: Comb,
    family: Option<(u8, u8, u8)>,
    log: CompletionLog,
}

/// Diagnostics of a confluence check.
#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub monomial_order: String,
    pub quadratic_rules: usize,
    pub cubic_leading_word: Option<String>,
    /// Family members `x y^b z` whose critical pairs were checked.
    pub family_members_checked: usize,
    pub critical_pairs: usize,
    pub failures: Vec<String>,
    pub confluent: bool,
    pub completion: CompletionLog,
}

impl ConfluenceReport {
    /// Rule count up to the checked family bound.
    pub fn rule_count(&self) -> usize {
        self.quadratic_rules + self.family_members_checked
    }
}

impl RewriteSystem {
    /// Complete the quadratic relations and attach the cubic family.
    pub fn build(order: GenOrder) -> Result<Self, Error> {
        let (quadratic, log) = kb::complete(quadratic_relations(&order), CompletionConfig::default())?;
        if quadratic.iter().any(|r| r.lhs.len() != 2) {
            return Err(Error::Domain("quadratic relations do not complete to a quadratic system".into()));
        }
        let det = quantum_determinant(&order);
        let rw = WordRewriter::new(quadratic.clone());
        let lead = rw.reduce(det.clone()).keys().next_back().cloned().expect("determinant vanishes");
        let l = lead.letters();
        let consecutive = l.len() == 3 && l[1] == l[0] + 1 && l[2] == l[1] + 1 && l[2] == 8;
        if !consecutive {
            return Err(Error::Config(format!(
                "order {} puts the determinant's leading word {} outside the top three generators; \
                 its cubic rule family is not one-parameter (use truncated_completion to inspect it)",
                order.describe(),
                l.iter().map(|&r| order.gen(r).to_string()).collect::<Vec<_>>().join(" ")
            )));
        }
        Ok(RewriteSystem { order, quadratic, det, family: Some((l[0], l[1], l[2])), log })
    }

    /// The quadratic rules only: the negative control in which the cubic
    /// relation has been removed.
    pub fn without_cubic(&self) -> Self {
        RewriteSystem { family: None, ..self.clone() }
    }

    pub fn default_system() -> Self {
        Self::build(GenOrder::diagonal_last()).expect("default presentation completes")
    }

    pub fn order(&self) -> &GenOrder {
        &self.order
    }

    pub fn quadratic_rules(&self) -> &[Rule] {
        &self.quadratic
    }

    pub fn determinant(&self) -> &Comb {
        &self.det
    }

    /// `(x, y, z)` ranks of the cubic family, if the cubic relation is present.
    pub fn family(&self) -> Option<(u8, u8, u8)> {
        self.family
    }

    pub fn completion_log(&self) -> &CompletionLog {
        &self.log
    }

    /// A naive word-level reducer for this system, with family members up to
    /// `max_b` available.
    pub fn rewriter(&self, max_b: usize) -> Result<WordRewriter, Error> {
        let rw = WordRewriter::new(self.quadratic.clone());
        match self.family {
            Some((x, y, z)) => rw.with_family(x, y, z, &self.det, max_b),
            None => Ok(rw),
        }
    }

    /// Certify local confluence: every critical pair of the quadratic rules
    /// and of the family members up to `max_b` joins.
    pub fn check_confluence(&self, max_b: usize) -> Result<ConfluenceReport, Error> {
        let rw = self.rewriter(max_b + 2)?;
        let PairCheck { pairs, failures } = kb::check_pairs(&rw, if self.family.is_some() { max_b } else { 0 });
        let name = |w: &Word| w.letters().iter().map(|&r| self.order.gen(r).to_string()).collect::<Vec<_>>().join(" ");
        Ok(ConfluenceReport {
            monomial_order: self.order.describe(),
            quadratic_rules: self.quadratic.len(),
            cubic_leading_word: self.family.map(|(x, y, z)| name(&Word::from_slice(&[x, y, z]))),
            family_members_checked: if self.family.is_some() { max_b } else { 0 },
            critical_pairs: pairs,
            confluent: failures.is_empty(),
            failures,
            completion: self.log.clone(),
        })
    }

    /// Name of a word in this system's generator order.
    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters().iter().map(|&r| self.order.gen(r).to_string()).collect::<Vec<_>>().join("*")
    }

    /// JSON dump of the rules (quadratic rules and family members up to `max_b`).
    pub fn rules_json(&self, max_b: usize) -> Result<serde_json::Value, Error> {
        let rw = self.rewriter(max_b)?;
        let render = |c: &Comb| -> Vec<(String, String)> {
            c.iter().map(|(w, l)| (self.render_word(w), l.to_string())).collect()
        };
        let mut rules: Vec<serde_json::Value> = self
            .quadratic
            .iter()
            .map(|r| serde_json::json!({"lhs": self.render_word(&r.lhs), "rhs": render(&r.rhs)}))
            .collect();
        if let Some(f) = rw.family() {
            for (b, rhs) in f.rhs.iter().enumerate() {
                let lhs = Word::splice(&[f.x], &vec![f.y; b + 1], &[f.z]);
                rules.push(serde_json::json!({"lhs": self.render_word(&lhs), "rhs": render(rhs), "family_b": b + 1}));
            }
        }
        Ok(serde_json::json!({"monomial_order": self.order.describe(), "rules": rules}))
    }
}

/// Truncated word-level completion of all relations, cubic included, with
/// words up to length `max_len`. Used to exhibit the rule family an order
/// produces and to cross-check the parametric family.
pub fn truncated_completion(
    order: &GenOrder,
    max_len: usize,
    max_rules: usize,
) -> Result<(Vec<Rule>, CompletionLog), Error> {
    let mut rels = quadratic_relations(order);
    rels.push(cubic_relation(order));
    kb::complete(rels, CompletionConfig { max_rules, max_len })
}
