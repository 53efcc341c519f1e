//! Critical pairs and local confluence.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{RewriteError, RewriteSystem};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapKind {
    /// `l1 = u s`, `l2 = s v` with `u`, `s`, `v` nonempty.
    Overlap,
    /// `l1 = u s v` with `s = l2`.
    Containment,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CriticalPair {
    /// Index of the rule rewritten to produce `left`.
    pub first: usize,
    /// Index of the rule rewritten to produce `right`.
    pub second: usize,
    pub kind: OverlapKind,
    pub u: Word,
    pub s: Word,
    pub v: Word,
    pub source: Word,
    pub left: Word,
    pub right: Word,
}

/// All overlap and containment critical pairs, ordered by rule pair, then
/// by overlap length.
pub fn critical_pairs(rs: &RewriteSystem) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for i in 0..rs.rules().len() {
        for j in 0..rs.rules().len() {
            pairs_between(rs, i, j, &mut out);
        }
    }
    out
}

pub(crate) fn pairs_between(rs: &RewriteSystem, i: usize, j: usize, out: &mut Vec<CriticalPair>) {
    let r1 = &rs.rules()[i];
    let r2 = &rs.rules()[j];
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    // proper overlaps: suffix of l1 == prefix of l2
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let u = l1.slice(0, l1.len() - k);
            let s = l2.slice(0, k);
            let v = l2.slice(k, l2.len());
            out.push(CriticalPair {
                first: i,
                second: j,
                kind: OverlapKind::Overlap,
                source: u.concat(l2),
                left: r1.rhs.concat(&v),
                right: u.concat(&r2.rhs),
                u,
                s,
                v,
            });
        }
    }
    if i != j && l2.len() <= l1.len() {
        let mut from = 0;
        while let Some(p) = l1.find(l2, from) {
            let u = l1.slice(0, p);
            let v = l1.slice(p + l2.len(), l1.len());
            out.push(CriticalPair {
                first: i,
                second: j,
                kind: OverlapKind::Containment,
                source: l1.clone(),
                left: r1.rhs.clone(),
                right: u.concat(&r2.rhs).concat(&v),
                u,
                s: l2.clone(),
                v,
            });
            from = p + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfluenceVerdict {
    Confluent,
    /// The descendants of `pair` reduce to the distinct irreducible words
    /// `left_nf` and `right_nf`.
    Counterexample {
        pair: Box<CriticalPair>,
        left_nf: Word,
        right_nf: Word,
    },
    BudgetExceeded {
        pair: Box<CriticalPair>,
    },
}

impl ConfluenceVerdict {
    pub fn is_confluent(&self) -> bool {
        matches!(self, ConfluenceVerdict::Confluent)
    }
}

/// Joins every critical pair by reduction to normal form.
pub fn local_confluence(rs: &RewriteSystem, budget: usize) -> ConfluenceVerdict {
    for cp in critical_pairs(rs) {
        let joined = rs
            .normal_form_within(&cp.left, budget)
            .and_then(|l| Ok((l, rs.normal_form_within(&cp.right, budget)?)));
        match joined {
            Ok((l, r)) if l == r => {}
            Ok((l, r)) => {
                return ConfluenceVerdict::Counterexample {
                    pair: Box::new(cp),
                    left_nf: l,
                    right_nf: r,
                }
            }
            Err(RewriteError::StepBudgetExceeded { .. }) | Err(_) => {
                return ConfluenceVerdict::BudgetExceeded { pair: Box::new(cp) }
            }
        }
    }
    ConfluenceVerdict::Confluent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{fcrs, DEFAULT_STEP_BUDGET};

    #[test]
    fn disjoint_rules_have_no_pairs() {
        let rs =
            RewriteSystem::from_strs(&["a", "b", "c", "d"], &[("a b", "a"), ("c d", "c")]).unwrap();
        assert!(critical_pairs(&rs).is_empty());
    }

    #[test]
    fn toy_counterexample() {
        let rs = RewriteSystem::from_strs(&["a", "b"], &[("a b", "a"), ("b a", "b")]).unwrap();
        let al = rs.alphabet().clone();
        match local_confluence(&rs, 100) {
            ConfluenceVerdict::Counterexample {
                pair,
                left_nf,
                right_nf,
            } => {
                assert_eq!(al.format_compact(&pair.source), "aba");
                let mut nfs = [al.format_compact(&left_nf), al.format_compact(&right_nf)];
                nfs.sort();
                assert_eq!(nfs, ["a", "aa"]);
            }
            v => panic!("expected counterexample, got {v:?}"),
        }
    }

    #[test]
    fn idempotent_rule_is_confluent() {
        let rs = RewriteSystem::from_strs(&["a"], &[("a a", "a")]).unwrap();
        assert!(local_confluence(&rs, 100).is_confluent());
        assert_eq!(critical_pairs(&rs).len(), 1);
    }

    #[test]
    fn containment_pairs_are_found() {
        let rs = RewriteSystem::from_strs(&["a", "b"], &[("a b a", "b"), ("b", "a")]).unwrap();
        let cps = critical_pairs(&rs);
        assert!(cps
            .iter()
            .any(|c| c.kind == OverlapKind::Containment && c.first == 0 && c.second == 1));
    }

    #[test]
    fn fcrs_2_2_rule_i_self_overlap_via_ba() {
        let rs = fcrs(2, 2);
        let al = rs.alphabet().clone();
        let cp = critical_pairs(&rs)
            .into_iter()
            .find(|c| c.first == 0 && c.second == 0 && al.format_compact(&c.s) == "ba")
            .expect("self-overlap on ba");
        // u_0 · a is the left side of rule (ii), i = 1
        assert_eq!(cp.right, rs.rules()[1].lhs);
        assert_eq!(al.format_compact(&cp.u), "baabaaaabaa");
        assert_eq!(cp.left, Word::letter(0).concat(&cp.v));
        assert!(local_confluence(&rs, DEFAULT_STEP_BUDGET).is_confluent());
    }

    #[test]
    fn fcrs_overlap_words_are_s_j() {
        let rs = fcrs(2, 2);
        let al = rs.alphabet().clone();
        let mut ss: Vec<_> = critical_pairs(&rs)
            .iter()
            .map(|c| {
                assert_eq!(c.first, 0, "only rule (i) overlaps on the left");
                assert_eq!(c.kind, OverlapKind::Overlap);
                al.format_compact(&c.s)
            })
            .collect();
        ss.sort();
        ss.dedup();
        assert_eq!(ss, ["ba", "baaba"]);
    }
}
