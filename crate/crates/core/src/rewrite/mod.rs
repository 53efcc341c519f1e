//! String rewriting over positive words, ordered by shortlex.
//!
//! Reduction always rewrites the redex that ends earliest in the word
//! (leftmost-innermost); among rules matching there, the first in rule
//! order wins. Both choices only matter for systems that are not confluent.

mod completion;
mod critical;
mod fcrs;

pub use completion::{knuth_bendix, Completion, CompletionLimits, ExhaustReason};
pub use critical::{
    critical_pairs, local_confluence, ConfluenceVerdict, CriticalPair, OverlapKind,
};
pub use fcrs::fcrs;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Deref;

use thiserror::Error;

use crate::word::{Alphabet, Symbol, Word};

/// Default number of rewrite steps allowed for a single reduction.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {index}: left side is empty")]
    EmptyLhs { index: usize },
    #[error("rule {index}: words must be positive")]
    NotPositive { index: usize },
    #[error("rule {index}: uses a generator outside the alphabet")]
    ForeignSymbol { index: usize },
    #[error("rule {index}: left side is not shortlex-greater than right side")]
    NotDecreasing { index: usize },
    #[error("step budget of {budget} rewrites exceeded")]
    StepBudgetExceeded { budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    /// Rule indices keyed by the last letter of the left side, in rule order.
    by_last: BTreeMap<u32, Vec<usize>>,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, RewriteError> {
        for (index, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(RewriteError::EmptyLhs { index });
            }
            if !r.lhs.is_positive() || !r.rhs.is_positive() {
                return Err(RewriteError::NotPositive { index });
            }
            if !alphabet.contains_word(&r.lhs) || !alphabet.contains_word(&r.rhs) {
                return Err(RewriteError::ForeignSymbol { index });
            }
            if r.lhs <= r.rhs {
                return Err(RewriteError::NotDecreasing { index });
            }
        }
        let mut by_last: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_last
                .entry(r.lhs[r.lhs.len() - 1].gen)
                .or_default()
                .push(i);
        }
        Ok(RewriteSystem {
            alphabet,
            rules,
            by_last,
        })
    }

    /// Builds a system from `(lhs, rhs)` token strings.
    pub fn from_strs(gens: &[&str], rules: &[(&str, &str)]) -> Result<Self, RewriteError> {
        let alphabet = Alphabet::new(gens.iter().copied()).expect("valid generator names");
        let rules = rules
            .iter()
            .map(|(l, r)| {
                Rule::new(
                    alphabet.parse_word(l).expect("lhs over alphabet"),
                    alphabet.parse_word(r).expect("rhs over alphabet"),
                )
            })
            .collect();
        RewriteSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// First rule (in rule order) whose left side is a suffix of `s`.
    fn match_suffix(&self, s: &[Symbol]) -> Option<usize> {
        let last = s.last()?;
        self.by_last
            .get(&last.gen)?
            .iter()
            .copied()
            .find(|&i| s.ends_with(&self.rules[i].lhs))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        (1..=w.len()).all(|end| self.match_suffix(&w[..end]).is_none())
    }

    /// Reduces `w` to an irreducible word, failing after `budget` rewrites.
    pub fn normal_form_within(&self, w: &Word, budget: usize) -> Result<Word, RewriteError> {
        let mut out: Vec<Symbol> = Vec::with_capacity(w.len());
        let mut pending: Vec<Symbol> = w.iter().rev().copied().collect();
        let mut steps = 0usize;
        while let Some(s) = pending.pop() {
            out.push(s);
            if let Some(i) = self.match_suffix(&out) {
                steps += 1;
                if steps > budget {
                    return Err(RewriteError::StepBudgetExceeded { budget });
                }
                let rule = &self.rules[i];
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
        Ok(Word::from_symbols(out))
    }

    pub fn normal_form(&self, w: &Word) -> Result<Word, RewriteError> {
        self.normal_form_within(w, DEFAULT_STEP_BUDGET)
    }

    /// Every word reachable from `w` by one rewrite, with the rule used and
    /// the position of the redex.
    pub fn one_step(&self, w: &Word) -> Vec<(usize, usize, Word)> {
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut from = 0;
            while let Some(p) = w.find(&r.lhs, from) {
                out.push((i, p, w.splice(p, r.lhs.len(), &r.rhs)));
                from = p + 1;
            }
        }
        out
    }

    /// Checks local confluence and wraps the system if every critical pair
    /// joins within `budget` steps per reduction.
    pub fn certify(self, budget: usize) -> Result<CompleteSystem, ConfluenceVerdict> {
        match local_confluence(&self, budget) {
            ConfluenceVerdict::Confluent => Ok(CompleteSystem(self)),
            other => Err(other),
        }
    }
}

/// A rewriting system whose critical pairs have all been joined. Together
/// with the shortlex order this makes it complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSystem(RewriteSystem);

impl CompleteSystem {
    pub fn system(&self) -> &RewriteSystem {
        &self.0
    }

    pub fn into_system(self) -> RewriteSystem {
        self.0
    }

    /// Equality in the presented monoid.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, RewriteError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }
}

impl Deref for CompleteSystem {
    type Target = RewriteSystem;
    fn deref(&self) -> &RewriteSystem {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(rs: &RewriteSystem, s: &str) -> Word {
        rs.alphabet().parse_word(s).unwrap()
    }

    #[test]
    fn rejects_bad_rules() {
        assert_eq!(
            RewriteSystem::from_strs(&["a", "b"], &[("a", "b")]).unwrap_err(),
            RewriteError::NotDecreasing { index: 0 }
        );
        assert_eq!(
            RewriteSystem::from_strs(&["a"], &[("1", "1")]).unwrap_err(),
            RewriteError::EmptyLhs { index: 0 }
        );
    }

    #[test]
    fn fcrs_2_2_examples() {
        let rs = fcrs(2, 2);
        let al = rs.alphabet().clone();
        let nf = |s: &str| al.format_compact(&rs.normal_form(&w(&rs, s)).unwrap());
        assert_eq!(nf("baabaaaabaaba"), "a");
        // (ba^2)^2 a^2 a  and  a^2 (a^2 b)^2 a
        assert_eq!(nf("baabaa aa a"), nf("aa aab aab a"));
        // gamma beta and beta gamma
        assert_eq!(nf("baabaa aaaa"), "aaaabaabaa");
        assert_eq!(nf("aaaa baabaa"), "aaaabaabaa");
    }

    #[test]
    fn budget_is_enforced() {
        let rs = RewriteSystem::from_strs(&["a", "b"], &[("b", "a")]).unwrap();
        let word = w(&rs, "bbbb");
        assert_eq!(
            rs.normal_form_within(&word, 3),
            Err(RewriteError::StepBudgetExceeded { budget: 3 })
        );
        assert_eq!(rs.normal_form_within(&word, 4).unwrap(), w(&rs, "aaaa"));
    }

    #[test]
    fn irreducible_check_matches_normal_form() {
        let rs = fcrs(2, 2);
        let word = w(&rs, "aaaabaabaa");
        assert!(rs.is_irreducible(&word));
        assert!(!rs.is_irreducible(&w(&rs, "baabaaaaaa")));
    }

    fn pos_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u32..2, 0..max).prop_map(|v| Word::from_gens(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn normal_form_idempotent(word in pos_word(30)) {
            let rs = fcrs(2, 2);
            let n = rs.normal_form(&word).unwrap();
            prop_assert!(rs.is_irreducible(&n));
            prop_assert_eq!(rs.normal_form(&n).unwrap(), n.clone());
            prop_assert!(n <= word);
        }

        #[test]
        fn normal_form_is_a_congruence(u in pos_word(20), v in pos_word(20)) {
            for (m, n) in [(2, 2), (3, 2)] {
                let rs = fcrs(m, n);
                let lhs = rs.normal_form(&u.concat(&rs.normal_form(&v).unwrap())).unwrap();
                let rhs = rs.normal_form(&u.concat(&v)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn each_rewrite_decreases_shortlex(word in pos_word(30)) {
            let rs = fcrs(3, 2);
            for (_, _, next) in rs.one_step(&word) {
                prop_assert!(next < word);
            }
        }
    }
}
