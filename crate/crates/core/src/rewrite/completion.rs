//! Knuth-Bendix completion under shortlex.
//!
//! Equations are processed first in, first out. Each new rule triggers
//! interreduction: rules whose left side it rewrites go back to the queue,
//! and every right side is renormalized. When the queue empties, all
//! critical pairs of the current system are rechecked before declaring it
//! complete.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::critical::{critical_pairs, pairs_between};
use super::{RewriteError, RewriteSystem, Rule};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_lhs_len: usize,
    /// Budget for each individual reduction.
    pub step_budget: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 200,
            max_lhs_len: 64,
            step_budget: super::DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExhaustReason {
    TooManyRules,
    LhsTooLong,
    StepBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Locally confluent, rules sorted by left side.
    Completed(RewriteSystem),
    /// A limit was hit; the partial system is still a valid rewriting system
    /// for the same congruence.
    Exhausted {
        partial: RewriteSystem,
        reason: ExhaustReason,
    },
}

impl Completion {
    pub fn system(&self) -> &RewriteSystem {
        match self {
            Completion::Completed(rs) => rs,
            Completion::Exhausted { partial, .. } => partial,
        }
    }

    pub fn is_completed(&self) -> bool {
        matches!(self, Completion::Completed(_))
    }
}

struct State {
    alphabet: crate::word::Alphabet,
    rules: Vec<Rule>,
    queue: VecDeque<(Word, Word)>,
    limits: CompletionLimits,
}

impl State {
    fn system(&self) -> RewriteSystem {
        RewriteSystem::new(self.alphabet.clone(), self.rules.clone())
            .expect("completion keeps rules oriented")
    }

    fn sorted(&self) -> RewriteSystem {
        let mut rules = self.rules.clone();
        rules.sort_by(|x, y| x.lhs.cmp(&y.lhs));
        RewriteSystem::new(self.alphabet.clone(), rules).expect("completion keeps rules oriented")
    }

    fn exhausted(&self, reason: ExhaustReason) -> Completion {
        Completion::Exhausted {
            partial: self.sorted(),
            reason,
        }
    }

    /// Turns one queued equation into a rule. `Ok(false)` if it was trivial.
    fn process(&mut self, l: Word, r: Word) -> Result<bool, ExhaustReason> {
        let rs = self.system();
        let budget = self.limits.step_budget;
        let nf = |w: &Word| match rs.normal_form_within(w, budget) {
            Ok(x) => Ok(x),
            Err(RewriteError::StepBudgetExceeded { .. }) => Err(ExhaustReason::StepBudget),
            Err(_) => unreachable!("rules are valid"),
        };
        let (l, r) = (nf(&l)?, nf(&r)?);
        if l == r {
            return Ok(false);
        }
        // shortlex is total, so every nontrivial equation orients
        let rule = if l > r {
            Rule::new(l, r)
        } else {
            Rule::new(r, l)
        };
        if rule.lhs.len() > self.limits.max_lhs_len {
            return Err(ExhaustReason::LhsTooLong);
        }

        // rules whose left side the new rule rewrites become equations again
        let old = core::mem::take(&mut self.rules);
        for x in old {
            if x.lhs.contains(&rule.lhs) {
                self.queue.push_back((x.lhs, x.rhs));
            } else {
                self.rules.push(x);
            }
        }
        self.rules.push(rule);
        if self.rules.len() > self.limits.max_rules {
            return Err(ExhaustReason::TooManyRules);
        }

        // renormalize right sides
        let rs = self.system();
        for i in 0..self.rules.len() {
            let rhs = match rs.normal_form_within(&self.rules[i].rhs, budget) {
                Ok(x) => x,
                Err(_) => return Err(ExhaustReason::StepBudget),
            };
            self.rules[i].rhs = rhs;
        }

        // new critical pairs, both orders with every rule including itself
        let rs = self.system();
        let k = self.rules.len() - 1;
        let mut cps = Vec::new();
        for j in 0..self.rules.len() {
            pairs_between(&rs, k, j, &mut cps);
            if j != k {
                pairs_between(&rs, j, k, &mut cps);
            }
        }
        for cp in cps {
            self.queue.push_back((cp.left, cp.right));
        }
        Ok(true)
    }
}

/// Runs completion from the rules of `rs`, treated as equations.
pub fn knuth_bendix(rs: &RewriteSystem, limits: CompletionLimits) -> Completion {
    let mut st = State {
        alphabet: rs.alphabet().clone(),
        rules: Vec::new(),
        queue: rs
            .rules()
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect(),
        limits,
    };
    loop {
        while let Some((l, r)) = st.queue.pop_front() {
            if let Err(reason) = st.process(l, r) {
                return st.exhausted(reason);
            }
        }
        // final sweep: every critical pair must join
        let sys = st.system();
        for cp in critical_pairs(&sys) {
            let l = sys.normal_form_within(&cp.left, limits.step_budget);
            let r = sys.normal_form_within(&cp.right, limits.step_budget);
            match (l, r) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => st.queue.push_back((l, r)),
                _ => return st.exhausted(ExhaustReason::StepBudget),
            }
        }
        if st.queue.is_empty() {
            return Completion::Completed(st.sorted());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{fcrs, local_confluence};
    use alloc::collections::BTreeSet;

    fn rule_set(rs: &RewriteSystem) -> BTreeSet<(Word, Word)> {
        rs.rules()
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect()
    }

    fn single_relation(m: usize, n: usize) -> RewriteSystem {
        let full = fcrs(m, n);
        RewriteSystem::new(
            full.alphabet().clone(),
            alloc::vec![full.rules()[0].clone()],
        )
        .unwrap()
    }

    #[test]
    fn completes_single_relation_to_fcrs() {
        for (m, n) in [(2, 2), (3, 2)] {
            let out = knuth_bendix(&single_relation(m, n), CompletionLimits::default());
            let Completion::Completed(done) = out else {
                panic!("({m},{n}) did not complete")
            };
            assert_eq!(done.rules().len(), m + 1);
            assert_eq!(rule_set(&done), rule_set(&fcrs(m, n)));
        }
    }

    #[test]
    fn complete_system_is_fixed_point() {
        let rs = fcrs(2, 2);
        let out = knuth_bendix(&rs, CompletionLimits::default());
        assert_eq!(rule_set(out.system()), rule_set(&rs));
        assert!(out.is_completed());
    }

    #[test]
    fn toy_system_completes() {
        let rs = RewriteSystem::from_strs(&["a", "b"], &[("a b", "a"), ("b a", "b")]).unwrap();
        let out = knuth_bendix(&rs, CompletionLimits::default());
        assert!(out.is_completed());
        let sys = out.system();
        assert!(local_confluence(sys, 1000).is_confluent());
        for r in rs.rules() {
            assert_eq!(
                sys.normal_form(&r.lhs).unwrap(),
                sys.normal_form(&r.rhs).unwrap()
            );
        }
    }

    #[test]
    fn limits_are_reported() {
        let rs =
            RewriteSystem::from_strs(&["a", "b", "c"], &[("b a", "a b"), ("c b a", "a")]).unwrap();
        let limits = CompletionLimits {
            max_rules: 1,
            ..CompletionLimits::default()
        };
        match knuth_bendix(&rs, limits) {
            Completion::Exhausted { reason, .. } => assert_eq!(reason, ExhaustReason::TooManyRules),
            c => panic!("expected exhaustion, got {c:?}"),
        }
    }
}
