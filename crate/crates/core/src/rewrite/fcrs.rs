use alloc::vec::Vec;

use super::{RewriteSystem, Rule};
use crate::word::{Alphabet, Word};

/// The complete system for `<a, b | (ba^n)^m (a^n b)^m a = a>`, with
/// precedence `a < b`:
///
/// * `(ba^n)^m (a^n b)^m a -> a`
/// * `(ba^n)^m (a^n b)^(m-i) a^n a -> (a^n b)^(m-i) a^n (a^n b)^m a` for `1 <= i <= m`
pub fn fcrs(m: usize, n: usize) -> RewriteSystem {
    assert!(m >= 1 && n >= 1, "fcrs needs m, n >= 1");
    let a = Word::letter(0);
    let b = Word::letter(1);
    let an = a.pow(n);
    let ban = b.concat(&an);
    let anb = an.concat(&b);
    let head = ban.pow(m);

    let mut rules = Vec::with_capacity(m + 1);
    rules.push(Rule::new(head.concat(&anb.pow(m)).concat(&a), a.clone()));
    for i in 1..=m {
        let mid = anb.pow(m - i).concat(&an);
        rules.push(Rule::new(
            head.concat(&mid).concat(&a),
            mid.concat(&anb.pow(m)).concat(&a),
        ));
    }
    let alphabet = Alphabet::new(["a", "b"]).expect("static names");
    RewriteSystem::new(alphabet, rules).expect("fcrs rules decrease in shortlex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{local_confluence, DEFAULT_STEP_BUDGET};

    fn show(rs: &RewriteSystem) -> Vec<(alloc::string::String, alloc::string::String)> {
        let al = rs.alphabet();
        rs.rules()
            .iter()
            .map(|r| (al.format_compact(&r.lhs), al.format_compact(&r.rhs)))
            .collect()
    }

    #[test]
    fn fcrs_2_2_rules() {
        let got = show(&fcrs(2, 2));
        assert_eq!(got.len(), 3);
        assert_eq!(got[0], ("baabaaaabaaba".into(), "a".into()));
        assert_eq!(got[2], ("baabaaaaa".into(), "aaaabaaba".into()));
    }

    #[test]
    fn fcrs_1_1_rules() {
        let got = show(&fcrs(1, 1));
        assert_eq!(
            got,
            [("baaba".into(), "a".into()), ("baaa".into(), "aaba".into())]
        );
    }

    #[test]
    fn rule_lengths() {
        for m in 1..=4 {
            for n in 1..=4 {
                let rs = fcrs(m, n);
                assert_eq!(rs.rules().len(), m + 1);
                let first = &rs.rules()[0];
                assert_eq!(first.lhs.len(), 2 * m * (n + 1) + 1);
                assert_eq!(first.rhs.len(), 1);
                for r in &rs.rules()[1..] {
                    assert_eq!(r.lhs.len(), r.rhs.len());
                }
            }
        }
    }

    #[test]
    fn small_parameters_are_confluent() {
        for m in 2..=3 {
            for n in 2..=3 {
                let rs = fcrs(m, n);
                assert!(
                    local_confluence(&rs, DEFAULT_STEP_BUDGET).is_confluent(),
                    "({m},{n})"
                );
                let lhs = rs.rules()[0].lhs.clone();
                assert_eq!(rs.normal_form(&lhs).unwrap(), Word::letter(0));
            }
        }
    }
}
