use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::Fsa;
use crate::rewrite::CompleteSystem;
use crate::word::Word;

#[derive(Clone, Copy, Debug)]
pub enum MembershipMode<'a> {
    /// Membership of the word itself in the language.
    Free,
    /// Membership of the element the word represents in the image of the
    /// language in the monoid presented by `rs`. Words of the language are
    /// explored up to length `depth`.
    Modulo {
        rs: &'a CompleteSystem,
        depth: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Carries a word of the language equal to the query.
    Yes(Word),
    No,
    Unknown,
}

/// Decides `w ∈ L(f)` exactly in free mode, and semi-decides it modulo a
/// complete rewriting system otherwise.
///
/// In modulo mode the search walks pairs (automaton state, normal form of
/// the prefix read so far). Since normal forms respect concatenation, those
/// pairs are all that matters; when no new pair turns up the search has
/// seen every element of the image and can answer `No`.
pub fn rational_membership(f: &Fsa, w: &Word, mode: MembershipMode<'_>) -> Membership {
    match mode {
        MembershipMode::Free => {
            if f.accepts(w) {
                Membership::Yes(w.clone())
            } else {
                Membership::No
            }
        }
        MembershipMode::Modulo { rs, depth } => modulo(f, w, rs, depth),
    }
}

fn modulo(f: &Fsa, w: &Word, rs: &CompleteSystem, depth: usize) -> Membership {
    let Ok(target) = rs.normal_form(w) else {
        return Membership::Unknown;
    };
    let g = f.remove_epsilon();
    let mut adj: Vec<Vec<(crate::word::Symbol, usize)>> = alloc::vec![Vec::new(); g.num_states()];
    for &(p, l, q) in g.transitions() {
        adj[p].push((l.expect("ε-free"), q));
    }

    // (state, normal form) -> a word of the language prefix reaching it
    let mut seen: BTreeMap<(usize, Word), Word> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &q in g.initial() {
        if seen.insert((q, Word::empty()), Word::empty()).is_none() {
            queue.push_back((q, Word::empty(), Word::empty()));
        }
    }
    let mut truncated = false;
    while let Some((q, nf, word)) = queue.pop_front() {
        if g.finals().contains(&q) && nf == target {
            // re-verify before answering
            let ok = f.accepts(&word) && rs.normal_form(&word).is_ok_and(|x| x == target);
            return if ok {
                Membership::Yes(word)
            } else {
                Membership::Unknown
            };
        }
        if word.len() >= depth {
            truncated = truncated || !adj[q].is_empty();
            continue;
        }
        for &(s, r) in &adj[q] {
            let mut next = nf.clone();
            next.push(s);
            let Ok(next) = rs.normal_form(&next) else {
                return Membership::Unknown;
            };
            if seen.contains_key(&(r, next.clone())) {
                continue;
            }
            let mut w2 = word.clone();
            w2.push(s);
            seen.insert((r, next.clone()), w2.clone());
            queue.push_back((r, next, w2));
        }
    }
    if truncated {
        Membership::Unknown
    } else {
        Membership::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{fcrs, DEFAULT_STEP_BUDGET};

    fn complete22() -> CompleteSystem {
        fcrs(2, 2).certify(DEFAULT_STEP_BUDGET).unwrap()
    }

    fn ab(s: &str) -> Word {
        crate::word::Alphabet::new(["a", "b"])
            .unwrap()
            .parse_word(s)
            .unwrap()
    }

    #[test]
    fn modulo_examples() {
        let rs = complete22();
        let l = Fsa::literal(&ab("baabaaaabaaba"));
        let mode = MembershipMode::Modulo { rs: &rs, depth: 20 };
        assert_eq!(
            rational_membership(&l, &ab("a"), mode),
            Membership::Yes(ab("baabaaaabaaba"))
        );
        assert_eq!(rational_membership(&l, &ab("b"), mode), Membership::No);
    }

    #[test]
    fn free_example() {
        let l = Fsa::universal([crate::word::Symbol::pos(0)]).concat(&Fsa::literal(&ab("b")));
        assert_eq!(
            rational_membership(&l, &ab("ab"), MembershipMode::Free),
            Membership::Yes(ab("ab"))
        );
        assert_eq!(
            rational_membership(&l, &ab("ba"), MembershipMode::Free),
            Membership::No
        );
    }

    #[test]
    fn unbounded_image_stays_unknown() {
        let rs = complete22();
        let bstar = Fsa::universal([crate::word::Symbol::pos(1)]);
        let mode = MembershipMode::Modulo { rs: &rs, depth: 10 };
        assert_eq!(
            rational_membership(&bstar, &ab("a"), mode),
            Membership::Unknown
        );
        assert_eq!(
            rational_membership(&bstar, &ab("bbb"), mode),
            Membership::Yes(ab("bbb"))
        );
    }

    #[test]
    fn infinite_language_with_finite_image_is_exhausted() {
        let rs = crate::rewrite::RewriteSystem::from_strs(&["a", "b"], &[("a a", "a")])
            .unwrap()
            .certify(100)
            .unwrap();
        let astar = Fsa::universal([crate::word::Symbol::pos(0)]);
        let mode = MembershipMode::Modulo { rs: &rs, depth: 50 };
        assert_eq!(rational_membership(&astar, &ab("b"), mode), Membership::No);
        assert_eq!(
            rational_membership(&astar, &ab("aaaa"), mode),
            Membership::Yes(ab("a"))
        );
    }

    #[test]
    fn yes_needs_normal_form_match_not_spelling() {
        // (ba^2)^2 a^2 a equals a^2 (a^2 b)^2 a
        let rs = complete22();
        let mode = MembershipMode::Modulo { rs: &rs, depth: 12 };
        let l2 = Fsa::literal(&ab("aaaabaaba"));
        assert_eq!(
            rational_membership(&l2, &ab("baabaaaaa"), mode),
            Membership::Yes(ab("aaaabaaba"))
        );
    }
}
