//! Prefix/suffix overlaps of positive words.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::word::Word;

/// Proper nonempty prefixes of `w` that are also suffixes, shortest first.
pub fn self_overlaps(w: &Word) -> Vec<Word> {
    (1..w.len())
        .filter(|&k| w[..k] == w[w.len() - k..])
        .map(|k| w.slice(0, k))
        .collect()
}

/// Nonempty words that are a prefix of `u` and a suffix of `v`, where `u`
/// and `v` are distinct. Whole words count.
pub fn cross_overlaps(u: &Word, v: &Word) -> Vec<Word> {
    let max = u.len().min(v.len());
    (1..=max)
        .filter(|&k| u[..k] == v[v.len() - k..])
        .map(|k| u.slice(0, k))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OverlapReport {
    pub self_overlaps: BTreeMap<Word, Vec<Word>>,
    /// `(u, v, o)`: `o` is a prefix of `u` and a suffix of `v`.
    pub cross_overlaps: Vec<(Word, Word, Word)>,
}

impl OverlapReport {
    pub fn is_empty(&self) -> bool {
        self.self_overlaps.values().all(Vec::is_empty) && self.cross_overlaps.is_empty()
    }
}

/// Collects every overlap within a set of positive words. Duplicates in the
/// input are treated as one word.
pub fn overlap_report(words: &[Word]) -> OverlapReport {
    let mut set: Vec<&Word> = words.iter().collect();
    set.sort();
    set.dedup();
    let mut report = OverlapReport::default();
    for &u in &set {
        report.self_overlaps.insert(u.clone(), self_overlaps(u));
    }
    for &u in &set {
        for &v in &set {
            if u == v {
                continue;
            }
            for o in cross_overlaps(u, v) {
                report.cross_overlaps.push((u.clone(), v.clone(), o));
            }
        }
    }
    report
}

/// No nonempty prefix of a member equals a nonempty suffix of a member:
/// proper prefixes/suffixes for a word against itself, any for two
/// distinct words.
pub fn is_overlap_free(words: &[Word]) -> bool {
    overlap_report(words).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn words(al: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| al.parse_word(s).unwrap()).collect()
    }

    #[test]
    fn self_overlap_examples() {
        let al = ab();
        let w = al.parse_word("baabaaaabaaba").unwrap();
        let got: Vec<_> = self_overlaps(&w)
            .iter()
            .map(|o| al.format_compact(o))
            .collect();
        assert_eq!(got, ["ba", "baaba"]);
        let got = self_overlaps(&al.parse_word("aba").unwrap());
        assert_eq!(got, words(&al, &["a"]));
        assert!(self_overlaps(&al.parse_word("ab").unwrap()).is_empty());
    }

    #[test]
    fn overlap_free_examples() {
        let xy = Alphabet::new(["x", "y"]).unwrap();
        assert!(is_overlap_free(&words(&xy, &["xy", "xxyy"])));
        let al = ab();
        assert!(!is_overlap_free(&words(&al, &["ba", "ab"])));
        assert!(!is_overlap_free(&words(&al, &["aba"])));
        // one word a prefix of another
        assert!(!is_overlap_free(&words(&al, &["a", "ab"])));
    }

    #[test]
    fn report_is_verifiable() {
        let al = ab();
        let ws = words(&al, &["aab", "abaa", "ba"]);
        let rep = overlap_report(&ws);
        for (w, os) in &rep.self_overlaps {
            for o in os {
                assert!(w.starts_with(o) && w.ends_with(o) && o.len() < w.len());
            }
        }
        for (u, v, o) in &rep.cross_overlaps {
            assert!(u.starts_with(o) && v.ends_with(o));
        }
        assert!(!rep.cross_overlaps.is_empty());
    }
}
