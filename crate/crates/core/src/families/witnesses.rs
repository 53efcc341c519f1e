use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use super::presentations::bqa;
use super::trace::{foata_normal_form, TraceGraph};
use crate::report::Report;
use crate::rewrite::{fcrs, CompleteSystem, RewriteError, DEFAULT_STEP_BUDGET};
use crate::word::{Symbol, Word};

fn a() -> Word {
    Word::letter(0)
}

fn b() -> Word {
    Word::letter(1)
}

/// `(y x^m y^-1, y^{2n}, x^m, x y^{2n} x^-1)` over `x, y` in path order.
pub fn p4_group_witnesses(m: usize, n: usize) -> [Word; 4] {
    let (x, y) = (Word::letter(0), Word::letter(1));
    let xm = x.pow(m);
    let y2n = y.pow(2 * n);
    [
        y.concat(&xm).concat(&y.inverse()),
        y2n.clone(),
        xm,
        x.concat(&y2n).concat(&x.inverse()),
    ]
}

/// `(a(ba^n)^{m-1}ba^{n-1}, a^{2n}, (ba^n)^m, ba^n a^{2n} (ba^n)^{m-1})` over
/// `a, b` in path order.
pub fn p4_trace_witnesses(m: usize, n: usize) -> [Word; 4] {
    let ban = b().concat(&a().pow(n));
    [
        a().concat(&ban.pow(m - 1))
            .concat(&b())
            .concat(&a().pow(n - 1)),
        a().pow(2 * n),
        ban.pow(m),
        ban.concat(&a().pow(2 * n)).concat(&ban.pow(m - 1)),
    ]
}

/// Whether `w` factors over `{a, ba}` (generators 0 and 1), nonempty.
pub fn in_a_ba_plus(w: &Word) -> bool {
    let (sa, sb) = (Symbol::pos(0), Symbol::pos(1));
    let mut i = 0;
    while i < w.len() {
        if w[i] == sa {
            i += 1;
        } else if w[i] == sb && i + 1 < w.len() && w[i + 1] == sa {
            i += 2;
        } else {
            return false;
        }
    }
    !w.is_empty()
}

/// Every word of `{a, ba}^+` with at most `max_len` letters, shortlex.
pub fn a_ba_words(max_len: usize) -> Vec<Word> {
    let mut out = BTreeSet::new();
    let mut frontier = alloc::vec![Word::empty()];
    while let Some(w) = frontier.pop() {
        for piece in [a(), b().concat(&a())] {
            let next = w.concat(&piece);
            if next.len() <= max_len && out.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    out.into_iter().collect()
}

/// Witnesses that `w` and `a` generate the same left ideal:
/// `p·w = a` and `q·a = w` in the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LWitness {
    pub w: Word,
    pub p: Word,
    pub q: Word,
    /// Normal form of `p·w`; equals `a`.
    pub pw_normal_form: Word,
    /// Normal forms of `q·a` and of `w`; equal.
    pub qa_normal_form: Word,
    pub w_normal_form: Word,
}

impl LWitness {
    /// Recomputes both certificates under `rs`.
    pub fn verify(&self, rs: &CompleteSystem) -> Result<bool, RewriteError> {
        let pw = rs.normal_form(&self.p.concat(&self.w))?;
        let qa = rs.normal_form(&self.q.concat(&a()))?;
        let w = rs.normal_form(&self.w)?;
        Ok(pw == a()
            && pw == self.pw_normal_form
            && qa == w
            && qa == self.qa_normal_form
            && w == self.w_normal_form)
    }
}

/// The complete system for `R_{m,n}`.
pub fn fcrs_complete(m: usize, n: usize) -> Option<CompleteSystem> {
    fcrs(m, n).certify(DEFAULT_STEP_BUDGET).ok()
}

/// Searches for `p` with `p·w = a` in `R_{m,n}`; `q` is `w` without its final
/// `a`.
///
/// The relator `bQ_{m,n}a` minus a suffix equal to `w` is tried first. After
/// that, candidates `p` are explored breadth-first by normal form, so each
/// element is tried once at its shortlex-least spelling, up to length
/// `depth`. If that fails, `w` is split as `u·v` with `u` in `{a, ba}^+` and
/// `|u| >= 2`: from `p_u·u = a` and `p'·(a·v) = a` it follows that
/// `p'·p_u·w = a`, and both factors are found by the same search.
pub fn l_witness_search(
    rs: &CompleteSystem,
    m: usize,
    n: usize,
    w: &Word,
    depth: usize,
) -> Option<LWitness> {
    if !in_a_ba_plus(w) {
        return None;
    }
    let p = left_inverse_to_a(rs, m, n, w, depth)?;
    let q = w.slice(0, w.len() - 1);
    let witness = LWitness {
        w: w.clone(),
        pw_normal_form: rs.normal_form(&p.concat(w)).ok()?,
        qa_normal_form: rs.normal_form(&q.concat(&a())).ok()?,
        w_normal_form: rs.normal_form(w).ok()?,
        p,
        q,
    };
    witness.verify(rs).ok()?.then_some(witness)
}

fn left_inverse_to_a(
    rs: &CompleteSystem,
    m: usize,
    n: usize,
    w: &Word,
    depth: usize,
) -> Option<Word> {
    let target = a();
    let works = |p: &Word| rs.normal_form(&p.concat(w)).is_ok_and(|x| x == target);

    let r = bqa(m, n);
    if r.ends_with(w) {
        let seed = r.slice(0, r.len() - w.len());
        if seed.len() <= depth && works(&seed) {
            return Some(seed);
        }
    }

    let mut seen = BTreeSet::from([Word::empty()]);
    let mut queue = VecDeque::from([Word::empty()]);
    while let Some(p) = queue.pop_front() {
        if works(&p) {
            return Some(p);
        }
        if p.len() >= depth {
            continue;
        }
        for g in [a(), b()] {
            let next = rs.normal_form(&p.concat(&g)).ok()?;
            if next.len() <= depth && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }

    for cut in 2..w.len() {
        let (u, v) = (w.slice(0, cut), w.slice(cut, w.len()));
        if !in_a_ba_plus(&u) || !in_a_ba_plus(&v) {
            continue;
        }
        let Some(pu) = left_inverse_to_a(rs, m, n, &u, depth) else {
            continue;
        };
        if let Some(pv) = left_inverse_to_a(rs, m, n, &a().concat(&v), depth) {
            return Some(pv.concat(&pu));
        }
    }
    None
}

/// Outcome of comparing trace classes with monoid values on a ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityResult {
    pub radius: usize,
    pub sequences: usize,
    pub trace_classes: usize,
    pub values: usize,
    /// Sequences with the same value but different trace classes, or the
    /// same trace class but different values.
    pub violations: Vec<(Word, Word)>,
}

impl InjectivityResult {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.values == self.trace_classes
    }
}

/// All sequences over `k` letters of length `1..=radius`, shortlex.
pub fn ball_sequences(k: u32, radius: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = alloc::vec![Word::empty()];
    for _ in 0..radius {
        layer = layer
            .iter()
            .flat_map(|w| (0..k).map(move |x| w.concat(&Word::letter(x))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Compares trace equivalence with equality of values for every sequence of
/// length at most `radius` over the four letters of `P_4`. `value` maps a
/// letter sequence to a canonical value.
pub fn compare_with_traces<V: Ord + Clone, E>(
    radius: usize,
    mut value: impl FnMut(&Word) -> Result<V, E>,
) -> Result<InjectivityResult, E> {
    let g = TraceGraph::p4();
    let seqs = ball_sequences(4, radius);
    let mut by_class: BTreeMap<Word, (V, Word)> = BTreeMap::new();
    let mut by_value: BTreeMap<V, (Word, Word)> = BTreeMap::new();
    let mut violations = Vec::new();
    for s in &seqs {
        let class = foata_normal_form(&g, s);
        let v = value(s)?;
        match by_class.get(&class) {
            Some((v0, s0)) if *v0 != v => violations.push((s0.clone(), s.clone())),
            Some(_) => {}
            None => {
                by_class.insert(class.clone(), (v.clone(), s.clone()));
            }
        }
        match by_value.get(&v) {
            Some((c0, s0)) if *c0 != class => violations.push((s0.clone(), s.clone())),
            Some(_) => {}
            None => {
                by_value.insert(v, (class, s.clone()));
            }
        }
    }
    Ok(InjectivityResult {
        radius,
        sequences: seqs.len(),
        trace_classes: by_class.len(),
        values: by_value.len(),
        violations,
    })
}

/// Normal forms of the images of letter sequences under the trace witnesses.
pub fn bounded_injectivity(
    rs: &CompleteSystem,
    m: usize,
    n: usize,
    radius: usize,
) -> Result<InjectivityResult, RewriteError> {
    let x = p4_trace_witnesses(m, n);
    compare_with_traces(radius, |s| {
        let img = s.substitute(|g| x[g as usize].clone());
        rs.normal_form(&img)
    })
}

/// Commutation pattern of the trace witnesses under `rs`, as a report with
/// one line per ordered pair of distinct witnesses.
pub fn p4_commutation_report(rs: &CompleteSystem, m: usize, n: usize) -> Report {
    let x = p4_trace_witnesses(m, n);
    let g = TraceGraph::p4();
    let al = rs.alphabet();
    let mut report = Report::new(format!("p4-trace-commutations({m},{n})"));
    for i in 0..4u32 {
        for j in 0..4u32 {
            if i == j {
                continue;
            }
            let (u, v) = (&x[i as usize], &x[j as usize]);
            let uv = rs.normal_form(&u.concat(v));
            let vu = rs.normal_form(&v.concat(u));
            let adjacent = g.adjacent(i, j);
            let id = format!("u{}u{}", i + 1, j + 1);
            match (uv, vu) {
                (Ok(l), Ok(r)) => {
                    let equal = l == r;
                    let rel = if equal { "=" } else { "!=" };
                    report.check(
                        id,
                        equal == adjacent,
                        format!(
                            "{} {} {} (adjacent: {adjacent})",
                            al.format_compact(&l),
                            rel,
                            al.format_compact(&r)
                        ),
                    );
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.push(id, crate::report::Status::Unknown, format!("{e}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    #[test]
    fn witness_words() {
        let t = p4_trace_witnesses(2, 2);
        let got: Vec<_> = t.iter().map(|x| ab().format_compact(x)).collect();
        assert_eq!(got, ["abaaba", "aaaa", "baabaa", "baaaaaabaa"]);
        for (m, n) in [(2, 2), (2, 3), (3, 2), (4, 4)] {
            assert!(p4_trace_witnesses(m, n).iter().all(in_a_ba_plus));
        }
        let xy = Alphabet::new(["x", "y"]).unwrap();
        let g: Vec<_> = p4_group_witnesses(2, 2)
            .iter()
            .map(|x| xy.format(x))
            .collect();
        assert_eq!(g, ["y x x y^-1", "y y y y", "x x", "x y y y y x^-1"]);
    }

    #[test]
    fn group_witness_exponents_have_rank_two() {
        let sums: Vec<_> = p4_group_witnesses(3, 2)
            .iter()
            .map(|x| x.exponent_sums(2))
            .collect();
        assert_eq!(
            sums,
            [
                alloc::vec![3, 0],
                alloc::vec![0, 4],
                alloc::vec![3, 0],
                alloc::vec![0, 4]
            ]
        );
    }

    #[test]
    fn a_ba_membership() {
        assert!(in_a_ba_plus(&w("abaa")));
        assert!(!in_a_ba_plus(&w("ab")));
        assert!(!in_a_ba_plus(&w("bb")));
        assert!(!in_a_ba_plus(&Word::empty()));
        let got: Vec<_> = a_ba_words(3)
            .iter()
            .map(|x| ab().format_compact(x))
            .collect();
        assert_eq!(got, ["a", "aa", "ba", "aaa", "aba", "baa"]);
    }

    #[test]
    fn l_witness_examples() {
        let rs = fcrs_complete(2, 2).unwrap();
        let x = l_witness_search(&rs, 2, 2, &w("ba"), 16).unwrap();
        assert_eq!((x.p, x.q), (w("baabaaaabaa"), w("b")));
        let x = l_witness_search(&rs, 2, 2, &w("a"), 16).unwrap();
        assert_eq!(
            (x.p.clone(), x.q.clone()),
            (w("baabaaaabaab"), Word::empty())
        );
        assert!(x.verify(&rs).unwrap());
        assert!(l_witness_search(&rs, 2, 2, &w("ab"), 16).is_none());
        let x = l_witness_search(&rs, 2, 2, &w("aba"), 14).unwrap();
        assert!(x.p.len() <= 14);
    }

    #[test]
    fn split_witness_for_baa() {
        // no p of length at most 16 works directly; the split ba·a does
        let rs = fcrs_complete(2, 2).unwrap();
        let x = l_witness_search(&rs, 2, 2, &w("baa"), 16).unwrap();
        assert_eq!(x.p, w("baabbaabaaa").concat(&w("baabaaaabaa")));
        assert_eq!(rs.normal_form(&x.p.concat(&x.w)).unwrap(), w("a"));
    }

    #[test]
    fn l_witnesses_short_words() {
        let rs = fcrs_complete(2, 2).unwrap();
        for word in a_ba_words(3) {
            let x = l_witness_search(&rs, 2, 2, &word, 16).unwrap_or_else(|| panic!("{word:?}"));
            assert!(x.verify(&rs).unwrap());
        }
    }

    #[test]
    fn commutations_match_p4() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let rs = fcrs_complete(m, n).unwrap();
            let r = p4_commutation_report(&rs, m, n);
            assert_eq!(r.checks.len(), 12);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn ball_of_radius_two() {
        let rs = fcrs_complete(2, 2).unwrap();
        let r = bounded_injectivity(&rs, 2, 2, 2).unwrap();
        assert_eq!((r.sequences, r.trace_classes, r.values), (20, 17, 17));
        assert!(r.holds());
        assert_eq!(ball_sequences(4, 4).len(), 340);
    }

    #[test]
    fn violations_are_reported() {
        // a value that forgets the order entirely merges non-adjacent swaps
        let r = compare_with_traces::<_, ()>(2, |s| {
            let mut v = s.to_vec();
            v.sort();
            Ok(v)
        })
        .unwrap();
        assert!(!r.holds());
        assert_eq!(r.values, 14);
    }
}
