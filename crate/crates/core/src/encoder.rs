//! Encoding a one-relator group and a finite set of its elements into a
//! positive two-relator presentation, plus the related relator forms.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::presentation::{Kind, Presentation, Relation};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("the relator must be a nonempty positive word")]
    BadRelator,
    #[error("word {0} of the subset must be a nonempty positive word")]
    BadWord(usize),
    #[error("expected one inverse witness per word, got {words} words and {witnesses} witnesses")]
    WitnessCount { words: usize, witnesses: usize },
    #[error("no certificate that witness {index} inverts its word within length {bound}")]
    UncertifiedWitness { index: usize, bound: usize },
    #[error("a word uses a generator outside the alphabet")]
    ForeignSymbol,
}

/// Bounds for derivations in the monoid `<A | q = 1>`: intermediate words
/// have at most `max_len` letters and at most `max_nodes` words are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivationBound {
    pub max_len: usize,
    pub max_nodes: usize,
}

impl Default for DerivationBound {
    fn default() -> Self {
        DerivationBound {
            max_len: 16,
            max_nodes: 200_000,
        }
    }
}

/// Words equal to the identity in `<A | q = 1>`, found by inserting and
/// deleting `q`, with a parent link for each.
struct IdentityClass {
    q: Word,
    parent: BTreeMap<Word, Option<Word>>,
}

impl IdentityClass {
    fn explore(q: &Word, bound: DerivationBound) -> Self {
        let mut parent = BTreeMap::from([(Word::empty(), None)]);
        let mut queue = VecDeque::from([Word::empty()]);
        while let Some(w) = queue.pop_front() {
            let mut next = Vec::new();
            if w.len() + q.len() <= bound.max_len {
                for p in 0..=w.len() {
                    next.push(w.splice(p, 0, q));
                }
            }
            let mut from = 0;
            while let Some(p) = w.find(q, from) {
                next.push(w.splice(p, q.len(), &Word::empty()));
                from = p + 1;
            }
            for v in next {
                if parent.len() >= bound.max_nodes {
                    break;
                }
                if !parent.contains_key(&v) {
                    parent.insert(v.clone(), Some(w.clone()));
                    queue.push_back(v);
                }
            }
        }
        IdentityClass {
            q: q.clone(),
            parent,
        }
    }

    fn contains(&self, w: &Word) -> bool {
        self.parent.contains_key(w)
    }

    /// Derivation from `w` down to the empty word.
    fn derivation(&self, w: &Word) -> Option<Vec<Word>> {
        let mut out = alloc::vec![w.clone()];
        let mut cur = self.parent.get(w)?.clone();
        while let Some(p) = cur {
            cur = self.parent.get(&p).expect("parents are recorded").clone();
            out.push(p);
        }
        debug_assert!(is_derivation(&self.q, &out));
        Some(out)
    }
}

/// Each step inserts or deletes one occurrence of `q`, and the last word is
/// empty.
pub fn is_derivation(q: &Word, steps: &[Word]) -> bool {
    let one_step = |u: &Word, v: &Word| {
        let (long, short) = if u.len() > v.len() { (u, v) } else { (v, u) };
        long.len() == short.len() + q.len()
            && (0..=short.len()).any(|p| {
                long.splice(p, q.len(), &Word::empty()) == *short
                    && long.slice(p, p + q.len()) == *q
            })
    };
    !steps.is_empty()
        && steps.last().is_some_and(|w| w.is_empty())
        && steps.windows(2).all(|w| one_step(&w[0], &w[1]))
}

/// A positive `w̄` with `w·w̄ = w̄·w = 1`, with both derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseWitness {
    pub word: Word,
    pub witness: Word,
    /// From `w·w̄` to the empty word.
    pub right: Vec<Word>,
    /// From `w̄·w` to the empty word.
    pub left: Vec<Word>,
}

impl InverseWitness {
    pub fn verify(&self, q: &Word) -> bool {
        !self.witness.is_empty()
            && self.witness.is_positive()
            && self.right.first() == Some(&self.word.concat(&self.witness))
            && self.left.first() == Some(&self.witness.concat(&self.word))
            && is_derivation(q, &self.right)
            && is_derivation(q, &self.left)
    }
}

/// The shortlex-least nonempty positive `w̄` inverting `w` in `<A | q = 1>`
/// whose certificates fit in `bound`.
pub fn find_inverse_witness(q: &Word, w: &Word, bound: DerivationBound) -> Option<InverseWitness> {
    let class = IdentityClass::explore(q, bound);
    inverse_in(&class, w)
}

fn inverse_in(class: &IdentityClass, w: &Word) -> Option<InverseWitness> {
    let mut candidates: Vec<Word> = class
        .parent
        .keys()
        .filter(|v| v.len() > w.len() && v.starts_with(w))
        .map(|v| v.slice(w.len(), v.len()))
        .filter(|wbar| class.contains(&wbar.concat(w)))
        .collect();
    candidates.sort();
    let witness = candidates.into_iter().next()?;
    Some(InverseWitness {
        word: w.clone(),
        right: class.derivation(&w.concat(&witness))?,
        left: class.derivation(&witness.concat(w))?,
        witness,
    })
}

/// The data of the construction: a group `<A | q = 1>` with `q` positive,
/// positive words `w_i`, and positive inverses `w̄_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingInput {
    pub alphabet: Alphabet,
    pub q: Word,
    pub words: Vec<Word>,
    pub inverses: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingOutput {
    /// `B ∪ {x, t}`, with `B` the input generators other than `a`.
    pub alphabet: Alphabet,
    pub r: Word,
    pub s: Word,
    pub z: Vec<Word>,
    pub zbar: Vec<Word>,
    pub h: Presentation,
    pub m: Presentation,
    pub certificates: Vec<InverseWitness>,
    /// Input index of `a`, the first letter of `q`.
    pub a: u32,
    /// New index of each input generator other than `a`.
    index_map: Vec<Option<u32>>,
    pub x: u32,
    pub t: u32,
}

impl EncodingOutput {
    /// Replaces each `tx` by `a` and maps the other letters back. `None` if
    /// a lone `t` or `x` remains.
    pub fn back_substitute(&self, w: &Word) -> Option<Word> {
        let mut back: BTreeMap<u32, u32> = BTreeMap::new();
        for (old, new) in self.index_map.iter().enumerate() {
            if let Some(n) = new {
                back.insert(*n, old as u32);
            }
        }
        let mut out = Word::empty();
        let mut i = 0;
        while i < w.len() {
            let s = w[i];
            if s.inv {
                return None;
            }
            if s.gen == self.t {
                if i + 1 < w.len() && w[i + 1] == Symbol::pos(self.x) {
                    out.push(Symbol::pos(self.a));
                    i += 2;
                    continue;
                }
                return None;
            }
            out.push(Symbol::pos(*back.get(&s.gen)?));
            i += 1;
        }
        Some(out)
    }

    /// A readable block per certificate: the word, its inverse and both derivations.
    pub fn certificate_log(&self, input: &Alphabet) -> String {
        let mut out = String::new();
        for (i, c) in self.certificates.iter().enumerate() {
            let fmt_chain = |steps: &[Word]| {
                steps
                    .iter()
                    .map(|w| {
                        if w.is_empty() {
                            String::from("1")
                        } else {
                            input.format(w)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" => ")
            };
            out.push_str(&format!(
                "w{i} = {}; inverse {}\n  right: {}\n  left: {}\n",
                input.format(&c.word),
                input.format(&c.witness),
                fmt_chain(&c.right),
                fmt_chain(&c.left)
            ));
        }
        out
    }
}

/// Builds `H_{G,X}` and `M_{G,X}`: substitute `a ↦ tx` into `q`, `w_i`, `w̄_i`
/// to get `r`, `z_i`, `z̄_i`; `s` is `r` without its first letter; the
/// relators are `r` and `t z_1 s t z̄_1 s ... t z_k s t z̄_k s`.
///
/// Each inverse is certified by a derivation within `bound` first.
pub fn construction51(
    input: &EncodingInput,
    bound: DerivationBound,
) -> Result<EncodingOutput, EncodeError> {
    let q = &input.q;
    if q.is_empty() || !q.is_positive() {
        return Err(EncodeError::BadRelator);
    }
    let all = [q].into_iter().chain(&input.words).chain(&input.inverses);
    if all.clone().any(|w| !input.alphabet.contains_word(w)) {
        return Err(EncodeError::ForeignSymbol);
    }
    if input.words.len() != input.inverses.len() {
        return Err(EncodeError::WitnessCount {
            words: input.words.len(),
            witnesses: input.inverses.len(),
        });
    }
    for (i, w) in input.words.iter().chain(&input.inverses).enumerate() {
        if w.is_empty() || !w.is_positive() {
            return Err(EncodeError::BadWord(i % input.words.len().max(1)));
        }
    }

    let class = IdentityClass::explore(q, bound);
    let mut certificates = Vec::new();
    for (index, (w, wbar)) in input.words.iter().zip(&input.inverses).enumerate() {
        let right = class.derivation(&w.concat(wbar));
        let left = class.derivation(&wbar.concat(w));
        let (Some(right), Some(left)) = (right, left) else {
            return Err(EncodeError::UncertifiedWitness {
                index,
                bound: bound.max_len,
            });
        };
        certificates.push(InverseWitness {
            word: w.clone(),
            witness: wbar.clone(),
            right,
            left,
        });
    }

    let a = q[0].gen;
    let mut alphabet = Alphabet::default();
    let mut index_map = alloc::vec![None; input.alphabet.len()];
    for g in input.alphabet.letters() {
        if g.gen != a {
            let idx = alphabet
                .push(String::from(input.alphabet.name(g.gen)))
                .expect("names from a valid alphabet");
            index_map[g.gen as usize] = Some(idx);
        }
    }
    let x = alphabet.push(alphabet.fresh_name("x")).expect("fresh name");
    let t = alphabet.push(alphabet.fresh_name("t")).expect("fresh name");
    let tx = Word::from_gens(&[t, x]);
    let subst = |w: &Word| {
        w.substitute(|g| {
            if g == a {
                tx.clone()
            } else {
                Word::letter(index_map[g as usize].expect("every other generator is mapped"))
            }
        })
    };

    let r = subst(q);
    let s = r.slice(1, r.len());
    let z: Vec<Word> = input.words.iter().map(&subst).collect();
    let zbar: Vec<Word> = input.inverses.iter().map(&subst).collect();
    let tw = Word::letter(t);
    let mut second = Word::empty();
    for (zi, zbi) in z.iter().zip(&zbar) {
        for part in [&tw, zi, &s, &tw, zbi, &s] {
            second.extend_from(part);
        }
    }
    let mut relations = alloc::vec![Relation::relator(r.clone())];
    if !second.is_empty() {
        relations.push(Relation::relator(second));
    }
    let h = Presentation::new(Kind::Group, alphabet.clone(), relations)
        .expect("relators over the new alphabet");
    let m = h.with_kind(Kind::Inverse).expect("same data");
    Ok(EncodingOutput {
        alphabet,
        r,
        s,
        z,
        zbar,
        h,
        m,
        certificates,
        a,
        index_map,
        x,
        t,
    })
}

/// `v u v^-1`, freely reduced.
pub fn quasi_positive_relator(u: &Word, v: &Word) -> Word {
    v.concat(u).concat(&v.inverse()).free_reduce()
}

/// `<A, t | u t = 1, v t = 1>` as an inverse presentation, with `t` a fresh
/// generator name.
pub fn two_relator_inverse_form(alphabet: &Alphabet, u: &Word, v: &Word) -> Presentation {
    let mut al = alphabet.clone();
    let t = al.push(al.fresh_name("t")).expect("fresh name");
    let tw = Word::letter(t);
    let rels = alloc::vec![
        Relation::relator(u.concat(&tw)),
        Relation::relator(v.concat(&tw)),
    ];
    Presentation::new(Kind::Inverse, al, rels).expect("words over the extended alphabet")
}

/// All nonempty prefixes of the given relators.
pub fn prefix_generators(relators: &[Word]) -> BTreeSet<Word> {
    relators
        .iter()
        .flat_map(|r| (1..=r.len()).map(move |k| r.slice(0, k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::abelianization;
    use proptest::prelude::*;

    fn al(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn toy() -> EncodingInput {
        let a = al(&["a"]);
        EncodingInput {
            q: a.parse_word("a a").unwrap(),
            words: alloc::vec![a.parse_word("a").unwrap()],
            inverses: alloc::vec![a.parse_word("a").unwrap()],
            alphabet: a,
        }
    }

    #[test]
    fn toy_construction() {
        let input = toy();
        let out = construction51(&input, DerivationBound::default()).unwrap();
        let f = |w: &Word| out.alphabet.format_compact(w);
        assert_eq!(out.alphabet.names(), ["x", "t"]);
        assert_eq!(f(&out.r), "txtx");
        assert_eq!(f(&out.s), "xtx");
        assert_eq!(
            (f(&out.z[0]), f(&out.zbar[0])),
            (String::from("tx"), String::from("tx"))
        );
        assert_eq!(out.h.relations.len(), 2);
        assert_eq!(f(&out.h.relations[1].lhs), "ttxxtxttxxtx");
        assert_eq!(out.m.kind, Kind::Inverse);
        assert_eq!(out.m.relations, out.h.relations);
        assert_eq!(out.back_substitute(&out.r), Some(input.q.clone()));
        assert_eq!(out.back_substitute(&out.s), None);
        assert!(out.certificates.iter().all(|c| c.verify(&input.q)));
    }

    #[test]
    fn abelianization_gains_a_free_factor() {
        let input = toy();
        let g = Presentation::new(
            Kind::Group,
            input.alphabet.clone(),
            alloc::vec![Relation::relator(input.q.clone())],
        )
        .unwrap();
        let out = construction51(&input, DerivationBound::default()).unwrap();
        let (ag, ah) = (abelianization(&g), abelianization(&out.h));
        assert_eq!(ah.torsion, ag.torsion);
        assert_eq!(ah.free_rank, ag.free_rank + 1);
        assert_eq!(alloc::string::ToString::to_string(&ah), "Z/2 + Z");
    }

    #[test]
    fn larger_input_round_trips() {
        // <a, b | a b a = 1> with b inverted by a a
        let ab = al(&["a", "b"]);
        let input = EncodingInput {
            q: ab.parse_word("a b a").unwrap(),
            words: alloc::vec![ab.parse_word("b").unwrap(), ab.parse_word("a").unwrap()],
            inverses: alloc::vec![ab.parse_word("a a").unwrap(), ab.parse_word("b a").unwrap()],
            alphabet: ab.clone(),
        };
        let out = construction51(&input, DerivationBound::default()).unwrap();
        assert_eq!(out.alphabet.names(), ["b", "x", "t"]);
        assert!(out.r.starts_with(&Word::from_gens(&[out.t, out.x])));
        assert_eq!(out.s[0], Symbol::pos(out.x));
        for (orig, enc) in input
            .words
            .iter()
            .zip(&out.z)
            .chain(input.inverses.iter().zip(&out.zbar))
        {
            assert_eq!(out.back_substitute(enc).as_ref(), Some(orig));
        }
        let g = Presentation::new(
            Kind::Group,
            ab,
            alloc::vec![Relation::relator(input.q.clone())],
        )
        .unwrap();
        let (ag, ah) = (abelianization(&g), abelianization(&out.h));
        assert_eq!((ah.torsion, ah.free_rank), (ag.torsion, ag.free_rank + 1));
    }

    #[test]
    fn construction_errors() {
        let mut input = toy();
        input.inverses[0] = Word::from_gens(&[0, 0]);
        assert_eq!(
            construction51(&input, DerivationBound::default()),
            Err(EncodeError::UncertifiedWitness {
                index: 0,
                bound: 16
            })
        );
        input.inverses.clear();
        assert!(matches!(
            construction51(&input, DerivationBound::default()),
            Err(EncodeError::WitnessCount { .. })
        ));
        input.q = Word::empty();
        assert_eq!(
            construction51(&input, DerivationBound::default()),
            Err(EncodeError::BadRelator)
        );
    }

    #[test]
    fn inverse_witness_examples() {
        let bound = DerivationBound::default();
        let a = Word::letter(0);
        let aa = a.pow(2);
        assert_eq!(find_inverse_witness(&aa, &a, bound).unwrap().witness, a);
        let x = find_inverse_witness(&aa, &aa, bound).unwrap();
        assert_eq!(x.witness, aa);
        assert!(x.verify(&aa));

        let ab = al(&["a", "b"]);
        let q = ab.parse_word("a b a").unwrap();
        let b = ab.parse_word("b").unwrap();
        let x = find_inverse_witness(&q, &b, bound).unwrap();
        assert_eq!(x.witness, ab.parse_word("a a").unwrap());
        assert!(x.verify(&q));
        // b has no inverse in <a, b | aa = 1>
        assert!(find_inverse_witness(
            &aa,
            &b,
            DerivationBound {
                max_len: 10,
                max_nodes: 10_000
            }
        )
        .is_none());
    }

    #[test]
    fn inverse_forms() {
        let ab = al(&["a", "b"]);
        let w = |s: &str| ab.parse_word(s).unwrap();
        let p = two_relator_inverse_form(&ab, &w("a b"), &w("b a"));
        assert_eq!(
            alloc::string::ToString::to_string(&p),
            "inverse<a, b, t | abt = 1, bat = 1>"
        );
        let p = two_relator_inverse_form(&ab, &w("a"), &w("a"));
        assert_eq!(p.relations[0], p.relations[1]);
        assert!(p.is_positive() && p.is_special());
        let at = al(&["a", "t"]);
        let p = two_relator_inverse_form(&at, &Word::letter(0), &Word::letter(1));
        assert_eq!(p.alphabet.names(), ["a", "t", "t'"]);

        assert_eq!(quasi_positive_relator(&w("a b"), &w("b")), w("b a"));
        assert_eq!(quasi_positive_relator(&w("a"), &w("a")), w("a"));
    }

    #[test]
    fn prefixes() {
        let ab = al(&["a", "b"]);
        let got = prefix_generators(&[ab.parse_word("a b").unwrap()]);
        assert_eq!(
            got,
            BTreeSet::from([Word::letter(0), Word::from_gens(&[0, 1])])
        );
        assert_eq!(prefix_generators(&[Word::letter(0)]).len(), 1);

        let out = construction51(&toy(), DerivationBound::default()).unwrap();
        let rels = [out.r.clone(), out.h.relations[1].lhs.clone()];
        let got = prefix_generators(&rels);
        // only t is shared between the two relators
        assert_eq!(got.len(), 4 + 12 - 1);
    }

    #[test]
    fn toy_quasi_positive_cancellation() {
        let out = construction51(&toy(), DerivationBound::default()).unwrap();
        let (u, v) = (&out.r, &out.h.relations[1].lhs);
        let got = quasi_positive_relator(u, v);
        // oracle: a separate stack pass over v·u·v^-1 counting cancellations
        let mut stack: Vec<Symbol> = Vec::new();
        let mut cancelled = 0;
        for &x in v.concat(u).concat(&v.inverse()).iter() {
            if stack.last() == Some(&x.inverse()) {
                stack.pop();
                cancelled += 1;
            } else {
                stack.push(x);
            }
        }
        assert_eq!(cancelled, 3);
        assert_eq!(got.len(), v.len() + u.len() + v.len() - 2 * cancelled);
        assert_eq!(got.to_vec(), stack);
        assert!(got.is_cyclic_conjugate(u));
    }

    fn arb_pos() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u32..3, 1..8).prop_map(|g| Word::from_gens(&g))
    }

    proptest! {
        #[test]
        fn quasi_positive_is_a_reduced_conjugate(u in arb_pos(), v in arb_pos()) {
            let r = quasi_positive_relator(&u, &v);
            prop_assert!(r.is_freely_reduced());
            prop_assert!(r.is_cyclic_conjugate(&u));
        }

        #[test]
        fn prefix_count_bound(rs in prop::collection::vec(arb_pos(), 1..4)) {
            let got = prefix_generators(&rs);
            prop_assert!(got.len() <= rs.iter().map(|r| r.len()).sum::<usize>());
            prop_assert!(rs.iter().all(|r| got.contains(r)));
        }
    }
}
