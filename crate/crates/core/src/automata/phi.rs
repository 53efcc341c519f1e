//! The pair-substitution transform on regular languages, the gadget
//! language Ω, and the Q̄ construction built on top of it.
//!
//! For a table `b` indexed by ordered pairs of letters,
//! `φ(a_1 … a_k) = b(a_{k-1}, a_k) … b(a_1, a_2)`. On automata this is
//! computed as a chain of regularity-preserving steps: double every letter,
//! drop the first and last letter, read the result two letters at a time,
//! reverse, and substitute table entries.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use super::{Fsa, Side, SymbolMap};
use crate::word::{Symbol, Word};

/// A word for each ordered pair of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LetterWordTable {
    entries: BTreeMap<(Symbol, Symbol), Word>,
}

impl LetterWordTable {
    pub fn new() -> Self {
        LetterWordTable::default()
    }

    pub fn insert(&mut self, i: Symbol, j: Symbol, w: Word) {
        self.entries.insert((i, j), w);
    }

    pub fn get(&self, i: Symbol, j: Symbol) -> Option<&Word> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> &BTreeMap<(Symbol, Symbol), Word> {
        &self.entries
    }

    /// The first pair of `letters` without an entry, if any.
    pub fn missing_pair(&self, letters: &[Symbol]) -> Option<(Symbol, Symbol)> {
        letters
            .iter()
            .flat_map(|&i| letters.iter().map(move |&j| (i, j)))
            .find(|p| !self.entries.contains_key(p))
    }
}

impl FromIterator<((Symbol, Symbol), Word)> for LetterWordTable {
    fn from_iter<I: IntoIterator<Item = ((Symbol, Symbol), Word)>>(iter: I) -> Self {
        LetterWordTable {
            entries: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("the language contains a word of length below 2: {0:?}")]
    ShortWord(Word),
    #[error("no table entry for the pair ({0:?}, {1:?})")]
    MissingEntry(Symbol, Symbol),
    #[error("the language contains the empty word")]
    EmptyWord,
}

/// The transform applied to one word; `None` for words shorter than 2 or
/// with a missing table entry.
pub fn phi_word(w: &Word, table: &LetterWordTable) -> Option<Word> {
    if w.len() < 2 {
        return None;
    }
    let mut out = Word::empty();
    for k in (0..w.len() - 1).rev() {
        out.extend_from(table.get(w[k], w[k + 1])?);
    }
    Some(out)
}

/// `φ(L(f))` as an automaton.
pub fn phi_transform(f: &Fsa, table: &LetterWordTable) -> Result<Fsa, PhiError> {
    if let Some(short) = f.enumerate(1).into_iter().next() {
        return Err(PhiError::ShortWord(short));
    }
    let letters: Vec<Symbol> = f.alphabet().iter().copied().collect();
    if let Some((i, j)) = table.missing_pair(&letters) {
        return Err(PhiError::MissingEntry(i, j));
    }

    // a -> aa
    let sigma: SymbolMap = letters
        .iter()
        .map(|&a| (a, Word::from_symbols(alloc::vec![a, a])))
        .collect();
    let doubled = f.hom_image(&sigma);

    // drop one letter at each end
    let trim_left = letters
        .iter()
        .map(|&a| doubled.letter_quotient(Side::Left, a))
        .reduce(|x, y| x.union(&y))
        .expect("nonempty alphabet");
    let trimmed = letters
        .iter()
        .map(|&a| trim_left.letter_quotient(Side::Right, a))
        .reduce(|x, y| x.union(&y))
        .expect("nonempty alphabet");

    // pair letters c_ij -> a_i a_j, then read the trimmed words in pairs
    let base = letters.iter().map(|s| s.gen).max().unwrap_or(0) + 1;
    let mut theta = SymbolMap::new();
    let mut gamma = SymbolMap::new();
    let mut pairs = Vec::new();
    for (x, &ai) in letters.iter().enumerate() {
        for (y, &aj) in letters.iter().enumerate() {
            let c = Symbol::pos(base + (x * letters.len() + y) as u32);
            theta.insert(c, Word::from_symbols(alloc::vec![ai, aj]));
            gamma.insert(c, table.get(ai, aj).expect("checked above").clone());
            pairs.push(c);
        }
    }
    let paired = trimmed.inverse_hom_image(&theta, &pairs);
    Ok(paired.reverse().hom_image(&gamma))
}

/// `a (d (cb)^+ a)^* d c^+` over `a, b, c, d` = generators 0..4.
pub fn omega_language() -> Fsa {
    let [a, b, c, d] = [0, 1, 2, 3].map(|g| Fsa::literal(&Word::letter(g)));
    let cb = c.concat(&b);
    let inner = d.concat(&cb.plus()).concat(&a);
    a.concat(&inner.star()).concat(&d).concat(&c.plus())
}

/// `Q̄ = φ(Q · u2)`, for a language `Q` without the empty word.
pub fn build_qbar(q: &Fsa, witnesses: &LetterWordTable, u2: &Word) -> Result<Fsa, PhiError> {
    if q.accepts(&Word::empty()) {
        return Err(PhiError::EmptyWord);
    }
    phi_transform(&q.concat(&Fsa::literal(u2)), witnesses)
}
