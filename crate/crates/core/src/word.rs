//! Signed symbols, words and named alphabets.
//!
//! A [`Word`] is a plain sequence of [`Symbol`]s; it does not carry names.
//! Names live in an [`Alphabet`], which is used only for parsing and display.
//! Words are ordered shortlex, with letters ordered by generator index and
//! `g < g^-1 < h` whenever `g` precedes `h` in the alphabet.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use thiserror::Error;

/// A generator or its formal inverse, identified by the generator's index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub gen: u32,
    pub inv: bool,
}

impl Symbol {
    pub const fn pos(gen: u32) -> Self {
        Symbol { gen, inv: false }
    }

    pub const fn neg(gen: u32) -> Self {
        Symbol { gen, inv: true }
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        Symbol {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    #[inline]
    pub const fn is_positive(self) -> bool {
        !self.inv
    }

    /// +1 or -1.
    pub const fn sign(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// A finite sequence of symbols; the empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Positive word from generator indices.
    pub fn from_gens(gens: &[u32]) -> Self {
        Word(gens.iter().map(|&g| Symbol::pos(g)).collect())
    }

    pub fn letter(gen: u32) -> Self {
        Word(alloc::vec![Symbol::pos(gen)])
    }

    pub fn symbol(s: Symbol) -> Self {
        Word(alloc::vec![s])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|s| s.is_positive())
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    /// `(a_1 ... a_k)^-1 = a_k^-1 ... a_1^-1`.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Cancels adjacent `s s^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.len());
        for &s in &self.0 {
            match out.last() {
                Some(&top) if top == s.inverse() => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Free reduction followed by removal of cancelling first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let s = &w.0;
        let (mut i, mut j) = (0, s.len());
        while j - i >= 2 && s[i] == s[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        Word(s[i..j].to_vec())
    }

    /// All nonempty prefixes, shortest first.
    pub fn prefixes(&self) -> Vec<Word> {
        (1..=self.len())
            .map(|k| Word(self.0[..k].to_vec()))
            .collect()
    }

    pub fn starts_with(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn ends_with(&self, p: &Word) -> bool {
        self.0.ends_with(&p.0)
    }

    /// Leftmost occurrence of `pat` at or after `from`.
    pub fn find(&self, pat: &Word, from: usize) -> Option<usize> {
        if pat.is_empty() {
            return Some(from.min(self.len()));
        }
        if pat.len() > self.len() {
            return None;
        }
        (from..=self.len() - pat.len()).find(|&i| self.0[i..i + pat.len()] == pat.0[..])
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat, 0).is_some()
    }

    /// Replaces `len` symbols at `pos` with `rhs`.
    pub fn splice(&self, pos: usize, len: usize, rhs: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + rhs.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&rhs.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Left-to-right, non-overlapping replacement of every occurrence of `pat`.
    pub fn replace_all(&self, pat: &Word, rep: &Word) -> Word {
        assert!(!pat.is_empty(), "empty pattern");
        let mut out = Vec::with_capacity(self.len());
        let mut i = 0;
        while i < self.len() {
            if self.0[i..].starts_with(&pat.0) {
                out.extend_from_slice(&rep.0);
                i += pat.len();
            } else {
                out.push(self.0[i]);
                i += 1;
            }
        }
        Word(out)
    }

    /// Applies a letter substitution: each positive generator `g` becomes
    /// `image(g)`, and `g^-1` becomes `image(g)^-1`.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(u32) -> Word,
    {
        let mut out = Word::empty();
        for &s in &self.0 {
            let w = image(s.gen);
            if s.inv {
                out.extend_from(&w.inverse());
            } else {
                out.extend_from(&w);
            }
        }
        out
    }

    /// Exponent sum of each generator `0..num_gens`.
    pub fn exponent_sums(&self, num_gens: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; num_gens];
        for s in &self.0 {
            v[s.gen as usize] += s.sign();
        }
        v
    }

    /// True iff the two words, cyclically reduced, are cyclic permutations of
    /// each other.
    pub fn is_cyclic_conjugate(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let doubled = a.concat(&a);
        doubled.contains(&b)
    }

    /// Largest generator index used, plus one.
    pub fn gen_bound(&self) -> u32 {
        self.0.iter().map(|s| s.gen + 1).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", s.gen)?;
            if s.inv {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid generator name {0:?}")]
    InvalidName(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// An ordered list of generator names. Position in the list is the
/// generator index and the default shortlex precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != "1" && !name.contains('^') && !name.chars().any(char::is_whitespace)
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet::default();
        for n in names {
            out.push(n.into())?;
        }
        Ok(out)
    }

    /// Appends a generator and returns its index.
    pub fn push(&mut self, name: String) -> Result<u32, WordError> {
        if !valid_name(&name) {
            return Err(WordError::InvalidName(name));
        }
        if self.index_of(&name).is_some() {
            return Err(WordError::DuplicateName(name));
        }
        self.names.push(name);
        Ok(self.names.len() as u32 - 1)
    }

    /// A name not yet used, derived from `base` by appending primes.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = String::from(base);
        while self.index_of(&name).is_some() {
            name.push('\'');
        }
        name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: u32) -> &str {
        &self.names[gen as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn gen(&self, name: &str) -> Result<u32, WordError> {
        self.index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))
    }

    /// The positive symbols of this alphabet in precedence order.
    pub fn letters(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u32).map(Symbol::pos)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.iter().all(|s| (s.gen as usize) < self.names.len())
    }

    fn parse_token(&self, tok: &str, out: &mut Vec<Symbol>) -> Result<(), WordError> {
        if tok == "1" {
            return Ok(());
        }
        let (base, inv) = match tok.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        if let Some(g) = self.index_of(base) {
            out.push(Symbol { gen: g, inv });
            return Ok(());
        }
        // Compact spelling such as `baab` or `ab^-1a`, only when every
        // generator name is a single character.
        if self.names.iter().all(|n| n.chars().count() == 1) && !tok.is_empty() {
            let chars: Vec<char> = tok.chars().collect();
            let mut i = 0;
            let mut tmp = Vec::new();
            while i < chars.len() {
                let mut buf = [0u8; 4];
                let c = chars[i].encode_utf8(&mut buf);
                let g = self
                    .index_of(c)
                    .ok_or_else(|| WordError::UnknownGenerator(tok.to_string()))?;
                let inv = chars[i + 1..].starts_with(&['^', '-', '1']);
                tmp.push(Symbol { gen: g, inv });
                i += if inv { 4 } else { 1 };
            }
            out.extend(tmp);
            return Ok(());
        }
        Err(WordError::UnknownGenerator(tok.to_string()))
    }

    /// Parses whitespace-separated tokens: `name`, `name^-1`, or `1` for ε.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            self.parse_token(tok, &mut out)?;
        }
        Ok(Word(out))
    }

    /// Formats a word as whitespace-separated tokens; ε is written `1`.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        for (i, sym) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(self.name(sym.gen));
            if sym.inv {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Formats without separators when all names are single characters.
    pub fn format_compact(&self, w: &Word) -> String {
        if self.names.iter().any(|n| n.chars().count() != 1) {
            return self.format(w);
        }
        if w.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        for sym in w.iter() {
            s.push_str(self.name(sym.gen));
            if sym.inv {
                s.push_str("^-1");
            }
        }
        s
    }

    /// Maps a word over `other` into this alphabet by generator name.
    pub fn translate(&self, other: &Alphabet, w: &Word) -> Result<Word, WordError> {
        w.iter()
            .map(|s| {
                self.gen(other.name(s.gen))
                    .map(|g| Symbol { gen: g, inv: s.inv })
            })
            .collect()
    }

    /// Union of two alphabets, `self` first.
    pub fn merge(&self, other: &Alphabet) -> Alphabet {
        let mut out = self.clone();
        for n in &other.names {
            if out.index_of(n).is_none() {
                out.names.push(n.clone());
            }
        }
        out
    }
}
