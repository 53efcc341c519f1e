//! Monoid, group and inverse-monoid presentations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Word, WordError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Monoid,
    Group,
    Inverse,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::Group => "group",
            Kind::Inverse => "inverse",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "monoid" => Some(Kind::Monoid),
            "group" => Some(Kind::Group),
            "inverse" => Some(Kind::Inverse),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    /// `w = 1`.
    pub fn relator(w: Word) -> Self {
        Relation {
            lhs: w,
            rhs: Word::empty(),
        }
    }

    /// `lhs · rhs^-1`, freely reduced.
    pub fn as_relator(&self) -> Word {
        self.lhs.concat(&self.rhs.inverse()).free_reduce()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relation {index} uses a generator outside the alphabet")]
    ForeignSymbol { index: usize },
    #[error("relation {index} of a monoid presentation contains an inverse symbol")]
    NegativeInMonoid { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub kind: Kind,
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(
        kind: Kind,
        alphabet: Alphabet,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        for (index, r) in relations.iter().enumerate() {
            if !alphabet.contains_word(&r.lhs) || !alphabet.contains_word(&r.rhs) {
                return Err(PresentationError::ForeignSymbol { index });
            }
            if kind == Kind::Monoid && !(r.lhs.is_positive() && r.rhs.is_positive()) {
                return Err(PresentationError::NegativeInMonoid { index });
            }
        }
        Ok(Presentation {
            kind,
            alphabet,
            relations,
        })
    }

    /// Builds from generator names and relations given as token strings.
    pub fn from_strs(
        kind: Kind,
        gens: &[&str],
        relations: &[(&str, &str)],
    ) -> Result<Self, PresentationError> {
        let alphabet = Alphabet::new(gens.iter().copied())?;
        let rels = relations
            .iter()
            .map(|(l, r)| {
                Ok(Relation::new(
                    alphabet.parse_word(l)?,
                    alphabet.parse_word(r)?,
                ))
            })
            .collect::<Result<Vec<_>, WordError>>()?;
        Presentation::new(kind, alphabet, rels)
    }

    pub fn num_gens(&self) -> usize {
        self.alphabet.len()
    }

    /// Every relation has the form `w = 1`.
    pub fn is_special(&self) -> bool {
        self.relations.iter().all(|r| r.rhs.is_empty())
    }

    pub fn is_positive(&self) -> bool {
        self.relations
            .iter()
            .all(|r| r.lhs.is_positive() && r.rhs.is_positive())
    }

    /// Relators `lhs · rhs^-1` for every relation.
    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(Relation::as_relator).collect()
    }

    /// Same data with a different kind.
    pub fn with_kind(&self, kind: Kind) -> Result<Self, PresentationError> {
        Presentation::new(kind, self.alphabet.clone(), self.relations.clone())
    }

    /// Renames generators positionally; relations are unchanged as index
    /// sequences.
    pub fn renamed<I, S>(&self, names: I) -> Result<Self, PresentationError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alphabet = Alphabet::new(names)?;
        assert_eq!(alphabet.len(), self.alphabet.len(), "rename arity");
        Presentation::new(self.kind, alphabet, self.relations.clone())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<", self.kind)?;
        for (i, n) in self.alphabet.names().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(n)?;
        }
        f.write_str(" | ")?;
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{} = {}",
                self.alphabet.format_compact(&r.lhs),
                self.alphabet.format_compact(&r.rhs)
            )?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_relations_must_be_positive() {
        let err = Presentation::from_strs(Kind::Monoid, &["a"], &[("a^-1", "a")]).unwrap_err();
        assert_eq!(err, PresentationError::NegativeInMonoid { index: 0 });
        assert!(Presentation::from_strs(Kind::Group, &["a"], &[("a^-1", "a")]).is_ok());
    }

    #[test]
    fn special_and_positive() {
        let p = Presentation::from_strs(Kind::Monoid, &["a", "b"], &[("a b", "1")]).unwrap();
        assert!(p.is_special() && p.is_positive());
        let q = Presentation::from_strs(Kind::Group, &["x", "y"], &[("x y x y^-1", "1")]).unwrap();
        assert!(q.is_special() && !q.is_positive());
    }

    #[test]
    fn relator_of_relation() {
        let p = Presentation::from_strs(Kind::Group, &["x", "y"], &[("x y", "y x^-1")]).unwrap();
        let al = &p.alphabet;
        assert_eq!(al.format(&p.relators()[0]), "x y x y^-1");
    }
}
