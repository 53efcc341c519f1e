//! Maps between presentations and certificates about them.

mod positive;
mod schreier;
mod smith;
mod units;

pub use positive::positivize_gmn;
pub use schreier::{reidemeister_schreier, SchreierResult};
pub use smith::{abelianization, relation_matrix, smith_diagonal, AbelianInvariants, IntMatrix};
pub use units::{factor_over_pieces, verify_units_decomposition};

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::presentation::{Kind, Presentation};
use crate::rewrite::CompleteSystem;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("image of generator {gen} uses a symbol outside the target alphabet")]
    ForeignImage { gen: usize },
    #[error("image of generator {gen} is not positive but the target is a monoid")]
    NegativeImage { gen: usize },
    #[error("unknown generator {0:?} in map")]
    UnknownGenerator(String),
    #[error("method does not apply: {0}")]
    MethodMismatch(String),
    #[error("maps do not compose: alphabets differ")]
    NotComposable,
    #[error("expected one residue per generator")]
    ResidueArity,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("relator {relator} has nonzero residue, so the map is not a homomorphism")]
    NonzeroResidue { relator: usize },
    #[error("the residues do not generate the cyclic group")]
    NotOnto,
    #[error("expected a special presentation with a single relator")]
    NotSpecialOneRelator,
    #[error("the pieces do not factor the relator")]
    PiecesDoNotFactor,
    #[error("the pieces are not overlap-free")]
    PiecesOverlap,
    #[error("pieces must be nonempty positive words")]
    BadPiece,
}

/// A map on generators, extended to words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: Presentation,
    pub target: Presentation,
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: Vec<Word>,
    ) -> Result<Self, TransformError> {
        if images.len() != source.num_gens() {
            return Err(TransformError::ImageCount {
                expected: source.num_gens(),
                got: images.len(),
            });
        }
        for (gen, img) in images.iter().enumerate() {
            if !target.alphabet.contains_word(img) {
                return Err(TransformError::ForeignImage { gen });
            }
            if target.kind == Kind::Monoid && !img.is_positive() {
                return Err(TransformError::NegativeImage { gen });
            }
        }
        Ok(Homomorphism {
            source,
            target,
            images,
        })
    }

    /// Builds from `(generator name, image text)` pairs.
    pub fn from_strs(
        source: Presentation,
        target: Presentation,
        map: &[(&str, &str)],
    ) -> Result<Self, TransformError> {
        let mut images = alloc::vec![None; source.num_gens()];
        for (g, img) in map {
            let i = source
                .alphabet
                .index_of(g)
                .ok_or_else(|| TransformError::UnknownGenerator(String::from(*g)))?;
            let w = target
                .alphabet
                .parse_word(img)
                .map_err(|_| TransformError::ForeignImage { gen: i as usize })?;
            images[i as usize] = Some(w);
        }
        let got = images.iter().filter(|x| x.is_some()).count();
        if got != images.len() {
            return Err(TransformError::ImageCount {
                expected: images.len(),
                got,
            });
        }
        Homomorphism::new(
            source,
            target,
            images.into_iter().map(Option::unwrap).collect(),
        )
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = p.alphabet.letters().map(Word::symbol).collect();
        Homomorphism {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, gen: u32) -> &Word {
        &self.images[gen as usize]
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for s in w.iter() {
            let img = &self.images[s.gen as usize];
            if s.inv {
                out.extend_from(&img.inverse());
            } else {
                out.extend_from(img);
            }
        }
        out
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Homomorphism) -> Result<Homomorphism, TransformError> {
        if self.target.alphabet != then.source.alphabet {
            return Err(TransformError::NotComposable);
        }
        let images = self.images.iter().map(|w| then.apply(w)).collect();
        Homomorphism::new(self.source.clone(), then.target.clone(), images)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum HomMethod<'a> {
    /// Image relators reduce freely to the identity or to a conjugate of a
    /// target relator. Complete only for free targets.
    FreeReduction,
    /// Normal forms under a complete system for a monoid target.
    Rewriting(&'a CompleteSystem),
    /// Breadth-first search over relator insertions (groups) or relation
    /// applications (monoids), with words capped at `max_len`.
    DerivationSearch { max_len: usize, max_nodes: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomVerdict {
    Verified,
    /// The images of source relation `relation` differ in the target.
    Refuted {
        relation: usize,
    },
    /// Neither proved nor refuted for source relation `relation`.
    Unverified {
        relation: usize,
    },
}

enum RelCheck {
    Holds,
    Fails,
    Unknown,
}

/// Checks that every source relation maps to an equality in the target.
pub fn check_homomorphism(
    h: &Homomorphism,
    method: HomMethod<'_>,
) -> Result<HomVerdict, TransformError> {
    if h.target.kind == Kind::Inverse {
        return Err(TransformError::MethodMismatch(String::from(
            "inverse-monoid targets are not supported",
        )));
    }
    if let HomMethod::Rewriting(rs) = method {
        if h.target.kind != Kind::Monoid {
            return Err(TransformError::MethodMismatch(String::from(
                "rewriting needs a monoid target",
            )));
        }
        if rs.alphabet().names() != h.target.alphabet.names() {
            return Err(TransformError::MethodMismatch(String::from(
                "rewriting system alphabet differs from the target",
            )));
        }
        for r in &h.target.relations {
            let joined = rs.equal(&r.lhs, &r.rhs).unwrap_or(false);
            if !joined {
                return Err(TransformError::MethodMismatch(String::from(
                    "rewriting system does not satisfy the target relations",
                )));
            }
        }
    }

    let mut unknown = None;
    for (i, rel) in h.source.relations.iter().enumerate() {
        let (l, r) = (h.apply(&rel.lhs), h.apply(&rel.rhs));
        let res = match method {
            HomMethod::FreeReduction => by_free_reduction(&h.target, &l, &r),
            HomMethod::Rewriting(rs) => match (rs.normal_form(&l), rs.normal_form(&r)) {
                (Ok(x), Ok(y)) if x == y => RelCheck::Holds,
                (Ok(_), Ok(_)) => RelCheck::Fails,
                _ => RelCheck::Unknown,
            },
            HomMethod::DerivationSearch { max_len, max_nodes } => {
                if derivation_search(&h.target, &l, &r, max_len, max_nodes) {
                    RelCheck::Holds
                } else {
                    RelCheck::Unknown
                }
            }
        };
        match res {
            RelCheck::Holds => {}
            RelCheck::Fails => return Ok(HomVerdict::Refuted { relation: i }),
            RelCheck::Unknown => {
                unknown.get_or_insert(i);
            }
        }
    }
    Ok(match unknown {
        None => HomVerdict::Verified,
        Some(relation) => HomVerdict::Unverified { relation },
    })
}

/// Cyclic conjugates of the cyclically reduced relators and their inverses.
fn symmetrized_relators(p: &Presentation) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for r in p.relators() {
        let r = r.cyclic_reduce();
        for w in [r.clone(), r.inverse()] {
            for k in 0..w.len() {
                out.insert(w.slice(k, w.len()).concat(&w.slice(0, k)));
            }
        }
    }
    out.remove(&Word::empty());
    out
}

fn by_free_reduction(target: &Presentation, l: &Word, r: &Word) -> RelCheck {
    match target.kind {
        Kind::Monoid => {
            let matches = target
                .relations
                .iter()
                .any(|t| (t.lhs == *l && t.rhs == *r) || (t.lhs == *r && t.rhs == *l));
            if l == r || matches {
                RelCheck::Holds
            } else if target.relations.is_empty() {
                RelCheck::Fails
            } else {
                RelCheck::Unknown
            }
        }
        _ => {
            let rel = l.concat(&r.inverse()).free_reduce();
            if rel.is_empty() || symmetrized_relators(target).contains(&rel.cyclic_reduce()) {
                RelCheck::Holds
            } else if target.relations.is_empty() {
                RelCheck::Fails
            } else {
                RelCheck::Unknown
            }
        }
    }
}

/// Bounded search for a derivation of `l = r` in the target.
fn derivation_search(
    target: &Presentation,
    l: &Word,
    r: &Word,
    max_len: usize,
    max_nodes: usize,
) -> bool {
    match target.kind {
        Kind::Monoid => {
            let mut seen = BTreeSet::from([l.clone()]);
            let mut queue = VecDeque::from([l.clone()]);
            while let Some(w) = queue.pop_front() {
                if w == *r {
                    return true;
                }
                for rel in &target.relations {
                    for (from, to) in [(&rel.lhs, &rel.rhs), (&rel.rhs, &rel.lhs)] {
                        if from.is_empty() {
                            // inserting the other side anywhere
                            for p in 0..=w.len() {
                                push_bounded(
                                    &mut seen,
                                    &mut queue,
                                    w.splice(p, 0, to),
                                    max_len,
                                    max_nodes,
                                );
                            }
                            continue;
                        }
                        let mut start = 0;
                        while let Some(p) = w.find(from, start) {
                            push_bounded(
                                &mut seen,
                                &mut queue,
                                w.splice(p, from.len(), to),
                                max_len,
                                max_nodes,
                            );
                            start = p + 1;
                        }
                    }
                }
            }
            false
        }
        _ => {
            let rels = symmetrized_relators(target);
            let start = l.concat(&r.inverse()).free_reduce();
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(w) = queue.pop_front() {
                if w.is_empty() {
                    return true;
                }
                for rho in &rels {
                    for p in 0..=w.len() {
                        let next = w.splice(p, 0, rho).free_reduce();
                        push_bounded(&mut seen, &mut queue, next, max_len, max_nodes);
                    }
                }
            }
            false
        }
    }
}

fn push_bounded(
    seen: &mut BTreeSet<Word>,
    queue: &mut VecDeque<Word>,
    w: Word,
    max_len: usize,
    max_nodes: usize,
) {
    if w.len() <= max_len && seen.len() < max_nodes && seen.insert(w.clone()) {
        queue.push_back(w);
    }
}

/// `ρ ∘ s` is the identity on the generators of the source of `s`.
pub fn check_retraction(s: &Homomorphism, rho: &Homomorphism) -> Result<bool, TransformError> {
    if s.target.alphabet != rho.source.alphabet || rho.target.alphabet != s.source.alphabet {
        return Err(TransformError::NotComposable);
    }
    Ok(s.source
        .alphabet
        .letters()
        .all(|g| rho.apply(s.image(g.gen)).free_reduce() == Word::symbol(g)))
}
