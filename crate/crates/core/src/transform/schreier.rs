//! Presentations of kernels of maps onto finite cyclic groups.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use super::TransformError;
use crate::presentation::{Kind, Presentation, Relation};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierResult {
    /// The kernel, on generators named `<gen>_<coset>`.
    pub presentation: Presentation,
    /// Coset representatives indexed by residue.
    pub transversal: Vec<Word>,
    /// Each kernel generator as a word in the original generators.
    pub generator_words: Vec<Word>,
}

/// Reidemeister–Schreier for the kernel of `gen i ↦ residues[i] mod k`.
///
/// The transversal consists of the shortlex-least positive word in each
/// coset. Each nontrivial Schreier generator `t_c g t_{c+φ(g)}^-1` becomes a
/// new generator, and every relator is rewritten from every coset.
pub fn reidemeister_schreier(
    p: &Presentation,
    residues: &[u64],
    k: u64,
) -> Result<SchreierResult, TransformError> {
    if residues.len() != p.num_gens() {
        return Err(TransformError::ResidueArity);
    }
    if k == 0 {
        return Err(TransformError::ZeroModulus);
    }
    let k_us = k as usize;
    let phi = |s: Symbol| -> usize {
        let r = (residues[s.gen as usize] % k) as usize;
        if s.inv {
            (k_us - r) % k_us
        } else {
            r
        }
    };
    let relators = p.relators();
    for (i, r) in relators.iter().enumerate() {
        if r.iter().fold(0, |acc, &s| (acc + phi(s)) % k_us) != 0 {
            return Err(TransformError::NonzeroResidue { relator: i });
        }
    }

    // breadth-first over positive words visits cosets in shortlex order
    let mut transversal: Vec<Option<Word>> = alloc::vec![None; k_us];
    transversal[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let t = transversal[c].clone().expect("queued cosets are filled");
        for g in p.alphabet.letters() {
            let next = (c + phi(g)) % k_us;
            if transversal[next].is_none() {
                let mut w = t.clone();
                w.push(g);
                transversal[next] = Some(w);
                queue.push_back(next);
            }
        }
    }
    let transversal: Vec<Word> = transversal
        .into_iter()
        .collect::<Option<_>>()
        .ok_or(TransformError::NotOnto)?;

    // gamma[c][g]: the kernel generator for (coset c, generator g), if nontrivial
    let mut alphabet = Alphabet::default();
    let mut generator_words = Vec::new();
    let mut gamma = alloc::vec![alloc::vec![None; p.num_gens()]; k_us];
    for (c, t) in transversal.iter().enumerate() {
        for g in p.alphabet.letters() {
            let mut tg = t.clone();
            tg.push(g);
            let rep = &transversal[(c + phi(g)) % k_us];
            if tg == *rep {
                continue;
            }
            let base = format!("{}_{}", p.alphabet.name(g.gen), c);
            let name = alphabet.fresh_name(&base);
            let idx = alphabet.push(name).map_err(|_| TransformError::NotOnto)?;
            gamma[c][g.gen as usize] = Some(idx);
            generator_words.push(tg.concat(&rep.inverse()).free_reduce());
        }
    }

    let mut seen = BTreeSet::new();
    let mut relations = Vec::new();
    for r in &relators {
        for start in 0..k_us {
            let mut c = start;
            let mut out = Word::empty();
            for &s in r.iter() {
                if s.inv {
                    c = (c + phi(s)) % k_us;
                    if let Some(x) = gamma[c][s.gen as usize] {
                        out.push(Symbol::neg(x));
                    }
                } else {
                    if let Some(x) = gamma[c][s.gen as usize] {
                        out.push(Symbol::pos(x));
                    }
                    c = (c + phi(s)) % k_us;
                }
            }
            let out = out.free_reduce();
            if !out.is_empty() && seen.insert(out.clone()) {
                relations.push(Relation::relator(out));
            }
        }
    }

    let presentation = Presentation::new(Kind::Group, alphabet, relations)
        .expect("rewritten relators use only new generators");
    Ok(SchreierResult {
        presentation,
        transversal,
        generator_words,
    })
}
