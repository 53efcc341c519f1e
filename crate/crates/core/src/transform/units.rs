use alloc::format;
use alloc::vec::Vec;

use super::TransformError;
use crate::overlap::is_overlap_free;
use crate::presentation::{Kind, Presentation, Relation};
use crate::word::{Alphabet, Symbol, Word};

/// Splits `w` into a sequence of piece indices, if possible. For an
/// overlap-free piece set the factorization is unique.
pub fn factor_over_pieces(w: &Word, pieces: &[Word]) -> Option<Vec<usize>> {
    // reach[i]: some factorization of w[..i] ends with piece reach[i]
    let mut reach: Vec<Option<usize>> = alloc::vec![None; w.len() + 1];
    let mut ok = alloc::vec![false; w.len() + 1];
    ok[0] = true;
    for i in 0..w.len() {
        if !ok[i] {
            continue;
        }
        for (k, p) in pieces.iter().enumerate() {
            let j = i + p.len();
            if !p.is_empty() && j <= w.len() && !ok[j] && w[i..j] == p[..] {
                ok[j] = true;
                reach[j] = Some(k);
            }
        }
    }
    if !ok[w.len()] {
        return None;
    }
    let mut out = Vec::new();
    let mut j = w.len();
    while j > 0 {
        let k = reach[j].expect("reachable position");
        out.push(k);
        j -= pieces[k].len();
    }
    out.reverse();
    Some(out)
}

/// The group of units of `<A | w = 1>` given its minimal invertible pieces:
/// `<b_u for each distinct piece u | b_{u_1} ... b_{u_k} = 1>`.
///
/// Generators are named `b_` followed by the piece spelled compactly, or
/// `b_<index>` when that spelling is not a valid name.
pub fn verify_units_decomposition(
    p: &Presentation,
    pieces: &[Word],
) -> Result<Presentation, TransformError> {
    if p.kind != Kind::Monoid || p.relations.len() != 1 || !p.is_special() {
        return Err(TransformError::NotSpecialOneRelator);
    }
    let mut distinct: Vec<Word> = Vec::new();
    for u in pieces {
        if u.is_empty() || !u.is_positive() || !p.alphabet.contains_word(u) {
            return Err(TransformError::BadPiece);
        }
        if !distinct.contains(u) {
            distinct.push(u.clone());
        }
    }
    if !is_overlap_free(&distinct) {
        return Err(TransformError::PiecesOverlap);
    }
    let w = &p.relations[0].lhs;
    let factors = factor_over_pieces(w, &distinct).ok_or(TransformError::PiecesDoNotFactor)?;

    let named: Result<Alphabet, _> = Alphabet::new(
        distinct
            .iter()
            .map(|u| format!("b_{}", p.alphabet.format_compact(u))),
    );
    let alphabet = named.unwrap_or_else(|_| {
        Alphabet::new((0..distinct.len()).map(|i| format!("b_{i}"))).expect("indexed names")
    });
    let rel = Word::from_symbols(factors.into_iter().map(|k| Symbol::pos(k as u32)).collect());
    Ok(
        Presentation::new(Kind::Monoid, alphabet, alloc::vec![Relation::relator(rel)])
            .expect("positive relator over the new generators"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{m_mn, units_example, w_mn};
    use proptest::prelude::*;

    #[test]
    fn units_of_example_are_m_mn() {
        for (m, n) in [(2, 2), (2, 3), (3, 1)] {
            let (p, alpha, beta) = units_example(m, n);
            let u = verify_units_decomposition(&p, &[alpha, beta]).unwrap();
            assert_eq!(u.alphabet.names(), ["b_xy", "b_xxyy"]);
            assert_eq!(u.renamed(["a", "b"]).unwrap(), m_mn(m, n));
        }
    }

    #[test]
    fn small_cases() {
        let p = Presentation::from_strs(Kind::Monoid, &["a", "b"], &[("a b", "1")]).unwrap();
        let u = verify_units_decomposition(&p, &[Word::letter(0), Word::letter(1)]).unwrap();
        assert_eq!(u.alphabet.names(), ["b_a", "b_b"]);
        assert_eq!(u.relations[0].lhs, Word::from_gens(&[0, 1]));

        let q = Presentation::from_strs(Kind::Monoid, &["a", "b"], &[("b a a b", "1")]).unwrap();
        let ba = Word::from_gens(&[1, 0]);
        let ab_ = Word::from_gens(&[0, 1]);
        assert_eq!(
            verify_units_decomposition(&q, &[ba.clone(), ab_]),
            Err(TransformError::PiecesOverlap)
        );
        assert_eq!(
            verify_units_decomposition(&q, &[ba]),
            Err(TransformError::PiecesDoNotFactor)
        );
        let g = q.with_kind(Kind::Group).unwrap();
        assert_eq!(
            verify_units_decomposition(&g, &[Word::letter(0)]),
            Err(TransformError::NotSpecialOneRelator)
        );
    }

    proptest! {
        // single-letter pieces reproduce the relator up to renaming
        #[test]
        fn letter_pieces_are_identity(m in 1usize..4, n in 1usize..4) {
            let p = m_mn(m, n);
            let u = verify_units_decomposition(&p, &[Word::letter(0), Word::letter(1)]).unwrap();
            prop_assert_eq!(&u.relations[0].lhs, &w_mn(m, n));
            prop_assert_eq!(u.alphabet.names(), ["b_a", "b_b"]);
        }
    }
}
