use super::Homomorphism;
use crate::families::{g_mn, w_mn};
use crate::presentation::{Kind, Presentation, Relation};
use crate::word::{Alphabet, Symbol, Word};

/// The positive one-relator presentation `<a, b | (ba^n)^m (a^n b)^m = 1>`
/// of `G_{m,n}`, with the isomorphism `x ↦ ba^n, y ↦ a` and its inverse
/// `a ↦ y, b ↦ x y^-n`.
pub fn positivize_gmn(m: usize, n: usize) -> (Presentation, Homomorphism, Homomorphism) {
    let g = g_mn(m, n);
    let p = Presentation::new(
        Kind::Group,
        Alphabet::new(["a", "b"]).expect("static names"),
        alloc::vec![Relation::relator(w_mn(m, n))],
    )
    .expect("positive relator over a, b");

    let (a, b) = (Word::letter(0), Word::letter(1));
    let (x, y) = (Word::letter(0), Word::letter(1));
    let forward = Homomorphism::new(g.clone(), p.clone(), alloc::vec![b.concat(&a.pow(n)), a])
        .expect("images over a, b");
    let y_inv = Word::symbol(Symbol::neg(1));
    let back = Homomorphism::new(p.clone(), g, alloc::vec![y, x.concat(&y_inv.pow(n))])
        .expect("images over x, y");
    (p, forward, back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{check_homomorphism, HomMethod, HomVerdict};
    use proptest::prelude::*;

    #[test]
    fn relator_shape() {
        let (p, _, _) = positivize_gmn(2, 2);
        assert_eq!(
            p.alphabet.format_compact(&p.relations[0].lhs),
            "baabaaaabaab"
        );
        let (p, _, _) = positivize_gmn(1, 1);
        assert_eq!(p.alphabet.format_compact(&p.relations[0].lhs), "baab");
    }

    proptest! {
        #[test]
        fn isomorphism_pair(m in 1usize..5, n in 1usize..5) {
            let (p, fwd, back) = positivize_gmn(m, n);
            prop_assert!(p.is_positive());
            // the forward image of the relator is exactly W_{m,n}
            let img = fwd.apply(&fwd.source.relations[0].as_relator()).free_reduce();
            prop_assert_eq!(&img, &w_mn(m, n));
            prop_assert_eq!(check_homomorphism(&fwd, HomMethod::FreeReduction).unwrap(), HomVerdict::Verified);
            prop_assert_eq!(check_homomorphism(&back, HomMethod::FreeReduction).unwrap(), HomVerdict::Verified);
            let round = fwd.then(&back).unwrap();
            for g in 0..2u32 {
                prop_assert_eq!(round.image(g).free_reduce(), Word::letter(g));
            }
        }
    }
}
