//! Parametric presentations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::presentation::{Kind, Presentation, Relation};
use crate::transform::Homomorphism;
use crate::word::{Alphabet, Word};

/// `[u, v] = u^-1 v^-1 u v`.
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.inverse().concat(&v.inverse()).concat(u).concat(v)
}

fn a() -> Word {
    Word::letter(0)
}

fn b() -> Word {
    Word::letter(1)
}

/// `W_{m,n} = (ba^n)^m (a^n b)^m` over `a, b` (generators 0, 1).
pub fn w_mn(m: usize, n: usize) -> Word {
    let an = a().pow(n);
    b().concat(&an).pow(m).concat(&an.concat(&b()).pow(m))
}

/// `Q_{m,n}`: `W_{m,n}` without its leading `b`.
pub fn q_mn(m: usize, n: usize) -> Word {
    let w = w_mn(m, n);
    w.slice(1, w.len())
}

/// `bQ_{m,n}a`, the left side of the defining relation of `R_{m,n}`.
pub fn bqa(m: usize, n: usize) -> Word {
    w_mn(m, n).concat(&a())
}

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("static names")
}

fn build(kind: Kind, alphabet: Alphabet, rels: Vec<Relation>) -> Presentation {
    Presentation::new(kind, alphabet, rels).expect("family relations are well formed")
}

/// `G_{m,n} = <x, y | x^m y^n = y^n x^-m>`.
pub fn g_mn(m: usize, n: usize) -> Presentation {
    let (x, y) = (Word::letter(0), Word::letter(1));
    let lhs = x.pow(m).concat(&y.pow(n));
    let rhs = y.pow(n).concat(&x.inverse().pow(m));
    build(
        Kind::Group,
        Alphabet::new(["x", "y"]).expect("static names"),
        alloc::vec![Relation::new(lhs, rhs)],
    )
}

/// The monoid `<a, b | (ba^n)^m (a^n b)^m = 1>`.
pub fn m_mn(m: usize, n: usize) -> Presentation {
    build(
        Kind::Monoid,
        ab(),
        alloc::vec![Relation::relator(w_mn(m, n))],
    )
}

/// `R_{m,n} = <a, b | bQ_{m,n}a = a>`.
pub fn r_mn(m: usize, n: usize) -> Presentation {
    build(
        Kind::Monoid,
        ab(),
        alloc::vec![Relation::new(bqa(m, n), a())],
    )
}

/// Names of the kernel generators: `beta` then `alpha_0 .. alpha_{2n-1}`.
pub fn k_names(n: usize) -> Vec<String> {
    let mut names = alloc::vec![String::from("beta")];
    names.extend((0..2 * n).map(|i| format!("alpha_{i}")));
    names
}

/// The kernel presentation
/// `<beta, alpha_0..alpha_{2n-1} | alpha_i^m alpha_{i+n}^m = 1, [alpha_i^m, beta] = 1 (i < n)>`.
pub fn k_target(m: usize, n: usize) -> Presentation {
    let beta = Word::letter(0);
    let alpha = |i: usize| Word::letter(1 + i as u32);
    let mut rels = Vec::new();
    for i in 0..n {
        rels.push(Relation::relator(
            alpha(i).pow(m).concat(&alpha(i + n).pow(m)),
        ));
    }
    for i in 0..n {
        rels.push(Relation::relator(commutator(&alpha(i).pow(m), &beta)));
    }
    build(
        Kind::Group,
        Alphabet::new(k_names(n)).expect("valid names"),
        rels,
    )
}

/// `B(S_{n,m}) = <d, c_0..c_{n-1} | [c_i^m, d] = 1>`.
pub fn bs_graph(m: usize, n: usize) -> Presentation {
    let mut names = alloc::vec![String::from("d")];
    names.extend((0..n).map(|i| format!("c_{i}")));
    let d = Word::letter(0);
    let rels = (0..n)
        .map(|i| Relation::relator(commutator(&Word::letter(1 + i as u32).pow(m), &d)))
        .collect();
    build(
        Kind::Group,
        Alphabet::new(names).expect("valid names"),
        rels,
    )
}

/// `B(P_{3,m}) = <w_0, w_1, w_2 | [w_0, w_2] = 1, [w_0, w_1^m] = 1>`.
pub fn bp3(m: usize) -> Presentation {
    let w = |i: u32| Word::letter(i);
    let rels = alloc::vec![
        Relation::relator(commutator(&w(0), &w(2))),
        Relation::relator(commutator(&w(0), &w(1).pow(m))),
    ];
    build(
        Kind::Group,
        Alphabet::new(["w_0", "w_1", "w_2"]).expect("static names"),
        rels,
    )
}

/// The monoid over `z, t` that compresses with respect to `zt` to
/// `<x, y | (xxyy (xy)^n)^m ((xy)^n xxyy)^m = 1>`.
pub fn t_compression(m: usize, n: usize) -> Presentation {
    let al = Alphabet::new(["z", "t"]).expect("static names");
    let p = |s: &str| al.parse_word(s).expect("static word");
    let x2 = p("ztzzt");
    let x3 = p("ztzzzt");
    let pair = x2.concat(&x3);
    let head = x2.pow(2).concat(&x3.pow(2));
    let lhs = head
        .concat(&pair.pow(n))
        .pow(m)
        .concat(&pair.pow(n).concat(&head).pow(m));
    build(
        Kind::Monoid,
        al.clone(),
        alloc::vec![Relation::new(lhs, p("zt"))],
    )
}

/// `R_{m,n}` with `a -> aaa`, `b -> bbb` substituted literally.
pub fn r_tripled(m: usize, n: usize) -> Presentation {
    let triple = |g: u32| Word::letter(g).pow(3);
    let r = r_mn(m, n);
    let rel = &r.relations[0];
    build(
        Kind::Monoid,
        ab(),
        alloc::vec![Relation::new(
            rel.lhs.substitute(triple),
            rel.rhs.substitute(triple)
        )],
    )
}

/// The special monoid `<x, y | (β α^n)^m (α^n β)^m = 1>` with `α = xy`,
/// `β = xxyy`, together with the two pieces.
pub fn units_example(m: usize, n: usize) -> (Presentation, Word, Word) {
    let al = Alphabet::new(["x", "y"]).expect("static names");
    let alpha = al.parse_word("x y").expect("static word");
    let beta = al.parse_word("x x y y").expect("static word");
    let w = w_mn(m, n).substitute(|g| if g == 0 { alpha.clone() } else { beta.clone() });
    (
        build(Kind::Monoid, al, alloc::vec![Relation::relator(w)]),
        alpha,
        beta,
    )
}

/// `A(P_4) = <A, B, C, D | AB = BA, BC = CB, CD = DC>`.
pub fn a_p4() -> Presentation {
    let g = |i: u32| Word::letter(i);
    let rels = (0..3)
        .map(|i| Relation::new(g(i).concat(&g(i + 1)), g(i + 1).concat(&g(i))))
        .collect();
    build(
        Kind::Group,
        Alphabet::new(["A", "B", "C", "D"]).expect("static names"),
        rels,
    )
}

/// `H = <x, y, z, t | tx = xt, xz = zx, zy = yz, y^2 x = x y>`.
pub fn h_group() -> Presentation {
    Presentation::from_strs(
        Kind::Group,
        &["x", "y", "z", "t"],
        &[
            ("t x", "x t"),
            ("x z", "z x"),
            ("z y", "y z"),
            ("y y x", "x y"),
        ],
    )
    .expect("static presentation")
}

/// The maps `s: B(S_{n,m}) -> K` (`d -> beta`, `c_i -> alpha_i`) and
/// `rho: K -> B(S_{n,m})` (`beta -> d`, `alpha_i -> c_i`,
/// `alpha_{i+n} -> c_i^-1`).
pub fn bs_retraction(m: usize, n: usize) -> (Homomorphism, Homomorphism) {
    let b = bs_graph(m, n);
    let k = k_target(m, n);
    let c = |i: usize| Word::letter(1 + i as u32);
    let mut s_imgs = alloc::vec![Word::letter(0)];
    s_imgs.extend((0..n).map(c));
    let mut r_imgs = s_imgs.clone();
    r_imgs.extend((0..n).map(|i| c(i).inverse()));
    (
        Homomorphism::new(b.clone(), k.clone(), s_imgs).expect("images over K"),
        Homomorphism::new(k, b, r_imgs).expect("images over B"),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyName {
    G,
    M,
    R,
    KTarget,
    BsGraph,
    Bp3,
    TCompression,
    RTripled,
}

impl FamilyName {
    pub const ALL: [FamilyName; 8] = [
        FamilyName::G,
        FamilyName::M,
        FamilyName::R,
        FamilyName::KTarget,
        FamilyName::BsGraph,
        FamilyName::Bp3,
        FamilyName::TCompression,
        FamilyName::RTripled,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::G => "G",
            FamilyName::M => "M",
            FamilyName::R => "R",
            FamilyName::KTarget => "K_target",
            FamilyName::BsGraph => "BS_graph",
            FamilyName::Bp3 => "BP3",
            FamilyName::TCompression => "T_compression",
            FamilyName::RTripled => "R_tripled",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family parameters must be at least 1 (got m={m}, n={n})")]
    BadParameters { m: usize, n: usize },
}

impl FromStr for FamilyName {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(String::from(s)))
    }
}

/// Builds a named family member; `BP3` ignores `n`.
pub fn make_family(name: FamilyName, m: usize, n: usize) -> Result<Presentation, FamilyError> {
    if m == 0 || n == 0 {
        return Err(FamilyError::BadParameters { m, n });
    }
    Ok(match name {
        FamilyName::G => g_mn(m, n),
        FamilyName::M => m_mn(m, n),
        FamilyName::R => r_mn(m, n),
        FamilyName::KTarget => k_target(m, n),
        FamilyName::BsGraph => bs_graph(m, n),
        FamilyName::Bp3 => bp3(m),
        FamilyName::TCompression => t_compression(m, n),
        FamilyName::RTripled => r_tripled(m, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::self_overlaps;

    #[test]
    fn r_2_2() {
        let r = make_family(FamilyName::R, 2, 2).unwrap();
        assert_eq!(r.to_string(), "monoid<a, b | baabaaaabaaba = a>");
    }

    #[test]
    fn bs_graph_2_2() {
        let p = make_family(FamilyName::BsGraph, 2, 2).unwrap();
        assert_eq!(p.alphabet.names(), ["d", "c_0", "c_1"]);
        let rels: Vec<_> = p.relators().iter().map(|w| p.alphabet.format(w)).collect();
        assert_eq!(
            rels,
            [
                "c_0^-1 c_0^-1 d^-1 c_0 c_0 d",
                "c_1^-1 c_1^-1 d^-1 c_1 c_1 d"
            ]
        );
    }

    #[test]
    fn g_1_1() {
        let g = make_family(FamilyName::G, 1, 1).unwrap();
        assert_eq!(g.alphabet.format(&g.relators()[0]), "x y x y^-1");
    }

    #[test]
    fn unknown_name_and_bad_params() {
        assert!("Z".parse::<FamilyName>().is_err());
        assert_eq!("K_target".parse::<FamilyName>(), Ok(FamilyName::KTarget));
        assert!(make_family(FamilyName::G, 0, 1).is_err());
    }

    #[test]
    fn bqa_two_constructions_agree() {
        for m in 1..=4 {
            for n in 1..=4 {
                // factor by factor, straight from the shape of the relation
                let mut direct = Word::empty();
                for _ in 0..m {
                    direct.extend_from(&b());
                    direct.extend_from(&a().pow(n));
                }
                for _ in 0..m {
                    direct.extend_from(&a().pow(n));
                    direct.extend_from(&b());
                }
                direct.extend_from(&a());
                assert_eq!(bqa(m, n), direct);
                assert_eq!(b().concat(&q_mn(m, n)).concat(&a()), direct);
                assert_eq!(direct.len(), 2 * m * (n + 1) + 1);
            }
        }
    }

    #[test]
    fn bqa_self_overlaps_exhaustive() {
        for m in 1..=4 {
            for n in 1..=4 {
                let want: Vec<Word> = (0..m)
                    .map(|i| b().concat(&a().pow(n)).pow(i).concat(&b()).concat(&a()))
                    .collect();
                assert_eq!(self_overlaps(&bqa(m, n)), want, "({m},{n})");
            }
        }
    }

    #[test]
    fn tripled_and_compression_shapes() {
        let t = r_tripled(2, 2);
        assert_eq!(t.relations[0].lhs.len(), 3 * bqa(2, 2).len());
        assert_eq!(t.alphabet.format_compact(&t.relations[0].rhs), "aaa");
        let c = t_compression(1, 1);
        // the left side starts with (ztz^2t)^2
        let al = &c.alphabet;
        let s = al.format_compact(&c.relations[0].lhs);
        assert!(s.starts_with("ztzztztzzt"));
        assert_eq!(al.format_compact(&c.relations[0].rhs), "zt");
    }

    #[test]
    fn k_target_2_2() {
        let k = k_target(2, 2);
        let f: Vec<_> = k.relators().iter().map(|w| k.alphabet.format(w)).collect();
        assert_eq!(f[0], "alpha_0 alpha_0 alpha_2 alpha_2");
        assert_eq!(f[3], "alpha_1^-1 alpha_1^-1 beta^-1 alpha_1 alpha_1 beta");
    }
}
