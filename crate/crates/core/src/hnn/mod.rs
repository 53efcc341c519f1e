//! Britton reduction in HNN extensions `<G, t | t a t^-1 = a>` whose
//! associated subgroup is the cyclic group `<a>`, with an exact instance for
//! the base `Z × BS(1,2)`.

mod affine;

pub use affine::{bs12_eval, k_membership_in_x, AffineMap, Dyadic, KElement};

use alloc::format;
use alloc::vec::Vec;
use core::fmt::Debug;

use thiserror::Error;

use crate::families::{compare_with_traces, InjectivityResult, TraceGraph};
use crate::report::{Report, Status};
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnnError {
    #[error("symbol {0:?} is neither a base generator nor the stable letter")]
    ForeignSymbol(Symbol),
}

/// What Britton reduction needs to know about the base group.
pub trait BaseOracle {
    /// A canonical handle: equal handles iff equal group elements.
    type Elem: Clone + Eq + Ord + Debug;

    fn identity(&self) -> Self::Elem;
    fn generator(&self, s: Symbol) -> Result<Self::Elem, HnnError>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `Some(k)` iff `g = a^k` for the generator `a` of the associated subgroup.
    fn subgroup_exponent(&self, g: &Self::Elem) -> Option<i64>;
    fn subgroup_power(&self, k: i64) -> Self::Elem;
    /// `g = rep · a^k`, where `rep` depends only on the coset `g<a>`.
    fn coset_split(&self, g: &Self::Elem) -> (Self::Elem, i64);
}

/// `g_0 t^{e_1} g_1 ... t^{e_n} g_n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HnnWord<E> {
    pub segments: Vec<E>,
    /// `true` for `t`, `false` for `t^-1`.
    pub signs: Vec<bool>,
}

impl<E> HnnWord<E> {
    pub fn t_length(&self) -> usize {
        self.signs.len()
    }

    pub fn t_exponent_sum(&self) -> i64 {
        self.signs.iter().map(|&s| if s { 1 } else { -1 }).sum()
    }
}

/// Reduces `w` by cancelling every pinch `t^e a^k t^-e` to `a^k`.
///
/// Works as a stack: when a stable letter arrives that is inverse to the
/// previous one and the segment in between lies in `<a>`, the two letters
/// cancel and the segment merges into its left neighbour.
pub fn britton_reduce<O: BaseOracle>(
    oracle: &O,
    stable: u32,
    w: &Word,
) -> Result<HnnWord<O::Elem>, HnnError> {
    let mut segments = alloc::vec![oracle.identity()];
    let mut signs: Vec<bool> = Vec::new();
    for &s in w.iter() {
        if s.gen != stable {
            let g = oracle.generator(s)?;
            let last = segments.last_mut().expect("never empty");
            *last = oracle.mul(last, &g);
            continue;
        }
        let sign = !s.inv;
        let pinch = signs.last() == Some(&!sign)
            && oracle
                .subgroup_exponent(segments.last().expect("never empty"))
                .is_some();
        if pinch {
            signs.pop();
            let g = segments.pop().expect("segment after the popped letter");
            let prev = segments
                .last_mut()
                .expect("segment before the popped letter");
            *prev = oracle.mul(prev, &g);
        } else {
            signs.push(sign);
            segments.push(oracle.identity());
        }
    }
    Ok(HnnWord { segments, signs })
}

/// No `t^e g t^-e` with `g` in the associated subgroup.
pub fn is_pinch_free<O: BaseOracle>(oracle: &O, h: &HnnWord<O::Elem>) -> bool {
    (1..h.signs.len())
        .all(|i| h.signs[i - 1] == h.signs[i] || oracle.subgroup_exponent(&h.segments[i]).is_none())
}

/// A reduced form in which every segment but the last is its coset
/// representative; the stripped powers of `a` commute past `t` into the
/// next segment. Two words are equal in the extension iff their canonical
/// forms are identical.
pub fn canonical_form<O: BaseOracle>(
    oracle: &O,
    stable: u32,
    w: &Word,
) -> Result<HnnWord<O::Elem>, HnnError> {
    let mut h = britton_reduce(oracle, stable, w)?;
    for i in 0..h.signs.len() {
        let (rep, k) = oracle.coset_split(&h.segments[i]);
        h.segments[i] = rep;
        let next = oracle.mul(&oracle.subgroup_power(k), &h.segments[i + 1]);
        h.segments[i + 1] = next;
    }
    Ok(h)
}

/// The base `Z × BS(1,2)` on `x, y, z` (generators 0, 1, 2) with associated
/// subgroup `<x>`.
#[derive(Clone, Copy, Debug, Default)]
pub struct KOracle;

impl BaseOracle for KOracle {
    type Elem = KElement;

    fn identity(&self) -> KElement {
        KElement::identity()
    }

    fn generator(&self, s: Symbol) -> Result<KElement, HnnError> {
        KElement::from_symbol(s).ok_or(HnnError::ForeignSymbol(s))
    }

    fn mul(&self, a: &KElement, b: &KElement) -> KElement {
        a.mul(b)
    }

    fn subgroup_exponent(&self, g: &KElement) -> Option<i64> {
        k_membership_in_x(g)
    }

    fn subgroup_power(&self, k: i64) -> KElement {
        KElement::x_power(k)
    }

    fn coset_split(&self, g: &KElement) -> (KElement, i64) {
        // (u ↦ 2^s u + b) = (u ↦ u + b) ∘ x^s
        let rep = KElement {
            z_exp: g.z_exp,
            bs: AffineMap {
                scale_exp: 0,
                translation: g.bs.translation.clone(),
            },
        };
        (rep, g.bs.scale_exp)
    }
}

/// The stable letter of `H = <x, y, z, t | tx = xt, xz = zx, zy = yz, y^2 x = xy>`.
pub const H_STABLE: u32 = 3;

/// Canonical form of a word over `x, y, z, t` in `H`.
pub fn h_canonical(w: &Word) -> Result<HnnWord<KElement>, HnnError> {
    canonical_form(&KOracle, H_STABLE, w)
}

/// The generators `t, x, z, xy` of the trace submonoid, in path order.
pub fn h_trace_generators() -> [Word; 4] {
    [
        Word::letter(3),
        Word::letter(0),
        Word::letter(2),
        Word::from_gens(&[0, 1]),
    ]
}

/// Checks that `t, x, z, xy` generate a copy of `T(P_4)` in `H` on the ball
/// of the given radius: adjacent generators commute, non-adjacent ones do
/// not, and distinct trace classes have distinct values.
pub fn verify_trace_submonoid(radius: usize) -> Report {
    let gens = h_trace_generators();
    let names = ["t", "x", "z", "xy"];
    let g = TraceGraph::p4();
    let mut report = Report::new("hnn-trace");
    for i in 0..4u32 {
        for j in i + 1..4u32 {
            let (u, v) = (&gens[i as usize], &gens[j as usize]);
            let id = format!("commute({},{})", names[i as usize], names[j as usize]);
            let (Ok(uv), Ok(vu)) = (h_canonical(&u.concat(v)), h_canonical(&v.concat(u))) else {
                report.push(id, Status::Unknown, "oracle failure");
                continue;
            };
            let adjacent = g.adjacent(i, j);
            let commute = uv == vu;
            report.check(
                id,
                commute == adjacent,
                format!(
                    "commute: {commute}, adjacent: {adjacent}, t-length {}",
                    uv.t_length()
                ),
            );
        }
    }

    let mut pinch_free = true;
    let ball = compare_with_traces(radius, |s| {
        let w = s.substitute(|x| gens[x as usize].clone());
        let h = britton_reduce(&KOracle, H_STABLE, &w)?;
        pinch_free &= is_pinch_free(&KOracle, &h);
        h_canonical(&w)
    });
    match ball {
        Ok(res) => {
            report.check("pinch-free", pinch_free, "every reduced form");
            push_ball(&mut report, &res);
        }
        Err(e) => report.push("ball", Status::Unknown, format!("{e}")),
    }
    report
}

fn push_ball(report: &mut Report, res: &InjectivityResult) {
    report.check(
        format!("ball({})", res.radius),
        res.holds(),
        format!(
            "{} sequences, {} trace classes, {} values, {} violations",
            res.sequences,
            res.trace_classes,
            res.values,
            res.violations.len()
        ),
    );
}

/// `eval(uv) = eval(u) ∘ eval(v)` on each pair.
pub fn check_bs12_homomorphism(pairs: &[(Word, Word)]) -> Report {
    let mut report = Report::new("bs12-homomorphism");
    let bad = pairs
        .iter()
        .position(|(u, v)| bs12_eval(&u.concat(v)) != bs12_eval(u).compose(&bs12_eval(v)));
    let detail = match bad {
        None => format!("{} pairs", pairs.len()),
        Some(i) => format!("pair {i}: {:?} {:?}", pairs[i].0, pairs[i].1),
    };
    report.check("eval(uv)=eval(u)eval(v)", bad.is_none(), detail);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;
    use alloc::collections::{BTreeMap, BTreeSet};
    use proptest::prelude::*;

    fn h(s: &str) -> Word {
        Alphabet::new(["x", "y", "z", "t"])
            .unwrap()
            .parse_word(s)
            .unwrap()
    }

    #[test]
    fn reduction_examples() {
        let r = britton_reduce(&KOracle, H_STABLE, &h("t x x x t^-1")).unwrap();
        assert_eq!(r.t_length(), 0);
        assert_eq!(r.segments, [KElement::x_power(3)]);
        let r = britton_reduce(&KOracle, H_STABLE, &h("t y t^-1")).unwrap();
        assert_eq!(r.t_length(), 2);
        let r = britton_reduce(&KOracle, H_STABLE, &h("t t^-1")).unwrap();
        assert_eq!(
            r,
            HnnWord {
                segments: alloc::vec![KElement::identity()],
                signs: alloc::vec![]
            }
        );
        assert!(britton_reduce(&KOracle, H_STABLE, &Word::letter(7)).is_err());
    }

    #[test]
    fn defining_relations_hold() {
        for (l, r) in [
            ("t x", "x t"),
            ("x z", "z x"),
            ("z y", "y z"),
            ("y y x", "x y"),
        ] {
            assert_eq!(
                h_canonical(&h(l)).unwrap(),
                h_canonical(&h(r)).unwrap(),
                "{l} = {r}"
            );
        }
        assert_ne!(
            h_canonical(&h("t z")).unwrap(),
            h_canonical(&h("z t")).unwrap()
        );
        assert_ne!(
            h_canonical(&h("t y")).unwrap(),
            h_canonical(&h("y t")).unwrap()
        );
    }

    #[test]
    fn trace_submonoid_ball_four() {
        let r = verify_trace_submonoid(4);
        assert!(r.passed(), "{r}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.detail.starts_with("340 sequences")));
    }

    #[test]
    fn bs12_pairs() {
        let pairs = [(h("x y"), h("y^-1 x")), (Word::empty(), h("x x"))];
        assert!(check_bs12_homomorphism(&pairs).passed());
    }

    /// Homomorphisms from H to groups with easy word problems. Equal
    /// canonical forms must have equal images under each.
    fn quotients(w: &Word) -> (KElement, i64, KElement, KElement, Word) {
        let drop_t = w.substitute(|g| {
            if g == 3 {
                Word::empty()
            } else {
                Word::letter(g)
            }
        });
        let t_sum = w.exponent_sums(4)[3];
        let t_to_x = w.substitute(|g| Word::letter(if g == 3 { 0 } else { g }));
        let t_to_xxz = w.substitute(|g| if g == 3 { h("x x z") } else { Word::letter(g) });
        // kill x and y: z and t become free
        let free = w
            .substitute(|g| {
                if g < 2 {
                    Word::empty()
                } else {
                    Word::letter(g)
                }
            })
            .free_reduce();
        (
            KElement::eval(&drop_t).unwrap(),
            t_sum,
            KElement::eval(&t_to_x).unwrap(),
            KElement::eval(&t_to_xxz).unwrap(),
            free,
        )
    }

    #[test]
    fn quotient_oracle_separates_the_ball() {
        // the quotients alone separate every trace class, so canonical forms
        // that agree with trace classes are exactly right on this ball
        let gens = h_trace_generators();
        let res = compare_with_traces::<_, ()>(4, |s| {
            Ok(quotients(&s.substitute(|x| gens[x as usize].clone())))
        })
        .unwrap();
        assert!(res.holds(), "{res:?}");
    }

    fn arb_h() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u32..4, any::<bool>()), 0..10).prop_map(|v| {
            Word::from_symbols(
                v.into_iter()
                    .map(|(gen, inv)| Symbol { gen, inv })
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn reduction_invariants(w in arb_h()) {
            let r = britton_reduce(&KOracle, H_STABLE, &w).unwrap();
            prop_assert!(is_pinch_free(&KOracle, &r));
            prop_assert_eq!(r.t_exponent_sum(), w.exponent_sums(4)[3]);
            prop_assert_eq!(h_canonical(&w.free_reduce()).unwrap(), h_canonical(&w).unwrap());
            // w w^-1 = 1
            let one = h_canonical(&w.concat(&w.inverse())).unwrap();
            prop_assert_eq!(one, h_canonical(&Word::empty()).unwrap());
        }

        #[test]
        fn canonical_equality_is_sound(words in prop::collection::vec(arb_h(), 1..40)) {
            let mut by_form: BTreeMap<HnnWord<KElement>, _> = BTreeMap::new();
            for w in &words {
                let q = quotients(w);
                let c = h_canonical(w).unwrap();
                if let Some(prev) = by_form.get(&c) {
                    prop_assert_eq!(prev, &q);
                } else {
                    by_form.insert(c, q);
                }
            }
        }

        #[test]
        fn inserting_relators_preserves_value(w in arb_h(), pos in 0usize..10, which in 0usize..4) {
            let rels = ["t x t^-1 x^-1", "x z x^-1 z^-1", "z y z^-1 y^-1", "y y x y^-1 x^-1"];
            let r = h(rels[which]);
            let p = pos.min(w.len());
            let v = w.splice(p, 0, &r);
            prop_assert_eq!(h_canonical(&v).unwrap(), h_canonical(&w).unwrap());
        }
    }

    #[test]
    fn all_short_words_are_consistent() {
        // every word of length <= 4 over the signed letters
        let letters: Vec<Symbol> = (0..4)
            .flat_map(|g| [Symbol::pos(g), Symbol::neg(g)])
            .collect();
        let mut layer = alloc::vec![Word::empty()];
        let mut forms: BTreeMap<HnnWord<KElement>, BTreeSet<_>> = BTreeMap::new();
        for _ in 0..4 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    letters.iter().map(move |&s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
            for w in &layer {
                forms
                    .entry(h_canonical(w).unwrap())
                    .or_default()
                    .insert(quotients(w));
            }
        }
        assert!(forms.values().all(|qs| qs.len() == 1));
    }
}
