//! Exact affine maps `u ↦ 2^k u + b` over the dyadic rationals, a faithful
//! model of `BS(1,2) = <x, y | y^2 x = x y>`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::word::{Symbol, Word};

/// `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn integer(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// `num / 2^exp`, reduced.
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// The denominator is `2^denominator_exp()`.
    pub fn denominator_exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `self · 2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if k >= 0 {
            let num = &self.num << (k as usize);
            let exp = self.exp;
            // shifting can only cancel powers in the denominator
            let cancel = exp.min(k as u32);
            Dyadic::new(num >> (cancel as usize), exp - cancel)
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << ((e - self.exp) as usize),
            &other.num << ((e - other.exp) as usize),
            e,
        )
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// `u ↦ 2^scale_exp · u + translation`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineMap {
    pub scale_exp: i64,
    pub translation: Dyadic,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            scale_exp: 0,
            translation: Dyadic::zero(),
        }
    }

    /// `u ↦ 2u`.
    pub fn x() -> Self {
        AffineMap {
            scale_exp: 1,
            translation: Dyadic::zero(),
        }
    }

    /// `u ↦ u + 1`.
    pub fn y() -> Self {
        AffineMap {
            scale_exp: 0,
            translation: Dyadic::integer(1),
        }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        AffineMap {
            scale_exp: self.scale_exp + inner.scale_exp,
            translation: &inner.translation.shl(self.scale_exp) + &self.translation,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        AffineMap {
            scale_exp: -self.scale_exp,
            translation: -&self.translation.shl(-self.scale_exp),
        }
    }

    pub fn apply(&self, u: &Dyadic) -> Dyadic {
        &u.shl(self.scale_exp) + &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.scale_exp == 0 && self.translation.is_zero()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u -> 2^{} u + {}", self.scale_exp, self.translation)
    }
}

/// Evaluates a word over `x` (generator 0) and `y` (generator 1) with the
/// left action: `g_1 g_2` acts as `u ↦ g_1(g_2(u))`.
///
/// Panics on other generators.
pub fn bs12_eval(w: &Word) -> AffineMap {
    w.iter().fold(AffineMap::identity(), |acc, &s| {
        acc.compose(&bs12_symbol(s))
    })
}

fn bs12_symbol(s: Symbol) -> AffineMap {
    let g = match s.gen {
        0 => AffineMap::x(),
        1 => AffineMap::y(),
        other => panic!("generator {other} is not x or y"),
    };
    if s.inv {
        g.inverse()
    } else {
        g
    }
}

/// An element of `Z × BS(1,2)`: a power of the central `z` and an affine map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KElement {
    pub z_exp: i64,
    pub bs: AffineMap,
}

impl KElement {
    pub fn identity() -> Self {
        KElement {
            z_exp: 0,
            bs: AffineMap::identity(),
        }
    }

    pub fn x_power(k: i64) -> Self {
        KElement {
            z_exp: 0,
            bs: AffineMap {
                scale_exp: k,
                translation: Dyadic::zero(),
            },
        }
    }

    pub fn mul(&self, rhs: &KElement) -> KElement {
        KElement {
            z_exp: self.z_exp + rhs.z_exp,
            bs: self.bs.compose(&rhs.bs),
        }
    }

    pub fn inverse(&self) -> KElement {
        KElement {
            z_exp: -self.z_exp,
            bs: self.bs.inverse(),
        }
    }

    /// Generators `x, y, z` are 0, 1, 2.
    pub fn from_symbol(s: Symbol) -> Option<KElement> {
        let e = match s.gen {
            0 | 1 => KElement {
                z_exp: 0,
                bs: bs12_symbol(Symbol::pos(s.gen)),
            },
            2 => KElement {
                z_exp: 1,
                bs: AffineMap::identity(),
            },
            _ => return None,
        };
        Some(if s.inv { e.inverse() } else { e })
    }

    pub fn eval(w: &Word) -> Option<KElement> {
        w.iter().try_fold(KElement::identity(), |acc, &s| {
            Some(acc.mul(&KElement::from_symbol(s)?))
        })
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(z^{}, {})", self.z_exp, self.bs)
    }
}

/// `Some(k)` iff `e = x^k`.
pub fn k_membership_in_x(e: &KElement) -> Option<i64> {
    (e.z_exp == 0 && e.bs.translation.is_zero()).then_some(e.bs.scale_exp)
}
