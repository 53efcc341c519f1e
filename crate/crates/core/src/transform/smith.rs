//! Smith normal form over the integers and abelian invariants.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::presentation::Presentation;

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            *self.at(dst, j) -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            *self.at(i, dst) -= v;
        }
    }
}

/// The nonzero invariant factors `d_1 | d_2 | ...` of `m`, all positive.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()));
            let Some((pi, pj)) = pivot else {
                return finish(diag);
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);

            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&p);
                a.sub_row(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&p);
                a.sub_col(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    finish(diag)
}

fn finish(diag: Vec<BigInt>) -> Vec<BigInt> {
    debug_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    diag
}

/// `Z/d_1 + ... + Z/d_k + Z^r` with each `d_i > 1` dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .torsion
            .iter()
            .map(|d| alloc::format!("Z/{d}"))
            .collect();
        match self.free_rank {
            0 => {}
            1 => parts.push(String::from("Z")),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix of the relators, one row per relation.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.num_gens();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(n)).collect();
    let mut m = IntMatrix::zeros(rows.len(), n);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            *m.at(i, j) = BigInt::from(x);
        }
    }
    m
}

/// Invariants of the abelianization of the group presented by `p`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let diag = smith_diagonal(&relation_matrix(p));
    AbelianInvariants {
        free_rank: p.num_gens() - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{a_p4, g_mn, h_group};
    use crate::presentation::{Kind, Relation};
    use proptest::prelude::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let h = abelianization(&h_group());
        assert_eq!((h.free_rank, h.torsion.len()), (3, 0));
        assert_eq!(h.to_string(), "Z^3");
        let a = abelianization(&a_p4());
        assert_eq!((a.free_rank, a.torsion.len()), (4, 0));
        for n in 1..5 {
            let g = abelianization(&g_mn(2, n));
            assert_eq!(g.torsion, big(&[4]));
            assert_eq!(g.free_rank, 1);
            assert_eq!(g.to_string(), "Z/4 + Z");
        }
    }

    #[test]
    fn diagonal_examples() {
        let m = IntMatrix::from_rows(&[
            alloc::vec![2, 4, 4],
            alloc::vec![-6, 6, 12],
            alloc::vec![10, -4, -16],
        ]);
        assert_eq!(smith_diagonal(&m), big(&[2, 6, 12]));
        let m = IntMatrix::from_rows(&[alloc::vec![2, 0], alloc::vec![0, 3]]);
        assert_eq!(smith_diagonal(&m), big(&[1, 6]));
        assert!(smith_diagonal(&IntMatrix::zeros(2, 3)).is_empty());
    }

    /// Oracle: the product of the invariant factors of a square matrix is
    /// |det|, and their gcd is the gcd of all entries.
    fn det(rows: &[Vec<i64>]) -> i128 {
        let n = rows.len();
        if n == 1 {
            return rows[0][0] as i128;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * rows[0][j] as i128 * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn smith_oracles(n in 1usize..5, seed in prop::collection::vec(-9i64..10, 16)) {
            let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
            let d = smith_diagonal(&IntMatrix::from_rows(&rows));
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let dt = det(&rows);
            if dt != 0 {
                prop_assert_eq!(d.len(), n);
                let prod = d.iter().fold(BigInt::one(), |acc, x| acc * x);
                prop_assert_eq!(prod, BigInt::from(dt.abs()));
            } else {
                prop_assert!(d.len() < n);
            }
            let g = rows.iter().flatten().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 0 {
                prop_assert_eq!(&d[0], &BigInt::from(g));
            }
        }

        #[test]
        fn invariant_under_relator_moves(seed in prop::collection::vec((0u32..3, any::<bool>()), 1..24), cut in 0usize..3) {
            let rels: Vec<Relation> = seed
                .chunks(8)
                .map(|c| Relation::relator(crate::word::Word::from_symbols(
                    c.iter().map(|&(g, inv)| crate::word::Symbol { gen: g, inv }).collect())))
                .collect();
            let al = crate::word::Alphabet::new(["p", "q", "r"]).unwrap();
            let p = Presentation::new(Kind::Group, al.clone(), rels.clone()).unwrap();
            let base = abelianization(&p);

            let reduced: Vec<Relation> = rels.iter().map(|r| Relation::relator(r.lhs.free_reduce())).collect();
            let inverted: Vec<Relation> = rels
                .iter()
                .enumerate()
                .map(|(i, r)| if i == cut { Relation::relator(r.lhs.inverse()) } else { r.clone() })
                .collect();
            // reorder generators: swap the first two everywhere
            let swapped: Vec<Relation> = rels
                .iter()
                .map(|r| Relation::relator(r.lhs.substitute(|g| crate::word::Word::letter(match g { 0 => 1, 1 => 0, x => x }))))
                .collect();
            for rs in [reduced, inverted, swapped] {
                let q = Presentation::new(Kind::Group, al.clone(), rs).unwrap();
                prop_assert_eq!(&abelianization(&q), &base);
            }
        }
    }
}
