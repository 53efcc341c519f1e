use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::word::{Alphabet, Symbol, Word};

/// A simple graph on generators; adjacent letters commute in the trace
/// monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceGraph {
    vertices: Alphabet,
    edges: BTreeSet<(u32, u32)>,
}

impl TraceGraph {
    /// Loops are ignored and each edge is stored once.
    pub fn new(vertices: Alphabet, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let n = vertices.len() as u32;
        let edges = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .inspect(|&(a, b)| assert!(a < n && b < n, "edge outside the vertex set"))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        TraceGraph { vertices, edges }
    }

    /// The path `v_0 - v_1 - ... - v_{k-1}`.
    pub fn path(vertices: Alphabet) -> Self {
        let k = vertices.len() as u32;
        TraceGraph::new(vertices, (1..k).map(|i| (i - 1, i)))
    }

    /// `P_4` on `u1, u2, u3, u4`.
    pub fn p4() -> Self {
        TraceGraph::path(Alphabet::new(["u1", "u2", "u3", "u4"]).expect("static names"))
    }

    pub fn vertices(&self) -> &Alphabet {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(u32, u32)> {
        &self.edges
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Unordered pairs of distinct vertices that are not adjacent.
    pub fn non_edges(&self) -> Vec<(u32, u32)> {
        let n = self.vertices.len() as u32;
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.adjacent(a, b))
            .collect()
    }

    pub fn describe(&self) -> String {
        let v = &self.vertices;
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| alloc::format!("{}-{}", v.name(a), v.name(b)))
            .collect();
        parts.join(" ")
    }
}

/// The shortlex-least word in the trace class of the positive word `w`.
///
/// Built greedily: at each step take the smallest letter that can be moved
/// to the front, i.e. whose first remaining occurrence commutes with every
/// letter before it.
pub fn foata_normal_form(g: &TraceGraph, w: &Word) -> Word {
    debug_assert!(w.is_positive());
    let mut rest: Vec<Symbol> = w.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let s = rest[i];
            if best.is_some_and(|b| rest[b] <= s) {
                continue;
            }
            if rest[..i]
                .iter()
                .all(|p| p.gen != s.gen && g.adjacent(p.gen, s.gen))
            {
                best = Some(i);
            }
        }
        let i = best.expect("the first letter is always movable");
        out.push(rest.remove(i));
    }
    Word::from_symbols(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::VecDeque;
    use proptest::prelude::*;

    /// Closure of `w` under swapping adjacent commuting letters.
    fn swap_class(g: &TraceGraph, w: &Word) -> BTreeSet<Word> {
        let mut seen = BTreeSet::from([w.clone()]);
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(u) = queue.pop_front() {
            for i in 1..u.len() {
                if u[i - 1].gen != u[i].gen && g.adjacent(u[i - 1].gen, u[i].gen) {
                    let mut v = u.to_vec();
                    v.swap(i - 1, i);
                    let v = Word::from_symbols(v);
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    fn u(idx: &[u32]) -> Word {
        Word::from_gens(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    #[test]
    fn examples() {
        let g = TraceGraph::p4();
        assert_eq!(foata_normal_form(&g, &u(&[2, 1])), u(&[1, 2]));
        assert_eq!(foata_normal_form(&g, &u(&[3, 1])), u(&[3, 1]));
        assert_eq!(foata_normal_form(&g, &u(&[4, 3, 2])), u(&[3, 4, 2]));
        assert_eq!(
            swap_class(&g, &u(&[4, 3, 2])),
            BTreeSet::from([u(&[4, 3, 2]), u(&[3, 4, 2]), u(&[4, 2, 3])])
        );
        assert_eq!(g.non_edges(), [(0, 2), (0, 3), (1, 3)]);
        assert_eq!(g.describe(), "u1-u2 u2-u3 u3-u4");
    }

    #[test]
    fn exhaustive_classes_up_to_six() {
        let g = TraceGraph::p4();
        let mut words = alloc::vec![Word::empty()];
        for _ in 0..6 {
            words = words
                .iter()
                .flat_map(|w| (0..4).map(move |x| w.concat(&Word::letter(x))))
                .collect();
            for w in &words {
                let class = swap_class(&g, w);
                let nf = foata_normal_form(&g, w);
                assert_eq!(&nf, class.first().unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn idempotent_class_invariant(gens in prop::collection::vec(0u32..5, 0..10),
                                      edges in prop::collection::btree_set((0u32..5, 0u32..5), 0..8)) {
            let g = TraceGraph::new(Alphabet::new(["a", "b", "c", "d", "e"]).unwrap(), edges);
            let w = Word::from_gens(&gens);
            let nf = foata_normal_form(&g, &w);
            prop_assert_eq!(foata_normal_form(&g, &nf), nf.clone());
            let class = swap_class(&g, &w);
            prop_assert_eq!(class.first().unwrap(), &nf);
            for v in class.iter().take(20) {
                prop_assert_eq!(&foata_normal_form(&g, v), &nf);
            }
        }
    }
}
