//! Nondeterministic finite automata with ε-moves, used as rational subsets
//! of free monoids.

mod membership;
mod phi;

pub use membership::{rational_membership, Membership, MembershipMode};
pub use phi::{build_qbar, omega_language, phi_transform, phi_word, LetterWordTable, PhiError};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::word::{Symbol, Word};

/// Edge label; `None` is an ε-move.
pub type Label = Option<Symbol>;

/// Images of single symbols under a monoid homomorphism.
pub type SymbolMap = BTreeMap<Symbol, Word>;

pub type StateSet = BTreeSet<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fsa {
    alphabet: BTreeSet<Symbol>,
    num_states: usize,
    transitions: BTreeSet<(usize, Label, usize)>,
    initial: StateSet,
    finals: StateSet,
}

impl Fsa {
    /// An automaton with `num_states` states and no edges.
    pub fn new<I: IntoIterator<Item = Symbol>>(alphabet: I, num_states: usize) -> Self {
        Fsa {
            alphabet: alphabet.into_iter().collect(),
            num_states,
            ..Fsa::default()
        }
    }

    /// The empty language.
    pub fn empty_language<I: IntoIterator<Item = Symbol>>(alphabet: I) -> Self {
        Fsa::new(alphabet, 0)
    }

    /// `{ε}`.
    pub fn epsilon<I: IntoIterator<Item = Symbol>>(alphabet: I) -> Self {
        let mut f = Fsa::new(alphabet, 1);
        f.initial.insert(0);
        f.finals.insert(0);
        f
    }

    /// `{w}`.
    pub fn literal(w: &Word) -> Self {
        let mut f = Fsa::new(w.iter().copied(), w.len() + 1);
        for (i, &s) in w.iter().enumerate() {
            f.transitions.insert((i, Some(s), i + 1));
        }
        f.initial.insert(0);
        f.finals.insert(w.len());
        f
    }

    /// A finite language.
    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Self {
        words
            .into_iter()
            .map(Fsa::literal)
            .fold(None, |acc: Option<Fsa>, f| {
                Some(match acc {
                    None => f,
                    Some(a) => a.union(&f),
                })
            })
            .unwrap_or_default()
    }

    /// All words over `alphabet`.
    pub fn universal<I: IntoIterator<Item = Symbol>>(alphabet: I) -> Self {
        let mut f = Fsa::epsilon(alphabet);
        let letters: Vec<Symbol> = f.alphabet.iter().copied().collect();
        for s in letters {
            f.transitions.insert((0, Some(s), 0));
        }
        f
    }

    pub fn add_state(&mut self) -> usize {
        self.num_states += 1;
        self.num_states - 1
    }

    pub fn add_transition(&mut self, from: usize, label: Label, to: usize) {
        assert!(
            from < self.num_states && to < self.num_states,
            "state out of range"
        );
        if let Some(s) = label {
            self.alphabet.insert(s);
        }
        self.transitions.insert((from, label, to));
    }

    pub fn set_initial(&mut self, q: usize) {
        assert!(q < self.num_states, "state out of range");
        self.initial.insert(q);
    }

    pub fn set_final(&mut self, q: usize) {
        assert!(q < self.num_states, "state out of range");
        self.finals.insert(q);
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn transitions(&self) -> &BTreeSet<(usize, Label, usize)> {
        &self.transitions
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn finals(&self) -> &StateSet {
        &self.finals
    }

    /// Adds letters to the declared alphabet without changing the language.
    pub fn with_alphabet<I: IntoIterator<Item = Symbol>>(mut self, extra: I) -> Self {
        self.alphabet.extend(extra);
        self
    }

    fn adjacency(&self) -> Vec<Vec<(Label, usize)>> {
        let mut adj = vec![Vec::new(); self.num_states];
        for &(p, l, q) in &self.transitions {
            adj[p].push((l, q));
        }
        adj
    }

    fn closure_with(adj: &[Vec<(Label, usize)>], set: &StateSet) -> StateSet {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(l, q) in &adj[p] {
                if l.is_none() && out.insert(q) {
                    stack.push(q);
                }
            }
        }
        out
    }

    fn step_with(adj: &[Vec<(Label, usize)>], set: &StateSet, s: Symbol) -> StateSet {
        let mut next = StateSet::new();
        for &p in set {
            for &(l, q) in &adj[p] {
                if l == Some(s) {
                    next.insert(q);
                }
            }
        }
        Fsa::closure_with(adj, &next)
    }

    pub fn epsilon_closure(&self, set: &StateSet) -> StateSet {
        Fsa::closure_with(&self.adjacency(), set)
    }

    /// States reachable from `set` by reading `w`, closed under ε.
    pub fn run(&self, set: &StateSet, w: &Word) -> StateSet {
        let adj = self.adjacency();
        let mut cur = Fsa::closure_with(&adj, set);
        for &s in w.iter() {
            if cur.is_empty() {
                break;
            }
            cur = Fsa::step_with(&adj, &cur, s);
        }
        cur
    }

    pub fn accepts(&self, w: &Word) -> bool {
        !self.run(&self.initial, w).is_disjoint(&self.finals)
    }

    /// Copies `other` into `self` with shifted state numbers; returns the shift.
    fn absorb(&mut self, other: &Fsa) -> usize {
        let off = self.num_states;
        self.num_states += other.num_states;
        self.alphabet.extend(other.alphabet.iter().copied());
        for &(p, l, q) in &other.transitions {
            self.transitions.insert((p + off, l, q + off));
        }
        off
    }

    pub fn union(&self, other: &Fsa) -> Fsa {
        let mut f = self.clone();
        let off = f.absorb(other);
        f.initial.extend(other.initial.iter().map(|q| q + off));
        f.finals.extend(other.finals.iter().map(|q| q + off));
        f
    }

    pub fn concat(&self, other: &Fsa) -> Fsa {
        let mut f = self.clone();
        let off = f.absorb(other);
        for &p in &self.finals {
            for &q in &other.initial {
                f.transitions.insert((p, None, q + off));
            }
        }
        f.finals = other.finals.iter().map(|q| q + off).collect();
        f
    }

    /// Kleene star.
    pub fn star(&self) -> Fsa {
        let mut f = self.clone();
        let hub = f.add_state();
        for &q in &self.initial {
            f.transitions.insert((hub, None, q));
        }
        for &q in &self.finals {
            f.transitions.insert((q, None, hub));
        }
        f.initial = [hub].into();
        f.finals = [hub].into();
        f
    }

    /// `L L*`.
    pub fn plus(&self) -> Fsa {
        self.concat(&self.star())
    }

    pub fn reverse(&self) -> Fsa {
        Fsa {
            alphabet: self.alphabet.clone(),
            num_states: self.num_states,
            transitions: self
                .transitions
                .iter()
                .map(|&(p, l, q)| (q, l, p))
                .collect(),
            initial: self.finals.clone(),
            finals: self.initial.clone(),
        }
    }

    /// `h(L)`; each edge is replaced by a path spelling the image of its
    /// label. Symbols missing from `h` map to themselves.
    pub fn hom_image(&self, h: &SymbolMap) -> Fsa {
        let mut f = Fsa::new([], self.num_states);
        f.initial = self.initial.clone();
        f.finals = self.finals.clone();
        for a in &self.alphabet {
            match h.get(a) {
                Some(img) => f.alphabet.extend(img.iter().copied()),
                None => {
                    f.alphabet.insert(*a);
                }
            }
        }
        for &(p, l, q) in &self.transitions {
            let img = match l {
                None => Word::empty(),
                Some(s) => h.get(&s).cloned().unwrap_or_else(|| Word::symbol(s)),
            };
            if img.is_empty() {
                f.transitions.insert((p, None, q));
                continue;
            }
            let mut cur = p;
            for (i, &s) in img.iter().enumerate() {
                let next = if i + 1 == img.len() { q } else { f.add_state() };
                f.transitions.insert((cur, Some(s), next));
                cur = next;
            }
        }
        f
    }

    /// `h^-1(L)` for `h` defined on `domain`.
    pub fn inverse_hom_image(&self, h: &SymbolMap, domain: &[Symbol]) -> Fsa {
        let adj = self.adjacency();
        let mut f = Fsa::new(domain.iter().copied(), self.num_states);
        f.initial = Fsa::closure_with(&adj, &self.initial);
        f.finals = self.finals.clone();
        for p in 0..self.num_states {
            let start = Fsa::closure_with(&adj, &[p].into());
            for &c in domain {
                let img = h.get(&c).expect("homomorphism defined on its domain");
                let mut cur = start.clone();
                for &s in img.iter() {
                    cur = Fsa::step_with(&adj, &cur, s);
                }
                for q in cur {
                    f.transitions.insert((p, Some(c), q));
                }
            }
        }
        f
    }

    /// `{w : sym·w ∈ L}` (left) or `{w : w·sym ∈ L}` (right).
    pub fn letter_quotient(&self, side: Side, sym: Symbol) -> Fsa {
        match side {
            Side::Left => {
                let mut f = self.clone();
                f.initial = self.run(&self.initial, &Word::symbol(sym));
                f
            }
            Side::Right => self.reverse().letter_quotient(Side::Left, sym).reverse(),
        }
    }

    /// An equivalent automaton without ε-moves.
    pub fn remove_epsilon(&self) -> Fsa {
        let adj = self.adjacency();
        let closures: Vec<StateSet> = (0..self.num_states)
            .map(|p| Fsa::closure_with(&adj, &[p].into()))
            .collect();
        let mut f = Fsa::new(self.alphabet.iter().copied(), self.num_states);
        f.initial = self.initial.clone();
        for (p, closure) in closures.iter().enumerate() {
            if !closure.is_disjoint(&self.finals) {
                f.finals.insert(p);
            }
            for &r in closure {
                for &(l, q) in &adj[r] {
                    if let Some(s) = l {
                        f.transitions.insert((p, Some(s), q));
                    }
                }
            }
        }
        f
    }

    /// Product automaton for `L(self) ∩ L(other)`.
    pub fn intersection(&self, other: &Fsa) -> Fsa {
        let a = self.remove_epsilon();
        let b = other.remove_epsilon();
        let (adj_a, adj_b) = (a.adjacency(), b.adjacency());
        let mut ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut f = Fsa::new(self.alphabet.intersection(&other.alphabet).copied(), 0);
        let mut queue = VecDeque::new();
        for &p in &a.initial {
            for &q in &b.initial {
                let id = f.add_state();
                ids.insert((p, q), id);
                f.initial.insert(id);
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let id = ids[&(p, q)];
            if a.finals.contains(&p) && b.finals.contains(&q) {
                f.finals.insert(id);
            }
            for &(la, p2) in &adj_a[p] {
                for &(lb, q2) in &adj_b[q] {
                    if la != lb {
                        continue;
                    }
                    let next = match ids.get(&(p2, q2)) {
                        Some(&n) => n,
                        None => {
                            let n = f.add_state();
                            ids.insert((p2, q2), n);
                            queue.push_back((p2, q2));
                            n
                        }
                    };
                    f.transitions.insert((id, la, next));
                }
            }
        }
        f
    }

    /// States from which a final state is reachable.
    fn coreachable(&self) -> StateSet {
        let mut back: Vec<Vec<usize>> = vec![Vec::new(); self.num_states];
        for &(p, _, q) in &self.transitions {
            back[q].push(p);
        }
        let mut out = self.finals.clone();
        let mut stack: Vec<usize> = out.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &p in &back[q] {
                if out.insert(p) {
                    stack.push(p);
                }
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        let co = self.coreachable();
        self.epsilon_closure(&self.initial).is_disjoint(&co)
    }

    /// A shortest accepted word, shortlex-least among those.
    pub fn shortest_word(&self) -> Option<Word> {
        let adj = self.adjacency();
        let letters: Vec<Symbol> = self.alphabet.iter().copied().collect();
        let start = Fsa::closure_with(&adj, &self.initial);
        let mut seen: BTreeSet<StateSet> = BTreeSet::new();
        let mut queue = VecDeque::from([(start.clone(), Word::empty())]);
        seen.insert(start);
        while let Some((set, w)) = queue.pop_front() {
            if !set.is_disjoint(&self.finals) {
                return Some(w);
            }
            for &s in &letters {
                let next = Fsa::step_with(&adj, &set, s);
                if !next.is_empty() && seen.insert(next.clone()) {
                    let mut w2 = w.clone();
                    w2.push(s);
                    queue.push_back((next, w2));
                }
            }
        }
        None
    }

    /// Every accepted word of length at most `max_len`.
    pub fn enumerate(&self, max_len: usize) -> BTreeSet<Word> {
        let adj = self.adjacency();
        let co = self.coreachable();
        let letters: Vec<Symbol> = self.alphabet.iter().copied().collect();
        let mut out = BTreeSet::new();
        let mut stack = vec![(Fsa::closure_with(&adj, &self.initial), Word::empty())];
        while let Some((set, w)) = stack.pop() {
            if !set.is_disjoint(&self.finals) {
                out.insert(w.clone());
            }
            if w.len() == max_len {
                continue;
            }
            for &s in &letters {
                let next = Fsa::step_with(&adj, &set, s);
                if !next.is_disjoint(&co) {
                    let mut w2 = w.clone();
                    w2.push(s);
                    stack.push((next, w2));
                }
            }
        }
        out
    }

    /// Is the language finite? Decided on the trimmed ε-free automaton by
    /// looking for a cycle.
    pub fn is_finite(&self) -> bool {
        let f = self.remove_epsilon();
        let adj = f.adjacency();
        let co = f.coreachable();
        let reach = {
            let mut r = f.initial.clone();
            let mut stack: Vec<usize> = r.iter().copied().collect();
            while let Some(p) = stack.pop() {
                for &(_, q) in &adj[p] {
                    if r.insert(q) {
                        stack.push(q);
                    }
                }
            }
            r
        };
        let useful: StateSet = reach.intersection(&co).copied().collect();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; f.num_states];
        for &s in &useful {
            if color[s] != 0 {
                continue;
            }
            let mut stack = vec![(s, 0usize)];
            color[s] = 1;
            while let Some(&mut (p, ref mut i)) = stack.last_mut() {
                if *i < adj[p].len() {
                    let q = adj[p][*i].1;
                    *i += 1;
                    if !useful.contains(&q) {
                        continue;
                    }
                    match color[q] {
                        0 => {
                            color[q] = 1;
                            stack.push((q, 0));
                        }
                        1 => return false,
                        _ => {}
                    }
                } else {
                    color[p] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// `None` if the languages agree, otherwise a shortest word accepted
    /// by exactly one of the two automata.
    pub fn difference_witness(&self, other: &Fsa) -> Option<Word> {
        let (adj_a, adj_b) = (self.adjacency(), other.adjacency());
        let letters: Vec<Symbol> = self.alphabet.union(&other.alphabet).copied().collect();
        let start = (
            Fsa::closure_with(&adj_a, &self.initial),
            Fsa::closure_with(&adj_b, &other.initial),
        );
        let mut seen = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([(start, Word::empty())]);
        while let Some(((x, y), w)) = queue.pop_front() {
            let fx = !x.is_disjoint(&self.finals);
            let fy = !y.is_disjoint(&other.finals);
            if fx != fy {
                return Some(w);
            }
            for &s in &letters {
                let next = (Fsa::step_with(&adj_a, &x, s), Fsa::step_with(&adj_b, &y, s));
                if seen.insert(next.clone()) {
                    let mut w2 = w.clone();
                    w2.push(s);
                    queue.push_back((next, w2));
                }
            }
        }
        None
    }

    pub fn language_equal(&self, other: &Fsa) -> bool {
        self.difference_witness(other).is_none()
    }
}
