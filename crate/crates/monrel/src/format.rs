//! Line-oriented text formats for presentations, rewriting systems,
//! automata, homomorphisms and encoder inputs, plus DOT output.
//!
//! Every format is a sequence of `key: value` lines. Blank lines and lines
//! starting with `#` are ignored. Words are whitespace-separated tokens,
//! `name^-1` is an inverse symbol and `1` is the empty word.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use monrel_core::automata::Fsa;
use monrel_core::encoder::EncodingInput;
use monrel_core::rewrite::{RewriteError, RewriteSystem, Rule};
use monrel_core::transform::{Homomorphism, TransformError};
use monrel_core::{Alphabet, Kind, Presentation, Relation, Symbol, Word, WordError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Word {
        line: usize,
        #[source]
        source: WordError,
    },
    #[error("line {line}: inverse symbol in a monoid relation")]
    NegativeInMonoid { line: usize },
    #[error("line {line}: {source}")]
    Rewrite {
        line: usize,
        #[source]
        source: RewriteError,
    },
    #[error("missing `{0}:` line")]
    Missing(&'static str),
    #[error(transparent)]
    Map(#[from] TransformError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// A non-comment line split at its first colon.
#[derive(Clone, Copy, Debug)]
struct Item<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

fn items(text: &str) -> Result<Vec<Item<'_>>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (key, value) = t
            .split_once(':')
            .ok_or_else(|| syntax(i + 1, format!("expected `key: value`, got {t:?}")))?;
        out.push(Item {
            line: i + 1,
            key: key.trim(),
            value: value.trim(),
        });
    }
    Ok(out)
}

fn word_at(alphabet: &Alphabet, text: &str, line: usize) -> Result<Word, FormatError> {
    alphabet
        .parse_word(text)
        .map_err(|source| FormatError::Word { line, source })
}

fn split_pair<'a>(item: &Item<'a>, sep: &str) -> Result<(&'a str, &'a str), FormatError> {
    item.value
        .split_once(sep)
        .map(|(l, r)| (l.trim(), r.trim()))
        .ok_or_else(|| syntax(item.line, format!("expected `<word> {sep} <word>`")))
}

fn parse_gens(item: &Item<'_>) -> Result<Alphabet, FormatError> {
    Alphabet::new(item.value.split_whitespace()).map_err(|source| FormatError::Word {
        line: item.line,
        source,
    })
}

fn expect_key<'a>(
    it: &mut std::iter::Peekable<impl Iterator<Item = Item<'a>>>,
    key: &'static str,
) -> Result<Item<'a>, FormatError> {
    match it.next() {
        Some(item) if item.key == key => Ok(item),
        Some(item) => Err(syntax(
            item.line,
            format!("expected `{key}:`, found `{}:`", item.key),
        )),
        None => Err(FormatError::Missing(key)),
    }
}

/// Parses a presentation block from its items. Unrecognized keys end the
/// block and are left in the iterator.
fn presentation_from<'a>(
    it: &mut std::iter::Peekable<impl Iterator<Item = Item<'a>>>,
) -> Result<Presentation, FormatError> {
    let kind_item = expect_key(it, "kind")?;
    let kind = Kind::parse(kind_item.value).ok_or_else(|| {
        syntax(
            kind_item.line,
            format!("unknown kind {:?}", kind_item.value),
        )
    })?;
    let alphabet = parse_gens(&expect_key(it, "gens")?)?;
    let mut relations = Vec::new();
    while let Some(item) = it.next_if(|i| i.key == "rel") {
        let (l, r) = split_pair(&item, "=")?;
        let rel = Relation::new(
            word_at(&alphabet, l, item.line)?,
            word_at(&alphabet, r, item.line)?,
        );
        if kind == Kind::Monoid && !(rel.lhs.is_positive() && rel.rhs.is_positive()) {
            return Err(FormatError::NegativeInMonoid { line: item.line });
        }
        relations.push(rel);
    }
    Ok(Presentation::new(kind, alphabet, relations).expect("relations validated while parsing"))
}

fn no_trailing<'a>(mut it: impl Iterator<Item = Item<'a>>) -> Result<(), FormatError> {
    match it.next() {
        Some(item) => Err(syntax(
            item.line,
            format!("unexpected `{}:` line", item.key),
        )),
        None => Ok(()),
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut it = items(text)?.into_iter().peekable();
    let p = presentation_from(&mut it)?;
    no_trailing(it)?;
    Ok(p)
}

pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = format!("kind: {}\ngens: {}\n", p.kind, p.alphabet.names().join(" "));
    for r in &p.relations {
        let _ = writeln!(
            out,
            "rel: {} = {}",
            p.alphabet.format(&r.lhs),
            p.alphabet.format(&r.rhs)
        );
    }
    out
}

/// `kind: rewriting`, `gens:`, then one `rule: <lhs> -> <rhs>` per rule.
pub fn parse_rewriting(text: &str) -> Result<RewriteSystem, FormatError> {
    let mut it = items(text)?.into_iter().peekable();
    let kind = expect_key(&mut it, "kind")?;
    if kind.value != "rewriting" {
        return Err(syntax(kind.line, "expected `kind: rewriting`"));
    }
    let alphabet = parse_gens(&expect_key(&mut it, "gens")?)?;
    let mut rules = Vec::new();
    let mut lines = Vec::new();
    while let Some(item) = it.next_if(|i| i.key == "rule") {
        let (l, r) = split_pair(&item, "->")?;
        rules.push(Rule::new(
            word_at(&alphabet, l, item.line)?,
            word_at(&alphabet, r, item.line)?,
        ));
        lines.push(item.line);
    }
    no_trailing(it)?;
    RewriteSystem::new(alphabet, rules).map_err(|source| {
        let index = match &source {
            RewriteError::EmptyLhs { index }
            | RewriteError::NotPositive { index }
            | RewriteError::ForeignSymbol { index }
            | RewriteError::NotDecreasing { index } => Some(*index),
            _ => None,
        };
        FormatError::Rewrite {
            line: index.map_or(0, |i| lines[i]),
            source,
        }
    })
}

pub fn serialize_rewriting(rs: &RewriteSystem) -> String {
    let al = rs.alphabet();
    let mut out = format!("kind: rewriting\ngens: {}\n", al.names().join(" "));
    for r in rs.rules() {
        let _ = writeln!(out, "rule: {} -> {}", al.format(&r.lhs), al.format(&r.rhs));
    }
    out
}

/// An automaton together with the names of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonFile {
    pub alphabet: Alphabet,
    pub fsa: Fsa,
}

fn symbol_token(al: &Alphabet, s: Symbol) -> String {
    al.format(&Word::symbol(s))
}

fn parse_symbol(
    al: &mut Alphabet,
    tok: &str,
    line: usize,
    fixed: bool,
) -> Result<Symbol, FormatError> {
    let (base, inv) = match tok.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (tok, false),
    };
    let gen = match al.index_of(base) {
        Some(g) => g,
        None if fixed => {
            return Err(FormatError::Word {
                line,
                source: WordError::UnknownGenerator(base.to_string()),
            })
        }
        None => al
            .push(base.to_string())
            .map_err(|source| FormatError::Word { line, source })?,
    };
    Ok(Symbol { gen, inv })
}

fn parse_states(item: &Item<'_>, n: usize) -> Result<Vec<usize>, FormatError> {
    item.value
        .split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(q) if q < n => Ok(q),
            _ => Err(syntax(item.line, format!("bad state {t:?}"))),
        })
        .collect()
}

/// Lines: optional `gens:` and `letters:`, then `states: n`, `initial:`,
/// `final:`, and `trans: p <sym> q` edges with `eps` for ε-moves.
///
/// Without `gens:`, generator names are collected in order of first use.
/// Without `letters:`, the alphabet is the set of symbols on edges.
pub fn parse_automaton(text: &str) -> Result<AutomatonFile, FormatError> {
    let mut it = items(text)?.into_iter().peekable();
    let fixed = it.peek().is_some_and(|i| i.key == "gens");
    let mut alphabet = match it.next_if(|i| i.key == "gens") {
        Some(item) => parse_gens(&item)?,
        None => Alphabet::default(),
    };
    let mut letters = BTreeSet::new();
    if let Some(item) = it.next_if(|i| i.key == "letters") {
        for tok in item.value.split_whitespace() {
            letters.insert(parse_symbol(&mut alphabet, tok, item.line, fixed)?);
        }
    }
    let states = expect_key(&mut it, "states")?;
    let n: usize = states
        .value
        .parse()
        .map_err(|_| syntax(states.line, format!("bad state count {:?}", states.value)))?;
    let initial = parse_states(&expect_key(&mut it, "initial")?, n)?;
    let finals = parse_states(&expect_key(&mut it, "final")?, n)?;
    let mut edges = Vec::new();
    while let Some(item) = it.next_if(|i| i.key == "trans") {
        let toks: Vec<&str> = item.value.split_whitespace().collect();
        let [p, sym, q] = toks[..] else {
            return Err(syntax(item.line, "expected `trans: <from> <symbol> <to>`"));
        };
        let [p, q] = [p, q].map(|s| s.parse::<usize>().ok().filter(|&x| x < n));
        let (Some(p), Some(q)) = (p, q) else {
            return Err(syntax(item.line, "state out of range"));
        };
        let label = if sym == "eps" {
            None
        } else {
            Some(parse_symbol(&mut alphabet, sym, item.line, fixed)?)
        };
        edges.push((p, label, q));
    }
    no_trailing(it)?;
    let mut fsa = Fsa::new(letters, n);
    for (p, label, q) in edges {
        fsa.add_transition(p, label, q);
    }
    initial.into_iter().for_each(|q| fsa.set_initial(q));
    finals.into_iter().for_each(|q| fsa.set_final(q));
    Ok(AutomatonFile { alphabet, fsa })
}

fn state_list(set: &BTreeSet<usize>) -> String {
    set.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn line(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

pub fn serialize_automaton(a: &AutomatonFile) -> String {
    let al = &a.alphabet;
    let f = &a.fsa;
    let mut out = String::new();
    line(&mut out, "gens", &al.names().join(" "));
    let letters: Vec<String> = f.alphabet().iter().map(|&s| symbol_token(al, s)).collect();
    line(&mut out, "letters", &letters.join(" "));
    let _ = writeln!(out, "states: {}", f.num_states());
    line(&mut out, "initial", &state_list(f.initial()));
    line(&mut out, "final", &state_list(f.finals()));
    for &(p, label, q) in f.transitions() {
        let sym = label.map_or_else(|| String::from("eps"), |s| symbol_token(al, s));
        let _ = writeln!(out, "trans: {p} {sym} {q}");
    }
    out
}

/// Graphviz text; final states are double circles and an invisible node
/// points at each initial state.
pub fn automaton_dot(a: &AutomatonFile) -> String {
    let f = &a.fsa;
    let mut out = String::from("digraph fsa {\n  rankdir=LR;\n");
    for q in 0..f.num_states() {
        let shape = if f.finals().contains(&q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{q}\"];");
    }
    for &q in f.initial() {
        let _ = writeln!(out, "  start{q} [shape=point];\n  start{q} -> q{q};");
    }
    for &(p, label, q) in f.transitions() {
        let sym = label.map_or_else(|| String::from("ε"), |s| symbol_token(&a.alphabet, s));
        let _ = writeln!(out, "  q{p} -> q{q} [label=\"{sym}\"];");
    }
    out.push_str("}\n");
    out
}

/// A source presentation block, `map: g -> <word>` lines, then a target
/// presentation block.
pub fn parse_homomorphism(text: &str) -> Result<Homomorphism, FormatError> {
    let all = items(text)?;
    let split = all
        .iter()
        .enumerate()
        .filter(|(_, i)| i.key == "kind")
        .nth(1)
        .map(|(k, _)| k)
        .ok_or(FormatError::Missing("kind"))?;
    let (head, tail) = all.split_at(split);
    let mut it = head.iter().copied().peekable();
    let source = presentation_from(&mut it)?;
    let maps: Vec<Item<'_>> = it.collect();
    let mut it = tail.iter().copied().peekable();
    let target = presentation_from(&mut it)?;
    no_trailing(it)?;

    let mut images: Vec<Option<Word>> = vec![None; source.num_gens()];
    for item in &maps {
        if item.key != "map" {
            return Err(syntax(
                item.line,
                format!("unexpected `{}:` line", item.key),
            ));
        }
        let (g, img) = split_pair(item, "->")?;
        let gen = source.alphabet.gen(g).map_err(|source| FormatError::Word {
            line: item.line,
            source,
        })?;
        if images[gen as usize].is_some() {
            return Err(syntax(item.line, format!("generator {g} mapped twice")));
        }
        images[gen as usize] = Some(word_at(&target.alphabet, img, item.line)?);
    }
    if let Some(g) = images.iter().position(Option::is_none) {
        return Err(FormatError::Map(TransformError::UnknownGenerator(format!(
            "no image for {}",
            source.alphabet.name(g as u32)
        ))));
    }
    let images = images.into_iter().map(Option::unwrap).collect();
    Ok(Homomorphism::new(source, target, images)?)
}

pub fn serialize_homomorphism(h: &Homomorphism) -> String {
    let mut out = serialize_presentation(&h.source);
    for (g, img) in h.images().iter().enumerate() {
        let _ = writeln!(
            out,
            "map: {} -> {}",
            h.source.alphabet.name(g as u32),
            h.target.alphabet.format(img)
        );
    }
    out.push_str(&serialize_presentation(&h.target));
    out
}

/// Input to the two-relator encoding: a group block with the single
/// relation `q = 1`, then `word:` lines and optionally one `inverse:` line
/// per word (same order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingFile {
    pub group: Presentation,
    pub input: EncodingInput,
    /// False when no `inverse:` lines were given.
    pub has_inverses: bool,
}

pub fn parse_encoding_input(text: &str) -> Result<EncodingFile, FormatError> {
    let all = items(text)?;
    let mut it = all.iter().copied().peekable();
    let group = presentation_from(&mut it)?;
    let rel_line = all.iter().find(|i| i.key == "rel").map_or(0, |i| i.line);
    let q = match &group.relations[..] {
        [r] if r.rhs.is_empty() && r.lhs.is_positive() && !r.lhs.is_empty() => r.lhs.clone(),
        _ => {
            return Err(syntax(
                rel_line,
                "expected exactly one relation `rel: <positive word> = 1`",
            ))
        }
    };
    let mut words = Vec::new();
    let mut inverses = Vec::new();
    for item in it {
        let w = word_at(&group.alphabet, item.value, item.line)?;
        match item.key {
            "word" => words.push(w),
            "inverse" => inverses.push(w),
            other => return Err(syntax(item.line, format!("unexpected `{other}:` line"))),
        }
    }
    let has_inverses = !inverses.is_empty();
    Ok(EncodingFile {
        input: EncodingInput {
            alphabet: group.alphabet.clone(),
            q,
            words,
            inverses,
        },
        group,
        has_inverses,
    })
}

pub fn serialize_encoding_input(f: &EncodingFile) -> String {
    let al = &f.input.alphabet;
    let mut out = serialize_presentation(&f.group);
    for w in &f.input.words {
        let _ = writeln!(out, "word: {}", al.format(w));
    }
    for w in &f.input.inverses {
        let _ = writeln!(out, "inverse: {}", al.format(w));
    }
    out
}
