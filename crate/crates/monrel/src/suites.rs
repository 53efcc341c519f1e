//! Verification suites run by `monrel verify`. Each returns a report with
//! one line per assertion; every line carries the words needed to recheck
//! it by hand.

use std::collections::BTreeSet;

use monrel_core::automata::{omega_language, phi_transform, phi_word, Fsa, LetterWordTable};
use monrel_core::families::{
    a_ba_words, a_p4, bounded_injectivity, bqa, bs_retraction, commutator, fcrs_complete, g_mn,
    h_group, k_names, k_target, l_witness_search, p4_commutation_report, p4_group_witnesses,
    p4_trace_witnesses,
};
use monrel_core::hnn::{check_bs12_homomorphism, verify_trace_submonoid};
use monrel_core::report::{Report, Status};
use monrel_core::rewrite::{
    critical_pairs, fcrs, knuth_bendix, local_confluence, Completion, CompletionLimits,
    OverlapKind, RewriteSystem, Rule,
};
use monrel_core::transform::{
    abelianization, check_homomorphism, check_retraction, positivize_gmn, reidemeister_schreier,
    HomMethod, HomVerdict,
};
use monrel_core::{Alphabet, Symbol, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bounds shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub ball: usize,
    pub depth: usize,
    pub budget: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            ball: 4,
            depth: 16,
            budget: 1_000_000,
            seed: 1,
        }
    }
}

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("static names")
}

fn rule_set(rs: &RewriteSystem) -> BTreeSet<Rule> {
    rs.rules().iter().cloned().collect()
}

/// Completion from the single defining rule of `R_{m,n}`, then local
/// confluence of the result and the shape of the critical pairs on the
/// first rule.
pub fn fcrs_suite(m: usize, n: usize, bounds: Bounds) -> Report {
    let mut report = Report::new(format!("fcrs({m},{n})"));
    let al = ab();
    let start = RewriteSystem::new(al.clone(), vec![Rule::new(bqa(m, n), Word::letter(0))])
        .expect("bQa is shortlex-greater than a");
    let limits = CompletionLimits {
        step_budget: bounds.budget,
        ..CompletionLimits::default()
    };
    let expected = fcrs(m, n);
    match knuth_bendix(&start, limits) {
        Completion::Completed(done) => {
            let same = rule_set(&done) == rule_set(&expected);
            let extra: Vec<String> = rule_set(&done)
                .symmetric_difference(&rule_set(&expected))
                .map(|r| {
                    format!(
                        "{} -> {}",
                        al.format_compact(&r.lhs),
                        al.format_compact(&r.rhs)
                    )
                })
                .collect();
            let detail = if same {
                format!("{} rules", done.rules().len())
            } else {
                format!(
                    "{} rules, differing: {}",
                    done.rules().len(),
                    extra.join(", ")
                )
            };
            report.check("completion", same, detail);
        }
        Completion::Exhausted { partial, reason } => {
            report.push(
                "completion",
                Status::Unknown,
                format!("{reason:?} with {} rules", partial.rules().len()),
            );
        }
    }

    let pairs = critical_pairs(&expected);
    let verdict = local_confluence(&expected, bounds.budget);
    let detail = match &verdict {
        monrel_core::rewrite::ConfluenceVerdict::Confluent => {
            format!("{} critical pairs joinable", pairs.len())
        }
        monrel_core::rewrite::ConfluenceVerdict::Counterexample {
            pair,
            left_nf,
            right_nf,
        } => format!(
            "source {} gives {} and {}",
            al.format_compact(&pair.source),
            al.format_compact(left_nf),
            al.format_compact(right_nf)
        ),
        monrel_core::rewrite::ConfluenceVerdict::BudgetExceeded { pair } => {
            format!("budget exceeded on {}", al.format_compact(&pair.source))
        }
    };
    match verdict {
        monrel_core::rewrite::ConfluenceVerdict::BudgetExceeded { .. } => {
            report.push("confluence", Status::Unknown, detail)
        }
        v => report.check("confluence", v.is_confluent(), detail),
    }

    // Overlaps of the first rule with any rule: the overlap is (ba^n)^j ba
    // and the first-rule descendant a·v is already the common normal form.
    let mut bad = None;
    let mut count = 0;
    for cp in pairs
        .iter()
        .filter(|c| c.first == 0 && c.kind == OverlapKind::Overlap)
    {
        count += 1;
        let shape = (0..m).any(|j| {
            cp.s == Word::from_gens(&[1])
                .concat(&Word::letter(0).pow(n))
                .pow(j)
                .concat(&Word::from_gens(&[1, 0]))
        });
        let joined = expected.normal_form_within(&cp.right, bounds.budget).ok();
        let ok = shape
            && cp.left == Word::letter(0).concat(&cp.v)
            && expected.is_irreducible(&cp.left)
            && joined.as_ref() == Some(&cp.left);
        if !ok && bad.is_none() {
            bad = Some(format!(
                "rules (0,{}) overlap {}: {} vs {}",
                cp.second,
                al.format_compact(&cp.s),
                al.format_compact(&cp.left),
                al.format_compact(&cp.right)
            ));
        }
    }
    report.check(
        "first-rule-pairs",
        bad.is_none() && count > 0,
        bad.unwrap_or_else(|| format!("{count} overlaps, each joins at a·v")),
    );
    report
}

/// Commutation pattern of the four trace witnesses and injectivity on the
/// ball of radius `bounds.ball`.
pub fn p4_trace_suite(m: usize, n: usize, bounds: Bounds) -> Report {
    let mut report = Report::new(format!("p4-trace({m},{n})"));
    let Some(rs) = fcrs_complete(m, n) else {
        report.push("fcrs", Status::Fail, "system not certified complete");
        return report;
    };
    let al = ab();
    let names: Vec<String> = p4_trace_witnesses(m, n)
        .iter()
        .map(|w| al.format_compact(w))
        .collect();
    report.check("witnesses", true, names.join(" "));
    let pairs = p4_commutation_report(&rs, m, n);
    for c in pairs.checks {
        report.push(format!("commute.{}", c.id), c.status, c.detail);
    }
    match bounded_injectivity(&rs, m, n, bounds.ball) {
        Ok(res) => {
            let mut detail = format!(
                "{} sequences, {} trace classes, {} values",
                res.sequences, res.trace_classes, res.values
            );
            if let Some((u, v)) = res.violations.first() {
                detail.push_str(&format!(", violation {u:?} vs {v:?}"));
            }
            report.check(format!("ball({})", bounds.ball), res.holds(), detail);
        }
        Err(e) => report.push(
            format!("ball({})", bounds.ball),
            Status::Unknown,
            e.to_string(),
        ),
    }
    report
}

/// The group witnesses in `G_{m,n}` and the abelianizations that tell the
/// relevant groups apart.
pub fn p4_group_abelian_suite(m: usize, n: usize) -> Report {
    let mut report = Report::new(format!("p4-group-abelian({m},{n})"));
    let g = g_mn(m, n);
    let xy = &g.alphabet;
    let w = p4_group_witnesses(m, n);
    let text: Vec<String> = w.iter().map(|x| xy.format(x)).collect();
    report.check("witnesses", true, text.join(", "));

    // The exponent vectors live in Z^2, so the images cannot span Z^4.
    let sums: Vec<Vec<i64>> = w.iter().map(|x| x.exponent_sums(2)).collect();
    let rank = integer_rank(&sums);
    report.check(
        "exponent-rank",
        rank <= 2,
        format!("rank {rank} of {sums:?}"),
    );

    // Under y -> a, x -> ba^n the witnesses become words over a, b.
    let (_, fwd, _) = positivize_gmn(m, n);
    let ab = &fwd.target.alphabet;
    let imgs: Vec<String> = w
        .iter()
        .map(|x| ab.format_compact(&fwd.apply(x).free_reduce()))
        .collect();
    report.check("positive-images", true, imgs.join(", "));

    for (id, p, want) in [
        ("abelian(A(P4))", a_p4(), "Z^4".to_string()),
        ("abelian(H)", h_group(), "Z^3".to_string()),
        ("abelian(G)", g, format!("Z/{} + Z", 2 * m)),
    ] {
        let got = abelianization(&p).to_string();
        report.check(id, got == want, format!("{got} (expected {want})"));
    }
    report
}

/// Rank over Q of a small integer matrix, by fraction-free elimination.
fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (f, g) = (a[rank][c], a[r][c]);
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = *x * f - y * g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Left-ideal witnesses `p·w = a`, `q·a = w` for every `w` in `{a, ba}^+`
/// up to `maxlen` letters, each rechecked from its normal forms.
pub fn l_class_suite(m: usize, n: usize, maxlen: usize, bounds: Bounds) -> Report {
    let mut report = Report::new(format!("l-class({m},{n})"));
    let Some(rs) = fcrs_complete(m, n) else {
        report.push("fcrs", Status::Fail, "system not certified complete");
        return report;
    };
    let al = ab();
    for w in a_ba_words(maxlen) {
        let id = format!("w={}", al.format_compact(&w));
        match l_witness_search(&rs, m, n, &w, bounds.depth) {
            Some(lw) => {
                let ok = lw.verify(&rs).unwrap_or(false);
                report.check(
                    id,
                    ok,
                    format!(
                        "p={} q={}",
                        al.format_compact(&lw.p),
                        al.format_compact(&lw.q)
                    ),
                );
            }
            None => report.check(
                id,
                false,
                format!("no witness within depth {}", bounds.depth),
            ),
        }
    }
    report
}

/// Canonical representative of a cyclic relator up to inversion and
/// rotation.
pub fn canonical_relator(w: &Word) -> Word {
    let r = w.free_reduce().cyclic_reduce();
    let mut best = r.clone();
    for v in [r.clone(), r.inverse()] {
        for k in 0..v.len() {
            let rot = v.slice(k, v.len()).concat(&v.slice(0, k));
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

/// The kernel of `G_{m,n} -> Z/2n`, `x -> 0`, `y -> 1`, compared with the
/// stated kernel presentation, and the retraction between `B(S_{n,m})` and
/// that kernel.
pub fn rs_subgroup_suite(m: usize, n: usize) -> Report {
    let mut report = Report::new(format!("rs-subgroup({m},{n})"));
    let g = g_mn(m, n);
    let k = 2 * n as u64;
    let res = match reidemeister_schreier(&g, &[0, 1], k) {
        Ok(r) => r,
        Err(e) => {
            report.check("schreier", false, e.to_string());
            return report;
        }
    };
    let gens = &res.presentation.alphabet;
    let transversal: Vec<String> = res
        .transversal
        .iter()
        .map(|t| g.alphabet.format_compact(t))
        .collect();
    report.check(
        "transversal",
        res.transversal
            .iter()
            .enumerate()
            .all(|(i, t)| *t == Word::letter(1).pow(i)),
        transversal.join(" "),
    );
    let gen_words: Vec<String> = gens
        .names()
        .iter()
        .zip(&res.generator_words)
        .map(|(nm, w)| format!("{nm}={}", g.alphabet.format_compact(w)))
        .collect();
    report.check("generators", gens.len() == 2 * n + 1, gen_words.join(" "));

    // Rename x_i -> alpha_i and the y generator -> beta.
    let target = k_target(m, n);
    let names = k_names(n);
    let rename = |w: &Word| -> Option<Word> {
        w.iter()
            .map(|s| {
                let nm = gens.name(s.gen);
                let new = match nm.strip_prefix("x_") {
                    Some(i) => format!("alpha_{i}"),
                    None => String::from("beta"),
                };
                names.iter().position(|x| *x == new).map(|g| Symbol {
                    gen: g as u32,
                    inv: s.inv,
                })
            })
            .collect()
    };
    let alpha = |i: usize| Word::letter(1 + i as u32);
    let mut got = BTreeSet::new();
    let mut ok = true;
    for r in res.presentation.relators() {
        let Some(r) = rename(&r) else {
            ok = false;
            continue;
        };
        // second family: substitute alpha_{i+n}^m = alpha_i^-m
        let mut s = r.clone();
        for i in 0..n {
            let first_family = r == alpha(i).pow(m).concat(&alpha(i + n).pow(m));
            if !first_family {
                s = s.replace_all(&alpha(i + n).pow(m), &alpha(i).pow(m).inverse());
            }
        }
        got.insert(canonical_relator(&s));
    }
    let want: BTreeSet<Word> = target.relators().iter().map(canonical_relator).collect();
    let show = |set: &BTreeSet<Word>| {
        set.iter()
            .map(|w| target.alphabet.format(w))
            .collect::<Vec<_>>()
            .join("; ")
    };
    report.check(
        "kernel-presentation",
        ok && got == want,
        if got == want {
            show(&got)
        } else {
            format!("got {} want {}", show(&got), show(&want))
        },
    );
    let beta_commutes = (0..n).all(|i| {
        want.contains(&canonical_relator(&commutator(
            &alpha(i).pow(m),
            &Word::letter(0),
        )))
    });
    report.check(
        "commutator-relators",
        beta_commutes,
        format!("[alpha_i^{m}, beta] for i < {n}"),
    );

    let (s, rho) = bs_retraction(m, n);
    for (id, h) in [("s", &s), ("rho", &rho)] {
        match check_homomorphism(h, HomMethod::FreeReduction) {
            Ok(HomVerdict::Verified) => report.check(
                format!("hom({id})"),
                true,
                "every relator image is a relator or trivial",
            ),
            Ok(v) => report.push(format!("hom({id})"), Status::Unknown, format!("{v:?}")),
            Err(e) => report.check(format!("hom({id})"), false, e.to_string()),
        }
    }
    match check_retraction(&s, &rho) {
        Ok(ok) => report.check("retraction", ok, "rho(s(g)) = g for every generator"),
        Err(e) => report.check("retraction", false, e.to_string()),
    }
    report
}

/// The trace submonoid of `H` on a ball, plus the affine model of
/// `BS(1,2)` on random pairs.
pub fn hnn_trace_suite(bounds: Bounds) -> Report {
    let mut report = Report::new("hnn-trace");
    for c in verify_trace_submonoid(bounds.ball).checks {
        report.push(c.id, c.status, c.detail);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let pairs: Vec<(Word, Word)> = (0..1000)
        .map(|_| (random_xy(&mut rng), random_xy(&mut rng)))
        .collect();
    for c in check_bs12_homomorphism(&pairs).checks {
        report.push(format!("bs12.{}", c.id), c.status, c.detail);
    }
    report
}

fn random_xy(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..12);
    Word::from_symbols(
        (0..len)
            .map(|_| Symbol {
                gen: rng.gen_range(0..2),
                inv: rng.gen_bool(0.5),
            })
            .collect(),
    )
}

/// A random automaton on at most four states over `letters` letters whose
/// language has no word shorter than 2.
pub fn random_long_word_automaton(rng: &mut ChaCha8Rng, letters: u32) -> Fsa {
    let states = rng.gen_range(1..=4);
    let sigma: Vec<Symbol> = (0..letters).map(Symbol::pos).collect();
    let mut f = Fsa::new(sigma.iter().copied(), states);
    for p in 0..states {
        for &s in &sigma {
            for q in 0..states {
                if rng.gen_bool(0.3) {
                    f.add_transition(p, Some(s), q);
                }
            }
        }
    }
    f.set_initial(0);
    for q in 0..states {
        if q == states - 1 || rng.gen_bool(0.4) {
            f.set_final(q);
        }
    }
    // intersect with A A A*
    let one = Fsa::from_words(
        sigma
            .iter()
            .map(|&s| Word::symbol(s))
            .collect::<Vec<_>>()
            .iter(),
    );
    let long = one
        .concat(&one)
        .concat(&Fsa::universal(sigma.iter().copied()));
    f.intersection(&long)
}

/// A table with a nonempty entry of length 1 or 2 for each ordered pair.
pub fn random_table(rng: &mut ChaCha8Rng, letters: u32, out_letters: u32) -> LetterWordTable {
    let mut t = LetterWordTable::new();
    for i in 0..letters {
        for j in 0..letters {
            let len = rng.gen_range(1..=2);
            let w = Word::from_gens(
                &(0..len)
                    .map(|_| rng.gen_range(0..out_letters))
                    .collect::<Vec<_>>(),
            );
            t.insert(Symbol::pos(i), Symbol::pos(j), w);
        }
    }
    t
}

/// Automaton-level transform against word-by-word application on random
/// automata, and the gadget language on a fixed sample.
pub fn phi_suite(bounds: Bounds) -> Report {
    const SAMPLES: usize = 50;
    const MAX_LEN: usize = 12;
    let mut report = Report::new("phi");
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut mismatches = 0;
    let mut first = None;
    let mut compared = 0;
    for sample in 0..SAMPLES {
        let f = random_long_word_automaton(&mut rng, 2);
        let table = random_table(&mut rng, 2, 3);
        let Ok(img) = phi_transform(&f, &table) else {
            mismatches += 1;
            first.get_or_insert(format!("sample {sample}: transform rejected the automaton"));
            continue;
        };
        // entries are nonempty, so |phi(w)| >= |w| - 1
        let direct: BTreeSet<Word> = f
            .enumerate(MAX_LEN + 1)
            .iter()
            .filter_map(|w| phi_word(w, &table))
            .filter(|w| w.len() <= MAX_LEN)
            .collect();
        let lifted = img.enumerate(MAX_LEN);
        compared += direct.len();
        if direct != lifted {
            mismatches += 1;
            let diff = direct.symmetric_difference(&lifted).next().cloned();
            first.get_or_insert(format!("sample {sample}: differs on {diff:?}"));
        }
    }
    report.check(
        "phi-vs-direct",
        mismatches == 0,
        first.unwrap_or_else(|| {
            format!("{SAMPLES} automata, {compared} image words up to length {MAX_LEN}")
        }),
    );

    let omega = omega_language();
    let al = Alphabet::new(["a", "b", "c", "d"]).expect("static names");
    let word = |s: &str| al.parse_word(s).expect("sample over a, b, c, d");
    let mut wrong = Vec::new();
    for (text, want) in OMEGA_SAMPLE {
        if omega.accepts(&word(text)) != want {
            wrong.push(text);
        }
    }
    report.check(
        "omega-sample",
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{} words", OMEGA_SAMPLE.len())
        } else {
            format!("mismatch on {}", wrong.join(", "))
        },
    );
    report.check(
        "omega-reverse-reverse",
        omega.reverse().reverse().language_equal(&omega),
        "language equality",
    );
    report
}

/// Membership in `a(d(cb)^+a)^*dc^+`, checked by hand.
pub const OMEGA_SAMPLE: [(&str, bool); 20] = [
    ("adc", true),
    ("adcc", true),
    ("adccc", true),
    ("adcbadc", true),
    ("adcbcbadc", true),
    ("adcbadcbadcc", true),
    ("adcbcbcbadcc", true),
    ("adcbadcbcbadc", true),
    ("adcccc", true),
    ("adcbcbadccc", true),
    ("", false),
    ("ad", false),
    ("dc", false),
    ("adcb", false),
    ("adcba", false),
    ("adbadc", false),
    ("aadc", false),
    ("adcbdc", false),
    ("acdc", false),
    ("adcbadcb", false),
];

/// Every suite, with the parameters used for the acceptance run.
pub fn paper_suite(bounds: Bounds) -> Report {
    let mut report = Report::new("paper");
    for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        report.absorb(fcrs_suite(m, n, bounds));
    }
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let mut b = bounds;
        if (m, n) != (2, 2) {
            b.ball = b.ball.min(2);
        }
        report.absorb(p4_trace_suite(m, n, b));
    }
    report.absorb(p4_group_abelian_suite(2, 2));
    report.absorb(l_class_suite(2, 2, 3, bounds));
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        report.absorb(rs_subgroup_suite(m, n));
    }
    report.absorb(hnn_trace_suite(bounds));
    report.absorb(phi_suite(bounds));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_helper() {
        assert_eq!(integer_rank(&[vec![2, 0], vec![0, 4], vec![2, 0]]), 2);
        assert_eq!(integer_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(&[]), 0);
    }

    #[test]
    fn canonical_relator_is_rotation_and_inversion_invariant() {
        let w = Word::from_gens(&[0, 1, 1]);
        let rot = Word::from_gens(&[1, 0, 1]);
        assert_eq!(canonical_relator(&w), canonical_relator(&rot));
        assert_eq!(canonical_relator(&w), canonical_relator(&w.inverse()));
    }

    #[test]
    fn random_automata_have_no_short_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_long_word_automaton(&mut rng, 2);
            assert!(f.enumerate(1).is_empty());
        }
    }
}
