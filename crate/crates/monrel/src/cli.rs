//! Argument parsing and dispatch for the `monrel` binary.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monrel_core::automata::{omega_language, Fsa};
use monrel_core::encoder::{construction51, find_inverse_witness, DerivationBound};
use monrel_core::families::{fcrs_complete, make_family, FamilyName};
use monrel_core::report::{Report, Status};
use monrel_core::rewrite::RewriteSystem;
use monrel_core::transform::abelianization;
use monrel_core::{Alphabet, Symbol};
use thiserror::Error;

use crate::format::{
    automaton_dot, parse_automaton, parse_encoding_input, parse_presentation, parse_rewriting,
    serialize_automaton, serialize_presentation, AutomatonFile, FormatError,
};
use crate::suites::{self, Bounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(
    name = "monrel",
    version,
    about = "Computations with finitely presented monoids and groups"
)]
pub struct Cli {
    /// Also write the output to this file (a directory for `encode`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append the wall-clock time to reports.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named parametric presentations.
    Families {
        #[command(subcommand)]
        action: FamiliesCmd,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Encodings of one-relator groups.
    Encode {
        #[command(subcommand)]
        action: EncodeCmd,
    },
    /// Normal form of a word under a rewriting system.
    Nf {
        /// `fcrs:M,N` or a rewriting-system file.
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Abelian invariants of a group presentation file.
    Abelianize {
        #[arg(long)]
        file: PathBuf,
    },
    /// Operations on automaton files.
    Automata {
        #[command(subcommand)]
        op: AutomataCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamiliesCmd {
    /// Print a family member in presentation format.
    Make {
        /// One of G, M, R, K_target, BS_graph, BP3, T_compression, R_tripled.
        name: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// List the family names.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fcrs,
    P4Trace,
    P4GroupAbelian,
    LClass,
    RsSubgroup,
    HnnTrace,
    Phi,
    Paper,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Ball radius for injectivity checks.
    #[arg(long, default_value_t = 4)]
    pub ball: usize,
    /// Search depth for witness searches.
    #[arg(long, default_value_t = 16)]
    pub depth: usize,
    /// Rewrite-step budget per reduction.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
    /// Longest word tested by `l-class`.
    #[arg(long, default_value_t = 3)]
    pub maxlen: usize,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum EncodeCmd {
    /// Build the two-relator group and inverse presentations.
    Construction51 {
        #[arg(long)]
        input: PathBuf,
        /// Longest intermediate word in inverse-witness derivations.
        #[arg(long, default_value_t = 16)]
        depth: usize,
        /// Most words visited by the derivation search.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutomataCmd {
    /// Print the gadget automaton for a(d(cb)^+a)^*dc^+.
    Omega,
    /// Graphviz rendering.
    Dot {
        #[arg(long)]
        file: PathBuf,
    },
    /// Parse and print in canonical form.
    Normalize {
        #[arg(long)]
        file: PathBuf,
    },
    Reverse {
        #[arg(long)]
        file: PathBuf,
    },
    Star {
        #[arg(long)]
        file: PathBuf,
    },
    Union {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        with: PathBuf,
    },
    Concat {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        with: PathBuf,
    },
    /// Prints `yes` or `no`.
    Accepts {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Accepted words up to a length, one per line in shortlex order.
    Enumerate {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Format { .. } | CliError::Input(_) => EXIT_DATA,
        }
    }
}

/// What a command produced: text for standard output and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn parsed<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Format {
        path: path.to_owned(),
        source,
    })
}

fn load_automaton(path: &Path) -> Result<AutomatonFile, CliError> {
    parsed(path, parse_automaton(&read(path)?))
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let started = Instant::now();
    match dispatch(&cli) {
        Ok(mut outcome) => {
            if cli.timing {
                outcome
                    .text
                    .push_str(&format!("elapsed {} ms\n", started.elapsed().as_millis()));
            }
            let _ = write!(stdout, "{}", outcome.text);
            let is_encode = matches!(cli.command, Command::Encode { .. });
            if let (Some(path), false) = (&cli.out, is_encode) {
                if let Err(e) = write(path, &outcome.text) {
                    let _ = writeln!(stderr, "error: {e}");
                    return e.exit_code();
                }
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Families { action } => families(action),
        Command::Verify(args) => Ok(verify(args)),
        Command::Encode { action } => encode(action, cli.out.as_deref()),
        Command::Nf {
            system,
            word,
            budget,
        } => nf(system, word, *budget),
        Command::Abelianize { file } => {
            let p = parsed(file, parse_presentation(&read(file)?))?;
            let inv = abelianization(&p);
            let torsion: Vec<String> = inv.torsion.iter().map(ToString::to_string).collect();
            Ok(Outcome::ok(format!(
                "free_rank {}, torsion [{}]\n",
                inv.free_rank,
                torsion.join(", ")
            )))
        }
        Command::Automata { op } => automata(op),
    }
}

fn families(action: &FamiliesCmd) -> Result<Outcome, CliError> {
    match action {
        FamiliesCmd::List => {
            let names: Vec<&str> = FamilyName::ALL.iter().map(|f| f.as_str()).collect();
            Ok(Outcome::ok(format!("{}\n", names.join("\n"))))
        }
        FamiliesCmd::Make { name, m, n } => {
            let family: FamilyName = name.parse().map_err(|e| CliError::Input(format!("{e}")))?;
            let p = make_family(family, *m, *n).map_err(|e| CliError::Input(format!("{e}")))?;
            Ok(Outcome::ok(serialize_presentation(&p)))
        }
    }
}

fn verify(args: &VerifyArgs) -> Outcome {
    let bounds = Bounds {
        ball: args.ball,
        depth: args.depth,
        budget: args.budget,
        seed: args.seed,
    };
    let (m, n) = (args.m, args.n);
    let report = if m == 0 || n == 0 {
        let mut r = Report::new("parameters");
        r.check("m,n>=1", false, format!("m={m} n={n}"));
        r
    } else {
        match args.suite {
            Suite::Fcrs => suites::fcrs_suite(m, n, bounds),
            Suite::P4Trace => suites::p4_trace_suite(m, n, bounds),
            Suite::P4GroupAbelian => suites::p4_group_abelian_suite(m, n),
            Suite::LClass => suites::l_class_suite(m, n, args.maxlen, bounds),
            Suite::RsSubgroup => suites::rs_subgroup_suite(m, n),
            Suite::HnnTrace => suites::hnn_trace_suite(bounds),
            Suite::Phi => suites::phi_suite(bounds),
            Suite::Paper => suites::paper_suite(bounds),
        }
    };
    Outcome {
        text: report.to_string(),
        code: exit_code(report.status()),
    }
}

fn encode(action: &EncodeCmd, out_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let EncodeCmd::Construction51 {
        input,
        depth,
        budget,
    } = action;
    let mut file = parsed(input, parse_encoding_input(&read(input)?))?;
    let bound = DerivationBound {
        max_len: *depth,
        max_nodes: *budget,
    };
    if !file.has_inverses {
        for (i, w) in file.input.words.iter().enumerate() {
            let found = find_inverse_witness(&file.input.q, w, bound).ok_or_else(|| {
                CliError::Input(format!(
                    "no inverse found for word {i} within length {depth}"
                ))
            })?;
            file.input.inverses.push(found.witness);
        }
    }
    let out = construction51(&file.input, bound).map_err(|e| CliError::Input(e.to_string()))?;
    let h = serialize_presentation(&out.h);
    let m = serialize_presentation(&out.m);
    let log = out.certificate_log(&file.input.alphabet);
    let text = match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io {
                path: dir.to_owned(),
                source,
            })?;
            let paths = [("h.pres", &h), ("m.pres", &m), ("certificates.log", &log)];
            let mut listing = String::new();
            for (name, body) in paths {
                let p = dir.join(name);
                write(&p, body)?;
                listing.push_str(&format!("wrote {}\n", p.display()));
            }
            listing
        }
        None => format!("# H\n{h}# M\n{m}# certificates\n{log}"),
    };
    Ok(Outcome::ok(text))
}

fn nf(system: &str, word: &str, budget: usize) -> Result<Outcome, CliError> {
    let rs: RewriteSystem = match system.strip_prefix("fcrs:") {
        Some(params) => {
            let (m, n) = params
                .split_once(',')
                .and_then(|(m, n)| {
                    Some((
                        m.trim().parse::<usize>().ok()?,
                        n.trim().parse::<usize>().ok()?,
                    ))
                })
                .filter(|&(m, n)| m >= 1 && n >= 1)
                .ok_or_else(|| {
                    CliError::Input(format!("expected fcrs:M,N with M, N >= 1, got {system:?}"))
                })?;
            fcrs_complete(m, n)
                .ok_or_else(|| CliError::Input(format!("fcrs({m},{n}) did not certify")))?
                .into_system()
        }
        None => {
            let path = Path::new(system);
            parsed(path, parse_rewriting(&read(path)?))?
        }
    };
    let al = rs.alphabet();
    let w = al
        .parse_word(word)
        .map_err(|e| CliError::Input(format!("word: {e}")))?;
    let nf = rs
        .normal_form_within(&w, budget)
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Outcome::ok(format!("{}\n", al.format_compact(&nf))))
}

/// Re-indexes the symbols of `f` from `from` into `to` by generator name.
fn remap(f: &Fsa, from: &Alphabet, to: &Alphabet) -> Fsa {
    let map = |s: Symbol| Symbol {
        gen: to
            .index_of(from.name(s.gen))
            .expect("target alphabet contains every name"),
        inv: s.inv,
    };
    let mut g = Fsa::new(f.alphabet().iter().map(|&s| map(s)), f.num_states());
    for &(p, label, q) in f.transitions() {
        g.add_transition(p, label.map(map), q);
    }
    f.initial().iter().for_each(|&q| g.set_initial(q));
    f.finals().iter().for_each(|&q| g.set_final(q));
    g
}

fn binary(file: &Path, with: &Path, op: fn(&Fsa, &Fsa) -> Fsa) -> Result<Outcome, CliError> {
    let a = load_automaton(file)?;
    let b = load_automaton(with)?;
    let alphabet = a.alphabet.merge(&b.alphabet);
    let fsa = op(
        &remap(&a.fsa, &a.alphabet, &alphabet),
        &remap(&b.fsa, &b.alphabet, &alphabet),
    );
    Ok(Outcome::ok(serialize_automaton(&AutomatonFile {
        alphabet,
        fsa,
    })))
}

fn unary(file: &Path, op: impl Fn(&Fsa) -> Fsa) -> Result<Outcome, CliError> {
    let a = load_automaton(file)?;
    let fsa = op(&a.fsa);
    Ok(Outcome::ok(serialize_automaton(&AutomatonFile {
        alphabet: a.alphabet,
        fsa,
    })))
}

fn automata(op: &AutomataCmd) -> Result<Outcome, CliError> {
    match op {
        AutomataCmd::Omega => {
            let alphabet = Alphabet::new(["a", "b", "c", "d"]).expect("static names");
            Ok(Outcome::ok(serialize_automaton(&AutomatonFile {
                alphabet,
                fsa: omega_language(),
            })))
        }
        AutomataCmd::Dot { file } => Ok(Outcome::ok(automaton_dot(&load_automaton(file)?))),
        AutomataCmd::Normalize { file } => unary(file, Fsa::clone),
        AutomataCmd::Reverse { file } => unary(file, Fsa::reverse),
        AutomataCmd::Star { file } => unary(file, Fsa::star),
        AutomataCmd::Union { file, with } => binary(file, with, Fsa::union),
        AutomataCmd::Concat { file, with } => binary(file, with, Fsa::concat),
        AutomataCmd::Accepts { file, word } => {
            let a = load_automaton(file)?;
            let w = a
                .alphabet
                .parse_word(word)
                .map_err(|e| CliError::Input(format!("word: {e}")))?;
            Ok(Outcome::ok(String::from(if a.fsa.accepts(&w) {
                "yes\n"
            } else {
                "no\n"
            })))
        }
        AutomataCmd::Enumerate { file, maxlen } => {
            let a = load_automaton(file)?;
            // word order is shortlex
            let text: String = a
                .fsa
                .enumerate(*maxlen)
                .iter()
                .map(|w| format!("{}\n", a.alphabet.format(w)))
                .collect();
            Ok(Outcome::ok(text))
        }
    }
}
