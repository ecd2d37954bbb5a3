//! Command-line front end for gapseq.
//!
//! Decision commands exit with 0 for yes, 1 for no and 2 for usage or data
//! errors. Output is assembled in full before anything is written, so a
//! failed run prints nothing on standard output.

pub mod bundle;
mod generate;

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gapseq::analysis::{classical_containment, containment, equivalence, universality, AnalysisConfig, DEFAULT_BUDGET};
use gapseq::bench::{bench_match, BenchConfig, BenchRow};
use gapseq::matchers::{match_with_equalities, run_matcher, Algorithm};
use gapseq::multiplicity::{build_counting_nfa, count_embeddings, path_equivalence_witness};

use bundle::{AlphabetChoice, InstanceBundle, Request, WordSource};
pub use generate::GenKind;

#[derive(Parser, Debug)]
#[command(name = "gapseq", version, about = "Subsequence matching and analysis under gap constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct AlphabetArgs {
    /// Glyphs of the alphabet in symbol order, e.g. "abc".
    #[arg(long, conflicts_with = "sigma")]
    alphabet: Option<String>,
    /// Integer alphabet {1..n}; literal words are then whitespace-separated ids.
    #[arg(long)]
    sigma: Option<u32>,
}

impl AlphabetArgs {
    fn choice(&self) -> AlphabetChoice {
        AlphabetChoice {
            glyphs: self.alphabet.clone(),
            sigma: self.sigma,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct GapArgs {
    /// Constraint file; DFA names are resolved next to it.
    #[arg(short = 'c', long = "constraints", conflicts_with = "k")]
    constraints: Option<PathBuf>,
    /// Pattern length with unconstrained gaps.
    #[arg(short = 'k')]
    k: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgoArg {
    Naive,
    Length,
    Regular,
    Reglen,
    Auto,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Naive => Algorithm::Naive,
            AlgoArg::Length => Algorithm::Length,
            AlgoArg::Regular => Algorithm::Regular,
            AlgoArg::Reglen => Algorithm::RegLen,
            AlgoArg::Auto => Algorithm::Auto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AnalyzeKind {
    /// Every word of length k occurs in w.
    Uni,
    /// Every pattern occurring in w occurs in W.
    Con,
    /// w and W have the same patterns.
    Equ,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the pattern occurs in the word.
    Match {
        #[arg(short = 'w')]
        word: String,
        #[arg(short = 'p')]
        pattern: String,
        #[command(flatten)]
        gaps: GapArgs,
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        /// Print the embedding positions of a match.
        #[arg(long)]
        witness: bool,
        /// Gap-length equalities, one "i j" pair per line.
        #[arg(long)]
        eq: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Universality, containment or equivalence of pattern sets.
    Analyze {
        #[arg(value_enum)]
        kind: AnalyzeKind,
        #[arg(short = 'w')]
        word: String,
        #[arg(short = 'W')]
        other: Option<String>,
        #[command(flatten)]
        gaps: GapArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Number of embeddings of the pattern in the word.
    Count {
        #[arg(short = 'w')]
        word: String,
        #[arg(short = 'p')]
        pattern: String,
        #[command(flatten)]
        gaps: GapArgs,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Equality of embedding counts for every pattern.
    EquMult {
        #[arg(short = 'w')]
        word: String,
        #[arg(short = 'W')]
        other: String,
        #[command(flatten)]
        gaps: GapArgs,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Containment of the length-k subsequences without gap constraints.
    ClassicCon {
        #[arg(short = 'w')]
        word: String,
        #[arg(short = 'W')]
        other: String,
        #[arg(short = 'k')]
        k: usize,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Write a reduction instance as word, pattern and constraint files.
    Gen(generate::GenArgs),
    /// Time a matcher on seeded random words.
    Bench {
        #[arg(long, value_enum, default_value = "reglen")]
        algo: AlgoArg,
        /// Comma-separated word lengths.
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 2000, 4000, 8000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        sigma: u32,
        #[arg(short = 'k', default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        states: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Result of a command: text for standard output and the exit code.
struct Outcome {
    text: String,
    code: i32,
}

fn decision(yes: bool, witness: Option<String>) -> Outcome {
    let mut text = String::from(if yes { "yes\n" } else { "no\n" });
    if let Some(w) = witness {
        text.push_str(&w);
        text.push('\n');
    }
    Outcome {
        text,
        code: if yes { 0 } else { 1 },
    }
}

fn request(words: &[&str], pattern: Option<&str>, gaps: Option<&GapArgs>, alphabet: &AlphabetArgs) -> Request {
    Request {
        words: words.iter().map(|w| WordSource::from_arg(w)).collect(),
        pattern: pattern.map(WordSource::from_arg),
        constraints: gaps.and_then(|g| g.constraints.clone()),
        k: gaps.and_then(|g| g.k),
        equalities: None,
        alphabet: alphabet.choice(),
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Match { word, pattern, gaps, algo, witness, eq, alphabet } => {
            let mut req = request(&[&word], Some(&pattern), Some(&gaps), &alphabet);
            req.equalities = eq;
            let b = InstanceBundle::load(&req)?;
            let gs = b.gapped_sequence()?;
            let found = match &b.equalities {
                Some(system) => match_with_equalities(b.word(0), &gs, system)?,
                None => run_matcher(algo.into(), b.word(0), &gs)?,
            };
            let shown = if witness { found.as_ref().map(|e| e.to_string()) } else { None };
            Ok(decision(found.is_some(), shown))
        }
        Command::Analyze { kind, word, other, gaps, budget, workers, alphabet } => {
            let mut words = vec![word.as_str()];
            match (kind, &other) {
                (AnalyzeKind::Uni, _) => {}
                (_, Some(o)) => words.push(o),
                (_, None) => anyhow::bail!("containment and equivalence need a second word (-W)"),
            }
            let b = InstanceBundle::load(&request(&words, None, Some(&gaps), &alphabet))?;
            let gc = b.analysis_constraints()?;
            let cfg = AnalysisConfig { budget, workers };
            let report = match kind {
                AnalyzeKind::Uni => universality(b.word(0), gc, &b.alphabet, &cfg)?,
                AnalyzeKind::Con => containment(b.word(0), b.word(1), gc, &b.alphabet, &cfg)?,
                AnalyzeKind::Equ => equivalence(b.word(0), b.word(1), gc, &b.alphabet, &cfg)?,
            };
            Ok(decision(report.decision, report.witness.map(|w| b.render(&w))))
        }
        Command::Count { word, pattern, gaps, alphabet } => {
            let b = InstanceBundle::load(&request(&[&word], Some(&pattern), Some(&gaps), &alphabet))?;
            let gs = b.gapped_sequence()?;
            let count = count_embeddings(b.word(0), gs.pattern(), gs.constraints())?;
            Ok(Outcome {
                text: format!("{count}\n"),
                code: 0,
            })
        }
        Command::EquMult { word, other, gaps, alphabet } => {
            let b = InstanceBundle::load(&request(&[&word, &other], None, Some(&gaps), &alphabet))?;
            let gc = b.analysis_constraints()?;
            let x = build_counting_nfa(b.word(0), gc, &b.alphabet)?;
            let y = build_counting_nfa(b.word(1), gc, &b.alphabet)?;
            let witness = path_equivalence_witness(&x, &y)?.map(|u| {
                format!("{} {} {}", b.render(&u), x.count_paths(&u), y.count_paths(&u))
            });
            Ok(decision(witness.is_none(), witness))
        }
        Command::ClassicCon { word, other, k, alphabet } => {
            let b = InstanceBundle::load(&request(&[&word, &other], None, None, &alphabet))?;
            let (yes, witness) = classical_containment(b.word(0), b.word(1), k, &b.alphabet)?;
            Ok(decision(yes, witness.map(|w| b.render(&w))))
        }
        Command::Gen(args) => {
            let written = generate::run(&args)?;
            let mut text = String::new();
            for p in written {
                writeln!(text, "{}", p.display()).expect("writing to a string");
            }
            Ok(Outcome { text, code: 0 })
        }
        Command::Bench { algo, sizes, trials, seed, sigma, k, states, csv } => {
            let cfg = BenchConfig {
                algo: algo.into(),
                sizes,
                trials,
                seed,
                sigma,
                k,
                states,
            };
            let mut report = format!("{}\n", BenchRow::CSV_HEADER);
            for row in bench_match(&cfg)? {
                report.push_str(&row.csv());
                report.push('\n');
            }
            match csv {
                Some(path) => {
                    std::fs::write(&path, &report).with_context(|| format!("cannot write {}", path.display()))?;
                    Ok(Outcome {
                        text: format!("{}\n", path.display()),
                        code: 0,
                    })
                }
                None => Ok(Outcome { text: report, code: 0 }),
            }
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => match out.write_all(outcome.text.as_bytes()) {
            Ok(()) => outcome.code,
            Err(_) => 2,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}
