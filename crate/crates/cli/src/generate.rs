use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use gapseq::io::{
    parse_dimacs, parse_graph, parse_ov, serialize_constraints, serialize_dfa, serialize_dimacs, serialize_equalities,
    serialize_graph, serialize_ov, serialize_word_file, WordFile,
};
use gapseq::reductions::{
    kis_to_metanuni, metanuni_to_nuni, metanuni_universal_word, ov_symbols, ov_to_match, random_cnf, random_graph,
    random_ov, sat_to_match_equalities, sat_to_metanuni, sat_to_nuni_binary, CnfFormula, Graph, MetaNUniInstance,
    OvInstance,
};
use gapseq::{Alphabet, DfaId, GapConstraints, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Orthogonal vectors to matching.
    Ov,
    /// CNF satisfiability to non-universality.
    SatNuni,
    /// CNF satisfiability to non-universality over a binary alphabet.
    SatNuniBin,
    /// Independent set to non-universality.
    KisNuni,
    /// 3-CNF satisfiability to matching with gap-length equalities.
    SatEq,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Source instance (.ov, DIMACS CNF or edge list); random when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Prefix shared by all output files.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Vectors per side, or graph vertices.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Vector dimension.
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 4)]
    pub vars: usize,
    #[arg(long, default_value_t = 6)]
    pub clauses: usize,
    #[arg(long, default_value_t = 3)]
    pub width: usize,
    #[arg(long, default_value_t = 0.3)]
    pub edge_prob: f64,
    /// Independent set size.
    #[arg(short = 'k', default_value_t = 2)]
    pub k: usize,
}

struct Writer {
    prefix: PathBuf,
    written: Vec<PathBuf>,
}

impl Writer {
    fn path(&self, suffix: &str) -> PathBuf {
        let mut s = self.prefix.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    }

    fn put(&mut self, suffix: &str, text: &str) -> Result<()> {
        let path = self.path(suffix);
        fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    fn word(&mut self, suffix: &str, alphabet: &Alphabet, w: Word) -> Result<()> {
        let text = serialize_word_file(&WordFile { alphabet: alphabet.clone(), word: w })?;
        self.put(suffix, &text)
    }

    fn constraints(&mut self, gc: &GapConstraints) -> Result<()> {
        let stem = self
            .prefix
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let name = |id: DfaId| format!("{stem}.dfa{}", id.0);
        for (i, d) in gc.dfas().iter().enumerate() {
            self.put(&format!(".dfa{i}"), &serialize_dfa(d))?;
        }
        self.put(".gc", &serialize_constraints(gc, name))
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn metanuni_alphabet(m: u32) -> Result<Alphabet> {
    Ok(if m <= 9 {
        Alphabet::with_glyphs(('1'..='9').take(m as usize).chain(['#']))?
    } else {
        Alphabet::new(m + 1)?
    })
}

fn write_nuni(out: &mut Writer, inst: &MetaNUniInstance) -> Result<()> {
    let alphabet = metanuni_alphabet(inst.m())?;
    let (w, gc) = metanuni_to_nuni(inst);
    out.word(".word", &alphabet, w)?;
    out.word(".ref.word", &alphabet, metanuni_universal_word(inst.m(), inst.k()))?;
    out.constraints(&gc)
}

/// Generates the instance and returns the paths written, in order.
pub fn run(args: &GenArgs) -> Result<Vec<PathBuf>> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut out = Writer {
        prefix: args.out.clone(),
        written: Vec::new(),
    };
    let source = args.input.as_deref().map(read).transpose()?;
    let cnf = |out: &mut Writer, rng: &mut ChaCha8Rng| -> Result<CnfFormula> {
        match &source {
            Some(text) => Ok(parse_dimacs(text)?),
            None => {
                let f = random_cnf(rng, args.vars, args.clauses, args.width);
                out.put(".cnf", &serialize_dimacs(&f))?;
                Ok(f)
            }
        }
    };
    match args.kind {
        GenKind::Ov => {
            let inst: OvInstance = match &source {
                Some(text) => parse_ov(text)?,
                None => {
                    let inst = random_ov(&mut rng, args.n, args.d, args.density);
                    out.put(".ov", &serialize_ov(&inst))?;
                    inst
                }
            };
            let alphabet = Alphabet::with_glyphs(ov_symbols::GLYPHS.chars())?;
            let (w, gs) = ov_to_match(&inst)?;
            let (p, gc) = gs.into_parts();
            out.word(".word", &alphabet, w)?;
            out.word(".pattern", &alphabet, p)?;
            out.constraints(&gc)?;
        }
        GenKind::SatNuni => {
            let f = cnf(&mut out, &mut rng)?;
            write_nuni(&mut out, &sat_to_metanuni(&f))?;
        }
        GenKind::KisNuni => {
            let g: Graph = match &source {
                Some(text) => parse_graph(text)?,
                None => {
                    let g = random_graph(&mut rng, args.n, args.edge_prob);
                    out.put(".graph", &serialize_graph(&g))?;
                    g
                }
            };
            write_nuni(&mut out, &kis_to_metanuni(&g, args.k)?)?;
        }
        GenKind::SatNuniBin => {
            let f = cnf(&mut out, &mut rng)?;
            let alphabet = Alphabet::with_glyphs("ab".chars())?;
            let (s, gc, t) = sat_to_nuni_binary(&f);
            out.word(".word", &alphabet, s)?;
            out.word(".ref.word", &alphabet, t)?;
            out.constraints(&gc)?;
        }
        GenKind::SatEq => {
            let f = cnf(&mut out, &mut rng)?;
            let alphabet = Alphabet::with_glyphs("01".chars())?;
            let (w, gs, eq) = sat_to_match_equalities(&f)?;
            let (p, gc) = gs.into_parts();
            out.word(".word", &alphabet, w)?;
            out.word(".pattern", &alphabet, p)?;
            out.constraints(&gc)?;
            out.put(".eq", &serialize_equalities(eq.pairs()))?;
        }
    }
    Ok(out.written)
}
