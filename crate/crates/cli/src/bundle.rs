//! Resolving command-line word, pattern and constraint arguments into one
//! consistent instance.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gapseq::io::{parse_constraints, parse_dfa, parse_equalities, parse_word, parse_word_file, WordMode};
use gapseq::matchers::EqualitySystem;
use gapseq::{Alphabet, GapConstraints, GappedSequence, Word};

/// A word argument: either a path to a word file or literal text.
#[derive(Clone, Debug)]
pub enum WordSource {
    File(PathBuf),
    Literal(String),
}

impl WordSource {
    pub fn from_arg(arg: &str) -> WordSource {
        let path = Path::new(arg);
        if !arg.is_empty() && path.is_file() {
            WordSource::File(path.to_path_buf())
        } else {
            WordSource::Literal(arg.to_string())
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AlphabetChoice {
    pub glyphs: Option<String>,
    pub sigma: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct Request {
    pub words: Vec<WordSource>,
    pub pattern: Option<WordSource>,
    pub constraints: Option<PathBuf>,
    /// Pattern length for unconstrained gaps when no constraint file is given.
    pub k: Option<usize>,
    pub equalities: Option<PathBuf>,
    pub alphabet: AlphabetChoice,
}

#[derive(Clone, Debug)]
pub struct InstanceBundle {
    pub alphabet: Alphabet,
    pub words: Vec<Word>,
    pub pattern: Option<Word>,
    pub constraints: Option<GapConstraints>,
    pub equalities: Option<EqualitySystem>,
    pub sources: Vec<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_constraints(path: &Path) -> Result<GapConstraints> {
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let text = read(path)?;
    let mut failure = None;
    let parsed = parse_constraints(&text, |name| {
        let dfa_path = dir.join(name);
        match fs::read_to_string(&dfa_path) {
            Ok(t) => parse_dfa(&t),
            Err(e) => {
                failure = Some(format!("cannot read {}: {e}", dfa_path.display()));
                Err(gapseq::Error::Config(format!("unloadable DFA {name:?}")))
            }
        }
    });
    match (parsed, failure) {
        (Ok(gc), _) => Ok(gc),
        (Err(e), Some(io)) => Err(anyhow::anyhow!("{}: {e} ({io})", path.display())),
        (Err(e), None) => Err(anyhow::anyhow!("{}: {e}", path.display())),
    }
}

fn letters_alphabet(texts: &[&str], min_size: u32) -> Result<Alphabet> {
    let mut top = 0u32;
    for t in texts {
        for c in t.chars().filter(|c| !c.is_whitespace()) {
            if !c.is_ascii_lowercase() {
                bail!("glyph {c:?} is not a lowercase letter; pass --alphabet or --sigma");
            }
            top = top.max(c as u32 - 'a' as u32 + 1);
        }
    }
    let size = top.max(min_size).max(1);
    if size > 26 {
        bail!("{size} symbols do not fit the default letters; pass --alphabet or --sigma");
    }
    Ok(Alphabet::with_glyphs(('a'..='z').take(size as usize))?)
}

impl InstanceBundle {
    pub fn load(req: &Request) -> Result<InstanceBundle> {
        let constraints = match (&req.constraints, req.k) {
            (Some(p), _) => Some(load_constraints(p)?),
            (None, Some(k)) => Some(GapConstraints::unconstrained(k)),
            (None, None) => None,
        };
        let dfa_sigma = constraints
            .as_ref()
            .and_then(|gc| gc.dfas().iter().map(|d| d.sigma()).max())
            .unwrap_or(0);

        let sources: Vec<&WordSource> = req.words.iter().chain(&req.pattern).collect();
        let mut files = Vec::new();
        for s in &sources {
            if let WordSource::File(p) = s {
                let f = parse_word_file(&read(p)?).with_context(|| p.display().to_string())?;
                files.push((p.clone(), f));
            }
        }
        let alphabet = match (&req.alphabet.glyphs, req.alphabet.sigma) {
            (Some(g), _) => Alphabet::with_glyphs(g.chars())?,
            (None, Some(n)) => Alphabet::new(n)?,
            (None, None) => match files.first() {
                Some((_, f)) => f.alphabet.clone(),
                None => {
                    let texts: Vec<&str> = sources
                        .iter()
                        .filter_map(|s| match s {
                            WordSource::Literal(t) => Some(t.as_str()),
                            WordSource::File(_) => None,
                        })
                        .collect();
                    letters_alphabet(&texts, dfa_sigma)?
                }
            },
        };
        for (p, f) in &files {
            if f.alphabet.size() != alphabet.size() {
                bail!(
                    "{} is written over {} symbols but the instance uses {}",
                    p.display(),
                    f.alphabet.size(),
                    alphabet.size()
                );
            }
        }
        if let Some(gc) = &constraints {
            if let Some(d) = gc.dfas().iter().find(|d| d.sigma() != alphabet.size()) {
                bail!(
                    "a gap DFA reads {} symbols but the alphabet has {}",
                    d.sigma(),
                    alphabet.size()
                );
            }
        }
        let mode = if alphabet.glyphs().is_some() { WordMode::Char } else { WordMode::Int };
        let mut files = files.into_iter();
        let mut resolve = |s: &WordSource| -> Result<Word> {
            match s {
                WordSource::File(_) => Ok(files.next().expect("file parsed above").1.word),
                WordSource::Literal(t) => Ok(parse_word(t, mode, &alphabet)?),
            }
        };
        let words = req.words.iter().map(&mut resolve).collect::<Result<Vec<_>>>()?;
        let pattern = req.pattern.as_ref().map(&mut resolve).transpose()?;

        let equalities = match &req.equalities {
            Some(p) => {
                let pairs = parse_equalities(&read(p)?).with_context(|| p.display().to_string())?;
                let gaps = match (&pattern, &constraints) {
                    (Some(p), _) => p.len().saturating_sub(1),
                    (None, Some(gc)) => gc.len(),
                    (None, None) => bail!("equalities need a pattern"),
                };
                Some(EqualitySystem::new(gaps, pairs)?)
            }
            None => None,
        };

        let mut paths: Vec<PathBuf> = sources
            .iter()
            .filter_map(|s| match s {
                WordSource::File(p) => Some(p.clone()),
                WordSource::Literal(_) => None,
            })
            .collect();
        paths.extend(req.constraints.iter().cloned());
        paths.extend(req.equalities.iter().cloned());

        let bundle = InstanceBundle {
            alphabet,
            words,
            pattern,
            constraints,
            equalities,
            sources: paths,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn validate(&self) -> Result<()> {
        if let (Some(p), Some(gc)) = (&self.pattern, &self.constraints) {
            if p.len() != gc.len() + 1 {
                bail!(
                    "pattern has length {} but the constraints describe {} gaps",
                    p.len(),
                    gc.len()
                );
            }
        }
        for w in self.words.iter().chain(&self.pattern) {
            Word::checked(w.symbols().to_vec(), &self.alphabet)?;
        }
        Ok(())
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    /// Constraints for a pattern of length `k`, unconstrained when none were given.
    pub fn constraints_or_free(&self, k: usize) -> GapConstraints {
        self.constraints.clone().unwrap_or_else(|| GapConstraints::unconstrained(k))
    }

    pub fn gapped_sequence(&self) -> Result<GappedSequence> {
        let p = self.pattern.clone().context("a pattern is required")?;
        let gc = self.constraints_or_free(p.len());
        Ok(GappedSequence::new(p, gc)?)
    }

    /// The constraint tuple of an analysis call; one of `-c` or `-k` is required.
    pub fn analysis_constraints(&self) -> Result<&GapConstraints> {
        self.constraints.as_ref().context("pass a constraint file with -c or a length with -k")
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.alphabet)
    }
}
