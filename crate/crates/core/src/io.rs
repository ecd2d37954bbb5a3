//! Line-oriented text formats.
//!
//! Lines whose first non-blank character is `#` are comments, except in
//! DIMACS files, which use `c`. Every `serialize_*` function produces text
//! that the matching `parse_*` function reads back to an equal value.

use std::collections::HashMap;

use crate::automata::{dfa_validate, Dfa, RawDfa};
use crate::error::{Error, Result};
use crate::model::{Alphabet, DfaId, GapConstraint, GapConstraints, UpperBound, Word};
use crate::reductions::{CnfFormula, Graph, Literal, OvInstance};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| err(line, format!("expected {what}, found {tok:?}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMode {
    /// One glyph per symbol; whitespace is ignored.
    Char,
    /// Whitespace-separated decimal symbol ids.
    Int,
}

pub fn parse_word(text: &str, mode: WordMode, alphabet: &Alphabet) -> Result<Word> {
    match mode {
        WordMode::Char => {
            if alphabet.glyphs().is_none() {
                return Err(Error::Usage("character mode needs an alphabet with glyphs".into()));
            }
            let squeezed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            Word::from_glyphs(&squeezed, alphabet)
        }
        WordMode::Int => {
            let symbols = text
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Input(format!("not a symbol id: {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Word::checked(symbols, alphabet)
        }
    }
}

pub fn serialize_word(w: &Word, mode: WordMode, alphabet: &Alphabet) -> Result<String> {
    match mode {
        WordMode::Char => w
            .iter()
            .map(|&s| {
                alphabet
                    .glyph(s)
                    .ok_or_else(|| Error::Input(format!("symbol {s} has no glyph")))
            })
            .collect(),
        WordMode::Int => {
            Word::checked(w.symbols().to_vec(), alphabet)?;
            Ok(w.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        }
    }
}

/// A word together with the alphabet it is written over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFile {
    pub alphabet: Alphabet,
    pub word: Word,
}

impl WordFile {
    pub fn mode(&self) -> WordMode {
        if self.alphabet.glyphs().is_some() {
            WordMode::Char
        } else {
            WordMode::Int
        }
    }
}

/// Reads `alphabet <glyphs>` or `sigma <n>`, then `word <text>`. The word
/// text may use `#` freely since only whole comment lines are skipped.
pub fn parse_word_file(text: &str) -> Result<WordFile> {
    let mut alphabet = None;
    let mut word = None;
    for (line, l) in content_lines(text) {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "alphabet" => {
                alphabet = Some(Alphabet::with_glyphs(rest.chars()).map_err(|e| err(line, e.to_string()))?)
            }
            "sigma" => {
                let n = number(rest, line, "alphabet size")?;
                alphabet = Some(Alphabet::new(n).map_err(|e| err(line, e.to_string()))?);
            }
            "word" => {
                if word.is_some() {
                    return Err(err(line, "second word line"));
                }
                let a = alphabet.as_ref().ok_or_else(|| err(line, "word before alphabet header"))?;
                let mode = if a.glyphs().is_some() { WordMode::Char } else { WordMode::Int };
                word = Some(parse_word(rest, mode, a).map_err(|e| err(line, e.to_string()))?);
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(0, "missing alphabet header"))?;
    Ok(WordFile {
        alphabet,
        word: word.unwrap_or_default(),
    })
}

pub fn serialize_word_file(f: &WordFile) -> Result<String> {
    let header = match f.alphabet.glyphs() {
        Some(g) => format!("alphabet {}", g.iter().collect::<String>()),
        None => format!("sigma {}", f.alphabet.size()),
    };
    Ok(format!("{header}\nword {}\n", serialize_word(&f.word, f.mode(), &f.alphabet)?))
}

fn parse_upper(tok: &str, line: usize) -> Result<UpperBound> {
    if tok == "inf" {
        Ok(UpperBound::Inf)
    } else {
        Ok(UpperBound::Finite(number(tok, line, "upper bound or inf")?))
    }
}

/// Reads `k <k>` followed by `k - 1` lines of `Z`, `L lo hi`, `R dfa` or
/// `RL lo hi dfa`. DFA references are resolved through `load`; repeated
/// references share one table entry.
pub fn parse_constraints<F>(text: &str, mut load: F) -> Result<GapConstraints>
where
    F: FnMut(&str) -> Result<Dfa>,
{
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| err(0, "missing k header"))?;
    let k: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["k", n] => number(n, line, "pattern length")?,
        _ => return Err(err(line, format!("expected \"k <n>\", found {header:?}"))),
    };
    let mut gaps = Vec::new();
    let mut dfas = Vec::new();
    let mut ids: HashMap<String, DfaId> = HashMap::new();
    let mut dfa_ref = |name: &str, line: usize| -> Result<DfaId> {
        if let Some(&id) = ids.get(name) {
            return Ok(id);
        }
        let d = load(name).map_err(|e| err(line, format!("cannot load DFA {name:?}: {e}")))?;
        dfas.push(d);
        let id = DfaId(dfas.len() - 1);
        ids.insert(name.to_string(), id);
        Ok(id)
    };
    let mut last_line = line;
    for (line, l) in lines {
        last_line = line;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let window = |lo: &str, hi: &str| -> Result<(usize, UpperBound)> {
            let lo: usize = number(lo, line, "lower bound")?;
            let hi = parse_upper(hi, line)?;
            if !hi.admits(lo) {
                return Err(err(line, format!("lower bound {lo} exceeds upper bound {hi}")));
            }
            Ok((lo, hi))
        };
        let g = match toks[..] {
            ["Z"] => GapConstraint::Zero,
            ["L", lo, hi] => {
                let (lo, hi) = window(lo, hi)?;
                GapConstraint::Length { lo, hi }
            }
            ["R", path] => GapConstraint::Regular(dfa_ref(path, line)?),
            ["RL", lo, hi, path] => {
                let (lo, hi) = window(lo, hi)?;
                GapConstraint::RegLen {
                    lo,
                    hi,
                    dfa: dfa_ref(path, line)?,
                }
            }
            _ => return Err(err(line, format!("unrecognised constraint {l:?}"))),
        };
        gaps.push(g);
    }
    if gaps.len() + 1 != k.max(1) {
        return Err(err(
            last_line,
            format!("k = {k} needs {} constraints, found {}", k.saturating_sub(1), gaps.len()),
        ));
    }
    GapConstraints::new(gaps, dfas).map_err(|e| err(last_line, e.to_string()))
}

/// Writes `gc`, naming DFA `i` by `name(DfaId(i))`.
pub fn serialize_constraints(gc: &GapConstraints, name: impl Fn(DfaId) -> String) -> String {
    let mut out = format!("k {}\n", gc.len() + 1);
    for g in gc.gaps() {
        let line = match *g {
            GapConstraint::Zero => "Z".to_string(),
            GapConstraint::Length { lo, hi } => format!("L {lo} {hi}"),
            GapConstraint::Regular(d) => format!("R {}", name(d)),
            GapConstraint::RegLen { lo, hi, dfa } => format!("RL {lo} {hi} {}", name(dfa)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Reads `states`, `initial`, `final`, `alphabet` directives and one
/// `trans q a r` line per transition. States are 0-based, symbols 1-based.
pub fn parse_raw_dfa(text: &str) -> Result<RawDfa> {
    let mut raw = RawDfa::default();
    let (mut states, mut initial, mut sigma, mut finals) = (None, None, None, None);
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[..] {
            ["states", n] => states = Some(number(n, line, "state count")?),
            ["initial", q] => initial = Some(number(q, line, "state")?),
            ["alphabet", s] => sigma = Some(number(s, line, "alphabet size")?),
            ["final", ref qs @ ..] => {
                let qs = qs.iter().map(|q| number(q, line, "state")).collect::<Result<Vec<usize>>>()?;
                finals.get_or_insert_with(Vec::new).extend(qs);
            }
            ["trans", q, a, r] => {
                raw.transitions
                    .push((number(q, line, "state")?, number(a, line, "symbol")?, number(r, line, "state")?));
            }
            _ => return Err(err(line, format!("unrecognised DFA line {l:?}"))),
        }
    }
    raw.states = states.ok_or_else(|| err(0, "missing states line"))?;
    raw.initial = initial.ok_or_else(|| err(0, "missing initial line"))?;
    raw.sigma = sigma.ok_or_else(|| err(0, "missing alphabet line"))?;
    raw.finals = finals.unwrap_or_default();
    Ok(raw)
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let raw = parse_raw_dfa(text)?;
    dfa_validate(&raw, &Alphabet::new(raw.sigma)?)?;
    Dfa::from_raw(&raw)
}

pub fn serialize_dfa(d: &Dfa) -> String {
    let raw = d.to_raw();
    let finals: Vec<String> = raw.finals.iter().map(usize::to_string).collect();
    let mut out = format!(
        "states {}\ninitial {}\nfinal {}\nalphabet {}\n",
        raw.states,
        raw.initial,
        finals.join(" "),
        raw.sigma
    );
    for (q, a, r) in raw.transitions {
        out.push_str(&format!("trans {q} {a} {r}\n"));
    }
    out
}

/// `n d` followed by `n` rows of the first set and `n` of the second. A
/// row is `d` bits, written contiguously or separated by blanks.
pub fn parse_ov(text: &str) -> Result<OvInstance> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| err(0, "missing \"n d\" header"))?;
    let (n, d): (usize, usize) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        [n, d] => (number(n, line, "vector count")?, number(d, line, "dimension")?),
        _ => return Err(err(line, format!("expected \"n d\", found {header:?}"))),
    };
    let mut rows = Vec::with_capacity(2 * n);
    for (line, l) in lines {
        let bits = l
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(err(line, format!("bad bit {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        if bits.len() != d {
            return Err(err(line, format!("row has {} bits, expected {d}", bits.len())));
        }
        rows.push(bits);
    }
    if rows.len() != 2 * n {
        return Err(err(0, format!("expected {} rows, found {}", 2 * n, rows.len())));
    }
    let b = rows.split_off(n);
    OvInstance::new(d, rows, b)
}

pub fn serialize_ov(inst: &OvInstance) -> String {
    let mut out = format!("{} {}\n", inst.n(), inst.d());
    for v in inst.a().iter().chain(inst.b()) {
        out.extend(v.iter().map(|&x| if x { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header, then
/// clauses as signed integers terminated by `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (line, l) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if l.is_empty() || l.starts_with('c') || l.starts_with('#') || l.starts_with('%') {
            continue;
        }
        last_line = line;
        if l.starts_with('p') {
            let toks: Vec<&str> = l.split_whitespace().collect();
            header = match toks[..] {
                ["p", "cnf", v, c] => Some((number::<usize>(v, line, "variable count")?, number::<usize>(c, line, "clause count")?)),
                _ => return Err(err(line, format!("bad problem line {l:?}"))),
            };
            continue;
        }
        let (vars, _) = header.ok_or_else(|| err(line, "clause before problem line"))?;
        for tok in l.split_whitespace() {
            let lit: i64 = number(tok, line, "literal")?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > vars {
                return Err(err(line, format!("variable {var} exceeds declared {vars}")));
            }
            current.push(Literal { var, positive: lit > 0 });
        }
    }
    let (vars, count) = header.ok_or_else(|| err(0, "missing problem line"))?;
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(err(last_line, format!("header declares {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses).map_err(|e| err(last_line, e.to_string()))
}

pub fn serialize_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.vars(), f.clauses().len());
    for c in f.clauses() {
        for l in c {
            let v = l.var as i64;
            out.push_str(&format!("{} ", if l.positive { v } else { -v }));
        }
        out.push_str("0\n");
    }
    out
}

/// `vertices <n>` followed by one `u v` line per edge. Loops are implicit.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| err(0, "missing vertices header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["vertices", n] => number(n, line, "vertex count")?,
        _ => return Err(err(line, format!("expected \"vertices <n>\", found {header:?}"))),
    };
    let mut edges = Vec::new();
    for (line, l) in lines {
        match l.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v] => edges.push((number(u, line, "vertex")?, number(v, line, "vertex")?)),
            _ => return Err(err(line, format!("expected \"u v\", found {l:?}"))),
        }
    }
    Graph::new(n, edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// One `i j` line per equality between 1-based gap indices.
pub fn parse_equalities(text: &str) -> Result<Vec<(usize, usize)>> {
    content_lines(text)
        .map(|(line, l)| match l.split_whitespace().collect::<Vec<_>>()[..] {
            [i, j] => Ok((number(i, line, "gap index")?, number(j, line, "gap index")?)),
            _ => Err(err(line, format!("expected \"i j\", found {l:?}"))),
        })
        .collect()
}

pub fn serialize_equalities(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(i, j)| format!("{i} {j}\n")).collect()
}
