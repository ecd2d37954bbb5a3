//! Words, gap constraints, gapped sequences and embeddings.
//!
//! Symbols are dense integer ids `1..=σ`. Positions in a word are 1-based
//! throughout, so an embedding of a length-`k` pattern into `w` is a strictly
//! increasing list of positions in `1..=|w|`, and the `j`-th gap is the
//! factor `w[e(j)+1 .. e(j+1)-1]`.

use std::fmt;
use std::ops::Deref;

use crate::automata::Dfa;
use crate::error::{Error, Result};

pub type Symbol = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
    glyphs: Option<Vec<char>>,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::Input("alphabet must contain at least one symbol".into()));
        }
        Ok(Alphabet { size, glyphs: None })
    }

    /// Alphabet whose `i`-th glyph (0-based) is symbol `i + 1`.
    pub fn with_glyphs(glyphs: impl IntoIterator<Item = char>) -> Result<Self> {
        let glyphs: Vec<char> = glyphs.into_iter().collect();
        if glyphs.is_empty() {
            return Err(Error::Input("alphabet must contain at least one symbol".into()));
        }
        for (i, c) in glyphs.iter().enumerate() {
            if glyphs[..i].contains(c) {
                return Err(Error::Input(format!("duplicate glyph {c:?} in alphabet")));
            }
            if c.is_whitespace() {
                return Err(Error::Input("whitespace cannot be used as a glyph".into()));
            }
        }
        Ok(Alphabet {
            size: glyphs.len() as u32,
            glyphs: Some(glyphs),
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn glyphs(&self) -> Option<&[char]> {
        self.glyphs.as_deref()
    }

    pub fn glyph(&self, s: Symbol) -> Option<char> {
        self.glyphs
            .as_ref()
            .and_then(|g| g.get((s as usize).checked_sub(1)?).copied())
    }

    pub fn symbol_of(&self, c: char) -> Option<Symbol> {
        self.glyphs
            .as_ref()?
            .iter()
            .position(|&g| g == c)
            .map(|i| i as Symbol + 1)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (1..=self.size).contains(&s)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        1..=self.size
    }

    /// The alphabet with one fresh symbol `σ + 1` appended.
    pub fn extended(&self, glyph: char) -> Result<Alphabet> {
        match &self.glyphs {
            Some(g) => Alphabet::with_glyphs(g.iter().copied().chain(std::iter::once(glyph))),
            None => Alphabet::new(self.size + 1),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Builds a word, rejecting symbols outside the alphabet.
    pub fn checked(symbols: Vec<Symbol>, alphabet: &Alphabet) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::Input(format!(
                "symbol {bad} outside alphabet [1, {}]",
                alphabet.size()
            )));
        }
        Ok(Word(symbols))
    }

    /// Maps each char through the alphabet's glyph table.
    pub fn from_glyphs(text: &str, alphabet: &Alphabet) -> Result<Self> {
        text.chars()
            .map(|c| {
                alphabet
                    .symbol_of(c)
                    .ok_or_else(|| Error::Input(format!("unknown glyph {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    /// Symbol at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> Symbol {
        self.0[pos - 1]
    }

    /// The factor `w[i..=j]` (1-based, inclusive); empty when `j < i`.
    pub fn factor(&self, i: usize, j: usize) -> &[Symbol] {
        if j < i {
            &[]
        } else {
            &self.0[i - 1..j]
        }
    }

    pub fn max_symbol(&self) -> Symbol {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match alphabet.glyphs() {
            Some(_) => self
                .0
                .iter()
                .map(|&s| alphabet.glyph(s).unwrap_or('?'))
                .collect(),
            None => self
                .0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Upper end of a length window. `Inf` is a sentinel, never a large number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpperBound {
    Finite(usize),
    Inf,
}

impl UpperBound {
    /// The bound as a concrete number once the word length `n` is known.
    pub fn clamp(self, n: usize) -> usize {
        match self {
            UpperBound::Finite(h) => h.min(n),
            UpperBound::Inf => n,
        }
    }

    pub fn admits(self, len: usize) -> bool {
        match self {
            UpperBound::Finite(h) => len <= h,
            UpperBound::Inf => true,
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Finite(h) => write!(f, "{h}"),
            UpperBound::Inf => f.write_str("inf"),
        }
    }
}

/// Index into the DFA table of a [`GapConstraints`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DfaId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapConstraint {
    /// The set `{ε}`.
    Zero,
    Length { lo: usize, hi: UpperBound },
    Regular(DfaId),
    RegLen { lo: usize, hi: UpperBound, dfa: DfaId },
}

impl GapConstraint {
    pub fn length(lo: usize, hi: usize) -> Self {
        GapConstraint::Length {
            lo,
            hi: UpperBound::Finite(hi),
        }
    }

    /// `Σ*` as a length window.
    pub fn any() -> Self {
        GapConstraint::Length {
            lo: 0,
            hi: UpperBound::Inf,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GapConstraint::Zero)
    }

    pub fn dfa(&self) -> Option<DfaId> {
        match *self {
            GapConstraint::Regular(d) | GapConstraint::RegLen { dfa: d, .. } => Some(d),
            _ => None,
        }
    }

    /// Length window `(lo, hi)` implied by the constraint, before clamping.
    pub fn window(&self) -> (usize, UpperBound) {
        match *self {
            GapConstraint::Zero => (0, UpperBound::Finite(0)),
            GapConstraint::Length { lo, hi } | GapConstraint::RegLen { lo, hi, .. } => (lo, hi),
            GapConstraint::Regular(_) => (0, UpperBound::Inf),
        }
    }
}

/// A tuple of gap constraints together with the DFAs its regular members use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapConstraints {
    gaps: Vec<GapConstraint>,
    dfas: Vec<Dfa>,
}

impl GapConstraints {
    pub fn new(gaps: Vec<GapConstraint>, dfas: Vec<Dfa>) -> Result<Self> {
        for (i, g) in gaps.iter().enumerate() {
            if let Some(DfaId(id)) = g.dfa() {
                if id >= dfas.len() {
                    return Err(Error::Config(format!(
                        "constraint {} references missing DFA {id}",
                        i + 1
                    )));
                }
            }
            let (lo, hi) = g.window();
            if !hi.admits(lo) {
                return Err(Error::Input(format!(
                    "constraint {}: lower bound {lo} exceeds upper bound {hi}",
                    i + 1
                )));
            }
        }
        Ok(GapConstraints { gaps, dfas })
    }

    /// Constraints made only of length windows (no DFAs).
    pub fn lengths(gaps: Vec<GapConstraint>) -> Result<Self> {
        GapConstraints::new(gaps, Vec::new())
    }

    /// `k - 1` copies of `Σ*`: classical subsequences of length `k`.
    pub fn unconstrained(k: usize) -> Self {
        GapConstraints {
            gaps: vec![GapConstraint::any(); k.saturating_sub(1)],
            dfas: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn gaps(&self) -> &[GapConstraint] {
        &self.gaps
    }

    pub fn gap(&self, idx: usize) -> &GapConstraint {
        &self.gaps[idx]
    }

    pub fn dfas(&self) -> &[Dfa] {
        &self.dfas
    }

    pub fn dfa(&self, id: DfaId) -> &Dfa {
        &self.dfas[id.0]
    }

    /// Number of non-zero gaps.
    pub fn nz(&self) -> usize {
        self.gaps.iter().filter(|g| !g.is_zero()).count()
    }

    /// Total DFA state count over the non-zero gaps.
    pub fn states(&self) -> usize {
        self.gaps
            .iter()
            .filter_map(|g| g.dfa())
            .map(|id| self.dfa(id).num_states())
            .sum()
    }

    /// Total size of the DFA representations over the non-zero gaps.
    pub fn size(&self) -> usize {
        self.gaps
            .iter()
            .filter_map(|g| g.dfa())
            .map(|id| self.dfa(id).size())
            .sum()
    }

    pub fn is_length_only(&self) -> bool {
        self.gaps
            .iter()
            .all(|g| matches!(g, GapConstraint::Zero | GapConstraint::Length { .. }))
    }

    pub fn is_regular_only(&self) -> bool {
        self.gaps
            .iter()
            .all(|g| matches!(g, GapConstraint::Zero | GapConstraint::Regular(_)))
    }

    /// Membership of a gap string in the `idx`-th constraint (0-based).
    pub fn accepts(&self, idx: usize, gap: &[Symbol]) -> bool {
        match self.gaps[idx] {
            GapConstraint::Zero => gap.is_empty(),
            GapConstraint::Length { lo, hi } => gap.len() >= lo && hi.admits(gap.len()),
            GapConstraint::Regular(d) => self.dfa(d).run(gap),
            GapConstraint::RegLen { lo, hi, dfa } => {
                gap.len() >= lo && hi.admits(gap.len()) && self.dfa(dfa).run(gap)
            }
        }
    }

    /// Rejects words using symbols that some referenced DFA does not cover.
    pub fn check_word(&self, w: &[Symbol]) -> Result<()> {
        let max = w.iter().copied().max().unwrap_or(0);
        for g in &self.gaps {
            if let Some(id) = g.dfa() {
                let sigma = self.dfa(id).sigma();
                if max > sigma {
                    return Err(Error::Config(format!(
                        "word uses symbol {max} but DFA {} only covers [1, {sigma}]",
                        id.0
                    )));
                }
            }
        }
        Ok(())
    }

    /// Appends another tuple, rebasing its DFA references.
    pub fn concat(&self, other: &GapConstraints) -> GapConstraints {
        let base = self.dfas.len();
        let mut gaps = self.gaps.clone();
        gaps.extend(other.gaps.iter().map(|g| match *g {
            GapConstraint::Regular(DfaId(d)) => GapConstraint::Regular(DfaId(d + base)),
            GapConstraint::RegLen { lo, hi, dfa } => GapConstraint::RegLen {
                lo,
                hi,
                dfa: DfaId(dfa.0 + base),
            },
            g => g,
        }));
        let mut dfas = self.dfas.clone();
        dfas.extend(other.dfas.iter().cloned());
        GapConstraints { gaps, dfas }
    }

    pub(crate) fn map_parts(
        &self,
        gaps: impl FnMut(&GapConstraint) -> GapConstraint,
        dfas: impl FnMut(&Dfa) -> Dfa,
    ) -> GapConstraints {
        GapConstraints {
            gaps: self.gaps.iter().map(gaps).collect(),
            dfas: self.dfas.iter().map(dfas).collect(),
        }
    }
}

/// A pattern with one gap constraint between each pair of adjacent symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GappedSequence {
    pattern: Word,
    gc: GapConstraints,
}

impl GappedSequence {
    pub fn new(pattern: Word, gc: GapConstraints) -> Result<Self> {
        if gc.len() != pattern.len().saturating_sub(1) {
            return Err(Error::Input(format!(
                "pattern of length {} needs {} constraints, got {}",
                pattern.len(),
                pattern.len().saturating_sub(1),
                gc.len()
            )));
        }
        Ok(GappedSequence { pattern, gc })
    }

    /// Classical subsequence pattern: every gap is `Σ*`.
    pub fn unconstrained(pattern: Word) -> Self {
        let gc = GapConstraints::unconstrained(pattern.len());
        GappedSequence { pattern, gc }
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    pub fn constraints(&self) -> &GapConstraints {
        &self.gc
    }

    pub fn k(&self) -> usize {
        self.pattern.len()
    }

    pub fn into_parts(self) -> (Word, GapConstraints) {
        (self.pattern, self.gc)
    }
}

/// Strictly increasing 1-based positions `e(1) < … < e(k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) {
            return Err(Error::Input("positions are 1-based".into()));
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Input("embedding positions must be strictly increasing".into()));
        }
        Ok(Embedding(positions))
    }

    pub(crate) fn from_sorted(positions: Vec<usize>) -> Self {
        debug_assert!(positions.windows(2).all(|p| p[0] < p[1]));
        Embedding(positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `j`-th gap string (1-based `j`), `w[e(j)+1 .. e(j+1)-1]`.
    pub fn gap<'w>(&self, w: &'w Word, j: usize) -> &'w [Symbol] {
        w.factor(self.0[j - 1] + 1, self.0[j] - 1)
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Checks that `e` embeds the pattern into `w` and every gap satisfies its constraint.
pub fn verify_embedding(w: &Word, gs: &GappedSequence, e: &Embedding) -> Result<bool> {
    if e.len() != gs.k() {
        return Err(Error::Input(format!(
            "embedding has {} positions, pattern has {}",
            e.len(),
            gs.k()
        )));
    }
    if let Some(&bad) = e.positions().iter().find(|&&p| p == 0 || p > w.len()) {
        return Err(Error::Input(format!(
            "position {bad} outside [1, {}]",
            w.len()
        )));
    }
    if e.positions().iter().zip(gs.pattern().iter()).any(|(&pos, &s)| w.at(pos) != s) {
        return Ok(false);
    }
    let gc = gs.constraints();
    gc.check_word(w)?;
    Ok((1..gs.k()).all(|j| gc.accepts(j - 1, e.gap(w, j))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub seq: GappedSequence,
    /// Some lower bound exceeds the word length, so no embedding exists.
    pub infeasible: bool,
}

/// Clamps every upper bound to `n` and rewrites `Length(0,0)` to `Zero`.
pub fn normalize(gs: &GappedSequence, n: usize) -> Normalized {
    let mut infeasible = false;
    let gc = gs.constraints().map_parts(
        |g| {
            let (lo, _) = g.window();
            if lo > n {
                infeasible = true;
            }
            match *g {
                GapConstraint::Length { lo: 0, hi } if hi.clamp(n) == 0 => GapConstraint::Zero,
                GapConstraint::Length { lo, hi } => GapConstraint::Length {
                    lo,
                    hi: UpperBound::Finite(hi.clamp(n).max(lo)),
                },
                GapConstraint::RegLen { lo, hi, dfa } => GapConstraint::RegLen {
                    lo,
                    hi: UpperBound::Finite(hi.clamp(n).max(lo)),
                    dfa,
                },
                g => g,
            }
        },
        Dfa::clone,
    );
    Normalized {
        seq: GappedSequence {
            pattern: gs.pattern().clone(),
            gc,
        },
        infeasible,
    }
}

/// A pattern wrapped as `$p$` so prefix and suffix gaps become ordinary gaps.
#[derive(Clone, Debug)]
pub struct BoundaryWrap {
    pub seq: GappedSequence,
    pub alphabet: Alphabet,
    pub marker: Symbol,
}

impl BoundaryWrap {
    /// Maps a target word `w` to `$w$`.
    pub fn wrap_word(&self, w: &Word) -> Word {
        std::iter::once(self.marker)
            .chain(w.iter().copied())
            .chain(std::iter::once(self.marker))
            .collect()
    }
}

/// Turns `k + 1` constraints (prefix, interior gaps, suffix) on `p` into a
/// plain gapped sequence `$p$` over `Σ ∪ {$}`.
pub fn wrap_boundary(p: &Word, full_gc: &GapConstraints, alphabet: &Alphabet) -> Result<BoundaryWrap> {
    if full_gc.len() != p.len() + 1 {
        return Err(Error::Input(format!(
            "boundary wrapping needs {} constraints, got {}",
            p.len() + 1,
            full_gc.len()
        )));
    }
    let marker = alphabet.size() + 1;
    let ext = alphabet.extended('$')?;
    let gc = full_gc.map_parts(|g| *g, |d| d.with_sigma(marker));
    let pattern: Word = std::iter::once(marker)
        .chain(p.iter().copied())
        .chain(std::iter::once(marker))
        .collect();
    Ok(BoundaryWrap {
        seq: GappedSequence::new(pattern, gc)?,
        alphabet: ext,
        marker,
    })
}
