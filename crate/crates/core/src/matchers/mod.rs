//! Matching a gapped sequence against a word.
//!
//! All matchers return `Ok(Some(e))` with a witness embedding, `Ok(None)`
//! when no embedding exists, and an error when the input violates the
//! matcher's contract. [`match_naive`] is the quadratic reference; the
//! others share a block pipeline and differ in how they cross one gap.

mod equalities;
mod forest;
mod pipeline;

pub use equalities::{match_with_equalities, EqualitySystem};
pub use forest::{build_trace_forest, LevelAncestorIndex, TraceForest};
pub use pipeline::{match_length, match_regular, match_reglen};
pub(crate) use pipeline::{cross_gap, NONE};

use crate::error::Result;
use crate::model::{Embedding, GapConstraint, GappedSequence, Word};

/// Which matcher to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Naive,
    Length,
    Regular,
    RegLen,
    /// Picks the cheapest matcher that supports every constraint present.
    Auto,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Length => "length",
            Algorithm::Regular => "regular",
            Algorithm::RegLen => "reglen",
            Algorithm::Auto => "auto",
        }
    }

    /// The concrete matcher `Auto` resolves to for `gs`.
    pub fn resolve(self, gs: &GappedSequence) -> Algorithm {
        match self {
            Algorithm::Auto => {
                let gc = gs.constraints();
                if gc.is_length_only() {
                    Algorithm::Length
                } else if gc.is_regular_only() {
                    Algorithm::Regular
                } else {
                    Algorithm::RegLen
                }
            }
            a => a,
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "naive" => Algorithm::Naive,
            "length" => Algorithm::Length,
            "regular" => Algorithm::Regular,
            "reglen" => Algorithm::RegLen,
            "auto" => Algorithm::Auto,
            other => return Err(format!("unknown algorithm {other:?}")),
        })
    }
}

pub fn run_matcher(algo: Algorithm, w: &Word, gs: &GappedSequence) -> Result<Option<Embedding>> {
    match algo.resolve(gs) {
        Algorithm::Naive => match_naive(w, gs),
        Algorithm::Length => match_length(w, gs),
        Algorithm::Regular => match_regular(w, gs),
        Algorithm::RegLen | Algorithm::Auto => match_reglen(w, gs),
    }
}

/// Reference matcher: for every active end position stream each gap
/// constraint forward over all candidate gaps. `O(n² k)` time.
pub fn match_naive(w: &Word, gs: &GappedSequence) -> Result<Option<Embedding>> {
    let gc = gs.constraints();
    gc.check_word(w)?;
    let p = gs.pattern();
    let (n, k) = (w.len(), p.len());
    if k == 0 {
        return Ok(Some(Embedding::default()));
    }
    const NONE: usize = usize::MAX;
    // pred[t][i]: for p[t] placed at i, where p[t-1] was placed (0-based t).
    let mut active: Vec<bool> = (0..=n).map(|i| i >= 1 && w.at(i) == p[0]).collect();
    let mut preds: Vec<Vec<usize>> = Vec::with_capacity(k - 1);
    for t in 0..k - 1 {
        let mut next = vec![false; n + 1];
        let mut pred = vec![NONE; n + 1];
        let target = p[t + 1];
        for j in (1..=n).filter(|&j| active[j]) {
            let gap = gc.gap(t);
            let (lo, hi) = gap.window();
            let hi = hi.clamp(n);
            let dfa = gap.dfa().map(|id| gc.dfa(id));
            let mut state = dfa.map(|d| d.initial());
            for i in j + 1..=n {
                let len = i - j - 1;
                if len > hi {
                    break;
                }
                let in_lang = match (dfa, state) {
                    (Some(d), Some(q)) => d.is_final(q),
                    _ => true,
                };
                if len >= lo && in_lang && w.at(i) == target && pred[i] == NONE {
                    next[i] = true;
                    pred[i] = j;
                }
                if let (Some(d), Some(q)) = (dfa, state) {
                    state = Some(d.step(q, w.at(i)));
                }
            }
        }
        active = next;
        preds.push(pred);
    }
    let Some(last) = (1..=n).find(|&i| active[i]) else {
        return Ok(None);
    };
    let mut pos = vec![last; k];
    for t in (1..k).rev() {
        pos[t - 1] = preds[t - 1][pos[t]];
    }
    Ok(Some(Embedding::from_sorted(pos)))
}

pub(crate) fn is_length_class(g: &GapConstraint) -> bool {
    matches!(g, GapConstraint::Zero | GapConstraint::Length { .. })
}
