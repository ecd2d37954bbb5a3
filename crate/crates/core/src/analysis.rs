//! Universality, containment and equivalence of gapped-subsequence sets.
//!
//! `Sub_gc(w)` is the set of length-`k` words that occur in `w` as a
//! gapped subsequence, where `k = |gc| + 1`. The general problems are
//! decided by enumerating `Σ^k` depth first in lexicographic order; each
//! prefix keeps the set of end positions of its embeddings, so extending a
//! prefix by one symbol costs one gap crossing instead of a fresh match.

use num_bigint::BigUint;

use crate::automata::{build_co_subsequence_automaton, build_subsequence_automaton, product_shortest_accepted};
use crate::error::{Error, Result};
use crate::matchers::{cross_gap, NONE};
use crate::model::{Alphabet, GapConstraints, Symbol, Word};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub decision: bool,
    /// For a negative universality answer, the least missing word; for a
    /// negative containment answer, the least word of the left set missing
    /// from the right one.
    pub witness: Option<Word>,
    /// Prefixes visited by the enumeration.
    pub candidates_checked: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Largest `σ^k` the enumeration may face.
    pub budget: u64,
    /// Threads to split the first symbol over; `0` and `1` run inline.
    pub workers: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Fails with a size error when `σ^k` exceeds `budget`.
pub fn check_budget(sigma: u32, k: usize, budget: u64) -> Result<()> {
    let fits = u32::try_from(k)
        .ok()
        .and_then(|k| (sigma as u64).checked_pow(k))
        .is_some_and(|total| total <= budget);
    if fits {
        Ok(())
    } else {
        let candidates = if k <= 256 {
            format!("{sigma}^{k} = {}", BigUint::from(sigma).pow(k as u32))
        } else {
            format!("{sigma}^{k}")
        };
        Err(Error::Size {
            candidates,
            budget,
        })
    }
}

fn check_symbols(w: &Word, alphabet: &Alphabet) -> Result<()> {
    match w.iter().find(|&&a| !alphabet.contains(a)) {
        Some(a) => Err(Error::Input(format!(
            "symbol {a} outside alphabet [1, {}]",
            alphabet.size()
        ))),
        None => Ok(()),
    }
}

/// End positions of the embeddings of the current prefix in one word.
struct Tracker<'a> {
    w: &'a Word,
    gc: &'a GapConstraints,
}

impl Tracker<'_> {
    fn first(&self, a: Symbol) -> Vec<bool> {
        (0..=self.w.len()).map(|i| i >= 1 && self.w.at(i) == a).collect()
    }

    /// Gap ends reachable from `d` across gap `t`.
    fn cross(&self, t: usize, d: &[bool]) -> Result<Vec<bool>> {
        if !d.iter().any(|&b| b) {
            return Ok(vec![false; d.len()]);
        }
        Ok(cross_gap(self.w, self.gc, t, d)?.into_iter().map(|o| o != NONE).collect())
    }

    fn extend(&self, f: &[bool], a: Symbol) -> Vec<bool> {
        (0..=self.w.len())
            .map(|i| i >= 1 && f[i - 1] && self.w.at(i) == a)
            .collect()
    }
}

/// Depth-first search for the least `v ∈ Σ^k` with `v ∈ Sub(left)` (or any
/// `v` when `left` is absent) and `v ∉ Sub(right)`.
struct Search<'a> {
    left: Option<Tracker<'a>>,
    right: Tracker<'a>,
    sigma: u32,
    k: usize,
    checked: u64,
}

fn nonempty(d: &[bool]) -> bool {
    d.iter().any(|&b| b)
}

impl Search<'_> {
    fn run_from(&mut self, first: Symbol) -> Result<Option<Word>> {
        let left = self.left.as_ref().map(|t| t.first(first));
        let right = self.right.first(first);
        let mut prefix = vec![first];
        self.visit(&mut prefix, left, right)
    }

    fn visit(&mut self, prefix: &mut Vec<Symbol>, left: Option<Vec<bool>>, right: Vec<bool>) -> Result<Option<Word>> {
        self.checked += 1;
        if left.as_ref().is_some_and(|l| !nonempty(l)) {
            return Ok(None);
        }
        let right_alive = nonempty(&right);
        if !right_alive && self.left.is_none() {
            let mut v = prefix.clone();
            v.resize(self.k, 1);
            return Ok(Some(Word::new(v)));
        }
        let t = prefix.len();
        if t == self.k {
            return Ok((!right_alive).then(|| Word::new(prefix.clone())));
        }
        let left_gap = match (&self.left, &left) {
            (Some(tr), Some(d)) => Some(tr.cross(t - 1, d)?),
            _ => None,
        };
        let right_gap = self.right.cross(t - 1, &right)?;
        for a in 1..=self.sigma {
            let l = match (&self.left, &left_gap) {
                (Some(tr), Some(f)) => Some(tr.extend(f, a)),
                _ => None,
            };
            let r = self.right.extend(&right_gap, a);
            prefix.push(a);
            let found = self.visit(prefix, l, r)?;
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn search(
    left: Option<&Word>,
    right: &Word,
    gc: &GapConstraints,
    sigma: u32,
    cfg: &AnalysisConfig,
) -> Result<AnalysisReport> {
    let k = gc.len() + 1;
    check_budget(sigma, k, cfg.budget)?;
    if let Some(l) = left {
        gc.check_word(l)?;
    }
    gc.check_word(right)?;
    let make = |firsts: Vec<Symbol>| -> Result<(Option<(Symbol, Word)>, u64)> {
        let mut s = Search {
            left: left.map(|w| Tracker { w, gc }),
            right: Tracker { w: right, gc },
            sigma,
            k,
            checked: 0,
        };
        for a in firsts {
            if let Some(v) = s.run_from(a)? {
                return Ok((Some((a, v)), s.checked));
            }
        }
        Ok((None, s.checked))
    };
    let workers = cfg.workers.clamp(1, sigma as usize);
    let results: Vec<Result<(Option<(Symbol, Word)>, u64)>> = if workers == 1 {
        vec![make((1..=sigma).collect())]
    } else {
        let chunks: Vec<Vec<Symbol>> = (0..workers)
            .map(|w| (1..=sigma).filter(|a| (*a as usize - 1) % workers == w).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|c| {
                    let make = &make;
                    scope.spawn(move || make(c))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut best: Option<(Symbol, Word)> = None;
    let mut checked = 0;
    for r in results {
        let (found, c) = r?;
        checked += c;
        if let Some((a, v)) = found {
            if best.as_ref().is_none_or(|(b, _)| a < *b) {
                best = Some((a, v));
            }
        }
    }
    Ok(AnalysisReport {
        decision: best.is_none(),
        witness: best.map(|(_, v)| v),
        candidates_checked: checked,
    })
}

/// Is every word of length `|gc| + 1` a gapped subsequence of `w`?
pub fn universality(w: &Word, gc: &GapConstraints, alphabet: &Alphabet, cfg: &AnalysisConfig) -> Result<AnalysisReport> {
    check_symbols(w, alphabet)?;
    search(None, w, gc, alphabet.size(), cfg)
}

/// Is `Sub_gc(w) ⊆ Sub_gc(w2)`?
pub fn containment(
    w: &Word,
    w2: &Word,
    gc: &GapConstraints,
    alphabet: &Alphabet,
    cfg: &AnalysisConfig,
) -> Result<AnalysisReport> {
    check_symbols(w, alphabet)?;
    check_symbols(w2, alphabet)?;
    search(Some(w), w2, gc, alphabet.size(), cfg)
}

/// Is `Sub_gc(w) = Sub_gc(w2)`? The witness lies in the symmetric difference.
pub fn equivalence(
    w: &Word,
    w2: &Word,
    gc: &GapConstraints,
    alphabet: &Alphabet,
    cfg: &AnalysisConfig,
) -> Result<AnalysisReport> {
    let there = containment(w, w2, gc, alphabet, cfg)?;
    if !there.decision {
        return Ok(there);
    }
    let back = containment(w2, w, gc, alphabet, cfg)?;
    Ok(AnalysisReport {
        candidates_checked: there.candidates_checked + back.candidates_checked,
        ..back
    })
}

/// Containment of the length-`k` subsequence sets of `w` and `w2` without
/// gap constraints, via the product of a subsequence automaton and a
/// co-subsequence automaton. Polynomial in the input.
pub fn classical_containment(w: &Word, w2: &Word, k: usize, alphabet: &Alphabet) -> Result<(bool, Option<Word>)> {
    check_symbols(w, alphabet)?;
    check_symbols(w2, alphabet)?;
    if k == 0 || w.len() < k {
        return Ok((true, None));
    }
    let sub = build_subsequence_automaton(w, alphabet.size());
    let co = build_co_subsequence_automaton(w2, alphabet.size());
    let Some(short) = product_shortest_accepted(&sub, &co, k)? else {
        return Ok((true, None));
    };
    // Pad the short witness with further positions of w up to length k;
    // any supersequence of a non-subsequence of w2 is one as well.
    let mut used = vec![false; w.len()];
    let mut i = 0;
    for &a in short.iter() {
        while w[i] != a {
            i += 1;
        }
        used[i] = true;
        i += 1;
    }
    let mut extra = k - short.len();
    for u in used.iter_mut() {
        if extra == 0 {
            break;
        }
        if !*u {
            *u = true;
            extra -= 1;
        }
    }
    let witness = w.iter().zip(&used).filter(|(_, &u)| u).map(|(&a, _)| a).collect();
    Ok((false, Some(witness)))
}
