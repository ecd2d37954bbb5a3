use std::collections::VecDeque;

use super::forest::{build_trace_forest, LevelAncestorIndex};
use super::is_length_class;
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::model::{Embedding, GapConstraint, GapConstraints, GappedSequence, Symbol, Word};

pub(crate) const NONE: u32 = u32::MAX;

/// A maximal run of pattern symbols joined by zero gaps, as 0-based
/// inclusive pattern indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

pub(crate) fn split_blocks(gs: &GappedSequence) -> Vec<Block> {
    let k = gs.k();
    let mut blocks = Vec::new();
    let mut start = 0;
    for (t, g) in gs.constraints().gaps().iter().enumerate() {
        if !g.is_zero() {
            blocks.push(Block { start, end: t });
            start = t + 1;
        }
    }
    if k > 0 {
        blocks.push(Block { start, end: k - 1 });
    }
    blocks
}

/// `ends[i]` is true iff `block` occurs in `w` ending at position `i` (1-based).
pub(crate) fn occurrence_ends(w: &[Symbol], block: &[Symbol]) -> Vec<bool> {
    let m = block.len();
    let mut fail = vec![0usize; m];
    let mut len = 0;
    for i in 1..m {
        while len > 0 && block[i] != block[len] {
            len = fail[len - 1];
        }
        if block[i] == block[len] {
            len += 1;
        }
        fail[i] = len;
    }
    let mut ends = vec![false; w.len() + 1];
    let mut matched = 0;
    for (i, &c) in w.iter().enumerate() {
        while matched > 0 && (matched == m || block[matched] != c) {
            matched = fail[matched - 1];
        }
        if block[matched] == c {
            matched += 1;
        }
        if matched == m {
            ends[i + 1] = true;
        }
    }
    ends
}

/// Crosses one non-zero gap: given the active ends `d` of the previous
/// block, returns for every gap end `g` an origin `j` with `d[j]` and
/// `w[j+1..g]` in the constraint, or `NONE`.
type GapStep<'a> = dyn FnMut(&GapConstraint, &[bool]) -> Result<Vec<u32>> + 'a;

fn run_pipeline(w: &Word, gs: &GappedSequence, step: &mut GapStep<'_>) -> Result<Option<Embedding>> {
    let k = gs.k();
    if k == 0 {
        return Ok(Some(Embedding::default()));
    }
    if w.len() >= NONE as usize {
        return Err(Error::Input("word too long".into()));
    }
    gs.constraints().check_word(w)?;
    let n = w.len();
    let p = gs.pattern();
    let blocks = split_blocks(gs);
    let mut d = occurrence_ends(w, &p[blocks[0].start..=blocks[0].end]);
    let mut origins: Vec<Vec<u32>> = Vec::with_capacity(blocks.len() - 1);
    for pair in blocks.windows(2) {
        let (prev, next) = (pair[0], pair[1]);
        if !d.iter().any(|&b| b) {
            return Ok(None);
        }
        let f = step(gs.constraints().gap(prev.end), &d)?;
        let occ = occurrence_ends(w, &p[next.start..=next.end]);
        let len = next.len();
        d = (0..=n).map(|i| occ[i] && i >= len && f[i - len] != NONE).collect();
        origins.push(f);
    }
    let Some(last) = (1..=n).find(|&i| d[i]) else {
        return Ok(None);
    };
    let mut pos = vec![0usize; k];
    let mut end = last;
    for (b, block) in blocks.iter().enumerate().rev() {
        for (off, idx) in (block.start..=block.end).rev().enumerate() {
            pos[idx] = end - off;
        }
        if b > 0 {
            end = origins[b - 1][end - block.len()] as usize;
        }
    }
    Ok(Some(Embedding::from_sorted(pos)))
}

fn length_step(lo: usize, hi: usize, d: &[bool]) -> Vec<u32> {
    let n = d.len() - 1;
    let mut f = vec![NONE; n + 1];
    let mut window: VecDeque<usize> = VecDeque::new();
    for g in 0..=n {
        if g >= lo && d[g - lo] {
            window.push_back(g - lo);
        }
        while window.front().is_some_and(|&j| j + hi < g) {
            window.pop_front();
        }
        if let Some(&j) = window.front() {
            f[g] = j as u32;
        }
    }
    f
}

fn regular_step(w: &[Symbol], dfa: &Dfa, d: &[bool]) -> Vec<u32> {
    let n = w.len();
    let states = dfa.num_states();
    let mut f = vec![NONE; n + 1];
    // best[q]: smallest active origin whose run over w[j+1..g] is in state q.
    let mut best = vec![NONE; states];
    let mut next = vec![NONE; states];
    for g in 0..=n {
        if g > 0 {
            next.fill(NONE);
            let a = w[g - 1];
            for (q, &j) in best.iter().enumerate() {
                if j != NONE {
                    let r = dfa.step(q, a);
                    next[r] = next[r].min(j);
                }
            }
            std::mem::swap(&mut best, &mut next);
        }
        if d[g] && best[dfa.initial()] == NONE {
            best[dfa.initial()] = g as u32;
        }
        f[g] = dfa
            .finals()
            .map(|q| best[q])
            .min()
            .unwrap_or(NONE);
    }
    f
}

fn reglen_step(w: &[Symbol], dfa: &Dfa, lo: usize, hi: usize, d: &[bool]) -> Result<Vec<u32>> {
    let n = w.len();
    let mut f = vec![NONE; n + 1];
    let starts: Vec<usize> = (0..=n).filter(|&j| d[j] && j + lo <= n).collect();
    if starts.is_empty() {
        return Ok(f);
    }
    let forest = build_trace_forest(w, dfa, &starts)?;
    let la = LevelAncestorIndex::build(&forest, lo);
    let mut origin = vec![NONE; forest.num_nodes()];
    for &j in starts.iter().rev() {
        let Some(mut u) = la.ancestor(forest.leaf(j), lo) else {
            continue;
        };
        let top = (j + hi).min(n);
        let mut col = j + lo;
        while col <= top && origin[u] == NONE {
            origin[u] = j as u32;
            match forest.parent(u) {
                Some(p) => u = p,
                None => break,
            }
            col += 1;
        }
    }
    for g in forest.first_column()..=n {
        f[g] = dfa
            .finals()
            .map(|q| origin[forest.node(g, q)])
            .min()
            .unwrap_or(NONE);
    }
    Ok(f)
}

/// Crosses gap `t` of `gc` from the active ends `d`, picking the cheapest
/// method for the constraint's class.
pub(crate) fn cross_gap(w: &[Symbol], gc: &GapConstraints, t: usize, d: &[bool]) -> Result<Vec<u32>> {
    let n = w.len();
    let g = gc.gap(t);
    Ok(match *g {
        GapConstraint::Zero => d.iter().enumerate().map(|(i, &b)| if b { i as u32 } else { NONE }).collect(),
        GapConstraint::Length { lo, hi } => length_step(lo, hi.clamp(n).max(lo), d),
        GapConstraint::Regular(id) => regular_step(w, gc.dfa(id), d),
        GapConstraint::RegLen { lo, hi, dfa } => reglen_step(w, gc.dfa(dfa), lo, hi.clamp(n).max(lo), d)?,
    })
}

/// Matcher for Zero and length-window constraints, `O(|w|·nz(gc))`.
pub fn match_length(w: &Word, gs: &GappedSequence) -> Result<Option<Embedding>> {
    if let Some(t) = gs.constraints().gaps().iter().position(|g| !is_length_class(g)) {
        return Err(Error::Usage(format!(
            "length matcher cannot handle constraint {} ({:?})",
            t + 1,
            gs.constraints().gap(t)
        )));
    }
    let n = w.len();
    run_pipeline(w, gs, &mut |g, d| {
        let (lo, hi) = g.window();
        Ok(length_step(lo, hi.clamp(n).max(lo), d))
    })
}

/// Matcher for Zero and DFA constraints, `O(|w|·states(gc) + size(gc))`.
pub fn match_regular(w: &Word, gs: &GappedSequence) -> Result<Option<Embedding>> {
    let gc = gs.constraints();
    if let Some(t) = gc
        .gaps()
        .iter()
        .position(|g| !matches!(g, GapConstraint::Zero | GapConstraint::Regular(_)))
    {
        return Err(Error::Usage(format!(
            "regular matcher cannot handle constraint {} ({:?})",
            t + 1,
            gc.gap(t)
        )));
    }
    run_pipeline(w, gs, &mut |g, d| {
        let id = g.dfa().expect("non-zero gap is regular");
        Ok(regular_step(w, gc.dfa(id), d))
    })
}

/// Matcher for any mix of constraint classes, via trace forests.
pub fn match_reglen(w: &Word, gs: &GappedSequence) -> Result<Option<Embedding>> {
    let gc = gs.constraints();
    let n = w.len();
    let sigma = w.max_symbol().max(1);
    let any = Dfa::universal(sigma);
    run_pipeline(w, gs, &mut |g, d| {
        let (lo, hi) = g.window();
        let dfa = g.dfa().map_or(&any, |id| gc.dfa(id));
        reglen_step(w, dfa, lo, hi.clamp(n).max(lo), d)
    })
}
