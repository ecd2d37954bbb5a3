#![allow(dead_code)]

use gapseq::automata::Dfa;
use gapseq::{DfaId, Embedding, GapConstraint, GapConstraints, GappedSequence, UpperBound, Word};
use rand::Rng;

pub fn word(s: &str) -> Word {
    s.bytes().map(|b| (b - b'a' + 1) as u32).collect()
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize, sigma: u32) -> Word {
    (0..len).map(|_| rng.gen_range(1..=sigma)).collect()
}

/// All words over `[1, sigma]` of exactly length `k`, in lexicographic order.
pub fn all_words(sigma: u32, k: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (1..=sigma).map(move |a| {
                    let mut v = v.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}

/// Every strictly increasing k-tuple of positions in `[1, n]`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < left {
                break;
            }
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Membership of a gap string, evaluated straight from the definitions.
pub fn gap_ok(gc: &GapConstraints, t: usize, gap: &[u32]) -> bool {
    let in_window = |lo: usize, hi: UpperBound| {
        gap.len() >= lo
            && match hi {
                UpperBound::Inf => true,
                UpperBound::Finite(h) => gap.len() <= h,
            }
    };
    let run = |d: &Dfa| {
        let mut q = d.initial();
        for &a in gap {
            q = d.step(q, a);
        }
        d.is_final(q)
    };
    match *gc.gap(t) {
        GapConstraint::Zero => gap.is_empty(),
        GapConstraint::Length { lo, hi } => in_window(lo, hi),
        GapConstraint::Regular(id) => run(gc.dfa(id)),
        GapConstraint::RegLen { lo, hi, dfa } => in_window(lo, hi) && run(gc.dfa(dfa)),
    }
}

/// All embeddings of `gs` into `w` by enumeration of position tuples.
pub fn brute_embeddings(w: &Word, gs: &GappedSequence) -> Vec<Vec<usize>> {
    let p = gs.pattern();
    let gc = gs.constraints();
    increasing_tuples(w.len(), p.len())
        .into_iter()
        .filter(|e| {
            e.iter().zip(p.iter()).all(|(&i, &a)| w[i - 1] == a)
                && (0..e.len().saturating_sub(1)).all(|t| gap_ok(gc, t, &w[e[t]..e[t + 1] - 1]))
        })
        .collect()
}

pub fn brute_match(w: &Word, gs: &GappedSequence) -> bool {
    !brute_embeddings(w, gs).is_empty()
}

pub fn check_witness(w: &Word, gs: &GappedSequence, e: &Option<Embedding>) {
    if let Some(e) = e {
        assert!(
            gapseq::verify_embedding(w, gs, e).unwrap(),
            "invalid witness {e} for {:?} in {:?}",
            gs.pattern(),
            w
        );
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Length,
    Regular,
    RegLen,
}

pub fn random_dfa<R: Rng>(rng: &mut R, sigma: u32) -> Dfa {
    let states = rng.gen_range(1..=4usize);
    let table: Vec<usize> = (0..states * sigma as usize).map(|_| rng.gen_range(0..states)).collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_fn(states, sigma, 0, &finals, |q, a| table[q * sigma as usize + a as usize - 1]).unwrap()
}

fn random_window<R: Rng>(rng: &mut R, n: usize) -> (usize, UpperBound) {
    let lo = rng.gen_range(0..=3usize.min(n));
    let hi = if rng.gen_bool(0.2) {
        UpperBound::Inf
    } else {
        UpperBound::Finite(lo + rng.gen_range(0..=6))
    };
    (lo, hi)
}

/// Random constraints of the given class, with some Zero gaps mixed in.
pub fn random_constraints<R: Rng>(rng: &mut R, class: Class, gaps: usize, sigma: u32, n: usize) -> GapConstraints {
    let mut dfas = Vec::new();
    let mut out = Vec::with_capacity(gaps);
    for _ in 0..gaps {
        if rng.gen_bool(0.2) {
            out.push(GapConstraint::Zero);
            continue;
        }
        let g = match class {
            Class::Length => {
                let (lo, hi) = random_window(rng, n);
                GapConstraint::Length { lo, hi }
            }
            Class::Regular => {
                dfas.push(random_dfa(rng, sigma));
                GapConstraint::Regular(DfaId(dfas.len() - 1))
            }
            Class::RegLen => {
                dfas.push(random_dfa(rng, sigma));
                let (lo, hi) = random_window(rng, n);
                GapConstraint::RegLen { lo, hi, dfa: DfaId(dfas.len() - 1) }
            }
        };
        out.push(g);
    }
    GapConstraints::new(out, dfas).unwrap()
}

/// A pattern that often occurs: a random subsequence of `w` when possible.
pub fn random_pattern<R: Rng>(rng: &mut R, w: &Word, k: usize, sigma: u32) -> Word {
    if w.len() >= k && rng.gen_bool(0.7) {
        let mut idx: Vec<usize> = rand::seq::index::sample(rng, w.len(), k).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| w[i]).collect()
    } else {
        random_word(rng, k, sigma)
    }
}

/// `Sub_gc(w)` for patterns of length `gc.len() + 1`, by a forward sweep
/// over end positions that checks every gap with [`gap_ok`].
pub fn gc_subsequences(w: &Word, gc: &GapConstraints) -> std::collections::BTreeSet<Vec<u32>> {
    use std::collections::BTreeSet;
    let n = w.len();
    let k = gc.len() + 1;
    let mut ending: Vec<BTreeSet<Vec<u32>>> = (0..n).map(|i| BTreeSet::from([vec![w[i]]])).collect();
    for t in 0..k - 1 {
        let mut next: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); n];
        for i in 0..n {
            if ending[i].is_empty() {
                continue;
            }
            for j in i + 1..n {
                if gap_ok(gc, t, &w[i + 1..j]) {
                    for p in &ending[i] {
                        let mut p = p.clone();
                        p.push(w[j]);
                        next[j].insert(p);
                    }
                }
            }
        }
        ending = next;
    }
    ending.into_iter().flatten().collect()
}
