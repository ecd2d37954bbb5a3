//! Embedding counts and equivalence with multiplicities.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::analysis::check_budget;
use crate::automata::CountingNfa;
use crate::error::{Error, Result};
use crate::model::{Alphabet, GapConstraint, GapConstraints, Symbol, Word};

/// Exact embedding counts per length-`k` pattern; absent keys are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParikhVector {
    counts: BTreeMap<Word, BigUint>,
}

impl ParikhVector {
    pub fn get(&self, p: &Word) -> BigUint {
        self.counts.get(p).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigUint)> {
        self.counts.iter()
    }

    /// Number of patterns with a non-zero count.
    pub fn support(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

/// `gap_ok[i][l]`: does `w[i+1 ..= i+l]` lie in constraint `t`? Rows are
/// indexed by the 0-based start `i ∈ [0, n]`, and streaming the DFA keeps
/// each row linear.
fn membership_row(w: &[Symbol], gc: &GapConstraints, t: usize, i: usize) -> Vec<bool> {
    let n = w.len();
    let g = gc.gap(t);
    let (lo, hi) = g.window();
    let dfa = g.dfa().map(|id| gc.dfa(id));
    let mut q = dfa.map(|d| d.initial());
    let mut row = Vec::with_capacity(n - i + 1);
    for l in 0..=n - i {
        let in_lang = match (dfa, q) {
            (Some(d), Some(s)) => d.is_final(s),
            _ => true,
        };
        row.push(l >= lo && hi.admits(l) && in_lang);
        if let (Some(d), Some(s)) = (dfa, q) {
            if i + l < n {
                q = Some(d.step(s, w[i + l]));
            }
        }
        if matches!(g, GapConstraint::Zero | GapConstraint::Length { .. }) && !hi.admits(l) {
            row.resize(n - i + 1, false);
            break;
        }
    }
    row
}

/// Counts per end position after placing the next symbol `a`.
fn advance(w: &[Symbol], gc: &GapConstraints, t: usize, counts: &[BigUint], a: Symbol) -> Vec<BigUint> {
    let n = w.len();
    let mut next = vec![BigUint::zero(); n + 1];
    for (j, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let row = membership_row(w, gc, t, j);
        for i in j + 1..=n {
            if w[i - 1] == a && row[i - j - 1] {
                next[i] += c;
            }
        }
    }
    next
}

fn start_counts(w: &[Symbol], a: Symbol) -> Vec<BigUint> {
    (0..=w.len())
        .map(|i| if i >= 1 && w[i - 1] == a { BigUint::one() } else { BigUint::zero() })
        .collect()
}

/// Number of embeddings of `p` into `w` satisfying `gc`.
pub fn count_embeddings(w: &Word, p: &Word, gc: &GapConstraints) -> Result<BigUint> {
    if gc.len() + 1 != p.len() && !(p.is_empty() && gc.is_empty()) {
        return Err(Error::Input(format!(
            "pattern of length {} needs {} constraints, got {}",
            p.len(),
            p.len().saturating_sub(1),
            gc.len()
        )));
    }
    gc.check_word(w)?;
    if p.is_empty() {
        return Ok(BigUint::one());
    }
    let mut counts = start_counts(w, p[0]);
    for t in 0..p.len() - 1 {
        counts = advance(w, gc, t, &counts, p[t + 1]);
    }
    Ok(counts.into_iter().sum())
}

/// The full vector of counts over `Σ^k`, `k = |gc| + 1`.
pub fn parikh_k(w: &Word, gc: &GapConstraints, alphabet: &Alphabet, budget: u64) -> Result<ParikhVector> {
    let k = gc.len() + 1;
    check_budget(alphabet.size(), k, budget)?;
    gc.check_word(w)?;
    let mut out = ParikhVector::default();
    let mut prefix = Vec::with_capacity(k);
    fn walk(
        w: &Word,
        gc: &GapConstraints,
        sigma: u32,
        k: usize,
        prefix: &mut Vec<Symbol>,
        counts: Vec<BigUint>,
        out: &mut ParikhVector,
    ) {
        if counts.iter().all(Zero::is_zero) {
            return;
        }
        if prefix.len() == k {
            out.counts.insert(Word::new(prefix.clone()), counts.into_iter().sum());
            return;
        }
        for a in 1..=sigma {
            let next = advance(w, gc, prefix.len() - 1, &counts, a);
            prefix.push(a);
            walk(w, gc, sigma, k, prefix, next, out);
            prefix.pop();
        }
    }
    for a in alphabet.symbols() {
        prefix.push(a);
        walk(w, gc, alphabet.size(), k, &mut prefix, start_counts(w, a), &mut out);
        prefix.pop();
    }
    Ok(out)
}

/// The automaton `A_{w,gc}` whose accepting paths labelled `p` are in
/// bijection with the embeddings of `p` into `w` satisfying `gc`.
///
/// States are `(0,0)`, every `(i,j)` with `1 ≤ i ≤ n`, `1 ≤ j ≤ k`, and a
/// sink `(n+1, k+1)`. Reading `w[i']` leads from `(0,0)` to `(i',1)` and
/// from `(i,j)` to `(i',j+1)` when the gap `w[i+1..i'-1]` fits constraint
/// `j`. Finals are the states in layer `k`.
pub fn build_counting_nfa(w: &Word, gc: &GapConstraints, alphabet: &Alphabet) -> Result<CountingNfa> {
    let k = gc.len() + 1;
    let n = w.len();
    gc.check_word(w)?;
    if let Some(&a) = w.iter().find(|&&a| !alphabet.contains(a)) {
        return Err(Error::Input(format!("symbol {a} outside alphabet")));
    }
    let id = |i: usize, j: usize| 1 + (i - 1) * k + (j - 1);
    let total = n * k + 2;
    let mut coords = Vec::with_capacity(total);
    coords.push((0, 0));
    for i in 1..=n {
        for j in 1..=k {
            coords.push((i, j));
        }
    }
    coords.push((n + 1, k + 1));
    let mut finals = vec![false; total];
    let mut edges: Vec<Vec<(Symbol, usize)>> = vec![Vec::new(); total];
    for i in 1..=n {
        edges[0].push((w[i - 1], id(i, 1)));
        finals[id(i, k)] = true;
    }
    for j in 1..k {
        for i in 1..=n {
            let row = membership_row(w, gc, j - 1, i);
            for i2 in i + 1..=n {
                if row[i2 - i - 1] {
                    edges[id(i, j)].push((w[i2 - 1], id(i2, j + 1)));
                }
            }
        }
    }
    CountingNfa::new(alphabet.size(), coords, 0, finals, edges)
}

/// Keeps a basis in echelon form over the integers.
#[derive(Default)]
struct Basis {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Basis {
    /// Reduces `v` against the basis; returns true if it was independent
    /// (and adds it).
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let (a, b) = (row[*pivot].clone(), v[*pivot].clone());
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &a - r * &b;
            }
            normalize_row(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

fn normalize_row(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// A word on which the two automata have different accepting-path counts,
/// or `None` if they are path equivalent.
pub fn path_equivalence_witness(a: &CountingNfa, b: &CountingNfa) -> Result<Option<Word>> {
    if a.sigma() != b.sigma() {
        return Err(Error::Usage(format!(
            "alphabet mismatch: {} vs {}",
            a.sigma(),
            b.sigma()
        )));
    }
    let off = a.num_states();
    let dim = off + b.num_states();
    let weight = |v: &[BigInt]| -> BigInt {
        let left: BigInt = (0..off).filter(|&q| a.is_final(q)).map(|q| &v[q]).sum();
        let right: BigInt = (0..b.num_states()).filter(|&q| b.is_final(q)).map(|q| &v[off + q]).sum();
        left - right
    };
    let step = |v: &[BigInt], s: Symbol| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); dim];
        for (q, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (nfa, base) = if q < off { (a, 0) } else { (b, off) };
            for &(sym, r) in nfa.edges(q - base) {
                if sym == s {
                    out[base + r] += x;
                }
            }
        }
        out
    };
    let mut start = vec![BigInt::zero(); dim];
    start[a.initial()] = BigInt::one();
    start[off + b.initial()] = BigInt::one();
    let mut basis = Basis::default();
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some((v, word)) = queue.pop_front() {
        if !basis.insert(v.clone()) {
            continue;
        }
        if !weight(&v).is_zero() {
            return Ok(Some(Word::new(word)));
        }
        for s in 1..=a.sigma() {
            let next = step(&v, s);
            if next.iter().all(Zero::is_zero) {
                continue;
            }
            let mut u = word.clone();
            u.push(s);
            queue.push_back((next, u));
        }
    }
    Ok(None)
}

/// Do the two automata have equal accepting-path counts on every word?
pub fn path_equivalent(a: &CountingNfa, b: &CountingNfa) -> Result<bool> {
    Ok(path_equivalence_witness(a, b)?.is_none())
}

/// Is `Ψ_gc(w) = Ψ_gc(w2)`? Polynomial time via path equivalence.
pub fn equivalence_with_multiplicities(w: &Word, w2: &Word, gc: &GapConstraints, alphabet: &Alphabet) -> Result<bool> {
    let a = build_counting_nfa(w, gc, alphabet)?;
    let b = build_counting_nfa(w2, gc, alphabet)?;
    path_equivalent(&a, &b)
}
