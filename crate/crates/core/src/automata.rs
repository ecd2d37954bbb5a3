//! Complete DFAs, subsequence automata and the counting NFA type.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Symbol, Word};

/// A DFA as read from a file: transitions may be missing or out of range
/// until [`dfa_validate`] accepts it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDfa {
    pub states: usize,
    pub sigma: u32,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, Symbol, usize)>,
}

/// Checks that `raw` is a complete deterministic automaton over `alphabet`.
pub fn dfa_validate(raw: &RawDfa, alphabet: &Alphabet) -> Result<()> {
    let sigma = alphabet.size() as usize;
    if raw.states == 0 {
        return Err(Error::Config("DFA has no states".into()));
    }
    if raw.initial >= raw.states {
        return Err(Error::Config(format!(
            "initial state {} out of range [0, {})",
            raw.initial, raw.states
        )));
    }
    if let Some(f) = raw.finals.iter().find(|&&f| f >= raw.states) {
        return Err(Error::Config(format!(
            "final state {f} out of range [0, {})",
            raw.states
        )));
    }
    let mut seen = vec![None; raw.states * sigma];
    for &(q, a, r) in &raw.transitions {
        if q >= raw.states {
            return Err(Error::Config(format!(
                "transition ({q}, {a}) leaves from state {q} out of range [0, {})",
                raw.states
            )));
        }
        if a == 0 || a as usize > sigma {
            return Err(Error::Config(format!(
                "transition ({q}, {a}) uses symbol outside [1, {sigma}]"
            )));
        }
        if r >= raw.states {
            return Err(Error::Config(format!(
                "transition ({q}, {a}) targets state {r} out of range [0, {})",
                raw.states
            )));
        }
        let slot = &mut seen[q * sigma + a as usize - 1];
        match *slot {
            Some(prev) if prev != r => {
                return Err(Error::Config(format!(
                    "transition ({q}, {a}) is nondeterministic: {prev} and {r}"
                )))
            }
            _ => *slot = Some(r),
        }
    }
    if let Some(idx) = seen.iter().position(Option::is_none) {
        return Err(Error::Config(format!(
            "missing transition ({}, {})",
            idx / sigma,
            idx % sigma + 1
        )));
    }
    Ok(())
}

/// Complete DFA with states `0..n` and a dense transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: usize,
    sigma: u32,
    initial: usize,
    finals: Vec<bool>,
    table: Vec<u32>,
}

impl Dfa {
    pub fn from_raw(raw: &RawDfa) -> Result<Dfa> {
        dfa_validate(raw, &Alphabet::new(raw.sigma)?)?;
        let sigma = raw.sigma as usize;
        let mut table = vec![0u32; raw.states * sigma];
        for &(q, a, r) in &raw.transitions {
            table[q * sigma + a as usize - 1] = r as u32;
        }
        let mut finals = vec![false; raw.states];
        for &f in &raw.finals {
            finals[f] = true;
        }
        Ok(Dfa {
            states: raw.states,
            sigma: raw.sigma,
            initial: raw.initial,
            finals,
            table,
        })
    }

    /// Builds a DFA from a transition function.
    pub fn from_fn(
        states: usize,
        sigma: u32,
        initial: usize,
        finals: &[usize],
        delta: impl Fn(usize, Symbol) -> usize,
    ) -> Result<Dfa> {
        let transitions = (0..states)
            .flat_map(|q| (1..=sigma).map(move |a| (q, a)))
            .map(|(q, a)| (q, a, delta(q, a)))
            .collect();
        Dfa::from_raw(&RawDfa {
            states,
            sigma,
            initial,
            finals: finals.to_vec(),
            transitions,
        })
    }

    /// One-state acceptor of `Σ*`.
    pub fn universal(sigma: u32) -> Dfa {
        Dfa {
            states: 1,
            sigma,
            initial: 0,
            finals: vec![true],
            table: vec![0; sigma as usize],
        }
    }

    /// Acceptor of `{ε}`: a final start state and a non-final sink.
    pub fn epsilon(sigma: u32) -> Dfa {
        Dfa {
            states: 2,
            sigma,
            initial: 0,
            finals: vec![true, false],
            table: vec![1; 2 * sigma as usize],
        }
    }

    /// Acceptor of all words avoiding the given symbols.
    pub fn avoiding(sigma: u32, banned: &[Symbol]) -> Dfa {
        let mut table = vec![0u32; 2 * sigma as usize];
        for a in 1..=sigma {
            let i = a as usize - 1;
            table[i] = u32::from(banned.contains(&a));
            table[sigma as usize + i] = 1;
        }
        Dfa {
            states: 2,
            sigma,
            initial: 0,
            finals: vec![true, false],
            table,
        }
    }

    /// Acceptor of words whose count of `symbol` is divisible by `modulus`.
    pub fn count_mod(sigma: u32, symbol: Symbol, modulus: usize) -> Dfa {
        let m = modulus.max(1);
        Dfa::from_fn(m, sigma, 0, &[0], |q, a| if a == symbol { (q + 1) % m } else { q })
            .expect("cyclic counter is complete")
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states).filter(|&q| self.finals[q])
    }

    /// Representation size `|Q|·σ`.
    pub fn size(&self) -> usize {
        self.states * self.sigma as usize
    }

    #[inline]
    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.table[q * self.sigma as usize + a as usize - 1] as usize
    }

    pub fn run_from(&self, q: usize, u: &[Symbol]) -> usize {
        u.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn run(&self, u: &[Symbol]) -> bool {
        self.finals[self.run_from(self.initial, u)]
    }

    /// The same language over a larger alphabet; new symbols go to a fresh sink.
    pub fn with_sigma(&self, sigma: u32) -> Dfa {
        if sigma <= self.sigma {
            return self.clone();
        }
        let sink = self.states;
        Dfa::from_fn(self.states + 1, sigma, self.initial, &self.finals().collect::<Vec<_>>(), |q, a| {
            if q == sink || a > self.sigma {
                sink
            } else {
                self.step(q, a)
            }
        })
        .expect("extension of a complete DFA is complete")
    }

    pub fn to_raw(&self) -> RawDfa {
        RawDfa {
            states: self.states,
            sigma: self.sigma,
            initial: self.initial,
            finals: self.finals().collect(),
            transitions: (0..self.states)
                .flat_map(|q| (1..=self.sigma).map(move |a| (q, a)))
                .map(|(q, a)| (q, a, self.step(q, a)))
                .collect(),
        }
    }
}

/// `dfa_run`: does `d` accept `u`?
pub fn dfa_run(d: &Dfa, u: &Word) -> bool {
    d.run(u)
}

fn next_occurrence_dfa(w: &Word, sigma: u32, finals: &[usize]) -> Dfa {
    let n = w.len();
    let s = sigma as usize;
    let sink = n + 1;
    let mut table = vec![sink as u32; (n + 2) * s];
    // Row i holds the next occurrence after position i; fill from the right.
    for i in (0..n).rev() {
        let (cur, next) = table.split_at_mut((i + 1) * s);
        cur[i * s..].copy_from_slice(&next[..s]);
        let a = w[i] as usize;
        if a >= 1 && a <= s {
            table[i * s + a - 1] = (i + 1) as u32;
        }
    }
    let mut fin = vec![false; n + 2];
    for &f in finals {
        fin[f] = true;
    }
    Dfa {
        states: n + 2,
        sigma,
        initial: 0,
        finals: fin,
        table,
    }
}

/// Automaton accepting exactly the non-empty subsequences of `w`.
pub fn build_subsequence_automaton(w: &Word, sigma: u32) -> Dfa {
    let finals: Vec<usize> = (1..=w.len()).collect();
    next_occurrence_dfa(w, sigma, &finals)
}

/// Automaton accepting exactly the words that are not subsequences of `w`.
pub fn build_co_subsequence_automaton(w: &Word, sigma: u32) -> Dfa {
    next_occurrence_dfa(w, sigma, &[w.len() + 1])
}

/// Shortest word of length at most `maxlen` accepted by both automata.
/// Symbols are explored in increasing order, so the result is the
/// lexicographically least among the shortest.
pub fn product_shortest_accepted(a: &Dfa, b: &Dfa, maxlen: usize) -> Result<Option<Word>> {
    if a.sigma() != b.sigma() {
        return Err(Error::Usage(format!(
            "alphabet mismatch: {} vs {}",
            a.sigma(),
            b.sigma()
        )));
    }
    let nb = b.num_states();
    let idx = |p: usize, q: usize| p * nb + q;
    let total = a.num_states() * nb;
    let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; total];
    let mut depth = vec![usize::MAX; total];
    let start = idx(a.initial(), b.initial());
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let (p, q) = (cur / nb, cur % nb);
        if a.is_final(p) && b.is_final(q) {
            let mut out = Vec::with_capacity(depth[cur]);
            let mut node = cur;
            while let Some((prev, sym)) = parent[node] {
                out.push(sym);
                node = prev;
            }
            out.reverse();
            return Ok(Some(Word::new(out)));
        }
        if depth[cur] == maxlen {
            continue;
        }
        for s in 1..=a.sigma() {
            let next = idx(a.step(p, s), b.step(q, s));
            if depth[next] == usize::MAX {
                depth[next] = depth[cur] + 1;
                parent[next] = Some((cur, s));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Nondeterministic automaton whose accepting-path counts are embedding counts.
/// Each state carries a layered coordinate `(position, layer)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingNfa {
    pub(crate) sigma: u32,
    pub(crate) coords: Vec<(usize, usize)>,
    pub(crate) initial: usize,
    pub(crate) finals: Vec<bool>,
    /// Outgoing transitions per state, as `(symbol, target)`; a multiset.
    pub(crate) edges: Vec<Vec<(Symbol, usize)>>,
}

impl CountingNfa {
    pub fn new(
        sigma: u32,
        coords: Vec<(usize, usize)>,
        initial: usize,
        finals: Vec<bool>,
        edges: Vec<Vec<(Symbol, usize)>>,
    ) -> Result<Self> {
        let n = coords.len();
        if initial >= n || finals.len() != n || edges.len() != n {
            return Err(Error::Config("inconsistent counting automaton shape".into()));
        }
        for (q, out) in edges.iter().enumerate() {
            for &(a, r) in out {
                if a == 0 || a > sigma || r >= n {
                    return Err(Error::Config(format!("bad transition from state {q}")));
                }
            }
        }
        Ok(CountingNfa {
            sigma,
            coords,
            initial,
            finals,
            edges,
        })
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn num_states(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(usize, usize)] {
        &self.coords
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn edges(&self, q: usize) -> &[(Symbol, usize)] {
        &self.edges[q]
    }

    pub fn num_transitions(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Number of accepting paths labelled `u`.
    pub fn count_paths(&self, u: &[Symbol]) -> BigUint {
        let mut cur = vec![BigUint::zero(); self.num_states()];
        cur[self.initial] = BigUint::one();
        for &a in u {
            let mut next = vec![BigUint::zero(); self.num_states()];
            for (q, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(b, r) in &self.edges[q] {
                    if b == a {
                        next[r] += c;
                    }
                }
            }
            cur = next;
        }
        cur.iter()
            .zip(&self.finals)
            .filter(|(_, &f)| f)
            .map(|(c, _)| c)
            .sum()
    }
}
