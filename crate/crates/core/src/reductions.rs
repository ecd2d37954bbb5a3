//! Instance generators for the hardness reductions, with brute-force
//! oracles for the source problems.
//!
//! Every generator is deterministic. The oracles enumerate their whole
//! search space and refuse to run past a budget.

use std::collections::HashMap;

use rand::Rng;

use crate::analysis::check_budget;
use crate::error::{Error, Result};
use crate::matchers::EqualitySystem;
use crate::model::{GapConstraint, GapConstraints, GappedSequence, Symbol, Word};

/// Orthogonal vectors: is there `a ∈ A`, `b ∈ B` with `a · b = 0`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvInstance {
    d: usize,
    a: Vec<Vec<bool>>,
    b: Vec<Vec<bool>>,
}

impl OvInstance {
    pub fn new(d: usize, a: Vec<Vec<bool>>, b: Vec<Vec<bool>>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Input(format!(
                "vector sets differ in size: {} and {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(v) = a.iter().chain(&b).find(|v| v.len() != d) {
            return Err(Error::Input(format!(
                "vector of length {} in an instance of dimension {d}",
                v.len()
            )));
        }
        Ok(OvInstance { d, a, b })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &[Vec<bool>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<bool>] {
        &self.b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

/// A formula in conjunctive normal form. Repeated literals inside a clause
/// are kept; clauses containing a variable and its negation are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                if l.var == 0 || l.var > vars {
                    return Err(Error::Input(format!(
                        "clause {} uses variable {} outside [1, {vars}]",
                        i + 1,
                        l.var
                    )));
                }
                if c.contains(&Literal { var: l.var, positive: !l.positive }) {
                    return Err(Error::Input(format!(
                        "clause {} is a tautology on variable {}",
                        i + 1,
                        l.var
                    )));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Whether variable `var` occurs in clause `i` positively, negatively or not at all.
    pub fn occurrence(&self, i: usize, var: usize) -> Option<bool> {
        self.clauses[i].iter().find(|l| l.var == var).map(|l| l.positive)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// Undirected graph on vertices `1..=n` in which every vertex has a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    /// Edges keep their given orientation and order; duplicates are dropped
    /// and loops missing from the list are appended.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![vec![false; n + 1]; n + 1];
        let mut list = Vec::new();
        for (u, v) in edges.into_iter().chain((1..=n).map(|v| (v, v))) {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::Input(format!("edge ({u}, {v}) outside [1, {n}]")));
            }
            if !adj[u][v] {
                adj[u][v] = true;
                adj[v][u] = true;
                list.push((u, v));
            }
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Unordered edges, loops included.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }
}

/// A `q × k` matrix of nonempty symbol sets over `{1..=m}`. Row `i`
/// denotes the language `W[i][0] W[i][1] … W[i][k-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaNUniInstance {
    m: u32,
    k: usize,
    rows: Vec<Vec<Vec<Symbol>>>,
}

impl MetaNUniInstance {
    /// Sets are sorted and deduplicated.
    pub fn new(m: u32, k: usize, rows: Vec<Vec<Vec<Symbol>>>) -> Result<Self> {
        let mut rows = rows;
        for (i, row) in rows.iter_mut().enumerate() {
            if row.len() != k {
                return Err(Error::Input(format!("row {} has {} entries, expected {k}", i + 1, row.len())));
            }
            for (j, set) in row.iter_mut().enumerate() {
                set.sort_unstable();
                set.dedup();
                if set.is_empty() {
                    return Err(Error::Input(format!("entry ({}, {}) is empty", i + 1, j + 1)));
                }
                if set.iter().any(|&s| s == 0 || s > m) {
                    return Err(Error::Input(format!(
                        "entry ({}, {}) has a symbol outside [1, {m}]",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(MetaNUniInstance { m, k, rows })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Vec<Symbol>>] {
        &self.rows
    }

    pub fn row_accepts(&self, i: usize, u: &[Symbol]) -> bool {
        u.len() == self.k && self.rows[i].iter().zip(u).all(|(set, s)| set.contains(s))
    }

    pub fn covered(&self, u: &[Symbol]) -> bool {
        (0..self.q()).any(|i| self.row_accepts(i, u))
    }
}

/// Token stream for assembling a gapped sequence. Consecutive symbols are
/// joined by `Zero`.
#[derive(Default)]
struct SeqBuilder {
    pattern: Vec<Symbol>,
    gaps: Vec<GapConstraint>,
    pending: Option<GapConstraint>,
}

impl SeqBuilder {
    fn sym(&mut self, s: Symbol) -> &mut Self {
        if !self.pattern.is_empty() {
            self.gaps.push(self.pending.take().unwrap_or(GapConstraint::Zero));
        }
        self.pattern.push(s);
        self
    }

    fn syms(&mut self, ss: &[Symbol]) -> &mut Self {
        for &s in ss {
            self.sym(s);
        }
        self
    }

    fn gap(&mut self, g: GapConstraint) -> &mut Self {
        debug_assert!(self.pending.is_none() && !self.pattern.is_empty());
        self.pending = Some(g);
        self
    }

    fn upto(&mut self, hi: usize) -> &mut Self {
        self.gap(GapConstraint::length(0, hi))
    }

    fn finish(self) -> Result<GappedSequence> {
        debug_assert!(self.pending.is_none());
        GappedSequence::new(Word::new(self.pattern), GapConstraints::lengths(self.gaps)?)
    }
}

pub mod ov_symbols {
    use crate::model::Symbol;
    pub const ZERO: Symbol = 1;
    pub const ONE: Symbol = 2;
    pub const HASH: Symbol = 3;
    pub const AT: Symbol = 4;
    pub const GLYPHS: &str = "01#@";
}
use ov_symbols::{AT, HASH, ONE, ZERO};

/// Bit gadget for entries of the first vector set.
pub fn code_a_bit(x: bool) -> [Symbol; 3] {
    if x {
        [ONE, ZERO, ZERO]
    } else {
        [ZERO, ONE, ZERO]
    }
}

/// Bit gadget for entries of the second vector set.
pub fn code_b_bit(x: bool) -> [Symbol; 2] {
    if x {
        [ZERO, ONE]
    } else {
        [ONE, ZERO]
    }
}

/// Three-track encoding of a vector of the first set.
pub fn code_a_vector(v: &[bool]) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(15 * v.len());
    for &x in v {
        for bits in [code_a_bit(false), code_a_bit(x), code_a_bit(false)] {
            out.push(HASH);
            out.extend_from_slice(&bits);
            out.push(HASH);
        }
    }
    out
}

fn push_code_b(b: &mut SeqBuilder, v: &[bool], last: bool) {
    let d = v.len();
    for (j, &x) in v.iter().enumerate() {
        b.sym(HASH).upto(1).syms(&code_b_bit(x)).upto(1).sym(HASH);
        if j + 1 < d {
            b.sym(HASH).upto(3).sym(HASH).sym(HASH).upto(3).sym(HASH);
        }
    }
    if last {
        b.upto(5);
    } else {
        b.upto(1).sym(HASH).upto(3).sym(HASH).upto(1).sym(HASH).upto(3).sym(HASH);
    }
}

/// Encodes an OV instance as a matching instance over `0 1 # @` (ids 1..=4)
/// that has a match iff the instance has an orthogonal pair.
pub fn ov_to_match(inst: &OvInstance) -> Result<(Word, GappedSequence)> {
    let (n, d) = (inst.n(), inst.d());
    if d < 2 {
        return Err(Error::Usage(format!("dimension must be at least 2, got {d}")));
    }
    if n == 0 {
        return Err(Error::Usage("instance has no vectors".into()));
    }
    let mut w = Vec::new();
    let push_a = |w: &mut Vec<Symbol>, v: &Vec<bool>| {
        w.push(AT);
        w.extend(code_a_vector(v));
    };
    for v in &inst.a()[..n - 1] {
        push_a(&mut w, v);
    }
    push_a(&mut w, &inst.a()[n - 1]);
    for v in &inst.a()[..n - 1] {
        push_a(&mut w, v);
    }
    w.push(AT);

    let mut b = SeqBuilder::default();
    b.sym(AT).upto(5);
    for (i, v) in inst.b().iter().enumerate() {
        let last = i + 1 == n;
        push_code_b(&mut b, v, last);
        if !last {
            b.upto(6);
        }
    }
    b.sym(AT);
    Ok((Word::new(w), b.finish()?))
}

pub fn solve_ov_bruteforce(inst: &OvInstance) -> bool {
    inst.a()
        .iter()
        .any(|a| inst.b().iter().any(|b| a.iter().zip(b).all(|(&x, &y)| !(x && y))))
}

/// Row `i` holds exactly the assignments falsifying clause `i`, with
/// symbol 1 for false and 2 for true.
pub fn sat_to_metanuni(f: &CnfFormula) -> MetaNUniInstance {
    let rows = (0..f.clauses().len())
        .map(|i| {
            (1..=f.vars())
                .map(|v| match f.occurrence(i, v) {
                    Some(true) => vec![1],
                    Some(false) => vec![2],
                    None => vec![1, 2],
                })
                .collect()
        })
        .collect();
    MetaNUniInstance {
        m: 2,
        k: f.vars(),
        rows,
    }
}

/// Position of row `(edge, r, s)` in the k-independent-set matrix, all
/// indices 0-based and `r != s`.
pub fn kis_row_index(edge: usize, r: usize, s: usize, k: usize) -> usize {
    debug_assert!(r != s && r < k && s < k);
    edge * k * (k - 1) + r * (k - 1) + if s < r { s } else { s - 1 }
}

/// A `k`-tuple of vertices is covered iff it repeats a vertex or contains
/// two adjacent vertices, so the matrix is non-universal iff `g` has an
/// independent set of size `k`.
pub fn kis_to_metanuni(g: &Graph, k: usize) -> Result<MetaNUniInstance> {
    let m = u32::try_from(g.n()).map_err(|_| Error::Input("graph too large".into()))?;
    if m == 0 {
        return Err(Error::Input("graph has no vertices".into()));
    }
    let all: Vec<Symbol> = (1..=m).collect();
    let mut rows = Vec::with_capacity(g.edges().len() * k * k.saturating_sub(1));
    for &(u, v) in g.edges() {
        for r in 0..k {
            for s in (0..k).filter(|&s| s != r) {
                let mut row = vec![all.clone(); k];
                row[r] = vec![u as Symbol];
                row[s] = vec![v as Symbol];
                rows.push(row);
            }
        }
    }
    Ok(MetaNUniInstance { m, k, rows })
}

fn repeat(s: Symbol, times: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n(s, times)
}

/// `S(W_i)`: the sets of row `i` spelled out, separated by `#^{m-1}`.
pub fn metanuni_row_gadget(inst: &MetaNUniInstance, i: usize) -> Word {
    let hash = inst.m + 1;
    let mut out = Vec::new();
    for (j, set) in inst.rows[i].iter().enumerate() {
        if j > 0 {
            out.extend(repeat(hash, inst.m as usize - 1));
        }
        out.extend_from_slice(set);
    }
    Word::new(out)
}

/// The gadget `T` whose gc-subsequences are exactly the length-`k` words
/// containing `#`.
pub fn metanuni_hash_gadget(m: u32, k: usize) -> Word {
    let hash = m + 1;
    let mu = m as usize;
    let mut out = Vec::new();
    for i in 0..k {
        if i > 0 {
            out.extend(repeat(hash, 3 * mu));
        }
        for j in 0..k {
            if i != j {
                out.extend(1..=m);
            }
            out.extend(repeat(hash, mu));
        }
    }
    Word::new(out)
}

/// A word whose gc-subsequences are all of `(Γ ∪ {#})^k`.
pub fn metanuni_universal_word(m: u32, k: usize) -> Word {
    let mut out = Vec::new();
    for _ in 0..k {
        out.extend(1..=m);
        out.extend(repeat(m + 1, m as usize));
    }
    Word::new(out)
}

/// The `k − 1` windows `(m − 1, 3m − 1)` used by [`metanuni_to_nuni`].
pub fn metanuni_constraints(m: u32, k: usize) -> GapConstraints {
    let m = m as usize;
    GapConstraints::lengths(vec![GapConstraint::length(m - 1, 3 * m - 1); k.saturating_sub(1)])
        .expect("window is well-formed")
}

/// Encodes the matrix as a word over `Γ ∪ {#}` (`#` = m + 1) that is
/// non-universal for the returned constraints iff the row languages miss
/// some word of `Γ^k`.
pub fn metanuni_to_nuni(inst: &MetaNUniInstance) -> (Word, GapConstraints) {
    let hash = inst.m + 1;
    let sep: Vec<Symbol> = repeat(hash, 3 * inst.m as usize).collect();
    let mut out = metanuni_hash_gadget(inst.m, inst.k).into_symbols();
    for i in 0..inst.q() {
        out.extend_from_slice(&sep);
        out.extend(metanuni_row_gadget(inst, i).into_symbols());
    }
    (Word::new(out), metanuni_constraints(inst.m, inst.k))
}

const A: Symbol = 1;
const B: Symbol = 2;

/// `(C_1, C'_1, …, C_k)` with `C_j = (0, 0)` and `C'_j = (3, 9)`.
pub fn binary_constraints(k: usize) -> GapConstraints {
    let gaps = (0..(2 * k).saturating_sub(1))
        .map(|t| if t % 2 == 0 { GapConstraint::Zero } else { GapConstraint::length(3, 9) })
        .collect();
    GapConstraints::lengths(gaps).expect("windows are well-formed")
}

fn join_bab(parts: impl IntoIterator<Item = Vec<Symbol>>) -> Vec<Symbol> {
    let mut out = Vec::new();
    for (j, part) in parts.into_iter().enumerate() {
        if j > 0 {
            out.extend([B, A, B]);
        }
        out.extend(part);
    }
    out
}

/// Clause gadget `w_i` over `{a, b}`.
pub fn binary_clause_gadget(f: &CnfFormula, i: usize) -> Word {
    Word::new(join_bab((1..=f.vars()).map(|v| match f.occurrence(i, v) {
        Some(true) => vec![A, A],
        Some(false) => vec![A, B, B, A],
        None => vec![A, A, B, B, A],
    })))
}

/// Gadget `T` covering every `2k`-word outside `(aa | bb)^k`.
pub fn binary_hash_gadget(k: usize) -> Word {
    let mut out = Vec::new();
    for i in 0..k {
        if i > 0 {
            out.extend(spacer());
        }
        out.extend(join_bab((0..k).map(|j| if i == j { vec![A, B, A] } else { vec![A, A, B, B, A] })));
    }
    Word::new(out)
}

fn spacer() -> Vec<Symbol> {
    let mut out = vec![B];
    for _ in 0..5 {
        out.extend([A, B]);
    }
    out
}

/// `((aabba) bbb)^k`, universal for [`binary_constraints`].
pub fn binary_universal_word(k: usize) -> Word {
    let mut out = Vec::new();
    for _ in 0..k {
        out.extend([A, A, B, B, A, B, B, B]);
    }
    Word::new(out)
}

/// Binary-alphabet encoding of satisfiability: returns `(S, gc, T′)` where
/// `S` and `T′` have the same gc-subsequences iff `f` is unsatisfiable.
pub fn sat_to_nuni_binary(f: &CnfFormula) -> (Word, GapConstraints, Word) {
    let k = f.vars();
    let mut s = binary_hash_gadget(k).into_symbols();
    for i in 0..f.clauses().len() {
        s.extend(spacer());
        s.extend(binary_clause_gadget(f, i).into_symbols());
    }
    (Word::new(s), binary_constraints(k), binary_universal_word(k))
}

/// Encodes a 3-CNF formula as matching with gap-length equalities over
/// `{0, 1}` (ids 1, 2). All gaps are unconstrained; equally labelled gaps
/// must have equal length.
pub fn sat_to_match_equalities(f: &CnfFormula) -> Result<(Word, GappedSequence, EqualitySystem)> {
    if let Some(i) = f.clauses().iter().position(|c| c.len() != 3) {
        return Err(Error::Input(format!(
            "clause {} has {} literals, expected 3",
            i + 1,
            f.clauses()[i].len()
        )));
    }
    let (n, m) = (f.vars(), f.clauses().len());
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Label {
        X(usize),
        Xp(usize),
        Y(usize),
        Yp(usize),
        Z(usize),
        Zp(usize),
    }
    let mut pattern = Vec::new();
    let mut labels = Vec::new();
    let mut tok = |s: Symbol, after: Option<Label>| {
        pattern.push(s);
        if let Some(l) = after {
            labels.push(l);
        }
    };
    // Each pattern symbol is followed by the label of the gap after it.
    for i in 0..n {
        tok(ZERO, Some(Label::X(i)));
        tok(ONE, Some(Label::Xp(i)));
    }
    for i in 0..n {
        tok(ZERO, Some(Label::Y(i)));
        tok(ONE, Some(Label::Yp(i)));
    }
    for j in 0..m {
        tok(ZERO, Some(Label::Z(j)));
        tok(ONE, Some(Label::Zp(j)));
    }
    for i in 0..n {
        tok(ZERO, Some(Label::X(i)));
        tok(ONE, Some(Label::Y(i)));
    }
    let lit_label = |l: &Literal| if l.positive { Label::X(l.var - 1) } else { Label::Y(l.var - 1) };
    for (j, c) in f.clauses().iter().enumerate() {
        tok(ZERO, Some(lit_label(&c[0])));
        tok(ONE, Some(lit_label(&c[1])));
        tok(ONE, Some(lit_label(&c[2])));
        tok(ONE, Some(Label::Z(j)));
    }
    tok(ZERO, None);

    let mut first: HashMap<Label, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (g, &l) in labels.iter().enumerate() {
        match first.get(&l) {
            Some(&g0) => pairs.push((g0 + 1, g + 1)),
            None => {
                first.insert(l, g);
            }
        }
    }

    let mut w = Vec::new();
    for _ in 0..2 * n {
        w.push(ZERO);
        w.extend(repeat(ONE, 3));
    }
    for _ in 0..m {
        w.push(ZERO);
        w.extend(repeat(ONE, 4));
    }
    for _ in 0..n {
        w.push(ZERO);
        w.extend(repeat(ONE, 4));
    }
    for _ in 0..m {
        w.push(ZERO);
        w.extend(repeat(ONE, 10));
    }
    w.push(ZERO);

    let gaps = labels.len();
    let gs = GappedSequence::unconstrained(Word::new(pattern));
    debug_assert_eq!(gs.k(), gaps + 1);
    Ok((Word::new(w), gs, EqualitySystem::new(gaps, pairs)?))
}

/// A word of `Γ^k` covered by no row, if any.
pub fn metanuni_missing_word(inst: &MetaNUniInstance, budget: u64) -> Result<Option<Word>> {
    check_budget(inst.m, inst.k, budget)?;
    let mut u = vec![1; inst.k];
    loop {
        if !inst.covered(&u) {
            return Ok(Some(Word::new(u)));
        }
        let Some(pos) = u.iter().rposition(|&s| s < inst.m) else {
            return Ok(None);
        };
        u[pos] += 1;
        u[pos + 1..].fill(1);
    }
}

/// Whether the union of the row languages misses some word of `Γ^k`.
pub fn metanuni_holds_bruteforce(inst: &MetaNUniInstance, budget: u64) -> Result<bool> {
    Ok(metanuni_missing_word(inst, budget)?.is_some())
}

/// A satisfying assignment, if any.
pub fn sat_assignment_bruteforce(f: &CnfFormula, budget: u64) -> Result<Option<Vec<bool>>> {
    check_budget(2, f.vars(), budget)?;
    let k = f.vars();
    for mask in 0u64..1 << k {
        let assignment: Vec<bool> = (0..k).map(|v| mask >> v & 1 == 1).collect();
        if f.satisfied_by(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

pub fn solve_sat_bruteforce(f: &CnfFormula, budget: u64) -> Result<bool> {
    Ok(sat_assignment_bruteforce(f, budget)?.is_some())
}

/// Whether `g` has `k` pairwise non-adjacent distinct vertices.
pub fn solve_kis_bruteforce(g: &Graph, k: usize, budget: u64) -> Result<bool> {
    let n = g.n();
    if k > n {
        return Ok(false);
    }
    let mut total: u128 = 1;
    for i in 0..k {
        total = total * (n - i) as u128 / (i + 1) as u128;
    }
    if total > budget as u128 {
        return Err(Error::Size {
            candidates: format!("C({n}, {k}) = {total}"),
            budget,
        });
    }
    fn extend(g: &Graph, chosen: &mut Vec<usize>, next: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in next..=g.n() {
            if chosen.iter().all(|&u| !g.adjacent(u, v)) {
                chosen.push(v);
                if extend(g, chosen, v + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(extend(g, &mut Vec::with_capacity(k), 1, k))
}

pub fn random_ov<R: Rng>(rng: &mut R, n: usize, d: usize, density: f64) -> OvInstance {
    let vec = |rng: &mut R| (0..d).map(|_| rng.gen_bool(density)).collect::<Vec<_>>();
    let a = (0..n).map(|_| vec(rng)).collect();
    let b = (0..n).map(|_| vec(rng)).collect();
    OvInstance { d, a, b }
}

/// Random CNF with clauses of exactly `width` literals, tautologies excluded.
pub fn random_cnf<R: Rng>(rng: &mut R, vars: usize, clauses: usize, width: usize) -> CnfFormula {
    assert!(vars > 0 || width == 0, "literals need at least one variable");
    let clauses = (0..clauses)
        .map(|_| {
            let mut c: Vec<Literal> = Vec::with_capacity(width);
            while c.len() < width {
                let var = rng.gen_range(1..=vars);
                let positive = match c.iter().find(|l| l.var == var) {
                    Some(l) => l.positive,
                    None => rng.gen_bool(0.5),
                };
                c.push(Literal { var, positive });
            }
            c
        })
        .collect();
    CnfFormula { vars, clauses }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("vertices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchers::{match_naive, match_with_equalities};

    fn contains(hay: &[Symbol], needle: &[Symbol]) -> bool {
        hay.windows(needle.len()).any(|win| win == needle)
    }

    #[test]
    fn bit_gadgets() {
        assert_eq!(code_a_bit(false), [ZERO, ONE, ZERO]);
        assert_eq!(code_a_bit(true), [ONE, ZERO, ZERO]);
        assert_eq!(code_b_bit(false), [ONE, ZERO]);
        assert_eq!(code_b_bit(true), [ZERO, ONE]);
    }

    #[test]
    fn bit_factor_law() {
        for x in [false, true] {
            for y in [false, true] {
                assert_eq!(contains(&code_a_bit(y), &code_b_bit(x)), !(x && y), "{x} {y}");
            }
        }
    }

    #[test]
    fn ov_single_orthogonal_pair() {
        let inst = OvInstance::new(2, vec![vec![false, false]], vec![vec![true, true]]).unwrap();
        assert!(solve_ov_bruteforce(&inst));
        let (w, gs) = ov_to_match(&inst).unwrap();
        assert!(match_naive(&w, &gs).unwrap().is_some());
        let gc = gs.constraints();
        assert!(gc.gaps().iter().all(|g| match g.window() {
            (0, crate::model::UpperBound::Finite(h)) => h <= 6,
            _ => false,
        }));
    }

    #[test]
    fn ov_rejects_small_dimension() {
        let inst = OvInstance::new(1, vec![vec![true]], vec![vec![true]]).unwrap();
        assert!(!solve_ov_bruteforce(&inst));
        assert!(ov_to_match(&inst).is_err());
        assert!(OvInstance::new(2, vec![vec![true]], vec![vec![true, false]]).is_err());
    }

    fn figure_two() -> CnfFormula {
        CnfFormula::new(
            6,
            vec![
                vec![Literal::pos(1), Literal::neg(2), Literal::pos(3)],
                vec![Literal::neg(1), Literal::neg(2), Literal::pos(5)],
                vec![Literal::pos(3), Literal::pos(4), Literal::pos(5)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sat_matrix_of_small_formula() {
        let m = sat_to_metanuni(&figure_two());
        assert_eq!((m.q(), m.k(), m.m()), (3, 6, 2));
        assert_eq!(m.rows()[0], vec![vec![1], vec![2], vec![1], vec![1, 2], vec![1, 2], vec![1, 2]]);
        assert_eq!(m.rows()[1], vec![vec![2], vec![2], vec![1, 2], vec![1, 2], vec![1], vec![1, 2]]);
        assert_eq!(m.rows()[2], vec![vec![1, 2], vec![1, 2], vec![1], vec![1], vec![1], vec![1, 2]]);
        // 100010 satisfies every clause.
        assert!(!m.covered(&[2, 1, 1, 1, 2, 1]));
        assert!(metanuni_holds_bruteforce(&m, 1 << 10).unwrap());
    }

    #[test]
    fn empty_formula_is_non_universal() {
        let f = CnfFormula::new(3, vec![]).unwrap();
        assert!(metanuni_holds_bruteforce(&sat_to_metanuni(&f), 1 << 10).unwrap());
        assert!(solve_sat_bruteforce(&f, 1 << 10).unwrap());
    }

    #[test]
    fn tautology_rejected() {
        assert!(CnfFormula::new(2, vec![vec![Literal::pos(1), Literal::neg(1)]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![Literal::pos(3)]]).is_err());
        assert!(CnfFormula::new(2, vec![vec![Literal::pos(1), Literal::pos(1)]]).is_ok());
    }

    #[test]
    fn kis_row_layout() {
        let mut edges: Vec<(usize, usize)> = (1..=8).map(|i| (i, i % 8 + 1)).collect();
        edges.push((3, 7));
        let g = Graph::new(8, edges).unwrap();
        assert_eq!(g.edges()[8], (3, 7));
        let m = kis_to_metanuni(&g, 4).unwrap();
        let all: Vec<Symbol> = (1..=8).collect();
        let row = &m.rows()[kis_row_index(8, 1, 3, 4)];
        assert_eq!(row, &vec![all.clone(), vec![3], all, vec![7]]);
        assert_eq!(m.q(), g.edges().len() * 12);
    }

    #[test]
    fn kis_small_cases() {
        let triangle = Graph::new(3, vec![(1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(solve_kis_bruteforce(&triangle, 1, 100).unwrap());
        assert!(!solve_kis_bruteforce(&triangle, 2, 100).unwrap());
        for k in 1..=3 {
            let m = kis_to_metanuni(&triangle, k).unwrap();
            assert_eq!(metanuni_holds_bruteforce(&m, 1 << 10).unwrap(), k == 1);
        }
        let loops = Graph::new(3, vec![]).unwrap();
        assert_eq!(loops.edges().len(), 3);
        assert!(metanuni_holds_bruteforce(&kis_to_metanuni(&loops, 3).unwrap(), 1 << 10).unwrap());
    }

    #[test]
    fn nuni_gadget_shapes() {
        let inst = MetaNUniInstance::new(2, 2, vec![vec![vec![2, 1], vec![2]]]).unwrap();
        assert_eq!(metanuni_row_gadget(&inst, 0).symbols(), &[1, 2, 3, 2]);
        assert_eq!(metanuni_hash_gadget(2, 2).symbols(), &[3, 3, 1, 2, 3, 3, 3, 3, 3, 3, 3, 3, 1, 2, 3, 3, 3, 3]);
        let (w, gc) = metanuni_to_nuni(&inst);
        assert_eq!(w.len(), 18 + 6 + 4);
        assert_eq!(gc.gaps(), &[GapConstraint::length(1, 5)]);
    }

    #[test]
    fn binary_gadget_shapes() {
        let f = CnfFormula::new(2, vec![vec![Literal::neg(2)]]).unwrap();
        assert_eq!(binary_clause_gadget(&f, 0).symbols(), &[A, A, B, B, A, B, A, B, A, B, B, A]);
        let (s, gc, t) = sat_to_nuni_binary(&f);
        assert_eq!(gc.gaps(), &[GapConstraint::Zero, GapConstraint::length(3, 9), GapConstraint::Zero]);
        assert_eq!(t.len(), 16);
        assert!(s.len() > binary_hash_gadget(2).len());
    }

    #[test]
    fn equalities_small_formulas() {
        let sat = CnfFormula::new(1, vec![vec![Literal::pos(1); 3]]).unwrap();
        let (w, gs, eq) = sat_to_match_equalities(&sat).unwrap();
        assert!(match_with_equalities(&w, &gs, &eq).unwrap().is_some());
        assert_eq!(w.len(), 4 + 4 + 5 + 5 + 11 + 1);

        let unsat = CnfFormula::new(1, vec![vec![Literal::pos(1); 3], vec![Literal::neg(1); 3]]).unwrap();
        assert!(!solve_sat_bruteforce(&unsat, 16).unwrap());
        let (w, gs, eq) = sat_to_match_equalities(&unsat).unwrap();
        assert!(match_with_equalities(&w, &gs, &eq).unwrap().is_none());

        let short = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        assert!(sat_to_match_equalities(&short).is_err());
    }

    #[test]
    fn oracle_budgets() {
        let f = CnfFormula::new(30, vec![]).unwrap();
        assert!(matches!(solve_sat_bruteforce(&f, 1 << 10), Err(Error::Size { .. })));
        let g = Graph::new(30, vec![]).unwrap();
        assert!(matches!(solve_kis_bruteforce(&g, 15, 1000), Err(Error::Size { .. })));
    }
}
