use super::pipeline::NONE;
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::model::Symbol;

/// Union of the DFA runs started in state `q0` at each start position.
///
/// Node `(i, q)` means "state `q` after reading `w[..=i]`"; its parent is
/// `(i + 1, δ(q, w[i + 1]))`, so nodes in column `n` are roots and the
/// depth of `(i, q)` is `n - i`. Parents are computed from the transition
/// table on demand rather than stored.
pub struct TraceForest<'a> {
    w: &'a [Symbol],
    dfa: &'a Dfa,
    first: usize,
    starts: Vec<usize>,
}

/// Builds the forest for the sorted start positions `starts ⊆ [0, n]`.
pub fn build_trace_forest<'a>(w: &'a [Symbol], dfa: &'a Dfa, starts: &[usize]) -> Result<TraceForest<'a>> {
    let n = w.len();
    if starts.windows(2).any(|s| s[0] >= s[1]) {
        return Err(Error::Input("start positions must be strictly increasing".into()));
    }
    if starts.last().is_some_and(|&s| s > n) {
        return Err(Error::Input(format!("start position beyond word length {n}")));
    }
    let first = starts.first().copied().unwrap_or(n);
    let nodes = (n - first + 1) as u128 * dfa.num_states() as u128;
    if nodes >= NONE as u128 {
        return Err(Error::Input(format!("trace forest with {nodes} nodes is too large")));
    }
    Ok(TraceForest {
        w,
        dfa,
        first,
        starts: starts.to_vec(),
    })
}

impl<'a> TraceForest<'a> {
    pub fn first_column(&self) -> usize {
        self.first
    }

    pub fn last_column(&self) -> usize {
        self.w.len()
    }

    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    /// Size of the node index space, reachable or not.
    pub fn num_nodes(&self) -> usize {
        if self.starts.is_empty() {
            0
        } else {
            (self.w.len() - self.first + 1) * self.dfa.num_states()
        }
    }

    #[inline]
    pub fn node(&self, i: usize, q: usize) -> usize {
        (i - self.first) * self.dfa.num_states() + q
    }

    #[inline]
    pub fn coords(&self, u: usize) -> (usize, usize) {
        let s = self.dfa.num_states();
        (self.first + u / s, u % s)
    }

    pub fn leaf(&self, j: usize) -> usize {
        self.node(j, self.dfa.initial())
    }

    #[inline]
    pub fn parent(&self, u: usize) -> Option<usize> {
        let (i, q) = self.coords(u);
        (i < self.w.len()).then(|| u - q + self.dfa.num_states() + self.dfa.step(q, self.w[i]))
    }

    pub fn depth(&self, u: usize) -> usize {
        self.w.len() - self.coords(u).0
    }

    /// Nodes lying on the run of some start position.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_nodes()];
        if seen.is_empty() {
            return seen;
        }
        let mut starts = self.starts.iter().peekable();
        let s = self.dfa.num_states();
        for i in self.first..=self.last_column() {
            if starts.next_if(|&&j| j == i).is_some() {
                seen[self.node(i, self.dfa.initial())] = true;
            }
            if i == self.last_column() {
                break;
            }
            for q in 0..s {
                let u = self.node(i, q);
                if seen[u] {
                    let p = self.parent(u).expect("non-root has a parent");
                    seen[p] = true;
                }
            }
        }
        seen
    }

    /// For every reachable node, the root of its tree; `None` elsewhere.
    pub fn tree_labels(&self) -> Vec<Option<usize>> {
        let seen = self.reachable();
        let mut label = vec![None; seen.len()];
        for u in (0..seen.len()).rev() {
            if seen[u] {
                label[u] = Some(self.parent(u).map_or(u, |p| label[p].expect("parent labelled first")));
            }
        }
        label
    }

    /// Trees as `(root, start positions in decreasing order)`.
    pub fn trees(&self) -> Vec<(usize, Vec<usize>)> {
        let labels = self.tree_labels();
        let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
        for &j in self.starts.iter().rev() {
            let root = labels[self.leaf(j)].expect("leaves are reachable");
            match out.iter_mut().find(|(r, _)| *r == root) {
                Some((_, leaves)) => leaves.push(j),
                None => out.push((root, vec![j])),
            }
        }
        out.sort_by_key(|(r, _)| *r);
        out
    }
}

/// Ancestor queries on a [`TraceForest`] by binary lifting. Only the jump
/// levels up to the largest distance requested at build time are stored;
/// longer queries repeat the top level.
pub struct LevelAncestorIndex<'f, 'a> {
    forest: &'f TraceForest<'a>,
    /// `jumps[l][u]`: ancestor of `u` at distance `2^(l+1)`.
    jumps: Vec<Vec<u32>>,
}

impl<'f, 'a> LevelAncestorIndex<'f, 'a> {
    pub fn build(forest: &'f TraceForest<'a>, max_jump: usize) -> Self {
        let levels = if max_jump < 2 { 0 } else { max_jump.ilog2() as usize };
        let nodes = forest.num_nodes();
        let mut jumps: Vec<Vec<u32>> = Vec::with_capacity(levels);
        for l in 0..levels {
            let table: Vec<u32> = (0..nodes)
                .map(|u| {
                    let half = if l == 0 {
                        forest.parent(u).map_or(NONE, |p| p as u32)
                    } else {
                        jumps[l - 1][u]
                    };
                    if half == NONE {
                        return NONE;
                    }
                    if l == 0 {
                        forest.parent(half as usize).map_or(NONE, |p| p as u32)
                    } else {
                        jumps[l - 1][half as usize]
                    }
                })
                .collect();
            jumps.push(table);
        }
        LevelAncestorIndex { forest, jumps }
    }

    fn jump(&self, u: usize, level: usize) -> usize {
        if level == 0 {
            self.forest.parent(u).expect("range checked")
        } else {
            self.jumps[level - 1][u] as usize
        }
    }

    /// The ancestor `dist` steps above `u`, if the tree is that tall.
    pub fn ancestor(&self, u: usize, dist: usize) -> Option<usize> {
        let (i, _) = self.forest.coords(u);
        if i + dist > self.forest.last_column() {
            return None;
        }
        let top = self.jumps.len();
        let mut u = u;
        let mut rem = dist;
        while rem >> top > 0 {
            u = self.jump(u, top);
            rem -= 1 << top;
        }
        for l in (0..top).rev() {
            if rem & (1 << l) != 0 {
                u = self.jump(u, l);
            }
        }
        Some(u)
    }

    /// The ancestor of `u` at the given depth.
    pub fn query(&self, u: usize, depth: usize) -> Option<usize> {
        let du = self.forest.depth(u);
        if depth > du {
            return None;
        }
        self.ancestor(u, du - depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<Symbol> {
        s.bytes().map(|b| (b - b'a' + 1) as Symbol).collect()
    }

    #[test]
    fn single_start_is_a_path() {
        let word = w("abba");
        let d = Dfa::count_mod(2, 2, 3);
        let f = build_trace_forest(&word, &d, &[0]).unwrap();
        let seen = f.reachable();
        assert_eq!(seen.iter().filter(|&&s| s).count(), word.len() + 1);
        assert_eq!(f.trees().len(), 1);
    }

    #[test]
    fn runs_merge_into_one_tree() {
        // Both runs reset to state 0 on reading `b`.
        let d = Dfa::from_fn(2, 2, 0, &[0], |_, a| if a == 2 { 0 } else { 1 }).unwrap();
        let word = w("aab");
        let f = build_trace_forest(&word, &d, &[0, 1]).unwrap();
        let trees = f.trees();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].1, vec![1, 0]);
        assert_eq!(f.parent(f.node(2, 1)), Some(f.node(3, 0)));
    }

    #[test]
    fn empty_starts() {
        let word = w("ab");
        let d = Dfa::universal(2);
        let f = build_trace_forest(&word, &d, &[]).unwrap();
        assert_eq!(f.num_nodes(), 0);
        assert!(f.trees().is_empty());
    }

    #[test]
    fn ancestor_matches_walking() {
        let word = w("abbababbaabab");
        let d = Dfa::count_mod(2, 1, 3);
        let f = build_trace_forest(&word, &d, &[0, 2, 5]).unwrap();
        for max_jump in [0, 1, 2, 3, 5, 8] {
            let la = LevelAncestorIndex::build(&f, max_jump);
            for u in 0..f.num_nodes() {
                let mut walk = Some(u);
                for dist in 0..=word.len() {
                    assert_eq!(la.ancestor(u, dist), walk, "u={u} dist={dist}");
                    walk = walk.and_then(|v| f.parent(v));
                }
            }
        }
    }

    #[test]
    fn query_by_depth() {
        let word = w("abab");
        let d = Dfa::universal(2);
        let f = build_trace_forest(&word, &d, &[0]).unwrap();
        let la = LevelAncestorIndex::build(&f, 4);
        assert_eq!(la.query(f.leaf(0), 0), Some(f.node(4, 0)));
        assert_eq!(la.query(f.leaf(0), 5), None);
    }
}
