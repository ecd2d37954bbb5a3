use super::is_length_class;
use crate::error::{Error, Result};
use crate::model::{Embedding, GappedSequence, Word};

/// Side constraints `|gap_i| = |gap_j|` over 1-based gap indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualitySystem {
    pairs: Vec<(usize, usize)>,
    class: Vec<usize>,
}

impl EqualitySystem {
    pub fn new(gaps: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut parent: Vec<usize> = (0..gaps).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i > gaps || j > gaps {
                return Err(Error::Input(format!(
                    "equality ({i}, {j}) outside gap range [1, {gaps}]"
                )));
            }
            let (a, b) = (find(&mut parent, i - 1), find(&mut parent, j - 1));
            parent[a.max(b)] = a.min(b);
        }
        let class = (0..gaps).map(|g| find(&mut parent, g)).collect();
        let mut closed: Vec<(usize, usize)> = pairs
            .iter()
            .flat_map(|&(i, j)| [(i, j), (j, i)])
            .collect();
        closed.sort_unstable();
        closed.dedup();
        Ok(EqualitySystem { pairs: closed, class })
    }

    pub fn empty(gaps: usize) -> Self {
        EqualitySystem {
            pairs: Vec::new(),
            class: (0..gaps).collect(),
        }
    }

    /// Symmetric closure of the declared pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn gaps(&self) -> usize {
        self.class.len()
    }

    /// Smallest 0-based gap index in the class of 0-based gap `g`.
    pub fn class_of(&self, g: usize) -> usize {
        self.class[g]
    }

    pub fn holds(&self, e: &Embedding) -> bool {
        let len = |g: usize| e.positions()[g] - e.positions()[g - 1] - 1;
        self.pairs.iter().all(|&(i, j)| len(i) == len(j))
    }
}

/// Matches `gs` under additional gap-length equalities.
///
/// Depth-first search over pattern positions from left to right. The first
/// gap of each equality class fixes the class length, tried in increasing
/// order; later gaps of the class are forced. Branches are cut with a
/// suffix table that ignores the equalities. Exponential in the worst case.
pub fn match_with_equalities(w: &Word, gs: &GappedSequence, eq: &EqualitySystem) -> Result<Option<Embedding>> {
    let gc = gs.constraints();
    if let Some(t) = gc.gaps().iter().position(|g| !is_length_class(g)) {
        return Err(Error::Usage(format!(
            "equality matcher needs length constraints, gap {} is {:?}",
            t + 1,
            gc.gap(t)
        )));
    }
    if eq.gaps() != gc.len() {
        return Err(Error::Input(format!(
            "equality system covers {} gaps, pattern has {}",
            eq.gaps(),
            gc.len()
        )));
    }
    let p = gs.pattern();
    let (n, k) = (w.len(), p.len());
    if k == 0 {
        return Ok(Some(Embedding::default()));
    }
    let windows: Vec<(usize, usize)> = gc
        .gaps()
        .iter()
        .map(|g| {
            let (lo, hi) = g.window();
            (lo, hi.clamp(n))
        })
        .collect();

    // feasible[t][i]: p[t..] embeds with p[t] at position i, equalities ignored.
    let mut feasible = vec![vec![false; n + 2]; k];
    for i in 1..=n {
        feasible[k - 1][i] = w.at(i) == p[k - 1];
    }
    for t in (0..k - 1).rev() {
        let mut prefix = vec![0usize; n + 2];
        for i in 1..=n {
            prefix[i] = prefix[i - 1] + usize::from(feasible[t + 1][i]);
        }
        let (lo, hi) = windows[t];
        for i in 1..=n {
            if w.at(i) != p[t] {
                continue;
            }
            let a = i + 1 + lo;
            let b = (i + 1 + hi).min(n);
            feasible[t][i] = a <= b && prefix[b] > prefix[a - 1];
        }
    }

    struct Search<'s> {
        w: &'s Word,
        windows: &'s [(usize, usize)],
        feasible: &'s [Vec<bool>],
        eq: &'s EqualitySystem,
        lengths: Vec<Option<usize>>,
        pos: Vec<usize>,
    }

    impl Search<'_> {
        fn place(&mut self, t: usize) -> bool {
            if t + 1 == self.pos.len() {
                return true;
            }
            let n = self.w.len();
            let cur = self.pos[t];
            let (lo, hi) = self.windows[t];
            let class = self.eq.class_of(t);
            let choices: Vec<usize> = match self.lengths[class] {
                Some(len) => vec![len],
                None => (lo..=hi).collect(),
            };
            let fixed_here = self.lengths[class].is_none();
            for len in choices {
                if len < lo || len > hi {
                    continue;
                }
                let next = cur + len + 1;
                if next > n {
                    break;
                }
                if !self.feasible[t + 1][next] {
                    continue;
                }
                if fixed_here {
                    self.lengths[class] = Some(len);
                }
                self.pos[t + 1] = next;
                if self.place(t + 1) {
                    return true;
                }
            }
            if fixed_here {
                self.lengths[class] = None;
            }
            false
        }
    }

    let mut search = Search {
        w,
        windows: &windows,
        feasible: &feasible,
        eq,
        lengths: vec![None; gc.len()],
        pos: vec![0; k],
    };
    for start in 1..=n {
        if !feasible[0][start] {
            continue;
        }
        search.pos[0] = start;
        if search.place(0) {
            return Ok(Some(Embedding::from_sorted(search.pos)));
        }
    }
    Ok(None)
}
