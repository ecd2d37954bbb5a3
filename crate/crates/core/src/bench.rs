//! Timing harness for the matchers on seeded pseudo-random words.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::matchers::{run_matcher, Algorithm};
use crate::model::{DfaId, GapConstraint, GapConstraints, GappedSequence, UpperBound, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub algo: Algorithm,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub sigma: u32,
    /// Pattern length.
    pub k: usize,
    /// States of the counting DFA used by regular gaps.
    pub states: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algo: Algorithm::RegLen,
            sizes: vec![1_000, 2_000, 4_000, 8_000],
            trials: 5,
            seed: 0,
            sigma: 4,
            k: 6,
            states: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algo: &'static str,
    pub n: usize,
    pub k: usize,
    pub states: usize,
    pub mean_ns: f64,
    pub median_ns: f64,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "algo,n,k,states,mean_ns,median_ns";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:.0},{:.0}",
            self.algo, self.n, self.k, self.states, self.mean_ns, self.median_ns
        )
    }
}

/// The constraint tuple shared by every size: windows of length 3 to 40,
/// intersected with a cyclic counter when the algorithm handles regular gaps.
pub fn bench_constraints(cfg: &BenchConfig) -> GapConstraints {
    let gaps = cfg.k.saturating_sub(1);
    let window = GapConstraint::length(3, 40);
    let dfa = || vec![Dfa::count_mod(cfg.sigma, 1, cfg.states)];
    let build = |gap: GapConstraint, dfas| GapConstraints::new(vec![gap; gaps], dfas).expect("valid bench constraints");
    match cfg.algo {
        Algorithm::Length => build(window, Vec::new()),
        Algorithm::Regular => build(GapConstraint::Regular(DfaId(0)), dfa()),
        _ => build(
            GapConstraint::RegLen { lo: 3, hi: UpperBound::Finite(40), dfa: DfaId(0) },
            dfa(),
        ),
    }
}

/// The word and gapped sequence timed for each size, in order. Depends only
/// on the configuration, never on timings.
pub fn bench_instances(cfg: &BenchConfig) -> Result<Vec<(Word, GappedSequence)>> {
    if cfg.k == 0 || cfg.sigma == 0 || cfg.states == 0 {
        return Err(Error::Usage("bench needs k, sigma and states of at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pattern: Word = (0..cfg.k).map(|_| rng.gen_range(1..=cfg.sigma)).collect();
    let gs = GappedSequence::new(pattern, bench_constraints(cfg))?;
    Ok(cfg
        .sizes
        .iter()
        .map(|&n| {
            let w: Word = (0..n).map(|_| rng.gen_range(1..=cfg.sigma)).collect();
            (w, gs.clone())
        })
        .collect())
}

pub fn bench_match(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let trials = cfg.trials.max(1);
    let mut rows = Vec::new();
    for (w, gs) in bench_instances(cfg)? {
        run_matcher(cfg.algo, &w, &gs)?;
        let mut times: Vec<f64> = (0..trials)
            .map(|_| {
                let start = Instant::now();
                let found = run_matcher(cfg.algo, &w, &gs);
                let ns = start.elapsed().as_nanos() as f64;
                std::hint::black_box(found).map(|_| ns)
            })
            .collect::<Result<_>>()?;
        times.sort_by(f64::total_cmp);
        rows.push(BenchRow {
            algo: cfg.algo.resolve(&gs).name(),
            n: w.len(),
            k: cfg.k,
            states: cfg.states,
            mean_ns: times.iter().sum::<f64>() / trials as f64,
            median_ns: times[trials / 2],
        });
    }
    Ok(rows)
}
