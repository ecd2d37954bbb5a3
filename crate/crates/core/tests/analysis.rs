mod common;

use std::collections::BTreeSet;

use common::{all_words, gc_subsequences, random_constraints, random_word, word, Class};
use gapseq::analysis::*;
use gapseq::automata::Dfa;
use gapseq::{Alphabet, DfaId, Error, GapConstraint, GapConstraints, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn everything(sigma: u32, k: usize) -> BTreeSet<Vec<u32>> {
    all_words(sigma, k).into_iter().map(Word::into_symbols).collect()
}

fn random_case(rng: &mut ChaCha8Rng) -> (Word, Word, GapConstraints, Alphabet) {
    let sigma = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=4);
    let class = [Class::Length, Class::Regular, Class::RegLen][rng.gen_range(0..3)];
    let n1 = rng.gen_range(0..=10);
    let n2 = rng.gen_range(0..=10);
    let gc = random_constraints(rng, class, k - 1, sigma, 10);
    (
        random_word(rng, n1, sigma),
        random_word(rng, n2, sigma),
        gc,
        Alphabet::new(sigma).unwrap(),
    )
}

#[test]
fn universality_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let cfg = AnalysisConfig::default();
    let mut positives = 0;
    for _ in 0..1500 {
        let (w, _, gc, alphabet) = random_case(&mut rng);
        let subs = gc_subsequences(&w, &gc);
        let all = everything(alphabet.size(), gc.len() + 1);
        let report = universality(&w, &gc, &alphabet, &cfg).unwrap();
        assert_eq!(report.decision, subs == all, "{w:?} {gc:?}");
        positives += usize::from(report.decision);
        if let Some(p) = report.witness {
            let least = all.difference(&subs).next().unwrap();
            assert_eq!(p.symbols(), &least[..]);
        }
    }
    assert!(positives > 20, "{positives}");
}

#[test]
fn containment_and_equivalence_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let cfg = AnalysisConfig::default();
    for _ in 0..1500 {
        let (w, mut w2, gc, alphabet) = random_case(&mut rng);
        if rng.gen_bool(0.3) {
            w2 = w.iter().rev().copied().collect();
        }
        let left = gc_subsequences(&w, &gc);
        let right = gc_subsequences(&w2, &gc);
        let con = containment(&w, &w2, &gc, &alphabet, &cfg).unwrap();
        assert_eq!(con.decision, left.is_subset(&right), "{w:?} {w2:?} {gc:?}");
        if let Some(p) = &con.witness {
            assert_eq!(p.symbols(), &left.difference(&right).next().unwrap()[..]);
        }
        let eq = equivalence(&w, &w2, &gc, &alphabet, &cfg).unwrap();
        assert_eq!(eq.decision, left == right);
        if let Some(p) = &eq.witness {
            assert!(left.contains(p.symbols()) != right.contains(p.symbols()));
        }
    }
}

#[test]
fn workers_do_not_change_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let one = AnalysisConfig::default();
    let four = AnalysisConfig { workers: 4, ..one };
    for _ in 0..300 {
        let (w, w2, gc, alphabet) = random_case(&mut rng);
        assert_eq!(
            universality(&w, &gc, &alphabet, &one).unwrap().decision,
            universality(&w, &gc, &alphabet, &four).unwrap().decision
        );
        let a = containment(&w, &w2, &gc, &alphabet, &one).unwrap();
        let b = containment(&w, &w2, &gc, &alphabet, &four).unwrap();
        assert_eq!((a.decision, a.witness), (b.decision, b.witness));
    }
}

#[test]
fn set_equality_example() {
    let gc = GapConstraints::unconstrained(2);
    let ab = Alphabet::new(2).unwrap();
    let cfg = AnalysisConfig::default();
    assert!(equivalence(&word("abba"), &word("abab"), &gc, &ab, &cfg).unwrap().decision);
}

#[test]
fn regular_gap_universality() {
    // Gaps must avoid b, and every two a's in abab have a b between them.
    let gc = GapConstraints::new(vec![GapConstraint::Regular(DfaId(0))], vec![Dfa::avoiding(2, &[2])]).unwrap();
    let ab = Alphabet::new(2).unwrap();
    let cfg = AnalysisConfig::default();
    let r = universality(&word("abab"), &gc, &ab, &cfg).unwrap();
    assert!(!r.decision);
    assert_eq!(r.witness, Some(word("aa")));
    assert!(universality(&word("aabba"), &gc, &ab, &cfg).unwrap().decision);
}

#[test]
fn budget_is_enforced() {
    let gc = GapConstraints::unconstrained(20);
    let abc = Alphabet::new(3).unwrap();
    let cfg = AnalysisConfig::default();
    let w = word("abcabcabc");
    assert!(matches!(universality(&w, &gc, &abc, &cfg), Err(Error::Size { .. })));
    assert!(matches!(containment(&w, &w, &gc, &abc, &cfg), Err(Error::Size { .. })));
    let big = AnalysisConfig { budget: 1 << 40, ..cfg };
    assert!(check_budget(3, 20, big.budget).is_ok());
}

#[test]
fn classical_containment_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..3000 {
        let sigma = rng.gen_range(1..=3);
        let k = rng.gen_range(0..=5);
        let n1 = rng.gen_range(0..=10);
        let n2 = rng.gen_range(0..=10);
        let w = random_word(&mut rng, n1, sigma);
        let w2 = random_word(&mut rng, n2, sigma);
        let alphabet = Alphabet::new(sigma).unwrap();
        let (decision, witness) = classical_containment(&w, &w2, k, &alphabet).unwrap();
        if k == 0 {
            assert!(decision);
            continue;
        }
        let gc = GapConstraints::unconstrained(k);
        let left = gc_subsequences(&w, &gc);
        let right = gc_subsequences(&w2, &gc);
        assert_eq!(decision, left.is_subset(&right), "{w:?} {w2:?} k={k}");
        if let Some(p) = witness {
            assert_eq!(p.len(), k);
            assert!(left.contains(p.symbols()) && !right.contains(p.symbols()));
        }
    }
}
