mod common;

use std::collections::HashSet;

use common::{morphism, naive_prefix};
use proptest::prelude::*;
use welldoc_core::prng::{lcg_next, tuple_coverage, CombinedStream, Lcg, LcgParams};
use welldoc_core::word::Letter;

fn params(m: u64) -> impl Strategy<Value = LcgParams> {
    (0..m, 0..m, 0..m).prop_map(move |(a, c, seed)| LcgParams::new(a, c, m, seed).unwrap())
}

/// Direct evaluation of `Z(w)_n = Z^(w_n)_{f(n)}`.
fn reference(word: &[Letter], gens: &[LcgParams]) -> Vec<u64> {
    let nth = |p: &LcgParams, k: usize| (0..k).fold(p.seed, |z, _| (p.a * z + p.c) % p.m);
    (0..word.len())
        .map(|n| {
            let letter = word[n];
            let f = word[..n].iter().filter(|&&x| x == letter).count();
            nth(&gens[letter as usize], f)
        })
        .collect()
}

proptest! {
    #[test]
    fn lcg_step_is_affine(p in params(97), z in 0u64..97) {
        prop_assert_eq!(lcg_next(z, &p), (p.a * z + p.c) % 97);
        prop_assert!(lcg_next(z, &p) < p.m);
    }

    #[test]
    fn combined_stream_matches_its_definition(g0 in params(13), g1 in params(13), g2 in params(13), n in 0usize..300) {
        let phi = morphism(&["02", "101", "102"]);
        let word = naive_prefix(&phi, n.max(1));
        let out: Vec<u64> = CombinedStream::from_morphism(&phi, vec![g0, g1, g2]).unwrap().take(n).collect();
        prop_assert_eq!(out, reference(&word[..n], &[g0, g1, g2]));
    }

    #[test]
    fn streams_decompose_into_their_generators(g0 in params(31), g1 in params(31)) {
        let phi = morphism(&["01", "0"]);
        let n = 10_000;
        let word = naive_prefix(&phi, n);
        let mut stream = CombinedStream::from_morphism(&phi, vec![g0, g1]).unwrap();
        let out: Vec<u64> = stream.by_ref().take(n).collect();
        for (letter, g) in [(0u16, g0), (1, g1)] {
            let picked: Vec<u64> = out.iter().zip(&word).filter(|(_, &w)| w == letter).map(|(&x, _)| x).collect();
            let raw: Vec<u64> = Lcg::new(g).take(picked.len()).collect();
            prop_assert_eq!(picked, raw);
        }
        // per-letter counters are the letter counts of the consumed prefix
        let zeros = word.iter().filter(|&&a| a == 0).count() as u64;
        prop_assert_eq!(stream.counts(), &[zeros, n as u64 - zeros][..]);
        prop_assert_eq!(stream.position(), n as u64);
    }

    #[test]
    fn streams_are_deterministic(g0 in params(17), g1 in params(17)) {
        let phi = morphism(&["01", "10"]);
        let a: Vec<u64> = CombinedStream::from_morphism(&phi, vec![g0, g1]).unwrap().take(500).collect();
        let b: Vec<u64> = CombinedStream::from_morphism(&phi, vec![g0, g1]).unwrap().take(500).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn coverage_counts_distinct_tuples(g in params(7), d in 1usize..=3, n in 3usize..400) {
        let values: Vec<u64> = Lcg::new(g).take(n).collect();
        let tuples: HashSet<&[u64]> = values.windows(d).collect();
        let c = tuple_coverage(Lcg::new(g), d, n).unwrap();
        prop_assert_eq!(c.distinct, tuples.len() as u64);
        prop_assert_eq!(c.total, 7u64.pow(d as u32));
        prop_assert_eq!(c.missing, c.total - c.distinct);
    }
}

#[test]
fn fibonacci_combined_counters() {
    let counter = LcgParams::counter(5, 0).unwrap();
    let phi = morphism(&["01", "0"]);
    let out: Vec<u64> = CombinedStream::from_morphism(&phi, vec![counter; 2]).unwrap().take(8).collect();
    assert_eq!(out, reference(&naive_prefix(&phi, 8), &[counter; 2]));
    assert_eq!(out, vec![0, 0, 1, 2, 1, 3, 2, 4]);
}

#[test]
fn combined_stream_beats_a_single_counter() {
    let counter = LcgParams::counter(5, 0).unwrap();
    let single = tuple_coverage(Lcg::new(counter), 2, 10_000).unwrap();
    let stream = CombinedStream::from_morphism(&morphism(&["01", "0"]), vec![counter; 2]).unwrap();
    let combined = tuple_coverage(stream, 2, 10_000).unwrap();
    assert!(combined.coverage > single.coverage);
}
