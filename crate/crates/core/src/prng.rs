//! Linear congruential generators combined along a word.
//!
//! Given generators `Z^(0), ..., Z^(sigma-1)` and a word `w`, the combined
//! stream emits `Z(w)_n = Z^(w_n)_{f(n)}` where `f(n)` counts the earlier
//! positions carrying the same letter as position `n`. Each generator thus
//! advances only when its letter is read.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{FixedPointLetters, Letter, Morphism, PrefixStream};

/// Parameters of `Z_{n+1} = a Z_n + c (mod m)` with `Z_0 = seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LcgParams {
    pub a: u64,
    pub c: u64,
    pub m: u64,
    pub seed: u64,
}

impl LcgParams {
    pub fn new(a: u64, c: u64, m: u64, seed: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadModulus { min: 2, got: m });
        }
        for (name, value) in [("a", a), ("c", c), ("seed", seed)] {
            if value >= m {
                return Err(Error::Precondition(format!("{name} = {value} must be below the modulus {m}")));
            }
        }
        Ok(LcgParams { a, c, m, seed })
    }

    /// The counter `Z_{n+1} = Z_n + 1 (mod m)` started at `seed`.
    pub fn counter(m: u64, seed: u64) -> Result<Self> {
        LcgParams::new(1 % m.max(2), 1 % m.max(2), m, seed)
    }
}

/// Parses `a,c,m,seed`.
impl FromStr for LcgParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected a,c,m,seed, found {s:?}")));
        }
        let mut v = [0u64; 4];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| Error::Parse(format!("invalid integer {part:?} in {s:?}")))?;
        }
        LcgParams::new(v[0], v[1], v[2], v[3])
    }
}

impl fmt::Display for LcgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.c, self.m, self.seed)
    }
}

pub fn lcg_next(state: u64, params: &LcgParams) -> u64 {
    ((params.a as u128 * state as u128 + params.c as u128) % params.m as u128) as u64
}

/// Streams with values in `[0, modulus)`.
pub trait ModularStream: Iterator<Item = u64> {
    fn modulus(&self) -> u64;
}

/// A single generator, yielding `Z_0, Z_1, ...`.
#[derive(Debug, Clone)]
pub struct Lcg {
    params: LcgParams,
    state: u64,
}

impl Lcg {
    pub fn new(params: LcgParams) -> Self {
        Lcg { params, state: params.seed }
    }

    pub fn params(&self) -> &LcgParams {
        &self.params
    }
}

impl Iterator for Lcg {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let out = self.state;
        self.state = lcg_next(self.state, &self.params);
        Some(out)
    }
}

impl ModularStream for Lcg {
    fn modulus(&self) -> u64 {
        self.params.m
    }
}

/// `Z(w)_n` for a word source `w` and one generator per letter, all sharing
/// one modulus.
#[derive(Debug, Clone)]
pub struct CombinedStream<I> {
    source: I,
    generators: Vec<Lcg>,
    counts: Vec<u64>,
    position: u64,
    modulus: u64,
}

impl<I: Iterator<Item = Letter>> CombinedStream<I> {
    /// Letters produced by `source` must be below `params.len()`; a letter
    /// outside that range ends the stream.
    pub fn new(source: I, params: Vec<LcgParams>) -> Result<Self> {
        let modulus = params.first().ok_or(Error::EmptyAlphabet)?.m;
        if let Some(p) = params.iter().find(|p| p.m != modulus) {
            return Err(Error::Precondition(format!(
                "all generators must share one modulus, found {} and {}",
                modulus, p.m
            )));
        }
        Ok(CombinedStream {
            source,
            counts: vec![0; params.len()],
            generators: params.into_iter().map(Lcg::new).collect(),
            position: 0,
            modulus,
        })
    }

    /// How many values each generator has emitted.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of values emitted so far.
    pub fn position(&self) -> u64 {
        self.position
    }
}

impl CombinedStream<FixedPointLetters> {
    /// Combines the generators along the fixed point of `morphism` starting
    /// with 0.
    pub fn from_morphism(morphism: &Morphism, params: Vec<LcgParams>) -> Result<Self> {
        if params.len() != morphism.sigma() {
            return Err(Error::DimensionMismatch { expected: morphism.sigma(), found: params.len() });
        }
        CombinedStream::new(PrefixStream::new(morphism.clone(), 0)?.into_iter(), params)
    }
}

impl<I: Iterator<Item = Letter>> Iterator for CombinedStream<I> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let letter = self.source.next()? as usize;
        let value = self.generators.get_mut(letter)?.next()?;
        self.counts[letter] += 1;
        self.position += 1;
        Some(value)
    }
}

impl<I: Iterator<Item = Letter>> ModularStream for CombinedStream<I> {
    fn modulus(&self) -> u64 {
        self.modulus
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coverage {
    pub dimension: usize,
    pub samples: usize,
    pub distinct: u64,
    /// `m^d`.
    pub total: u64,
    pub coverage: f64,
    pub missing: u64,
}

/// Fraction of `(Z/mZ)^d` reached by the overlapping `d`-tuples of the first
/// `samples` values of `stream`.
pub fn tuple_coverage<S: ModularStream>(stream: S, dimension: usize, samples: usize) -> Result<Coverage> {
    if dimension == 0 || samples < dimension {
        return Err(Error::Precondition(format!("need 1 <= d <= N, got d = {dimension}, N = {samples}")));
    }
    let m = stream.modulus();
    let total = (m as u128)
        .checked_pow(dimension as u32)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or_else(|| Error::Unsupported(format!("{m}^{dimension} tuples")))? as u64;
    let mut seen = HashSet::new();
    let mut code: u128 = 0;
    let mut read = 0;
    for value in stream.take(samples) {
        code = (code * m as u128 + value as u128) % total as u128;
        read += 1;
        if read >= dimension {
            seen.insert(code as u64);
        }
    }
    if read < samples {
        return Err(Error::Precondition(format!("stream ended after {read} of {samples} samples")));
    }
    let distinct = seen.len() as u64;
    Ok(Coverage {
        dimension,
        samples,
        distinct,
        total,
        coverage: distinct as f64 / total as f64,
        missing: total - distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_examples() {
        assert_eq!(lcg_next(3, &LcgParams::new(1, 1, 5, 0).unwrap()), 4);
        assert_eq!(lcg_next(0, &LcgParams::new(2, 3, 5, 0).unwrap()), 3);
        let constant: Vec<u64> = Lcg::new(LcgParams::new(0, 3, 7, 5).unwrap()).take(4).collect();
        assert_eq!(constant, vec![5, 3, 3, 3]);
    }

    #[test]
    fn params_validation() {
        assert_eq!(LcgParams::new(1, 1, 1, 0), Err(Error::BadModulus { min: 2, got: 1 }));
        assert!(LcgParams::new(5, 1, 5, 0).is_err());
        assert_eq!("2,3,5,1".parse::<LcgParams>().unwrap(), LcgParams::new(2, 3, 5, 1).unwrap());
        assert!("2,3,5".parse::<LcgParams>().is_err());
        assert_eq!(LcgParams::new(2, 3, 5, 1).unwrap().to_string(), "2,3,5,1");
    }

    #[test]
    fn interleaved_counters() {
        let counter = LcgParams::counter(5, 0).unwrap();
        let alternating = [0u16, 1].into_iter().cycle();
        let out: Vec<u64> = CombinedStream::new(alternating, vec![counter; 2]).unwrap().take(6).collect();
        assert_eq!(out, vec![0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn constant_word_replays_first_generator() {
        let g0 = LcgParams::new(3, 1, 11, 4).unwrap();
        let g1 = LcgParams::new(2, 5, 11, 7).unwrap();
        let out: Vec<u64> = CombinedStream::new(std::iter::repeat(0u16), vec![g0, g1]).unwrap().take(20).collect();
        assert_eq!(out, Lcg::new(g0).take(20).collect::<Vec<_>>());
    }

    #[test]
    fn moduli_must_agree() {
        let g0 = LcgParams::counter(5, 0).unwrap();
        let g1 = LcgParams::counter(7, 0).unwrap();
        assert!(CombinedStream::new(std::iter::empty(), vec![g0, g1]).is_err());
    }

    #[test]
    fn single_counter_coverage() {
        let c = tuple_coverage(Lcg::new(LcgParams::counter(5, 0).unwrap()), 2, 10_000).unwrap();
        assert_eq!((c.distinct, c.total, c.missing), (5, 25, 20));
        assert_eq!(c.coverage, 0.2);
        let d1 = tuple_coverage(Lcg::new(LcgParams::counter(5, 0).unwrap()), 1, 5).unwrap();
        assert_eq!(d1.coverage, 1.0);
        assert!(tuple_coverage(Lcg::new(LcgParams::counter(5, 0).unwrap()), 3, 2).is_err());
    }
}
