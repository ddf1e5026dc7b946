//! The WELLDOC property of morphic fixed points.
//!
//! An infinite word `w` over `{0, ..., sigma-1}` is WELLDOC when, for every
//! factor `u` and every modulus `m`, the Parikh vectors modulo `m` of the
//! prefixes of `w` followed by an occurrence of `u` cover all of
//! `(Z/mZ)^sigma`. For a fixed point of a morphism `phi` this is decided by
//! [`decide_welldoc`]: the word must be recurrent, `det A_phi` must be `±1`,
//! and the Parikh vectors of the returns to 0 must generate `Z^sigma` (the
//! last condition is automatic on two letters). [`empirical_welldoc`]
//! measures the sets `X_{u,m}` directly on a finite prefix.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::returns::{returns_complete, s_table_fixpoint, table_span, ReturnScanner, ReturnSet};
use crate::word::{Letter, Morphism, ParikhVector, PrefixStream, Word};
use crate::zlinalg::{
    bigint_json, det, generates_z, is_unit, two_stage_generation, EchelonModP, GenerationCertificate, IntVectorSet,
    INITIAL_PRIME,
};

/// How recurrence of the first letter was decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceTrace {
    pub letter: Letter,
    pub recurrent: bool,
    /// For each letter `a`, the letters occurring in `phi^n(a)` for some
    /// `n >= 1`.
    pub image_letters: Vec<Vec<Letter>>,
    /// Letters of `w[1..]`, where `w` is the fixed point.
    pub tail_letters: Vec<Letter>,
    /// First tail letter, in breadth-first order from the letters of
    /// `phi(letter)[1..]`, whose image contains `letter`.
    pub witness: Option<Letter>,
}

/// Whether `letter` occurs again in the fixed point of `phi` starting with it.
///
/// With `phi(letter) = letter s`, the fixed point is `letter s phi(s)
/// phi^2(s) ...`, so its tail uses exactly the letters reachable from those
/// of `s` under `a -> letters(phi(a))`. The closure is reached after at most
/// `sigma` rounds.
pub fn is_recurrent(morphism: &Morphism, letter: Letter) -> Result<RecurrenceTrace> {
    morphism.alphabet().check(&[letter])?;
    if !morphism.is_prolongable(letter) {
        return Err(Error::NotProlongable(letter));
    }
    let sigma = morphism.sigma();
    let direct = morphism.image_letter_sets();

    let image_letters: Vec<BTreeSet<Letter>> =
        (0..sigma).map(|a| closure(&direct, direct[a].iter().copied()).into_iter().collect()).collect();
    let reached = closure(&direct, morphism.image(letter)[1..].iter().copied());
    let witness = reached.iter().copied().find(|&a| direct[a as usize].contains(&letter));
    let tail: BTreeSet<Letter> = reached.into_iter().collect();
    let recurrent = tail.contains(&letter);
    debug_assert_eq!(recurrent, witness.is_some());
    Ok(RecurrenceTrace {
        letter,
        recurrent,
        image_letters: image_letters.into_iter().map(|s| s.into_iter().collect()).collect(),
        tail_letters: tail.into_iter().collect(),
        witness,
    })
}

/// Letters reachable from `seed`, in breadth-first order.
fn closure(direct: &[BTreeSet<Letter>], seed: impl Iterator<Item = Letter>) -> Vec<Letter> {
    let mut seen = vec![false; direct.len()];
    let mut order = Vec::new();
    for a in seed {
        if !std::mem::replace(&mut seen[a as usize], true) {
            order.push(a);
        }
    }
    let mut next = 0;
    while next < order.len() {
        let a = order[next];
        next += 1;
        for &b in &direct[a as usize] {
            if !std::mem::replace(&mut seen[b as usize], true) {
                order.push(b);
            }
        }
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "WELLDOC")]
    Welldoc,
    #[serde(rename = "NOT_WELLDOC")]
    NotWelldoc,
    #[serde(rename = "NOT_RECURRENT_HENCE_NOT_WELLDOC")]
    NotRecurrent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Welldoc => "WELLDOC",
            Verdict::NotWelldoc => "NOT_WELLDOC",
            Verdict::NotRecurrent => "NOT_RECURRENT_HENCE_NOT_WELLDOC",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelldocVerdict {
    pub sigma: usize,
    pub recurrent: bool,
    pub recurrence: RecurrenceTrace,
    /// Letters occurring in the fixed point.
    pub effective_alphabet: Vec<Letter>,
    /// Set when the fixed point is `0^omega`.
    pub degenerate: bool,
    #[serde(serialize_with = "bigint_json::serialize")]
    pub det: BigInt,
    pub binary_shortcut_used: bool,
    pub returns: Option<ReturnSet>,
    #[serde(rename = "generates_Z")]
    pub generates_z: Option<GenerationCertificate>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl WelldocVerdict {
    pub fn returns_generate_z(&self) -> Option<bool> {
        self.generates_z.as_ref().map(|c| c.answer)
    }
}

/// Decides WELLDOC for the fixed point of `phi` starting with 0.
pub fn decide_welldoc(morphism: &Morphism) -> Result<WelldocVerdict> {
    if !morphism.is_prolongable(0) {
        return Err(Error::NotProlongable(0));
    }
    let sigma = morphism.sigma();
    let recurrence = is_recurrent(morphism, 0)?;
    let mut effective: BTreeSet<Letter> = recurrence.tail_letters.iter().copied().collect();
    effective.insert(0);
    let degenerate = effective.len() == 1;
    let det = det(&morphism.incidence_matrix())?;

    let mut verdict = WelldocVerdict {
        sigma,
        recurrent: recurrence.recurrent,
        recurrence,
        effective_alphabet: effective.into_iter().collect(),
        degenerate,
        det,
        binary_shortcut_used: false,
        returns: None,
        generates_z: None,
        verdict: Verdict::NotWelldoc,
        reasons: Vec::new(),
    };
    if degenerate {
        verdict.reasons.push("fixed point is 0^omega (one effective letter)".into());
    }
    if verdict.effective_alphabet.len() < sigma {
        verdict
            .reasons
            .push(format!("only {} of {sigma} letters occur in the fixed point", verdict.effective_alphabet.len()));
    }

    if !verdict.recurrent {
        verdict.verdict = Verdict::NotRecurrent;
        verdict.reasons.push("first letter does not recur, so X_u is finite for long prefixes u".into());
        return Ok(verdict);
    }
    if !is_unit(&verdict.det) {
        verdict.reasons.push(format!("det A = {} is not ±1", verdict.det));
        return Ok(verdict);
    }

    let (returns, cert) = return_generation(morphism)?;
    verdict.returns = returns;
    if sigma == 2 {
        verdict.binary_shortcut_used = true;
        if !cert.answer {
            return Err(Error::Internal(
                "binary recurrent morphism with det ±1 whose returns do not generate Z^2".into(),
            ));
        }
        verdict.reasons.push("two letters, recurrent, det ±1".into());
        verdict.verdict = Verdict::Welldoc;
    } else if cert.answer {
        verdict.reasons.push("det ±1 and the returns to 0 generate Z^sigma".into());
        verdict.verdict = Verdict::Welldoc;
    } else {
        let p = cert.failing_prime.unwrap_or(INITIAL_PRIME);
        verdict.reasons.push(format!("returns to 0 do not span (Z/{p}Z)^{sigma}"));
    }
    verdict.generates_z = Some(cert);
    Ok(verdict)
}

/// Generation test for the returns to 0: on the enumerated return set when it
/// can be certified complete, otherwise on the stabilized S-tables.
fn return_generation(morphism: &Morphism) -> Result<(Option<ReturnSet>, GenerationCertificate)> {
    match returns_complete(morphism) {
        Ok(returns) => {
            let set = IntVectorSet::new(morphism.sigma(), returns.vectors())?;
            let cert = generates_z(&set)?;
            Ok((Some(returns), cert))
        }
        Err(Error::ReturnsUnbounded { .. }) => Ok((None, generation_by_tables(morphism)?)),
        Err(e) => Err(e),
    }
}

/// Largest `p^sigma` for which the S-table modulo `p` is built.
pub const MAX_TABLE_RESIDUES: u128 = 1 << 20;

/// Whether the Parikh vectors of the returns to 0 generate `Z^sigma`, with
/// every per-prime test answered by the stabilized S-table modulo that prime.
/// The basis for the second stage is taken from returns found by scanning.
pub fn generation_by_tables(morphism: &Morphism) -> Result<GenerationCertificate> {
    let sigma = morphism.sigma();
    if !is_recurrent(morphism, 0)?.recurrent {
        return Err(Error::NotRecurrent);
    }
    let spans_mod = |p: u64| -> Result<bool> {
        if (p as u128).checked_pow(sigma as u32).is_none_or(|r| r > MAX_TABLE_RESIDUES) {
            return Err(Error::Unsupported(format!("S-table modulo {p} over {sigma} letters is too large")));
        }
        Ok(table_span(&s_table_fixpoint(morphism, p)?).is_full())
    };

    let mut candidates = Vec::new();
    if spans_mod(INITIAL_PRIME)? {
        let mut scanner = ReturnScanner::new(morphism)?;
        let mut span = EchelonModP::new(sigma, INITIAL_PRIME);
        while !span.is_full() {
            for word in scanner.expand()? {
                let v = ParikhVector::of(&word, sigma)?;
                if span.insert(v.reduce(INITIAL_PRIME)) {
                    candidates.push(v.to_bigint());
                }
            }
        }
    }
    two_stage_generation(sigma, &candidates, spans_mod)
}

/// Residues modulo `m` of the vectors of `(Z/mZ)^sigma`, encoded with the
/// first coordinate most significant so that code order is lexicographic.
struct Codec {
    sigma: usize,
    modulus: u64,
    total: u64,
    weights: Vec<u64>,
}

impl Codec {
    fn new(sigma: usize, modulus: u64) -> Result<Self> {
        let total = (modulus as u128)
            .checked_pow(sigma as u32)
            .filter(|&t| t <= u64::MAX as u128)
            .ok_or_else(|| Error::Unsupported(format!("{modulus}^{sigma} residue vectors")))?
            as u64;
        let mut weights = vec![1u64; sigma];
        for i in (0..sigma.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * modulus;
        }
        Ok(Codec { sigma, modulus, total, weights })
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let mut v = vec![0; self.sigma];
        for i in (0..self.sigma).rev() {
            v[i] = code % self.modulus;
            code /= self.modulus;
        }
        v
    }
}

/// Running Parikh vector modulo `m` together with its code.
struct Counter<'a> {
    codec: &'a Codec,
    counts: Vec<u64>,
    code: u64,
}

impl<'a> Counter<'a> {
    fn new(codec: &'a Codec) -> Self {
        Counter { codec, counts: vec![0; codec.sigma], code: 0 }
    }

    fn push(&mut self, a: Letter) {
        let a = a as usize;
        let w = self.codec.weights[a];
        if self.counts[a] + 1 == self.codec.modulus {
            self.counts[a] = 0;
            self.code -= (self.codec.modulus - 1) * w;
        } else {
            self.counts[a] += 1;
            self.code += w;
        }
    }
}

const BITSET_LIMIT: u64 = 1 << 20;

enum ResidueSet {
    Bits { bits: Vec<u64>, len: u64 },
    Hashed(HashSet<u64>),
}

impl ResidueSet {
    fn new(total: u64) -> Self {
        if total <= BITSET_LIMIT {
            ResidueSet::Bits { bits: vec![0; total.div_ceil(64) as usize], len: 0 }
        } else {
            ResidueSet::Hashed(HashSet::new())
        }
    }

    fn insert(&mut self, code: u64) {
        match self {
            ResidueSet::Bits { bits, len } => {
                let (word, bit) = ((code / 64) as usize, code % 64);
                if bits[word] >> bit & 1 == 0 {
                    bits[word] |= 1 << bit;
                    *len += 1;
                }
            }
            ResidueSet::Hashed(set) => {
                set.insert(code);
            }
        }
    }

    fn contains(&self, code: u64) -> bool {
        match self {
            ResidueSet::Bits { bits, .. } => bits[(code / 64) as usize] >> (code % 64) & 1 == 1,
            ResidueSet::Hashed(set) => set.contains(&code),
        }
    }

    fn len(&self) -> u64 {
        match self {
            ResidueSet::Bits { len, .. } => *len,
            ResidueSet::Hashed(set) => set.len() as u64,
        }
    }

    fn codes(&self, total: u64) -> Vec<u64> {
        match self {
            ResidueSet::Bits { .. } => (0..total).filter(|&c| self.contains(c)).collect(),
            ResidueSet::Hashed(set) => {
                let mut v: Vec<u64> = set.iter().copied().collect();
                v.sort_unstable();
                v
            }
        }
    }

    /// Smallest code not in the set, if any.
    fn first_missing(&self, total: u64) -> Option<u64> {
        if self.len() == total {
            return None;
        }
        (0..total).find(|&c| !self.contains(c))
    }
}

/// The observed set `X_{u,m}` on a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalX {
    pub factor: Word,
    pub modulus: u64,
    pub horizon: usize,
    pub occurrences: usize,
    /// Observed vectors in lexicographic order.
    pub observed: Vec<Vec<u64>>,
    /// `m^sigma`.
    pub total: u64,
    /// Lexicographically least vector not observed.
    pub witness: Option<Vec<u64>>,
    /// Whether the set did not grow over the second half of the scan.
    pub stabilized: bool,
}

impl EmpiricalX {
    pub fn coverage(&self) -> f64 {
        self.observed.len() as f64 / self.total as f64
    }

    pub fn is_full(&self) -> bool {
        self.observed.len() as u64 == self.total
    }
}

/// Parikh vectors modulo `m` of the prefixes `w[0, a)` with `u` occurring at
/// position `a` and `a + |u| <= horizon`.
pub fn empirical_x(morphism: &Morphism, factor: &[Letter], modulus: u64, horizon: usize) -> Result<EmpiricalX> {
    if modulus == 0 {
        return Err(Error::BadModulus { min: 1, got: 0 });
    }
    if factor.is_empty() {
        return Err(Error::Precondition("factor must be non-empty".into()));
    }
    morphism.alphabet().check(factor)?;
    let codec = Codec::new(morphism.sigma(), modulus)?;
    let mut stream = PrefixStream::new(morphism.clone(), 0)?;
    let prefix = stream.prefix(horizon);

    let mut set = ResidueSet::new(codec.total);
    let mut counter = Counter::new(&codec);
    let mut occurrences = 0;
    let mut at_half = 0;
    let half = horizon / 2;
    for i in 0..prefix.len() {
        if i == half {
            at_half = set.len();
        }
        if prefix[i..].starts_with(factor) {
            occurrences += 1;
            set.insert(counter.code);
        }
        counter.push(prefix[i]);
    }
    if occurrences == 0 {
        return Err(Error::TooFewOccurrences { found: 0, needed: 1 });
    }
    Ok(EmpiricalX {
        factor: Word::from(factor),
        modulus,
        horizon: prefix.len(),
        occurrences,
        observed: set.codes(codec.total).into_iter().map(|c| codec.decode(c)).collect(),
        total: codec.total,
        witness: set.first_missing(codec.total).map(|c| codec.decode(c)),
        stabilized: set.len() == at_half,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    #[serde(rename = "FULL")]
    Full,
    /// Some vector is missing and the set stopped growing.
    #[serde(rename = "FALSIFIED")]
    Falsified,
    /// Fewer than two occurrences, or a partial set that was still growing.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalCell {
    pub u: Word,
    pub m: u64,
    pub observed: u64,
    pub total: u64,
    pub coverage: f64,
    pub witness: Option<Vec<u64>>,
    pub occurrences: usize,
    pub stabilized: bool,
    pub status: CellStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EmpiricalVerdict {
    #[serde(rename = "CONSISTENT-WITH-WELLDOC")]
    Consistent,
    #[serde(rename = "FALSIFIED")]
    Falsified,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for EmpiricalVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EmpiricalVerdict::Consistent => "CONSISTENT-WITH-WELLDOC",
            EmpiricalVerdict::Falsified => "FALSIFIED",
            EmpiricalVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Falsification {
    pub u: Word,
    pub m: u64,
    pub witness: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub horizon: usize,
    pub max_factor_len: usize,
    pub max_modulus: u64,
    /// Cells ordered by factor length, factor, then modulus.
    pub cells: Vec<EmpiricalCell>,
    pub verdict: EmpiricalVerdict,
    /// First falsified cell in cell order.
    pub falsified_at: Option<Falsification>,
}

impl EmpiricalReport {
    pub fn cell(&self, u: &[Letter], m: u64) -> Option<&EmpiricalCell> {
        self.cells.iter().find(|c| c.u.symbols() == u && c.m == m)
    }
}

/// Measures `X_{u,m}` for every factor `u` of `w[0, horizon)` with
/// `|u| <= max_len` and every `1 <= m <= max_modulus`.
///
/// Moduli are processed in parallel; the result does not depend on the
/// number of threads.
pub fn empirical_welldoc(
    morphism: &Morphism,
    max_len: usize,
    max_modulus: u64,
    horizon: usize,
) -> Result<EmpiricalReport> {
    if max_len == 0 || max_modulus == 0 || horizon == 0 {
        return Err(Error::Precondition("factor length, modulus and horizon must be positive".into()));
    }
    let sigma = morphism.sigma();
    let codecs = (1..=max_modulus).map(|m| Codec::new(sigma, m)).collect::<Result<Vec<_>>>()?;
    let mut stream = PrefixStream::new(morphism.clone(), 0)?;
    let prefix = stream.prefix(horizon);
    let n = prefix.len();

    // ids[l-1][i] = id of w[i, i+l)
    let mut index: HashMap<&[Letter], u32> = HashMap::new();
    let mut factors: Vec<&[Letter]> = Vec::new();
    let mut ids: Vec<Vec<u32>> = Vec::with_capacity(max_len);
    for len in 1..=max_len.min(n) {
        let row = prefix
            .windows(len)
            .map(|f| {
                *index.entry(f).or_insert_with(|| {
                    factors.push(f);
                    (factors.len() - 1) as u32
                })
            })
            .collect();
        ids.push(row);
    }
    let mut occurrences = vec![0usize; factors.len()];
    for row in &ids {
        for &id in row {
            occurrences[id as usize] += 1;
        }
    }

    let half = n / 2;
    let per_modulus: Vec<Vec<(u64, ResidueSet)>> = codecs
        .par_iter()
        .map(|codec| {
            let mut sets: Vec<ResidueSet> = (0..factors.len()).map(|_| ResidueSet::new(codec.total)).collect();
            let mut at_half = vec![0u64; factors.len()];
            let mut counter = Counter::new(codec);
            for i in 0..n {
                if i == half {
                    for (h, s) in at_half.iter_mut().zip(&sets) {
                        *h = s.len();
                    }
                }
                for row in &ids {
                    if let Some(&id) = row.get(i) {
                        sets[id as usize].insert(counter.code);
                    }
                }
                counter.push(prefix[i]);
            }
            at_half.into_iter().zip(sets).collect()
        })
        .collect();

    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| factors[a].len().cmp(&factors[b].len()).then_with(|| factors[a].cmp(factors[b])));

    let mut cells = Vec::with_capacity(order.len() * codecs.len());
    for &f in &order {
        for (codec, sets) in codecs.iter().zip(&per_modulus) {
            let (half_len, set) = &sets[f];
            let observed = set.len();
            let stabilized = observed == *half_len;
            let witness = set.first_missing(codec.total).map(|c| codec.decode(c));
            let status = if observed == codec.total {
                CellStatus::Full
            } else if occurrences[f] < 2 || !stabilized {
                CellStatus::Inconclusive
            } else {
                CellStatus::Falsified
            };
            cells.push(EmpiricalCell {
                u: Word::from(factors[f]),
                m: codec.modulus,
                observed,
                total: codec.total,
                coverage: observed as f64 / codec.total as f64,
                witness,
                occurrences: occurrences[f],
                stabilized,
                status,
            });
        }
    }

    let falsified_at = cells.iter().find(|c| c.status == CellStatus::Falsified).map(|c| Falsification {
        u: c.u.clone(),
        m: c.m,
        witness: c.witness.clone().unwrap_or_default(),
    });
    let verdict = if falsified_at.is_some() {
        EmpiricalVerdict::Falsified
    } else if cells.iter().any(|c| c.status == CellStatus::Inconclusive) {
        EmpiricalVerdict::Inconclusive
    } else {
        EmpiricalVerdict::Consistent
    };
    Ok(EmpiricalReport { horizon: n, max_factor_len: max_len, max_modulus, cells, verdict, falsified_at })
}

/// Entry of the `empirical` list of a [`Report`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalEntry {
    pub u: Word,
    pub m: u64,
    pub coverage: f64,
    pub witness: Option<Vec<u64>>,
    pub status: CellStatus,
}

/// Machine-readable summary of a decision, optionally with empirical cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub morphism: String,
    pub sigma: usize,
    pub recurrent: bool,
    pub recurrence: RecurrenceTrace,
    pub effective_alphabet: Vec<Letter>,
    pub degenerate: bool,
    #[serde(serialize_with = "bigint_json::serialize")]
    pub det: BigInt,
    pub binary_shortcut_used: bool,
    /// Returns to 0, when they were enumerated.
    pub returns: Vec<Word>,
    pub return_set: Option<ReturnSet>,
    #[serde(rename = "generates_Z")]
    pub generates_z: Option<GenerationCertificate>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_verdict: Option<EmpiricalVerdict>,
    pub empirical: Vec<EmpiricalEntry>,
}

impl Report {
    pub fn new(morphism: &Morphism, decision: &WelldocVerdict, empirical: Option<&EmpiricalReport>) -> Self {
        Report {
            morphism: morphism.to_string(),
            sigma: decision.sigma,
            recurrent: decision.recurrent,
            recurrence: decision.recurrence.clone(),
            effective_alphabet: decision.effective_alphabet.clone(),
            degenerate: decision.degenerate,
            det: decision.det.clone(),
            binary_shortcut_used: decision.binary_shortcut_used,
            returns: decision.returns.as_ref().map(|r| r.words.clone()).unwrap_or_default(),
            return_set: decision.returns.clone(),
            generates_z: decision.generates_z.clone(),
            verdict: decision.verdict,
            reasons: decision.reasons.clone(),
            empirical_verdict: empirical.map(|e| e.verdict),
            empirical: empirical
                .map(|e| {
                    e.cells
                        .iter()
                        .map(|c| EmpiricalEntry {
                            u: c.u.clone(),
                            m: c.m,
                            coverage: c.coverage,
                            witness: c.witness.clone(),
                            status: c.status,
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn morphism(images: &[&str]) -> Morphism {
        Morphism::new(images.iter().map(|s| Word::decode(s, images.len()).unwrap()).collect()).unwrap()
    }

    #[test]
    fn recurrence_examples() {
        let fib = is_recurrent(&morphism(&["01", "0"]), 0).unwrap();
        assert!(fib.recurrent);
        assert_eq!(fib.witness, Some(1));
        assert_eq!(fib.image_letters, vec![vec![0, 1], vec![0, 1]]);
        assert!(!is_recurrent(&morphism(&["01", "11"]), 0).unwrap().recurrent);
        let cx = is_recurrent(&morphism(&["02", "101", "102"]), 0).unwrap();
        assert!(cx.recurrent);
        assert_eq!(cx.witness, Some(2));
        assert_eq!(is_recurrent(&morphism(&["10", "1"]), 0), Err(Error::NotProlongable(0)));
    }

    #[test]
    fn recurrence_through_a_chain() {
        // 0 -> 01, 1 -> 2, 2 -> 3, 3 -> 30: 0 comes back only through 3
        let t = is_recurrent(&morphism(&["01", "2", "3", "30"]), 0).unwrap();
        assert!(t.recurrent);
        assert_eq!(t.tail_letters, vec![0, 1, 2, 3]);
        assert_eq!(t.witness, Some(3));
    }

    #[test]
    fn decide_examples() {
        let cx = decide_welldoc(&morphism(&["02", "101", "102"])).unwrap();
        assert_eq!(cx.verdict, Verdict::NotWelldoc);
        assert_eq!(cx.det, BigInt::from(1));
        assert_eq!(cx.generates_z.as_ref().unwrap().failing_prime, Some(2));

        let fib = decide_welldoc(&morphism(&["01", "0"])).unwrap();
        assert_eq!(fib.verdict, Verdict::Welldoc);
        assert!(fib.binary_shortcut_used);
        assert_eq!(fib.returns_generate_z(), Some(true));

        let tm = decide_welldoc(&morphism(&["01", "10"])).unwrap();
        assert_eq!(tm.verdict, Verdict::NotWelldoc);
        assert!(tm.det.is_zero());
        assert!(tm.generates_z.is_none());

        let nr = decide_welldoc(&morphism(&["01", "11"])).unwrap();
        assert_eq!(nr.verdict, Verdict::NotRecurrent);

        let trib = decide_welldoc(&morphism(&["01", "02", "0"])).unwrap();
        assert_eq!(trib.verdict, Verdict::Welldoc);
        assert!(!trib.binary_shortcut_used);
    }

    #[test]
    fn degenerate_words_are_flagged() {
        let v = decide_welldoc(&morphism(&["00"])).unwrap();
        assert!(v.degenerate);
        assert_eq!(v.verdict, Verdict::NotWelldoc);
        let v = decide_welldoc(&morphism(&["000", "01"])).unwrap();
        assert!(v.degenerate);
        assert_eq!(v.effective_alphabet, vec![0]);
    }

    #[test]
    fn table_route_matches_on_examples() {
        for images in [&["02", "101", "102"][..], &["01", "02", "0"], &["01", "0"]] {
            let phi = morphism(images);
            let v = decide_welldoc(&phi).unwrap();
            assert_eq!(Some(generation_by_tables(&phi).unwrap().answer), v.returns_generate_z());
        }
    }

    #[test]
    fn empirical_x_counterexample() {
        let x = empirical_x(&morphism(&["02", "101", "102"]), &[0], 2, 100_000).unwrap();
        assert_eq!(x.observed, vec![vec![0, 0, 0], vec![0, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]);
        assert_eq!(x.witness, Some(vec![0, 1, 0]));
    }

    #[test]
    fn empirical_x_trivial_modulus() {
        let x = empirical_x(&morphism(&["01", "0"]), &[0], 1, 1000).unwrap();
        assert_eq!(x.observed, vec![vec![0, 0]]);
        assert!(x.is_full());
        assert_eq!(x.coverage(), 1.0);
    }

    #[test]
    fn empirical_x_errors() {
        let fib = morphism(&["01", "0"]);
        assert_eq!(empirical_x(&fib, &[1, 1], 2, 1000), Err(Error::TooFewOccurrences { found: 0, needed: 1 }));
        assert_eq!(empirical_x(&fib, &[0], 0, 1000), Err(Error::BadModulus { min: 1, got: 0 }));
    }

    #[test]
    fn codec_order_is_lexicographic() {
        let c = Codec::new(3, 4).unwrap();
        let decoded: Vec<Vec<u64>> = (0..c.total).map(|k| c.decode(k)).collect();
        let mut sorted = decoded.clone();
        sorted.sort();
        assert_eq!(decoded, sorted);
        assert_eq!(c.decode(1), vec![0, 0, 1]);
    }

    #[test]
    fn empirical_counterexample_is_falsified() {
        let r = empirical_welldoc(&morphism(&["02", "101", "102"]), 1, 2, 100_000).unwrap();
        assert_eq!(r.verdict, EmpiricalVerdict::Falsified);
        let f = r.falsified_at.unwrap();
        assert_eq!((f.u, f.m, f.witness), (Word::new(vec![0]), 2, vec![0, 1, 0]));
    }

    #[test]
    fn empirical_cells_match_single_scans() {
        let phi = morphism(&["01", "02", "0"]);
        let r = empirical_welldoc(&phi, 2, 3, 5000).unwrap();
        for cell in &r.cells {
            let x = empirical_x(&phi, &cell.u, cell.m, 5000).unwrap();
            assert_eq!(cell.observed, x.observed.len() as u64);
            assert_eq!(cell.witness, x.witness);
            assert_eq!(cell.occurrences, x.occurrences);
        }
    }
}
