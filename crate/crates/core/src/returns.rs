//! Return words of morphic fixed points.
//!
//! A return to a factor `u` of an infinite word `w` is a factor
//! `w[a_i, a_{i+1})` between two consecutive occurrences of `u`. This module
//! enumerates returns three ways:
//!
//! - [`returns_by_scan`] reads them off a finite prefix;
//! - [`returns_complete`] scans the prefixes `phi^k(0)` until the return set
//!   stops growing and its span modulo a prime matches the span derived from
//!   the stabilized [`STable`];
//! - [`returns_via_images`] builds them from the block decomposition of the
//!   letter images, for morphisms whose images contain every letter.
//!
//! The [`STable`] holds, for each pair of letters `(a, b)`, the Parikh vectors
//! modulo `m` of all factors of `phi^i(0)` that start with `a` and end with
//! `b`. It is advanced one application of the morphism at a time without
//! materializing `phi^i(0)`: a factor of `phi(v)` either sits inside the image
//! of a single letter, or it is a suffix of `phi(c)`, the image of a middle
//! part, and a prefix of `phi(d)` for some factor `c..d` of `v` of length at
//! least two. Only the middle part's vector modulo `m` matters, so factors of
//! length one are kept apart from longer ones.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::welldoc::is_recurrent;
use crate::word::{Letter, LetterGraph, Morphism, ParikhVector, PrefixStream, Word};
use crate::zlinalg::{is_prime, EchelonModP};

/// How far an enumeration of returns can be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    /// Only what was seen in the scanned prefix.
    HorizonOnly,
    Certified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReturnCertificate {
    /// Returns observed in `w[0, horizon)`.
    Scan { horizon: usize },
    /// Prefix scanning stopped after `expansions` applications of the
    /// morphism: no new return appeared while the scanned prefix at least
    /// doubled, and the returns span the same subspace modulo `modulus` as
    /// the S-table, which stabilized at step `table_step`.
    Stabilized { expansions: usize, horizon: usize, modulus: u64, table_step: usize },
    /// Returns read off the block decomposition of the images, over the
    /// exact letter graph of the fixed point.
    BlockDecomposition { edges: usize, horizon: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReturnSet {
    pub target: Word,
    /// Distinct returns, sorted.
    pub words: Vec<Word>,
    pub parikh: Vec<ParikhVector>,
    pub completeness: Completeness,
    pub certificate: ReturnCertificate,
}

impl ReturnSet {
    fn new(
        target: Word,
        words: BTreeSet<Word>,
        sigma: usize,
        completeness: Completeness,
        certificate: ReturnCertificate,
    ) -> Result<Self> {
        let words: Vec<Word> = words.into_iter().collect();
        let parikh = words.iter().map(|w| ParikhVector::of(w, sigma)).collect::<Result<Vec<_>>>()?;
        Ok(ReturnSet { target, words, parikh, completeness, certificate })
    }

    pub fn is_certified(&self) -> bool {
        self.completeness == Completeness::Certified
    }

    pub fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.parikh.iter().map(ParikhVector::to_bigint).collect()
    }
}

/// Start positions of `target` inside `text`.
pub(crate) fn occurrences(text: &[Letter], target: &[Letter]) -> Vec<usize> {
    if target.is_empty() || target.len() > text.len() {
        return Vec::new();
    }
    text.windows(target.len()).enumerate().filter(|(_, window)| *window == target).map(|(i, _)| i).collect()
}

/// Returns to `target` whose both delimiting occurrences lie in
/// `w[0, horizon)`.
pub fn returns_by_scan(stream: &mut PrefixStream, target: &[Letter], horizon: usize) -> Result<ReturnSet> {
    if target.is_empty() {
        return Err(Error::Precondition("target factor must be non-empty".into()));
    }
    let sigma = stream.sigma();
    stream.morphism().alphabet().check(target)?;
    let prefix = stream.prefix(horizon);
    let positions = occurrences(prefix, target);
    if positions.len() < 2 {
        return Err(Error::TooFewOccurrences { found: positions.len(), needed: 2 });
    }
    let words: BTreeSet<Word> = positions.windows(2).map(|p| Word::from(&prefix[p[0]..p[1]])).collect();
    ReturnSet::new(Word::from(target), words, sigma, Completeness::HorizonOnly, ReturnCertificate::Scan { horizon })
}

type Residues = Vec<u64>;

/// Parikh vectors modulo `m` of the factors of `phi^i(0)`, by first and last
/// letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STable {
    sigma: usize,
    modulus: u64,
    step: usize,
    stable_since: usize,
    letters: BTreeSet<Letter>,
    // factors of length >= 2, indexed by a * sigma + b
    long: Vec<BTreeSet<Residues>>,
}

impl STable {
    /// The table of `phi^0(0) = 0`.
    pub fn initial(morphism: &Morphism, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus { min: 2, got: modulus });
        }
        if !morphism.is_prolongable(0) {
            return Err(Error::NotProlongable(0));
        }
        let sigma = morphism.sigma();
        Ok(STable {
            sigma,
            modulus,
            step: 0,
            stable_since: 0,
            letters: BTreeSet::from([0]),
            long: vec![BTreeSet::new(); sigma * sigma],
        })
    }

    /// Number of morphism applications: the table describes `phi^step(0)`.
    pub fn step(&self) -> usize {
        self.step
    }

    /// Smallest `k` with `S^k_{a,b} = S^step_{a,b}` for every pair. Set by
    /// [`s_table_fixpoint`]; equal to [`STable::step`] otherwise.
    pub fn stable_since(&self) -> usize {
        self.stable_since
    }

    /// `sum |S_{a,b}|` over all pairs.
    pub fn size(&self) -> usize {
        let singles = self
            .letters
            .iter()
            .filter(|&&a| !self.long[a as usize * self.sigma + a as usize].contains(&self.unit(a)))
            .count();
        self.long.iter().map(BTreeSet::len).sum::<usize>() + singles
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Letters occurring in `phi^i(0)`.
    pub fn letters(&self) -> &BTreeSet<Letter> {
        &self.letters
    }

    /// `S^i_{a,b}`: vectors modulo `m` of factors beginning with `a` and
    /// ending with `b`, including the one-letter factor when `a == b`.
    pub fn set(&self, a: Letter, b: Letter) -> BTreeSet<Residues> {
        let mut out = self.long[a as usize * self.sigma + b as usize].clone();
        if a == b && self.letters.contains(&a) {
            out.insert(self.unit(a));
        }
        out
    }

    fn unit(&self, a: Letter) -> Residues {
        let mut unit = vec![0; self.sigma];
        unit[a as usize] = 1;
        unit
    }

    /// Vectors `V_f - e_0 (mod m)` for factors `f` of length at least two
    /// beginning and ending with 0. Each such `f` is a product of consecutive
    /// returns to 0 followed by a 0, and every single return `r` yields the
    /// factor `r0`, so these vectors generate the same subgroup as the
    /// returns to 0.
    pub fn return_vectors(&self) -> Vec<Residues> {
        let m = self.modulus;
        self.long[0]
            .iter()
            .map(|v| {
                let mut r = v.clone();
                r[0] = (r[0] + m - 1) % m;
                r
            })
            .collect()
    }

    /// `S^{i+1}` computed from `S^i`.
    pub fn next(&self, morphism: &Morphism) -> STable {
        let sigma = self.sigma;
        let m = self.modulus;
        let counts = morphism.image_counts();
        let blocks = BlockVectors::new(morphism, m);

        let mut letters = BTreeSet::new();
        let mut long = vec![BTreeSet::new(); sigma * sigma];

        for &c in &self.letters {
            letters.extend(morphism.image(c).iter().copied());
            for (a, b, v) in &blocks.inner[c as usize] {
                long[*a as usize * sigma + *b as usize].insert(v.clone());
            }
        }

        for c in 0..sigma {
            for d in 0..sigma {
                let vectors = &self.long[c * sigma + d];
                if vectors.is_empty() {
                    continue;
                }
                for v in vectors {
                    // image of the middle part: A * (v - e_c - e_d)
                    let mut middle = v.clone();
                    middle[c] = (middle[c] + m - 1) % m;
                    middle[d] = (middle[d] + m - 1) % m;
                    let image = apply_counts(&counts, &middle, m);
                    for (a, suffix) in &blocks.suffixes[c] {
                        let left = add_mod(&image, suffix, m);
                        for (b, prefix) in &blocks.prefixes[d] {
                            long[*a as usize * sigma + *b as usize].insert(add_mod(&left, prefix, m));
                        }
                    }
                }
            }
        }

        let step = self.step + 1;
        STable { sigma, modulus: m, step, stable_since: step, letters, long }
    }

    /// Whether both tables hold the same sets, whatever their steps.
    pub fn same_sets(&self, other: &STable) -> bool {
        self.letters == other.letters && self.long == other.long
    }
}

/// Parikh vectors modulo `m` of the pieces of each letter image.
struct BlockVectors {
    // suffixes[c]: (first letter, vector) for each suffix of phi(c)
    suffixes: Vec<Vec<(Letter, Residues)>>,
    // prefixes[d]: (last letter, vector) for each prefix of phi(d)
    prefixes: Vec<Vec<(Letter, Residues)>>,
    // inner[c]: (first, last, vector) for factors of phi(c) of length >= 2
    inner: Vec<Vec<(Letter, Letter, Residues)>>,
}

impl BlockVectors {
    fn new(morphism: &Morphism, m: u64) -> Self {
        let sigma = morphism.sigma();
        let mut suffixes = Vec::with_capacity(sigma);
        let mut prefixes = Vec::with_capacity(sigma);
        let mut inner = Vec::with_capacity(sigma);
        for image in morphism.images() {
            let mut pre = BTreeSet::new();
            let mut acc = vec![0u64; sigma];
            for &a in image.iter() {
                acc[a as usize] = (acc[a as usize] + 1) % m;
                pre.insert((a, acc.clone()));
            }
            let mut suf = BTreeSet::new();
            let mut acc = vec![0u64; sigma];
            for &a in image.iter().rev() {
                acc[a as usize] = (acc[a as usize] + 1) % m;
                suf.insert((a, acc.clone()));
            }
            let mut inn = BTreeSet::new();
            for i in 0..image.len() {
                let mut acc = vec![0u64; sigma];
                acc[image[i] as usize] = 1 % m;
                for j in i + 1..image.len() {
                    acc[image[j] as usize] = (acc[image[j] as usize] + 1) % m;
                    inn.insert((image[i], image[j], acc.clone()));
                }
            }
            prefixes.push(pre.into_iter().collect());
            suffixes.push(suf.into_iter().collect());
            inner.push(inn.into_iter().collect());
        }
        BlockVectors { suffixes, prefixes, inner }
    }
}

// counts[j][i] = |phi(j)|_i
fn apply_counts(counts: &[Vec<u64>], v: &[u64], m: u64) -> Residues {
    let sigma = v.len();
    let mut out = vec![0u64; sigma];
    for (j, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for i in 0..sigma {
            out[i] = ((out[i] as u128 + counts[j][i] as u128 * x as u128) % m as u128) as u64;
        }
    }
    out
}

fn add_mod(a: &[u64], b: &[u64], m: u64) -> Residues {
    a.iter().zip(b).map(|(x, y)| ((*x as u128 + *y as u128) % m as u128) as u64).collect()
}

/// Upper bound on the stabilization step, `sigma^2 * m^sigma`, saturating.
pub fn stabilization_bound(sigma: usize, modulus: u64) -> u128 {
    let mut bound: u128 = (sigma as u128).saturating_mul(sigma as u128);
    for _ in 0..sigma {
        bound = bound.saturating_mul(modulus as u128);
    }
    bound
}

/// Iterates the table from `phi^0(0)` until it stops changing and returns
/// the last table.
///
/// The sets `S^i_{a,b}` only grow with `i`, and together hold at most
/// `sigma^2 m^sigma` vectors, so they reach their final value at some
/// `k < sigma^2 m^sigma`, reported as [`STable::stable_since`]. The iteration
/// itself carries factors of length one apart from longer ones and may run a
/// few steps past `k`; it is cut off at `sigma^2 m^sigma + sigma` with an
/// internal error.
pub fn s_table_fixpoint(morphism: &Morphism, modulus: u64) -> Result<STable> {
    let mut table = STable::initial(morphism, modulus)?;
    let bound = stabilization_bound(morphism.sigma(), modulus).saturating_add(morphism.sigma() as u128);
    let mut sizes = vec![table.size()];
    loop {
        let next = table.next(morphism);
        if next.same_sets(&table) {
            let last = *sizes.last().expect("non-empty");
            table.stable_since = sizes.iter().position(|&n| n == last).expect("last size present");
            return Ok(table);
        }
        if next.step as u128 >= bound {
            return Err(Error::Internal(format!("S-table modulo {modulus} did not stabilize below the bound {bound}")));
        }
        sizes.push(next.size());
        table = next;
    }
}

/// Span modulo the prime `p` of the return vectors of a stabilized table.
pub(crate) fn table_span(table: &STable) -> EchelonModP {
    let mut echelon = EchelonModP::new(table.sigma(), table.modulus());
    for v in table.return_vectors() {
        echelon.insert(v);
        if echelon.is_full() {
            break;
        }
    }
    echelon
}

/// Largest prefix scanned by [`returns_complete`] before giving up.
pub const MAX_RETURN_HORIZON: usize = 1 << 24;

/// Scans prefixes `phi^k(0)` for returns to 0, tracking `|phi^k(0)|`.
pub(crate) struct ReturnScanner {
    stream: PrefixStream,
    horizon: usize,
    expansions: usize,
    scanned: usize,
    last_zero: Option<usize>,
    words: BTreeSet<Word>,
}

impl ReturnScanner {
    pub(crate) fn new(morphism: &Morphism) -> Result<Self> {
        let stream = PrefixStream::new(morphism.clone(), 0)?;
        Ok(ReturnScanner { stream, horizon: 1, expansions: 0, scanned: 0, last_zero: None, words: BTreeSet::new() })
    }

    pub(crate) fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub(crate) fn horizon(&self) -> usize {
        self.horizon
    }

    pub(crate) fn expansions(&self) -> usize {
        self.expansions
    }

    /// Moves from `phi^k(0)` to `phi^{k+1}(0)`; returns the new words found.
    pub(crate) fn expand(&mut self) -> Result<Vec<Word>> {
        let lengths: Vec<usize> = self.stream.morphism().images().iter().map(|w| w.len()).collect();
        let next: usize = self.stream.prefix(self.horizon).iter().map(|&a| lengths[a as usize]).sum();
        if next > MAX_RETURN_HORIZON {
            return Err(Error::ReturnsUnbounded { steps: self.expansions, horizon: self.horizon });
        }
        self.horizon = next;
        self.expansions += 1;
        let prefix = self.stream.prefix(next);
        let mut found = Vec::new();
        for i in self.scanned..next {
            if prefix[i] == 0 {
                if let Some(j) = self.last_zero {
                    let word = Word::from(&prefix[j..i]);
                    if self.words.insert(word.clone()) {
                        found.push(word);
                    }
                }
                self.last_zero = Some(i);
            }
        }
        self.scanned = next;
        Ok(found)
    }
}

/// The working modulus used by [`returns_complete`].
pub const DEFAULT_RETURN_MODULUS: u64 = 2;

/// All returns to the first letter 0 of the fixed point.
pub fn returns_complete(morphism: &Morphism) -> Result<ReturnSet> {
    returns_complete_with_modulus(morphism, DEFAULT_RETURN_MODULUS)
}

/// [`returns_complete`] with an explicit prime working modulus.
pub fn returns_complete_with_modulus(morphism: &Morphism, modulus: u64) -> Result<ReturnSet> {
    if !is_prime(modulus) {
        return Err(Error::NotPrime(modulus));
    }
    if !morphism.is_prolongable(0) {
        return Err(Error::NotProlongable(0));
    }
    if !is_recurrent(morphism, 0)?.recurrent {
        return Err(Error::NotRecurrent);
    }
    let sigma = morphism.sigma();
    let table = s_table_fixpoint(morphism, modulus)?;
    let target = table_span(&table);

    let mut scanner = ReturnScanner::new(morphism)?;
    let mut span = EchelonModP::new(sigma, modulus);
    // horizon at which the return set last changed
    let mut changed_at = scanner.horizon();
    loop {
        let found = scanner.expand()?;
        for word in &found {
            let v = ParikhVector::of(word, sigma)?.reduce(modulus);
            if !target.contains(&v) {
                return Err(Error::Internal(format!(
                    "return {word} lies outside the span derived from the S-table modulo {modulus}"
                )));
            }
            span.insert(v);
        }
        if !found.is_empty() {
            changed_at = scanner.horizon();
            continue;
        }
        let settled = scanner.horizon() >= changed_at.saturating_mul(2);
        if settled && !scanner.words().is_empty() && span.rank() == target.rank() {
            break;
        }
    }
    let certificate = ReturnCertificate::Stabilized {
        expansions: scanner.expansions(),
        horizon: scanner.horizon(),
        modulus,
        table_step: table.stable_since(),
    };
    ReturnSet::new(Word::new(vec![0]), scanner.words().clone(), sigma, Completeness::Certified, certificate)
}

/// Pieces of `phi(a) = x_a 0 v_{a,0} 0 ... 0 v_{a,k-1} 0 y_a` with `x_a`,
/// `y_a` and the `v_{a,i}` free of 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageDecomposition {
    pub head: Word,
    pub inner: Vec<Word>,
    pub tail: Word,
}

impl ImageDecomposition {
    pub fn of(image: &[Letter]) -> Option<Self> {
        let zeros: Vec<usize> = image.iter().enumerate().filter(|(_, &a)| a == 0).map(|(i, _)| i).collect();
        let (&first, &last) = (zeros.first()?, zeros.last()?);
        let inner = zeros.windows(2).map(|p| Word::from(&image[p[0] + 1..p[1]])).collect();
        Some(ImageDecomposition { head: Word::from(&image[..first]), inner, tail: Word::from(&image[last + 1..]) })
    }
}

/// Largest prefix searched when validating a candidate return.
pub const VALIDATION_HORIZON: usize = 1 << 22;

/// Returns to 0 read off the images of the letters.
///
/// Requires every image to contain every letter of the alphabet. Then every
/// block of the factorization `w = phi(w_0) phi(w_1) ...` contains a 0, and a
/// return either sits inside one block (`0 v_{a,i}`) or straddles the
/// boundary of two adjacent blocks (`0 y_a x_b` for an edge `ab` of the
/// letter graph). Every candidate is confirmed by finding it followed by 0 in
/// the fixed point.
pub fn returns_via_images(morphism: &Morphism) -> Result<ReturnSet> {
    let sigma = morphism.sigma();
    for (a, image) in morphism.images().iter().enumerate() {
        let present: BTreeSet<Letter> = image.iter().copied().collect();
        if present.len() != sigma {
            return Err(Error::Precondition(format!(
                "image of letter {a} does not contain every letter; use returns_complete"
            )));
        }
    }
    if !morphism.is_prolongable(0) {
        return Err(Error::NotProlongable(0));
    }
    let pieces: BTreeMap<Letter, ImageDecomposition> = morphism
        .alphabet()
        .letters()
        .map(|a| (a, ImageDecomposition::of(morphism.image(a)).expect("image contains 0")))
        .collect();
    let graph = LetterGraph::of_fixed_point(morphism, 0)?;

    let mut candidates = BTreeSet::new();
    for piece in pieces.values() {
        for v in &piece.inner {
            candidates.insert(Word::from_iter(std::iter::once(0).chain(v.iter().copied())));
        }
    }
    for &(a, b) in graph.edges() {
        let word = std::iter::once(0).chain(pieces[&a].tail.iter().copied()).chain(pieces[&b].head.iter().copied());
        candidates.insert(Word::from_iter(word));
    }

    let mut stream = PrefixStream::new(morphism.clone(), 0)?;
    let mut horizon = 1024usize;
    let mut pending: Vec<Word> = candidates.iter().cloned().collect();
    let mut confirmed = BTreeSet::new();
    loop {
        let prefix = stream.prefix(horizon);
        pending.retain(|candidate| {
            let mut pattern = candidate.to_vec();
            pattern.push(0);
            if occurrences(prefix, &pattern).is_empty() {
                true
            } else {
                confirmed.insert(candidate.clone());
                false
            }
        });
        if pending.is_empty() || horizon >= VALIDATION_HORIZON {
            break;
        }
        horizon = (horizon * 4).min(VALIDATION_HORIZON);
    }
    if !pending.is_empty() {
        return Err(Error::Internal(format!(
            "{} candidate return(s) not found within {horizon} symbols",
            pending.len()
        )));
    }
    ReturnSet::new(
        Word::new(vec![0]),
        confirmed,
        sigma,
        Completeness::Certified,
        ReturnCertificate::BlockDecomposition { edges: graph.edges().len(), horizon },
    )
}
