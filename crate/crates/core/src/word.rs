//! Finite words, morphisms and their fixed points.
//!
//! Letters are small integers `0..sigma`. A [`Morphism`] is given by the
//! images of its letters; when it is prolongable on a letter `a`, i.e.
//! `phi(a) = a s` with `s` non-empty, it has an infinite fixed point starting
//! with `a`, which is produced lazily by [`PrefixStream`].

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Deref};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zlinalg::IntMatrix;

pub type Letter = u16;

/// The alphabet `{0, 1, ..., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if size > Letter::MAX as usize + 1 {
            return Err(Error::Unsupported(format!("alphabet of size {size}")));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, letter: Letter) -> bool {
        (letter as usize) < self.size
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.size).map(|a| a as Letter)
    }

    pub fn check(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| !self.contains(a)) {
            Some(&a) => Err(Error::LetterOutOfRange { letter: a as u64, sigma: self.size }),
            None => Ok(()),
        }
    }
}

/// A finite word.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(symbols: Vec<Letter>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Letter> {
        self.0
    }

    /// Encodes the word for an alphabet of size `sigma`: plain digits when
    /// every letter of the alphabet is a single digit, comma-separated
    /// integers otherwise.
    pub fn encode(&self, sigma: usize) -> String {
        if sigma <= 10 {
            self.0.iter().map(|a| char::from(b'0' + *a as u8)).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            parts.join(",")
        }
    }

    /// Inverse of [`Word::encode`]. For `sigma <= 10` a comma-separated
    /// form is accepted as well.
    pub fn decode(text: &str, sigma: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let symbols = if sigma > 10 || text.contains(',') {
            text.split(',').map(|part| parse_letter(part.trim(), sigma)).collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|c| {
                    let d = c
                        .to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in word {text:?}")))?;
                    parse_letter(&d.to_string(), sigma)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(symbols))
    }
}

pub(crate) fn parse_letter(text: &str, sigma: usize) -> Result<Letter> {
    let value: u64 = text.parse().map_err(|_| Error::Parse(format!("invalid letter {text:?}")))?;
    if value >= sigma as u64 {
        return Err(Error::LetterOutOfRange { letter: value, sigma });
    }
    Ok(value as Letter)
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(symbols: Vec<Letter>) -> Self {
        Word(symbols)
    }
}

impl From<&[Letter]> for Word {
    fn from(symbols: &[Letter]) -> Self {
        Word(symbols.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max = self.0.iter().copied().max().unwrap_or(0) as usize;
        f.write_str(&self.encode(max + 1))
    }
}

// Words travel through reports as their digit string.
impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Letter counts of a finite word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParikhVector(Vec<u64>);

impl ParikhVector {
    pub fn zero(sigma: usize) -> Self {
        ParikhVector(vec![0; sigma])
    }

    /// Counts the letters of `word` over an alphabet of size `sigma`.
    /// Letters outside the alphabet are rejected.
    pub fn of(word: &[Letter], sigma: usize) -> Result<Self> {
        let mut counts = vec![0u64; sigma];
        for &a in word {
            let slot = counts.get_mut(a as usize).ok_or(Error::LetterOutOfRange { letter: a as u64, sigma })?;
            *slot += 1;
        }
        Ok(ParikhVector(counts))
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        ParikhVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn reduce(&self, modulus: u64) -> Vec<u64> {
        self.0.iter().map(|c| c % modulus).collect()
    }

    pub fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl Add for &ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: &ParikhVector) -> ParikhVector {
        assert_eq!(self.dim(), rhs.dim(), "Parikh vectors of different dimensions");
        ParikhVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// `parikh(u)` over an alphabet of size `sigma`.
pub fn parikh(word: &[Letter], sigma: usize) -> Result<ParikhVector> {
    ParikhVector::of(word, sigma)
}

/// A nonerasing morphism on `{0..sigma}`, given by the image of each letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let alphabet = Alphabet::new(images.len())?;
        for (a, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage(a as Letter));
            }
            alphabet.check(image)?;
        }
        Ok(Morphism { alphabet, images })
    }

    /// Convenience constructor from per-letter images given as slices.
    pub fn from_images<I, W>(images: I) -> Result<Self>
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Letter]>,
    {
        Morphism::new(images.into_iter().map(|w| Word::from(w.as_ref())).collect())
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter as usize]
    }

    /// Applies the morphism letter by letter.
    pub fn apply(&self, word: &[Letter]) -> Result<Word> {
        self.alphabet.check(word)?;
        let mut out = Vec::with_capacity(word.len() * 2);
        for &a in word {
            out.extend_from_slice(&self.images[a as usize]);
        }
        Ok(Word(out))
    }

    /// The `sigma x sigma` matrix whose entry `(i, j)` counts letter `i`
    /// in the image of letter `j`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let n = self.sigma();
        let mut m = IntMatrix::zeros(n, n);
        for (j, image) in self.images.iter().enumerate() {
            for &i in image.iter() {
                *m.get_mut(i as usize, j) += 1;
            }
        }
        m
    }

    /// Same counts as [`Morphism::incidence_matrix`] in machine integers,
    /// column-major: `columns[j][i] = |phi(j)|_i`.
    pub(crate) fn image_counts(&self) -> Vec<Vec<u64>> {
        self.images
            .iter()
            .map(|image| {
                let mut counts = vec![0u64; self.sigma()];
                for &a in image.iter() {
                    counts[a as usize] += 1;
                }
                counts
            })
            .collect()
    }

    pub fn is_prolongable(&self, letter: Letter) -> bool {
        if !self.alphabet.contains(letter) {
            return false;
        }
        let image = self.image(letter);
        image.len() >= 2 && image[0] == letter
    }

    /// `self ∘ other`, i.e. the morphism `a ↦ self(other(a))`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.sigma() != other.sigma() {
            return Err(Error::DimensionMismatch { expected: self.sigma(), found: other.sigma() });
        }
        let images = other.images.iter().map(|image| self.apply(image)).collect::<Result<Vec<_>>>()?;
        Morphism::new(images)
    }

    /// The first `n` symbols of the fixed point starting with `letter`.
    pub fn prefix(&self, letter: Letter, n: usize) -> Result<Word> {
        let mut stream = PrefixStream::new(self.clone(), letter)?;
        Ok(Word::from(stream.prefix(n)))
    }

    pub fn fixed_point(&self, letter: Letter) -> Result<PrefixStream> {
        PrefixStream::new(self.clone(), letter)
    }

    /// Letters occurring in the image of each letter.
    pub(crate) fn image_letter_sets(&self) -> Vec<BTreeSet<Letter>> {
        self.images.iter().map(|w| w.iter().copied().collect()).collect()
    }
}

/// Lazily expanded fixed point `lim phi^n(start)`.
///
/// The buffer always equals `phi(w[0..expanded))`; growing it appends the
/// image of the next unexpanded symbol, which is the identity
/// `w = a s phi(s) phi^2(s) ...` read one symbol at a time. Reads of buffered
/// positions go through `&self`; growth needs `&mut self`.
#[derive(Debug, Clone)]
pub struct PrefixStream {
    morphism: Morphism,
    start: Letter,
    buffer: Vec<Letter>,
    expanded: usize,
}

impl PrefixStream {
    pub fn new(morphism: Morphism, start: Letter) -> Result<Self> {
        if !morphism.is_prolongable(start) {
            return Err(Error::NotProlongable(start));
        }
        let buffer = morphism.image(start).to_vec();
        Ok(PrefixStream { morphism, start, buffer, expanded: 1 })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn sigma(&self) -> usize {
        self.morphism.sigma()
    }

    /// Grows the buffer until it holds at least `n` symbols.
    pub fn ensure(&mut self, n: usize) {
        while self.buffer.len() < n {
            // expanded < buffer.len() always holds because |phi(start)| >= 2.
            let a = self.buffer[self.expanded];
            self.expanded += 1;
            let image = &self.morphism.images[a as usize];
            self.buffer.extend_from_slice(image);
        }
    }

    /// The first `n` symbols.
    pub fn prefix(&mut self, n: usize) -> &[Letter] {
        self.ensure(n);
        &self.buffer[..n]
    }

    pub fn get(&mut self, i: usize) -> Letter {
        self.ensure(i + 1);
        self.buffer[i]
    }

    /// Everything generated so far.
    pub fn buffered(&self) -> &[Letter] {
        &self.buffer
    }

    /// Iterates over the infinite word from position 0.
    pub fn letters(&mut self) -> Letters<'_> {
        Letters { stream: self, pos: 0 }
    }
}

impl IntoIterator for PrefixStream {
    type Item = Letter;
    type IntoIter = FixedPointLetters;

    fn into_iter(self) -> FixedPointLetters {
        FixedPointLetters { stream: self, pos: 0 }
    }
}

pub struct Letters<'a> {
    stream: &'a mut PrefixStream,
    pos: usize,
}

impl Iterator for Letters<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        let a = self.stream.get(self.pos);
        self.pos += 1;
        Some(a)
    }
}

/// Owning iterator over a fixed point.
#[derive(Debug, Clone)]
pub struct FixedPointLetters {
    stream: PrefixStream,
    pos: usize,
}

impl Iterator for FixedPointLetters {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        let a = self.stream.get(self.pos);
        self.pos += 1;
        Some(a)
    }
}

/// Distinct factors of length `len` observed in `w[0, horizon)`.
pub fn factors(stream: &mut PrefixStream, len: usize, horizon: usize) -> BTreeSet<Word> {
    let prefix = stream.prefix(horizon);
    if len == 0 {
        return BTreeSet::from([Word::empty()]);
    }
    prefix.windows(len).map(Word::from).collect()
}

/// A directed graph on letters; an edge `a -> b` records that `ab` is a
/// factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterGraph {
    sigma: usize,
    edges: BTreeSet<(Letter, Letter)>,
}

impl LetterGraph {
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn edges(&self) -> &BTreeSet<(Letter, Letter)> {
        &self.edges
    }

    /// Graph of the two-letter factors of a finite word.
    pub fn from_word(word: &[Letter], sigma: usize) -> Self {
        let edges = word.windows(2).map(|p| (p[0], p[1])).collect();
        LetterGraph { sigma, edges }
    }

    pub fn has_edge(&self, a: Letter, b: Letter) -> bool {
        self.edges.contains(&(a, b))
    }

    /// The exact graph of the fixed point of `morphism` starting with
    /// `start`, computed by closing the set of two-letter factors under the
    /// morphism instead of scanning a prefix.
    pub fn of_fixed_point(morphism: &Morphism, start: Letter) -> Result<Self> {
        if !morphism.is_prolongable(start) {
            return Err(Error::NotProlongable(start));
        }
        let mut letters: BTreeSet<Letter> = BTreeSet::from([start]);
        let mut edges: BTreeSet<(Letter, Letter)> = BTreeSet::new();
        loop {
            let mut next_letters = BTreeSet::new();
            let mut next_edges = BTreeSet::new();
            for &a in &letters {
                let image = morphism.image(a);
                next_letters.extend(image.iter().copied());
                next_edges.extend(image.windows(2).map(|p| (p[0], p[1])));
            }
            for &(a, b) in &edges {
                let left = *morphism.image(a).last().expect("nonerasing");
                let right = morphism.image(b)[0];
                next_edges.insert((left, right));
            }
            // phi^k(start) is a prefix of phi^{k+1}(start), so both sets grow.
            if next_letters == letters && next_edges == edges {
                break;
            }
            letters = next_letters;
            edges = next_edges;
        }
        Ok(LetterGraph { sigma: morphism.sigma(), edges })
    }
}

/// Graph of two-letter factors observed in `w[0, horizon)`.
pub fn rauzy_graph1(stream: &mut PrefixStream, horizon: usize) -> LetterGraph {
    let sigma = stream.sigma();
    LetterGraph::from_word(stream.prefix(horizon), sigma)
}
