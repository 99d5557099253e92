//! Alphabets, alphabet orderings and symbol frequency heuristics.
//!
//! Symbols are raw bytes. An [`Alphabet`] holds exactly the bytes that occur
//! in a text; an [`AlphabetOrdering`] assigns each of them a rank
//! `0..sigma`, lowest first. Comparing two texts under an ordering is the
//! same as comparing their [`remap_text`] images in native byte order.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The distinct bytes of a text, in ascending native order.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    present: [bool; 256],
}

impl Alphabet {
    /// Builds an alphabet from an explicit symbol list, which must be
    /// non-empty and strictly increasing.
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() || symbols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAlphabet);
        }
        let mut present = [false; 256];
        for &s in &symbols {
            present[s as usize] = true;
        }
        Ok(Alphabet { symbols, present })
    }

    /// The ascending-sorted distinct bytes of `text`.
    pub fn detect(text: &[u8]) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut present = [false; 256];
        for &b in text {
            present[b as usize] = true;
        }
        let symbols = (0..=255u8).filter(|&b| present[b as usize]).collect();
        Ok(Alphabet { symbols, present })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn contains(&self, symbol: u8) -> bool {
        self.present[symbol as usize]
    }

    /// First byte of `text` that is not in the alphabet, if any.
    pub fn first_foreign(&self, text: &[u8]) -> Option<u8> {
        text.iter().copied().find(|&b| !self.contains(b))
    }

    pub(crate) fn check_text(&self, text: &[u8]) -> Result<()> {
        match self.first_foreign(text) {
            Some(b) => Err(Error::SymbolOutsideAlphabet(b)),
            None => Ok(()),
        }
    }

    /// Index of `symbol` within `symbols()`.
    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alphabet")
            .field("symbols", &DisplaySymbols(&self.symbols))
            .finish()
    }
}

/// A total order over the symbols of an alphabet.
///
/// `perm()[i]` is the symbol of rank `i`; `rank(perm()[i]) == Some(i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphabetOrdering {
    alphabet: Alphabet,
    perm: Vec<u8>,
    ranks: [u8; 256],
}

impl AlphabetOrdering {
    /// The native byte order restricted to `alphabet`.
    pub fn identity(alphabet: &Alphabet) -> Self {
        Self::build(alphabet.clone(), alphabet.symbols.clone())
    }

    /// Orders `alphabet` so that `seq[0] < seq[1] < ...`.
    pub fn from_sequence(alphabet: &Alphabet, seq: &[u8]) -> Result<Self> {
        if seq.len() != alphabet.sigma() {
            return Err(Error::NotAPermutation);
        }
        let mut seen = [false; 256];
        for &s in seq {
            if !alphabet.contains(s) || seen[s as usize] {
                return Err(Error::NotAPermutation);
            }
            seen[s as usize] = true;
        }
        Ok(Self::build(alphabet.clone(), seq.to_vec()))
    }

    /// A uniformly random ordering, fully determined by `seed`.
    ///
    /// The generator is ChaCha8 seeded with `seed_from_u64(seed)`. The
    /// shuffle is Durstenfeld's Fisher-Yates over the ascending symbol
    /// list: for `i` from `sigma - 1` down to `1`, swap position `i` with a
    /// position `j` drawn as `gen_range(0..=i)` over `u32`. Changing either
    /// choice changes every published baseline.
    pub fn random(alphabet: &Alphabet, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm = alphabet.symbols.clone();
        for i in (1..perm.len()).rev() {
            let j = rng.gen_range(0..=i as u32) as usize;
            perm.swap(i, j);
        }
        Self::build(alphabet.clone(), perm)
    }

    /// Most frequent symbol first; equal counts keep ascending byte order.
    pub fn most_frequent_first(parikh: &ParikhVector) -> Self {
        let mut idx: Vec<usize> = (0..parikh.counts.len()).collect();
        idx.sort_by(|&a, &b| parikh.counts[b].cmp(&parikh.counts[a]).then(a.cmp(&b)));
        parikh.ordering_from_indices(&idx)
    }

    /// Least frequent symbol first; equal counts keep ascending byte order.
    pub fn least_frequent_first(parikh: &ParikhVector) -> Self {
        let mut idx: Vec<usize> = (0..parikh.counts.len()).collect();
        idx.sort_by(|&a, &b| parikh.counts[a].cmp(&parikh.counts[b]).then(a.cmp(&b)));
        parikh.ordering_from_indices(&idx)
    }

    fn build(alphabet: Alphabet, perm: Vec<u8>) -> Self {
        let mut ranks = [0u8; 256];
        for (r, &s) in perm.iter().enumerate() {
            ranks[s as usize] = r as u8;
        }
        AlphabetOrdering {
            alphabet,
            perm,
            ranks,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn sigma(&self) -> usize {
        self.perm.len()
    }

    pub fn rank(&self, symbol: u8) -> Option<u8> {
        self.alphabet
            .contains(symbol)
            .then(|| self.ranks[symbol as usize])
    }

    /// Rank lookup without the membership check. Bytes outside the
    /// alphabet map to 0.
    #[inline]
    pub(crate) fn rank_unchecked(&self, symbol: u8) -> u8 {
        self.ranks[symbol as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.perm == self.alphabet.symbols
    }
}

impl fmt::Debug for AlphabetOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("AlphabetOrdering")
            .field(&DisplaySymbols(&self.perm))
            .finish()
    }
}

struct DisplaySymbols<'a>(&'a [u8]);

impl fmt::Debug for DisplaySymbols<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for &b in self.0 {
            if b.is_ascii_graphic() {
                list.entry(&(b as char));
            } else {
                list.entry(&b);
            }
        }
        list.finish()
    }
}

/// Per-symbol occurrence counts, aligned with `alphabet.symbols()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector {
    alphabet: Alphabet,
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn new(text: &[u8], alphabet: &Alphabet) -> Result<Self> {
        let mut table = [0u64; 256];
        for &b in text {
            table[b as usize] += 1;
        }
        if let Some(b) = (0..=255u8).find(|&b| table[b as usize] > 0 && !alphabet.contains(b)) {
            return Err(Error::SymbolOutsideAlphabet(b));
        }
        let counts = alphabet.symbols.iter().map(|&s| table[s as usize]).collect();
        Ok(ParikhVector {
            alphabet: alphabet.clone(),
            counts,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn ordering_from_indices(&self, idx: &[usize]) -> AlphabetOrdering {
        let perm = idx.iter().map(|&i| self.alphabet.symbols[i]).collect();
        AlphabetOrdering::build(self.alphabet.clone(), perm)
    }
}

/// Replaces every byte by its rank under `ordering`.
///
/// Factorizing the result in native byte order gives the same boundaries
/// as factorizing `text` under `ordering`.
pub fn remap_text(text: &[u8], ordering: &AlphabetOrdering) -> Result<Vec<u8>> {
    ordering.alphabet.check_text(text)?;
    Ok(text.iter().map(|&b| ordering.rank_unchecked(b)).collect())
}
