//! Lyndon factorization under an alphabet ordering.

use std::cmp::Ordering;

use serde::Serialize;

use crate::alphabet::AlphabetOrdering;
use crate::error::{Error, Result};

/// The Lyndon factorization of a text, stored as factor end offsets.
///
/// Factor `i` spans `boundaries[i - 1]..boundaries[i]`, with an implicit
/// leading 0. The last boundary equals the text length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    boundaries: Vec<usize>,
    longest: usize,
}

impl Factorization {
    fn from_boundaries(boundaries: Vec<usize>) -> Self {
        let mut prev = 0;
        let mut longest = 0;
        for &b in &boundaries {
            longest = longest.max(b - prev);
            prev = b;
        }
        Factorization {
            boundaries,
            longest,
        }
    }

    /// Text length `n`.
    pub fn text_len(&self) -> usize {
        *self.boundaries.last().expect("factorization of non-empty text")
    }

    /// Number of factors `k`.
    pub fn count(&self) -> usize {
        self.boundaries.len()
    }

    /// Length of the longest factor `m`.
    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Factor spans as `start..end` ranges.
    pub fn spans(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        std::iter::once(0)
            .chain(self.boundaries.iter().copied())
            .zip(self.boundaries.iter().copied())
            .map(|(s, e)| s..e)
    }

    /// The factors as slices of `text`, which must be the factorized text.
    pub fn factors<'t>(&'t self, text: &'t [u8]) -> impl Iterator<Item = &'t [u8]> + 't {
        self.spans().map(move |r| &text[r])
    }

    pub fn stats(&self) -> FactorStats {
        FactorStats::new(self.count(), self.longest(), self.text_len())
    }
}

/// Factor count, longest factor, and the longest factor as a percentage
/// of the text length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FactorStats {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// `100 * m / n` in hundredths of a percent, rounded half up.
    pub m_basis_points: u64,
}

impl FactorStats {
    pub fn new(k: usize, m: usize, n: usize) -> Self {
        let (m64, n64) = (m as u128, n as u128);
        let m_basis_points = ((20_000 * m64 + n64) / (2 * n64)) as u64;
        FactorStats {
            n,
            k,
            m,
            m_basis_points,
        }
    }

    /// Longest factor as a percentage with two decimals, e.g. `74.75`.
    pub fn m_pct(&self) -> f64 {
        self.m_basis_points as f64 / 100.0
    }
}

/// JSON form of a factorization.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub m_pct: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<Vec<usize>>,
}

impl FactorizationReport {
    pub fn new(f: &Factorization, with_boundaries: bool) -> Self {
        let s = f.stats();
        FactorizationReport {
            n: s.n,
            k: s.k,
            m: s.m,
            m_pct: s.m_pct(),
            boundaries: with_boundaries.then(|| f.boundaries().to_vec()),
        }
    }
}

/// Lexicographic comparison of `u` and `v` under `ordering`. A proper
/// prefix compares less.
pub fn compare(u: &[u8], v: &[u8], ordering: &AlphabetOrdering) -> Result<Ordering> {
    ordering.alphabet().check_text(u)?;
    ordering.alphabet().check_text(v)?;
    Ok(compare_unchecked(u, v, ordering))
}

fn compare_unchecked(u: &[u8], v: &[u8], ordering: &AlphabetOrdering) -> Ordering {
    u.iter()
        .map(|&b| ordering.rank_unchecked(b))
        .cmp(v.iter().map(|&b| ordering.rank_unchecked(b)))
}

/// Whether `s` is strictly smaller than each of its proper suffixes.
///
/// Quadratic; meant for checking, not for large inputs.
pub fn is_lyndon(s: &[u8], ordering: &AlphabetOrdering) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    ordering.alphabet().check_text(s)?;
    Ok(is_lyndon_unchecked(s, ordering))
}

fn is_lyndon_unchecked(s: &[u8], ordering: &AlphabetOrdering) -> bool {
    (1..s.len()).all(|i| compare_unchecked(s, &s[i..], ordering) == Ordering::Less)
}

/// Lyndon factorization of `text` under `ordering` (Duval).
///
/// Linear time; the only allocation is the boundary list.
pub fn duval_factorize(text: &[u8], ordering: &AlphabetOrdering) -> Result<Factorization> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    ordering.alphabet().check_text(text)?;
    if ordering.is_identity() {
        return Ok(duval_by(text, |b| b));
    }
    Ok(duval_by(text, |b| ordering.rank_unchecked(b)))
}

/// Lyndon factorization of `text` in native byte order.
///
/// This is the fast path for texts already passed through
/// [`remap_text`](crate::alphabet::remap_text): the result equals
/// `duval_factorize(original, ordering)`.
pub fn factorize_native(text: &[u8]) -> Result<Factorization> {
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(duval_by(text, |b| b))
}

/// Factorization of a text already known to lie within the ordering's
/// alphabet.
pub(crate) fn factorize_unchecked(text: &[u8], ordering: &AlphabetOrdering) -> Factorization {
    duval_by(text, |b| ordering.rank_unchecked(b))
}

#[inline(always)]
fn duval_by<F: Fn(u8) -> u8>(text: &[u8], key: F) -> Factorization {
    let n = text.len();
    let mut boundaries = Vec::new();
    let mut start = 0;
    while start < n {
        // text[start..j] is a prefix of (w)^e w' with w Lyndon, |w| = j - k.
        let mut k = start;
        let mut j = start + 1;
        while j < n {
            let (a, b) = (key(text[k]), key(text[j]));
            if a < b {
                k = start;
            } else if a == b {
                k += 1;
            } else {
                break;
            }
            j += 1;
        }
        let period = j - k;
        while start <= k {
            start += period;
            boundaries.push(start);
        }
    }
    Factorization::from_boundaries(boundaries)
}

pub mod oracle {
    //! Definition-level factorization, for cross-checking [`duval_factorize`].
    //!
    //! [`duval_factorize`]: super::duval_factorize

    use std::cmp::Ordering;

    use super::{compare_unchecked, is_lyndon_unchecked, Factorization};
    use crate::alphabet::AlphabetOrdering;
    use crate::error::{Error, Result};

    /// Repeatedly strips the longest Lyndon prefix of the remaining text.
    ///
    /// Cubic in the text length. Panics if the resulting factors are not
    /// non-increasing, which would contradict uniqueness of the
    /// factorization.
    pub fn oracle_factorize(text: &[u8], ordering: &AlphabetOrdering) -> Result<Factorization> {
        if text.is_empty() {
            return Err(Error::EmptyInput);
        }
        ordering.alphabet().check_text(text)?;
        let mut boundaries = Vec::new();
        let mut start = 0;
        while start < text.len() {
            let rest = &text[start..];
            let len = (1..=rest.len())
                .rev()
                .find(|&l| is_lyndon_unchecked(&rest[..l], ordering))
                .expect("single symbols are Lyndon words");
            start += len;
            boundaries.push(start);
        }
        let f = Factorization::from_boundaries(boundaries);
        let factors: Vec<&[u8]> = f.factors(text).collect();
        for w in factors.windows(2) {
            assert_ne!(
                compare_unchecked(w[0], w[1], ordering),
                Ordering::Less,
                "factors must be non-increasing"
            );
        }
        Ok(f)
    }
}
