//! Loading corpus files and reading/writing permutation files.
//!
//! Texts are raw bytes with no newline or encoding normalization. A
//! permutation file lists the ordering's symbols as decimal byte values,
//! lowest rank first, separated by whitespace; a JSON array of the same
//! integers is also accepted on input.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::alphabet::{Alphabet, AlphabetOrdering};
use crate::error::{Error, Result};

/// Reads `path`, or only its first `max_bytes` bytes.
pub fn load_text(path: impl AsRef<Path>, max_bytes: Option<u64>) -> Result<Vec<u8>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut text = Vec::new();
    let res = match max_bytes {
        Some(limit) => file.take(limit).read_to_end(&mut text),
        None => {
            let mut file = file;
            file.read_to_end(&mut text)
        }
    };
    res.map_err(|e| Error::io(path, e))?;
    if text.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatasetInfo {
    pub path: String,
    pub n: u64,
    pub sigma: usize,
    /// `n / 2^20`, rounded to the nearest whole number.
    pub size_mb: u64,
}

impl DatasetInfo {
    pub fn new(path: impl AsRef<Path>, text: &[u8]) -> Result<Self> {
        let alphabet = Alphabet::detect(text)?;
        let n = text.len() as u64;
        Ok(DatasetInfo {
            path: path.as_ref().display().to_string(),
            n,
            sigma: alphabet.sigma(),
            size_mb: (n + (1 << 19)) >> 20,
        })
    }
}

/// Parses permutation file contents against `alphabet`.
pub fn parse_permutation(contents: &str, alphabet: &Alphabet) -> Result<AlphabetOrdering> {
    let trimmed = contents.trim_start();
    let values: Vec<u64> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| Error::MalformedPermutation(e.to_string()))?
    } else {
        trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::MalformedPermutation(format!("not a decimal byte value: {tok:?}")))
            })
            .collect::<Result<_>>()?
    };
    let seq = values
        .into_iter()
        .map(|v| u8::try_from(v).map_err(|_| Error::MalformedPermutation(format!("byte value out of range: {v}"))))
        .collect::<Result<Vec<u8>>>()?;
    AlphabetOrdering::from_sequence(alphabet, &seq)
}

pub fn format_permutation(ordering: &AlphabetOrdering) -> String {
    let mut out = ordering
        .perm()
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

pub fn read_permutation(path: impl AsRef<Path>, alphabet: &Alphabet) -> Result<AlphabetOrdering> {
    let path = path.as_ref();
    let contents = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_permutation(&contents, alphabet)
}

pub fn write_permutation(ordering: &AlphabetOrdering, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, format_permutation(ordering)).map_err(|e| Error::io(path, e))
}
