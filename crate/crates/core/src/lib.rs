//! Lyndon factorization of byte strings under alphabet reorderings.
//!
//! * [`alphabet`]: alphabets, orderings, symbol counts, frequency heuristics.
//! * [`lyndon`]: permuted comparison, Lyndon-word test, Duval factorization.
//! * [`strategies`]: greedy, greedy with backtracking, exhaustive search.
//! * [`baseline`]: random-ordering baselines, quartile summaries, verdicts.
//! * [`corpus`]: loading texts and permutation files.

pub mod alphabet;
pub mod baseline;
pub mod corpus;
pub mod error;
pub mod lyndon;
pub mod strategies;

pub use alphabet::{remap_text, Alphabet, AlphabetOrdering, ParikhVector};
pub use error::{Error, Result};
pub use lyndon::{compare, duval_factorize, factorize_native, is_lyndon, FactorStats, Factorization};
