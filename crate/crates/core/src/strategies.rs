//! Searching for an alphabet ordering that optimizes a factorization
//! statistic.
//!
//! Three searches are provided:
//!
//! * [`exhaustive_search`] evaluates all `sigma!` orderings (small
//!   alphabets only) and is exact.
//! * [`greedy_ordering`] fixes one rank at a time, lowest first. At each
//!   step every unassigned symbol is tried in the next rank, with the
//!   remaining symbols appended in ascending byte order to complete the
//!   ordering; the best completed candidate wins, ties going to the
//!   smaller byte.
//! * [`greedy_backtracking_ordering`] runs the greedy, then revisits its
//!   choices depth-first, most recent first, trying the next-best symbol
//!   at each rank and re-running the greedy below it, until an evaluation
//!   budget is used up.
//!
//! Candidates are compared on the objective's target first and on the
//! other statistic second, both in the objective's direction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::{Alphabet, AlphabetOrdering, ParikhVector};
use crate::error::{Error, Result};
use crate::lyndon::{duval_factorize, factorize_unchecked, FactorStats};

/// Largest alphabet whose orderings can be counted in a `u64`.
const MAX_EXHAUSTIVE_SIGMA: usize = 20;

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    FactorCount,
    LongestFactor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Minimize => "minimize",
            Direction::Maximize => "maximize",
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" | "minimize" => Ok(Direction::Minimize),
            "max" | "maximize" => Ok(Direction::Maximize),
            _ => Err(Error::Usage(format!("unknown direction {s:?}, expected min or max"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Objective {
    pub target: Target,
    pub direction: Direction,
}

impl Objective {
    pub const fn new(target: Target, direction: Direction) -> Self {
        Objective { target, direction }
    }

    pub const ALL: [Objective; 4] = [
        Objective::new(Target::FactorCount, Direction::Minimize),
        Objective::new(Target::FactorCount, Direction::Maximize),
        Objective::new(Target::LongestFactor, Direction::Minimize),
        Objective::new(Target::LongestFactor, Direction::Maximize),
    ];

    /// The value being optimized.
    pub fn value(&self, s: &FactorStats) -> usize {
        match self.target {
            Target::FactorCount => s.k,
            Target::LongestFactor => s.m,
        }
    }

    fn key(&self, s: &FactorStats) -> (usize, usize) {
        match self.target {
            Target::FactorCount => (s.k, s.m),
            Target::LongestFactor => (s.m, s.k),
        }
    }

    /// `Greater` when `a` is preferred over `b`.
    pub fn preference(&self, a: &FactorStats, b: &FactorStats) -> Ordering {
        let ord = self.key(a).cmp(&self.key(b));
        match self.direction {
            Direction::Maximize => ord,
            Direction::Minimize => ord.reverse(),
        }
    }

    pub fn is_better(&self, a: &FactorStats, b: &FactorStats) -> bool {
        self.preference(a, b) == Ordering::Greater
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Minimize => "min",
            Direction::Maximize => "max",
        };
        let target = match self.target {
            Target::FactorCount => "k",
            Target::LongestFactor => "m",
        };
        write!(f, "{dir}-{target}")
    }
}

impl FromStr for Objective {
    type Err = Error;

    /// Parses `{min,max}-{k,m}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("unknown objective {s:?}, expected {{min,max}}-{{k,m}}"));
        let (dir, target) = s.split_once('-').ok_or_else(bad)?;
        let direction = dir.parse().map_err(|_| bad())?;
        let target = match target {
            "k" => Target::FactorCount,
            "m" => Target::LongestFactor,
            _ => return Err(bad()),
        };
        Ok(Objective { target, direction })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Identity,
    MostFrequentFirst,
    LeastFrequentFirst,
    Greedy,
    GreedyBacktracking,
    Exhaustive,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Identity => "identity",
            Strategy::MostFrequentFirst => "mfs",
            Strategy::LeastFrequentFirst => "lfs",
            Strategy::Greedy => "greedy",
            Strategy::GreedyBacktracking => "greedy-bt",
            Strategy::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identity" => Strategy::Identity,
            "mfs" => Strategy::MostFrequentFirst,
            "lfs" => Strategy::LeastFrequentFirst,
            "greedy" => Strategy::Greedy,
            "greedy-bt" => Strategy::GreedyBacktracking,
            "exhaustive" => Strategy::Exhaustive,
            _ => {
                return Err(Error::Usage(format!(
                    "unknown strategy {s:?}, expected identity, mfs, lfs, greedy, greedy-bt or exhaustive"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub strategy: Strategy,
    pub objective: Objective,
    pub ordering: AlphabetOrdering,
    pub stats: FactorStats,
    /// Orderings whose factorization was computed.
    pub evaluations: u64,
    /// Set only by exhaustive search.
    pub optimal: bool,
}

/// JSON form of a [`SearchResult`].
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub strategy: String,
    pub objective: String,
    pub perm: Vec<u8>,
    pub k: usize,
    pub m: usize,
    pub evaluations: u64,
    pub optimal: bool,
}

impl From<&SearchResult> for SearchReport {
    fn from(r: &SearchResult) -> Self {
        SearchReport {
            strategy: r.strategy.to_string(),
            objective: r.objective.to_string(),
            perm: r.ordering.perm().to_vec(),
            k: r.stats.k,
            m: r.stats.m,
            evaluations: r.evaluations,
            optimal: r.optimal,
        }
    }
}

/// Factor count and longest factor of `text` under `ordering`.
pub fn evaluate(text: &[u8], ordering: &AlphabetOrdering) -> Result<FactorStats> {
    Ok(duval_factorize(text, ordering)?.stats())
}

/// Runs `strategy` on `text`. `budget` is only used by greedy-bt and
/// `exhaustive_limit` only by exhaustive search.
pub fn run_strategy(
    text: &[u8],
    strategy: Strategy,
    objective: Objective,
    budget: Option<usize>,
    exhaustive_limit: usize,
) -> Result<SearchResult> {
    let alphabet = Alphabet::detect(text)?;
    let fixed = |ordering: AlphabetOrdering| -> Result<SearchResult> {
        let stats = evaluate(text, &ordering)?;
        Ok(SearchResult {
            strategy,
            objective,
            ordering,
            stats,
            evaluations: 1,
            optimal: false,
        })
    };
    match strategy {
        Strategy::Identity => fixed(AlphabetOrdering::identity(&alphabet)),
        Strategy::MostFrequentFirst => {
            let p = ParikhVector::new(text, &alphabet)?;
            fixed(AlphabetOrdering::most_frequent_first(&p))
        }
        Strategy::LeastFrequentFirst => {
            let p = ParikhVector::new(text, &alphabet)?;
            fixed(AlphabetOrdering::least_frequent_first(&p))
        }
        Strategy::Greedy => greedy_ordering(text, objective),
        Strategy::GreedyBacktracking => {
            let budget = budget.unwrap_or(default_backtracking_budget(alphabet.sigma()));
            greedy_backtracking_ordering(text, objective, budget)
        }
        Strategy::Exhaustive => exhaustive_search(text, objective, exhaustive_limit),
    }
}

/// Default extra evaluations for greedy-bt: ten per symbol.
pub fn default_backtracking_budget(sigma: usize) -> usize {
    10 * sigma
}

/// Best ordering over all `sigma!` candidates.
///
/// Equal candidates resolve to the lexicographically smallest `perm`.
/// Candidates are evaluated on the current rayon pool; the result does not
/// depend on the number of threads.
pub fn exhaustive_search(text: &[u8], objective: Objective, limit_sigma: usize) -> Result<SearchResult> {
    let alphabet = Alphabet::detect(text)?;
    let sigma = alphabet.sigma();
    if sigma > limit_sigma || sigma > MAX_EXHAUSTIVE_SIGMA {
        return Err(Error::AlphabetTooLarge {
            sigma,
            limit: limit_sigma.min(MAX_EXHAUSTIVE_SIGMA),
        });
    }
    let total: u64 = (1..=sigma as u64).product();
    let symbols = alphabet.symbols();

    let (stats, index) = (0..total)
        .into_par_iter()
        .map(|index| {
            let ordering = nth_ordering(&alphabet, symbols, index);
            (factorize_unchecked(text, &ordering).stats(), index)
        })
        .reduce_with(|a, b| match objective.preference(&a.0, &b.0) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("at least one ordering");

    Ok(SearchResult {
        strategy: Strategy::Exhaustive,
        objective,
        ordering: nth_ordering(&alphabet, symbols, index),
        stats,
        evaluations: total,
        optimal: true,
    })
}

/// The `index`-th permutation of `symbols` in lexicographic order
/// (factorial number system).
fn nth_ordering(alphabet: &Alphabet, symbols: &[u8], mut index: u64) -> AlphabetOrdering {
    let mut pool = symbols.to_vec();
    let mut perm = Vec::with_capacity(pool.len());
    let mut radix: u64 = (1..pool.len() as u64).product();
    while !pool.is_empty() {
        let digit = (index / radix) as usize;
        index %= radix;
        perm.push(pool.remove(digit));
        if !pool.is_empty() {
            radix /= pool.len() as u64;
        }
    }
    AlphabetOrdering::from_sequence(alphabet, &perm).expect("permutation of the alphabet")
}

#[derive(Debug, Clone)]
struct Candidate {
    perm: Vec<u8>,
    stats: FactorStats,
}

struct Frame {
    /// Number of ranks fixed before this choice.
    depth: usize,
    /// Best first.
    children: Vec<Candidate>,
    next: usize,
}

struct Searcher<'a> {
    text: &'a [u8],
    alphabet: Alphabet,
    objective: Objective,
    evaluations: u64,
}

impl<'a> Searcher<'a> {
    fn new(text: &'a [u8], objective: Objective) -> Result<Self> {
        Ok(Searcher {
            alphabet: Alphabet::detect(text)?,
            text,
            objective,
            evaluations: 0,
        })
    }

    fn evaluate(&mut self, perm: &[u8]) -> FactorStats {
        self.evaluations += 1;
        let ordering = AlphabetOrdering::from_sequence(&self.alphabet, perm).expect("permutation of the alphabet");
        factorize_unchecked(self.text, &ordering).stats()
    }

    /// Tries each symbol of `remaining` (ascending) at rank `prefix.len()`.
    fn expand(&mut self, prefix: &[u8], remaining: &[u8]) -> Vec<Candidate> {
        let mut children: Vec<Candidate> = remaining
            .iter()
            .map(|&c| {
                let mut perm = Vec::with_capacity(prefix.len() + remaining.len());
                perm.extend_from_slice(prefix);
                perm.push(c);
                perm.extend(remaining.iter().copied().filter(|&r| r != c));
                let stats = self.evaluate(&perm);
                Candidate { perm, stats }
            })
            .collect();
        // stable: equal candidates keep ascending symbol order
        let objective = self.objective;
        children.sort_by(|a, b| objective.preference(&b.stats, &a.stats));
        children
    }

    /// Plain greedy. Returns the chosen candidate and the decision frames,
    /// each positioned after its greedy choice.
    fn greedy(&mut self) -> (Candidate, Vec<Frame>) {
        let symbols = self.alphabet.symbols().to_vec();
        if symbols.len() == 1 {
            let stats = self.evaluate(&symbols);
            return (Candidate { perm: symbols, stats }, Vec::new());
        }
        let mut frames = Vec::new();
        let mut depth = 0;
        let mut current: Vec<u8> = symbols;
        loop {
            let children = self.expand(&current[..depth], &current[depth..]);
            current = children[0].perm.clone();
            frames.push(Frame {
                depth,
                children,
                next: 1,
            });
            depth += 1;
            if current.len() - depth < 2 {
                let best = frames.last().unwrap().children[0].clone();
                return (best, frames);
            }
        }
    }

    fn result(&self, strategy: Strategy, best: Candidate) -> SearchResult {
        SearchResult {
            strategy,
            objective: self.objective,
            ordering: AlphabetOrdering::from_sequence(&self.alphabet, &best.perm).expect("permutation of the alphabet"),
            stats: best.stats,
            evaluations: self.evaluations,
            optimal: false,
        }
    }
}

/// Greedy rank-by-rank construction; see the module docs.
pub fn greedy_ordering(text: &[u8], objective: Objective) -> Result<SearchResult> {
    let mut searcher = Searcher::new(text, objective)?;
    let (best, _) = searcher.greedy();
    Ok(searcher.result(Strategy::Greedy, best))
}

/// Greedy followed by depth-first backtracking with at most `budget`
/// additional evaluations. Never worse than [`greedy_ordering`].
pub fn greedy_backtracking_ordering(text: &[u8], objective: Objective, budget: usize) -> Result<SearchResult> {
    let mut searcher = Searcher::new(text, objective)?;
    let (mut best, mut stack) = searcher.greedy();
    let base = searcher.evaluations;

    while let Some(frame) = stack.last_mut() {
        if frame.next >= frame.children.len() {
            stack.pop();
            continue;
        }
        let child = frame.children[frame.next].clone();
        frame.next += 1;
        let depth = frame.depth + 1;
        let remaining = child.perm.len() - depth;
        if remaining < 2 {
            // complete ordering, evaluated when its parent was expanded
            continue;
        }
        let spent = (searcher.evaluations - base) as usize;
        if spent + remaining > budget {
            break;
        }
        let children = searcher.expand(&child.perm[..depth], &child.perm[depth..]);
        if objective.is_better(&children[0].stats, &best.stats) {
            best = children[0].clone();
        }
        stack.push(Frame {
            depth,
            children,
            next: 0,
        });
    }

    Ok(searcher.result(Strategy::GreedyBacktracking, best))
}
