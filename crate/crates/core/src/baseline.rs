//! Randomized-ordering baselines, five-number summaries and effectiveness
//! verdicts.
//!
//! A baseline samples uniform random orderings with seeds `base_seed + i`
//! and records `(k, m)` for each. A maximizing method is effective when its
//! value is strictly above the baseline's third quartile; a minimizing
//! method when strictly below the first quartile.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, AlphabetOrdering};
use crate::error::{Error, Result};
use crate::lyndon::{factorize_unchecked, FactorStats};
use crate::strategies::Direction;

pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub sample: usize,
    pub seed: u64,
    pub k: usize,
    pub m: usize,
    pub m_pct: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineDistribution {
    pub base_seed: u64,
    pub samples: Vec<Sample>,
}

/// Which per-sample quantity a summary describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "k")]
    FactorCount,
    #[serde(rename = "m_pct")]
    LongestPct,
}

impl Metric {
    pub fn of(&self, stats: &FactorStats) -> f64 {
        match self {
            Metric::FactorCount => stats.k as f64,
            Metric::LongestPct => stats.m_pct(),
        }
    }

    fn of_sample(&self, s: &Sample) -> f64 {
        match self {
            Metric::FactorCount => s.k as f64,
            Metric::LongestPct => s.m_pct,
        }
    }
}

impl BaselineDistribution {
    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn values(&self, metric: Metric) -> Vec<f64> {
        self.samples.iter().map(|s| metric.of_sample(s)).collect()
    }

    pub fn summary(&self, metric: Metric) -> Result<MetricSummary> {
        Ok(MetricSummary {
            metric,
            summary: summarize(&self.values(metric))?,
        })
    }

    /// Writes the `sample,seed,k,m,m_pct` CSV.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let to_io = |e: csv::Error| Error::io("<csv>", e.into());
        w.write_record(["sample", "seed", "k", "m", "m_pct"]).map_err(to_io)?;
        for s in &self.samples {
            w.write_record([
                s.sample.to_string(),
                s.seed.to_string(),
                s.k.to_string(),
                s.m.to_string(),
                format!("{:.2}", s.m_pct),
            ])
            .map_err(to_io)?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii csv")
    }
}

/// Evaluates `n_samples` random orderings of `text`'s alphabet.
///
/// Sample `i` uses seed `base_seed + i` (wrapping), so the result does not
/// depend on evaluation order or the size of the rayon pool.
pub fn sample_baseline(text: &[u8], n_samples: usize, base_seed: u64) -> Result<BaselineDistribution> {
    if n_samples == 0 {
        return Err(Error::Usage("sample count must be at least 1".into()));
    }
    let alphabet = Alphabet::detect(text)?;
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let seed = base_seed.wrapping_add(i as u64);
            let ordering = AlphabetOrdering::random(&alphabet, seed);
            let stats = factorize_unchecked(text, &ordering).stats();
            Sample {
                sample: i,
                seed,
                k: stats.k,
                m: stats.m,
                m_pct: stats.m_pct(),
            }
        })
        .collect();
    Ok(BaselineDistribution { base_seed, samples })
}

/// Five-number summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// JSON form of a summary: `{"metric": "k"|"m_pct", "min": ..., ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub metric: Metric,
    #[serde(flatten)]
    pub summary: Summary,
}

/// Min, max, and quartiles by linear interpolation at `(n - 1) * p` on the
/// sorted values.
pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Summary {
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
    })
}

fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = (sorted.len() - 1) as f64 * p;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        (sorted[lo] + (sorted[hi] - sorted[lo]) * frac).clamp(sorted[lo], sorted[hi])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    AboveQ3,
    BelowQ1,
    Inside,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub effective: bool,
    pub side: Side,
    pub candidate: f64,
    pub direction: Direction,
    pub summary: Summary,
}

/// JSON form of a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub candidate: f64,
    pub direction: &'static str,
    pub side: Side,
    pub effective: bool,
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> Self {
        VerdictReport {
            candidate: v.candidate,
            direction: v.direction.as_str(),
            side: v.side,
            effective: v.effective,
        }
    }
}

/// Maximizing: effective iff `candidate > q3`. Minimizing: effective iff
/// `candidate < q1`.
pub fn effectiveness_verdict(candidate: f64, summary: &Summary, direction: Direction) -> Verdict {
    let side = match direction {
        Direction::Maximize if candidate > summary.q3 => Side::AboveQ3,
        Direction::Minimize if candidate < summary.q1 => Side::BelowQ1,
        _ => Side::Inside,
    };
    Verdict {
        effective: side != Side::Inside,
        side,
        candidate,
        direction,
        summary: *summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna_row() -> Summary {
        Summary {
            min: 17.0,
            q1: 20.0,
            median: 23.0,
            q3: 24.0,
            max: 35.0,
        }
    }

    #[test]
    fn summarize_examples() {
        let s = summarize(&[5.0]).unwrap();
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (5.0, 5.0, 5.0, 5.0, 5.0));

        let s = summarize(&[5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (1.0, 2.0, 3.0, 4.0, 5.0));

        let s = summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));

        assert!(matches!(summarize(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn verdicts_on_dna_row() {
        let s = dna_row();
        let v = effectiveness_verdict(54.0, &s, Direction::Maximize);
        assert!(v.effective);
        assert_eq!(v.side, Side::AboveQ3);

        let v = effectiveness_verdict(24.0, &s, Direction::Maximize);
        assert!(!v.effective);
        assert_eq!(v.side, Side::Inside);

        let v = effectiveness_verdict(15.0, &s, Direction::Minimize);
        assert!(v.effective);
        assert_eq!(v.side, Side::BelowQ1);

        for d in [Direction::Minimize, Direction::Maximize] {
            assert_eq!(effectiveness_verdict(23.0, &s, d).side, Side::Inside);
        }
        assert_eq!(effectiveness_verdict(20.0, &s, Direction::Minimize).side, Side::Inside);
    }

    #[test]
    fn verdict_json() {
        let v = effectiveness_verdict(54.0, &dna_row(), Direction::Maximize);
        let json = serde_json::to_string(&VerdictReport::from(&v)).unwrap();
        assert_eq!(json, r#"{"candidate":54.0,"direction":"maximize","side":"above_q3","effective":true}"#);
    }

    #[test]
    fn summary_json_roundtrip() {
        let ms = MetricSummary {
            metric: Metric::LongestPct,
            summary: dna_row(),
        };
        let json = serde_json::to_string(&ms).unwrap();
        assert_eq!(json, r#"{"metric":"m_pct","min":17.0,"q1":20.0,"median":23.0,"q3":24.0,"max":35.0}"#);
        assert_eq!(serde_json::from_str::<MetricSummary>(&json).unwrap(), ms);
    }

    #[test]
    fn single_symbol_baseline() {
        let d = sample_baseline(b"aaaa", 1, 9).unwrap();
        assert_eq!(d.n_samples(), 1);
        assert_eq!((d.samples[0].k, d.samples[0].m, d.samples[0].seed), (4, 1, 9));
    }

    #[test]
    fn baseline_seeds_and_csv() {
        let d = sample_baseline(b"alohomora", 3, u64::MAX).unwrap();
        let seeds: Vec<u64> = d.samples.iter().map(|s| s.seed).collect();
        assert_eq!(seeds, [u64::MAX, 0, 1]);
        let csv = d.csv_string();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("sample,seed,k,m,m_pct"));
        assert_eq!(lines.count(), 3);
        assert!(sample_baseline(b"ab", 0, 0).is_err());
    }
}
