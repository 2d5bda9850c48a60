//! Runtime of single randomized runs as the number of strings grows.
//!
//! Each `L` gets a planted corpus with the same seed, so the planted
//! sequences are identical across sizes and the smaller corpora are prefixes
//! of the larger ones. Per-run times are taken one run at a time on the
//! calling thread and summarized by their median.

use std::time::Instant;

use serde::Serialize;

use crate::error::{McsError, Result};
use crate::one_mcs::one_mcs;
use crate::random::{random_mcs, SeedSpec, WeightingMode};
use crate::simgen::{gen_planted, Planted, PlantedSpec};
use crate::types::StringSet;

/// Allowed factor between the observed and the linear-model time ratio.
pub const LINEAR_TOLERANCE: f64 = 2.0;

/// Planted corpus for scaling runs: lengths `n/20, n/10, 3n/20, n/5`
/// (3, 6, 9, 12 at `n = 60`), core alphabet 15, filler alphabet 30.
pub fn scaling_corpus_spec(num_strings: usize, string_length: usize, seed: u64) -> PlantedSpec {
    let n = string_length;
    PlantedSpec {
        string_length: n,
        planted: [n / 20, n / 10, 3 * n / 20, n / 5].map(Planted::Random).to_vec(),
        ..PlantedSpec::four_planted(num_strings, seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub num_strings: usize,
    pub runs: u64,
    pub median_secs: f64,
    pub mean_secs: f64,
    /// Median time divided by that of the previous row, if any.
    pub observed_ratio: Option<f64>,
    /// `L` divided by the previous row's `L`.
    pub expected_ratio: Option<f64>,
}

impl ScalingRow {
    /// True when the observed ratio is within [`LINEAR_TOLERANCE`] of the
    /// expected one, or there is nothing to compare.
    pub fn is_linear(&self) -> bool {
        match (self.observed_ratio, self.expected_ratio) {
            (Some(obs), Some(exp)) => within_factor(obs, exp, LINEAR_TOLERANCE),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub algorithm: String,
    pub string_length: usize,
    pub rows: Vec<ScalingRow>,
}

impl ScalingReport {
    pub fn is_linear(&self) -> bool {
        self.rows.iter().all(ScalingRow::is_linear)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} at n = {}\n", self.algorithm, self.string_length);
        out.push_str(&format!(
            "{:>8} {:>6} {:>14} {:>14} {:>10} {:>10}  {}\n",
            "L", "runs", "median_ms", "mean_ms", "ratio", "expected", "linear"
        ));
        for r in &self.rows {
            let fmt_ratio = |x: Option<f64>| x.map_or_else(|| "-".to_owned(), |v| format!("{v:.2}"));
            out.push_str(&format!(
                "{:>8} {:>6} {:>14.4} {:>14.4} {:>10} {:>10}  {}\n",
                r.num_strings,
                r.runs,
                r.median_secs * 1e3,
                r.mean_secs * 1e3,
                fmt_ratio(r.observed_ratio),
                fmt_ratio(r.expected_ratio),
                if r.is_linear() { "yes" } else { "NO" }
            ));
        }
        out
    }
}

/// `observed` lies in `[expected / factor, expected * factor]`.
pub fn within_factor(observed: f64, expected: f64, factor: f64) -> bool {
    observed >= expected / factor && observed <= expected * factor
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Times `runs` single randomized runs for every `L` in `l_values`.
pub fn measure_scaling(
    l_values: &[usize],
    string_length: usize,
    runs: u64,
    seed: u64,
    mode: WeightingMode,
) -> Result<ScalingReport> {
    let name = match mode {
        WeightingMode::Uniform => "random_mcs (uniform)",
        WeightingMode::FrequencyWeighted => "random_mcs (frequency weighted)",
    };
    measure(name, l_values, string_length, runs, seed, |set, i| {
        random_mcs(set, SeedSpec::new(seed, i), mode, None).map(drop)
    })
}

/// Same measurement for the deterministic single-MCS search.
pub fn measure_one_mcs_scaling(
    l_values: &[usize],
    string_length: usize,
    runs: u64,
    seed: u64,
) -> Result<ScalingReport> {
    measure("one_mcs", l_values, string_length, runs, seed, |set, _| {
        std::hint::black_box(one_mcs(set));
        Ok(())
    })
}

fn measure<F>(
    algorithm: &str,
    l_values: &[usize],
    string_length: usize,
    runs: u64,
    seed: u64,
    run: F,
) -> Result<ScalingReport>
where
    F: Fn(&StringSet, u64) -> Result<()>,
{
    if l_values.is_empty() || runs == 0 {
        return Err(McsError::InvalidSpec("need at least one L value and one run".into()));
    }
    let mut ls = l_values.to_vec();
    ls.sort_unstable();
    ls.dedup();

    let mut rows: Vec<ScalingRow> = Vec::with_capacity(ls.len());
    for &l in &ls {
        let corpus = gen_planted(&scaling_corpus_spec(l, string_length, seed))?;
        // One untimed warm-up run.
        run(&corpus.strings, u64::MAX)?;
        let mut times: Vec<f64> = (0..runs)
            .map(|i| {
                let start = Instant::now();
                run(&corpus.strings, i)?;
                Ok(start.elapsed().as_secs_f64())
            })
            .collect::<Result<_>>()?;
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let med = median(&mut times);
        let prev = rows.last();
        rows.push(ScalingRow {
            num_strings: l,
            runs,
            median_secs: med,
            mean_secs: mean,
            observed_ratio: prev.map(|p| med / p.median_secs),
            expected_ratio: prev.map(|p| l as f64 / p.num_strings as f64),
        });
    }
    Ok(ScalingReport {
        algorithm: algorithm.to_owned(),
        string_length,
        rows,
    })
}
