//! Randomized maximal common subsequence search.
//!
//! Starting from the empty subsequence (or a caller-supplied common
//! subsequence), each step picks a breakpoint uniformly, builds the shared
//! characters of the `L` middles at that breakpoint and inserts one of them.
//! The loop stops when no breakpoint remains, at which point the result is
//! maximal.
//!
//! Every run owns a ChaCha8 stream: the generator is seeded with the master
//! seed and the run index selects the stream, so run `i` of a batch is
//! reproducible on its own and independent of scheduling. Each step consumes
//! exactly two draws, the breakpoint first and the character second.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{McsError, Result};
use crate::ops::is_common;
use crate::types::{StringSet, Subsequence};

/// How the inserted character is chosen among the shared characters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightingMode {
    /// Uniform over distinct shared characters.
    #[default]
    Uniform,
    /// Proportional to the minimum multiplicity across the middles.
    FrequencyWeighted,
}

/// Identifies the random stream of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub run_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, run_index: u64) -> Self {
        Self { master_seed, run_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.run_index);
        rng
    }
}

const NOT_SHARED: u32 = u32::MAX;

/// The string set re-encoded over the characters shared by all strings.
///
/// Characters outside that set can never appear in a middle intersection,
/// so they are mapped to [`NOT_SHARED`] and skipped when counting. Symbol
/// ids follow ascending character order.
#[derive(Debug, Clone)]
pub(crate) struct Encoded {
    symbols: Vec<char>,
    strings: Vec<Vec<u32>>,
}

impl Encoded {
    pub fn new(set: &StringSet) -> Self {
        let symbols: Vec<char> = crate::ops::common_chars(set).chars().collect();
        let strings = set
            .iter()
            .map(|s| {
                s.iter()
                    .map(|c| match symbols.binary_search(c) {
                        Ok(i) => i as u32,
                        Err(_) => NOT_SHARED,
                    })
                    .collect()
            })
            .collect();
        Self { symbols, strings }
    }

    fn encode(&self, w: &[char]) -> Option<Vec<u32>> {
        w.iter()
            .map(|c| self.symbols.binary_search(c).ok().map(|i| i as u32))
            .collect()
    }

    fn decode(&self, w: &[u32]) -> Subsequence {
        Subsequence::from_chars(w.iter().map(|&s| self.symbols[s as usize]).collect())
    }
}

/// Reusable buffers for one run.
struct Search<'a> {
    enc: &'a Encoded,
    /// `left[l][k]`: end of the leftmost match of `W(0,k]` in string `l`.
    left: Vec<Vec<usize>>,
    /// `right[l][k]`: 1-based start of the rightmost match of `W(k,|W|]`.
    right: Vec<Vec<usize>>,
    counts: Vec<u32>,
    mins: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(enc: &'a Encoded) -> Self {
        let sigma = enc.symbols.len();
        Self {
            enc,
            left: vec![Vec::new(); enc.strings.len()],
            right: vec![Vec::new(); enc.strings.len()],
            counts: vec![0; sigma],
            mins: vec![0; sigma],
        }
    }

    fn update_bounds(&mut self, w: &[u32]) {
        for ((a, left), right) in self.enc.strings.iter().zip(&mut self.left).zip(&mut self.right) {
            left.clear();
            left.push(0);
            let mut pos = 0;
            for &c in w {
                pos += a[pos..]
                    .iter()
                    .position(|&x| x == c)
                    .expect("working subsequence stays common")
                    + 1;
                left.push(pos);
            }
            right.clear();
            right.resize(w.len() + 1, 0);
            let mut end = a.len() + 1;
            right[w.len()] = end;
            for (k, &c) in w.iter().enumerate().rev() {
                end = a[..end - 1]
                    .iter()
                    .rposition(|&x| x == c)
                    .expect("working subsequence stays common")
                    + 1;
                right[k] = end;
            }
        }
    }

    /// Fills `mins` with the minimum per-symbol count over the middles at
    /// gap `k`. Returns false as soon as the intersection is known empty.
    fn gap_counts(&mut self, k: usize) -> bool {
        self.mins.fill(u32::MAX);
        for (l, a) in self.enc.strings.iter().enumerate() {
            let start = self.left[l][k];
            let end = self.right[l][k] - 1;
            if start >= end {
                return false;
            }
            self.counts.fill(0);
            for &s in &a[start..end] {
                if s != NOT_SHARED {
                    self.counts[s as usize] += 1;
                }
            }
            let mut any = false;
            for (m, &c) in self.mins.iter_mut().zip(&self.counts) {
                *m = (*m).min(c);
                any |= *m > 0;
            }
            if !any {
                return false;
            }
        }
        true
    }

    fn run(&mut self, mut w: Vec<u32>, mode: WeightingMode, rng: &mut ChaCha8Rng) -> Vec<u32> {
        if self.enc.symbols.is_empty() {
            return w;
        }
        let mut positions = Vec::new();
        loop {
            self.update_bounds(&w);
            positions.clear();
            for k in 0..=w.len() {
                if self.gap_counts(k) {
                    positions.push(k);
                }
            }
            if positions.is_empty() {
                return w;
            }
            let k = positions[rng.gen_range(0..positions.len())];
            self.gap_counts(k);
            let symbol = match mode {
                WeightingMode::Uniform => {
                    let distinct = self.mins.iter().filter(|&&m| m > 0).count();
                    let pick = rng.gen_range(0..distinct);
                    self.mins
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| m > 0)
                        .nth(pick)
                        .map(|(s, _)| s)
                }
                WeightingMode::FrequencyWeighted => {
                    let total: u64 = self.mins.iter().map(|&m| u64::from(m)).sum();
                    let mut pick = rng.gen_range(0..total);
                    self.mins.iter().position(|&m| {
                        let m = u64::from(m);
                        if pick < m {
                            true
                        } else {
                            pick -= m;
                            false
                        }
                    })
                }
            }
            .expect("breakpoint has a shared character");
            w.insert(k, symbol as u32);
        }
    }
}

/// One randomized run returning a maximal common subsequence.
///
/// `start`, when given, must be common to all strings and is embedded in the
/// result. If no character is shared by every string the empty subsequence
/// is returned.
pub fn random_mcs(
    set: &StringSet,
    seed: SeedSpec,
    mode: WeightingMode,
    start: Option<&Subsequence>,
) -> Result<Subsequence> {
    let enc = Encoded::new(set);
    let start = encode_start(set, &enc, start)?;
    let mut search = Search::new(&enc);
    Ok(enc.decode(&search.run(start, mode, &mut seed.rng())))
}

fn encode_start(set: &StringSet, enc: &Encoded, start: Option<&Subsequence>) -> Result<Vec<u32>> {
    let Some(start) = start else {
        return Ok(Vec::new());
    };
    if let Some(i) = set.iter().position(|a| !crate::ops::is_subsequence(start.chars(), a)) {
        return Err(McsError::NotCommon {
            subsequence: start.to_string(),
            string_index: i,
        });
    }
    debug_assert!(is_common(set, start.chars()));
    Ok(enc.encode(start.chars()).expect("common characters are shared"))
}

/// Runs `runs` independent searches and returns outputs in run-index order.
pub fn run_batch(
    set: &StringSet,
    runs: u64,
    master_seed: u64,
    mode: WeightingMode,
    start: Option<&Subsequence>,
) -> Result<Vec<Subsequence>> {
    let enc = Encoded::new(set);
    let start = encode_start(set, &enc, start)?;
    let outputs = (0..runs)
        .into_par_iter()
        .map_init(
            || Search::new(&enc),
            |search, run_index| {
                let mut rng = SeedSpec::new(master_seed, run_index).rng();
                enc.decode(&search.run(start.clone(), mode, &mut rng))
            },
        )
        .collect();
    Ok(outputs)
}

/// Aggregate of many runs: counts and empirical occurrence probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub total_runs: u64,
    pub counts: BTreeMap<String, u64>,
    pub probabilities: BTreeMap<String, f64>,
    /// Longest distinct output; ties go to the lexicographically smallest.
    pub longest: Subsequence,
    /// Set when the strings share no character at all, so every run
    /// returned the empty subsequence.
    pub no_common_characters: bool,
}

impl RunSummary {
    pub fn from_outputs<I>(outputs: I) -> Self
    where
        I: IntoIterator<Item = Subsequence>,
    {
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut total_runs = 0;
        for out in outputs {
            *counts.entry(out.to_string()).or_insert(0) += 1;
            total_runs += 1;
        }
        let probabilities = counts
            .iter()
            .map(|(k, &n)| (k.clone(), n as f64 / total_runs as f64))
            .collect();
        let longest = counts
            .keys()
            .fold(None::<&String>, |best, key| match best {
                Some(b) if b.chars().count() >= key.chars().count() => Some(b),
                _ => Some(key),
            })
            .map(|s| Subsequence::from(s.as_str()))
            .unwrap_or_default();
        let no_common_characters = total_runs > 0 && counts.len() == 1 && counts.contains_key("");
        Self {
            total_runs,
            counts,
            probabilities,
            longest,
            no_common_characters,
        }
    }

    pub fn count(&self, w: &str) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn probability(&self, w: &str) -> f64 {
        self.probabilities.get(w).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }
}

/// `T` seeded runs aggregated into a [`RunSummary`].
pub fn run_many(set: &StringSet, runs: u64, master_seed: u64, mode: WeightingMode) -> RunSummary {
    let outputs = run_batch(set, runs, master_seed, mode, None).expect("no start to validate");
    RunSummary::from_outputs(outputs)
}

/// The longest output among `runs` seeded runs.
pub fn longest_of_runs(set: &StringSet, runs: u64, master_seed: u64, mode: WeightingMode) -> Subsequence {
    run_many(set, runs, master_seed, mode).longest
}

/// Runs needed so an MCS with occurrence probability at least `p` is missed
/// with probability at most `eps`: `⌈log ε / log(1 − p)⌉`.
pub fn required_runs(p: f64, eps: f64) -> Result<u64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(McsError::InvalidProbability { name: "p", value: p });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(McsError::InvalidProbability {
            name: "eps",
            value: eps,
        });
    }
    let t = (eps.ln() / (-p).ln_1p()).ceil();
    Ok((t as u64).max(1))
}

/// `C^(−D)`: lower bound on the occurrence probability of an MCS with a
/// distinguishing subsequence of length at most `distinguishing_len`, when at
/// most `common_chars` distinct characters are shared and selection is
/// uniform.
///
/// # Panics
///
/// If `common_chars` is zero.
pub fn probability_lower_bound(common_chars: u32, distinguishing_len: u32) -> f64 {
    assert!(common_chars >= 1, "need at least one shared character");
    (f64::from(common_chars)).powf(-f64::from(distinguishing_len))
}
