//! Reproducible corpora: i.i.d. random strings and planted-subsequence sets.

use std::fs;
use std::path::Path;

use rand::distributions::{Distribution, Uniform};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{McsError, Result};
use crate::types::{StringSet, Subsequence};

/// The `i`-th symbol of the generator alphabet: `a-z`, `A-Z`, `0-9`, then
/// code points from U+0100 upward.
pub fn alphabet_char(i: usize) -> char {
    const ASCII: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    match ASCII.get(i) {
        Some(&b) => b as char,
        None => char::from_u32(0x100 + (i - ASCII.len()) as u32).expect("alphabet index in range"),
    }
}

pub fn alphabet(size: usize) -> Vec<char> {
    (0..size).map(alphabet_char).collect()
}

fn string_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `num_strings` strings of length `len`, characters i.i.d. uniform over the
/// first `alphabet_size` symbols. String `l` uses stream `l` of the seed.
pub fn gen_random(num_strings: usize, len: usize, alphabet_size: usize, seed: u64) -> Result<StringSet> {
    if num_strings == 0 || alphabet_size == 0 {
        return Err(McsError::InvalidSpec(
            "need at least one string and one alphabet symbol".into(),
        ));
    }
    let symbols = alphabet(alphabet_size);
    let pick = Uniform::new(0, alphabet_size);
    let strings = (0..num_strings)
        .map(|l| {
            let mut rng = string_rng(seed, l as u64);
            (0..len).map(|_| symbols[pick.sample(&mut rng)]).collect()
        })
        .collect();
    StringSet::from_chars(strings)
}

/// One subsequence to plant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Planted {
    /// Drawn uniformly from the core alphabet.
    Random(usize),
    /// Given verbatim.
    Fixed(String),
    /// One core symbol repeated; the smallest symbol that no other planted
    /// sequence uses, falling back to the first core symbol.
    SingleChar(usize),
}

impl Planted {
    fn len(&self) -> usize {
        match self {
            Planted::Random(n) | Planted::SingleChar(n) => *n,
            Planted::Fixed(s) => s.chars().count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedSpec {
    pub num_strings: usize,
    pub string_length: usize,
    /// Planted in this order; earlier entries pick their slots first.
    pub planted: Vec<Planted>,
    pub core_alphabet_size: usize,
    pub full_alphabet_size: usize,
    pub seed: u64,
}

impl PlantedSpec {
    /// Lengths 3, 6, 9 and 12 in strings of length 60, core alphabet of 15
    /// and filler alphabet of 30.
    pub fn four_planted(num_strings: usize, seed: u64) -> Self {
        Self {
            num_strings,
            string_length: 60,
            planted: [3, 6, 9, 12].map(Planted::Random).to_vec(),
            core_alphabet_size: 15,
            full_alphabet_size: 30,
            seed,
        }
    }

    /// Replaces entry `i` with a run of one repeated symbol.
    pub fn with_single_char(mut self, i: usize) -> Self {
        self.planted[i] = Planted::SingleChar(self.planted[i].len());
        self
    }

    fn validate(&self) -> Result<()> {
        let budget: usize = self.planted.iter().map(Planted::len).sum();
        if budget > self.string_length {
            return Err(McsError::InvalidSpec(format!(
                "planted lengths sum to {budget}, more than the string length {}",
                self.string_length
            )));
        }
        if self.num_strings == 0 {
            return Err(McsError::InvalidSpec("need at least one string".into()));
        }
        if self.core_alphabet_size == 0 || self.core_alphabet_size > self.full_alphabet_size {
            return Err(McsError::InvalidSpec(format!(
                "core alphabet ({}) must be non-empty and no larger than the full alphabet ({})",
                self.core_alphabet_size, self.full_alphabet_size
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedCorpus {
    pub strings: StringSet,
    pub planted: Vec<Subsequence>,
    pub spec: PlantedSpec,
}

/// Builds a planted corpus.
///
/// The planted sequences are resolved with stream 0 of the seed. String `l`
/// then uses stream `l + 1`: each planted sequence in turn takes a uniform
/// sample of the still-free slots, sorted, and the remaining slots are filled
/// from the full alphabet. Filler may reuse planted characters.
pub fn gen_planted(spec: &PlantedSpec) -> Result<PlantedCorpus> {
    spec.validate()?;
    let core = alphabet(spec.core_alphabet_size);
    let full = alphabet(spec.full_alphabet_size);

    let mut rng = string_rng(spec.seed, 0);
    let mut planted: Vec<Vec<char>> = spec
        .planted
        .iter()
        .map(|p| match p {
            Planted::Random(n) => (0..*n).map(|_| core[rng.gen_range(0..core.len())]).collect(),
            Planted::Fixed(s) => s.chars().collect(),
            Planted::SingleChar(_) => Vec::new(),
        })
        .collect();
    for (i, p) in spec.planted.iter().enumerate() {
        if let Planted::SingleChar(n) = p {
            let used: std::collections::HashSet<char> = planted.iter().flatten().copied().collect();
            let c = core.iter().copied().find(|c| !used.contains(c)).unwrap_or(core[0]);
            planted[i] = vec![c; *n];
        }
    }

    let strings = (0..spec.num_strings)
        .map(|l| {
            let mut rng = string_rng(spec.seed, l as u64 + 1);
            let mut out = vec!['\0'; spec.string_length];
            let mut free: Vec<usize> = (0..spec.string_length).collect();
            for seq in &planted {
                let mut picked: Vec<usize> = sample(&mut rng, free.len(), seq.len()).into_vec();
                picked.sort_unstable();
                let slots: Vec<usize> = picked.iter().map(|&i| free[i]).collect();
                for (&slot, &c) in slots.iter().zip(seq) {
                    out[slot] = c;
                }
                // `picked` is ascending, so removing from the back keeps
                // the remaining indices valid.
                for &i in picked.iter().rev() {
                    free.remove(i);
                }
            }
            for slot in free {
                out[slot] = full[rng.gen_range(0..full.len())];
            }
            out
        })
        .collect();

    Ok(PlantedCorpus {
        strings: StringSet::from_chars(strings)?,
        planted: planted.into_iter().map(Subsequence::from_chars).collect(),
        spec: spec.clone(),
    })
}

/// Sidecar metadata written next to a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusMetadata {
    Random {
        num_strings: usize,
        string_length: usize,
        alphabet_size: usize,
        seed: u64,
    },
    Planted {
        spec: PlantedSpec,
        planted: Vec<Subsequence>,
    },
}

pub const CORPUS_FILE: &str = "corpus.txt";
pub const METADATA_FILE: &str = "metadata.json";

/// Writes `corpus.txt` (one string per line) and `metadata.json` into `dir`,
/// creating it if needed.
pub fn write_corpus(dir: &Path, strings: &StringSet, metadata: &CorpusMetadata) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut text = String::with_capacity(strings.total_len() + strings.len());
    for s in strings.iter() {
        text.extend(s.iter());
        text.push('\n');
    }
    fs::write(dir.join(CORPUS_FILE), text)?;
    fs::write(dir.join(METADATA_FILE), serde_json::to_string_pretty(metadata)? + "\n")?;
    Ok(())
}
