//! Maximal common subsequences of many strings.
//!
//! A common subsequence of a string set is *maximal* when no single character
//! can be inserted anywhere without breaking commonality. The longest common
//! subsequence is the longest maximal one, but computing it is exponential in
//! the number of strings; maximal ones can be found in time linear in it.
//!
//! * [`ops`]: embedding checks, `Middle`, shared characters, breakpoints and
//!   the maximality test.
//! * [`random`]: the randomized search, multi-run summaries and the
//!   run-count / probability bounds.
//! * [`one_mcs`]: a deterministic single-MCS search.
//! * [`oracle`]: exact LCS and MCS enumeration for small instances.
//! * [`simgen`]: random and planted-subsequence corpora.
//! * [`pattern`]: wildcard templates for string columns.
//! * [`scaling`]: runtime-versus-`L` measurements.
//!
//! ```
//! use mcskit::{random_mcs, SeedSpec, StringSet, WeightingMode};
//!
//! let set = StringSet::new(["TEGAP", "GAEPR"]).unwrap();
//! let w = random_mcs(&set, SeedSpec::new(1, 0), WeightingMode::Uniform, None).unwrap();
//! assert!(w.to_string() == "GAP" || w.to_string() == "EP");
//! ```

pub mod error;
pub mod one_mcs;
pub mod ops;
pub mod oracle;
pub mod pattern;
pub mod random;
pub mod scaling;
pub mod simgen;
pub mod types;

pub use error::{McsError, Result};
pub use one_mcs::{common_segment, idx_after, idx_before, one_mcs, SegmentMatch};
pub use ops::{
    breakpoints, common_chars, common_chars_of, is_common, is_maximal, is_maximal_subsequence, is_subsequence, middle,
    BreakpointSet, CharBag,
};
pub use oracle::{enumerate_mcs, lcs_dp};
pub use pattern::{extract_pattern, profile_csv, ColumnPattern, ColumnReport, ProfileReport, Token};
pub use random::{
    longest_of_runs, probability_lower_bound, random_mcs, required_runs, run_batch, run_many, RunSummary, SeedSpec,
    WeightingMode,
};
pub use simgen::{gen_planted, gen_random, Planted, PlantedCorpus, PlantedSpec};
pub use types::{StringSet, Subsequence};
