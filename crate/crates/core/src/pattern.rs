//! Wildcard templates for string columns.
//!
//! The longest subsequence found over many randomized runs is aligned into
//! every value with a greedy leftmost embedding. A gap becomes a wildcard
//! when any value has characters there; everything else is literal.

use std::collections::HashSet;
use std::io::Read;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{McsError, Result};
use crate::random::{longest_of_runs, WeightingMode};
use crate::types::{StringSet, Subsequence};

/// Columns with more distinct values than this are sampled.
pub const SAMPLE_THRESHOLD: usize = 10_000;
pub const SAMPLE_SIZE: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Token {
    Literal(String),
    Wildcard,
}

/// Alternating literals and wildcards; never two wildcards in a row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnPattern {
    tokens: Vec<Token>,
}

impl ColumnPattern {
    /// Normalizes `tokens`: empty literals are dropped and neighbouring
    /// literals or wildcards are merged.
    pub fn new(tokens: impl IntoIterator<Item = Token>) -> Self {
        let mut out: Vec<Token> = Vec::new();
        for t in tokens {
            match (out.last_mut(), t) {
                (_, Token::Literal(s)) if s.is_empty() => {}
                (Some(Token::Literal(prev)), Token::Literal(s)) => prev.push_str(&s),
                (Some(Token::Wildcard), Token::Wildcard) => {}
                (_, t) => out.push(t),
            }
        }
        Self { tokens: out }
    }

    pub fn wildcard() -> Self {
        Self {
            tokens: vec![Token::Wildcard],
        }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Concatenated literals.
    pub fn literal_text(&self) -> String {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                Token::Literal(s) => Some(s.as_str()),
                Token::Wildcard => None,
            })
            .collect()
    }

    /// `*` for wildcards; literal `*` and `\` are backslash-escaped.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            match t {
                Token::Wildcard => out.push('*'),
                Token::Literal(s) => {
                    for c in s.chars() {
                        if c == '*' || c == '\\' {
                            out.push('\\');
                        }
                        out.push(c);
                    }
                }
            }
        }
        out
    }

    /// Anchored match where a wildcard stands for any run of zero or more
    /// characters.
    pub fn matches(&self, value: &str) -> bool {
        let v: Vec<char> = value.chars().collect();
        let lits: Vec<Vec<char>> = self
            .tokens
            .iter()
            .filter_map(|t| match t {
                Token::Literal(s) => Some(s.chars().collect()),
                Token::Wildcard => None,
            })
            .collect();
        let starts_wild = matches!(self.tokens.first(), Some(Token::Wildcard));
        let ends_wild = matches!(self.tokens.last(), Some(Token::Wildcard));
        if !self.tokens.contains(&Token::Wildcard) {
            return lits.concat() == v;
        }

        let mut lo = 0;
        let mut hi = v.len();
        let mut middle = lits.as_slice();
        if !starts_wild {
            let (first, rest) = middle.split_first().expect("literal before first wildcard");
            if !v.starts_with(first) {
                return false;
            }
            lo = first.len();
            middle = rest;
        }
        if !ends_wild {
            let (last, rest) = middle.split_last().expect("literal after last wildcard");
            if hi < lo + last.len() || !v[..hi].ends_with(last) {
                return false;
            }
            hi -= last.len();
            middle = rest;
        }
        // Between wildcards, leftmost placement of each literal is optimal.
        for lit in middle {
            match find(&v[lo..hi], lit) {
                Some(p) => lo += p + lit.len(),
                None => return false,
            }
        }
        true
    }
}

fn find(hay: &[char], needle: &[char]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Leftmost positions of `m` in `v`, if it embeds.
fn leftmost(m: &[char], v: &[char]) -> Option<Vec<usize>> {
    let mut pos = 0;
    m.iter()
        .map(|&c| {
            let p = pos + v[pos..].iter().position(|&x| x == c)?;
            pos = p + 1;
            Some(p)
        })
        .collect()
}

/// Longest subsequence of `m` embedding in `v` (two-string LCS).
fn shrink_to(m: &[char], v: &[char]) -> Vec<char> {
    let (a, b) = (m.len(), v.len());
    let mut t = vec![vec![0u32; b + 1]; a + 1];
    for i in 1..=a {
        for j in 1..=b {
            t[i][j] = if m[i - 1] == v[j - 1] {
                t[i - 1][j - 1] + 1
            } else {
                t[i - 1][j].max(t[i][j - 1])
            };
        }
    }
    let (mut i, mut j) = (a, b);
    let mut out = Vec::new();
    while i > 0 && j > 0 {
        if m[i - 1] == v[j - 1] {
            out.push(m[i - 1]);
            i -= 1;
            j -= 1;
        } else if t[i - 1][j] >= t[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    out
}

/// Template for a column from the longest of `runs` randomized searches.
///
/// Values are deduplicated first; above [`SAMPLE_THRESHOLD`] distinct values
/// only a seeded sample of [`SAMPLE_SIZE`] feeds the search, and the result is
/// then trimmed until it embeds in every value.
pub fn extract_pattern<S: AsRef<str>>(
    values: &[S],
    runs: u64,
    seed: u64,
    mode: WeightingMode,
) -> Result<ColumnPattern> {
    if values.is_empty() {
        return Err(McsError::EmptyColumn(String::new()));
    }
    let mut seen = HashSet::new();
    let distinct: Vec<Vec<char>> = values
        .iter()
        .map(AsRef::as_ref)
        .filter(|v| seen.insert(*v))
        .map(|v| v.chars().collect())
        .collect();

    let search_set = if distinct.len() > SAMPLE_THRESHOLD {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::MAX);
        let mut picked = sample(&mut rng, distinct.len(), SAMPLE_SIZE).into_vec();
        picked.sort_unstable();
        StringSet::from_chars(picked.into_iter().map(|i| distinct[i].clone()).collect())?
    } else {
        StringSet::from_chars(distinct.clone())?
    };
    let mut m = longest_of_runs(&search_set, runs.max(1), seed, mode).into_chars();
    if search_set.len() < distinct.len() {
        for v in &distinct {
            if !crate::ops::is_subsequence(&m, v) {
                m = shrink_to(&m, v);
            }
        }
    }
    Ok(pattern_from_alignment(&Subsequence::from_chars(m), &distinct))
}

/// Builds the template for a fixed common subsequence `m`.
pub(crate) fn pattern_from_alignment(m: &Subsequence, values: &[Vec<char>]) -> ColumnPattern {
    if m.is_empty() {
        if values.iter().all(Vec::is_empty) {
            return ColumnPattern::new([]);
        }
        return ColumnPattern::wildcard();
    }
    let m = m.chars();
    let mut gap_used = vec![false; m.len() + 1];
    for v in values {
        let pos = leftmost(m, v).expect("template embeds in every value");
        gap_used[0] |= pos[0] > 0;
        for g in 1..m.len() {
            gap_used[g] |= pos[g] > pos[g - 1] + 1;
        }
        gap_used[m.len()] |= pos[m.len() - 1] + 1 < v.len();
    }
    let mut tokens = Vec::with_capacity(2 * m.len() + 1);
    for (g, &used) in gap_used.iter().enumerate() {
        if used {
            tokens.push(Token::Wildcard);
        }
        if let Some(&c) = m.get(g) {
            tokens.push(Token::Literal(c.to_string()));
        }
    }
    prune_wildcards(ColumnPattern::new(tokens), values)
}

/// Leftmost alignment can leave a wildcard that no value needs (for
/// `{aXa, Ya}` with template `a` it yields `*a*` although `*a` suffices).
/// Drop each wildcard whose removal keeps every value matching.
fn prune_wildcards(mut pattern: ColumnPattern, values: &[Vec<char>]) -> ColumnPattern {
    let values: Vec<String> = values.iter().map(|v| v.iter().collect()).collect();
    let mut i = 0;
    while i < pattern.tokens.len() {
        if pattern.tokens[i] == Token::Wildcard && pattern.tokens.len() > 1 {
            let mut tokens = pattern.tokens.clone();
            tokens.remove(i);
            let candidate = ColumnPattern::new(tokens);
            if values.iter().all(|v| candidate.matches(v)) {
                pattern = candidate;
                continue;
            }
        }
        i += 1;
    }
    pattern
}

/// One row of a column profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnReport {
    pub column: String,
    pub pattern: String,
    pub distinct_values: usize,
    pub sampled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub runs: u64,
    pub seed: u64,
    pub mode: WeightingMode,
    pub columns: Vec<ColumnReport>,
}

impl ProfileReport {
    /// Two-column `Colname | Pattern` table.
    pub fn to_table(&self) -> String {
        let width = self
            .columns
            .iter()
            .map(|c| c.column.chars().count())
            .chain(std::iter::once("Colname".len()))
            .max()
            .unwrap_or(0);
        let mut out = format!("{:<width$} | Pattern\n", "Colname");
        out.push_str(&format!("{}-+-{}\n", "-".repeat(width), "-".repeat(7)));
        for c in &self.columns {
            out.push_str(&format!("{:<width$} | {}\n", c.column, c.pattern));
        }
        out
    }
}

/// Profiles the columns of a headed CSV. With `column` set only that column
/// is reported.
pub fn profile_csv<R: Read>(
    reader: R,
    delimiter: u8,
    column: Option<&str>,
    runs: u64,
    seed: u64,
    mode: WeightingMode,
) -> Result<ProfileReport> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(reader);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let selected: Vec<usize> = match column {
        Some(name) => vec![headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| McsError::UnknownColumn(name.to_owned()))?],
        None => (0..headers.len()).collect(),
    };
    let mut values: Vec<Vec<String>> = vec![Vec::new(); selected.len()];
    for record in rdr.records() {
        let record = record?;
        for (slot, &col) in values.iter_mut().zip(&selected) {
            slot.push(record.get(col).unwrap_or_default().to_owned());
        }
    }

    let columns = selected
        .iter()
        .zip(&values)
        .map(|(&col, vals)| {
            let name = headers[col].clone();
            if vals.is_empty() {
                return Err(McsError::EmptyColumn(name));
            }
            let distinct = vals.iter().collect::<HashSet<_>>().len();
            let pattern = extract_pattern(vals, runs, seed, mode)?;
            Ok(ColumnReport {
                column: name,
                pattern: pattern.render(),
                distinct_values: distinct,
                sampled: distinct > SAMPLE_THRESHOLD,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileReport {
        runs,
        seed,
        mode,
        columns,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Token {
        Token::Literal(s.into())
    }

    fn extract(values: &[&str]) -> String {
        extract_pattern(values, 100, 7, WeightingMode::Uniform)
            .unwrap()
            .render()
    }

    #[test]
    fn table_like_columns() {
        assert_eq!(extract(&["2015-12-01", "2015-12-17", "2015-12-30"]), "2015-12-*");
        assert_eq!(extract(&["POP-A1", "POP-B2"]), "POP-*");
        assert_eq!(extract(&["ABC", "ABC"]), "ABC");
        assert_eq!(extract(&["v1.0", "build-7"]), "*");
    }

    #[test]
    fn empty_values() {
        assert_eq!(extract(&["", ""]), "");
        assert!(ColumnPattern::new([]).matches(""));
        assert!(!ColumnPattern::new([]).matches("x"));
        assert_eq!(extract(&["", "x"]), "*");
    }

    #[test]
    fn empty_column_rejected() {
        assert!(matches!(
            extract_pattern::<&str>(&[], 10, 0, WeightingMode::Uniform),
            Err(McsError::EmptyColumn(_))
        ));
    }

    #[test]
    fn render_examples() {
        assert_eq!(ColumnPattern::new([lit("POP-"), Token::Wildcard]).render(), "POP-*");
        assert_eq!(ColumnPattern::wildcard().render(), "*");
        assert_eq!(ColumnPattern::new([lit("a*b")]).render(), "a\\*b");
        assert_eq!(ColumnPattern::new([lit("a\\")]).render(), "a\\\\");
    }

    #[test]
    fn normalization_merges_neighbours() {
        let p = ColumnPattern::new([lit("a"), lit("b"), Token::Wildcard, Token::Wildcard, lit(""), lit("c")]);
        assert_eq!(p.tokens(), &[lit("ab"), Token::Wildcard, lit("c")]);
    }

    #[test]
    fn matcher_basics() {
        let p = ColumnPattern::new([lit("ab"), Token::Wildcard, lit("b")]);
        assert!(p.matches("abb"));
        assert!(p.matches("abxb"));
        assert!(!p.matches("ab"));
        let p = ColumnPattern::new([Token::Wildcard, lit("a"), Token::Wildcard]);
        assert!(p.matches("a") && p.matches("xay") && !p.matches("xy"));
        assert!(ColumnPattern::wildcard().matches(""));
        assert!(ColumnPattern::new([lit("abc")]).matches("abc"));
        assert!(!ColumnPattern::new([lit("abc")]).matches("abcd"));
    }

    #[test]
    fn redundant_trailing_wildcard_pruned() {
        let values: Vec<Vec<char>> = ["aXa", "Ya"].iter().map(|s| s.chars().collect()).collect();
        let p = pattern_from_alignment(&Subsequence::from("a"), &values);
        assert_eq!(p.render(), "*a");
    }

    #[test]
    fn sampled_template_still_embeds() {
        let m = shrink_to(&['a', 'b', 'c'], &['c', 'a', 'c']);
        assert_eq!(m, vec!['a', 'c']);
    }

    #[test]
    fn csv_profile() {
        let csv = "day,pop\n2015-12-01,POP-A1\n2015-12-17,POP-B2\n2015-12-30,POP-C3\n";
        let report = profile_csv(csv.as_bytes(), b',', None, 50, 1, WeightingMode::Uniform).unwrap();
        let got: Vec<_> = report
            .columns
            .iter()
            .map(|c| (c.column.as_str(), c.pattern.as_str()))
            .collect();
        assert_eq!(got, [("day", "2015-12-*"), ("pop", "POP-*")]);
        assert!(report.to_table().contains("pop     | POP-*"));
        let one = profile_csv(csv.as_bytes(), b',', Some("pop"), 50, 1, WeightingMode::Uniform).unwrap();
        assert_eq!(one.columns.len(), 1);
        assert!(matches!(
            profile_csv(csv.as_bytes(), b',', Some("nope"), 5, 1, WeightingMode::Uniform),
            Err(McsError::UnknownColumn(_))
        ));
    }
}
