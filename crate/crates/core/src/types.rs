//! Shared value types: the input string set and subsequences over it.
//!
//! Strings are stored as vectors of Unicode scalar values so that positions
//! and comparisons are per character, not per byte.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{McsError, Result};

/// An ordered, non-empty collection of input strings.
///
/// Individual strings may be empty and duplicates are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringSet {
    strings: Vec<Vec<char>>,
}

impl StringSet {
    pub fn new<I, S>(strings: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let strings: Vec<Vec<char>> = strings.into_iter().map(|s| s.as_ref().chars().collect()).collect();
        Self::from_chars(strings)
    }

    pub fn from_chars(strings: Vec<Vec<char>>) -> Result<Self> {
        if strings.is_empty() {
            return Err(McsError::EmptyStringSet);
        }
        Ok(Self { strings })
    }

    /// Parses newline-delimited text, one string per line.
    ///
    /// A trailing newline is optional and `\r\n` endings are accepted.
    /// Blank lines are kept as empty strings.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if text.is_empty() {
            return Err(McsError::EmptyStringSet);
        }
        Self::new(body.split('\n').map(|line| line.strip_suffix('\r').unwrap_or(line)))
    }

    /// Number of strings, `L`.
    pub fn len(&self) -> usize {
        self.strings.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[Vec<char>] {
        &self.strings
    }

    pub fn get(&self, index: usize) -> Option<&[char]> {
        self.strings.get(index).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &[char]> {
        self.strings.iter().map(Vec::as_slice)
    }

    pub fn min_len(&self) -> usize {
        self.strings.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn total_len(&self) -> usize {
        self.strings.iter().map(Vec::len).sum()
    }

    /// Index of the first shortest string.
    pub fn shortest_index(&self) -> usize {
        self.strings
            .iter()
            .enumerate()
            .min_by_key(|(_, s)| s.len())
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    /// Same strings in reverse order.
    pub fn reversed(&self) -> Self {
        let mut strings = self.strings.clone();
        strings.reverse();
        Self { strings }
    }

    /// Drops repeated strings, keeping first occurrences in order.
    pub fn dedup(&self) -> Self {
        let mut seen = std::collections::HashSet::new();
        let strings = self
            .strings
            .iter()
            .filter(|s| seen.insert(s.as_slice()))
            .cloned()
            .collect();
        Self { strings }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.strings.iter().map(|s| s.iter().collect()).collect()
    }
}

/// A sequence of characters, typically a (maximal) common subsequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", from = "String")]
pub struct Subsequence {
    chars: Vec<char>,
}

impl Subsequence {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_chars(chars: Vec<char>) -> Self {
        Self { chars }
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn into_chars(self) -> Vec<char> {
        self.chars
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// `W(0,k] ⊕ c ⊕ W(k,|W|]`.
    pub fn inserted(&self, k: usize, c: char) -> Self {
        let mut chars = self.chars.clone();
        chars.insert(k, c);
        Self { chars }
    }
}

impl fmt::Display for Subsequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chars.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl From<&str> for Subsequence {
    fn from(s: &str) -> Self {
        Self {
            chars: s.chars().collect(),
        }
    }
}

impl From<String> for Subsequence {
    fn from(s: String) -> Self {
        Self::from(s.as_str())
    }
}

impl From<Subsequence> for String {
    fn from(s: Subsequence) -> Self {
        s.chars.into_iter().collect()
    }
}

impl From<&[char]> for Subsequence {
    fn from(chars: &[char]) -> Self {
        Self { chars: chars.to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lines_keeps_blank_lines() {
        let set = StringSet::parse_lines("TEGAP\n\nGAEPR\n").unwrap();
        assert_eq!(set.to_strings(), vec!["TEGAP", "", "GAEPR"]);
        let set = StringSet::parse_lines("a\r\nb").unwrap();
        assert_eq!(set.to_strings(), vec!["a", "b"]);
        let set = StringSet::parse_lines("\n").unwrap();
        assert_eq!(set.to_strings(), vec![""]);
        assert!(StringSet::parse_lines("").is_err());
    }

    #[test]
    fn empty_set_rejected() {
        assert!(matches!(
            StringSet::new(Vec::<String>::new()),
            Err(McsError::EmptyStringSet)
        ));
    }

    #[test]
    fn multibyte_characters_are_single_positions() {
        let set = StringSet::new(["héllo", "日本"]).unwrap();
        assert_eq!(set.get(0).unwrap().len(), 5);
        assert_eq!(set.get(1).unwrap().len(), 2);
    }

    #[test]
    fn subsequence_serializes_as_string() {
        let s = Subsequence::from("GAP");
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"GAP\"");
        assert_eq!(s.inserted(1, 'x').to_string(), "GxAP");
    }
}
