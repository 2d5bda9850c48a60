//! Subsequence primitives: embedding checks, `Middle`, shared characters,
//! breakpoints and the maximality test.
//!
//! Positions follow the 1-based, half-open convention `A(i, j]`: the
//! characters of `A` sit at positions `1..=|A|` and `A(0, k]` is the prefix of
//! length `k`. Storage is 0-based, so `A(i, j]` is the slice `a[i..j]`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{McsError, Result};
use crate::types::{StringSet, Subsequence};

/// Characters shared by every string, each with its minimum multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CharBag {
    entries: BTreeMap<char, usize>,
}

impl CharBag {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct characters.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, c: char) -> Option<usize> {
        self.entries.get(&c).copied()
    }

    pub fn contains(&self, c: char) -> bool {
        self.entries.contains_key(&c)
    }

    /// Entries in ascending character order.
    pub fn iter(&self) -> impl Iterator<Item = (char, usize)> + '_ {
        self.entries.iter().map(|(&c, &m)| (c, m))
    }

    pub fn chars(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.keys().copied()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.values().sum()
    }
}

impl FromIterator<(char, usize)> for CharBag {
    fn from_iter<T: IntoIterator<Item = (char, usize)>>(iter: T) -> Self {
        Self {
            entries: iter.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }
}

/// Sorted gap indices `k ∈ [0, |W|]` at which a character can be inserted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BreakpointSet {
    indices: Vec<usize>,
}

impl BreakpointSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.indices.binary_search(&k).is_ok()
    }
}

impl From<Vec<usize>> for BreakpointSet {
    fn from(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self { indices }
    }
}

/// Greedy left-to-right embedding check.
pub fn is_subsequence(w: &[char], a: &[char]) -> bool {
    let mut rest = a.iter();
    w.iter().all(|c| rest.any(|x| x == c))
}

/// True when `w` embeds in every string of `set`.
pub fn is_common(set: &StringSet, w: &[char]) -> bool {
    set.iter().all(|a| is_subsequence(w, a))
}

/// Where `W` sits inside one string under the two greedy embeddings.
///
/// `left[k]` is the end of the shortest prefix of `A` containing `W(0,k]`
/// and `right[k]` is the start (1-based) of the shortest suffix containing
/// `W(k,|W|]`, with `right[|W|] = |A| + 1`. `Middle(A, W, k)` is then
/// `A(left[k], right[k] - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct EmbeddingBounds {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl EmbeddingBounds {
    /// `None` if `w` does not embed in `a`.
    pub fn compute(a: &[char], w: &[char]) -> Option<Self> {
        let mut left = Vec::with_capacity(w.len() + 1);
        left.push(0);
        let mut pos = 0;
        for &c in w {
            let offset = a[pos..].iter().position(|&x| x == c)?;
            pos += offset + 1;
            left.push(pos);
        }

        let mut right = vec![0; w.len() + 1];
        let mut end = a.len() + 1;
        right[w.len()] = end;
        for (k, &c) in w.iter().enumerate().rev() {
            end = a[..end - 1].iter().rposition(|&x| x == c)? + 1;
            right[k] = end;
        }
        Some(Self { left, right })
    }

    pub fn middle<'a>(&self, a: &'a [char], k: usize) -> &'a [char] {
        let start = self.left[k];
        let end = self.right[k] - 1;
        &a[start..end.max(start)]
    }
}

/// `Middle(A, W, k)`: `A` with the shortest prefix containing `W(0,k]` and
/// the shortest suffix containing `W(k,|W|]` removed.
///
/// The result is a contiguous slice of `a`, empty when the two trimmed
/// regions abut.
pub fn middle<'a>(a: &'a [char], w: &[char], k: usize) -> Result<&'a [char]> {
    if k > w.len() {
        return Err(McsError::IndexOutOfRange { k, len: w.len() });
    }
    let bounds = EmbeddingBounds::compute(a, w).ok_or_else(|| McsError::NotSubsequence {
        subsequence: w.iter().collect(),
        string: a.iter().collect(),
    })?;
    Ok(bounds.middle(a, k))
}

/// Characters present in every slice, with minimum occurrence counts.
pub fn common_chars_of<S: AsRef<[char]>>(strings: &[S]) -> CharBag {
    let Some((first, rest)) = strings.split_first() else {
        return CharBag::default();
    };
    let mut bag: BTreeMap<char, usize> = BTreeMap::new();
    for &c in first.as_ref() {
        *bag.entry(c).or_insert(0) += 1;
    }
    for s in rest {
        if bag.is_empty() {
            break;
        }
        let mut counts: BTreeMap<char, usize> = BTreeMap::new();
        for &c in s.as_ref() {
            if bag.contains_key(&c) {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        bag.retain(|c, m| match counts.get(c) {
            Some(&n) => {
                *m = (*m).min(n);
                true
            }
            None => false,
        });
    }
    CharBag { entries: bag }
}

/// `commonChar(𝒜)` with multiplicities.
pub fn common_chars(set: &StringSet) -> CharBag {
    common_chars_of(set.strings())
}

fn share_a_char(slices: &[&[char]]) -> bool {
    let Some(shortest) = slices.iter().min_by_key(|s| s.len()) else {
        return false;
    };
    let mut candidates: HashSet<char> = shortest.iter().copied().collect();
    for s in slices {
        if candidates.is_empty() {
            return false;
        }
        let present: HashSet<char> = s.iter().copied().filter(|c| candidates.contains(c)).collect();
        candidates = present;
    }
    !candidates.is_empty()
}

/// All `k ∈ [0, |W|]` where the `L` middles share at least one character.
///
/// Errors if `w` is not common to every string, since that indicates a
/// caller bug.
pub fn breakpoints(set: &StringSet, w: &[char]) -> Result<BreakpointSet> {
    let bounds = bounds_for(set, w)?;
    let mut middles: Vec<&[char]> = Vec::with_capacity(set.len());
    let indices = (0..=w.len())
        .filter(|&k| {
            middles.clear();
            middles.extend(set.iter().zip(&bounds).map(|(a, b)| b.middle(a, k)));
            share_a_char(&middles)
        })
        .collect();
    Ok(BreakpointSet { indices })
}

pub(crate) fn bounds_for(set: &StringSet, w: &[char]) -> Result<Vec<EmbeddingBounds>> {
    set.iter()
        .enumerate()
        .map(|(i, a)| {
            EmbeddingBounds::compute(a, w).ok_or_else(|| McsError::NotCommon {
                subsequence: w.iter().collect(),
                string_index: i,
            })
        })
        .collect()
}

/// A common subsequence is maximal iff it has no breakpoints.
pub fn is_maximal(set: &StringSet, w: &[char]) -> bool {
    breakpoints(set, w).is_ok_and(|bp| bp.is_empty())
}

/// Convenience form of [`is_maximal`] for a [`Subsequence`].
pub fn is_maximal_subsequence(set: &StringSet, w: &Subsequence) -> bool {
    is_maximal(set, w.chars())
}
