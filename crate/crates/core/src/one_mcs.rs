//! Deterministic single-MCS search for `L` strings.
//!
//! The subsequence `W` is bracketed by virtual start and end markers that sit
//! at positions `0` and `|A| + 1` of every string. The search walks the gaps
//! of `W` left to right. For the current gap, each string contributes the
//! segment `A(idxP, idxR]` between the leftmost match of `W(0,k]` and the
//! rightmost match of `W(k,|W|]`. The rear of every segment is pulled back
//! while no segment ends in a character shared by all of them; once some
//! segment ends in a shared character that character is inserted at the gap.
//! A gap whose segments run empty is confirmed and the search moves on.
//!
//! Dropping the rear position of a segment whose last character is missing
//! from another segment never removes a shared character, so a confirmed gap
//! is a gap whose middles share nothing. Later insertions only happen to the
//! right of a confirmed gap and can only shrink its middle, so the final `W`
//! is maximal.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::types::{StringSet, Subsequence};

/// Least `j` such that `c` does not occur in `A(j, i]`: the position of the
/// last `c` at or before `i`, or `0` if there is none.
pub fn idx_before(a: &[char], c: char, i: usize) -> usize {
    a[..i.min(a.len())].iter().rposition(|&x| x == c).map_or(0, |p| p + 1)
}

/// Greatest `j` such that `c` does not occur in `A(i, j]`: one before the
/// first `c` after `i`, or `|A|` if there is none.
pub fn idx_after(a: &[char], c: char, i: usize) -> usize {
    let i = i.min(a.len());
    a[i..].iter().position(|&x| x == c).map_or(a.len(), |p| i + p)
}

/// Sorted occurrence positions per character, for logarithmic
/// [`idx_before`] / [`idx_after`] queries.
#[derive(Debug, Clone)]
pub(crate) struct PositionIndex<'a> {
    chars: &'a [char],
    positions: HashMap<char, Vec<usize>>,
}

impl<'a> PositionIndex<'a> {
    pub fn new(chars: &'a [char]) -> Self {
        let mut positions: HashMap<char, Vec<usize>> = HashMap::new();
        for (i, &c) in chars.iter().enumerate() {
            positions.entry(c).or_default().push(i + 1);
        }
        Self { chars, positions }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    /// Character at 1-based position `p`.
    pub fn at(&self, p: usize) -> char {
        self.chars[p - 1]
    }

    pub fn before(&self, c: char, i: usize) -> usize {
        match self.positions.get(&c) {
            Some(ps) => match ps.partition_point(|&p| p <= i) {
                0 => 0,
                n => ps[n - 1],
            },
            None => 0,
        }
    }

    pub fn after(&self, c: char, i: usize) -> usize {
        match self.positions.get(&c) {
            Some(ps) => ps.get(ps.partition_point(|&p| p <= i)).map_or(self.len(), |&p| p - 1),
            None => self.len(),
        }
    }
}

/// Outcome of [`common_segment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegmentMatch {
    NoCommon,
    /// The last character of string `string`'s segment occurs in every
    /// other segment.
    Found {
        string: usize,
        ch: char,
    },
}

/// Looks for a segment whose last character appears in all other segments.
///
/// Segments are `A_l(idx_p[l], idx_r[l]]`. Strings are tried in order and the
/// first hit wins. Any empty segment yields [`SegmentMatch::NoCommon`].
pub fn common_segment(set: &StringSet, idx_p: &[usize], idx_r: &[usize]) -> SegmentMatch {
    let index: Vec<PositionIndex<'_>> = set.iter().map(PositionIndex::new).collect();
    common_segment_indexed(&index, idx_p, idx_r)
}

pub(crate) fn common_segment_indexed(index: &[PositionIndex<'_>], idx_p: &[usize], idx_r: &[usize]) -> SegmentMatch {
    if idx_p.iter().zip(idx_r).any(|(p, r)| p >= r) {
        return SegmentMatch::NoCommon;
    }
    // Rear characters repeat across strings, so each distinct one is
    // checked against all segments once. This keeps a call linear in `L`.
    let mut rejected: HashSet<char> = HashSet::new();
    for (j, a) in index.iter().enumerate() {
        let c = a.at(idx_r[j]);
        if rejected.contains(&c) {
            continue;
        }
        let everywhere = index
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .all(|(i, b)| b.before(c, idx_r[i]) > idx_p[i]);
        if everywhere {
            return SegmentMatch::Found { string: j, ch: c };
        }
        rejected.insert(c);
    }
    SegmentMatch::NoCommon
}

/// Per-string cursor state for the current gap.
#[derive(Debug, Clone)]
struct SegmentCursor {
    /// End of the leftmost match of the confirmed prefix.
    idx_p: Vec<usize>,
    /// Rear of the working segment.
    idx_r: Vec<usize>,
    /// `anchors[l][t]`: rightmost position of `W[t]` in string `l` under the
    /// rightmost embedding of the unconfirmed suffix.
    anchors: Vec<Vec<usize>>,
}

/// A single maximal common subsequence, deterministic for a fixed string
/// order. Returns the empty subsequence when any string is empty.
pub fn one_mcs(set: &StringSet) -> Subsequence {
    if set.iter().any(<[char]>::is_empty) {
        return Subsequence::empty();
    }
    let index: Vec<PositionIndex<'_>> = set.iter().map(PositionIndex::new).collect();
    let ends: Vec<usize> = index.iter().map(|a| a.len() + 1).collect();
    let mut w: Vec<char> = Vec::new();
    let mut cur = SegmentCursor {
        idx_p: vec![0; set.len()],
        idx_r: vec![0; set.len()],
        anchors: vec![Vec::new(); set.len()],
    };

    let mut k = 0;
    loop {
        for (l, r) in cur.idx_r.iter_mut().enumerate() {
            *r = cur.anchors[l].get(k).copied().unwrap_or(ends[l]) - 1;
        }
        loop {
            if cur.idx_p.iter().zip(&cur.idx_r).any(|(p, r)| p >= r) {
                break;
            }
            match common_segment_indexed(&index, &cur.idx_p, &cur.idx_r) {
                SegmentMatch::NoCommon => cur.idx_r.iter_mut().for_each(|r| *r -= 1),
                SegmentMatch::Found { string, ch } => {
                    w.insert(k, ch);
                    for (l, a) in index.iter().enumerate() {
                        let pos = if l == string {
                            cur.idx_r[l]
                        } else {
                            a.before(ch, cur.idx_r[l])
                        };
                        cur.anchors[l].insert(k, pos);
                        cur.idx_r[l] = pos - 1;
                    }
                }
            }
        }
        if k == w.len() {
            break;
        }
        for (l, a) in index.iter().enumerate() {
            cur.idx_p[l] = a.after(w[k], cur.idx_p[l]) + 1;
        }
        k += 1;
    }
    Subsequence::from_chars(w)
}
