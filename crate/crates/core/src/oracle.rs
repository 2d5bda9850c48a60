//! Exact ground truth for small instances.
//!
//! [`lcs_dp`] fills the full `L`-dimensional dynamic-programming table and
//! [`enumerate_mcs`] walks every subsequence of the shortest string. Both are
//! exponential in `L` and guarded accordingly.

use std::collections::{BTreeSet, HashSet};

use crate::error::{McsError, Result};
use crate::ops::{is_common, is_maximal};
use crate::types::{StringSet, Subsequence};

pub const LCS_MAX_STRINGS: usize = 4;
pub const LCS_MAX_TABLE: u128 = 10_000_000;
pub const ENUMERATE_MAX_STRINGS: usize = 4;
pub const ENUMERATE_MAX_LEN: usize = 12;

/// One longest common subsequence via an `L`-dimensional table.
///
/// Ties are broken by preferring to drop the last character of the
/// lowest-indexed string, so the result is deterministic.
pub fn lcs_dp(set: &StringSet) -> Result<Subsequence> {
    let l = set.len();
    if l > LCS_MAX_STRINGS {
        return Err(McsError::GuardExceeded {
            what: "number of strings for the LCS table",
            estimate: l as u128,
            limit: LCS_MAX_STRINGS as u128,
        });
    }
    let product: u128 = set.iter().map(|s| s.len() as u128).product();
    if product > LCS_MAX_TABLE {
        return Err(McsError::GuardExceeded {
            what: "LCS table size",
            estimate: product,
            limit: LCS_MAX_TABLE,
        });
    }

    let strings = set.strings();
    let dims: Vec<usize> = strings.iter().map(|s| s.len() + 1).collect();
    let mut strides = vec![1usize; l];
    for i in (0..l.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let size: usize = dims.iter().product();
    let mut table = vec![0u32; size];

    let mut idx = vec![0usize; l];
    for flat in 0..size {
        // idx tracks the multi-index of `flat` in row-major order.
        if flat > 0 {
            let mut d = l - 1;
            loop {
                idx[d] += 1;
                if idx[d] < dims[d] {
                    break;
                }
                idx[d] = 0;
                d -= 1;
            }
        }
        if idx.contains(&0) {
            continue;
        }
        let c = strings[0][idx[0] - 1];
        table[flat] = if (1..l).all(|d| strings[d][idx[d] - 1] == c) {
            let diag: usize = strides.iter().sum();
            table[flat - diag] + 1
        } else {
            strides.iter().map(|&s| table[flat - s]).max().unwrap_or(0)
        };
    }

    let mut out = Vec::with_capacity(table[size - 1] as usize);
    let mut idx: Vec<usize> = dims.iter().map(|d| d - 1).collect();
    let mut flat = size - 1;
    while table[flat] > 0 {
        let c = strings[0][idx[0] - 1];
        if (1..l).all(|d| strings[d][idx[d] - 1] == c) {
            out.push(c);
            for (i, s) in idx.iter_mut().zip(&strides) {
                *i -= 1;
                flat -= s;
            }
            continue;
        }
        let d = (0..l)
            .find(|&d| table[flat - strides[d]] == table[flat])
            .expect("some drop preserves the length");
        idx[d] -= 1;
        flat -= strides[d];
    }
    out.reverse();
    Ok(Subsequence::from_chars(out))
}

/// The exact set of maximal common subsequences, by exhaustive search over
/// subsequences of the shortest string.
pub fn enumerate_mcs(set: &StringSet) -> Result<BTreeSet<Subsequence>> {
    if set.len() > ENUMERATE_MAX_STRINGS {
        return Err(McsError::GuardExceeded {
            what: "number of strings for MCS enumeration",
            estimate: set.len() as u128,
            limit: ENUMERATE_MAX_STRINGS as u128,
        });
    }
    let shortest = set.get(set.shortest_index()).unwrap_or(&[]);
    if shortest.len() > ENUMERATE_MAX_LEN {
        return Err(McsError::GuardExceeded {
            what: "shortest string length for MCS enumeration",
            estimate: shortest.len() as u128,
            limit: ENUMERATE_MAX_LEN as u128,
        });
    }

    let mut seen: HashSet<Vec<char>> = HashSet::new();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << shortest.len()) {
        let w: Vec<char> = shortest
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect();
        if !seen.insert(w.clone()) {
            continue;
        }
        if is_common(set, &w) && is_maximal(set, &w) {
            out.insert(Subsequence::from_chars(w));
        }
    }
    Ok(out)
}
