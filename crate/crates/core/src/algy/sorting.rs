//! Comparison sorts driven by a partial comparator.
//!
//! The comparator answers from what is already known and reports the first
//! unknown pair instead of guessing. A questioner reruns the sort from
//! scratch after every answer; since the sorts are deterministic, the first
//! unknown pair is the next question.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::game::GameState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SortMethod {
    BinaryInsertion,
    /// Ford–Johnson merge insertion.
    MergeInsertion,
}

impl fmt::Display for SortMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BinaryInsertion => "binary",
            Self::MergeInsertion => "fj",
        })
    }
}

impl FromStr for SortMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" | "binary-insertion" => Ok(Self::BinaryInsertion),
            "fj" | "merge-insertion" => Ok(Self::MergeInsertion),
            _ => Err(format!("unknown sort method {s:?}")),
        }
    }
}

/// Worst-case comparisons used by `method` on `n` items.
pub fn sorting_comparison_count(n: usize, method: SortMethod) -> u64 {
    // smallest j >= 0 with 2^j >= num / den
    fn ceil_log2_ratio(num: u64, den: u64) -> u64 {
        let mut j = 0;
        while (den << j) < num {
            j += 1;
        }
        j
    }
    let n = n as u64;
    match method {
        SortMethod::BinaryInsertion => (2..=n).map(|i| ceil_log2_ratio(i, 1)).sum(),
        SortMethod::MergeInsertion => (1..=n).map(|k| ceil_log2_ratio(3 * k, 4)).sum(),
    }
}

/// A comparison whose outcome is not known yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pending(pub usize, pub usize);

/// `Ok(a < b)` when known.
pub type Less<'a> = dyn FnMut(usize, usize) -> Result<bool, Pending> + 'a;

/// Comparator reading the revealed order of a game state.
pub fn state_less(state: &GameState) -> impl FnMut(usize, usize) -> Result<bool, Pending> + '_ {
    move |a, b| {
        if state.precedes(a, b) {
            Ok(true)
        } else if state.precedes(b, a) {
            Ok(false)
        } else {
            Err(Pending(a, b))
        }
    }
}

pub fn sort_by(method: SortMethod, items: &[usize], less: &mut Less) -> Result<Vec<usize>, Pending> {
    match method {
        SortMethod::BinaryInsertion => binary_insertion(items, less),
        SortMethod::MergeInsertion => merge_insertion(items, less),
    }
}

/// Inserts `x` into `chain[..bound]` by binary search.
fn insert(chain: &mut Vec<usize>, x: usize, bound: usize, less: &mut Less) -> Result<(), Pending> {
    let (mut lo, mut hi) = (0, bound);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if less(x, chain[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    chain.insert(lo, x);
    Ok(())
}

pub fn binary_insertion(items: &[usize], less: &mut Less) -> Result<Vec<usize>, Pending> {
    let mut chain = Vec::with_capacity(items.len());
    for &x in items {
        let len = chain.len();
        insert(&mut chain, x, len, less)?;
    }
    Ok(chain)
}

pub fn merge_insertion(items: &[usize], less: &mut Less) -> Result<Vec<usize>, Pending> {
    if items.len() <= 1 {
        return Ok(items.to_vec());
    }
    let mut winners = Vec::with_capacity(items.len() / 2);
    let mut partner = std::collections::HashMap::new();
    for pair in items.chunks_exact(2) {
        let (a, b) = (pair[0], pair[1]);
        let (lo, hi) = if less(a, b)? { (a, b) } else { (b, a) };
        winners.push(hi);
        partner.insert(hi, lo);
    }
    let winners = merge_insertion(&winners, less)?;

    let mut chain = Vec::with_capacity(items.len());
    chain.push(partner[&winners[0]]);
    chain.extend_from_slice(&winners);

    // pending[i] is the loser paired with winners[i]; a trailing odd item has
    // no winner and may land anywhere.
    let mut pending: Vec<(usize, Option<usize>)> = winners.iter().map(|w| (partner[w], Some(*w))).collect();
    if items.len() % 2 == 1 {
        pending.push((items[items.len() - 1], None));
    }

    // Insert in groups ending at the Jacobsthal-like indices 3, 5, 11, 21, ...
    // (1-based), each group back to front, so every search covers at most
    // 2^k - 1 chain elements.
    let total = pending.len();
    let (mut prev, mut k) = (1usize, 2u32);
    while prev < total {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let t = ((1i64 << (k + 1)) + sign) / 3;
        let end = (t as usize).min(total);
        for idx in (prev + 1..=end).rev() {
            let (x, w) = pending[idx - 1];
            let bound = match w {
                Some(w) => chain.iter().position(|&c| c == w).expect("winner stays in chain"),
                None => chain.len(),
            };
            insert(&mut chain, x, bound, less)?;
        }
        prev = end;
        k += 1;
    }
    Ok(chain)
}
