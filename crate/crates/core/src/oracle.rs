//! Reference implementation on a plain `Vec`.
//!
//! This is the positional form of the algorithm: remove at an index, insert
//! at an index, recompute the length on every call. It shares no code with
//! the linked list or the generator, so the two can check each other.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigUint;
use thiserror::Error;

use crate::generator::{MoveRecord, Side};
use crate::ranking::{CanonicalPermutation, RankIndex};

/// Largest input the oracle will enumerate.
pub const ORACLE_GUARD: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} elements exceeds the oracle limit of {ORACLE_GUARD}")]
    GuardExceeded(usize),
    #[error("permutation not found in the traversal")]
    NotFound,
}

/// Every snapshot of a traversal and the move that led to each one after the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleTrace<T> {
    pub snapshots: Vec<Vec<T>>,
    pub moves: Vec<MoveRecord>,
}

pub fn oracle_permutations<T: Clone>(items: &[T]) -> Result<OracleTrace<T>, OracleError> {
    if items.len() > ORACLE_GUARD {
        return Err(OracleError::GuardExceeded(items.len()));
    }
    let mut trace = OracleTrace { snapshots: Vec::new(), moves: Vec::new() };
    let mut list = items.to_vec();
    permutations(&mut list, 0, &mut trace);
    Ok(trace)
}

fn relocate<T>(list: &mut Vec<T>, from: usize, to: usize) {
    let e = list.remove(from);
    list.insert(to, e);
}

fn permutations<T: Clone>(list: &mut Vec<T>, i: usize, trace: &mut OracleTrace<T>) {
    let n = list.len();
    if i + 1 >= n {
        trace.snapshots.push(list.clone());
        return;
    }
    let k = n - i;
    permutations(list, i + 1, trace);

    relocate(list, i + 1, i);
    trace.moves.push(MoveRecord { index: i, side: Side::Left, sublist_len: k });
    permutations(list, i + 1, trace);

    for _ in 0..k.saturating_sub(3) {
        if k.is_multiple_of(2) {
            relocate(list, n - 1, i);
            trace.moves.push(MoveRecord { index: i, side: Side::Right, sublist_len: k });
        } else {
            relocate(list, i + 1, i);
            trace.moves.push(MoveRecord { index: i, side: Side::Left, sublist_len: k });
        }
        permutations(list, i + 1, trace);
    }

    if k > 2 {
        relocate(list, i + 1, i);
        trace.moves.push(MoveRecord { index: i, side: Side::Left, sublist_len: k });
        permutations(list, i + 1, trace);
    }
}

/// Outcome of [`verify_complete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub complete: bool,
    /// First snapshot that repeats an earlier one.
    pub first_duplicate: Option<usize>,
    /// First snapshot that is not a rearrangement of the input.
    pub first_foreign: Option<usize>,
    pub diagnostics: Vec<String>,
}

/// Checks that the snapshots are `k!` pairwise-distinct rearrangements of `items`.
pub fn verify_complete<T>(trace: &OracleTrace<T>, items: &[T]) -> CompletenessReport
where
    T: Clone + Eq + Hash + std::fmt::Debug,
{
    let mut report =
        CompletenessReport { complete: true, first_duplicate: None, first_foreign: None, diagnostics: Vec::new() };
    let expected = (1..=items.len()).product::<usize>();
    if trace.snapshots.len() != expected {
        report.diagnostics.push(format!("expected {expected} snapshots, found {}", trace.snapshots.len()));
    }
    let reference = counts(items);
    let mut seen: HashMap<&[T], usize> = HashMap::with_capacity(trace.snapshots.len());
    for (idx, snap) in trace.snapshots.iter().enumerate() {
        if report.first_foreign.is_none() && counts(snap) != reference {
            report.first_foreign = Some(idx);
            report.diagnostics.push(format!("snapshot {idx} {snap:?} is not a permutation of the input"));
        }
        if let Some(&earlier) = seen.get(snap.as_slice()) {
            if report.first_duplicate.is_none() {
                report.first_duplicate = Some(idx);
                report.diagnostics.push(format!("snapshot {idx} {snap:?} repeats snapshot {earlier}"));
            }
        } else {
            seen.insert(snap, idx);
        }
    }
    report.complete = report.diagnostics.is_empty();
    report
}

fn counts<T: Eq + Hash>(s: &[T]) -> HashMap<&T, usize> {
    let mut m = HashMap::new();
    for x in s {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Linear scan for `target` in the traversal of the identity.
pub struct BruteForceIndexer {
    trace: OracleTrace<usize>,
}

impl BruteForceIndexer {
    pub fn new(len: usize) -> Result<Self, OracleError> {
        let identity: Vec<usize> = (0..len).collect();
        Ok(BruteForceIndexer { trace: oracle_permutations(&identity)? })
    }

    pub fn index_of(&self, target: &[usize]) -> Result<RankIndex, OracleError> {
        self.trace.snapshots.iter().position(|s| s.as_slice() == target).map(BigUint::from).ok_or(OracleError::NotFound)
    }

    pub fn trace(&self) -> &OracleTrace<usize> {
        &self.trace
    }
}

pub fn brute_force_index(target: &CanonicalPermutation) -> Result<RankIndex, OracleError> {
    BruteForceIndexer::new(target.len())?.index_of(target.as_slice())
}
