//! Ranking and unranking in generation order.
//!
//! A full recursive call on a suffix always ends in a fixed rearrangement of
//! that suffix ([`last_perm_pattern`]), so whole subtrees of the recursion can
//! be skipped in one step. Unranking subtracts the largest factorials it can
//! from the index and replays only the moves at the levels that change;
//! ranking runs the same steps until each position holds its target element.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::seq::{NodeHandle, SinglyLinkedSeq};

/// Position of a permutation in generation order. Arbitrary precision.
pub type RankIndex = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("index {index} out of range for {len} elements ({len}! permutations)")]
    IndexOutOfRange { index: RankIndex, len: usize },
    #[error("suffix start {index} out of range for list of length {len}")]
    SuffixOutOfRange { index: usize, len: usize },
    #[error("value {value} at position {position} is outside 0..{len}")]
    ValueOutOfRange { position: usize, value: usize, len: usize },
    #[error("value {value} appears more than once (positions {first} and {second})")]
    Duplicate { value: usize, first: usize, second: usize },
}

/// A bijection on `0..k` given in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalPermutation(Vec<usize>);

impl CanonicalPermutation {
    pub fn new(values: Vec<usize>) -> Result<Self, RankError> {
        let len = values.len();
        let mut seen = vec![usize::MAX; len];
        for (position, &value) in values.iter().enumerate() {
            if value >= len {
                return Err(RankError::ValueOutOfRange { position, value, len });
            }
            if seen[value] != usize::MAX {
                return Err(RankError::Duplicate { value, first: seen[value], second: position });
            }
            seen[value] = position;
        }
        Ok(CanonicalPermutation(values))
    }

    pub fn identity(len: usize) -> Self {
        CanonicalPermutation((0..len).collect())
    }

    /// `(len-1, ..., 1, 0)`.
    pub fn reversal(len: usize) -> Self {
        CanonicalPermutation((0..len).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl TryFrom<Vec<usize>> for CanonicalPermutation {
    type Error = RankError;

    fn try_from(values: Vec<usize>) -> Result<Self, RankError> {
        CanonicalPermutation::new(values)
    }
}

pub fn factorial(k: usize) -> RankIndex {
    (2..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Positional pattern of the last permutation produced for `len` elements:
/// entry `t` is the original position of the element that ends at `t`.
pub fn last_perm_pattern(len: usize) -> Vec<usize> {
    match len {
        0 | 1 => (0..len).collect(),
        4 => vec![1, 2, 3, 0],
        _ if len % 2 == 1 || len == 2 => {
            let mut p: Vec<usize> = (0..len).collect();
            p.swap(0, 1);
            p
        }
        _ => {
            let mut p = vec![1, 4, 3];
            p.extend(5..len);
            p.extend([2, 0]);
            p
        }
    }
}

/// Replaces the suffix starting at position `i` with the last permutation a
/// full traversal of that suffix would produce. O(len - i) after the walk to
/// position `i`; nodes are relinked, none are allocated.
pub fn last_perm<T>(seq: &mut SinglyLinkedSeq<T>, i: usize) -> Result<(), RankError> {
    let prev = seq.predecessor_of(i).map_err(|_| RankError::SuffixOutOfRange { index: i, len: seq.len() })?;
    last_perm_after(seq, prev);
    Ok(())
}

fn last_perm_after<T>(seq: &mut SinglyLinkedSeq<T>, prev: NodeHandle) {
    let suffix = seq.count_after(prev);
    match suffix {
        0 | 1 => {}
        4 => {
            // (a0 a1 a2 a3) -> (a1 a2 a3 a0)
            let a0 = seq.extract_after(prev);
            let tail = seq.last_from(prev);
            seq.insert_after(tail, a0);
        }
        _ if suffix % 2 == 1 || suffix == 2 => {
            let a0 = seq.succ(prev);
            let a1 = seq.extract_after(a0);
            seq.insert_after(prev, a1);
        }
        _ => {
            // (a0 a1 a2 a3 a4 a5 .. a_{j-1}) -> (a1 a4 a3 a5 .. a_{j-1} a2 a0)
            let a0 = seq.extract_after(prev);
            let a1 = seq.succ(prev);
            let a2 = seq.extract_after(a1);
            let a3 = seq.succ(a1);
            let a4 = seq.extract_after(a3);
            seq.insert_after(a1, a4);
            let tail = seq.last_from(a3);
            seq.insert_after(tail, a2);
            seq.insert_after(a2, a0);
        }
    }
}

/// One compressed step at the sublist after `prev`: finish the sub-call on the
/// rest, then bring in the element for call `step + 1` of a sublist of
/// length `rest + 1`.
fn compressed_step<T>(seq: &mut SinglyLinkedSeq<T>, prev: NodeHandle, step: usize, rest: usize) {
    let head = seq.succ(prev);
    last_perm_after(seq, head);
    if step == 0 || step + 1 == rest || rest.is_multiple_of(2) {
        let moved = seq.extract_after(seq.succ(prev));
        seq.insert_after(prev, moved);
    } else {
        let penultimate = seq.penultimate_from(prev);
        let last = seq.extract_after(penultimate);
        seq.insert_after(prev, last);
    }
}

/// Rearranges `seq` into the permutation visited at 0-based position `n` of
/// a traversal started from its current order. O(len^3).
pub fn quick_perm<T>(seq: &mut SinglyLinkedSeq<T>, n: &RankIndex) -> Result<(), RankError> {
    let len = seq.len();
    if *n >= factorial(len) {
        return Err(RankError::IndexOutOfRange { index: n.clone(), len });
    }
    let mut n = n.clone();
    let mut rest = len;
    let mut prev = seq.sentinel();
    while !n.is_zero() {
        rest -= 1;
        let block = factorial(rest);
        let steps = (&n / &block).to_usize().expect("step count is at most len");
        for step in 0..steps {
            compressed_step(seq, prev, step, rest);
        }
        n %= &block;
        debug_assert!(n < block);
        prev = seq.succ(prev);
    }
    Ok(())
}

/// Index of `target` in the traversal of `(0, 1, ..., k-1)`.
pub fn quick_index(target: &CanonicalPermutation) -> RankIndex {
    let len = target.len();
    let target = target.as_slice();
    let mut seq = SinglyLinkedSeq::from_elements(0..len);
    let mut n = BigUint::zero();
    let mut rest = len;
    let mut prev = seq.sentinel();
    for &wanted in target {
        rest -= 1;
        let block = factorial(rest);
        let mut step = 0;
        while *seq.value(seq.succ(prev)) != wanted {
            compressed_step(&mut seq, prev, step, rest);
            n += &block;
            step += 1;
            debug_assert!(step <= rest, "target element not reachable at this level");
        }
        prev = seq.succ(prev);
    }
    n
}

/// Ranks an arbitrary slice of `usize`, validating it first.
pub fn quick_index_of(values: &[usize]) -> Result<RankIndex, RankError> {
    Ok(quick_index(&CanonicalPermutation::new(values.to_vec())?))
}

/// Indices of `(k-1, ..., 1, 0)` for `k = 1..=max_k`.
pub fn reversal_indices(max_k: usize) -> Vec<RankIndex> {
    (1..=max_k).map(|k| quick_index(&CanonicalPermutation::reversal(k))).collect()
}
