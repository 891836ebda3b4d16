//! Kendall tau transition distances over a traversal.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::generator::permutations_visit;
use crate::ranking::factorial;
use crate::seq::SinglyLinkedSeq;

/// Largest `k` [`measure_traversal`] accepts unless a higher limit is passed.
pub const DEFAULT_ENUMERATION_GUARD: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("sequences have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("element at position {0} of the first sequence is missing from the second")]
    NotAPermutation(usize),
    #[error("element at position {0} of the first sequence is repeated")]
    RepeatedElement(usize),
    #[error("k = {k} exceeds the enumeration guard of {guard}")]
    GuardExceeded { k: usize, guard: usize },
    #[error("k must be at least 1")]
    EmptyLength,
}

/// Number of unordered pairs whose relative order differs between `a` and `b`.
///
/// Both slices must hold the same distinct elements. O(k^2).
pub fn kendall_tau<T: PartialEq>(a: &[T], b: &[T]) -> Result<u64, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::LengthMismatch(a.len(), b.len()));
    }
    let mut taken = vec![false; b.len()];
    let mut positions = Vec::with_capacity(a.len());
    for (i, x) in a.iter().enumerate() {
        let Some(p) = b.iter().position(|y| y == x) else {
            return Err(MetricsError::NotAPermutation(i));
        };
        if taken[p] {
            return Err(MetricsError::RepeatedElement(i));
        }
        taken[p] = true;
        positions.push(p);
    }
    let mut discordant = 0u64;
    for (i, &p) in positions.iter().enumerate() {
        discordant += positions[i + 1..].iter().filter(|&&q| q < p).count() as u64;
    }
    Ok(discordant)
}

/// Distance totals for one full traversal of `k` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceStats {
    pub k: usize,
    /// Sum of all transition distances.
    pub cumulative: u64,
    /// `k! - 1`.
    pub transitions: u64,
    /// distance -> number of transitions with that distance
    pub histogram: BTreeMap<u64, u64>,
}

impl DistanceStats {
    /// Mean transition distance, `None` when there are no transitions.
    pub fn average(&self) -> Option<f64> {
        (self.transitions > 0).then(|| self.cumulative as f64 / self.transitions as f64)
    }

    pub fn adjacent_swap_fraction(&self) -> Option<f64> {
        let adjacent = self.histogram.get(&1).copied().unwrap_or(0);
        (self.transitions > 0).then(|| adjacent as f64 / self.transitions as f64)
    }
}

/// Traverses `(0, ..., k-1)` and sums the Kendall tau distance of every
/// consecutive pair of snapshots.
pub fn measure_traversal(k: usize) -> Result<DistanceStats, MetricsError> {
    measure_traversal_with_guard(k, DEFAULT_ENUMERATION_GUARD)
}

pub fn measure_traversal_with_guard(k: usize, guard: usize) -> Result<DistanceStats, MetricsError> {
    if k == 0 {
        return Err(MetricsError::EmptyLength);
    }
    if k > guard {
        return Err(MetricsError::GuardExceeded { k, guard });
    }
    let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
    let mut previous: Vec<u32> = Vec::with_capacity(k);
    let mut current: Vec<u32> = Vec::with_capacity(k);
    let mut stats = DistanceStats { k, cumulative: 0, transitions: 0, histogram: BTreeMap::new() };
    let mut first = true;
    permutations_visit(&mut seq, |view| {
        current.clear();
        current.extend(view.iter().copied());
        if !first {
            let d = kendall_tau(&previous, &current).expect("snapshots are permutations of each other");
            stats.cumulative += d;
            stats.transitions += 1;
            *stats.histogram.entry(d).or_insert(0) += 1;
        }
        first = false;
        std::mem::swap(&mut previous, &mut current);
    });
    Ok(stats)
}

/// Cumulative distance `D_k` from the recurrence, in exact arithmetic.
/// `D_0` is taken to be 0 as well.
pub fn recurrence_distance(k: usize) -> BigUint {
    let mut d = BigUint::zero();
    for j in 2..=k {
        // (j - 3) is negative for j = 2, where the local term is 1.
        let j_signed = j as i128;
        let local = if j % 2 == 0 { 1 + (j_signed - 3) * (j_signed - 1) + 1 } else { j_signed - 1 };
        d = d * BigUint::from(j) + BigUint::try_from(local).expect("local term is positive");
    }
    d
}

/// `D_k / (k! - 1)` in floating point; `None` for `k < 2`.
pub fn recurrence_average(k: usize) -> Option<f64> {
    if k < 2 {
        return None;
    }
    let transitions = factorial(k) - 1u32;
    Some(ratio(&recurrence_distance(k), &transitions))
}

// Ratio of two big integers, scaled so both fit comfortably in f64.
fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(60);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Limit of the average transition distance as `k` grows:
/// `7 cosh(1) - 4 sinh(1) - 5`.
pub fn average_distance_limit() -> f64 {
    7.0 * 1f64.cosh() - 4.0 * 1f64.sinh() - 5.0
}

/// Fraction of transitions that swap two neighbours (distance 1).
pub fn adjacent_swap_fraction(k: usize) -> Result<f64, MetricsError> {
    let stats = measure_traversal(k)?;
    Ok(stats.adjacent_swap_fraction().unwrap_or(0.0))
}
