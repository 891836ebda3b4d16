//! Throughput harness comparing the linked-list generator with two
//! array-based baselines.
//!
//! Every strategy feeds each permutation through the same visitor, a
//! per-permutation hash folded into a wrapping sum. The sum does not depend
//! on visiting order, so all three strategies must report the same checksum.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::generator::permutations_visit;
use crate::seq::SinglyLinkedSeq;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    LinkedList,
    Heap,
    Lexicographic,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::LinkedList, Strategy::Heap, Strategy::Lexicographic];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::LinkedList => "linked-list",
            Strategy::Heap => "heap",
            Strategy::Lexicographic => "lexicographic",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    pub strategy: Strategy,
    pub k: usize,
    pub count: u64,
    pub checksum: u64,
    pub elapsed: Duration,
}

impl BenchResult {
    pub fn per_second(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.count as f64 / secs
        } else {
            f64::INFINITY
        }
    }
}

/// Order-independent accumulator shared by all strategies.
#[derive(Debug, Default, Clone, Copy)]
pub struct Checksum {
    pub count: u64,
    pub sum: u64,
}

impl Checksum {
    #[inline]
    pub fn absorb<'a, I: IntoIterator<Item = &'a u32>>(&mut self, perm: I) {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &e in perm {
            h = (h ^ u64::from(e)).wrapping_mul(0x0100_0000_01b3);
        }
        self.sum = self.sum.wrapping_add(h);
        self.count += 1;
    }
}

pub fn run_linked_list(k: usize) -> Checksum {
    let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
    let mut acc = Checksum::default();
    permutations_visit(&mut seq, |view| acc.absorb(view.iter()));
    acc
}

/// Heap's algorithm, iterative form.
pub fn run_heap(k: usize) -> Checksum {
    let mut a: Vec<u32> = (0..k as u32).collect();
    let mut c = vec![0usize; k];
    let mut acc = Checksum::default();
    acc.absorb(&a);
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            acc.absorb(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc
}

/// Rearranges `a` into its lexicographic successor; false at the last one.
pub fn next_lexicographic(a: &mut [u32]) -> bool {
    let Some(pivot) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = a.iter().rposition(|&x| x > a[pivot]).expect("pivot has a larger element after it");
    a.swap(pivot, successor);
    a[pivot + 1..].reverse();
    true
}

pub fn run_lexicographic(k: usize) -> Checksum {
    let mut a: Vec<u32> = (0..k as u32).collect();
    let mut acc = Checksum::default();
    loop {
        acc.absorb(&a);
        if !next_lexicographic(&mut a) {
            break;
        }
    }
    acc
}

pub fn run(strategy: Strategy, k: usize) -> BenchResult {
    let start = Instant::now();
    let acc = match strategy {
        Strategy::LinkedList => run_linked_list(black_box(k)),
        Strategy::Heap => run_heap(black_box(k)),
        Strategy::Lexicographic => run_lexicographic(black_box(k)),
    };
    let elapsed = start.elapsed();
    let acc = black_box(acc);
    BenchResult { strategy, k, count: acc.count, checksum: acc.sum, elapsed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_strategies_agree() {
        for k in 0..=7 {
            let results: Vec<_> = Strategy::ALL.iter().map(|&s| run(s, k)).collect();
            let expected = (1..=k as u64).product::<u64>();
            for r in &results {
                assert_eq!(r.count, expected, "{} k={k}", r.strategy);
                assert_eq!(r.checksum, results[0].checksum, "{} k={k}", r.strategy);
            }
        }
    }

    #[test]
    fn lexicographic_successor() {
        let mut a = [0, 2, 1];
        assert!(next_lexicographic(&mut a));
        assert_eq!(a, [1, 0, 2]);
        let mut last = [2, 1, 0];
        assert!(!next_lexicographic(&mut last));
    }

    #[test]
    fn deterministic_checksum() {
        assert_eq!(run(Strategy::LinkedList, 6).checksum, run(Strategy::LinkedList, 6).checksum);
    }
}
