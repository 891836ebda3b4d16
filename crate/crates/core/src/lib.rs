//! Permutation iteration on a singly linked list.
//!
//! [`generator::permutations_visit`] walks all `k!` arrangements of a
//! [`SinglyLinkedSeq`] by moving one node per step. Nodes are only relinked
//! or have their payloads swapped, so the traversal allocates nothing.
//! [`ranking`] jumps straight to the permutation at a given position and
//! back, and [`metrics`] measures how far elements travel between
//! consecutive permutations.
//!
//! ```
//! use linkperm::{permutations_visit, SinglyLinkedSeq};
//!
//! let mut seq = SinglyLinkedSeq::from_elements(['a', 'b', 'c']);
//! let mut seen = Vec::new();
//! permutations_visit(&mut seq, |p| seen.push(p.iter().collect::<String>()));
//! assert_eq!(seen, ["abc", "acb", "cab", "cba", "bca", "bac"]);
//! ```

pub mod bench;
pub mod generator;
pub mod metrics;
pub mod oracle;
pub mod ranking;
pub mod seq;
pub mod verify;

pub use generator::{
    apply_move, move_stream, permutations_iter, permutations_visit, schedule, try_permutations_visit, MoveRecord,
    MoveStream, PermutationView, Permutations, Side,
};
pub use metrics::{average_distance_limit, kendall_tau, measure_traversal, recurrence_distance, DistanceStats};
pub use ranking::{factorial, last_perm, quick_index, quick_perm, reversal_indices, CanonicalPermutation, RankIndex};
pub use seq::{NodeHandle, SeqError, SinglyLinkedSeq};
