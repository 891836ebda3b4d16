//! Permutation generation by in-place relinking.
//!
//! Every sublist of length `k` is handled by `k` recursive calls on the
//! sublist one element shorter. The first call sees the sublist untouched
//! (the no-op), and each later call is preceded by exactly one move that
//! brings a new element to the head of the sublist:
//!
//! ```text
//! k=2  no-op left
//! k=3  no-op left  left
//! k=4  no-op left  right left
//! k=5  no-op left  left  left  left
//! k=6  no-op left  right right right left
//! ```
//!
//! A left move takes the element just after the sublist head, a right move
//! takes the last element of the whole list. The recursion hands the
//! penultimate node back up so a right move never has to walk the list.

use std::fmt;
use std::ops::ControlFlow;

use crate::seq::{NodeHandle, SeqError, SinglyLinkedSeq};

/// Where the element brought to the sublist head was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    NoOp,
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::NoOp => "noop",
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One transition of the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MoveRecord {
    /// Start of the sublist, 0-based.
    pub index: usize,
    pub side: Side,
    /// Sublist length at this move.
    pub sublist_len: usize,
}

impl MoveRecord {
    pub fn left(index: usize, sublist_len: usize) -> Self {
        MoveRecord { index, side: Side::Left, sublist_len }
    }

    pub fn right(index: usize, sublist_len: usize) -> Self {
        MoveRecord { index, side: Side::Right, sublist_len }
    }

    /// Number of positions the moved element travels.
    pub fn span(&self) -> usize {
        match self.side {
            Side::NoOp => 0,
            Side::Left => 1,
            Side::Right => self.sublist_len - 1,
        }
    }
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} side={} k={}", self.index, self.side, self.sublist_len)
    }
}

/// Source of the element inserted before call number `slot` of a sublist of
/// length `sublist_len`.
#[inline]
pub fn side_for_slot(slot: usize, sublist_len: usize) -> Side {
    if slot == 0 {
        Side::NoOp
    } else if slot == 1 || slot == sublist_len - 1 || sublist_len % 2 == 1 {
        Side::Left
    } else {
        Side::Right
    }
}

/// Read-only view of the list handed to visitors.
///
/// It borrows the list immutably, so a visitor cannot modify the list while
/// the traversal is suspended on it.
#[derive(Clone, Copy)]
pub struct PermutationView<'a, T> {
    seq: &'a SinglyLinkedSeq<T>,
}

impl<'a, T> PermutationView<'a, T> {
    pub fn new(seq: &'a SinglyLinkedSeq<T>) -> Self {
        PermutationView { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn iter(&self) -> crate::seq::Iter<'a, T> {
        self.seq.iter()
    }

    pub fn to_vec(&self) -> Vec<T>
    where
        T: Clone,
    {
        self.seq.to_vec()
    }

    pub fn as_seq(&self) -> &'a SinglyLinkedSeq<T> {
        self.seq
    }
}

impl<'a, T> IntoIterator for &PermutationView<'a, T> {
    type Item = &'a T;
    type IntoIter = crate::seq::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.seq.iter()
    }
}

impl<T: fmt::Debug> fmt::Debug for PermutationView<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self.seq, f)
    }
}

/// Calls `visitor` once per permutation of `seq`, `max(1, len!)` times in all.
///
/// Exactly one element is relocated between consecutive calls and no node is
/// allocated. On return the list holds the last permutation of the order
/// (see [`crate::ranking::last_perm_pattern`]).
pub fn permutations_visit<T, F>(seq: &mut SinglyLinkedSeq<T>, mut visitor: F)
where
    F: FnMut(&PermutationView<'_, T>),
{
    let _ = try_permutations_visit(seq, |view| {
        visitor(view);
        ControlFlow::<()>::Continue(())
    });
}

/// Like [`permutations_visit`], but the visitor can stop the traversal early
/// by returning [`ControlFlow::Break`]. The list is then left at the
/// permutation being visited.
pub fn try_permutations_visit<T, B, F>(seq: &mut SinglyLinkedSeq<T>, mut visitor: F) -> ControlFlow<B>
where
    F: FnMut(&PermutationView<'_, T>) -> ControlFlow<B>,
{
    let len = seq.len();
    if len < 2 {
        return visitor(&PermutationView::new(seq));
    }
    let sentinel = seq.sentinel();
    match descend(seq, sentinel, len, &mut visitor) {
        ControlFlow::Continue(_) => ControlFlow::Continue(()),
        ControlFlow::Break(b) => ControlFlow::Break(b),
    }
}

/// Enumerates the sublist of length `k >= 2` that follows `prev`, which always
/// extends to the end of the list. Returns the penultimate node of the list.
fn descend<T, B, F>(
    seq: &mut SinglyLinkedSeq<T>,
    prev: NodeHandle,
    k: usize,
    visitor: &mut F,
) -> ControlFlow<B, NodeHandle>
where
    F: FnMut(&PermutationView<'_, T>) -> ControlFlow<B>,
{
    if k == 2 {
        let a = seq.succ(prev);
        let b = seq.succ(a);
        visitor(&PermutationView::new(seq))?;
        seq.swap_values(a, b);
        visitor(&PermutationView::new(seq))?;
        return ControlFlow::Continue(a);
    }

    let mut penultimate = descend(seq, seq.succ(prev), k - 1, visitor)?;
    for slot in 1..k {
        match side_for_slot(slot, k) {
            Side::Left => {
                let head = seq.succ(prev);
                seq.swap_values(head, seq.succ(head));
            }
            Side::Right => {
                let last = seq.extract_after(penultimate);
                seq.insert_after(prev, last);
            }
            Side::NoOp => unreachable!("slot 0 is never a move"),
        }
        penultimate = descend(seq, seq.succ(prev), k - 1, visitor)?;
    }
    ControlFlow::Continue(penultimate)
}

/// Lazily produced moves for a list of length `len`, NoOps excluded.
///
/// State is one slot counter per recursion depth, so memory is O(len). The
/// stream has `len! - 1` records (none for `len < 2`).
#[derive(Debug, Clone)]
pub struct MoveStream {
    len: usize,
    // slots[d] is the current call number at depth d, sublist length len - d.
    slots: Vec<usize>,
}

impl MoveStream {
    pub fn new(len: usize) -> Self {
        MoveStream { len, slots: vec![0; len.saturating_sub(1)] }
    }

    /// Length of the list the stream is meant for.
    pub fn list_len(&self) -> usize {
        self.len
    }

    /// Advances to the next permutation. Returns the move and the depth from
    /// which frames were restarted at slot 0.
    fn step(&mut self) -> Option<(MoveRecord, usize)> {
        let depth = (0..self.slots.len()).rev().find(|&d| self.slots[d] + 1 < self.len - d)?;
        self.slots[depth] += 1;
        for slot in &mut self.slots[depth + 1..] {
            *slot = 0;
        }
        let sublist_len = self.len - depth;
        let record = MoveRecord { index: depth, side: side_for_slot(self.slots[depth], sublist_len), sublist_len };
        Some((record, depth + 1))
    }
}

impl Iterator for MoveStream {
    type Item = MoveRecord;

    fn next(&mut self) -> Option<MoveRecord> {
        self.step().map(|(record, _)| record)
    }
}

/// Moves of a full traversal of a length-`len` list, NoOps excluded.
pub fn move_stream(len: usize) -> MoveStream {
    MoveStream::new(len)
}

/// Full depth-first schedule: each sublist's NoOp record is emitted before the
/// records of its own sub-calls.
#[derive(Debug, Clone)]
pub struct Schedule {
    moves: MoveStream,
    // NoOp records still to emit, as a depth range.
    pending: std::ops::Range<usize>,
}

/// Schedule for a list of length `len` including NoOp records.
pub fn schedule(len: usize) -> Schedule {
    let depth = len.saturating_sub(1);
    Schedule { moves: MoveStream::new(len), pending: 0..depth }
}

impl Iterator for Schedule {
    type Item = MoveRecord;

    fn next(&mut self) -> Option<MoveRecord> {
        if let Some(depth) = self.pending.next() {
            return Some(MoveRecord { index: depth, side: Side::NoOp, sublist_len: self.moves.len - depth });
        }
        let (record, restart) = self.moves.step()?;
        self.pending = restart..self.moves.slots.len();
        Some(record)
    }
}

/// Applies one move positionally. O(len) for right moves, O(index) for left.
pub fn apply_move<T>(seq: &mut SinglyLinkedSeq<T>, m: MoveRecord) -> Result<(), SeqError> {
    let len = seq.len();
    if m.side == Side::NoOp {
        return Ok(());
    }
    if m.index + 1 >= len {
        return Err(SeqError::IndexOutOfRange { index: m.index + 1, len });
    }
    let prev = seq.predecessor_of(m.index)?;
    match m.side {
        Side::Left => {
            let head = seq.succ(prev);
            seq.swap_values(head, seq.succ(head));
        }
        Side::Right => {
            let penultimate = seq.penultimate_from(prev);
            let last = seq.extract_after(penultimate);
            seq.insert_after(prev, last);
        }
        Side::NoOp => {}
    }
    Ok(())
}

/// External iterator over the permutations of an owned list.
///
/// Use [`next_view`](Self::next_view) to borrow each permutation in place, or
/// the `Iterator` impl to get owned snapshots.
#[derive(Debug, Clone)]
pub struct Permutations<T> {
    seq: SinglyLinkedSeq<T>,
    moves: MoveStream,
    started: bool,
}

/// External iterator yielding the same order as [`permutations_visit`].
pub fn permutations_iter<T>(seq: SinglyLinkedSeq<T>) -> Permutations<T> {
    Permutations::new(seq)
}

impl<T> Permutations<T> {
    pub fn new(seq: SinglyLinkedSeq<T>) -> Self {
        let moves = MoveStream::new(seq.len());
        Permutations { seq, moves, started: false }
    }

    pub fn next_view(&mut self) -> Option<PermutationView<'_, T>> {
        if !self.started {
            self.started = true;
        } else {
            let m = self.moves.next()?;
            apply_move(&mut self.seq, m).expect("move stream matches the list length");
        }
        Some(PermutationView::new(&self.seq))
    }

    pub fn as_seq(&self) -> &SinglyLinkedSeq<T> {
        &self.seq
    }

    pub fn into_inner(self) -> SinglyLinkedSeq<T> {
        self.seq
    }
}

impl<T: Clone> Iterator for Permutations<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        self.next_view().map(|v| v.to_vec())
    }
}
