//! Sentinel-headed singly linked list backed by a node arena.
//!
//! Nodes live in a `Vec` and are addressed by [`NodeHandle`]. A node is
//! never freed: extracting it only unlinks it, and it can be linked back in
//! anywhere. The arena length is therefore the number of node constructions
//! over the life of the list, which is what [`SinglyLinkedSeq::allocation_count`]
//! reports.
//!
//! The hot-path primitives are [`extract_after`](SinglyLinkedSeq::extract_after)
//! and [`insert_after`](SinglyLinkedSeq::insert_after), both O(1). Positional
//! helpers walk the chain and cost O(i).

use std::fmt;

use thiserror::Error;

const NIL: u32 = u32::MAX;
const DETACHED: u32 = u32::MAX - 1;
const MAX_NODES: usize = (u32::MAX - 2) as usize;

/// Reference to one node of a [`SinglyLinkedSeq`].
///
/// Handles are plain indices. They stay valid for the whole life of the list
/// because nodes are reused rather than destroyed.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeHandle(u32);

impl NodeHandle {
    pub(crate) const SENTINEL: NodeHandle = NodeHandle(0);

    pub fn is_sentinel(self) -> bool {
        self.0 == 0
    }

    /// Raw arena slot, stable for the life of the list.
    pub fn slot(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for NodeHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sentinel() {
            f.write_str("NodeHandle(sentinel)")
        } else {
            write!(f, "NodeHandle({})", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index {index} out of range for list of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("node {0:?} is not detached")]
    NotDetached(NodeHandle),
}

/// Mutable singly linked list with an always-present sentinel node.
#[derive(Clone)]
pub struct SinglyLinkedSeq<T> {
    // next[0] belongs to the sentinel; element node h stores its value in values[h - 1].
    next: Vec<u32>,
    values: Vec<T>,
    len: usize,
}

impl<T> Default for SinglyLinkedSeq<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> SinglyLinkedSeq<T> {
    pub fn new() -> Self {
        SinglyLinkedSeq { next: vec![NIL], values: Vec::new(), len: 0 }
    }

    /// Builds a list holding `items` in order.
    pub fn from_elements<I: IntoIterator<Item = T>>(items: I) -> Self {
        let items = items.into_iter();
        let mut seq = SinglyLinkedSeq {
            next: Vec::with_capacity(items.size_hint().0 + 1),
            values: Vec::with_capacity(items.size_hint().0),
            len: 0,
        };
        seq.next.push(NIL);
        let mut tail = NodeHandle::SENTINEL;
        for item in items {
            let node = seq.alloc(item);
            seq.next[tail.slot()] = node.0;
            seq.next[node.slot()] = NIL;
            seq.len += 1;
            tail = node;
        }
        seq
    }

    fn alloc(&mut self, value: T) -> NodeHandle {
        assert!(self.next.len() < MAX_NODES, "node arena exhausted");
        self.values.push(value);
        self.next.push(DETACHED);
        NodeHandle((self.next.len() - 1) as u32)
    }

    /// Creates a new detached node. This is the only way besides construction
    /// to grow [`allocation_count`](Self::allocation_count).
    pub fn new_node(&mut self, value: T) -> NodeHandle {
        self.alloc(value)
    }

    /// Appends `value` in a fresh node. O(n).
    pub fn push_back(&mut self, value: T) {
        let tail = self.tail_or_sentinel();
        let node = self.alloc(value);
        self.insert_after(tail, node);
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Node constructions attributed to this list, sentinel included.
    pub fn allocation_count(&self) -> usize {
        self.next.len()
    }

    pub fn sentinel(&self) -> NodeHandle {
        NodeHandle::SENTINEL
    }

    pub fn head(&self) -> Option<NodeHandle> {
        self.next(NodeHandle::SENTINEL)
    }

    /// Successor of `h`, or `None` at the end of the chain (or if `h` is detached).
    pub fn next(&self, h: NodeHandle) -> Option<NodeHandle> {
        match self.next[h.slot()] {
            NIL | DETACHED => None,
            n => Some(NodeHandle(n)),
        }
    }

    /// Successor of a node known to have one.
    #[inline]
    pub(crate) fn succ(&self, h: NodeHandle) -> NodeHandle {
        let n = self.next[h.slot()];
        debug_assert!(n != NIL && n != DETACHED, "{h:?} has no successor");
        NodeHandle(n)
    }

    pub fn is_detached(&self, h: NodeHandle) -> bool {
        self.next[h.slot()] == DETACHED
    }

    /// Value stored in `h`.
    ///
    /// Panics on the sentinel, which carries no value.
    pub fn value(&self, h: NodeHandle) -> &T {
        assert!(!h.is_sentinel(), "the sentinel carries no value");
        &self.values[h.slot() - 1]
    }

    pub fn value_mut(&mut self, h: NodeHandle) -> &mut T {
        assert!(!h.is_sentinel(), "the sentinel carries no value");
        &mut self.values[h.slot() - 1]
    }

    /// Exchanges the payloads of two element nodes without touching links.
    #[inline]
    pub fn swap_values(&mut self, a: NodeHandle, b: NodeHandle) {
        assert!(!a.is_sentinel() && !b.is_sentinel(), "the sentinel carries no value");
        self.values.swap(a.slot() - 1, b.slot() - 1);
    }

    /// Unlinks and returns the successor of `h`. O(1), no allocation.
    ///
    /// Panics if `h` has no successor or is itself detached.
    #[inline]
    pub fn extract_after(&mut self, h: NodeHandle) -> NodeHandle {
        let n = self.next[h.slot()];
        assert!(n != NIL && n != DETACHED, "extract_after: {h:?} has no successor");
        self.next[h.slot()] = self.next[n as usize];
        self.next[n as usize] = DETACHED;
        self.len -= 1;
        NodeHandle(n)
    }

    /// Links the detached node `n` right after `h`. O(1), no allocation.
    ///
    /// Panics if `n` is not detached or `h` is not in the list.
    #[inline]
    pub fn insert_after(&mut self, h: NodeHandle, n: NodeHandle) {
        assert!(self.is_detached(n), "insert_after: {n:?} is not detached");
        assert!(!self.is_detached(h), "insert_after: anchor {h:?} is detached");
        self.next[n.slot()] = self.next[h.slot()];
        self.next[h.slot()] = n.0;
        self.len += 1;
    }

    /// Node preceding position `i` (the sentinel for `i == 0`). Valid for `i <= len`. O(i).
    pub fn predecessor_of(&self, i: usize) -> Result<NodeHandle, SeqError> {
        if i > self.len {
            return Err(SeqError::IndexOutOfRange { index: i, len: self.len });
        }
        let mut h = NodeHandle::SENTINEL;
        for _ in 0..i {
            h = self.succ(h);
        }
        Ok(h)
    }

    /// Node at position `i`. O(i).
    pub fn node_at(&self, i: usize) -> Result<NodeHandle, SeqError> {
        if i >= self.len {
            return Err(SeqError::IndexOutOfRange { index: i, len: self.len });
        }
        Ok(self.succ(self.predecessor_of(i)?))
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.node_at(i).ok().map(|h| self.value(h))
    }

    /// Detaches the node at position `i` and returns it; its value stays
    /// readable through [`value`](Self::value) and it can be reinserted with
    /// [`insert_at`](Self::insert_at).
    pub fn extract_at(&mut self, i: usize) -> Result<NodeHandle, SeqError> {
        if i >= self.len {
            return Err(SeqError::IndexOutOfRange { index: i, len: self.len });
        }
        let prev = self.predecessor_of(i)?;
        Ok(self.extract_after(prev))
    }

    /// Links the detached node `n` so that it ends up at position `i`.
    pub fn insert_at(&mut self, i: usize, n: NodeHandle) -> Result<(), SeqError> {
        if !self.is_detached(n) {
            return Err(SeqError::NotDetached(n));
        }
        let prev = self.predecessor_of(i)?;
        self.insert_after(prev, n);
        Ok(())
    }

    /// Last element node, or the sentinel when empty. O(n).
    pub fn tail_or_sentinel(&self) -> NodeHandle {
        self.last_from(NodeHandle::SENTINEL)
    }

    /// Walks from `h` to the last node of the chain.
    pub(crate) fn last_from(&self, mut h: NodeHandle) -> NodeHandle {
        while let Some(n) = self.next(h) {
            h = n;
        }
        h
    }

    /// Walks from `h` to the node whose successor is the last node.
    /// Requires at least one node after `h`.
    pub(crate) fn penultimate_from(&self, mut h: NodeHandle) -> NodeHandle {
        let mut n = self.succ(h);
        while let Some(after) = self.next(n) {
            h = n;
            n = after;
        }
        h
    }

    /// Number of nodes reachable after `h`. O(n).
    pub(crate) fn count_after(&self, mut h: NodeHandle) -> usize {
        let mut count = 0;
        while let Some(n) = self.next(h) {
            count += 1;
            h = n;
        }
        count
    }

    pub fn iter(&self) -> Iter<'_, T> {
        Iter { seq: self, cursor: self.head(), remaining: self.len }
    }

    /// Handles of the element nodes in list order.
    pub fn handles(&self) -> Handles<'_, T> {
        Handles { seq: self, cursor: self.head() }
    }

    /// Snapshot copy of the elements in list order.
    pub fn to_vec(&self) -> Vec<T>
    where
        T: Clone,
    {
        self.iter().cloned().collect()
    }

    /// Walks the chain and checks it against the cached length.
    pub fn check_integrity(&self) -> bool {
        let mut seen = 0usize;
        let mut h = NodeHandle::SENTINEL;
        while let Some(n) = self.next(h) {
            seen += 1;
            if seen > self.len {
                return false;
            }
            h = n;
        }
        seen == self.len
    }
}

impl<T> FromIterator<T> for SinglyLinkedSeq<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}

impl<T: fmt::Debug> fmt::Debug for SinglyLinkedSeq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

impl<'a, T> IntoIterator for &'a SinglyLinkedSeq<T> {
    type Item = &'a T;
    type IntoIter = Iter<'a, T>;

    fn into_iter(self) -> Iter<'a, T> {
        self.iter()
    }
}

pub struct Iter<'a, T> {
    seq: &'a SinglyLinkedSeq<T>,
    cursor: Option<NodeHandle>,
    remaining: usize,
}

impl<'a, T> Iterator for Iter<'a, T> {
    type Item = &'a T;

    #[inline]
    fn next(&mut self) -> Option<&'a T> {
        let h = self.cursor?;
        self.cursor = self.seq.next(h);
        self.remaining = self.remaining.saturating_sub(1);
        Some(self.seq.value(h))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<T> ExactSizeIterator for Iter<'_, T> {}

pub struct Handles<'a, T> {
    seq: &'a SinglyLinkedSeq<T>,
    cursor: Option<NodeHandle>,
}

impl<T> Iterator for Handles<'_, T> {
    type Item = NodeHandle;

    fn next(&mut self) -> Option<NodeHandle> {
        let h = self.cursor?;
        self.cursor = self.seq.next(h);
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq4() -> SinglyLinkedSeq<u32> {
        SinglyLinkedSeq::from_elements([0, 1, 2, 3])
    }

    #[test]
    fn construction() {
        let empty: SinglyLinkedSeq<u32> = SinglyLinkedSeq::from_elements([]);
        assert_eq!(empty.len(), 0);
        assert!(empty.to_vec().is_empty());
        assert_eq!(empty.allocation_count(), 1);

        let one = SinglyLinkedSeq::from_elements([0]);
        assert_eq!(one.to_vec(), vec![0]);
        assert_eq!(one.len(), 1);

        let s = seq4();
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(s.len(), 4);
        assert_eq!(s.allocation_count(), 5);
        assert!(s.check_integrity());
    }

    #[test]
    fn extract_after_positions() {
        let mut s = seq4();
        let n = s.extract_after(s.sentinel());
        assert_eq!(*s.value(n), 0);
        assert_eq!(s.to_vec(), vec![1, 2, 3]);
        assert_eq!(s.len(), 3);

        let mut s = seq4();
        let h0 = s.node_at(0).unwrap();
        let n = s.extract_after(h0);
        assert_eq!(*s.value(n), 1);
        assert_eq!(s.to_vec(), vec![0, 2, 3]);

        let mut s = seq4();
        let h2 = s.node_at(2).unwrap();
        let n = s.extract_after(h2);
        assert_eq!(*s.value(n), 3);
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
        assert!(s.check_integrity());
    }

    #[test]
    fn insert_after_inverts_extract() {
        let mut s = seq4();
        let n = s.extract_after(s.sentinel());
        s.insert_after(s.sentinel(), n);
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);

        let h0 = s.node_at(0).unwrap();
        let n = s.extract_after(h0);
        assert_eq!(s.to_vec(), vec![0, 2, 3]);
        s.insert_after(h0, n);
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);

        let h2 = s.node_at(2).unwrap();
        let n = s.extract_after(h2);
        s.insert_after(h2, n);
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(s.allocation_count(), 5);
    }

    #[test]
    #[should_panic(expected = "has no successor")]
    fn extract_after_tail_panics() {
        let mut s = seq4();
        let tail = s.node_at(3).unwrap();
        s.extract_after(tail);
    }

    #[test]
    #[should_panic(expected = "is not detached")]
    fn insert_attached_node_panics() {
        let mut s = seq4();
        let h1 = s.node_at(1).unwrap();
        s.insert_after(s.sentinel(), h1);
    }

    #[test]
    fn positional_extract_insert() {
        let mut s = seq4();
        let n = s.extract_at(1).unwrap();
        assert_eq!(*s.value(n), 1);
        assert_eq!(s.to_vec(), vec![0, 2, 3]);

        let n = s.extract_at(1).unwrap();
        assert_eq!(*s.value(n), 2);
        s.insert_at(0, n).unwrap();
        assert_eq!(s.to_vec(), vec![2, 0, 3]);

        let mut s = seq4();
        let n = s.extract_at(3).unwrap();
        assert_eq!(*s.value(n), 3);
        assert_eq!(s.to_vec(), vec![0, 1, 2]);
        s.insert_at(3, n).unwrap();
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn positional_errors() {
        let mut s = seq4();
        assert_eq!(s.extract_at(4), Err(SeqError::IndexOutOfRange { index: 4, len: 4 }));
        let n = s.extract_at(0).unwrap();
        assert_eq!(s.insert_at(5, n), Err(SeqError::IndexOutOfRange { index: 5, len: 3 }));
        let attached = s.node_at(0).unwrap();
        assert_eq!(s.insert_at(0, attached), Err(SeqError::NotDetached(attached)));
    }

    #[test]
    fn snapshot_does_not_allocate() {
        let s = SinglyLinkedSeq::from_elements([2, 0, 1]);
        let before = s.allocation_count();
        assert_eq!(s.to_vec(), vec![2, 0, 1]);
        assert_eq!(s.allocation_count(), before);
    }

    #[test]
    fn push_back_counts_a_node() {
        let mut s = SinglyLinkedSeq::new();
        s.push_back('a');
        s.push_back('b');
        assert_eq!(s.to_vec(), vec!['a', 'b']);
        assert_eq!(s.allocation_count(), 3);
    }

    #[test]
    fn penultimate_and_tail() {
        let s = seq4();
        assert_eq!(*s.value(s.penultimate_from(s.sentinel())), 2);
        assert_eq!(*s.value(s.tail_or_sentinel()), 3);
        assert_eq!(s.count_after(s.node_at(1).unwrap()), 2);
    }

    proptest! {
        // Random extract/insert pairs keep the multiset and the chain intact.
        #[test]
        fn relinking_preserves_multiset(
            len in 1usize..9,
            ops in prop::collection::vec((0usize..16, 0usize..16), 0..64),
        ) {
            let mut s = SinglyLinkedSeq::from_elements(0..len as u32);
            let allocated = s.allocation_count();
            for (from, to) in ops {
                let n = s.extract_at(from % len).unwrap();
                s.insert_at(to % len, n).unwrap();
                prop_assert!(s.check_integrity());
                let mut sorted = s.to_vec();
                sorted.sort_unstable();
                prop_assert_eq!(sorted, (0..len as u32).collect::<Vec<_>>());
            }
            prop_assert_eq!(s.allocation_count(), allocated);
        }

        #[test]
        fn extract_then_insert_same_anchor_is_identity(len in 1usize..10, at in 0usize..10) {
            let mut s = SinglyLinkedSeq::from_elements(0..len as u32);
            let anchor = s.predecessor_of(at % len).unwrap();
            let n = s.extract_after(anchor);
            s.insert_after(anchor, n);
            prop_assert_eq!(s.to_vec(), (0..len as u32).collect::<Vec<_>>());
        }
    }
}
