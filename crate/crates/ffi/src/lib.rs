//! C ABI for linkperm.
//!
//! Lists hold `uint32_t` payloads. Every fallible call returns an
//! [`LpStatus`]; on failure [`lp_last_error_message`] describes the error for
//! the calling thread. Handles are opaque and must be released with the
//! matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, c_void, CStr, CString};
use std::ops::ControlFlow;
use std::panic::{self, AssertUnwindSafe};
use std::ptr;
use std::slice;

use num_bigint::BigUint;

use linkperm::generator::{apply_move, try_permutations_visit, MoveRecord, MoveStream, Permutations, Side};
use linkperm::metrics::{average_distance_limit, kendall_tau, recurrence_distance};
use linkperm::ranking::{last_perm, quick_index, quick_perm, CanonicalPermutation, RankError};
use linkperm::SinglyLinkedSeq;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    OutOfRange = 2,
    InvalidPermutation = 3,
    BufferTooSmall = 4,
    ParseError = 5,
    CallbackAbort = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpSide {
    NoOp = 0,
    Left = 1,
    Right = 2,
}

/// One transition: the sublist starting at `index` (length `sublist_len`)
/// gets a new head taken from the given side.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpMove {
    pub index: usize,
    pub side: LpSide,
    pub sublist_len: usize,
}

/// Mutable linked list of `uint32_t`.
pub struct LpSeq(SinglyLinkedSeq<u32>);

/// Iterator over the permutations of a list it owns.
pub struct LpIter(Permutations<u32>);

/// Iterator over the move schedule for a list length.
pub struct LpMoves(MoveStream);

/// Visitor callback. Return 0 to continue, anything else to stop.
pub type LpVisitFn = Option<unsafe extern "C" fn(perm: *const u32, len: usize, user: *mut c_void) -> c_int>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(LpStatus, String);

impl Failure {
    fn null(name: &str) -> Self {
        Failure(LpStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<RankError> for Failure {
    fn from(e: RankError) -> Self {
        let status = match e {
            RankError::IndexOutOfRange { .. } | RankError::SuffixOutOfRange { .. } => LpStatus::OutOfRange,
            RankError::ValueOutOfRange { .. } | RankError::Duplicate { .. } => LpStatus::InvalidPermutation,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn run(f: impl FnOnce() -> Result<(), Failure>) -> LpStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LpStatus::Panic
        }
    }
}

unsafe fn elements<'a, T>(ptr: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(Failure::null(name));
    }
    Ok(slice::from_raw_parts(ptr, len))
}

unsafe fn out_ref<'a, T>(ptr: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| Failure::null(name))
}

unsafe fn seq_ref<'a>(seq: *const LpSeq) -> Result<&'a SinglyLinkedSeq<u32>, Failure> {
    seq.as_ref().map(|s| &s.0).ok_or_else(|| Failure::null("seq"))
}

unsafe fn seq_mut<'a>(seq: *mut LpSeq) -> Result<&'a mut SinglyLinkedSeq<u32>, Failure> {
    seq.as_mut().map(|s| &mut s.0).ok_or_else(|| Failure::null("seq"))
}

unsafe fn parse_index(text: *const c_char) -> Result<BigUint, Failure> {
    if text.is_null() {
        return Err(Failure::null("index"));
    }
    let s = CStr::from_ptr(text).to_str().map_err(|_| Failure(LpStatus::ParseError, "index is not UTF-8".into()))?;
    s.parse::<BigUint>()
        .map_err(|_| Failure(LpStatus::ParseError, format!("'{s}' is not a non-negative decimal integer")))
}

fn export_string(value: String, out: &mut *mut c_char) {
    *out = CString::new(value).expect("decimal digits").into_raw();
}

fn copy_out(values: impl ExactSizeIterator<Item = u32>, buf: *mut u32, cap: usize) -> Result<(), Failure> {
    let len = values.len();
    if cap < len {
        return Err(Failure(LpStatus::BufferTooSmall, format!("buffer holds {cap}, need {len}")));
    }
    if len > 0 && buf.is_null() {
        return Err(Failure::null("buf"));
    }
    for (i, v) in values.enumerate() {
        unsafe { *buf.add(i) = v };
    }
    Ok(())
}

fn canonical(perm: &[usize]) -> Result<CanonicalPermutation, Failure> {
    Ok(CanonicalPermutation::new(perm.to_vec())?)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a list from `len` values.
///
/// # Safety
/// `items` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_new(items: *const u32, len: usize, out: *mut *mut LpSeq) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let items = elements(items, len, "items")?;
        *out = Box::into_raw(Box::new(LpSeq(SinglyLinkedSeq::from_elements(items.iter().copied()))));
        Ok(())
    })
}

/// Builds the list `0, 1, ..., k-1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_identity(k: usize, out: *mut *mut LpSeq) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let k = u32::try_from(k).map_err(|_| Failure(LpStatus::OutOfRange, format!("k = {k} is too large")))?;
        *out = Box::into_raw(Box::new(LpSeq(SinglyLinkedSeq::from_elements(0..k))));
        Ok(())
    })
}

/// # Safety
/// `seq` must come from `lp_seq_new` or `lp_seq_identity`, or be null.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_free(seq: *mut LpSeq) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_len(seq: *const LpSeq, out: *mut usize) -> LpStatus {
    run(|| {
        *out_ref(out, "out")? = seq_ref(seq)?.len();
        Ok(())
    })
}

/// Number of nodes ever allocated by the list, sentinel included.
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_allocation_count(seq: *const LpSeq, out: *mut usize) -> LpStatus {
    run(|| {
        *out_ref(out, "out")? = seq_ref(seq)?.allocation_count();
        Ok(())
    })
}

/// Copies the current order into `buf`, which must hold at least
/// `lp_seq_len` values.
///
/// # Safety
/// `seq` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn lp_seq_copy(seq: *const LpSeq, buf: *mut u32, cap: usize) -> LpStatus {
    run(|| {
        let seq = seq_ref(seq)?;
        copy_out(seq.iter().copied(), buf, cap)
    })
}

/// Visits every permutation of `seq` in generation order, starting with its
/// current order. A nonzero return from `visit` stops the traversal and
/// yields `LP_STATUS_CALLBACK_ABORT`. The `perm` pointer is only valid during
/// the callback.
///
/// # Safety
/// `seq` must be a live handle and `visit` a valid function.
#[no_mangle]
pub unsafe extern "C" fn lp_visit(seq: *mut LpSeq, visit: LpVisitFn, user: *mut c_void) -> LpStatus {
    run(|| {
        let seq = seq_mut(seq)?;
        let visit = visit.ok_or_else(|| Failure::null("visit"))?;
        let mut scratch: Vec<u32> = Vec::with_capacity(seq.len());
        let flow = try_permutations_visit(seq, |view| {
            scratch.clear();
            scratch.extend(view.iter().copied());
            match visit(scratch.as_ptr(), scratch.len(), user) {
                0 => ControlFlow::Continue(()),
                code => ControlFlow::Break(code),
            }
        });
        match flow {
            ControlFlow::Continue(()) => Ok(()),
            ControlFlow::Break(code) => Err(Failure(LpStatus::CallbackAbort, format!("visitor returned {code}"))),
        }
    })
}

/// Starts an iterator over the permutations of `len` values.
///
/// # Safety
/// `items` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_iter_new(items: *const u32, len: usize, out: *mut *mut LpIter) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let items = elements(items, len, "items")?;
        let seq = SinglyLinkedSeq::from_elements(items.iter().copied());
        *out = Box::into_raw(Box::new(LpIter(Permutations::new(seq))));
        Ok(())
    })
}

/// Writes the next permutation to `buf` and sets `*produced` to 1, or sets
/// it to 0 once the traversal is finished.
///
/// # Safety
/// `it` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn lp_iter_next(it: *mut LpIter, buf: *mut u32, cap: usize, produced: *mut c_int) -> LpStatus {
    run(|| {
        let produced = out_ref(produced, "produced")?;
        let it = &mut it.as_mut().ok_or_else(|| Failure::null("it"))?.0;
        let len = it.as_seq().len();
        if cap < len {
            return Err(Failure(LpStatus::BufferTooSmall, format!("buffer holds {cap}, need {len}")));
        }
        *produced = 0;
        if let Some(view) = it.next_view() {
            copy_out(view.iter().copied(), buf, cap)?;
            *produced = 1;
        }
        Ok(())
    })
}

/// # Safety
/// `it` must come from `lp_iter_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn lp_iter_free(it: *mut LpIter) {
    if !it.is_null() {
        drop(Box::from_raw(it));
    }
}

/// Starts the move schedule for a list of length `k` (`k! - 1` moves).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_moves_new(k: usize, out: *mut *mut LpMoves) -> LpStatus {
    run(|| {
        *out_ref(out, "out")? = Box::into_raw(Box::new(LpMoves(MoveStream::new(k))));
        Ok(())
    })
}

/// Writes the next move and sets `*produced` to 1, or sets it to 0 at the end.
///
/// # Safety
/// `moves` must be a live handle; `out` and `produced` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_moves_next(moves: *mut LpMoves, out: *mut LpMove, produced: *mut c_int) -> LpStatus {
    run(|| {
        let produced = out_ref(produced, "produced")?;
        let out = out_ref(out, "out")?;
        let moves = &mut moves.as_mut().ok_or_else(|| Failure::null("moves"))?.0;
        *produced = 0;
        if let Some(m) = moves.next() {
            let side = match m.side {
                Side::NoOp => LpSide::NoOp,
                Side::Left => LpSide::Left,
                Side::Right => LpSide::Right,
            };
            *out = LpMove { index: m.index, side, sublist_len: m.sublist_len };
            *produced = 1;
        }
        Ok(())
    })
}

/// # Safety
/// `moves` must come from `lp_moves_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn lp_moves_free(moves: *mut LpMoves) {
    if !moves.is_null() {
        drop(Box::from_raw(moves));
    }
}

/// Applies one move to `seq` by position.
///
/// # Safety
/// `seq` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_apply_move(seq: *mut LpSeq, m: LpMove) -> LpStatus {
    run(|| {
        let seq = seq_mut(seq)?;
        let side = match m.side {
            LpSide::NoOp => Side::NoOp,
            LpSide::Left => Side::Left,
            LpSide::Right => Side::Right,
        };
        apply_move(seq, MoveRecord { index: m.index, side, sublist_len: m.sublist_len })
            .map_err(|e| Failure(LpStatus::OutOfRange, e.to_string()))
    })
}

/// Rearranges the suffix starting at position `i` into the order a full
/// traversal of that suffix would end on.
///
/// # Safety
/// `seq` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_last_perm(seq: *mut LpSeq, i: usize) -> LpStatus {
    run(|| Ok(last_perm(seq_mut(seq)?, i)?))
}

/// Rearranges `seq` into the permutation with index `n` in generation order.
///
/// # Safety
/// `seq` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_unrank_u64(seq: *mut LpSeq, n: u64) -> LpStatus {
    run(|| Ok(quick_perm(seq_mut(seq)?, &BigUint::from(n))?))
}

/// Like `lp_unrank_u64` with the index given as a decimal string.
///
/// # Safety
/// `seq` must be a live handle; `n` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lp_unrank_dec(seq: *mut LpSeq, n: *const c_char) -> LpStatus {
    run(|| {
        let seq = seq_mut(seq)?;
        let n = parse_index(n)?;
        Ok(quick_perm(seq, &n)?)
    })
}

/// Index of a permutation of `0..len` in generation order. Fails with
/// `LP_STATUS_OUT_OF_RANGE` if the index does not fit in 64 bits.
///
/// # Safety
/// `perm` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_rank_u64(perm: *const usize, len: usize, out: *mut u64) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let index = quick_index(&canonical(elements(perm, len, "perm")?)?);
        *out = u64::try_from(&index)
            .map_err(|_| Failure(LpStatus::OutOfRange, format!("index {index} does not fit in 64 bits")))?;
        Ok(())
    })
}

/// Like `lp_rank_u64`, returning a decimal string to release with
/// `lp_string_free`.
///
/// # Safety
/// `perm` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_rank_dec(perm: *const usize, len: usize, out: *mut *mut c_char) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let index = quick_index(&canonical(elements(perm, len, "perm")?)?);
        export_string(index.to_string(), out);
        Ok(())
    })
}

/// Kendall tau distance between two orderings of the same `len` values.
///
/// # Safety
/// `a` and `b` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_kendall_tau(a: *const u32, b: *const u32, len: usize, out: *mut u64) -> LpStatus {
    run(|| {
        let out = out_ref(out, "out")?;
        let a = elements(a, len, "a")?;
        let b = elements(b, len, "b")?;
        *out = kendall_tau(a, b).map_err(|e| Failure(LpStatus::InvalidPermutation, e.to_string()))?;
        Ok(())
    })
}

/// Cumulative transition distance of a full traversal of `k` elements, as a
/// decimal string to release with `lp_string_free`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_recurrence_distance_dec(k: usize, out: *mut *mut c_char) -> LpStatus {
    run(|| {
        export_string(recurrence_distance(k).to_string(), out_ref(out, "out")?);
        Ok(())
    })
}

/// Limit of the average transition distance as the list grows.
#[no_mangle]
pub extern "C" fn lp_average_distance_limit() -> f64 {
    average_distance_limit()
}
