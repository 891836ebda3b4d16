use std::ffi::{c_int, c_void, CStr, CString};
use std::ptr;

use linkperm_ffi::*;

fn identity(k: usize) -> *mut LpSeq {
    let mut seq = ptr::null_mut();
    assert_eq!(unsafe { lp_seq_identity(k, &mut seq) }, LpStatus::Ok);
    seq
}

fn contents(seq: *const LpSeq) -> Vec<u32> {
    let mut len = 0;
    unsafe {
        assert_eq!(lp_seq_len(seq, &mut len), LpStatus::Ok);
        let mut buf = vec![0u32; len];
        assert_eq!(lp_seq_copy(seq, buf.as_mut_ptr(), len), LpStatus::Ok);
        buf
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lp_last_error_message()) }.to_string_lossy().into_owned()
}

unsafe extern "C" fn collect(perm: *const u32, len: usize, user: *mut c_void) -> c_int {
    let out = &mut *(user as *mut Vec<Vec<u32>>);
    out.push(std::slice::from_raw_parts(perm, len).to_vec());
    0
}

unsafe extern "C" fn stop_at_five(_: *const u32, _: usize, user: *mut c_void) -> c_int {
    let seen = &mut *(user as *mut usize);
    *seen += 1;
    (*seen == 5) as c_int
}

#[test]
fn visit_k4() {
    let seq = identity(4);
    let mut seen: Vec<Vec<u32>> = Vec::new();
    let status = unsafe { lp_visit(seq, Some(collect), &mut seen as *mut _ as *mut c_void) };
    assert_eq!(status, LpStatus::Ok);
    assert_eq!(seen.len(), 24);
    assert_eq!(seen[6], [2, 0, 1, 3]);
    assert_eq!(contents(seq), [1, 2, 3, 0]);
    let mut alloc = 0;
    unsafe { lp_seq_allocation_count(seq, &mut alloc) };
    assert_eq!(alloc, 5);
    unsafe { lp_seq_free(seq) };
}

#[test]
fn visit_abort() {
    let seq = identity(5);
    let mut seen = 0usize;
    let status = unsafe { lp_visit(seq, Some(stop_at_five), &mut seen as *mut _ as *mut c_void) };
    assert_eq!(status, LpStatus::CallbackAbort);
    assert_eq!(seen, 5);
    assert_eq!(unsafe { lp_visit(seq, None, ptr::null_mut()) }, LpStatus::NullPointer);
    unsafe { lp_seq_free(seq) };
}

#[test]
fn iterator_matches_visit() {
    let items = [7u32, 8, 9, 10];
    let mut it = ptr::null_mut();
    unsafe {
        assert_eq!(lp_iter_new(items.as_ptr(), items.len(), &mut it), LpStatus::Ok);
        let mut buf = [0u32; 4];
        let mut produced = 0;
        assert_eq!(lp_iter_next(it, buf.as_mut_ptr(), 3, &mut produced), LpStatus::BufferTooSmall);
        let mut rows = Vec::new();
        loop {
            assert_eq!(lp_iter_next(it, buf.as_mut_ptr(), 4, &mut produced), LpStatus::Ok);
            if produced == 0 {
                break;
            }
            rows.push(buf);
        }
        lp_iter_free(it);
        assert_eq!(rows.len(), 24);
        assert_eq!(rows[12], [10, 9, 8, 7]);
    }
}

#[test]
fn move_replay() {
    let seq = identity(5);
    let mut moves = ptr::null_mut();
    unsafe {
        assert_eq!(lp_moves_new(5, &mut moves), LpStatus::Ok);
        let mut m = LpMove { index: 0, side: LpSide::NoOp, sublist_len: 0 };
        let mut produced = 0;
        let mut count = 0;
        loop {
            lp_moves_next(moves, &mut m, &mut produced);
            if produced == 0 {
                break;
            }
            assert_eq!(lp_apply_move(seq, m), LpStatus::Ok);
            count += 1;
        }
        lp_moves_free(moves);
        assert_eq!(count, 119);
        let bad = LpMove { index: 4, side: LpSide::Left, sublist_len: 1 };
        assert_eq!(lp_apply_move(seq, bad), LpStatus::OutOfRange);
    }
    assert_eq!(contents(seq), [1, 0, 2, 3, 4]);
    unsafe { lp_seq_free(seq) };
}

#[test]
fn unrank_and_rank() {
    let seq = identity(4);
    unsafe {
        assert_eq!(lp_unrank_u64(seq, 12), LpStatus::Ok);
        assert_eq!(contents(seq), [3, 2, 1, 0]);
        assert_eq!(lp_unrank_u64(seq, 24), LpStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        let n = CString::new("6").unwrap();
        lp_seq_free(seq);
        let seq = identity(4);
        assert_eq!(lp_unrank_dec(seq, n.as_ptr()), LpStatus::Ok);
        assert_eq!(contents(seq), [2, 0, 1, 3]);
        let junk = CString::new("six").unwrap();
        assert_eq!(lp_unrank_dec(seq, junk.as_ptr()), LpStatus::ParseError);
        lp_seq_free(seq);

        let perm = [3usize, 2, 1, 0];
        let mut index = 0u64;
        assert_eq!(lp_rank_u64(perm.as_ptr(), 4, &mut index), LpStatus::Ok);
        assert_eq!(index, 12);
        let dup = [0usize, 0, 1];
        assert_eq!(lp_rank_u64(dup.as_ptr(), 3, &mut index), LpStatus::InvalidPermutation);

        let big: Vec<usize> = (0..25).rev().collect();
        assert_eq!(lp_rank_u64(big.as_ptr(), big.len(), &mut index), LpStatus::OutOfRange);
        let mut text = ptr::null_mut();
        assert_eq!(lp_rank_dec(big.as_ptr(), big.len(), &mut text), LpStatus::Ok);
        let decimal = CStr::from_ptr(text).to_str().unwrap().to_owned();
        lp_string_free(text);

        let seq = identity(25);
        let n = CString::new(decimal).unwrap();
        assert_eq!(lp_unrank_dec(seq, n.as_ptr()), LpStatus::Ok);
        assert_eq!(contents(seq), (0..25).rev().collect::<Vec<u32>>());
        lp_seq_free(seq);
    }
}

#[test]
fn last_perm_suffix() {
    let seq = identity(6);
    unsafe {
        assert_eq!(lp_last_perm(seq, 0), LpStatus::Ok);
        assert_eq!(contents(seq), [1, 4, 3, 5, 2, 0]);
        assert_eq!(lp_last_perm(seq, 7), LpStatus::OutOfRange);
        lp_seq_free(seq);
    }
}

#[test]
fn metrics() {
    let a = [0u32, 1, 2, 3];
    let b = [3u32, 2, 1, 0];
    let mut tau = 0;
    unsafe {
        assert_eq!(lp_kendall_tau(a.as_ptr(), b.as_ptr(), 4, &mut tau), LpStatus::Ok);
        assert_eq!(tau, 6);
        let c = [0u32, 1, 2, 9];
        assert_eq!(lp_kendall_tau(a.as_ptr(), c.as_ptr(), 4, &mut tau), LpStatus::InvalidPermutation);

        let mut text = ptr::null_mut();
        assert_eq!(lp_recurrence_distance_dec(10, &mut text), LpStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "3994435");
        lp_string_free(text);
    }
    assert!((lp_average_distance_limit() - 1.100759669).abs() < 1e-9);
}

#[test]
fn null_handling() {
    unsafe {
        let mut len = 0;
        assert_eq!(lp_seq_len(ptr::null(), &mut len), LpStatus::NullPointer);
        assert_eq!(last_error(), "seq is null");
        assert_eq!(lp_seq_new(ptr::null(), 3, &mut ptr::null_mut()), LpStatus::NullPointer);
        let mut empty = ptr::null_mut();
        assert_eq!(lp_seq_new(ptr::null(), 0, &mut empty), LpStatus::Ok);
        assert_eq!(contents(empty), Vec::<u32>::new());
        lp_seq_free(empty);
        lp_seq_free(ptr::null_mut());
        lp_string_free(ptr::null_mut());
    }
}
