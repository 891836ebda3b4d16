//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;

use linkperm::bench::{self, Strategy};
use linkperm::generator::{apply_move, move_stream, permutations_iter, permutations_visit};
use linkperm::metrics::{kendall_tau, measure_traversal, recurrence_distance};
use linkperm::oracle::BruteForceIndexer;
use linkperm::ranking::{factorial, last_perm, quick_index, quick_perm, reversal_indices, CanonicalPermutation};
use linkperm::verify::is_single_relocation;
use linkperm::SinglyLinkedSeq;

const ORDER_K4: [[u32; 4]; 24] = [
    [0, 1, 2, 3],
    [0, 1, 3, 2],
    [0, 3, 1, 2],
    [0, 3, 2, 1],
    [0, 2, 3, 1],
    [0, 2, 1, 3],
    [2, 0, 1, 3],
    [2, 0, 3, 1],
    [2, 3, 0, 1],
    [2, 3, 1, 0],
    [2, 1, 3, 0],
    [2, 1, 0, 3],
    [3, 2, 1, 0],
    [3, 2, 0, 1],
    [3, 0, 2, 1],
    [3, 0, 1, 2],
    [3, 1, 0, 2],
    [3, 1, 2, 0],
    [1, 3, 2, 0],
    [1, 3, 0, 2],
    [1, 0, 3, 2],
    [1, 0, 2, 3],
    [1, 2, 0, 3],
    [1, 2, 3, 0],
];

fn last_permutation_table(k: usize) -> Vec<u32> {
    match k {
        0 => vec![],
        1 => vec![0],
        2 => vec![1, 0],
        3 => vec![1, 0, 2],
        4 => vec![1, 2, 3, 0],
        5 => vec![1, 0, 2, 3, 4],
        6 => vec![1, 4, 3, 5, 2, 0],
        7 => vec![1, 0, 2, 3, 4, 5, 6],
        8 => vec![1, 4, 3, 5, 6, 7, 2, 0],
        9 => vec![1, 0, 2, 3, 4, 5, 6, 7, 8],
        10 => vec![1, 4, 3, 5, 6, 7, 8, 9, 2, 0],
        11 => vec![1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        12 => vec![1, 4, 3, 5, 6, 7, 8, 9, 10, 11, 2, 0],
        _ => unreachable!(),
    }
}

const REVERSAL_INDICES: [u64; 12] = [0, 1, 3, 12, 74, 317, 4167, 14244, 316634, 1042397, 35878887, 115712484];
const LIMIT_QUOTED: f64 = 1.100759669;

fn snapshots(k: usize) -> (Vec<Vec<u32>>, SinglyLinkedSeq<u32>) {
    let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
    let mut out = Vec::new();
    permutations_visit(&mut seq, |v| out.push(v.to_vec()));
    (out, seq)
}

fn ac1_order_fixture() -> Result<String, String> {
    let expected: Vec<Vec<u32>> = ORDER_K4.iter().map(|r| r.to_vec()).collect();
    let start = Instant::now();
    let (visited, _) = snapshots(4);
    let elapsed = start.elapsed();
    if visited != expected {
        return Err(format!("visitor order differs: {visited:?}"));
    }
    let iterated: Vec<_> = permutations_iter(SinglyLinkedSeq::from_elements(0..4u32)).collect();
    if iterated != expected {
        return Err("iterator order differs".into());
    }
    Ok(format!("24/24 rows match, traversal took {elapsed:?}"))
}

fn ac2_completeness() -> Result<String, String> {
    for k in 0..=9usize {
        let (visited, _) = snapshots(k);
        let expected = (1..=k).product::<usize>();
        if visited.len() != expected {
            return Err(format!("k={k}: {} visits, expected {expected}", visited.len()));
        }
        let distinct: HashSet<&Vec<u32>> = visited.iter().collect();
        if distinct.len() != expected {
            return Err(format!("k={k}: only {} distinct", distinct.len()));
        }
        let identity: Vec<u32> = (0..k as u32).collect();
        for v in &visited {
            let mut sorted = v.clone();
            sorted.sort_unstable();
            if sorted != identity {
                return Err(format!("k={k}: {v:?} is not a permutation of the input"));
            }
        }
    }
    Ok("k=0..9 visit exactly k! distinct permutations".into())
}

fn ac3_last_permutation() -> Result<String, String> {
    for k in 0..=9usize {
        let (_, seq) = snapshots(k);
        if seq.to_vec() != last_permutation_table(k) {
            return Err(format!("k={k}: final {:?}", seq.to_vec()));
        }
        if k % 2 == 1 && k >= 2 {
            let mut swapped: Vec<u32> = (0..k as u32).collect();
            swapped.swap(0, 1);
            if seq.to_vec() != swapped {
                return Err(format!("k={k}: odd final state is not a swap of the first two"));
            }
        }
    }
    for k in 0..=12usize {
        let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
        last_perm(&mut seq, 0).map_err(|e| e.to_string())?;
        if seq.to_vec() != last_permutation_table(k) {
            return Err(format!("last_perm k={k}: {:?}", seq.to_vec()));
        }
    }
    Ok("traversal k=0..9 and last_perm k=0..12 match the table".into())
}

fn ac4_single_move() -> Result<String, String> {
    let mut transitions = 0usize;
    for k in 2..=8usize {
        let (visited, _) = snapshots(k);
        for (pair, m) in visited.windows(2).zip(move_stream(k)) {
            if !is_single_relocation(&pair[0], &pair[1]) {
                return Err(format!("k={k}: {:?} -> {:?}", pair[0], pair[1]));
            }
            let tau = kendall_tau(&pair[0], &pair[1]).map_err(|e| e.to_string())?;
            if tau != m.span() as u64 {
                return Err(format!("k={k}: tau {tau} but move {m} spans {}", m.span()));
            }
            transitions += 1;
        }
    }
    Ok(format!("{transitions} transitions, each one relocation with tau = span"))
}

fn ac5_distance_recurrence() -> Result<String, String> {
    for k in 1..=8 {
        let measured = measure_traversal(k).map_err(|e| e.to_string())?.cumulative;
        if BigUint::from(measured) != recurrence_distance(k) {
            return Err(format!("k={k}: measured {measured}, recurrence {}", recurrence_distance(k)));
        }
    }
    for (k, d) in [(2usize, 1u32), (3, 5), (4, 25)] {
        if recurrence_distance(k) != BigUint::from(d) {
            return Err(format!("D_{k} != {d}"));
        }
    }
    let d10 = recurrence_distance(10);
    let transitions = factorial(10) - 1u32;
    let avg = d10.to_string().parse::<f64>().unwrap() / transitions.to_string().parse::<f64>().unwrap();
    let gap = (avg - LIMIT_QUOTED).abs();
    if gap >= 1e-5 {
        return Err(format!("|D_10/(10!-1) - {LIMIT_QUOTED}| = {gap:e}"));
    }
    Ok(format!("measured = recurrence for k=1..8; D_10 = {d10}, |avg - limit| = {gap:.3e} < 1e-5"))
}

fn ac6_ranking() -> Result<String, String> {
    let mut checked = 0usize;
    for k in 0..=7usize {
        let (visited, _) = snapshots(k);
        let brute = BruteForceIndexer::new(k).map_err(|e| e.to_string())?;
        for (n, snap) in visited.iter().enumerate() {
            let index = BigUint::from(n);
            let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
            quick_perm(&mut seq, &index).map_err(|e| e.to_string())?;
            if &seq.to_vec() != snap {
                return Err(format!("k={k} n={n}: unrank gave {:?}, expected {snap:?}", seq.to_vec()));
            }
            let target =
                CanonicalPermutation::new(snap.iter().map(|&x| x as usize).collect()).map_err(|e| e.to_string())?;
            let ranked = quick_index(&target);
            if ranked != index {
                return Err(format!("k={k}: rank of {snap:?} is {ranked}, expected {n}"));
            }
            let b = brute.index_of(target.as_slice()).map_err(|e| e.to_string())?;
            if b != ranked {
                return Err(format!("k={k}: brute force {b} vs quick_index {ranked}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations: unrank, rank and brute force agree"))
}

fn ac7_reversal_sequence() -> Result<String, String> {
    let got = reversal_indices(12);
    let expected: Vec<BigUint> = REVERSAL_INDICES.iter().map(|&x| BigUint::from(x)).collect();
    if got != expected {
        return Err(format!("got {got:?}"));
    }
    Ok("reversal_indices(12) matches all 12 terms".into())
}

fn ac8_in_place() -> Result<String, String> {
    let mut seq = SinglyLinkedSeq::from_elements(0..9u32);
    let before = seq.allocation_count();
    let mut visits = 0u64;
    permutations_visit(&mut seq, |_| visits += 1);
    let after = seq.allocation_count();
    if before != after || before != 10 {
        return Err(format!("allocation_count {before} before, {after} after"));
    }
    Ok(format!("{visits} visits, allocation_count {before} before and after"))
}

fn ac9_replay() -> Result<String, String> {
    for k in 0..=8usize {
        let (visited, _) = snapshots(k);
        let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
        let mut replayed = vec![seq.to_vec()];
        for m in move_stream(k) {
            apply_move(&mut seq, m).map_err(|e| e.to_string())?;
            replayed.push(seq.to_vec());
        }
        if replayed != visited {
            return Err(format!("k={k}: replay diverges"));
        }
    }
    Ok("move_stream replay reproduces the traversal for k=0..8".into())
}

fn ac10_benchmark() -> Result<String, String> {
    let mut lines = Vec::new();
    let mut checksum = None;
    for strategy in Strategy::ALL {
        let r = bench::run(strategy, 10);
        if r.count != 3_628_800 {
            return Err(format!("{strategy}: {} permutations", r.count));
        }
        if *checksum.get_or_insert(r.checksum) != r.checksum {
            return Err(format!("{strategy}: checksum differs"));
        }
        lines.push(format!("{strategy} {:.2e}/s", r.per_second()));
    }
    Ok(format!("3628800 each; {} (reported only)", lines.join(", ")))
}

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("AC1 order fixture (k=4)", ac1_order_fixture),
        ("AC2 completeness (k<=9)", ac2_completeness),
        ("AC3 last permutation (k=0..12)", ac3_last_permutation),
        ("AC4 single-move transitions (k<=8)", ac4_single_move),
        ("AC5 distance recurrence", ac5_distance_recurrence),
        ("AC6 ranking (k<=7)", ac6_ranking),
        ("AC7 reversal-index sequence", ac7_reversal_sequence),
        ("AC8 in-place (k=9)", ac8_in_place),
        ("AC9 replay equivalence (k<=8)", ac9_replay),
        ("AC10 benchmark harness (k=10)", ac10_benchmark),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
