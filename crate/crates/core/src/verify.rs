//! Three-way agreement between the oracle, the linked-list generator and
//! the ranking functions, plus the per-transition invariants.

use std::fmt;

use num_bigint::BigUint;

use crate::generator::{apply_move, move_stream, permutations_visit, MoveRecord};
use crate::metrics::kendall_tau;
use crate::oracle::{oracle_permutations, verify_complete, BruteForceIndexer, OracleTrace, ORACLE_GUARD};
use crate::ranking::{last_perm_pattern, quick_index, quick_perm, CanonicalPermutation};
use crate::seq::SinglyLinkedSeq;

/// Largest `k` for which brute-force ranking is cross-checked.
pub const BRUTE_FORCE_RANK_LIMIT: usize = 7;

/// What a generator under test produced for one input.
#[derive(Debug, Clone)]
pub struct GeneratorRun {
    pub snapshots: Vec<Vec<u32>>,
    pub final_state: Vec<u32>,
    pub allocations_before: usize,
    pub allocations_after: usize,
}

/// Runs the linked-list generator and records everything it visits.
pub fn run_generator(items: &[u32]) -> GeneratorRun {
    let mut seq = SinglyLinkedSeq::from_elements(items.iter().copied());
    let allocations_before = seq.allocation_count();
    let mut snapshots = Vec::new();
    permutations_visit(&mut seq, |view| snapshots.push(view.to_vec()));
    GeneratorRun { snapshots, final_state: seq.to_vec(), allocations_before, allocations_after: seq.allocation_count() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub k: usize,
    pub visited: usize,
    pub expected: usize,
    pub transitions: usize,
    pub ranked: usize,
}

impl fmt::Display for LevelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={}: {}/{} permutations, {} transitions, all single-move, {} ranked",
            self.k, self.visited, self.expected, self.transitions, self.ranked
        )
    }
}

/// First disagreement found, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub k: usize,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}: {} failed: {}", self.k, self.check, self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub levels: Vec<LevelReport>,
    pub divergence: Option<Divergence>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// True when `q` is `p` with exactly one element moved elsewhere.
pub fn is_single_relocation(p: &[u32], q: &[u32]) -> bool {
    if p.len() != q.len() || p == q {
        return false;
    }
    let start = p.iter().zip(q).take_while(|(a, b)| a == b).count();
    let end = p.len() - p.iter().rev().zip(q.iter().rev()).take_while(|(a, b)| a == b).count();
    let (pw, qw) = (&p[start..end], &q[start..end]);
    // within the differing window, one end element jumps to the other end
    (pw[0] == qw[qw.len() - 1] && pw[1..] == qw[..qw.len() - 1])
        || (pw[pw.len() - 1] == qw[0] && pw[..pw.len() - 1] == qw[1..])
}

/// Runs every check for `k = 0..=max_k` against the real generator.
pub fn verify_up_to(max_k: usize) -> VerifyReport {
    verify_with(max_k, run_generator)
}

/// Same as [`verify_up_to`] but with a caller-supplied generator, so the
/// suite itself can be tested against a deliberately broken one.
pub fn verify_with<G>(max_k: usize, generator: G) -> VerifyReport
where
    G: Fn(&[u32]) -> GeneratorRun,
{
    let mut report = VerifyReport::default();
    for k in 0..=max_k.min(ORACLE_GUARD) {
        match verify_level(k, &generator) {
            Ok(level) => report.levels.push(level),
            Err(d) => {
                report.divergence = Some(d);
                break;
            }
        }
    }
    report
}

fn verify_level<G>(k: usize, generator: &G) -> Result<LevelReport, Divergence>
where
    G: Fn(&[u32]) -> GeneratorRun,
{
    let fail = |check: &'static str, detail: String| Divergence { k, check, detail };
    let items: Vec<u32> = (0..k as u32).collect();
    let oracle = oracle_permutations(&items).map_err(|e| fail("oracle", e.to_string()))?;
    let run = generator(&items);
    let expected = (1..=k).product::<usize>();

    if run.snapshots.len() != expected {
        return Err(fail("count", format!("visited {} of {expected}", run.snapshots.len())));
    }
    let as_trace = OracleTrace { snapshots: run.snapshots.clone(), moves: Vec::new() };
    let completeness = verify_complete(&as_trace, &items);
    if !completeness.complete {
        return Err(fail("completeness", completeness.diagnostics.join("; ")));
    }
    if let Some(i) = (0..expected).find(|&i| run.snapshots[i] != oracle.snapshots[i]) {
        return Err(fail(
            "oracle order",
            format!("snapshot {i}: generator {:?}, oracle {:?}", run.snapshots[i], oracle.snapshots[i]),
        ));
    }
    for (t, pair) in run.snapshots.windows(2).enumerate() {
        let (p, q) = (&pair[0], &pair[1]);
        if !is_single_relocation(p, q) {
            return Err(fail("single move", format!("transition {t}: {p:?} -> {q:?}")));
        }
        let tau = kendall_tau(p, q).map_err(|e| fail("kendall tau", e.to_string()))?;
        let span = oracle.moves[t].span() as u64;
        if tau != span {
            return Err(fail(
                "distance = span",
                format!("transition {t}: tau {tau}, move {} spans {span}", oracle.moves[t]),
            ));
        }
    }

    let pattern = last_perm_pattern(k);
    let expected_final: Vec<u32> = pattern.iter().map(|&p| items[p]).collect();
    if run.final_state != expected_final {
        return Err(fail("final permutation", format!("{:?}, expected {expected_final:?}", run.final_state)));
    }
    if run.allocations_after != run.allocations_before {
        return Err(fail(
            "in-place",
            format!("{} nodes before, {} after", run.allocations_before, run.allocations_after),
        ));
    }

    let stream: Vec<MoveRecord> = move_stream(k).collect();
    if stream != oracle.moves {
        return Err(fail("move stream", "differs from the oracle's moves".to_string()));
    }
    let mut replay = SinglyLinkedSeq::from_elements(items.iter().copied());
    for (t, m) in stream.iter().enumerate() {
        apply_move(&mut replay, *m).map_err(|e| fail("replay", e.to_string()))?;
        if replay.to_vec() != run.snapshots[t + 1] {
            return Err(fail("replay", format!("after move {t} ({m})")));
        }
    }

    let brute = if k <= BRUTE_FORCE_RANK_LIMIT {
        Some(BruteForceIndexer::new(k).map_err(|e| fail("brute force index", e.to_string()))?)
    } else {
        None
    };
    for (n, snap) in run.snapshots.iter().enumerate() {
        let index = BigUint::from(n);
        let mut seq = SinglyLinkedSeq::from_elements(0..k as u32);
        quick_perm(&mut seq, &index).map_err(|e| fail("unrank", e.to_string()))?;
        if seq.iter().ne(snap.iter()) {
            return Err(fail("unrank", format!("index {n}: {:?}, expected {snap:?}", seq.to_vec())));
        }
        let canonical = CanonicalPermutation::new(snap.iter().map(|&x| x as usize).collect())
            .map_err(|e| fail("rank", e.to_string()))?;
        let ranked = quick_index(&canonical);
        if ranked != index {
            return Err(fail("rank", format!("{snap:?} ranked {ranked}, expected {n}")));
        }
        if let Some(brute) = &brute {
            let b = brute.index_of(canonical.as_slice()).map_err(|e| fail("brute force index", e.to_string()))?;
            if b != ranked {
                return Err(fail("brute force index", format!("{snap:?}: {b} vs {ranked}")));
            }
        }
    }

    Ok(LevelReport {
        k,
        visited: run.snapshots.len(),
        expected,
        transitions: run.snapshots.len() - 1,
        ranked: run.snapshots.len(),
    })
}
