//! Deterministic partitioned execution for range sweeps.
//!
//! Chunk boundaries depend only on the range, never on the worker count,
//! and every chunk recomputes its prefix state from scratch in the same
//! order a sequential pass would. Results are therefore byte-identical for
//! any `--workers` value; workers only change wall time.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::Result;

/// Cap on the number of chunks per sweep; bounds the total prefix
/// recomputation at ~half a full pass times this count.
const MAX_CHUNKS: u64 = 64;

/// Split `[lo, hi]` into at most [`MAX_CHUNKS`] contiguous chunks of at
/// least `min_len` positions each.
pub fn chunk_ranges(lo: u64, hi: u64, min_len: u64) -> Vec<(u64, u64)> {
    debug_assert!(lo <= hi);
    let span = hi - lo + 1;
    let len = min_len.max(span.div_ceil(MAX_CHUNKS)).max(1);
    let mut chunks = Vec::new();
    let mut a = lo;
    loop {
        let b = a.saturating_add(len - 1).min(hi);
        chunks.push((a, b));
        if b == hi {
            break;
        }
        a = b + 1;
    }
    chunks
}

/// Run `f` over every chunk with `workers` threads and return the results
/// in chunk order. The first failing chunk (by position) wins error
/// propagation, independent of scheduling.
pub fn run_chunked<T, F>(chunks: &[(u64, u64)], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, u64) -> Result<T> + Sync,
{
    let workers = workers.max(1).min(chunks.len().max(1));
    if workers == 1 {
        return chunks.iter().map(|&(a, b)| f(a, b)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<T>>>> =
        Mutex::new((0..chunks.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chunks.len() {
                    break;
                }
                let (a, b) = chunks[i];
                let r = f(a, b);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|slot| slot.expect("chunk completed"))
        .collect()
}

/// Default worker count: available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
