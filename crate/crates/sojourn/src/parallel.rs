//! Deterministic work splitting for range scans.
//!
//! Multi-worker runs must produce byte-identical output to single-worker
//! runs. Two rules make that automatic: the range is cut into fixed-length
//! blocks whose boundaries depend only on the block length (never on the
//! worker count), and block results are folded strictly in block order. The
//! worker count then only decides how many blocks are in flight at once.

use crate::Result;

/// Block length used by the CLI scans: large enough that per-block overhead
/// is invisible, small enough that a 10^7-row scan still splits into enough
/// blocks to occupy several workers.
pub const DEFAULT_BLOCK_LEN: u64 = 1 << 20;

/// The inclusive block partition of `lo..=hi` with block length `block_len`.
pub fn blocks(lo: u64, hi: u64, block_len: u64) -> Vec<(u64, u64)> {
    assert!(lo <= hi, "empty block range {lo}..={hi}");
    assert!(block_len >= 1, "block length must be positive");
    let mut out = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a + (block_len - 1));
        out.push((a, b));
        if b == hi {
            break;
        }
        a = b + 1;
    }
    out
}

/// Maps every block of `lo..=hi` and folds the results in block order.
///
/// `map` runs on scoped worker threads (`workers` blocks at a time); `fold`
/// runs on the calling thread. Errors from either end the run at the first
/// failing block, in block order. A panic on a worker (an invariant
/// violation somewhere in the scan) is resumed on the calling thread.
pub fn run_blocks<T, M, F>(
    lo: u64,
    hi: u64,
    block_len: u64,
    workers: usize,
    map: M,
    mut fold: F,
) -> Result<()>
where
    T: Send,
    M: Fn(u64, u64) -> Result<T> + Sync,
    F: FnMut(T) -> Result<()>,
{
    assert!(workers >= 1, "need at least one worker");
    let parts = blocks(lo, hi, block_len);
    if workers == 1 {
        for (a, b) in parts {
            fold(map(a, b)?)?;
        }
        return Ok(());
    }
    for batch in parts.chunks(workers) {
        let results: Vec<Result<T>> = std::thread::scope(|scope| {
            let map = &map;
            let handles: Vec<_> = batch
                .iter()
                .map(|&(a, b)| scope.spawn(move || map(a, b)))
                .collect();
            handles
                .into_iter()
                .map(|h| match h.join() {
                    Ok(r) => r,
                    Err(panic) => std::panic::resume_unwind(panic),
                })
                .collect()
        });
        for r in results {
            fold(r?)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn partition_is_exact_and_ordered() {
        assert_eq!(blocks(1, 103, 10).len(), 11);
        assert_eq!(blocks(1, 103, 10)[0], (1, 10));
        assert_eq!(blocks(1, 103, 10)[10], (101, 103));
        assert_eq!(blocks(7, 7, 10), vec![(7, 7)]);
        assert_eq!(blocks(1, 20, 10), vec![(1, 10), (11, 20)]);
        // Boundaries are a function of the block length alone.
        for (lo, hi) in [(1u64, 1000u64), (5, 5), (3, 999)] {
            let p = blocks(lo, hi, 64);
            assert_eq!(p.first().unwrap().0, lo);
            assert_eq!(p.last().unwrap().1, hi);
            for pair in p.windows(2) {
                assert_eq!(pair[0].1 + 1, pair[1].0, "gap or overlap in partition");
            }
        }
    }

    #[test]
    fn fold_order_is_independent_of_worker_count() {
        let mut reference = Vec::new();
        run_blocks(1, 103, 10, 1, |a, b| Ok((a, b)), |r| {
            reference.push(r);
            Ok(())
        })
        .unwrap();
        for workers in [2, 3, 8] {
            let mut seen = Vec::new();
            run_blocks(1, 103, 10, workers, |a, b| Ok((a, b)), |r| {
                seen.push(r);
                Ok(())
            })
            .unwrap();
            assert_eq!(seen, reference, "fold order changed with {workers} workers");
        }
    }

    #[test]
    fn sums_agree_across_worker_counts() {
        let total = |workers| {
            let mut acc = 0u64;
            run_blocks(1, 12_345, 1000, workers, |a, b| Ok((a..=b).sum::<u64>()), |s| {
                acc += s;
                Ok(())
            })
            .unwrap();
            acc
        };
        let expected = 12_345u64 * 12_346 / 2;
        for workers in [1, 2, 5] {
            assert_eq!(total(workers), expected);
        }
    }

    #[test]
    fn map_errors_stop_the_run() {
        let result = run_blocks(
            1,
            100,
            10,
            3,
            |a, b| {
                if (a..=b).contains(&55) {
                    Err(Error::invalid("block refused"))
                } else {
                    Ok(())
                }
            },
            |()| Ok(()),
        );
        assert!(matches!(result, Err(Error::InvalidArgument(_))));
    }

    #[test]
    #[should_panic(expected = "worker invariant")]
    fn worker_panics_propagate() {
        let _ = run_blocks(
            1,
            100,
            10,
            4,
            |a, _| {
                if a > 50 {
                    panic!("worker invariant");
                }
                Ok(())
            },
            |()| Ok(()),
        );
    }
}
