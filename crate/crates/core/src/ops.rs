//! Per-thread operation counter used as the machine-independent complexity
//! metric.
//!
//! Field multiplications, divisions and inversions each count as one
//! operation; maximum-likelihood decoders add one operation per codeword bit
//! compared. Counters are thread-local, so a measurement taken around a call
//! on one thread only sees work done by that call.

use std::cell::Cell;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub(crate) fn add(n: u64) {
    OPS.with(|c| c.set(c.get().wrapping_add(n)));
}

/// Current value of this thread's counter.
pub fn snapshot() -> u64 {
    OPS.with(Cell::get)
}

/// Runs `f` and returns its result with the number of operations it performed
/// on the current thread.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = snapshot();
    let out = f();
    (out, snapshot().wrapping_sub(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_counts_only_inner_work() {
        add(5);
        let ((), n) = measure(|| add(3));
        assert_eq!(n, 3);
    }
}
