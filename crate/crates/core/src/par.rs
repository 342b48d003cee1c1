//! Grid sweeps that run on the rayon pool or on the calling thread.
//!
//! Every sweep collects into a `Vec` in input order, so reductions done by
//! callers over the result see the same sequence in either mode.

use std::sync::atomic::{AtomicBool, Ordering};

static SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// How grid sweeps are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

/// Returns the active execution mode.
///
/// Without the `parallel` feature this is always [`Execution::Sequential`].
pub fn execution() -> Execution {
    if cfg!(feature = "parallel") && !SEQUENTIAL.load(Ordering::Relaxed) {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

/// Selects the execution mode for subsequent sweeps. Results do not depend on it.
pub fn set_execution(mode: Execution) {
    SEQUENTIAL.store(mode == Execution::Sequential, Ordering::Relaxed);
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match execution() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Fallible [`map`]; the first error in input order is returned.
pub fn try_map<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}
