//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the `Parallel` mode runs on the
//! current rayon pool; without it every mode runs sequentially. Results are
//! identical in both modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Smallest index in `0..n` satisfying `pred`, each worker holding its own
/// scratch state built by `init`.
pub fn first_index<T, I, P>(exec: Exec, n: usize, init: I, pred: P) -> Option<usize>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    P: Fn(&mut T, usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map_init(&init, |state, i| pred(state, i))
            .position_first(|hit| hit);
    }
    let _ = exec;
    let mut state = init();
    (0..n).find(|&i| pred(&mut state, i))
}

/// Sum of `f(i)` over `0..n`.
pub fn sum<T, I, F>(exec: Exec, n: u64, init: I, f: F) -> u64
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map_init(&init, |state, i| f(state, i))
            .sum();
    }
    let _ = exec;
    let mut state = init();
    (0..n).map(|i| f(&mut state, i)).sum()
}

/// Order-preserving map.
pub fn map<A, B, F>(exec: Exec, items: &[A], f: F) -> Vec<B>
where
    A: Sync,
    B: Send,
    F: Fn(&A) -> B + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
