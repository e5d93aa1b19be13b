//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel loop in the crate goes through these functions. Results
//! are always reduced in index order so output never depends on scheduling.
//! Without the `parallel` feature, [`ExecMode::Parallel`] silently runs the
//! sequential path.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// First `Some` produced by `f` over `0..len`, by index. Per-worker scratch
/// state is created with `init`.
pub fn find_map_first<S, T, I, F>(mode: ExecMode, len: u64, init: I, f: F) -> Option<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map_init(&init, |s, i| f(s, i)).find_map_first(|x| x);
    }
    let _ = mode;
    let mut state = init();
    (0..len).find_map(|i| f(&mut state, i))
}

/// `f` applied to every item, collected in input order.
pub fn map_collect<A, T, F>(mode: ExecMode, items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// `f` over `0..len`, collected in index order.
pub fn map_range<T, F>(mode: ExecMode, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..len).map(f).collect()
}

/// Whether `pred` holds for every index in `0..len`.
pub fn all_range<F>(mode: ExecMode, len: u64, pred: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().all(pred);
    }
    let _ = mode;
    (0..len).all(pred)
}

/// Smallest index in `0..len` where `pred` fails.
pub fn first_failure<F>(mode: ExecMode, len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    find_map_first(mode, len, || (), |_, i| (!pred(i)).then_some(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            let hit = find_map_first(
                mode,
                10_000,
                || 0u64,
                |calls, i| {
                    *calls += 1;
                    (i % 977 == 976 || i % 1301 == 1300).then_some(i)
                },
            );
            assert_eq!(hit, Some(976));
            assert_eq!(map_range(mode, 5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert!(all_range(mode, 1000, |i| i < 1000));
            assert_eq!(first_failure(mode, 1000, |i| i < 600), Some(600));
        }
    }
}
