//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) [`ExecMode::Parallel`] runs on the
//! rayon pool; without it every mode runs sequentially. Output order always
//! matches input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}

/// Parallel map with a per-worker state built by `init` (an engine with
/// its caches, typically).
pub fn map_init<T, S, R, I, F>(mode: ExecMode, items: Vec<T>, init: I, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    I: Fn() -> S + Send + Sync,
    F: Fn(&mut S, T) -> R + Send + Sync,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map_init(&init, |s, t| f(s, t)).collect()
        }
        _ => {
            let mut state = init();
            items.into_iter().map(|t| f(&mut state, t)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_preserved_in_both_modes() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map(ExecMode::Sequential, items.clone(), |x| x * x);
        let b = map(ExecMode::Parallel, items.clone(), |x| x * x);
        assert_eq!(a, b);
        let c = map_init(ExecMode::Parallel, items, || 3u64, |s, x| *s + x);
        assert_eq!(c[10], 13);
    }
}
