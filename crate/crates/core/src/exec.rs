//! Execution strategy for the data-parallel inner loops (zig-zag enumeration,
//! ladder search, naturality sweeps, word closure).
//!
//! With the `parallel` feature the [`Exec::Parallel`] strategy runs on the
//! rayon global pool. Without it, `Parallel` silently degrades to sequential
//! iteration. Output order is always the input order, so results are
//! identical under both strategies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving flat map.
    pub fn flat_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }

    /// Returns the error for the earliest item (in input order) that fails.
    pub fn try_each<T, E, F>(self, items: &[T], f: F) -> Result<(), E>
    where
        T: Sync,
        E: Send,
        F: Fn(&T) -> Result<(), E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            let first = items
                .par_iter()
                .enumerate()
                .filter_map(|(i, x)| f(x).err().map(|e| (i, e)))
                .min_by_key(|(i, _)| *i);
            return match first {
                Some((_, e)) => Err(e),
                None => Ok(()),
            };
        }
        items.iter().try_for_each(f)
    }

    /// Sum of `f` over the items.
    pub fn sum<T, F>(self, items: &[T], f: F) -> usize
    where
        T: Sync,
        F: Fn(&T) -> usize + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).sum();
        }
        items.iter().map(f).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * 3);
        let par = Exec::Parallel.map(&items, |x| x * 3);
        assert_eq!(seq, par);
        let seq = Exec::Sequential.flat_map(&items, |x| vec![*x; (*x % 3) as usize]);
        let par = Exec::Parallel.flat_map(&items, |x| vec![*x; (*x % 3) as usize]);
        assert_eq!(seq, par);
    }

    #[test]
    fn try_each_reports_earliest_failure() {
        let items: Vec<u32> = (0..500).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let r = exec.try_each(&items, |x| if *x % 97 == 96 { Err(*x) } else { Ok(()) });
            assert_eq!(r, Err(96));
        }
    }
}
