//! Sequential or data-parallel evaluation of independent work items.

use std::ops::Range;

use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool when built with the `parallel` feature, otherwise
    /// runs sequentially.
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

const CHUNK: u64 = 1 << 10;

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK)).map(|i| i * CHUNK..((i + 1) * CHUNK).min(total)).collect()
}

impl Exec {
    /// Folds `work` over `0..total` split into ranges, merging partial results
    /// with `merge`. Any split gives the same answer when `merge` is
    /// associative and commutative.
    pub fn fold_range<T, W, M>(self, total: u64, work: W, merge: M) -> Result<T>
    where
        T: Send + Default,
        W: Fn(Range<u64>) -> Result<T> + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if total > CHUNK => {
                use rayon::prelude::*;
                chunks(total)
                    .into_par_iter()
                    .map(work)
                    .try_reduce(T::default, |a, b| Ok(merge(a, b)))
            }
            _ => {
                let mut acc = T::default();
                for r in chunks(total) {
                    acc = merge(acc, work(r)?);
                }
                Ok(acc)
            }
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Result<Vec<T>>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> Result<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let work = |r: Range<u64>| Ok(r.map(|x| x * x).sum::<u64>());
        let a = Exec::Sequential.fold_range(10_000, work, |a, b| a + b).unwrap();
        let b = Exec::Parallel.fold_range(10_000, work, |a, b| a + b).unwrap();
        assert_eq!(a, b);
        assert_eq!(Exec::Sequential.fold_range(0, work, |a, b| a + b).unwrap(), 0);
    }
}
