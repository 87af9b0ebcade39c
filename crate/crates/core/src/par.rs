//! Thin data-parallel layer.
//!
//! With the `parallel` feature these helpers fan out over rayon's global
//! pool; without it they run the same closures on the calling thread, so
//! callers are written once.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map every item, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map over `0..n`, preserving order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Fold chunks of `items` into accumulators and merge them.
///
/// `merge` must be associative; the result does not depend on how the
/// items were split.
pub fn fold_merge<T, A, ID, FO, ME>(items: &[T], identity: ID, fold: FO, merge: ME) -> A
where
    T: Sync,
    A: Send,
    ID: Fn() -> A + Sync + Send,
    FO: Fn(A, &T) -> A + Sync + Send,
    ME: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items
            .par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        items.iter().fold(identity(), fold)
    }
}

/// Number of worker threads the helpers will use.
pub fn threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        let v: Vec<u64> = (0..1000).collect();
        let out = map(&v, |x| x * 2);
        assert_eq!(out, v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(map_range(5, |i| i + 1), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn fold_merge_sums() {
        let v: Vec<u64> = (1..=100).collect();
        let s = fold_merge(&v, || 0u64, |a, x| a + x, |a, b| a + b);
        assert_eq!(s, 5050);
    }
}
