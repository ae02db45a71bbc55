//! Data-parallel helpers.
//!
//! With the `parallel` feature these run on the ambient rayon pool; without
//! it they fall back to plain sequential iteration. Every helper returns
//! results in index order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f(i)` for every `i` in `lo..=hi`, in order.
pub fn map_range<T, F>(lo: u64, hi: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    if lo > hi {
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    {
        (lo..=hi).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..=hi).map(f).collect()
    }
}

/// `f(item)` for every item, in order.
pub fn map_slice<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
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

/// Least `i` in `lo..=hi` with `pred(i)`.
pub fn find_first<F>(lo: u64, hi: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    if lo > hi {
        return None;
    }
    #[cfg(feature = "parallel")]
    {
        (lo..=hi).into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..=hi).find(|&i| pred(i))
    }
}

/// Number of worker threads the helpers will use.
pub fn current_threads() -> usize {
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
    fn helpers_preserve_order() {
        assert_eq!(map_range(3, 7, |i| i * i), vec![9, 16, 25, 36, 49]);
        assert!(map_range(5, 4, |i| i).is_empty());
        assert_eq!(map_slice(&[1u64, 2, 3], |x| x + 1), vec![2, 3, 4]);
        assert_eq!(find_first(1, 10_000, |i| i % 97 == 0 && i > 100), Some(194));
        assert_eq!(find_first(1, 100, |_| false), None);
    }
}
