//! Worker-pool shim. With the `parallel` feature the map runs on a scoped
//! rayon pool of exactly `workers` threads; without it (or with one worker)
//! it runs on the calling thread. Output order is the input index order in
//! every case, which is what makes pairwise computations reproducible
//! independent of the worker count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<O, F>(count: usize, workers: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to start worker pool");
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<O, F>(count: usize, _workers: usize, f: F) -> Vec<O>
where
    O: Send,
    F: Fn(usize) -> O + Sync + Send,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_index_order() {
        for workers in [1, 2, 8] {
            let out = map_indexed(100, workers, |i| i * i);
            assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }
}
