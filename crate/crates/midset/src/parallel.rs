//! Deterministic fork-join helper.
//!
//! Work is split into contiguous index chunks and results are concatenated in
//! chunk order, so the output is identical for every thread count — the
//! property the extraction and certification determinism contracts rely on.

/// Map `f` over `items`, using up to `threads` OS threads.
///
/// `f` must be pure (same input, same output); under that assumption the
/// result is bit-identical regardless of `threads`.
pub(crate) fn parallel_map<T, U, F>(items: &[T], threads: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || items.len() < 2 * threads {
        return items.iter().map(|item| f(item)).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(f).collect::<Vec<U>>()))
            .collect();
        let mut out = Vec::with_capacity(items.len());
        for handle in handles {
            out.append(&mut handle.join().expect("worker thread panicked"));
        }
        out
    })
}
