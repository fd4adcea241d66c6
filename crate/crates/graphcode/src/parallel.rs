//! Minimal fork-join helper for trial loops.
//!
//! Trials are pure functions of their index, so any partition of the index
//! range yields the same multiset of outcomes; results are concatenated in
//! chunk order to keep the output deterministic as well.

pub(crate) fn run_trials<T, F>(trials: u64, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let threads = threads.max(1);
    if threads == 1 || trials < 2 {
        return (0..trials).map(f).collect();
    }
    let chunk = trials.div_ceil(threads as u64);
    let mut results: Vec<Vec<T>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads as u64 {
            let start = t * chunk;
            let end = ((t + 1) * chunk).min(trials);
            if start >= end {
                break;
            }
            let f = &f;
            handles.push(scope.spawn(move || (start..end).map(f).collect::<Vec<T>>()));
        }
        for h in handles {
            results.push(h.join().expect("trial worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}
