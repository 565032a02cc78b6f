//! Deterministic fan-out: items are split into contiguous index chunks, one
//! worker per chunk, and results land in their original slots. The output is
//! identical for any worker count.

use fig8::error::Result;
use std::thread;

pub fn parallel_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    let n = items.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let workers = workers.max(1).min(n);
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = n.div_ceil(workers);
    let mut slots: Vec<Option<Result<R>>> = Vec::with_capacity(n);
    slots.resize_with(n, || None);

    thread::scope(|scope| {
        let mut handles = Vec::new();
        for (w, slot_chunk) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            let start = w * chunk;
            let items = &items[start..(start + slot_chunk.len())];
            handles.push(scope.spawn(move || {
                for (slot, item) in slot_chunk.iter_mut().zip(items.iter()) {
                    *slot = Some(f(item));
                }
            }));
        }
        for h in handles {
            h.join().expect("worker panicked");
        }
    });

    slots
        .into_iter()
        .map(|s| s.expect("all slots filled"))
        .collect()
}
