//! Task-queue thread pool for the recursive searches.
//!
//! A task is one recursive-search invocation on an owned value. A running
//! task offers its sub-branches back to the pool: if idle workers exist the
//! branch is enqueued, otherwise the offer is declined and the caller
//! recurses inline. The idle probe is approximate; correctness never
//! depends on it, only load balance.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Condvar, Mutex};

pub(crate) struct Pool<T> {
    queue: Mutex<VecDeque<T>>,
    cv: Condvar,
    idle: AtomicUsize,
    /// Tasks queued or currently executing; 0 means the search is done.
    pending: AtomicUsize,
}

impl<T: Send> Pool<T> {
    /// Enqueue `task` if idle workers exist, otherwise hand it back.
    pub fn offer(&self, task: T) -> Option<T> {
        if self.idle.load(Ordering::Relaxed) == 0 {
            return Some(task);
        }
        self.pending.fetch_add(1, Ordering::SeqCst);
        self.queue.lock().unwrap().push_back(task);
        self.cv.notify_one();
        None
    }

    fn next_task(&self) -> Option<T> {
        let mut queue = self.queue.lock().unwrap();
        loop {
            if let Some(t) = queue.pop_front() {
                return Some(t);
            }
            if self.pending.load(Ordering::SeqCst) == 0 {
                return None;
            }
            self.idle.fetch_add(1, Ordering::SeqCst);
            queue = self.cv.wait(queue).unwrap();
            self.idle.fetch_sub(1, Ordering::SeqCst);
        }
    }

    fn finish_task(&self) {
        if self.pending.fetch_sub(1, Ordering::SeqCst) == 1 {
            self.cv.notify_all();
        }
    }
}

/// Runs `work` over `root` and everything it spawns, on `threads` workers.
pub(crate) fn run<T, F>(threads: usize, root: T, work: F)
where
    T: Send,
    F: Fn(T, &Pool<T>) + Sync,
{
    let pool = Pool {
        queue: Mutex::new(VecDeque::new()),
        cv: Condvar::new(),
        idle: AtomicUsize::new(0),
        pending: AtomicUsize::new(1),
    };
    pool.queue.lock().unwrap().push_back(root);
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| {
                while let Some(task) = pool.next_task() {
                    work(task, &pool);
                    pool.finish_task();
                }
            });
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::AtomicU64;

    /// Sum 1..=n by recursive splitting, under various thread counts.
    #[test]
    fn recursive_sum() {
        for threads in [1, 2, 4, 8] {
            let total = AtomicU64::new(0);
            fn go(range: (u64, u64), pool: &Pool<(u64, u64)>, total: &AtomicU64) {
                let (lo, hi) = range;
                if hi - lo < 64 {
                    total.fetch_add((lo..hi).sum::<u64>(), Ordering::Relaxed);
                    return;
                }
                let mid = lo + (hi - lo) / 2;
                for part in [(lo, mid), (mid, hi)] {
                    if let Some(p) = pool.offer(part) {
                        go(p, pool, total);
                    }
                }
            }
            run(threads, (1u64, 100_001u64), |t, pool| go(t, pool, &total));
            assert_eq!(total.load(Ordering::Relaxed), 5_000_050_000);
        }
    }
}
