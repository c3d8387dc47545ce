use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::field::FieldSpec;

const MAX_CHUNK: u64 = 1 << 18;
const PROGRESS_EVERY: u64 = 10_000_000;

/// The set of monic degree-`m` polynomials being enumerated.
///
/// Index `i` maps to coefficients `a_0, a_1, ...` as base-`q` digits of `i`,
/// constant term fastest. With `reduced`, `a_{m-1}` is pinned to 0 and only
/// the lower `m - 1` coefficients vary.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Enumeration {
    pub q: u32,
    pub m: usize,
    pub reduced: bool,
}

impl Enumeration {
    pub fn free(&self) -> usize {
        if self.reduced {
            self.m - 1
        } else {
            self.m
        }
    }

    pub fn len(&self) -> u64 {
        (self.q as u64).pow(self.free() as u32)
    }

    pub fn decode(&self, mut index: u64, coeffs: &mut Vec<u32>) {
        coeffs.clear();
        coeffs.resize(self.m + 1, 0);
        coeffs[self.m] = 1;
        for c in coeffs.iter_mut().take(self.free()) {
            *c = (index % self.q as u64) as u32;
            index /= self.q as u64;
        }
    }

    #[inline]
    fn increment(&self, coeffs: &mut [u32]) {
        for c in coeffs.iter_mut().take(self.free()) {
            *c += 1;
            if *c < self.q {
                return;
            }
            *c = 0;
        }
    }
}

/// Runs `visit` over every polynomial of `en`, splitting the index space into
/// contiguous ranges handled on a pool of `workers` threads. Each range folds
/// into its own accumulator; accumulators are combined with `merge`, which
/// must be associative and commutative for the result to be schedule-free.
pub(crate) fn drive<A, I, V, M>(
    spec: &FieldSpec,
    en: Enumeration,
    workers: usize,
    progress: Option<&str>,
    init: I,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u32], u64) + Sync,
    M: Fn(A, A) -> A + Sync,
{
    debug_assert_eq!(spec.q(), en.q);
    let total = en.len();
    let workers = workers.max(1);
    let per_worker = total.div_ceil(workers as u64 * 8).max(1);
    let chunk = per_worker.min(MAX_CHUNK);
    let starts: Vec<u64> = (0..total.div_ceil(chunk)).map(|i| i * chunk).collect();
    let done = AtomicU64::new(0);

    let run = |start: u64| {
        let end = (start + chunk).min(total);
        let mut acc = init();
        let mut coeffs = Vec::with_capacity(en.m + 1);
        en.decode(start, &mut coeffs);
        for index in start..end {
            visit(&mut acc, &coeffs, index);
            en.increment(&mut coeffs);
        }
        if let Some(label) = progress {
            let n = end - start;
            let before = done.fetch_add(n, Ordering::Relaxed);
            if before / PROGRESS_EVERY != (before + n) / PROGRESS_EVERY {
                eprintln!("{label}: {} / {total} polynomials", before + n);
            }
        }
        acc
    };

    if workers == 1 {
        return starts.into_iter().map(run).fold(init(), &merge);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| starts.into_par_iter().map(run).reduce(&init, &merge))
}

pub(crate) fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
