//! Edge-parallel job runner with dynamic batch claiming.
//!
//! Workers claim contiguous batches of the edge permutation from a shared
//! atomic cursor. Each worker keeps private scratch and a private accumulator;
//! accumulators are merged in worker order after all workers have joined.
//! Kernels only add integers, so the merged result does not depend on which
//! worker processed which batch.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use crate::census::CensusError;
use crate::graph::{order_edges_by_degree, EdgeRef, Graph};

pub const MAX_BATCH_SIZE: usize = 4096;
pub const DEFAULT_BATCH_SIZE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrdering {
    /// Canonical edge order.
    #[default]
    Input,
    /// Largest endpoint degree first.
    DegreeDesc,
}

impl FromStr for EdgeOrdering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "input" => Ok(EdgeOrdering::Input),
            "degree" | "degree-desc" => Ok(EdgeOrdering::DegreeDesc),
            _ => Err(format!("unknown ordering {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelConfig {
    pub workers: usize,
    pub batch_size: usize,
    pub ordering: EdgeOrdering,
}

impl Default for ParallelConfig {
    fn default() -> Self {
        ParallelConfig { workers: available_workers(), batch_size: DEFAULT_BATCH_SIZE, ordering: EdgeOrdering::Input }
    }
}

impl ParallelConfig {
    pub fn serial() -> Self {
        ParallelConfig { workers: 1, ..Default::default() }
    }

    pub fn with_workers(workers: usize) -> Self {
        ParallelConfig { workers, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), CensusError> {
        if self.workers == 0 {
            return Err(CensusError::Config("workers must be at least 1".into()));
        }
        if self.batch_size == 0 || self.batch_size > MAX_BATCH_SIZE {
            return Err(CensusError::Config(format!("batch size must be in 1..={MAX_BATCH_SIZE}")));
        }
        Ok(())
    }
}

pub fn available_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// A per-edge procedure run by [`run_edge_jobs`].
pub trait EdgeKernel: Sync {
    type Scratch;
    type Acc: Send;

    fn scratch(&self) -> Self::Scratch;
    fn accumulator(&self) -> Self::Acc;
    fn process(&self, e: EdgeRef, scratch: &mut Self::Scratch, acc: &mut Self::Acc) -> Result<(), CensusError>;
    fn merge(&self, into: &mut Self::Acc, from: Self::Acc);
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "worker panicked".to_string()
    }
}

/// Runs `kernel` once on every edge of `g` and returns the merged accumulator.
///
/// The first kernel error stops all workers and is returned. A panicking
/// worker is reported as [`CensusError::Worker`].
pub fn run_edge_jobs<K: EdgeKernel>(g: &Graph, config: &ParallelConfig, kernel: &K) -> Result<K::Acc, CensusError> {
    config.validate()?;
    let order: Vec<usize> = match config.ordering {
        EdgeOrdering::Input => (0..g.num_edges()).collect(),
        EdgeOrdering::DegreeDesc => order_edges_by_degree(g),
    };
    let batch = config.batch_size;
    let workers = config.workers.min(order.len().div_ceil(batch)).max(1);
    let cursor = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);

    let work = || -> Result<K::Acc, CensusError> {
        let mut scratch = kernel.scratch();
        let mut acc = kernel.accumulator();
        loop {
            if abort.load(Ordering::Relaxed) {
                return Ok(acc);
            }
            let start = cursor.fetch_add(batch, Ordering::Relaxed);
            if start >= order.len() {
                return Ok(acc);
            }
            for &i in &order[start..(start + batch).min(order.len())] {
                if let Err(e) = kernel.process(g.edge(i), &mut scratch, &mut acc) {
                    abort.store(true, Ordering::Relaxed);
                    return Err(e);
                }
            }
        }
    };

    let results: Vec<Result<K::Acc, CensusError>> = if workers == 1 {
        vec![catch_unwind(AssertUnwindSafe(work)).unwrap_or_else(|p| Err(CensusError::Worker(panic_message(p))))]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(work)).collect();
            handles
                .into_iter()
                .map(|h| {
                    h.join().unwrap_or_else(|p| {
                        abort.store(true, Ordering::Relaxed);
                        Err(CensusError::Worker(panic_message(p)))
                    })
                })
                .collect()
        })
    };

    let mut merged = kernel.accumulator();
    let mut first_err = None;
    for r in results {
        match r {
            Ok(acc) => kernel.merge(&mut merged, acc),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(merged),
    }
}

/// One row of a speedup table.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SpeedupRow {
    pub workers: usize,
    pub seconds: f64,
    pub speedup: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        (xs[k / 2 - 1] + xs[k / 2]) / 2.0
    }
}

/// Times `run` for each worker count, `repetitions` times each, and reports
/// the median wall-clock time and the speedup over the first entry.
///
/// `worker_counts` should start with 1 for speedups relative to one worker.
pub fn measure_speedup_with<F>(
    worker_counts: &[usize],
    repetitions: usize,
    mut run: F,
) -> Result<Vec<SpeedupRow>, CensusError>
where
    F: FnMut(usize) -> Result<(), CensusError>,
{
    let mut rows: Vec<SpeedupRow> = Vec::with_capacity(worker_counts.len());
    for &w in worker_counts {
        let mut times = Vec::with_capacity(repetitions.max(1));
        for _ in 0..repetitions.max(1) {
            let t = Instant::now();
            run(w)?;
            times.push(t.elapsed().as_secs_f64());
        }
        let seconds = median(times);
        let base = rows.first().map_or(seconds, |r| r.seconds);
        rows.push(SpeedupRow { workers: w, seconds, speedup: if seconds > 0.0 { base / seconds } else { 1.0 } });
    }
    Ok(rows)
}

/// Median-of-five census timings of `g` for each worker count.
pub fn measure_speedup(g: &Graph, worker_counts: &[usize], base: &ParallelConfig) -> Result<Vec<SpeedupRow>, CensusError> {
    measure_speedup_with(worker_counts, 5, |w| {
        let config = ParallelConfig { workers: w, ..*base };
        crate::census::graphlet_census(g, &config).map(|_| ())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    struct VisitCounter;

    impl EdgeKernel for VisitCounter {
        type Scratch = ();
        type Acc = Vec<u32>;

        fn scratch(&self) {}

        fn accumulator(&self) -> Vec<u32> {
            Vec::new()
        }

        fn process(&self, e: EdgeRef, _: &mut (), acc: &mut Vec<u32>) -> Result<(), CensusError> {
            if acc.len() <= e.index {
                acc.resize(e.index + 1, 0);
            }
            acc[e.index] += 1;
            Ok(())
        }

        fn merge(&self, into: &mut Vec<u32>, from: Vec<u32>) {
            if into.len() < from.len() {
                into.resize(from.len(), 0);
            }
            for (a, b) in into.iter_mut().zip(from) {
                *a += b;
            }
        }
    }

    #[test]
    fn every_edge_visited_once() {
        let g = generators::gnm(300, 1500, 3);
        for workers in [1, 2, 4, 8] {
            for batch_size in [1, 7, 64, 256] {
                for ordering in [EdgeOrdering::Input, EdgeOrdering::DegreeDesc] {
                    let cfg = ParallelConfig { workers, batch_size, ordering };
                    let visits = run_edge_jobs(&g, &cfg, &VisitCounter).unwrap();
                    assert_eq!(visits.len(), g.num_edges());
                    assert!(visits.iter().all(|&c| c == 1));
                }
            }
        }
    }

    struct Failing;

    impl EdgeKernel for Failing {
        type Scratch = ();
        type Acc = ();

        fn scratch(&self) {}
        fn accumulator(&self) {}

        fn process(&self, e: EdgeRef, _: &mut (), _: &mut ()) -> Result<(), CensusError> {
            if e.index == 17 {
                panic!("boom at 17");
            }
            if e.index == 40 {
                return Err(CensusError::Inconsistent("edge 40"));
            }
            Ok(())
        }

        fn merge(&self, _: &mut (), _: ()) {}
    }

    #[test]
    fn failures_abort_the_run() {
        let g = generators::gnm(60, 100, 1);
        for workers in [1, 3] {
            let cfg = ParallelConfig { workers, batch_size: 4, ordering: EdgeOrdering::Input };
            let err = run_edge_jobs(&g, &cfg, &Failing).unwrap_err();
            assert!(matches!(err, CensusError::Worker(_) | CensusError::Inconsistent(_)), "{err:?}");
        }
    }

    #[test]
    fn config_bounds() {
        assert!(ParallelConfig { workers: 0, ..Default::default() }.validate().is_err());
        assert!(ParallelConfig { batch_size: 0, ..Default::default() }.validate().is_err());
        assert!(ParallelConfig { batch_size: 4097, ..Default::default() }.validate().is_err());
        assert!(ParallelConfig::default().validate().is_ok());
        assert_eq!("degree".parse::<EdgeOrdering>().unwrap(), EdgeOrdering::DegreeDesc);
    }

    #[test]
    fn speedup_baseline_is_one() {
        let rows = measure_speedup_with(&[1, 2], 3, |_| Ok(())).unwrap();
        assert_eq!(rows[0].speedup, 1.0);
        assert_eq!(rows.len(), 2);
    }
}
