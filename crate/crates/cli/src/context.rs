//! Worker pool, result cache and stage timings shared by one run.

use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::cache::{cache_key, Cache};
use crate::error::{CliError, CliResult};
use crate::manifest::Stage;

type Compute<T> = Box<dyn Fn() -> CliResult<T> + Send + Sync>;

/// A unit of work identified by its module and inputs.
pub struct Job<T> {
    pub inputs: Value,
    pub compute: Compute<T>,
}

impl<T> Job<T> {
    pub fn new(inputs: Value, compute: impl Fn() -> CliResult<T> + Send + Sync + 'static) -> Self {
        Job { inputs, compute: Box::new(compute) }
    }
}

pub struct Context {
    pool: rayon::ThreadPool,
    workers: usize,
    pub cache: Cache,
    pub seed: u64,
    pub stages: Vec<Stage>,
}

impl Context {
    pub fn new(workers: usize, cache: Cache, seed: u64) -> CliResult<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::Validation(format!("cannot start {workers} workers: {e}")))?;
        Ok(Context { pool, workers, cache, seed, stages: Vec::new() })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Runs uncached jobs on the pool and returns all outputs in job order.
    /// New results are recorded in the cache from this thread only.
    pub fn run<T>(&mut self, module: &str, jobs: Vec<Job<T>>) -> CliResult<Vec<T>>
    where
        T: Serialize + DeserializeOwned + Send,
    {
        let mut out: Vec<Option<T>> = Vec::with_capacity(jobs.len());
        let mut todo = Vec::new();
        for (i, job) in jobs.iter().enumerate() {
            let hit = self
                .cache
                .get(&cache_key(module, &job.inputs))
                .and_then(|v| serde_json::from_value::<T>(v.clone()).ok());
            if hit.is_none() {
                todo.push(i);
            }
            out.push(hit);
        }
        let computed: Vec<(usize, CliResult<T>)> = self.pool.install(|| {
            use rayon::prelude::*;
            todo.par_iter().map(|&i| (i, (jobs[i].compute)())).collect()
        });
        for (i, r) in computed {
            let value = r?;
            self.cache.insert(module, jobs[i].inputs.clone(), serde_json::to_value(&value)?);
            out[i] = Some(value);
        }
        self.cache.flush()?;
        Ok(out.into_iter().map(|v| v.expect("every job produced a value")).collect())
    }

    pub fn stage<R>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> R) -> R {
        let t = Instant::now();
        let r = f(self);
        self.stages.push(Stage { name: name.into(), seconds: t.elapsed().as_secs_f64() });
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;

    #[test]
    fn cached_jobs_are_not_recomputed() {
        let calls = Arc::new(AtomicUsize::new(0));
        let mut ctx = Context::new(2, Cache::in_memory(), 0).unwrap();
        let make = |x: i64| {
            let calls = Arc::clone(&calls);
            Job::new(serde_json::json!({ "x": x }), move || {
                calls.fetch_add(1, Ordering::SeqCst);
                Ok(x * x)
            })
        };
        assert_eq!(ctx.run("sq", vec![make(2), make(3)]).unwrap(), vec![4, 9]);
        assert_eq!(ctx.run("sq", vec![make(3), make(4)]).unwrap(), vec![9, 16]);
        assert_eq!(calls.load(Ordering::SeqCst), 3);
    }
}
