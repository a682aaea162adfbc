//! Wall-clock comparison of the two recovery engines on the staircase family
//! `λ = (d + 1, d, ..., 1)`.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::exec::Execution;
use crate::partition::{build_hilbert, Partition};
use crate::polynomial::Polynomial;
use crate::recovery::{DeltaEngine, NaiveEngine, RecoveryError, RecoveryOutcome};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("degree and repetition count must be at least 1")]
    BadArguments,
    #[error(transparent)]
    Recovery(#[from] RecoveryError),
    #[error("engines disagree: delta gave {delta:?}, naive gave {naive:?}")]
    Disagreement {
        delta: RecoveryOutcome,
        naive: RecoveryOutcome,
    },
}

/// `(degree + 1, degree, ..., 1)`, each value once.
pub fn staircase_partition(degree: usize) -> Partition {
    Partition::new((1..=degree + 1).rev().collect()).expect("strictly decreasing")
}

#[derive(Clone, Debug)]
pub struct EngineComparison {
    pub degree: usize,
    pub reps: usize,
    pub lambda: Partition,
    pub polynomial: Polynomial,
    pub delta_mean: Duration,
    pub naive_mean: Duration,
    pub r_max: usize,
}

impl EngineComparison {
    /// Naive time over delta time.
    pub fn ratio(&self) -> f64 {
        self.naive_mean.as_secs_f64() / self.delta_mean.as_secs_f64().max(f64::MIN_POSITIVE)
    }
}

fn mean_time<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut last = f();
    let start = Instant::now();
    for _ in 0..reps {
        last = std::hint::black_box(f());
    }
    (start.elapsed() / reps as u32, last)
}

/// Times both engines on the staircase polynomial of `degree`, the naive one
/// with `r_max = degree + 1`, and checks they recover the same partition.
pub fn compare_engines(
    degree: usize,
    reps: usize,
    execution: Execution,
) -> Result<EngineComparison, BenchError> {
    if degree == 0 || reps == 0 {
        return Err(BenchError::BadArguments);
    }
    let lambda = staircase_partition(degree);
    let polynomial = build_hilbert(&lambda);
    let r_max = degree + 1;

    let delta_engine = DeltaEngine::default();
    let naive_engine = NaiveEngine::new(r_max).with_execution(execution);

    let (delta_mean, delta) = mean_time(reps, || delta_engine.run(&polynomial));
    let delta = delta?.outcome;
    let (naive_mean, naive) = mean_time(reps, || naive_engine.run(&polynomial));

    if delta != naive || delta.partition() != Some(&lambda) {
        return Err(BenchError::Disagreement { delta, naive });
    }
    Ok(EngineComparison {
        degree,
        reps,
        lambda,
        polynomial,
        delta_mean,
        naive_mean,
        r_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase() {
        assert_eq!(staircase_partition(3).parts(), &[4, 3, 2, 1]);
    }

    #[test]
    fn small_degrees_agree() {
        let c = compare_engines(1, 2, Execution::Sequential).unwrap();
        assert_eq!(c.lambda.parts(), &[2, 1]);
        let c = compare_engines(3, 2, Execution::Parallel).unwrap();
        assert_eq!(c.lambda.parts(), &[4, 3, 2, 1]);
        assert!(matches!(
            compare_engines(0, 1, Execution::Sequential),
            Err(BenchError::BadArguments)
        ));
    }
}
