//! Recovery of the partition behind a Hilbert polynomial.
//!
//! Two engines:
//!
//! * [`DeltaEngine`] reads the top part and its multiplicity off the sample
//!   window with repeated differences, subtracts that block of binomials and
//!   repeats on the residual until nothing is left.
//! * [`NaiveEngine`] pins `λ_1 = deg p + 1` and enumerates every candidate
//!   tail up to a size bound, comparing `deg p + 1` sample values.
//!
//! The naive engine is slow and only meant as an oracle for the delta engine.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::calculus::{binomial_seq_value, is_integer_sequence, reduce, CalculusError, Sequence};
use crate::exec::{position_first, Execution};
use crate::partition::{hilbert_value_of_parts, NonIncrSeqs, Partition};
use crate::polynomial::{Degree, Polynomial};

/// Default cap on the length of a recovered partition.
pub const DEFAULT_MAX_PARTS: usize = 1_000_000;

pub const ZERO_POLYNOMIAL_WARNING: &str = "zero polynomial: empty λ by convention";

/// Candidates checked per parallel batch by the naive engine.
const NAIVE_CHUNK: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    NonIntegerValued,
    /// The residual of degree `at_degree` has a negative leading multiplicity.
    NegativeLeadingMultiplicity { at_degree: usize, value: BigInt },
    /// The naive engine found no candidate of size at most `r_max`.
    SearchExhausted { r_max: usize },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::NonIntegerValued => write!(f, "not integer-valued"),
            FailureReason::NegativeLeadingMultiplicity { at_degree, value } => write!(
                f,
                "negative leading multiplicity ({value} at degree {at_degree} residual)"
            ),
            FailureReason::SearchExhausted { r_max } => {
                write!(f, "no partition of size at most {r_max} matches")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryOutcome {
    Success { lambda: Partition, warnings: Vec<String> },
    NotHilbert(FailureReason),
}

impl RecoveryOutcome {
    fn success(lambda: Partition) -> Self {
        RecoveryOutcome::Success {
            lambda,
            warnings: Vec::new(),
        }
    }

    fn zero_polynomial() -> Self {
        RecoveryOutcome::Success {
            lambda: Partition::empty(),
            warnings: vec![ZERO_POLYNOMIAL_WARNING.to_string()],
        }
    }

    pub fn is_hilbert(&self) -> bool {
        matches!(self, RecoveryOutcome::Success { .. })
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            RecoveryOutcome::Success { lambda, .. } => Some(lambda),
            RecoveryOutcome::NotHilbert(_) => None,
        }
    }

    pub fn reason(&self) -> Option<&FailureReason> {
        match self {
            RecoveryOutcome::Success { .. } => None,
            RecoveryOutcome::NotHilbert(reason) => Some(reason),
        }
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            RecoveryOutcome::Success { warnings, .. } => warnings,
            RecoveryOutcome::NotHilbert(_) => &[],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecoveryError {
    #[error("recovered partition would have {len} parts, above the limit of {limit}")]
    PartitionTooLarge { len: String, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<CalculusError> for RecoveryError {
    fn from(err: CalculusError) -> Self {
        RecoveryError::Internal(err.to_string())
    }
}

/// One pass of the delta engine: `reduce` gave `(m, r)`, so parts `s..=e`
/// of λ equal `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub m: usize,
    pub r: BigInt,
    pub s: usize,
    pub e: usize,
    /// Window after the block was subtracted (empty unless the engine traces).
    pub residual: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub outcome: RecoveryOutcome,
    pub trace: Vec<TraceStep>,
    /// Number of reduce/subtract passes performed.
    pub iterations: usize,
}

/// Subtracts `Σ_{i=start}^{end} B_{value-1}(x + value - i)` from `p(x)` for
/// `x` in `0..=n`. `end == start - 1` is the empty block.
pub fn subtract_block(p: &Sequence, n: usize, value: usize, start: usize, end: usize) -> Sequence {
    debug_assert!(value >= 1 && start >= 1);
    debug_assert_eq!(p.len(), n + 1);
    let values = p
        .values()
        .iter()
        .enumerate()
        .map(|(x, px)| {
            let block: BigInt = (start..=end)
                .map(|i| {
                    let t = BigInt::from(x + value) - BigInt::from(i);
                    binomial_seq_value(value - 1, &t)
                })
                .sum();
            px - BigRational::from_integer(block)
        })
        .collect();
    Sequence::new(values).expect("non-empty window")
}

/// Discrete-derivative recovery.
#[derive(Clone, Debug)]
pub struct DeltaEngine {
    pub trace: bool,
    pub max_parts: usize,
}

impl Default for DeltaEngine {
    fn default() -> Self {
        Self {
            trace: false,
            max_parts: DEFAULT_MAX_PARTS,
        }
    }
}

impl DeltaEngine {
    pub fn traced() -> Self {
        Self {
            trace: true,
            ..Self::default()
        }
    }

    pub fn run(&self, p: &Polynomial) -> Result<DeltaReport, RecoveryError> {
        let n = match p.degree() {
            Degree::ZeroPolynomial => {
                return Ok(DeltaReport {
                    outcome: RecoveryOutcome::zero_polynomial(),
                    trace: Vec::new(),
                    iterations: 0,
                })
            }
            Degree::Exact(n) => n,
        };
        let mut report = DeltaReport {
            outcome: RecoveryOutcome::NotHilbert(FailureReason::NonIntegerValued),
            trace: Vec::new(),
            iterations: 0,
        };
        let mut window = p.sample_points(n);
        if !is_integer_sequence(&window) {
            return Ok(report);
        }

        let mut parts: Vec<usize> = Vec::new();
        let mut start = 1usize;
        while !window.is_zero() {
            report.iterations += 1;
            // the residual degree drops every pass
            if report.iterations > n + 1 {
                return Err(RecoveryError::Internal(format!(
                    "more than {} passes for a degree {n} input",
                    n + 1
                )));
            }
            let mut work = window.clone();
            let reduction = reduce(&mut work)?;
            if !reduction.constant.is_integer() {
                return Err(RecoveryError::Internal(format!(
                    "non-integer multiplicity {} from an integer window",
                    reduction.constant
                )));
            }
            let r = reduction.constant.to_integer();
            if r.is_negative() {
                report.outcome = RecoveryOutcome::NotHilbert(FailureReason::NegativeLeadingMultiplicity {
                    at_degree: reduction.order,
                    value: r,
                });
                return Ok(report);
            }
            if r.is_zero() {
                return Err(RecoveryError::Internal("zero multiplicity from a nonzero window".into()));
            }
            let value = reduction.order + 1;
            if parts.last().is_some_and(|&prev| prev <= value) {
                return Err(RecoveryError::Internal(format!(
                    "block value {value} does not decrease"
                )));
            }
            let count = r
                .to_usize()
                .filter(|&c| c <= self.max_parts.saturating_sub(parts.len()))
                .ok_or_else(|| RecoveryError::PartitionTooLarge {
                    len: (BigInt::from(parts.len()) + &r).to_string(),
                    limit: self.max_parts,
                })?;
            let end = start + count - 1;
            window = subtract_block(&window, n, value, start, end);
            parts.extend(std::iter::repeat_n(value, count));
            if self.trace {
                report.trace.push(TraceStep {
                    m: reduction.order,
                    r,
                    s: start,
                    e: end,
                    residual: window.to_integers().expect("integer residual"),
                });
            }
            start += count;
        }
        let lambda = Partition::new(parts).map_err(|e| RecoveryError::Internal(e.to_string()))?;
        report.outcome = RecoveryOutcome::success(lambda);
        Ok(report)
    }
}

/// Discrete-derivative recovery with default settings.
pub fn recover_delta(p: &Polynomial) -> Result<RecoveryOutcome, RecoveryError> {
    DeltaEngine::default().run(p).map(|report| report.outcome)
}

fn matches_samples(parts: &[usize], data: &[BigInt]) -> bool {
    data.iter()
        .enumerate()
        .all(|(x, value)| hilbert_value_of_parts(parts, &BigInt::from(x)) == *value)
}

/// True iff the Macaulay sum of `lambda` agrees with `data` at `0..data.len()`.
/// With `λ_1 = data.len()` this is equality of polynomials.
pub fn compare_candidate(lambda: &Partition, data: &Sequence) -> bool {
    data.values().iter().enumerate().all(|(x, value)| {
        value.is_integer() && hilbert_value_of_parts(lambda.parts(), &BigInt::from(x)) == value.to_integer()
    })
}

/// Enumerative recovery, searching partitions of size at most `r_max`.
#[derive(Clone, Debug)]
pub struct NaiveEngine {
    pub r_max: usize,
    pub execution: Execution,
}

impl NaiveEngine {
    pub fn new(r_max: usize) -> Self {
        Self {
            r_max,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn run(&self, p: &Polynomial) -> RecoveryOutcome {
        let n = match p.degree() {
            Degree::ZeroPolynomial => return RecoveryOutcome::zero_polynomial(),
            Degree::Exact(n) => n,
        };
        let Some(data) = p.sample_points(n).to_integers() else {
            return RecoveryOutcome::NotHilbert(FailureReason::NonIntegerValued);
        };
        let top = n + 1;
        if self.r_max >= 1 && matches_samples(&[top], &data) {
            return RecoveryOutcome::success(Partition::new(vec![top]).expect("single part"));
        }
        for tail_len in 1..self.r_max {
            let mut candidates = NonIncrSeqs::new(tail_len, top).map(|tail| {
                let mut parts = Vec::with_capacity(tail_len + 1);
                parts.push(top);
                parts.extend(tail);
                parts
            });
            loop {
                let chunk: Vec<Vec<usize>> = candidates.by_ref().take(NAIVE_CHUNK).collect();
                if chunk.is_empty() {
                    break;
                }
                if let Some(i) = position_first(&chunk, self.execution, |c| matches_samples(c, &data)) {
                    let parts = chunk.into_iter().nth(i).expect("found index");
                    return RecoveryOutcome::success(Partition::new(parts).expect("non-increasing candidate"));
                }
            }
        }
        RecoveryOutcome::NotHilbert(FailureReason::SearchExhausted { r_max: self.r_max })
    }
}

pub fn recover_naive(p: &Polynomial, r_max: usize) -> RecoveryOutcome {
    NaiveEngine::new(r_max).run(p)
}
