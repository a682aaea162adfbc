//! Recognise Hilbert polynomials and recover the partition λ of their
//! Macaulay representation `Σ_i C(x + λ_i - i, λ_i - 1)`.
//!
//! All arithmetic is exact. The main entry points are
//! [`recovery::recover_delta`] and its enumerative cross-check
//! [`recovery::recover_naive`]; [`partition::build_hilbert`] goes the other way.
//!
//! ```
//! use hilbert_lambda::{build_hilbert, parse_polynomial, recover_delta};
//!
//! let p = parse_polynomial("3*x + 1").unwrap();
//! let lambda = recover_delta(&p).unwrap().partition().cloned().unwrap();
//! assert_eq!(lambda.to_string(), "(2^3,1)");
//! assert_eq!(build_hilbert(&lambda), p);
//! ```

pub mod benchmark;
pub mod calculus;
pub mod cli;
pub mod exec;
pub mod partition;
pub mod polynomial;
pub mod recovery;

pub use calculus::{binomial_seq_value, delta, is_integer_sequence, reduce, Reduction, Sequence};
pub use exec::Execution;
pub use partition::{build_hilbert, hilbert_value_at, ExponentForm, NonIncrSeqs, Partition};
pub use polynomial::{parse_polynomial, Degree, Polynomial};
pub use recovery::{
    compare_candidate, recover_delta, recover_naive, subtract_block, DeltaEngine, FailureReason,
    NaiveEngine, RecoveryOutcome,
};
