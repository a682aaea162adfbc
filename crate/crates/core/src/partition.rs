//! Integer partitions and the Macaulay sum they generate.
//!
//! A partition `λ = (λ_1 ≥ λ_2 ≥ ... ≥ λ_r ≥ 1)` produces the polynomial
//! `h(x) = Σ_i B_{λ_i - 1}(x + λ_i - i)` where `B_d` is the binomial polynomial
//! `t (t - 1) ... (t - d + 1) / d!`. The binomials are polynomial binomials:
//! with a negative argument they take nonzero (possibly negative) values, and
//! the sum depends on that.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use thiserror::Error;

use crate::calculus::binomial_seq_value;
use crate::polynomial::Polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts are not non-increasing at index {index}")]
    NotNonIncreasing { index: usize },
    #[error("part at index {index} is not positive")]
    NonPositivePart { index: usize },
    #[error("malformed partition text: {0}")]
    Syntax(String),
    #[error("too many partitions to sample from")]
    SpaceTooLarge,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart { index });
        }
        if let Some(index) = parts.windows(2).position(|w| w[1] > w[0]) {
            return Err(PartitionError::NotNonIncreasing { index: index + 1 });
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part `λ_1`.
    pub fn largest(&self) -> Option<usize> {
        self.parts.first().copied()
    }

    pub fn to_exponent_form(&self) -> ExponentForm {
        to_exponent_form(self)
    }

    /// Flat text form, e.g. `[6,6,5,4,1,1,1]`.
    pub fn flat_string(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        format!("[{}]", inner.join(","))
    }
}

/// Validates raw integers as a partition.
pub fn validate_partition(raw: &[i64]) -> Result<Partition, PartitionError> {
    if let Some(index) = raw.iter().position(|&p| p < 1) {
        return Err(PartitionError::NonPositivePart { index });
    }
    Partition::new(raw.iter().map(|&p| p as usize).collect())
}

/// Run-length encoding `(λ_1^{r_1}, ..., λ_e^{r_e})` with strictly decreasing
/// values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentForm {
    pairs: Vec<(usize, usize)>,
}

impl ExponentForm {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self, PartitionError> {
        if let Some(index) = pairs.iter().position(|&(v, m)| v == 0 || m == 0) {
            return Err(PartitionError::NonPositivePart { index });
        }
        if let Some(index) = pairs.windows(2).position(|w| w[1].0 >= w[0].0) {
            return Err(PartitionError::NotNonIncreasing { index: index + 1 });
        }
        Ok(Self { pairs })
    }

    /// `(value, multiplicity)` pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn to_partition(&self) -> Partition {
        from_exponent_form(self)
    }
}

pub fn to_exponent_form(lambda: &Partition) -> ExponentForm {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &part in &lambda.parts {
        match pairs.last_mut() {
            Some((value, mult)) if *value == part => *mult += 1,
            _ => pairs.push((part, 1)),
        }
    }
    ExponentForm { pairs }
}

pub fn from_exponent_form(form: &ExponentForm) -> Partition {
    let parts = form
        .pairs
        .iter()
        .flat_map(|&(value, mult)| std::iter::repeat_n(value, mult))
        .collect();
    Partition { parts }
}

impl fmt::Display for ExponentForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &(value, mult)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match mult {
                1 => write!(f, "{value}")?,
                _ => write!(f, "{value}^{mult}")?,
            }
        }
        write!(f, ")")
    }
}

/// Canonical exponent notation, e.g. `(6^2,5,4,1^3)`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_exponent_form().fmt(f)
    }
}

/// Accepts exponent notation `(6^2,5,4,1^3)` or flat `[6,6,5,4,1,1,1]`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| trimmed.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .ok_or_else(|| PartitionError::Syntax(format!("expected (...) or [...], got {trimmed:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut raw: Vec<i64> = Vec::new();
        for item in inner.split(',') {
            let (value, mult) = match item.split_once('^') {
                Some((v, m)) => (v, Some(m)),
                None => (item, None),
            };
            let number = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| PartitionError::Syntax(format!("not an integer: {:?}", t.trim())))
            };
            let value = number(value)?;
            let mult = match mult {
                Some(m) => number(m)?,
                None => 1,
            };
            if mult < 1 {
                return Err(PartitionError::Syntax(format!(
                    "multiplicity must be positive, got {mult}"
                )));
            }
            if raw.len() as u64 + mult as u64 > u32::MAX as u64 {
                return Err(PartitionError::Syntax("partition too long".into()));
            }
            raw.extend(std::iter::repeat_n(value, mult as usize));
        }
        validate_partition(&raw)
    }
}

/// `B_d(x + shift)` expanded into coefficients.
fn shifted_binomial(d: usize, shift: i64) -> Polynomial {
    let mut product = Polynomial::constant(BigRational::one());
    let mut factorial = BigInt::one();
    for j in 0..d {
        product = &product * &Polynomial::linear(BigRational::from_integer(BigInt::from(shift - j as i64)));
        factorial *= BigInt::from(j + 1);
    }
    product.scale(&BigRational::new(BigInt::one(), factorial))
}

/// Expanded coefficients of the Macaulay sum of `lambda`. The empty partition
/// gives the zero polynomial.
pub fn build_hilbert(lambda: &Partition) -> Polynomial {
    lambda
        .parts
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (idx, &part)| {
            let i = idx as i64 + 1;
            &acc + &shifted_binomial(part - 1, part as i64 - i)
        })
}

/// Macaulay sum of `lambda` evaluated at `x` without expanding coefficients.
pub fn hilbert_value_at(lambda: &Partition, x: &BigInt) -> BigInt {
    hilbert_value_of_parts(&lambda.parts, x)
}

pub(crate) fn hilbert_value_of_parts(parts: &[usize], x: &BigInt) -> BigInt {
    parts
        .iter()
        .enumerate()
        .map(|(idx, &part)| {
            let t = x + BigInt::from(part) - BigInt::from(idx + 1);
            binomial_seq_value(part - 1, &t)
        })
        .sum()
}

/// Lazily enumerates the non-increasing sequences of length `len` with values
/// in `1..=max`, in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct NonIncrSeqs {
    current: Option<Vec<usize>>,
}

impl NonIncrSeqs {
    pub fn new(len: usize, max: usize) -> Self {
        let current = (len >= 1 && max >= 1).then(|| vec![max; len]);
        Self { current }
    }
}

impl Iterator for NonIncrSeqs {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        if let Some(k) = out.iter().rposition(|&v| v > 1) {
            let mut next = out.clone();
            let v = next[k] - 1;
            next[k..].iter_mut().for_each(|slot| *slot = v);
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn non_incr_seqs(len: usize, max: usize) -> NonIncrSeqs {
    NonIncrSeqs::new(len, max)
}

fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `C(max + len - 1, len)`, the number of items [`NonIncrSeqs`] yields.
pub fn count_non_incr_seqs(len: usize, max: usize) -> Option<u128> {
    if max == 0 {
        return Some(u128::from(len == 0));
    }
    binomial_u128((max + len - 1) as u128, len as u128)
}

/// The `index`-th item (0-based) of `NonIncrSeqs::new(len, max)`.
pub fn nth_non_incr_seq(len: usize, max: usize, mut index: u128) -> Option<Vec<usize>> {
    if index >= count_non_incr_seqs(len, max)? {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    let mut cap = max;
    for position in 0..len {
        let rest = len - position - 1;
        let mut chosen = None;
        for value in (1..=cap).rev() {
            let completions = count_non_incr_seqs(rest, value)?;
            if index < completions {
                chosen = Some(value);
                break;
            }
            index -= completions;
        }
        cap = chosen?;
        out.push(cap);
    }
    Some(out)
}

/// Number of non-empty partitions with `λ_1 <= max_part` and `r <= max_len`.
pub fn count_bounded_partitions(max_part: usize, max_len: usize) -> Option<u128> {
    (1..=max_len).try_fold(0u128, |acc, len| acc.checked_add(count_non_incr_seqs(len, max_part)?))
}

/// Draws uniformly from the non-empty partitions with `λ_1 <= max_part` and
/// `r <= max_len`, ranked by length then descending lexicographic order.
pub fn random_partition<R: Rng + ?Sized>(
    rng: &mut R,
    max_part: usize,
    max_len: usize,
) -> Result<Partition, PartitionError> {
    let total = count_bounded_partitions(max_part, max_len).ok_or(PartitionError::SpaceTooLarge)?;
    if total == 0 {
        return Err(PartitionError::Syntax(
            "max part and max length must be at least 1".into(),
        ));
    }
    let mut index = rng.gen_range(0..total);
    for len in 1..=max_len {
        let block = count_non_incr_seqs(len, max_part).ok_or(PartitionError::SpaceTooLarge)?;
        if index < block {
            let parts = nth_non_incr_seq(len, max_part, index).expect("index within block");
            return Partition::new(parts);
        }
        index -= block;
    }
    unreachable!("index below total")
}

/// All non-empty partitions with `λ_1 <= max_part` and `r <= max_len`, in
/// sampling rank order.
pub fn bounded_partitions(max_part: usize, max_len: usize) -> impl Iterator<Item = Partition> {
    (1..=max_len).flat_map(move |len| {
        NonIncrSeqs::new(len, max_part).map(|parts| Partition { parts })
    })
}
