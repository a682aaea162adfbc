//! Discrete derivatives on finite sample windows.
//!
//! A [`Sequence`] holds the values `f(0), f(1), ..., f(len - 1)` of a function
//! on the naturals. The forward difference `(Δf)(x) = f(x + 1) - f(x)` shortens
//! the window by one; entries past the effective length are kept in storage but
//! ignored, so [`reduce`] can work in place without reallocating.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("a sequence window needs at least one value")]
    Empty,
    #[error("difference needs a window of length at least 2, got {0}")]
    LengthTooShort(usize),
    #[error("reduce called on an all-zero window")]
    ZeroWindow,
}

/// Finite window of a rational sequence.
#[derive(Clone, Debug)]
pub struct Sequence {
    values: Vec<BigRational>,
    len: usize,
}

impl Sequence {
    pub fn new(values: Vec<BigRational>) -> Result<Self, CalculusError> {
        if values.is_empty() {
            return Err(CalculusError::Empty);
        }
        let len = values.len();
        Ok(Self { values, len })
    }

    pub fn from_integers<I, T>(values: I) -> Result<Self, CalculusError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Effective window length.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The values inside the effective window.
    pub fn values(&self) -> &[BigRational] {
        &self.values[..self.len]
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        self.values().get(index)
    }

    pub fn first(&self) -> &BigRational {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values().iter().all(Zero::is_zero)
    }

    /// Integer view of the window, `None` if any value has a denominator.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values()
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn scale(&self, factor: &BigRational) -> Sequence {
        Sequence {
            values: self.values().iter().map(|v| v * factor).collect(),
            len: self.len,
        }
    }

    /// Entrywise sum over the common window.
    pub fn add(&self, other: &Sequence) -> Sequence {
        let values: Vec<_> = self
            .values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| a + b)
            .collect();
        let len = values.len();
        Sequence { values, len }
    }

    /// Forward difference into a fresh sequence.
    pub fn delta(&self) -> Result<Sequence, CalculusError> {
        if self.len < 2 {
            return Err(CalculusError::LengthTooShort(self.len));
        }
        let values: Vec<_> = self.values().windows(2).map(|w| &w[1] - &w[0]).collect();
        let len = values.len();
        Ok(Sequence { values, len })
    }

    /// Forward difference in place; shrinks the window by one.
    pub fn delta_in_place(&mut self) -> Result<(), CalculusError> {
        if self.len < 2 {
            return Err(CalculusError::LengthTooShort(self.len));
        }
        for i in 0..self.len - 1 {
            let next = self.values[i + 1].clone();
            self.values[i] = next - &self.values[i];
        }
        self.len -= 1;
        Ok(())
    }

    /// True iff every value in the window is equal. A window of length one is
    /// constant.
    pub fn is_constant(&self) -> bool {
        let first = self.first();
        self.values()[1..].iter().all(|v| v == first)
    }

    pub fn is_integer_sequence(&self) -> bool {
        is_integer_sequence(self)
    }
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        self.values() == other.values()
    }
}

impl Eq for Sequence {}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

pub fn delta(f: &Sequence) -> Result<Sequence, CalculusError> {
    f.delta()
}

pub fn is_constant(f: &Sequence) -> bool {
    f.is_constant()
}

/// Result of [`reduce`]: `Δ^order` applied to the window leaves the constant
/// `constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub order: usize,
    pub constant: BigRational,
}

/// Applies Δ in place until the window is constant.
///
/// `order` is the least number of differences needed; `constant` is the value
/// of the resulting constant window. The window is consumed: afterwards it
/// holds the constant window, so callers that need the samples must clone
/// first.
pub fn reduce(window: &mut Sequence) -> Result<Reduction, CalculusError> {
    if window.is_zero() {
        return Err(CalculusError::ZeroWindow);
    }
    let mut order = 0;
    while !window.is_constant() {
        window.delta_in_place()?;
        order += 1;
    }
    Ok(Reduction {
        order,
        constant: window.first().clone(),
    })
}

/// Value of the binomial polynomial `B_d(t) = t (t - 1) ... (t - d + 1) / d!`
/// at an integer `t`, which may be negative.
pub fn binomial_seq_value(d: usize, t: &BigInt) -> BigInt {
    let mut product = BigInt::one();
    let mut factorial = BigInt::one();
    for j in 0..d {
        product *= t - BigInt::from(j);
        factorial *= BigInt::from(j + 1);
    }
    let (quotient, remainder) = product.div_rem(&factorial);
    debug_assert!(remainder.is_zero());
    quotient
}

pub fn is_integer_sequence(f: &Sequence) -> bool {
    f.values().iter().all(BigRational::is_integer)
}
