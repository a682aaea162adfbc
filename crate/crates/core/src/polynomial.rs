//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored low degree first with no trailing zeros; the zero
//! polynomial has an empty coefficient list. Text input follows the grammar
//!
//! ```text
//! poly   := sign? term (("+" | "-") term)*
//! term   := coeff ("*"? var)? ("/" uint)? | var ("/" uint)?
//! var    := "x" ("^" uint)?
//! coeff  := "-"? uint ("/" uint)?
//! ```
//!
//! with insignificant whitespace. Repeated powers are summed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::calculus::Sequence;

/// Largest exponent the parser accepts.
pub const MAX_PARSED_EXPONENT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("zero denominator at column {column}")]
    DenominatorZero { column: usize },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::DenominatorZero { column } => *column,
        }
    }

    /// Two-line rendering of `input` with a caret under the offending column.
    pub fn caret(&self, input: &str) -> String {
        format!("{input}\n{}^", " ".repeat(self.column()))
    }
}

/// Degree of a polynomial. The zero polynomial has no integer degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    ZeroPolynomial,
    Exact(usize),
}

impl Degree {
    pub fn exact(self) -> Option<usize> {
        match self {
            Degree::ZeroPolynomial => None,
            Degree::Exact(d) => Some(d),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear polynomial `x + shift`.
    pub fn linear(shift: BigRational) -> Self {
        Self::new(vec![shift, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::ZeroPolynomial,
            n => Degree::Exact(n - 1),
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigRational {
        self.evaluate(&BigRational::from_integer(x.clone()))
    }

    /// Values `p(0), p(1), ..., p(n)`.
    pub fn sample_points(&self, n: usize) -> Sequence {
        let values = (0..=n)
            .map(|x| self.evaluate_int(&BigInt::from(x)))
            .collect();
        Sequence::new(values).expect("window of n + 1 >= 1 values")
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    fn zip_with(&self, other: &Polynomial, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Polynomial {
        let zero = BigRational::zero();
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                f(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    Parser::new(text).parse()
}

pub fn evaluate(p: &Polynomial, x: &BigRational) -> BigRational {
    p.evaluate(x)
}

pub fn degree(p: &Polynomial) -> Degree {
    p.degree()
}

pub fn sample_points(p: &Polynomial, n: usize) -> Sequence {
    p.sample_points(n)
}

pub fn format_polynomial(p: &Polynomial) -> String {
    p.to_string()
}

impl FromStr for Polynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let magnitude = c.abs();
            if power == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            match power {
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        // U+2212 MINUS SIGN reads as '-'
        let chars = text
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        Self { chars, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            column: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    /// `"/" uint` with the zero check; the slash is already consumed.
    fn denominator(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let column = self.pos;
        let den = self.uint()?;
        if den.is_zero() {
            return Err(ParseError::DenominatorZero { column });
        }
        Ok(den)
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let column = self.pos;
        let value = self.uint()?;
        usize::try_from(&value)
            .ok()
            .filter(|&e| e <= MAX_PARSED_EXPONENT)
            .ok_or(ParseError::Syntax {
                column,
                message: format!("exponent exceeds {MAX_PARSED_EXPONENT}"),
            })
    }

    fn term(&mut self) -> Result<(BigRational, usize), ParseError> {
        let (mut coeff, power) = match self.peek() {
            Some('x') => {
                self.pos += 1;
                (BigRational::one(), self.exponent()?)
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let negative = self.eat('-');
                let num = self.uint()?;
                let mut coeff = BigRational::from_integer(if negative { -num } else { num });
                if self.eat('/') {
                    coeff /= BigRational::from_integer(self.denominator()?);
                }
                let starred = self.eat('*');
                if self.eat('x') {
                    (coeff, self.exponent()?)
                } else if starred {
                    return Err(self.error("expected 'x' after '*'"));
                } else {
                    return Ok((coeff, 0));
                }
            }
            Some(_) => return Err(self.error("expected a term")),
            None => return Err(self.error("unexpected end of input, expected a term")),
        };
        if self.eat('/') {
            coeff /= BigRational::from_integer(self.denominator()?);
        }
        Ok((coeff, power))
    }

    fn parse(mut self) -> Result<Polynomial, ParseError> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let add = |coeffs: &mut Vec<BigRational>, c: BigRational, power: usize| {
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigRational::zero());
            }
            coeffs[power] += c;
        };
        let mut negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let (c, power) = self.term()?;
            add(&mut coeffs, if negate { -c } else { c }, power);
            match self.peek() {
                None => break,
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(Polynomial::new(coeffs))
    }
}
