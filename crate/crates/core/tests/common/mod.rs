//! Independent oracles shared by the integration tests. Nothing here calls
//! into the recovery or calculus code paths it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use hilbert_lambda::Polynomial;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `C(t, d)` as the running rational product `Π (t - j) / (j + 1)`.
pub fn binomial_oracle(d: usize, t: i64) -> BigInt {
    let mut acc = BigRational::one();
    for j in 0..d as i64 {
        acc *= q(t - j, j + 1);
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

/// Macaulay sum evaluated term by term with the rational-product binomial.
pub fn hilbert_oracle(parts: &[usize], x: i64) -> BigInt {
    parts
        .iter()
        .enumerate()
        .map(|(idx, &p)| binomial_oracle(p - 1, x + p as i64 - idx as i64 - 1))
        .sum()
}

/// Term-by-term evaluation `Σ c_i x^i` with explicit powers.
pub fn eval_terms(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * num_traits::pow(x.clone(), i))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Low-to-high coefficients of `C(x + shift, d)` by repeated convolution.
pub fn binomial_coeffs(d: usize, shift: i64) -> Vec<BigRational> {
    let mut coeffs = vec![BigRational::one()];
    for j in 0..d as i64 {
        // multiply by (x + shift - j) / (j + 1)
        let c0 = q(shift - j, j + 1);
        let c1 = q(1, j + 1);
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * &c0;
            next[i + 1] += c * &c1;
        }
        coeffs = next;
    }
    coeffs
}

/// `Σ_k a_k C(x, k)` expanded, i.e. a polynomial in the binomial basis.
pub fn from_binomial_basis(a: &[i64]) -> Polynomial {
    let mut coeffs = vec![BigRational::zero(); a.len()];
    for (k, &ak) in a.iter().enumerate() {
        for (i, c) in binomial_coeffs(k, 0).into_iter().enumerate() {
            coeffs[i] += c * BigRational::from_integer(ak.into());
        }
    }
    Polynomial::new(coeffs)
}

/// Coefficients of the Macaulay sum built directly from shifted binomials.
pub fn macaulay_oracle(parts: &[usize]) -> Polynomial {
    let top = parts.first().copied().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); top];
    for (idx, &p) in parts.iter().enumerate() {
        let shift = p as i64 - idx as i64 - 1;
        for (i, c) in binomial_coeffs(p - 1, shift).into_iter().enumerate() {
            coeffs[i] += c;
        }
    }
    Polynomial::new(coeffs)
}

/// Every non-increasing length-`m` sequence over `1..=n`, by filtering the
/// full product `{1..n}^m`; descending lexicographic order.
pub fn brute_non_incr(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for _ in 0..m {
        all = all
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (1..=n).map(move |v| {
                    let mut s = prefix.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    let mut out: Vec<_> = all
        .into_iter()
        .filter(|s| s.windows(2).all(|w| w[0] >= w[1]))
        .collect();
    out.sort();
    out.reverse();
    out
}

/// All non-empty partitions with parts `<= max_part` and length `<= max_len`.
pub fn brute_partitions(max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    (1..=max_len).flat_map(|m| brute_non_incr(m, max_part)).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// A provably non-Hilbert integer-valued polynomial of degree at most 4 and
/// the multiplicity failure the delta engine must report for it.
///
/// Construction: one or two valid top blocks of a Macaulay sum plus a
/// remainder `Σ a_k C(x, k)` of lower degree with negative leading `a`. The
/// top multiplicities are forced by the leading coefficients, so the final
/// residual is exactly the remainder, whose leading multiplicity is negative.
pub struct NonHilbertCase {
    pub polynomial: Polynomial,
    pub at_degree: usize,
    pub value: i64,
}

pub fn non_hilbert_case<R: Rng>(rng: &mut R) -> NonHilbertCase {
    let degree = rng.gen_range(0..=4usize);
    if degree == 0 {
        let value = -rng.gen_range(1..=5i64);
        return NonHilbertCase {
            polynomial: Polynomial::constant(q(value, 1)),
            at_degree: 0,
            value,
        };
    }
    let top = degree + 1;
    let mut parts = vec![top; rng.gen_range(1..=3)];
    // remainder degree bound: below the last valid block's degree
    let mut bound = degree;
    if degree >= 2 && rng.gen_bool(0.5) {
        let second = rng.gen_range(2..=degree);
        parts.extend(std::iter::repeat_n(second, rng.gen_range(1..=3)));
        bound = second - 1;
    }
    let rem_degree = rng.gen_range(0..bound);
    let mut a: Vec<i64> = (0..rem_degree).map(|_| rng.gen_range(-3..=3)).collect();
    let value = -rng.gen_range(1..=3i64);
    a.push(value);
    let polynomial = &macaulay_oracle(&parts) + &from_binomial_basis(&a);
    NonHilbertCase {
        polynomial,
        at_degree: rem_degree,
        value,
    }
}
