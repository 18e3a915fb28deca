//! Exact field scalars.
//!
//! The linear algebra and filtration layers are written against [`Field`], which
//! is implemented for every `num_rational::Ratio<T>` over a signed integer type.
//! Gaussian elimination here relies on exact zero tests, so floating point types
//! are deliberately not implementations.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(value: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + From<i64>,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from(value))
    }
}

/// Arbitrary precision rationals, the scalar used throughout the crate.
pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_i64(n)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::from_i64(n) / Q::from_i64(d)
}

pub fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// Parses `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Option<Q> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: num_bigint::BigInt = num.trim().parse().ok()?;
    let den: num_bigint::BigInt = den.trim().parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Bernoulli numbers `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Q::one());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Q::zero();
        let mut binom = Q::one();
        for (k, bk) in b.iter().enumerate() {
            acc = acc + binom.clone() * bk.clone();
            binom = binom * q((m + 1 - k) as i64) / q((k + 1) as i64);
        }
        b.push(-acc / q((m + 1) as i64));
    }
    b
}
