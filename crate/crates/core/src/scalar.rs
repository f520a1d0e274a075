//! Coefficient-field abstraction.
//!
//! Every kernel in this crate is generic over [`Scalar`]. The pipeline's
//! residual checks test for *identical* zero, so they are only meaningful
//! over an exact field such as [`BigRational`]; the float impls exist for
//! quick smoke experiments, not for verification.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Num;

/// Coefficient field of the engine.
pub trait Scalar: Num + Neg<Output = Self> + Clone + PartialEq + Debug + Display {
    /// The rational number `num/den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// The integer `n` as a scalar.
    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Rational64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational64::new(num, den)
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f32 / den as f32
    }
}

/// `n!` computed in the scalar field.
pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for i in 2..=n {
        acc = acc * S::from_int(i as i64);
    }
    acc
}

/// Binomial coefficient `C(n, k)` in the scalar field.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=k {
        num *= (n - k + i) as u128;
        den *= i as u128;
        // keep intermediates small; gcd reduction is cheap at these sizes
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    S::from_int(num as i64)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
