//! Arbitrary-precision integers and rationals.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of the numerators (non-negative; zero when all inputs are zero).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}

/// Enumerates rationals by ascending height: 0, 1, -1, 2, -2, 1/2, -1/2, 3, ...
///
/// Height of p/q is max(|p|, q); within one height, values are ordered by
/// increasing denominator then numerator, positive before negative.
pub fn height_order() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain((1i64..).flat_map(|h| {
        let mut out = Vec::new();
        // Denominator 1..=h with |numerator| == h, or numerator < h with denominator == h.
        for q in 1..=h {
            for p in 1..=h {
                if (p == h || q == h) && num_integer::gcd(p, q) == 1 {
                    out.push((q, p));
                }
            }
        }
        out.sort();
        out.into_iter()
            .flat_map(|(q, p)| [rat(p, q), rat(-p, q)])
            .collect::<Vec<_>>()
    }))
}

pub fn abs(v: &Rational) -> Rational {
    v.abs()
}

pub fn is_integer(v: &Rational) -> bool {
    v.denom().is_one()
}
