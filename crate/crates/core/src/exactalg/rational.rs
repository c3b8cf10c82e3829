//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `x^e` for any integer `e`; `x` must be nonzero when `e < 0`.
pub fn pow_i(x: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Rational::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn to_pq(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Like [`to_pq`] but integers print without a denominator.
pub fn to_plain(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        to_pq(x)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn abs_numerator(x: &Rational) -> BigInt {
    x.numer().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_negative_and_positive() {
        assert_eq!(pow_i(&frac(2, 3), 3), frac(8, 27));
        assert_eq!(pow_i(&frac(2, 3), -2), frac(9, 4));
        assert_eq!(pow_i(&int(-5), 0), int(1));
    }

    #[test]
    fn pq_round_trip() {
        for x in [frac(-7, 3), int(4), int(0), frac(1, 1000)] {
            assert_eq!(parse_rational(&to_pq(&x)).unwrap(), x);
        }
        assert_eq!(to_pq(&int(3)), "3/1");
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lcm_denominators() {
        let xs = [frac(1, 4), frac(1, 6), int(3)];
        assert_eq!(lcm_of_denominators(xs.iter()), BigInt::from(12));
    }
}
