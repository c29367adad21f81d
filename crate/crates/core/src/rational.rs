//! Exact rational scalars and the string encoding used in every report.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Number of integers strictly inside the open interval `(lo, hi)`.
pub fn integers_strictly_between(lo: &Rational, hi: &Rational) -> BigInt {
    if hi <= lo {
        return BigInt::zero();
    }
    let n = ceil(hi) - floor(lo) - BigInt::one();
    if n.is_negative() {
        BigInt::zero()
    } else {
        n
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Formats as `p/q`, or `p` when the denominator is 1.
pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Serde adapter: rationals travel as `"p/q"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(D::Error::custom)
    }

    pub mod option {
        use super::Rational;
        use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&crate::rational::to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| crate::rational::parse(&s).map_err(D::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse(" -4/6 ").unwrap(), frac(-2, 3));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(to_string(&frac(6, 3)), "2");
        assert_eq!(to_string(&frac(-1, 2)), "-1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn strict_integer_count() {
        assert_eq!(integers_strictly_between(&int(0), &int(3)), BigInt::from(2));
        assert_eq!(integers_strictly_between(&frac(1, 2), &frac(5, 2)), BigInt::from(2));
        assert_eq!(integers_strictly_between(&int(1), &int(1)), BigInt::from(0));
        assert_eq!(integers_strictly_between(&frac(1, 3), &frac(2, 3)), BigInt::from(0));
    }

    proptest::proptest! {
        #[test]
        fn add_then_subtract_is_exact(a in proptest::num::i64::ANY, b in 1i64..i64::MAX,
                                      c in proptest::num::i64::ANY, d in 1i64..i64::MAX) {
            let x = frac(a, b);
            let y = frac(c, d);
            proptest::prop_assert_eq!((&x + &y) - &y, x);
        }
    }
}
