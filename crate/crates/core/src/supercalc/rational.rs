//! Exact rational scalars.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, which is exactly the invariant we need, so the
//! scalar type is a plain alias plus a handful of helpers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Render as `p` or `p/q`.
pub fn to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Largest absolute value of numerator or denominator, saturated to `u64`.
pub fn height(r: &Rational) -> u64 {
    let n = r.numer().abs();
    let d = r.denom().clone();
    let m = if n > d { n } else { d };
    u64::try_from(m).unwrap_or(u64::MAX)
}

/// Serde adapter storing rationals as strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = frac(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_string(&frac(0, 7)), "0");
        assert_eq!(frac(0, 7).denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3/2", "17", "5/13"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert!(parse("1/0").is_none());
        assert!(parse("abc").is_none());
    }
}
