//! Exact rationals and their `"p/q"` string form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("malformed rational {0:?}: expected \"p/q\" or \"p\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn is_int_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"p/q"` or `"p"` with an optional leading minus on `p`.
///
/// The result is reduced, so `"4/6"` and `"2/3"` parse to the same value.
pub fn parse_rational(s: &str) -> Result<Rational, RationalError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !is_int_literal(num) || den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalError::Malformed(s.to_string()));
    }
    let num = BigInt::from_str(num).map_err(|_| RationalError::Malformed(s.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| RationalError::Malformed(s.to_string()))?;
    if den.is_zero() {
        return Err(RationalError::ZeroDenominator(s.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical string: `"p/q"` in lowest terms, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Least nonnegative representative of `x` modulo `period` (`period > 0`).
pub fn rem_euclid(x: &Rational, period: &Rational) -> Rational {
    debug_assert!(period.is_positive());
    let q = (x / period).floor();
    x - q * period
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod as_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("44/7").unwrap(), q(44, 7));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational("4/6").unwrap(), q(2, 3));
        assert_eq!(parse_rational("-0/5").unwrap(), q(0, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "/", "1/", "/2", "1/-2", "a", "1.5", "1/2/3", " 1", "+1", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
        assert_eq!(
            parse_rational("3/0"),
            Err(RationalError::ZeroDenominator("3/0".into()))
        );
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&q(22, 7)), "22/7");
        assert_eq!(format_rational(&q(-6, 3)), "-2");
    }

    #[test]
    fn rem_euclid_wraps_negatives() {
        assert_eq!(rem_euclid(&q(5, 1), &q(2, 1)), q(1, 1));
        assert_eq!(rem_euclid(&q(-1, 3), &q(2, 1)), q(5, 3));
        assert_eq!(rem_euclid(&q(4, 1), &q(2, 1)), q(0, 1));
    }

    proptest::proptest! {
        #[test]
        fn string_form_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = q(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
