//! Exact rationals and their `"num/den"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number used for every likelihood, payoff and mass.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{text}`: {reason}")]
pub struct RationalError {
    pub text: String,
    pub reason: &'static str,
}

/// Parses `"num/den"` or a bare integer `"num"`.
pub fn parse_q(text: &str) -> Result<Q, RationalError> {
    let err = |reason| RationalError {
        text: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Q::new(num, den))
}

/// Canonical text: always reduced, always `num/den` (so `1` prints as `1/1`).
pub fn format_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short display form for human-readable reports (`1`, `-3/4`).
pub fn display_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn in_unit_interval(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

/// Serde adapter for a single rational stored as a `"num/den"` string.
pub mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::{format_q, parse_q, Q};
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_q(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_q(t).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_q("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_q(" 6/8 ").unwrap(), q(3, 4));
        assert_eq!(parse_q("2").unwrap(), qi(2));
        assert_eq!(parse_q("-1/3").unwrap(), q(-1, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("a/b").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn canonical_format_is_reduced() {
        assert_eq!(format_q(&q(2, 4)), "1/2");
        assert_eq!(format_q(&qi(1)), "1/1");
        assert_eq!(format_q(&qi(0)), "0/1");
        assert_eq!(display_q(&qi(0)), "0");
        assert_eq!(display_q(&q(-3, 4)), "-3/4");
    }
}
