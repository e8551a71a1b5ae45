use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A rational number extended with `-inf` and `+inf`, totally ordered by
/// `-inf < finite < +inf`.
///
/// Finite values are kept reduced with a positive denominator (the invariant
/// of [`BigRational`]), so equality and ordering are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedRational {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl ExtendedRational {
    pub fn from_integer(v: i64) -> Self {
        ExtendedRational::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// Builds `p/q` in lowest terms. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        ExtendedRational::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn neg_inf() -> Self {
        ExtendedRational::NegInf
    }

    pub fn pos_inf() -> Self {
        ExtendedRational::PosInf
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtendedRational::NegInf)
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ExtendedRational::PosInf)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Semiring sum: maximum of the two operands.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Semiring product: addition, with `-inf` absorbing even `+inf`.
    pub fn otimes(&self, other: &Self) -> Self {
        use ExtendedRational::*;
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Additive negation in the ordinary sense: `-(±inf) = ∓inf`.
    pub fn neg(&self) -> Self {
        use ExtendedRational::*;
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(r) => Finite(-r),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtendedRational::NegInf => false,
            ExtendedRational::PosInf => true,
            ExtendedRational::Finite(r) => r.is_positive(),
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for ExtendedRational {
    fn from(r: BigRational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl fmt::Display for ExtendedRational {
    /// Canonical rendering: integers bare, other rationals as reduced `p/q`,
    /// infinities as `inf` / `-inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => write!(f, "-inf"),
            ExtendedRational::PosInf => write!(f, "inf"),
            ExtendedRational::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    /// Accepted literals: optional sign, then an integer (`-17`), a fraction
    /// `p/q` with `q > 0` (`3/4`), a finite decimal (`2.50`), or `inf`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |reason: &str| Error::ParseRational {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err("empty literal"));
        }
        let (negative, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        if body.is_empty() {
            return Err(err("sign without digits"));
        }
        if body == "inf" {
            return Ok(if negative {
                ExtendedRational::NegInf
            } else {
                ExtendedRational::PosInf
            });
        }
        let magnitude = if let Some((p, q)) = body.split_once('/') {
            let p: BigInt = p.parse().map_err(|_| err("bad numerator"))?;
            if p.is_negative() {
                return Err(err("sign must lead the literal"));
            }
            let q: BigInt = q.parse().map_err(|_| err("bad denominator"))?;
            if !q.is_positive() {
                return Err(err("denominator must be positive"));
            }
            BigRational::new(p, q)
        } else if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() || frac.is_empty() {
                return Err(err("decimal needs digits on both sides of the point"));
            }
            if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit())
            {
                return Err(err("decimal contains non-digits"));
            }
            let joined: BigInt = format!("{int}{frac}").parse().map_err(|_| err("bad decimal"))?;
            let scale = BigInt::from(10).pow(frac.len() as u32);
            BigRational::new(joined, scale)
        } else {
            if !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("integer contains non-digits"));
            }
            let v: BigInt = body.parse().map_err(|_| err("bad integer"))?;
            BigRational::from_integer(v)
        };
        let magnitude = if negative { -magnitude } else { magnitude };
        Ok(ExtendedRational::Finite(magnitude))
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> de::Visitor<'de> for V {
            type Value = ExtendedRational;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational literal string or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(ExtendedRational::from_integer(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(ExtendedRational::Finite(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating literal {v} not accepted; write rationals as strings"
                )))
            }
        }
        deserializer.deserialize_any(V)
    }
}
