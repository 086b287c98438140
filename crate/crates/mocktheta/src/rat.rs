//! Shorthand around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// p/q as a rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Render as "p" or "p/q" with q > 0 and gcd(p, q) = 1.  Never floating point.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
    }
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact i64 value; panics if not an integer or out of range.
pub fn to_i64(r: &Rat) -> i64 {
    assert!(is_integer(r), "expected integer, got {}", r);
    let n = r.numer();
    i64::try_from(n).unwrap_or_else(|_| panic!("integer {} out of i64 range", n))
}

/// sgn(n) for n != 0, +1 for n = 0.
pub fn sgn_plus_rat(r: &Rat) -> i64 {
    if r.is_negative() {
        -1
    } else {
        1
    }
}
