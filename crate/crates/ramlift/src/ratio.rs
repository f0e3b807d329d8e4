//! Helpers for exact rationals: parsing/formatting the `"num/den"` wire format,
//! square-root brackets, and simplest-rational-in-interval snapping.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RatioError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("denominator is zero in {0:?}")]
    ZeroDenominator(String),
    #[error("square root of negative rational")]
    NegativeSqrt,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// 2^e for possibly negative e.
pub fn pow2(e: i32) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Parses `"num/den"` or a plain integer string.
pub fn parse_rational(s: &str) -> Result<BigRational, RatioError> {
    let s = s.trim();
    let mk = |t: &str| t.parse::<BigInt>().map_err(|_| RatioError::Parse(s.to_string()));
    match s.split_once('/') {
        Some((n, d)) => {
            let num = mk(n.trim())?;
            let den = mk(d.trim())?;
            if den.is_zero() {
                return Err(RatioError::ZeroDenominator(s.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(mk(s)?)),
    }
}

/// Canonical wire form: `"n"` for integers, `"n/d"` otherwise (d > 0).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integer square root check: Some(s) iff n = s^2, for n >= 0.
fn exact_sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Bracket [lo, hi] around sqrt(q) with hi - lo <= tol, lo^2 <= q <= hi^2.
/// Collapses to [s, s] when q is a perfect rational square.
pub fn sqrt_bracket(q: &BigRational, tol: &BigRational) -> Result<(BigRational, BigRational), RatioError> {
    if q.is_negative() {
        return Err(RatioError::NegativeSqrt);
    }
    if q.is_zero() {
        return Ok((BigRational::zero(), BigRational::zero()));
    }
    if let (Some(n), Some(d)) = (exact_sqrt_int(q.numer()), exact_sqrt_int(q.denom())) {
        let s = BigRational::new(n, d);
        return Ok((s.clone(), s));
    }
    let one = BigRational::one();
    let mut lo = BigRational::zero();
    let mut hi = if *q < one { one.clone() } else { q.clone() + one };
    let two = rat_int(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid <= *q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// The rational with smallest denominator (then smallest numerator magnitude)
/// in the closed interval [lo, hi], via the Stern-Brocot / continued-fraction
/// walk. Assumes lo <= hi.
pub fn simplest_in_interval(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo == hi {
        return lo.clone();
    }
    if lo.is_negative() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_in_interval(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo < hi
    fn go(lo: &BigRational, hi: &BigRational) -> BigRational {
        let c = lo.ceil();
        if c <= *hi {
            // an integer lies in [lo, hi]
            return c;
        }
        let n = lo.floor();
        let lo_f = lo - &n;
        let hi_f = hi - &n;
        let inv = go(&(BigRational::one() / hi_f), &(BigRational::one() / lo_f));
        n + BigRational::one() / inv
    }
    go(lo, hi)
}

/// Serde adapter: rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational};
    use num::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// A rational certified <= x (for float-derived lower bounds).
pub fn f64_lower_bound(x: f64, safety: f64) -> BigRational {
    BigRational::from_float(x - safety).unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["3", "-7", "3/4", "-22/7", "0"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_bracket_exact_and_irrational() {
        let tol = pow2(-30);
        let (lo, hi) = sqrt_bracket(&rat_int(4), &tol).unwrap();
        assert_eq!(lo, rat_int(2));
        assert_eq!(hi, rat_int(2));
        let (lo, hi) = sqrt_bracket(&rat(9, 16), &tol).unwrap();
        assert_eq!(lo, rat(3, 4));
        assert_eq!(hi, rat(3, 4));
        let (lo, hi) = sqrt_bracket(&rat_int(3), &tol).unwrap();
        assert!(&lo * &lo <= rat_int(3) && rat_int(3) <= &hi * &hi);
        assert!(&hi - &lo <= tol);
    }

    #[test]
    fn simplest_rational_snaps() {
        let q = simplest_in_interval(&rat(49999, 10000), &rat(50001, 10000));
        assert_eq!(q, rat_int(5));
        let q = simplest_in_interval(&rat(2, 7), &rat(1, 3));
        assert_eq!(q, rat(1, 3));
        let q = simplest_in_interval(&rat(-1, 2), &rat(1, 3));
        assert_eq!(q, rat_int(0));
        let q = simplest_in_interval(&rat(-7, 2), &rat(-10, 3));
        assert!(rat(-7, 2) <= q && q <= rat(-10, 3));
    }
}
