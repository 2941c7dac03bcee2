//! Exact rational scalars over arbitrary-precision integers.
//!
//! The coefficient field everywhere in this crate is Q. Values are
//! `num_rational::BigRational`, which keeps fractions reduced with a
//! positive denominator. The serialized form is `p/q`, shortened to `p`
//! when the denominator is 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d`. Panics when `d` is zero (caller bug, not input).
pub fn ratq(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p` or `p/q` (optional sign, surrounding whitespace allowed).
/// Rejects a zero denominator instead of panicking.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let pn: BigInt = num
        .parse()
        .map_err(|_| Error::invalid("rational", format!("bad numerator in {t:?}")))?;
    let pd: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::invalid("rational", format!("bad denominator in {t:?}")))?,
        None => BigInt::one(),
    };
    if pd.is_zero() {
        return Err(Error::invalid("rational", format!("zero denominator in {t:?}")));
    }
    Ok(Rational::new(pn, pd))
}

/// Canonical text form (`p/q`, or `p` when the denominator is 1).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// n! as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// 1/n!.
pub fn inv_factorial(n: u32) -> Rational {
    factorial(n).recip()
}

/// Binomial coefficient as a rational; zero when k > n.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n as u64 - i as u64;
        acc /= i as u64 + 1;
    }
    Rational::from_integer(acc)
}
