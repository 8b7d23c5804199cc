//! Exact arithmetic helpers shared by the engine and the series code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{EngineError, Result};

/// Exact value of an invariant. `BigRational` keeps itself reduced with a
/// positive denominator, which is the canonical form used everywhere.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// A negative upper index never arises from a gated recursion, so it is
/// reported as an internal error instead of being given a value.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(EngineError::NegativeBinomial { n });
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    if n <= 120 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        Ok(BigInt::from(acc))
    } else {
        Ok(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Canonical text form: `p/q` with `q > 1`, or the bare integer `p`.
pub fn render(value: &Rational) -> String {
    value.to_string()
}

/// Parse the canonical text form, rejecting anything `render` would not emit
/// (leading zeros, `+` signs, `-0`, unreduced fractions, `/1`).
pub fn parse_canonical(text: &str) -> std::result::Result<Rational, String> {
    fn digits(s: &str) -> std::result::Result<BigInt, String> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("not a decimal integer: {s:?}"));
        }
        if s.len() > 1 && s.starts_with('0') {
            return Err(format!("leading zero in {s:?}"));
        }
        Ok(s.parse::<BigInt>().expect("validated digits"))
    }

    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (num_text, den_text) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let mut numer = digits(num_text)?;
    if negative {
        if numer.is_zero() {
            return Err("negative zero".to_string());
        }
        numer = -numer;
    }
    let denom = match den_text {
        None => BigInt::one(),
        Some(d) => {
            let d = digits(d)?;
            if d <= BigInt::one() {
                return Err(format!("denominator must exceed 1, got {d}"));
            }
            if !numer.gcd(&d).is_one() {
                return Err(format!("fraction {text} is not in lowest terms"));
            }
            d
        }
    };
    Ok(Rational::new_raw(numer, denom))
}

#[cfg(test)]
/// Denominator with all factors of 2 and of `delta` stripped out.
pub(crate) fn residual_denominator(value: &Rational, delta: u32) -> BigInt {
    let mut den = value.denom().clone();
    let two = BigInt::from(2u8);
    while den.is_even() && !den.is_zero() {
        den /= &two;
    }
    let delta = BigInt::from(delta);
    if delta > BigInt::one() {
        loop {
            let g = den.gcd(&delta);
            if g.is_one() {
                break;
            }
            den /= g;
        }
    }
    den
}
