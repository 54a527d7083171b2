//! Parsing and printing of exact rational coordinates.
//!
//! Dataset files carry coordinates as strings so that values like `2.4`
//! mean exactly 12/5 rather than the nearest double. Accepted forms are
//! decimal literals (`3`, `-1.25`, `+0.5`) and fractions of integers
//! (`12/5`, `-7/3`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Error produced when a coordinate string is not a decimal or fraction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

fn err(literal: &str, reason: &'static str) -> ParseRationalError {
    ParseRationalError {
        literal: literal.to_string(),
        reason,
    }
}

/// Parses a decimal literal (`-1.25`) or integer fraction (`12/5`) into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(err(s, "empty string"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| err(s, "fraction numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| err(s, "fraction denominator is not an integer"))?;
        if d.is_zero() {
            return Err(err(s, "fraction denominator is zero"));
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(t).ok_or_else(|| err(s, "not a decimal literal"))
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (sign, rest) = match t.as_bytes()[0] {
        b'-' => (-1, &t[1..]),
        b'+' => (1, &t[1..]),
        _ => (1, t),
    };
    if rest.is_empty() {
        return None;
    }
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        return None;
    } else {
        digits.parse().ok()?
    };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(BigRational::new(BigInt::from(sign) * numer, denom))
}

/// Renders a rational in the shortest exact form: a decimal when the
/// denominator divides a power of ten, otherwise `numer/denom`.
pub fn rational_to_string(r: &BigRational) -> String {
    let numer = r.numer();
    let denom = r.denom();
    if denom.is_one() {
        return numer.to_string();
    }
    // A reduced denominator of the form 2^a * 5^b admits an exact decimal
    // with max(a, b) fractional digits.
    let mut d = denom.clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{numer}/{denom}");
    }
    let digits = twos.max(fives);
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = numer * &scale / denom;
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs().to_string();
    let abs = format!("{:0>width$}", abs, width = digits as usize + 1);
    let (int_part, frac_part) = abs.split_at(abs.len() - digits as usize);
    format!("{sign}{int_part}.{frac_part}")
}
