//! Exact rational input and conversions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `a/b`, an integer, or a decimal such as `0.25` or `-1.5e-3` into an
/// exact rational. Decimals are read digit by digit, never through `f64`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::input("empty number"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("invalid numerator in {t:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("invalid denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| Error::input(format!("invalid exponent in {t:?}")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(Error::input(format!("invalid number {t:?}")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().unwrap_or_default());
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Parses a strictly positive rational, as required for the parameter `q`.
pub fn parse_positive_rational(text: &str) -> Result<BigRational> {
    let q = parse_rational(text)?;
    if !q.is_positive() {
        return Err(Error::input(format!("q must be positive, got {text:?}")));
    }
    Ok(q)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact `x^k` for any integer `k` (`x ≠ 0` when `k < 0`).
pub fn pow_i(x: &BigRational, k: i32) -> BigRational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// The closest rational with denominator `10^digits` to a float, for
/// turning computed boundary points into exact test parameters.
pub fn from_f64_rounded(x: f64, digits: u32) -> BigRational {
    let scale = 10f64.powi(digits as i32);
    let n = (x * scale).round() as i64;
    BigRational::new(BigInt::from(n), num_traits::pow(BigInt::from(10), digits as usize))
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_rational("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), ratio(-3, 2000));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("2e2").unwrap(), int(200));
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", ".", "1/x", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert!(parse_positive_rational("0").is_err());
        assert!(parse_positive_rational("-1/2").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(from_f64_rounded(1.618_033_9, 4), ratio(16180, 10000));
        assert_eq!(pow_i(&ratio(2, 3), -2), ratio(9, 4));
    }
}
