//! Numeric backends.
//!
//! Every weight, distance and allocation value is a [`Scalar`]. The default
//! backend is [`Rational`], an exact fraction over `i128`, so objective
//! comparisons are exact equalities. `f64` is available as a floating mode;
//! comparisons then use an absolute tolerance of [`FLOAT_TOLERANCE`].

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

use crate::error::Error;

/// Exact rational number used as the default scalar.
pub type Rational = Ratio<i128>;

/// Absolute tolerance for comparisons in floating mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Num + Signed + Copy + PartialOrd + Debug + Display + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn from_int(value: i64) -> Self;
    fn from_rational(value: Rational) -> Self;
    /// Exact for [`Rational`]; a close rational approximation for `f64`.
    fn to_rational(self) -> Rational;
    fn to_f64(self) -> f64;
    fn floor(self) -> Self;
    fn ceil(self) -> Self;

    fn approx_eq(self, other: Self) -> bool;

    fn approx_zero(self) -> bool {
        self.approx_eq(Self::zero())
    }

    /// `self <= other`, allowing the floating tolerance.
    fn approx_le(self, other: Self) -> bool {
        self <= other || self.approx_eq(other)
    }

    fn is_integral(self) -> bool {
        self.approx_eq(self.floor()) || self.approx_eq(self.ceil())
    }

    /// Snaps values within tolerance of an integer onto it.
    fn snap(self) -> Self {
        if self.approx_eq(self.floor()) {
            self.floor()
        } else if self.approx_eq(self.ceil()) {
            self.ceil()
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_int(value: i64) -> Self {
        Ratio::from_integer(value as i128)
    }

    fn from_rational(value: Rational) -> Self {
        value
    }

    fn to_rational(self) -> Rational {
        self
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    fn floor(self) -> Self {
        Ratio::floor(&self)
    }

    fn ceil(self) -> Self {
        Ratio::ceil(&self)
    }

    fn approx_eq(self, other: Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn from_rational(value: Rational) -> Self {
        *value.numer() as f64 / *value.denom() as f64
    }

    fn to_rational(self) -> Rational {
        if self.fract() == 0.0 && self.abs() < 1e18 {
            return Ratio::from_integer(self as i128);
        }
        // Bounded denominators keep re-serialised documents readable.
        let mut best = Ratio::from_integer(self.round() as i128);
        for denom in 2..=1_000_000i128 {
            let numer = (self * denom as f64).round();
            let candidate = Ratio::new(numer as i128, denom);
            if (numer / denom as f64 - self).abs() < (best.to_f64() - self).abs() {
                best = candidate;
            }
            if (best.to_f64() - self).abs() <= FLOAT_TOLERANCE * 1e-3 {
                break;
            }
        }
        best
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn floor(self) -> Self {
        f64::floor(self)
    }

    fn ceil(self) -> Self {
        f64::ceil(self)
    }

    fn approx_eq(self, other: Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }
}

/// Parses `"3"`, `"-2"`, `"3/4"` or a plain decimal such as `"0.125"` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if let Some((numer, denom)) = text.split_once('/') {
        let numer = i128::from_str(numer.trim()).map_err(|_| bad())?;
        let denom = i128::from_str(denom.trim()).map_err(|_| bad())?;
        if denom == 0 {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Ratio::new(numer, denom));
    }
    if let Ok(value) = i128::from_str(text) {
        return Ok(Ratio::from_integer(value));
    }
    parse_decimal(text).ok_or_else(bad)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let negative = mantissa.starts_with('-');
    let mantissa = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Ratio::from_integer(i128::from_str(&digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Ratio::from_integer(10i128);
    if scale.unsigned_abs() > 30 {
        return None;
    }
    for _ in 0..scale.unsigned_abs() {
        value = if scale > 0 { value * ten } else { value / ten };
    }
    Some(if negative { -value } else { value })
}

/// Formats a rational as an integer when possible, otherwise `numer/denom`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.to_integer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Shorthand for building exact constants in code and tests.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Ratio::new(numer as i128, denom as i128)
}

pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

pub(crate) fn positive<T: Scalar>(value: T) -> bool {
    value > T::zero() && !value.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), ratio(-4, 1));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("1.5e1").unwrap(), ratio(15, 1));
        assert_eq!(parse_rational("2.5E-1").unwrap(), ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for text in ["0", "7", "-3/4", "22/7"] {
            let value = parse_rational(text).unwrap();
            assert_eq!(format_rational(&value), text);
        }
    }

    #[test]
    fn float_mode_uses_tolerance() {
        assert!(0.1f64.approx_eq(0.1 + 1e-12));
        assert!(!0.1f64.approx_eq(0.1 + 1e-6));
        assert!((2.0f64 - 1e-12).is_integral());
        assert_eq!(3.0000000000001f64.snap(), 3.0);
        assert_eq!(0.5f64.to_rational(), ratio(1, 2));
        assert_eq!((1.0f64 / 3.0).to_rational(), ratio(1, 3));
    }

    #[test]
    fn rational_floor_ceil() {
        let v = ratio(9, 2);
        assert_eq!(Scalar::floor(v), ratio(4, 1));
        assert_eq!(Scalar::ceil(v), ratio(5, 1));
        assert!(!v.is_integral());
    }
}
