//! Exact time values.
//!
//! Times are stored as signed integer ticks. Input values carry at most three
//! decimal places and are scaled by two on top of that, so every time that is
//! built from sums and differences of inputs is an even tick count and the
//! midpoint of two distinct such times is a tick strictly between them.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Number of ticks in one time unit.
pub const TICKS_PER_UNIT: i64 = 2000;

/// Decimal places accepted when parsing.
const INPUT_DECIMALS: u32 = 3;

/// Ticks per smallest input increment (0.001).
const TICKS_PER_INPUT_STEP: i64 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid time value `{input}`: {reason}")]
pub struct ParseTimeError {
    pub input: String,
    pub reason: &'static str,
}

/// A point in time (or a duration) measured in exact ticks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time(i64);

impl Time {
    pub const ZERO: Time = Time(0);
    pub const MAX: Time = Time(i64::MAX);

    #[inline]
    pub const fn from_ticks(ticks: i64) -> Self {
        Time(ticks)
    }

    /// Whole time units.
    #[inline]
    pub const fn from_units(units: i64) -> Self {
        Time(units * TICKS_PER_UNIT)
    }

    /// Thousandths of a time unit.
    #[inline]
    pub const fn from_millis(millis: i64) -> Self {
        Time(millis * TICKS_PER_INPUT_STEP)
    }

    #[inline]
    pub const fn ticks(self) -> i64 {
        self.0
    }

    /// Midpoint, rounded toward negative infinity.
    #[inline]
    pub fn midpoint(self, other: Time) -> Time {
        Time(self.0.div_euclid(2) + other.0.div_euclid(2) + (self.0.rem_euclid(2) + other.0.rem_euclid(2)) / 2)
    }

    /// Lossy conversion for plotting and timing output only.
    pub fn as_f64(self) -> f64 {
        self.0 as f64 / TICKS_PER_UNIT as f64
    }

    /// True if the value can be written back with three decimals.
    pub fn is_input_representable(self) -> bool {
        self.0 % TICKS_PER_INPUT_STEP == 0
    }
}

impl Add for Time {
    type Output = Time;
    #[inline]
    fn add(self, rhs: Time) -> Time {
        Time(self.0 + rhs.0)
    }
}

impl AddAssign for Time {
    #[inline]
    fn add_assign(&mut self, rhs: Time) {
        self.0 += rhs.0;
    }
}

impl Sub for Time {
    type Output = Time;
    #[inline]
    fn sub(self, rhs: Time) -> Time {
        Time(self.0 - rhs.0)
    }
}

impl SubAssign for Time {
    #[inline]
    fn sub_assign(&mut self, rhs: Time) {
        self.0 -= rhs.0;
    }
}

impl Neg for Time {
    type Output = Time;
    fn neg(self) -> Time {
        Time(-self.0)
    }
}

impl std::iter::Sum for Time {
    fn sum<I: Iterator<Item = Time>>(iter: I) -> Time {
        iter.fold(Time::ZERO, Add::add)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // One tick is 0.0005, so four decimals are always exact.
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let whole = abs / TICKS_PER_UNIT as u64;
        let frac = (abs % TICKS_PER_UNIT as u64) * 5;
        if frac == 0 {
            write!(f, "{sign}{whole}")
        } else {
            let digits = format!("{frac:04}");
            write!(f, "{sign}{whole}.{}", digits.trim_end_matches('0'))
        }
    }
}

impl FromStr for Time {
    type Err = ParseTimeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseTimeError {
            input: s.to_string(),
            reason,
        };
        let trimmed = s.trim();
        let (negative, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, trimmed.strip_prefix('+').unwrap_or(trimmed)),
        };
        if body.is_empty() {
            return Err(err("empty"));
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected a decimal number"));
        }
        let frac_trimmed = frac_part.trim_end_matches('0');
        if frac_trimmed.len() > INPUT_DECIMALS as usize {
            return Err(err("at most three decimal places are supported"));
        }
        let whole: i64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| err("out of range"))?
        };
        let mut millis_frac: i64 = 0;
        for (i, b) in frac_trimmed.bytes().enumerate() {
            millis_frac += i64::from(b - b'0') * 10i64.pow(INPUT_DECIMALS - 1 - i as u32);
        }
        let millis = whole
            .checked_mul(1000)
            .and_then(|m| m.checked_add(millis_frac))
            .ok_or_else(|| err("out of range"))?;
        let ticks = millis
            .checked_mul(TICKS_PER_INPUT_STEP)
            .ok_or_else(|| err("out of range"))?;
        Ok(Time(if negative { -ticks } else { ticks }))
    }
}

impl Serialize for Time {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Time {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;

        impl serde::de::Visitor<'_> for Visitor {
            type Value = Time;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal time as a string or number")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Time, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Time, E> {
                v.checked_mul(TICKS_PER_UNIT)
                    .map(Time)
                    .ok_or_else(|| E::custom("time out of range"))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Time, E> {
                i64::try_from(v)
                    .map_err(|_| E::custom("time out of range"))
                    .and_then(|v| self.visit_i64(v))
            }

            // Floats go through their shortest decimal form.
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Time, E> {
                if !v.is_finite() {
                    return Err(E::custom("time must be finite"));
                }
                format!("{v}").parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(Visitor)
    }
}

/// A closed window `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Time,
    pub hi: Time,
}

impl Window {
    pub fn new(lo: Time, hi: Time) -> Self {
        Window { lo, hi }
    }

    #[inline]
    pub fn contains(&self, t: Time) -> bool {
        self.lo <= t && t <= self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!("8".parse::<Time>().unwrap(), Time::from_units(8));
        assert_eq!("8.5".parse::<Time>().unwrap(), Time::from_millis(8500));
        assert_eq!("0.001".parse::<Time>().unwrap(), Time::from_millis(1));
        assert_eq!(".25".parse::<Time>().unwrap(), Time::from_millis(250));
        assert_eq!("2.500".parse::<Time>().unwrap(), Time::from_millis(2500));
        assert_eq!("-3".parse::<Time>().unwrap(), -Time::from_units(3));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "abc", "1.0001", "1e3", "1..2", "-", "."] {
            assert!(bad.parse::<Time>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "8", "8.5", "0.001", "12.345", "-4.2"] {
            assert_eq!(s.parse::<Time>().unwrap().to_string(), s);
        }
        assert_eq!(Time::from_ticks(1).to_string(), "0.0005");
    }

    #[test]
    fn midpoint_is_strictly_between_input_times() {
        let a = Time::from_millis(1);
        let b = Time::from_millis(2);
        let m = a.midpoint(b);
        assert!(a < m && m < b);
        assert_eq!(Time::from_units(5).midpoint(Time::from_units(6)).to_string(), "5.5");
        assert_eq!((-Time::from_ticks(1)).midpoint(Time::from_ticks(0)), -Time::from_ticks(1));
    }

    #[test]
    fn deserializes_numbers_and_strings() {
        #[derive(Deserialize)]
        struct T {
            a: Time,
            b: Time,
            c: Time,
        }
        let t: T = toml::from_str("a = 3\nb = \"4.5\"\nc = 0.1\n").unwrap();
        assert_eq!(t.a, Time::from_units(3));
        assert_eq!(t.b, Time::from_millis(4500));
        assert_eq!(t.c, Time::from_millis(100));
    }
}
