//! Closed intervals with exact rational endpoints.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// `[lo, hi]` with `lo <= hi`. Used as the certified enclosure of a real
/// number; every operation returns an enclosure of the exact result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Enclosure of a base-2 logarithm.
pub type CertifiedLog = Interval;

pub(crate) fn pow2(e: i64) -> BigRational {
    let one = BigInt::one();
    if e >= 0 {
        BigRational::from_integer(one << e as usize)
    } else {
        BigRational::new(one.clone(), one << (-e) as usize)
    }
}

pub(crate) fn rational(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Interval::point(rational(v))
    }

    pub fn from_uint(v: &BigUint) -> Self {
        Interval::point(rational(BigInt::from(v.clone())))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Width at most `2^-bits`.
    pub fn width_within(&self, bits: u32) -> bool {
        self.width() <= pow2(-(bits as i64))
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Reciprocal of an interval not containing zero.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    pub fn div(&self, rhs: &Interval) -> Interval {
        self * &rhs.recip()
    }

    /// Widens the endpoints to multiples of `2^-bits`, keeping numerators and
    /// denominators short in long computations.
    pub fn round_out(&self, bits: u32) -> Interval {
        let scale = pow2(bits as i64);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    /// `Some(k)` when every point of the interval has floor `k`, that is the
    /// interval lies strictly between two consecutive integers (or touches
    /// only its lower integer from above, never an integer endpoint).
    pub fn certified_floor(&self) -> Option<BigInt> {
        let f = self.lo.floor();
        if self.lo.is_integer() || self.hi.floor() != f {
            return None;
        }
        Some(f.to_integer())
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / rational(2)).to_f64().unwrap_or(f64::NAN)
    }
}

/// Decimal rendering with `digits` fractional digits, rounded down when
/// `up` is false and up otherwise.
pub fn to_decimal(q: &BigRational, digits: u32, up: bool) -> String {
    let scale = rational(BigInt::from(10u32).pow(digits));
    let scaled = q * scale;
    let v = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = v.is_negative();
    let mut s = v.abs().to_string();
    if digits > 0 {
        let d = digits as usize;
        if s.len() <= d {
            s = format!("{}{s}", "0".repeat(d + 1 - s.len()));
        }
        s.insert(s.len() - d, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_decimal(&self.lo, 24, false), to_decimal(&self.hi, 24, true))
    }
}

/// Serialized as outward-rounded decimal strings.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &to_decimal(&self.lo, 30, false))?;
        st.serialize_field("hi", &to_decimal(&self.hi, 30, true))?;
        st.end()
    }
}

impl Add for &Interval {
    type Output = Interval;

    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;

    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;

    fn mul(self, rhs: &Interval) -> Interval {
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return Interval {
                lo: &self.lo * &rhs.lo,
                hi: &self.hi * &rhs.hi,
            };
        }
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(BigRational::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Interval { lo, hi }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
