//! Certified binary logarithms of big integers and rationals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::interval::{pow2, Interval};
use crate::error::{out_of_range, Result};

/// Default number of fractional bits of a certified logarithm.
pub const DEFAULT_BITS: u32 = 64;

/// Extra working bits carried through the squaring loop on the first try.
const GUARD: u32 = 32;

/// Fractional bits of `log2(m)` for `m = mant / 2^p` in `[1, 2)`, given
/// `m` only as the enclosure `[lo, hi] / 2^p`. Returns `None` as soon as a
/// bit is not determined by the enclosure.
fn fraction_bits(mut lo: BigUint, mut hi: BigUint, p: u32, bits: u32) -> Option<BigUint> {
    let two = BigUint::one() << (p + 1);
    let mut acc = BigUint::zero();
    for _ in 0..bits {
        // Square with outward rounding at precision p.
        lo = (&lo * &lo) >> p;
        hi = {
            let sq = &hi * &hi;
            let down = &sq >> p;
            if (&down << p) == sq {
                down
            } else {
                down + 1u32
            }
        };
        acc <<= 1;
        match (lo >= two, hi >= two) {
            (true, true) => {
                acc |= BigUint::one();
                lo >>= 1;
                // Halving rounds toward +inf on the upper end.
                hi = (&hi + 1u32) >> 1;
            }
            (false, false) => {}
            _ => return None,
        }
    }
    Some(acc)
}

/// Enclosure of `log2(x)` of width at most `2^-bits`.
///
/// The integer part is the bit length; fractional bits are extracted by
/// repeated squaring of the leading bits with directed rounding, and the
/// working precision is doubled whenever a bit is left undetermined. Exact
/// powers of two give a point interval.
pub fn log2_certified_with_precision(x: &BigUint, bits: u32) -> Result<Interval> {
    if x.is_zero() {
        return Err(out_of_range("x", 0, ">= 1"));
    }
    let e = x.bits() - 1;
    if x.count_ones() == 1 {
        return Ok(Interval::from_int(BigInt::from(e)));
    }
    let mut p = bits + GUARD;
    loop {
        // Mantissa enclosure [lo, hi] / 2^p of x / 2^e.
        let (lo, hi) = if e <= p as u64 {
            let m = x << (p as u64 - e);
            (m.clone(), m)
        } else {
            let shift = e - p as u64;
            let m = x >> shift;
            let exact = (&m << shift) == *x;
            let hi = if exact { m.clone() } else { &m + 1u32 };
            (m, hi)
        };
        if let Some(frac) = fraction_bits(lo, hi, p, bits) {
            let base = BigRational::from_integer(BigInt::from(e));
            let lo = base + BigRational::new(BigInt::from(frac), BigInt::one() << bits as usize);
            let hi = &lo + pow2(-(bits as i64));
            return Ok(Interval::new(lo, hi));
        }
        p *= 2;
    }
}

pub fn log2_certified(x: &BigUint) -> Result<Interval> {
    log2_certified_with_precision(x, DEFAULT_BITS)
}

/// Enclosure of `log2(q)` for a positive rational.
pub fn log2_rational(q: &BigRational, bits: u32) -> Result<Interval> {
    let (num, den) = (q.numer(), q.denom());
    let (Some(num), Some(den)) = (num.to_biguint(), den.to_biguint()) else {
        return Err(out_of_range("q", q, "> 0"));
    };
    if num.is_zero() {
        return Err(out_of_range("q", q, "> 0"));
    }
    let a = log2_certified_with_precision(&num, bits + 1)?;
    let b = log2_certified_with_precision(&den, bits + 1)?;
    Ok(&a - &b)
}

/// Enclosure of `log2` over a positive interval.
pub fn log2_interval(x: &Interval, bits: u32) -> Result<Interval> {
    let lo = log2_rational(&x.lo, bits)?;
    let hi = log2_rational(&x.hi, bits)?;
    Ok(Interval::new(lo.lo, hi.hi))
}

/// Enclosure of `ln 2` of width at most about `2^-bits`, from
/// `ln 2 = sum_{k >= 1} 1 / (k 2^k)`.
pub fn ln2(bits: u32) -> Interval {
    let p = bits as usize + 16;
    let terms = p;
    let one = BigUint::one() << p;
    let mut floor_sum = BigUint::zero();
    for k in 1..=terms {
        floor_sum += (&one >> k) / BigUint::from(k);
    }
    // Each truncated term loses less than one unit; the tail after `terms`
    // is below 2^-terms.
    let den = BigInt::one() << p;
    let lo = BigRational::new(BigInt::from(floor_sum.clone()), den.clone());
    let hi = BigRational::new(BigInt::from(floor_sum + terms + 1u32), den);
    Interval::new(lo, hi)
}

/// Enclosure of `log2(e) = 1 / ln 2`.
pub fn log2_e(bits: u32) -> Interval {
    ln2(bits + 2).recip()
}

/// Enclosure of the natural logarithm over a positive interval.
pub fn ln_interval(x: &Interval, bits: u32) -> Result<Interval> {
    let l = log2_interval(x, bits + 2)?;
    Ok(&l * &ln2(bits + 4))
}
