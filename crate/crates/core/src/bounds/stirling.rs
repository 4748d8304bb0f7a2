//! Two-sided Stirling enclosures for factorials and binomials at sizes where
//! the exact integers are too large to be worth forming.
//!
//! Robbins' form: `ln k! = k ln k - k + ln(2 pi k) / 2 + theta` with
//! `1/(12k + 1) < theta < 1/(12k)` for every `k >= 1`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::interval::Interval;
use super::log::{ln2, ln_interval, log2_e};
use crate::error::Result;

const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";

fn pi() -> Interval {
    let num: BigInt = PI_DIGITS.parse().expect("digit string");
    let den = BigInt::from(10u32).pow(PI_DIGITS.len() as u32 - 1);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + 1, den);
    Interval::new(lo, hi)
}

/// Enclosure of `ln k!`.
pub fn ln_factorial(k: u64, bits: u32) -> Result<Interval> {
    if k <= 1 {
        return Ok(Interval::from_int(0));
    }
    let kq = Interval::from_int(k);
    let ln_k = ln_interval(&kq, bits + 48)?;
    let ln_2pi = &ln_interval(&pi(), bits + 8)? + &ln2(bits + 8);
    let half = Interval::point(BigRational::new(1.into(), 2.into()));
    let theta = Interval::new(
        BigRational::new(1.into(), BigInt::from(12 * k as u128 + 1)),
        BigRational::new(1.into(), BigInt::from(12 * k as u128)),
    );
    let main = &(&kq * &ln_k) - &kq;
    let corr = &half * &(&ln_2pi + &ln_k);
    Ok((&(&main + &corr) + &theta).round_out(bits + 8))
}

/// Enclosure of `log2 k!`.
pub fn log2_factorial(k: u64, bits: u32) -> Result<Interval> {
    let l = ln_factorial(k, bits + 4)?;
    Ok((&l * &log2_e(bits + 48)).round_out(bits + 4))
}

/// Enclosure of `log2 C(m, r)` for `r <= m`.
pub fn log2_binomial(m: u64, r: u64, bits: u32) -> Result<Interval> {
    assert!(r <= m, "binomial with r > m");
    if r == 0 || r == m {
        return Ok(Interval::from_int(0));
    }
    let top = log2_factorial(m, bits + 4)?;
    let a = log2_factorial(r, bits + 4)?;
    let b = log2_factorial(m - r, bits + 4)?;
    Ok(&(&top - &a) - &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::log::log2_certified_with_precision;
    use num_bigint::BigUint;

    fn factorial(k: u64) -> BigUint {
        (1..=k).map(BigUint::from).product()
    }

    #[test]
    fn brackets_exact_factorials() {
        for k in [1u64, 2, 3, 10, 57, 300, 1000] {
            let exact = log2_certified_with_precision(&factorial(k), 100).unwrap();
            let approx = log2_factorial(k, 100).unwrap();
            assert!(approx.lo <= exact.hi && exact.lo <= approx.hi, "k = {k}");
            // The correction term alone leaves a width of 1/(12k(12k+1)) nats.
            if k > 1 {
                let allowed = BigRational::new(1.into(), BigInt::from(90 * k * k));
                assert!(approx.width() <= allowed, "k = {k}");
            }
        }
    }

    #[test]
    fn binomial_against_exact() {
        let exact = num_integer::binomial(BigUint::from(4000u32), BigUint::from(300u32));
        let exact = log2_certified_with_precision(&exact, 100).unwrap();
        let approx = log2_binomial(4000, 300, 100).unwrap();
        assert!(approx.lo <= exact.hi && exact.lo <= approx.hi);
        assert_eq!(log2_binomial(9, 0, 64).unwrap(), Interval::from_int(0));
    }

    #[test]
    fn pi_is_enclosed() {
        let p = pi();
        assert!(p.lo_f64() <= std::f64::consts::PI && std::f64::consts::PI <= p.hi_f64());
    }
}
