//! Certified evaluation of the sign-pattern bounds and of the resulting
//! upper bound on the size of conflict collections.
//!
//! Everything is exact big-integer or rational interval arithmetic. A floor
//! is only reported as certified when the enclosure of its argument lies
//! strictly between two consecutive integers; otherwise the precision is
//! raised along [`PRECISION_LADDER`] and, failing that, the result is
//! returned flagged as uncertified.

pub mod interval;
pub mod log;
pub mod stirling;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
pub use interval::{CertifiedLog, Interval};
pub use log::{ln2, log2_certified, log2_certified_with_precision, log2_e, log2_rational};

/// Fractional bits tried in turn before giving up on a floor.
pub const PRECISION_LADDER: [u32; 4] = [128, 256, 512, 1024];

/// Largest `n` evaluated with exact big-integer sums in the trend table.
pub const EXACT_MODE_MAX_N: u64 = 512;

/// Smallest `n` with a positive denominator in the sigma formula.
pub const SIGMA_MIN_N: u64 = 16;

const STIRLING_MAX_N: u64 = 1 << 20;

/// `2 (2d)^nvars * sum_{k=0}^{nvars} 2^k C(m, k)`.
pub fn warren_component_bound(m: u64, nvars: u64, d: u64) -> Result<BigUint> {
    for (what, v) in [("m", m), ("nvars", nvars), ("d", d)] {
        if v == 0 {
            return Err(out_of_range(what, v, ">= 1"));
        }
    }
    let mut sum = BigUint::zero();
    for k in 0..=nvars.min(m) {
        sum += binomial(BigUint::from(m), BigUint::from(k)) << k;
    }
    let lead = BigUint::from(2 * d).pow(nvars as u32);
    Ok(BigUint::from(2u32) * lead * sum)
}

/// `2 * 16^n * sum_{k=0}^{2n} 2^k C(C(n,3), k)`, with the binomials built
/// incrementally.
pub fn ts_upper_bound(n: u64) -> Result<BigUint> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    let m = n * (n - 1) * (n - 2) / 6;
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for k in 1..=(2 * n).min(m) {
        term = term * (m - k + 1) / k;
        sum += &term << k;
    }
    Ok((sum << (4 * n + 1)) as BigUint)
}

fn alon_at(n: u64, bits: u32) -> Result<Interval> {
    let half_n = Interval::point(BigRational::new(n.into(), 2.into()));
    let l = log::ln_interval(&half_n, bits)?;
    let a = &Interval::from_int(2 * n) + &l;
    let b = &(&(&Interval::from_int(3) + &(&Interval::from_int(2) * &log2_e(bits)))
        + &(&Interval::from_int(2) * &log::log2_interval(&half_n, bits)?))
        + &log::log2_interval(&l, bits)?;
    Ok(&a * &b)
}

/// Enclosure, of width at most `2^-64`, of the base-2 logarithm of
/// `(8 (e n / 2)^2 ln(n / 2))^(2n + ln(n / 2))`.
pub fn alon_ts_bound_log2(n: u64) -> Result<CertifiedLog> {
    if n < 3 {
        return Err(out_of_range("n", n, ">= 3"));
    }
    let mut bits = 96 + 64 - (n.leading_zeros());
    loop {
        let iv = alon_at(n, bits)?;
        if iv.width_within(64) {
            return Ok(iv.round_out(72));
        }
        bits *= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Exact integers, certified logarithms.
    Exact,
    /// Two-sided Stirling enclosures for factorials and binomials.
    Stirling,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaBoundReport {
    pub n: u64,
    pub mode: Mode,
    pub precision_bits: u32,
    pub ts_log2: CertifiedLog,
    pub numerator: Interval,
    pub denominator: Interval,
    pub pre_floor: Interval,
    pub sigma_bound: i64,
    pub certified: bool,
}

fn check_sigma_n(n: u64) -> Result<()> {
    if n < SIGMA_MIN_N {
        return Err(out_of_range("n", n, ">= 16"));
    }
    Ok(())
}

fn assemble(
    n: u64,
    mode: Mode,
    bits: u32,
    ts_log2: &CertifiedLog,
    log2_fact: &Interval,
) -> Result<SigmaBoundReport> {
    let cubic = BigUint::from(16u32) * n * (n - 1) * (n - 2);
    let denominator = &Interval::from_int(n) - &log2_certified_with_precision(&cubic, bits)?;
    if !denominator.is_positive() {
        return Err(Error::Invalid(format!("non-positive denominator at n = {n}")));
    }
    let numerator = &(ts_log2 - &Interval::from_int(n - 4)) - log2_fact;
    let pre_floor = numerator.div(&denominator);
    let floor = pre_floor.certified_floor();
    let certified = floor.is_some();
    let floor = floor.unwrap_or_else(|| pre_floor.lo.floor().to_integer());
    let sigma_bound = floor.to_i64().ok_or_else(|| Error::Invalid("bound exceeds i64".into()))? + 2;
    Ok(SigmaBoundReport {
        n,
        mode,
        precision_bits: bits,
        ts_log2: ts_log2.clone(),
        numerator,
        denominator,
        pre_floor,
        sigma_bound,
        certified,
    })
}

fn factorial(k: u64) -> BigUint {
    (2..=k).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// The sigma formula at a given working precision, with `log2((n-3)!)`
/// taken from the exact factorial.
pub fn sigma_upper_bound_with_precision(n: u64, ts_log2: &CertifiedLog, bits: u32) -> Result<SigmaBoundReport> {
    check_sigma_n(n)?;
    let log2_fact = log2_certified_with_precision(&factorial(n - 3), bits)?;
    assemble(n, Mode::Exact, bits, ts_log2, &log2_fact)
}

pub fn sigma_upper_bound(n: u64, ts_log2: &CertifiedLog) -> Result<SigmaBoundReport> {
    sigma_upper_bound_with_precision(n, ts_log2, PRECISION_LADDER[0])
}

fn exact_ladder(n: u64) -> Result<SigmaBoundReport> {
    check_sigma_n(n)?;
    let ts = ts_upper_bound(n)?;
    let fact = factorial(n - 3);
    let mut last = None;
    for bits in PRECISION_LADDER {
        let ts_log2 = log2_certified_with_precision(&ts, bits)?;
        let log2_fact = log2_certified_with_precision(&fact, bits)?;
        let report = assemble(n, Mode::Exact, bits, &ts_log2, &log2_fact)?;
        if report.certified {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("ladder is non-empty"))
}

/// Enclosure of `log2 ts_upper_bound(n)` without forming the integer. With
/// `m = C(n,3)` the terms `2^k C(m,k)` grow by a factor of at least
/// `r = 2(m - 2n + 1) / (2n)` per step, so the sum lies between its last
/// term and `r / (r - 1)` times it.
pub fn ts_log2_stirling(n: u64, bits: u32) -> Result<CertifiedLog> {
    if !(SIGMA_MIN_N..=STIRLING_MAX_N).contains(&n) {
        return Err(out_of_range("n", n, "16..=2^20"));
    }
    let m = n * (n - 1) * (n - 2) / 6;
    let last = &Interval::from_int(6 * n + 1) + &stirling::log2_binomial(m, 2 * n, bits)?;
    let r = BigRational::new(BigInt::from(m - 2 * n + 1), BigInt::from(n));
    let one = BigRational::one();
    let geometric = log2_rational(&(&r / (&r - &one)), bits)?;
    debug_assert!(!geometric.hi.is_negative());
    Ok(Interval::new(last.lo.clone(), last.hi + geometric.hi))
}

fn stirling_ladder(n: u64) -> Result<SigmaBoundReport> {
    let mut last = None;
    for bits in PRECISION_LADDER {
        let ts_log2 = ts_log2_stirling(n, bits)?;
        let log2_fact = stirling::log2_factorial(n - 3, bits)?;
        let report = assemble(n, Mode::Stirling, bits, &ts_log2, &log2_fact)?;
        if report.certified {
            return Ok(report);
        }
        last = Some(report);
    }
    Ok(last.expect("ladder is non-empty"))
}

/// Runs the full pipeline along the precision ladder. The returned report
/// may be uncertified; see [`certified_sigma`].
pub fn sigma_report(n: u64, mode: Mode) -> Result<SigmaBoundReport> {
    match mode {
        Mode::Exact => exact_ladder(n),
        Mode::Stirling => stirling_ladder(n),
    }
}

/// Exact-mode pipeline; an uncertified floor is an error.
pub fn certified_sigma(n: u64) -> Result<SigmaBoundReport> {
    let report = exact_ladder(n)?;
    if !report.certified {
        return Err(Error::Uncertified {
            n,
            bits: report.precision_bits,
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeReport {
    pub from: u64,
    pub to: u64,
    pub expected: i64,
    pub passed: bool,
    pub mismatched: Vec<u64>,
    pub uncertified: Vec<u64>,
    pub rows: Vec<SigmaBoundReport>,
}

/// Checks that every `n` in `from..=to` has a certified bound equal to
/// `expected`. Rows are computed in parallel and reported in order of `n`.
pub fn verify_sigma_range(from: u64, to: u64, expected: i64) -> Result<RangeReport> {
    check_sigma_n(from)?;
    if to < from {
        return Err(out_of_range("to", to, &format!(">= from = {from}")));
    }
    let rows: Vec<SigmaBoundReport> = (from..=to)
        .into_par_iter()
        .map(exact_ladder)
        .collect::<Result<_>>()?;
    let uncertified: Vec<u64> = rows.iter().filter(|r| !r.certified).map(|r| r.n).collect();
    let mismatched: Vec<u64> = rows
        .iter()
        .filter(|r| r.certified && r.sigma_bound != expected)
        .map(|r| r.n)
        .collect();
    Ok(RangeReport {
        from,
        to,
        expected,
        passed: uncertified.is_empty() && mismatched.is_empty(),
        mismatched,
        uncertified,
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrendRow {
    pub n: u64,
    pub mode: Mode,
    pub sigma_bound: i64,
    pub certified: bool,
    /// `sigma_bound / log2(n)`, for display.
    pub ratio: f64,
}

/// Sigma bounds and their ratio to `log2 n`; exact mode up to
/// [`EXACT_MODE_MAX_N`], Stirling mode beyond.
pub fn asymptotic_trend(ns: &[u64]) -> Result<Vec<TrendRow>> {
    for &n in ns {
        check_sigma_n(n)?;
        if n > STIRLING_MAX_N {
            return Err(out_of_range("n", n, "16..=2^20"));
        }
    }
    ns.par_iter()
        .map(|&n| {
            let mode = if n <= EXACT_MODE_MAX_N {
                Mode::Exact
            } else {
                Mode::Stirling
            };
            let r = sigma_report(n, mode)?;
            Ok(TrendRow {
                n,
                mode,
                sigma_bound: r.sigma_bound,
                certified: r.certified,
                ratio: r.sigma_bound as f64 / (n as f64).log2(),
            })
        })
        .collect()
}
