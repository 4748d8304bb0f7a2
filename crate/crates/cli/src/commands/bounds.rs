use anyhow::Result;
use clap::{Subcommand, ValueEnum};
use conflictkit::bounds::interval::to_decimal;
use conflictkit::bounds::{sigma_report, verify_sigma_range, Mode, SigmaBoundReport, EXACT_MODE_MAX_N};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Outcome, Status};

const DIGITS: u32 = 30;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    Stirling,
    /// Exact up to n = 512, Stirling beyond.
    Auto,
}

impl ModeArg {
    fn resolve(self, n: u64) -> Mode {
        match self {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Stirling => Mode::Stirling,
            ModeArg::Auto if n <= EXACT_MODE_MAX_N => Mode::Exact,
            ModeArg::Auto => Mode::Stirling,
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundsCmd {
    /// Certified sigma bound for one n.
    Sigma {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        /// Fail (exit 1) unless the certified bound equals this value.
        #[arg(long)]
        expect: Option<i64>,
    },
    /// Checks that every n in FROM..=TO has certified bound EXPECT.
    VerifyRange {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        expect: i64,
    },
    /// Bounds and their ratio to log2 n for a list of n.
    Trend {
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
}

pub fn row(r: &SigmaBoundReport) -> Value {
    json!({
        "n": r.n,
        "mode": r.mode,
        "precision_bits": r.precision_bits,
        "log2_ts_bound_lo": to_decimal(&r.ts_log2.lo, DIGITS, false),
        "log2_ts_bound_hi": to_decimal(&r.ts_log2.hi, DIGITS, true),
        "pre_floor_lo": to_decimal(&r.pre_floor.lo, DIGITS, false),
        "pre_floor_hi": to_decimal(&r.pre_floor.hi, DIGITS, true),
        "sigma_bound": r.sigma_bound,
        "certified": r.certified,
    })
}

pub fn run(cmd: &BoundsCmd) -> Result<Outcome> {
    match cmd {
        BoundsCmd::Sigma { n, mode, expect } => {
            let r = sigma_report(*n, mode.resolve(*n))?;
            let status = if !r.certified {
                Status::Inconclusive
            } else if expect.is_some_and(|e| e != r.sigma_bound) {
                Status::Mismatch
            } else {
                Status::Success
            };
            Ok(Outcome::new(status, row(&r)).certified(r.certified))
        }
        BoundsCmd::VerifyRange { from, to, expect } => {
            let r = verify_sigma_range(*from, *to, *expect)?;
            let status = if r.passed {
                Status::Success
            } else if !r.mismatched.is_empty() {
                Status::Mismatch
            } else {
                Status::Inconclusive
            };
            let body = json!({
                "from": r.from,
                "to": r.to,
                "expected": r.expected,
                "passed": r.passed,
                "mismatched": r.mismatched,
                "uncertified": r.uncertified,
                "rows": r.rows.iter().map(row).collect::<Vec<_>>(),
            });
            Ok(Outcome::new(status, body).certified(r.uncertified.is_empty()))
        }
        BoundsCmd::Trend { ns, mode } => {
            let mut rows = Vec::with_capacity(ns.len());
            let mut ratios = Vec::with_capacity(ns.len());
            let mut all_certified = true;
            for &n in ns {
                let r = sigma_report(n, mode.resolve(n))?;
                let ratio = r.sigma_bound as f64 / (n as f64).log2();
                all_certified &= r.certified;
                let mut v = row(&r);
                v["ratio"] = json!(ratio);
                rows.push(v);
                ratios.push(ratio);
            }
            let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
            let status = if all_certified { Status::Success } else { Status::Inconclusive };
            Ok(Outcome::new(status, json!({ "rows": rows, "ratios_decreasing": decreasing })).certified(all_certified))
        }
    }
}
