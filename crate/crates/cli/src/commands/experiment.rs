use anyhow::{bail, Result};
use clap::Subcommand;
use conflictkit::embedding::{exact_embedding_counts, EXACT_COUNT_MAX_N};
use conflictkit::sampling::{random_general_position, random_stacked_drawing};
use conflictkit::triangulations::count_tn;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::report::{Outcome, Status};

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentCmd {
    /// Exact embedding counts of T_n on random point sets, compared with the
    /// label-preserving and embeddable-fraction bounds.
    EmbedProb {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw stacked-triangulation drawings instead of uniform grid points,
        /// so that the hull is a triangle and counts are non-trivial.
        #[arg(long)]
        stacked: bool,
    },
}

pub fn run(cmd: &ExperimentCmd) -> Result<Outcome> {
    let ExperimentCmd::EmbedProb { n, trials, seed, stacked } = cmd;
    let n = *n;
    if !(4..=EXACT_COUNT_MAX_N).contains(&n) {
        bail!("n = {n} is out of range 4..={EXACT_COUNT_MAX_N} for exact counting");
    }
    let total = count_tn(n)?.to_u64().expect("|T_n| is small here");
    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
    let bound = 16.0 * (n * (n - 1) * (n - 2)) as f64 / 2f64.powi(n as i32);
    let effective = bound.min(1.0);
    let mut label_preserving = Vec::with_capacity(*trials);
    let mut embeddable = Vec::with_capacity(*trials);
    for _ in 0..*trials {
        let p = if *stacked {
            random_stacked_drawing(n, &mut rng)?.points
        } else {
            random_general_position(n, 1 << 16, &mut rng)?
        };
        let c = exact_embedding_counts(n, &p)?;
        label_preserving.push(c.label_preserving_count);
        embeddable.push(c.embeddable_count);
    }
    let max_lp = label_preserving.iter().copied().max().unwrap_or(0);
    let fractions: Vec<f64> = embeddable.iter().map(|&e| e as f64 / total as f64).collect();
    let mean = if fractions.is_empty() {
        0.0
    } else {
        fractions.iter().sum::<f64>() / fractions.len() as f64
    };
    let max_fraction = fractions.iter().copied().fold(0.0, f64::max);
    let lp_ok = max_lp <= 1;
    let fraction_ok = max_fraction <= effective;
    let status = if lp_ok && fraction_ok { Status::Success } else { Status::Mismatch };
    Ok(Outcome::new(
        status,
        json!({
            "n": n,
            "trials": trials,
            "t_n": total,
            "max_label_preserving_count": max_lp,
            "label_preserving_bound": { "count": 1, "fraction": 1.0 / total as f64, "respected": lp_ok },
            "mean_embeddable_fraction": mean,
            "max_embeddable_fraction": max_fraction,
            "embeddable_bound": {
                "formula": "16 n (n-1) (n-2) / 2^n",
                "value": bound,
                "vacuous": bound >= 1.0,
                "effective": effective,
                "respected": fraction_ok,
            },
            "label_preserving_counts": label_preserving,
            "embeddable_counts": embeddable,
        }),
    ))
}
