//! Block error rate estimation for concatenated codes over the BSC.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::algebra::Fe;
use crate::channel::Bsc;
use crate::concat::ConcatCode;
use crate::ops;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialPlan {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub failures: u64,
    pub trials: u64,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    pub mean_ops: f64,
}

/// Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // the endpoints at 0 and n failures are exactly 0 and 1
    let lower = if failures == 0 { 0.0 } else { (center - half).max(0.0) };
    let upper = if failures == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lower, upper)
}

/// Generator for one purpose (`stream`) within one trial, keyed by the
/// seed and trial index together.
pub fn trial_rng(seed: u64, trial: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16] = 2;
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}

const MESSAGE_STREAM: u64 = 1;
const INNER_STREAM: u64 = 2;

/// Encodes a random message, sends it over the BSC and decodes. Returns
/// whether the trial failed (wrong codeword or declared error) and the
/// operations spent decoding.
pub fn run_trial(code: &ConcatCode, channel: &Bsc, seed: u64, trial: u64) -> Result<(bool, u64), HarnessError> {
    let q = code.outer().field().size();
    let mut rng = trial_rng(seed, trial, MESSAGE_STREAM);
    let msg: Vec<Fe> = (0..code.message_len())
        .map(|_| Fe(rng.gen_range(0..q) as u16))
        .collect();
    let sent = code.encode(&msg)?;
    let received = channel.for_trial(trial).transmit(&sent);
    let mut inner_rng = trial_rng(seed, trial, INNER_STREAM);
    let (out, n) = ops::measure(|| code.decode(&received, &mut inner_rng));
    Ok((out?.as_ref() != Ok(&sent), n))
}

/// Runs `plan.trials` independent trials. Trial `t` draws all randomness
/// from generators keyed by `(seed, t)`, so the result does not depend on
/// the thread count.
pub fn monte_carlo(code: &ConcatCode, plan: &TrialPlan) -> Result<ErrorEstimate, HarnessError> {
    if plan.trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let channel = Bsc::new(plan.p, plan.seed)?;
    let run = || {
        (0..plan.trials)
            .into_par_iter()
            .map(|t| run_trial(code, &channel, plan.seed, t).map(|(f, n)| (f as u64, n)))
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
    };
    let (failures, total_ops) = match plan.threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| HarnessError::ThreadPool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let (lower, upper) = wilson_interval(failures, plan.trials, Z95);
    Ok(ErrorEstimate {
        failures,
        trials: plan.trials,
        estimate: failures as f64 / plan.trials as f64,
        lower,
        upper,
        mean_ops: total_ops as f64 / plan.trials as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_contains_point_and_shrinks() {
        for (f, n) in [(0, 10), (3, 10), (10, 10), (50, 1000)] {
            let (lo, hi) = wilson_interval(f, n, Z95);
            let p = f as f64 / n as f64;
            assert!(lo <= p && p <= hi);
        }
        let (a, b) = wilson_interval(100, 1000, Z95);
        let (c, d) = wilson_interval(200, 2000, Z95);
        let ratio = (d - c) / (b - a);
        assert!((ratio * 2f64.sqrt() - 1.0).abs() < 0.2);
    }

    #[test]
    fn wilson_matches_closed_form() {
        // 5/20 at z = 1.96: textbook value (0.1119, 0.4687)
        let (lo, hi) = wilson_interval(5, 20, 1.96);
        assert!((lo - 0.1119).abs() < 1e-4 && (hi - 0.4687).abs() < 1e-4);
    }
}
