//! Operation-count scaling probes.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::algebra::{Fe, Field, GrsCode};
use crate::bz_baseline::RandomCodebook;
use crate::expander::{select_params, ExpanderCode, PhiWord};
use crate::graph::BipartiteGraph;
use crate::ops;

/// Fewest points a probe accepts.
pub const MIN_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit, HarnessError> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(HarnessError::InsufficientPoints {
            needed: 2,
            got: xs.len().min(ys.len()),
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(LinearFit { slope, intercept, r2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub x: f64,
    pub ops: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub kind: String,
    /// What `x` measures.
    pub x_label: String,
    /// Fit of `ops` (or of its logarithm, see `fit_scale`) against `x`.
    pub fit_scale: String,
    pub points: Vec<ProbePoint>,
    pub fit: LinearFit,
}

fn need_points(k: usize) -> Result<(), HarnessError> {
    if k < MIN_POINTS {
        return Err(HarnessError::InsufficientPoints {
            needed: MIN_POINTS,
            got: k,
        });
    }
    Ok(())
}

/// Decoder operations against the code length `N = nΔ` for random
/// `Δ`-regular graphs on `n` vertices per side, with `m` rounds and a fixed
/// fraction of symbol errors.
pub fn probe_expander(
    sizes: &[usize],
    degree: usize,
    ell: u32,
    k: usize,
    m: usize,
    error_fraction: f64,
    seed: u64,
) -> Result<ProbeReport, HarnessError> {
    need_points(sizes.len())?;
    let field = Arc::new(Field::new(ell)?);
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let graph = Arc::new(BipartiteGraph::random_regular(n, degree, seed)?);
        let local = GrsCode::new(field.clone(), degree, k)?;
        let code = ExpanderCode::new(graph, local.clone(), local)?.with_iterations(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let q = field.size();
        let msg: Vec<Fe> = (0..code.dimension()).map(|_| Fe(rng.gen_range(0..q) as u16)).collect();
        let sent = code.encode(&msg)?;
        let mut word = PhiWord::from_codeword(&sent);
        let errors = (error_fraction * n as f64).floor() as usize;
        for i in sample(&mut rng, n, errors) {
            let j = rng.gen_range(0..k);
            if let Some(s) = word.0[i].as_mut() {
                s[j] = field.add(s[j], Fe(rng.gen_range(1..q) as u16));
            }
        }
        let (res, ops) = ops::measure(|| code.decode_with(&word, m));
        let _outcome = res?;
        points.push(ProbePoint {
            x: code.edge_length() as f64,
            ops: ops as f64,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ops).collect();
    Ok(ProbeReport {
        kind: "expander".into(),
        x_label: "N".into(),
        fit_scale: "linear".into(),
        fit: linear_fit(&xs, &ys)?,
        points,
    })
}

/// Operations of one maximum-likelihood constituent decode for random
/// binary `[Δ, Δ/2]` codes, fitted as `log₂(ops)` against `Δ`.
pub fn probe_bz(degrees: &[usize], seed: u64) -> Result<ProbeReport, HarnessError> {
    need_points(degrees.len())?;
    let mut points = Vec::with_capacity(degrees.len());
    for &d in degrees {
        let book = RandomCodebook::new(d, d / 2, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ d as u64);
        let word: Vec<bool> = (0..d).map(|_| rng.gen()).collect();
        let (_, ops) = ops::measure(|| book.ml_decode(&word));
        points.push(ProbePoint {
            x: d as f64,
            ops: ops as f64,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.x).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ops.log2()).collect();
    Ok(ProbeReport {
        kind: "bz".into(),
        x_label: "degree".into(),
        fit_scale: "log2".into(),
        fit: linear_fit(&xs, &ys)?,
        points,
    })
}

/// Constituent decoding cost per code symbol against `1/ε`. For each ε the
/// degree and field come from [`select_params`]; one errors-only decode at
/// half the designed distance is measured. Fitted on log-log scale.
pub fn probe_epsilon(epsilons: &[f64], seed: u64) -> Result<ProbeReport, HarnessError> {
    need_points(epsilons.len())?;
    let mut points = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let sel = select_params(eps)?;
        let field = Arc::new(Field::new(sel.ell)?);
        let delta = sel.delta_min;
        let k = ((1.0 - eps / 2.0) * delta as f64).ceil() as usize;
        let code = GrsCode::new(field.clone(), delta, k)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ delta as u64);
        let q = field.size();
        let msg: Vec<Fe> = (0..k).map(|_| Fe(rng.gen_range(0..q) as u16)).collect();
        let mut word = code.encode(&msg)?;
        for i in sample(&mut rng, delta, (code.distance() - 1) / 2) {
            word[i] = field.add(word[i], Fe(rng.gen_range(1..q) as u16));
        }
        let (res, ops) = ops::measure(|| code.decode_errors(&word));
        let _outcome = res?;
        points.push(ProbePoint {
            x: 1.0 / eps,
            ops: ops as f64 / delta as f64,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.x.log2()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.ops.log2()).collect();
    Ok(ProbeReport {
        kind: "epsilon".into(),
        x_label: "1/epsilon".into(),
        fit_scale: "log2-log2".into(),
        fit: linear_fit(&xs, &ys)?,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        let f = linear_fit(&xs, &ys).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r2 - 1.0).abs() < 1e-12);
        assert!(linear_fit(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn probes_need_four_points() {
        assert!(matches!(
            probe_bz(&[8, 10, 12], 0),
            Err(HarnessError::InsufficientPoints { .. })
        ));
    }

    #[test]
    fn bz_probe_is_exact() {
        let r = probe_bz(&[8, 10, 12, 14], 1).unwrap();
        for p in &r.points {
            assert_eq!(p.ops, 2f64.powf(p.x / 2.0) * p.x);
        }
    }
}
