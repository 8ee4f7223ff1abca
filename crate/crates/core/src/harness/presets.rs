//! JSON presets describing concatenated codes.
//!
//! ```json
//! {
//!   "inner": {"type": "random", "n_in": 14, "r_in": 0.6428, "seed": 1},
//!   "outer": {"kind": "expander", "graph": {"kind": "complete", "degree": 7},
//!             "ell": 3, "code_a": {"k": 3}, "code_b": {"k": 3}}
//! }
//! ```
//!
//! Outer codes may also be `{"kind": "grs", "ell", "n", "beta"}` or
//! `{"kind": "path", "path": "other.json"}`, resolved relative to the file
//! that refers to it.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::HarnessError;
use crate::concat::{ConcatCode, GrsOuter, InnerCode, OuterCode, ProfileInner, RandomLinearInner};
use crate::expander::{ExpanderCode, ExpanderPreset, SigmaUnit};

const MAX_PATH_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InnerPreset {
    Random {
        n_in: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_in: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k_in: Option<usize>,
        seed: u64,
    },
    Profile {
        pi: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OuterPreset {
    Expander(ExpanderPreset),
    Grs { ell: u32, n: usize, beta: f64 },
    Path { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatPreset {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<InnerPreset>,
    pub outer: OuterPreset,
}

/// A constructed outer code, keeping its concrete type for reporting.
#[derive(Debug, Clone)]
pub enum BuiltOuter {
    Expander(Arc<ExpanderCode>),
    Grs(Arc<GrsOuter>),
}

impl BuiltOuter {
    pub fn as_outer(&self) -> Arc<dyn OuterCode> {
        match self {
            BuiltOuter::Expander(c) => c.clone(),
            BuiltOuter::Grs(c) => c.clone(),
        }
    }

    /// Parameters and bounds of the outer code.
    pub fn describe(&self) -> Result<Value, HarnessError> {
        Ok(match self {
            BuiltOuter::Expander(c) => {
                let s = c.spectral();
                json!({
                    "kind": "expander",
                    "n": c.n(),
                    "degree": c.graph().degree(),
                    "ell": c.field().ell(),
                    "edge_length": c.edge_length(),
                    "dimension": c.dimension(),
                    "symbol_width": c.symbol_width(),
                    "rate": c.rate(),
                    "rate_lower_bound": c.rate_lower_bound(),
                    "distance_bound": c.distance_bound(),
                    "beta": c.beta(),
                    "lambda": s.lambda,
                    "gamma": s.gamma,
                    "ramanujan": s.ramanujan,
                    "iterations": c.iterations(),
                    "iteration_bound_half_beta": c.iteration_bound(c.beta() / 2.0, SigmaUnit::Fraction).ok(),
                })
            }
            BuiltOuter::Grs(c) => json!({
                "kind": "grs",
                "n": c.n(),
                "ell": c.field().ell(),
                "dimension": c.message_len(),
                "distance": c.code().distance(),
                "radius": c.radius(),
                "rate": OuterCode::rate(c.as_ref()),
                "beta": c.beta(),
            }),
        })
    }
}

impl OuterPreset {
    pub fn build(&self, base: &Path) -> Result<BuiltOuter, HarnessError> {
        self.build_depth(base, 0)
    }

    fn build_depth(&self, base: &Path, depth: usize) -> Result<BuiltOuter, HarnessError> {
        match self {
            OuterPreset::Expander(p) => Ok(BuiltOuter::Expander(Arc::new(p.build()?))),
            OuterPreset::Grs { ell, n, beta } => Ok(BuiltOuter::Grs(Arc::new(GrsOuter::for_beta(*ell, *n, *beta)?))),
            OuterPreset::Path { path } => {
                if depth >= MAX_PATH_DEPTH {
                    return Err(HarnessError::Preset("outer preset references nest too deeply".into()));
                }
                let full = base.join(path);
                let text = std::fs::read_to_string(&full)?;
                let next: OuterPreset = serde_json::from_str(&text)?;
                let dir = full.parent().map(Path::to_path_buf).unwrap_or_default();
                next.build_depth(&dir, depth + 1)
            }
        }
    }
}

impl InnerPreset {
    /// Builds the inner code for an outer code whose symbols carry `bits` bits.
    pub fn build(&self, bits: usize) -> Result<Arc<dyn InnerCode>, HarnessError> {
        Ok(match *self {
            InnerPreset::Random { n_in, r_in, k_in, seed } => {
                let k = match (k_in, r_in) {
                    (Some(k), _) => k,
                    (None, Some(r)) => (r * n_in as f64).round() as usize,
                    (None, None) => bits,
                };
                Arc::new(RandomLinearInner::new(n_in, k, seed)?)
            }
            InnerPreset::Profile { pi } => Arc::new(ProfileInner::new(bits, pi)?),
        })
    }
}

impl ConcatPreset {
    pub fn load(path: &Path) -> Result<(Self, PathBuf), HarnessError> {
        let text = std::fs::read_to_string(path)?;
        let preset = serde_json::from_str(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((preset, base))
    }

    pub fn build(&self, base: &Path) -> Result<(BuiltOuter, Option<ConcatCode>), HarnessError> {
        let outer = self.outer.build(base)?;
        let code = match &self.inner {
            Some(inner) => {
                let o = outer.as_outer();
                Some(ConcatCode::new(inner.build(o.symbol_bits())?, o)?)
            }
            None => None,
        };
        Ok((outer, code))
    }
}
