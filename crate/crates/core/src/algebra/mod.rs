//! Finite-field arithmetic, GRS codes and dense linear algebra over GF(2^ℓ).

mod field;
mod grs;
pub mod linalg;

pub use field::{Fe, Field, PRIMITIVE_POLYS};
pub use grs::{berlekamp_massey, GrsCode, GrsFailure, TotalDecode};

use std::sync::Arc;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unsupported extension degree {0} (need 1..=16)")]
    UnsupportedDegree(u32),
    #[error("polynomial {poly:#x} is not primitive of degree {ell}")]
    NotPrimitive { ell: u32, poly: u32 },
    #[error("value {value} is not an element of GF({q})")]
    OutOfField { value: usize, q: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("code length {length} exceeds field size {q}")]
    LengthExceedsField { length: usize, q: usize },
    #[error("invalid dimension {k} for length {length}")]
    InvalidDimension { k: usize, length: usize },
    #[error("evaluation point {0} repeated")]
    RepeatedPoint(u16),
    #[error("column multipliers must be nonzero")]
    ZeroMultiplier,
}

/// JSON preset for a GRS code: `{ell, delta, k, eval_points?, multipliers?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrsPreset {
    pub ell: u32,
    pub delta: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_points: Option<Vec<u16>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<u16>>,
}

impl GrsPreset {
    pub fn build(&self) -> Result<GrsCode, AlgebraError> {
        let field = Arc::new(Field::new(self.ell)?);
        self.build_in(field)
    }

    /// Builds the code over an existing field, which must have degree `ell`.
    pub fn build_in(&self, field: Arc<Field>) -> Result<GrsCode, AlgebraError> {
        if field.ell() != self.ell {
            return Err(AlgebraError::UnsupportedDegree(self.ell));
        }
        if self.eval_points.is_none() && self.multipliers.is_none() {
            return GrsCode::new(field, self.delta, self.k);
        }
        let points = match &self.eval_points {
            Some(p) => p.iter().map(|&v| Fe(v)).collect(),
            None => (0..self.delta).map(|v| Fe(v as u16)).collect(),
        };
        let mult = match &self.multipliers {
            Some(m) => m.iter().map(|&v| Fe(v)).collect(),
            None => vec![Fe::ONE; self.delta],
        };
        let code = GrsCode::with_points(field, self.k, points, mult)?;
        if code.length() != self.delta {
            return Err(AlgebraError::LengthMismatch {
                expected: self.delta,
                got: code.length(),
            });
        }
        Ok(code)
    }
}
