//! Generalized Reed–Solomon codes over GF(2^ℓ).
//!
//! A codeword of the `[Δ, k, Δ-k+1]` code is `c_j = v_j · f(α_j)` for a
//! message polynomial `f` of degree `< k`, distinct evaluation points `α_j`
//! and nonzero column multipliers `v_j`.
//!
//! Decoding is syndrome based. The parity-check matrix is `H[l][j] = u_j α_j^l`
//! for `l < Δ-k` with dual multipliers `u_j = 1 / (v_j ∏_{i≠j}(α_j - α_i))`,
//! so syndromes satisfy `S_l = Σ_j Y_j α_j^l` over the error support. The
//! locator is recovered with Berlekamp–Massey on Forney-modified syndromes
//! (erasures folded out), roots are found by exhaustive search over the
//! evaluation points, and the codeword is rebuilt by interpolating `f` from
//! `k` positions outside the error and erasure support. Everything is
//! `O(Δ²)` field operations per word.
//!
//! An evaluation point equal to zero is allowed: the locator is kept in
//! root form `σ(x) = x^L C(1/x)`, so a zero root shows up as a drop in the
//! degree of the Berlekamp–Massey connection polynomial.

use std::sync::Arc;

use super::{AlgebraError, Fe, Field};

/// Why a GRS decode did not produce a codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GrsFailure {
    #[error("too many erasures: {erasures} with minimum distance {distance}")]
    TooManyErasures { erasures: usize, distance: usize },
    #[error("error locator of degree {degree} exceeds the correction budget")]
    LocatorTooLong { degree: usize },
    #[error("error locator has {found} roots among the evaluation points, expected {expected}")]
    RootCountMismatch { found: usize, expected: usize },
    #[error("corrected word is outside the decoding radius")]
    OutsideRadius,
}

/// Outcome of a totalized decode: the output is always a codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalDecode {
    pub codeword: Vec<Fe>,
    /// `None` when the bounded-distance decoder succeeded.
    pub failure: Option<GrsFailure>,
}

/// A `[Δ, k, Δ-k+1]` generalized Reed–Solomon code.
#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Arc<Field>,
    k: usize,
    eval_points: Vec<Fe>,
    multipliers: Vec<Fe>,
    dual_multipliers: Vec<Fe>,
    // k × (Δ-k): systematic parity part, c[k+j] = Σ_i info[i] · parity[i][j].
    parity: Vec<Vec<Fe>>,
}

impl GrsCode {
    /// Classic RS-style instance: evaluation points are the first `length`
    /// field elements in value order, multipliers are all one.
    pub fn new(field: Arc<Field>, length: usize, k: usize) -> Result<Self, AlgebraError> {
        let points = (0..length.min(field.size())).map(|v| Fe(v as u16)).collect::<Vec<_>>();
        if length > field.size() {
            return Err(AlgebraError::LengthExceedsField {
                length,
                q: field.size(),
            });
        }
        Self::with_points(field, k, points, vec![Fe::ONE; length])
    }

    pub fn with_points(
        field: Arc<Field>,
        k: usize,
        eval_points: Vec<Fe>,
        multipliers: Vec<Fe>,
    ) -> Result<Self, AlgebraError> {
        let n = eval_points.len();
        if n == 0 || n > field.size() {
            return Err(AlgebraError::LengthExceedsField {
                length: n,
                q: field.size(),
            });
        }
        if k == 0 || k > n {
            return Err(AlgebraError::InvalidDimension { k, length: n });
        }
        if multipliers.len() != n {
            return Err(AlgebraError::LengthMismatch {
                expected: n,
                got: multipliers.len(),
            });
        }
        for (i, &a) in eval_points.iter().enumerate() {
            if a.0 as usize >= field.size() {
                return Err(AlgebraError::OutOfField {
                    value: a.0 as usize,
                    q: field.size(),
                });
            }
            if eval_points[..i].contains(&a) {
                return Err(AlgebraError::RepeatedPoint(a.0));
            }
        }
        if multipliers.iter().any(|v| v.is_zero()) {
            return Err(AlgebraError::ZeroMultiplier);
        }
        if let Some(v) = multipliers.iter().find(|v| v.0 as usize >= field.size()) {
            return Err(AlgebraError::OutOfField {
                value: v.0 as usize,
                q: field.size(),
            });
        }

        let f = &*field;
        let dual_multipliers = (0..n)
            .map(|j| {
                let prod = (0..n).filter(|&i| i != j).fold(multipliers[j], |acc, i| {
                    f.mul(acc, f.sub(eval_points[j], eval_points[i]))
                });
                f.inv(prod)
            })
            .collect::<Result<Vec<_>, _>>()?;

        // Lagrange basis over the first k points, scaled by the multipliers.
        let info_pts = &eval_points[..k];
        let weights = barycentric_weights(f, info_pts)?;
        let mut parity = vec![vec![Fe::ZERO; n - k]; k];
        for j in k..n {
            let x = eval_points[j];
            let ell = info_pts.iter().fold(Fe::ONE, |acc, &p| f.mul(acc, f.sub(x, p)));
            for i in 0..k {
                // L_i(x) = ℓ(x) w_i / (x - x_i)
                let li = f.div(f.mul(ell, weights[i]), f.sub(x, info_pts[i]))?;
                parity[i][j - k] = f.div(f.mul(multipliers[j], li), multipliers[i])?;
            }
        }

        Ok(GrsCode {
            field,
            k,
            eval_points,
            multipliers,
            dual_multipliers,
            parity,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Code length Δ.
    pub fn length(&self) -> usize {
        self.eval_points.len()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Minimum distance Δ - k + 1.
    pub fn distance(&self) -> usize {
        self.length() - self.k + 1
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.length() as f64
    }

    /// Relative minimum distance δ = d/Δ.
    pub fn relative_distance(&self) -> f64 {
        self.distance() as f64 / self.length() as f64
    }

    pub fn eval_points(&self) -> &[Fe] {
        &self.eval_points
    }

    pub fn multipliers(&self) -> &[Fe] {
        &self.multipliers
    }

    /// Row `l` of the parity-check matrix, `u_j α_j^l`.
    pub fn parity_check_row(&self, l: usize) -> Vec<Fe> {
        let f = &*self.field;
        (0..self.length())
            .map(|j| f.mul(self.dual_multipliers[j], f.pow(self.eval_points[j], l as u64)))
            .collect()
    }

    /// The full `(Δ-k) × Δ` parity-check matrix.
    pub fn parity_check_matrix(&self) -> Vec<Vec<Fe>> {
        (0..self.length() - self.k).map(|l| self.parity_check_row(l)).collect()
    }

    /// Evaluation encoding: `message` holds the coefficients of `f`.
    pub fn encode(&self, message: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        self.check_len(message.len(), self.k)?;
        let f = &*self.field;
        Ok(self
            .eval_points
            .iter()
            .zip(&self.multipliers)
            .map(|(&a, &v)| f.mul(v, f.eval_poly(message, a)))
            .collect())
    }

    /// Systematic encoding: the first `k` coordinates of the codeword equal
    /// `info`.
    pub fn encode_systematic(&self, info: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        self.check_len(info.len(), self.k)?;
        let f = &*self.field;
        let mut out = info.to_vec();
        out.extend((0..self.length() - self.k).map(|j| {
            info.iter()
                .zip(&self.parity)
                .fold(Fe::ZERO, |acc, (&m, row)| f.add(acc, f.mul(m, row[j])))
        }));
        Ok(out)
    }

    /// Inverse of [`encode_systematic`](Self::encode_systematic) on codewords.
    pub fn systematic_part<'a>(&self, codeword: &'a [Fe]) -> &'a [Fe] {
        &codeword[..self.k]
    }

    /// Syndromes `S_l = Σ_j r_j u_j α_j^l` for `l < count`.
    fn syndromes(&self, word: &[Fe], count: usize) -> Vec<Fe> {
        let f = &*self.field;
        let mut s = vec![Fe::ZERO; count];
        for ((&r, &u), &x) in word.iter().zip(&self.dual_multipliers).zip(&self.eval_points) {
            if r.is_zero() {
                continue;
            }
            let y = f.mul(r, u);
            let mut term = y;
            for (l, sl) in s.iter_mut().enumerate() {
                if l > 0 {
                    term = f.mul(term, x);
                }
                *sl = f.add(*sl, term);
            }
        }
        s
    }

    /// True when every parity check is satisfied.
    pub fn is_codeword(&self, word: &[Fe]) -> bool {
        word.len() == self.length() && self.syndromes(word, self.length() - self.k).iter().all(|s| s.is_zero())
    }

    /// Bounded-distance errors-only decoding. Succeeds whenever fewer than
    /// `d/2` symbols are in error.
    pub fn decode_errors(&self, word: &[Fe]) -> Result<Result<Vec<Fe>, GrsFailure>, AlgebraError> {
        self.check_len(word.len(), self.length())?;
        let w: Vec<Option<Fe>> = word.iter().copied().map(Some).collect();
        Ok(self.decode_inner(&w))
    }

    /// Errors-and-erasures decoding (`None` marks an erasure). Succeeds
    /// whenever `2θ + ν < d` for θ errors among ν erasures.
    pub fn decode_errors_erasures(&self, word: &[Option<Fe>]) -> Result<Result<Vec<Fe>, GrsFailure>, AlgebraError> {
        self.check_len(word.len(), self.length())?;
        Ok(self.decode_inner(word))
    }

    /// Total errors-only decoder `F^Δ → C`. On failure the input's first `k`
    /// coordinates are re-encoded systematically.
    pub fn decode_errors_total(&self, word: &[Fe]) -> Result<TotalDecode, AlgebraError> {
        let w: Vec<Option<Fe>> = word.iter().copied().map(Some).collect();
        self.decode_erasures_total(&w)
    }

    /// Total errors-and-erasures decoder `(F ∪ {?})^Δ → C`. On failure the
    /// first `k` coordinates (erasures read as zero) are re-encoded
    /// systematically.
    pub fn decode_erasures_total(&self, word: &[Option<Fe>]) -> Result<TotalDecode, AlgebraError> {
        self.check_len(word.len(), self.length())?;
        Ok(match self.decode_inner(word) {
            Ok(codeword) => TotalDecode {
                codeword,
                failure: None,
            },
            Err(e) => {
                let info: Vec<Fe> = word[..self.k].iter().map(|s| s.unwrap_or(Fe::ZERO)).collect();
                TotalDecode {
                    codeword: self.encode_systematic(&info)?,
                    failure: Some(e),
                }
            }
        })
    }

    fn decode_inner(&self, word: &[Option<Fe>]) -> Result<Vec<Fe>, GrsFailure> {
        let f = &*self.field;
        let n = self.length();
        let d = self.distance();
        let erased: Vec<usize> = (0..n).filter(|&j| word[j].is_none()).collect();
        let nu = erased.len();
        if nu >= d {
            return Err(GrsFailure::TooManyErasures {
                erasures: nu,
                distance: d,
            });
        }
        let filled: Vec<Fe> = word.iter().map(|s| s.unwrap_or(Fe::ZERO)).collect();
        if d == 1 {
            return Ok(filled);
        }
        let synd = self.syndromes(&filled, d - 1);
        if synd.iter().all(|s| s.is_zero()) {
            // filled word is a codeword within distance ν < d of the sent one
            return Ok(filled);
        }

        // Γ(x) = ∏ (x - α_f), low-degree first.
        let mut gamma = vec![Fe::ONE];
        for &j in &erased {
            gamma = poly_mul_linear(f, &gamma, self.eval_points[j]);
        }
        // Forney syndromes T_l = Σ_i γ_i S_{l+i}: errors only, erasures removed.
        let t_len = d - 1 - nu;
        let forney: Vec<Fe> = (0..t_len)
            .map(|l| {
                gamma
                    .iter()
                    .enumerate()
                    .fold(Fe::ZERO, |acc, (i, &g)| f.add(acc, f.mul(g, synd[l + i])))
            })
            .collect();

        let (conn, len) = berlekamp_massey(f, &forney);
        if 2 * len > t_len {
            return Err(GrsFailure::LocatorTooLong { degree: len });
        }
        // σ(x) = x^len C(1/x): coefficient of x^(len - i) is C_i.
        let mut sigma = vec![Fe::ZERO; len + 1];
        for (i, &c) in conn.iter().enumerate().take(len + 1) {
            sigma[len - i] = c;
        }
        let mut bad = vec![false; n];
        for &j in &erased {
            bad[j] = true;
        }
        let mut found = 0;
        if len > 0 {
            for (b, &x) in bad.iter_mut().zip(&self.eval_points) {
                if !*b && f.eval_poly(&sigma, x).is_zero() {
                    *b = true;
                    found += 1;
                }
            }
        }
        if found != len {
            return Err(GrsFailure::RootCountMismatch { found, expected: len });
        }

        let codeword = self.interpolate_from(&filled, &bad);
        let mismatches = (0..n)
            .filter(|&j| word[j].is_some() && codeword[j] != filled[j])
            .count();
        if 2 * mismatches + nu >= d {
            return Err(GrsFailure::OutsideRadius);
        }
        Ok(codeword)
    }

    /// Rebuilds the codeword agreeing with `word` on the first `k` positions
    /// not flagged in `bad`.
    fn interpolate_from(&self, word: &[Fe], bad: &[bool]) -> Vec<Fe> {
        let f = &*self.field;
        let good: Vec<usize> = (0..self.length()).filter(|&j| !bad[j]).take(self.k).collect();
        debug_assert_eq!(good.len(), self.k);
        let pts: Vec<Fe> = good.iter().map(|&j| self.eval_points[j]).collect();
        // f values at the good points
        let vals: Vec<Fe> = good
            .iter()
            .map(|&j| f.div(word[j], self.multipliers[j]).expect("nonzero multiplier"))
            .collect();
        let weights = barycentric_weights(f, &pts).expect("distinct points");
        let mut out = word.to_vec();
        let mut is_good = vec![false; self.length()];
        for &j in &good {
            is_good[j] = true;
        }
        for j in 0..self.length() {
            if is_good[j] {
                continue;
            }
            let x = self.eval_points[j];
            let mut ell = Fe::ONE;
            let mut acc = Fe::ZERO;
            for i in 0..pts.len() {
                let diff = f.sub(x, pts[i]);
                ell = f.mul(ell, diff);
                let term = f.div(f.mul(weights[i], vals[i]), diff).expect("distinct points");
                acc = f.add(acc, term);
            }
            out[j] = f.mul(self.multipliers[j], f.mul(ell, acc));
        }
        out
    }

    fn check_len(&self, got: usize, expected: usize) -> Result<(), AlgebraError> {
        if got == expected {
            Ok(())
        } else {
            Err(AlgebraError::LengthMismatch { expected, got })
        }
    }
}

/// `w_i = 1 / ∏_{m≠i} (x_i - x_m)`.
fn barycentric_weights(f: &Field, pts: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
    (0..pts.len())
        .map(|i| {
            let prod = (0..pts.len())
                .filter(|&m| m != i)
                .fold(Fe::ONE, |acc, m| f.mul(acc, f.sub(pts[i], pts[m])));
            f.inv(prod)
        })
        .collect()
}

/// p(x) · (x - a), low-degree-first coefficients.
fn poly_mul_linear(f: &Field, p: &[Fe], a: Fe) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], c);
        out[i] = f.add(out[i], f.mul(c, a));
    }
    out
}

/// Shortest linear recurrence generating `s`. Returns the connection
/// polynomial `C` (with `C_0 = 1`) and the recurrence length `L`:
/// `s_l + Σ_{i=1..L} C_i s_{l-i} = 0` for `L ≤ l < s.len()`.
pub fn berlekamp_massey(f: &Field, s: &[Fe]) -> (Vec<Fe>, usize) {
    let mut c = vec![Fe::ONE];
    let mut b = vec![Fe::ONE];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = Fe::ONE;
    for n in 0..s.len() {
        let mut disc = s[n];
        for i in 1..=len.min(c.len() - 1) {
            disc = f.add(disc, f.mul(c[i], s[n - i]));
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = f.div(disc, last).expect("nonzero discrepancy base");
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Fe::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = prev;
            last = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, Fe::ZERO);
    (c, len)
}
