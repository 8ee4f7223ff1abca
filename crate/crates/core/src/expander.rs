//! Expander codes `(G, C_A : C_B)` with GRS constituents, the symbol-level
//! code `C_Φ` and its iterative errors-and-erasures decoder.
//!
//! A word of `C ⊆ F^N` lives on the edges of the graph; every vertex sees a
//! constituent codeword on its ordered edge set `E(u)`. The outer code `C_Φ`
//! has one symbol per A vertex: the `k_A` information coordinates of the
//! systematic `C_A` codeword on `E(u)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{Matrix, NullSpace};
use crate::algebra::{AlgebraError, Fe, Field, GrsCode, GrsPreset};
use crate::graph::{BipartiteGraph, GraphError, GraphSpec, Side, SpectralInfo};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpanderError {
    #[error("constituent code length {code} does not match graph degree {degree}")]
    LengthMismatch { code: usize, degree: usize },
    #[error("constituent codes are over different fields")]
    FieldMismatch,
    #[error("word has {got} symbols, expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("symbol width {got}, expected {expected}")]
    SymbolWidth { expected: usize, got: usize },
    #[error("word is not a codeword of the expander code")]
    NotACodeword,
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error("invalid iteration bound input: {0}")]
    BoundDomain(&'static str),
    #[error("epsilon {0} requires a degree above the largest supported field")]
    EpsilonTooSmall(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One symbol of `Φ = F^{k_A}`.
pub type PhiSymbol = Vec<Fe>;

/// A received word over `Φ ∪ {?}`; `None` is an erasure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiWord(pub Vec<Option<PhiSymbol>>);

impl PhiWord {
    pub fn from_codeword(symbols: &[PhiSymbol]) -> Self {
        PhiWord(symbols.iter().cloned().map(Some).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn erasures(&self) -> usize {
        self.0.iter().filter(|s| s.is_none()).count()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeTrace {
    pub iterations_used: usize,
    pub decoder_calls_a: usize,
    pub decoder_calls_b: usize,
    /// Local decodes that fell back to the totalization rule.
    pub local_failures: usize,
    pub success: bool,
}

impl DecodeTrace {
    pub fn decoder_calls(&self) -> usize {
        self.decoder_calls_a + self.decoder_calls_b
    }
}

/// The decoder declared a word outside the code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("decoder output is not a codeword")]
pub struct DecodeFailure;

/// How the error level σ of the iteration bound is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "unit", rename_all = "snake_case")]
pub enum SigmaUnit {
    /// σ is already a fraction of `n`.
    Fraction,
    /// σ is a number of symbol errors in a word of length `n`.
    Count { n: usize },
}

/// Relative distance lower bound `(δ_B - γ√(δ_B/δ_A)) / (1 - γ)`.
pub fn distance_bound(delta_a: f64, delta_b: f64, gamma: f64) -> f64 {
    (delta_b - gamma * (delta_b / delta_a).sqrt()) / (1.0 - gamma)
}

/// Correctable fraction `β = (δ_B/2 - γ√(δ_B/δ_A)) / (1 - γ)`.
pub fn beta_bound(delta_a: f64, delta_b: f64, gamma: f64) -> f64 {
    (delta_b / 2.0 - gamma * (delta_b / delta_a).sqrt()) / (1.0 - gamma)
}

/// Iteration bound
/// `ω = 2⌈ln(Δβ√σ/(β-σ)) / ln(δ_Aδ_B/(4γ²))⌉ + (1 + δ_A/δ_B) / (1 - (4γ²/(δ_Aδ_B))²)`.
///
/// At `γ = 0` the logarithm in the denominator is infinite and the first
/// term is zero.
pub fn iteration_bound(
    degree: usize,
    beta: f64,
    sigma: f64,
    unit: SigmaUnit,
    gamma: f64,
    delta_a: f64,
    delta_b: f64,
) -> Result<f64, ExpanderError> {
    let sigma = match unit {
        SigmaUnit::Fraction => sigma,
        SigmaUnit::Count { n } if n > 0 => sigma / n as f64,
        SigmaUnit::Count { .. } => return Err(ExpanderError::BoundDomain("n must be positive")),
    };
    if beta.is_nan() || sigma.is_nan() || sigma <= 0.0 || sigma >= beta {
        return Err(ExpanderError::BoundDomain("need 0 < σ < β"));
    }
    if !(delta_a > 0.0 && delta_b > 0.0) || !(0.0..1.0).contains(&gamma) {
        return Err(ExpanderError::BoundDomain("need δ_A, δ_B > 0 and 0 ≤ γ < 1"));
    }
    let x = 4.0 * gamma * gamma / (delta_a * delta_b);
    if x >= 1.0 {
        return Err(ExpanderError::BoundDomain("need 4γ² < δ_Aδ_B"));
    }
    let num = (degree as f64 * beta * sigma.sqrt() / (beta - sigma)).ln();
    let den = (delta_a * delta_b / (4.0 * gamma * gamma)).ln();
    let first = 2.0 * (num / den).ceil();
    Ok(first + (1.0 + delta_a / delta_b) / (1.0 - x * x))
}

/// Parameters chosen for a target redundancy ε.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSelection {
    pub epsilon: f64,
    /// Smallest degree with `Δ > (16/ε)²`.
    pub delta_min: usize,
    /// Extension degree of the smallest field with `q ≥ Δ`.
    pub ell: u32,
    pub rate: f64,
    pub rel_distance: f64,
    pub theta: f64,
}

impl ParamSelection {
    /// β from the bound chain at the Ramanujan estimate `γ = 2/√Δ`.
    pub fn beta_at_ramanujan(&self) -> f64 {
        let gamma = 2.0 / (self.delta_min as f64).sqrt();
        beta_bound(self.rel_distance, self.rel_distance, gamma)
    }
}

pub fn select_params(epsilon: f64) -> Result<ParamSelection, ExpanderError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(ExpanderError::BoundDomain("need 0 < ε < 1"));
    }
    let threshold = (16.0 / epsilon).powi(2);
    // ε is meant as a decimal value; snap binary round-off in (16/ε)²
    let nearest = threshold.round();
    let threshold = if (threshold - nearest).abs() <= 1e-9 * nearest {
        nearest
    } else {
        threshold
    };
    let delta_min = threshold.floor() as usize + 1;
    if delta_min > 1 << 16 {
        return Err(ExpanderError::EpsilonTooSmall(epsilon));
    }
    let ell = (usize::BITS - (delta_min - 1).leading_zeros()).max(1);
    Ok(ParamSelection {
        epsilon,
        delta_min,
        ell,
        rate: 1.0 - epsilon / 2.0,
        rel_distance: epsilon / 2.0,
        theta: 1.0 / 8.0,
    })
}

#[derive(Debug, Clone)]
pub struct ExpanderCode {
    field: Arc<Field>,
    graph: Arc<BipartiteGraph>,
    code_a: GrsCode,
    code_b: GrsCode,
    null: NullSpace,
    spectral: SpectralInfo,
    m: usize,
}

impl ExpanderCode {
    pub fn new(graph: Arc<BipartiteGraph>, code_a: GrsCode, code_b: GrsCode) -> Result<Self, ExpanderError> {
        let degree = graph.degree();
        for c in [&code_a, &code_b] {
            if c.length() != degree {
                return Err(ExpanderError::LengthMismatch {
                    code: c.length(),
                    degree,
                });
            }
        }
        if code_a.field() != code_b.field() {
            return Err(ExpanderError::FieldMismatch);
        }
        let field = code_a.field().clone();
        let n = graph.n();
        let ha = code_a.parity_check_matrix();
        let hb = code_b.parity_check_matrix();
        let rows = n * (ha.len() + hb.len());
        let mut h = Matrix::zeros(rows, graph.num_edges());
        let mut r = 0;
        for (side, local) in [(Side::A, &ha), (Side::B, &hb)] {
            for u in 0..n {
                let edges = graph.incident(side, u);
                for row in local.iter() {
                    for (j, &e) in edges.iter().enumerate() {
                        h.set(r, e, row[j]);
                    }
                    r += 1;
                }
            }
        }
        let null = NullSpace::of(&field, &h);
        let spectral = graph.spectral()?;
        let mut code = ExpanderCode {
            field,
            graph,
            code_a,
            code_b,
            null,
            spectral,
            m: 1,
        };
        code.m = code.default_iterations();
        Ok(code)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn code_a(&self) -> &GrsCode {
        &self.code_a
    }

    pub fn code_b(&self) -> &GrsCode {
        &self.code_b
    }

    pub fn spectral(&self) -> &SpectralInfo {
        &self.spectral
    }

    /// Length `n` of `C_Φ`.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Length `N = Δn` of the edge code `C`.
    pub fn edge_length(&self) -> usize {
        self.graph.num_edges()
    }

    /// `dim C` over F.
    pub fn dimension(&self) -> usize {
        self.null.dimension()
    }

    /// Field elements per Φ symbol, `k_A`.
    pub fn symbol_width(&self) -> usize {
        self.code_a.dimension()
    }

    /// `log₂|Φ| = k_A ℓ`.
    pub fn phi_bits(&self) -> usize {
        self.symbol_width() * self.field.ell() as usize
    }

    /// `dim C / N`, which equals the rate of `C_Φ` over Φ.
    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.edge_length() as f64
    }

    /// `r_A + r_B - 1`.
    pub fn rate_lower_bound(&self) -> f64 {
        self.code_a.rate() + self.code_b.rate() - 1.0
    }

    pub fn distance_bound(&self) -> f64 {
        distance_bound(
            self.code_a.relative_distance(),
            self.code_b.relative_distance(),
            self.spectral.gamma,
        )
    }

    /// β with the measured γ of the graph.
    pub fn beta(&self) -> f64 {
        beta_bound(
            self.code_a.relative_distance(),
            self.code_b.relative_distance(),
            self.spectral.gamma,
        )
    }

    /// `ω` evaluated at the measured parameters and error fraction σ.
    pub fn iteration_bound(&self, sigma: f64, unit: SigmaUnit) -> Result<f64, ExpanderError> {
        iteration_bound(
            self.graph.degree(),
            self.beta(),
            sigma,
            unit,
            self.spectral.gamma,
            self.code_a.relative_distance(),
            self.code_b.relative_distance(),
        )
    }

    /// `max(⌈ω⌉ at σ = β/2, ⌈4 log₂ n⌉)`; the ω term is skipped when the
    /// bound is undefined for this instance.
    pub fn default_iterations(&self) -> usize {
        let log_term = (4.0 * (self.n() as f64).log2()).ceil().max(1.0) as usize;
        let beta = self.beta();
        match self.iteration_bound(beta / 2.0, SigmaUnit::Fraction) {
            Ok(w) if w.is_finite() => log_term.max(w.ceil() as usize),
            _ => log_term,
        }
    }

    pub fn iterations(&self) -> usize {
        self.m
    }

    pub fn with_iterations(mut self, m: usize) -> Result<Self, ExpanderError> {
        if m == 0 {
            return Err(ExpanderError::ZeroIterations);
        }
        self.m = m;
        Ok(self)
    }

    /// Encodes `K = dim C` field elements into a word of `C`.
    pub fn encode_edges(&self, msg: &[Fe]) -> Result<Vec<Fe>, ExpanderError> {
        Ok(self.null.encode(&self.field, msg)?)
    }

    /// Message carried by a word of `C`.
    pub fn message_of(&self, c: &[Fe]) -> Vec<Fe> {
        self.null.extract(c)
    }

    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<PhiSymbol>, ExpanderError> {
        let c = self.encode_edges(msg)?;
        self.psi(&c)
    }

    /// Basis of `C`.
    pub fn generator(&self) -> Vec<Vec<Fe>> {
        self.null.basis(&self.field)
    }

    fn local(&self, c: &[Fe], side: Side, u: usize) -> Vec<Fe> {
        self.graph.incident(side, u).iter().map(|&e| c[e]).collect()
    }

    /// Checks all `2n` local constraints.
    pub fn contains(&self, c: &[Fe]) -> bool {
        c.len() == self.edge_length()
            && (0..self.n()).all(|u| {
                self.code_a.is_codeword(&self.local(c, Side::A, u))
                    && self.code_b.is_codeword(&self.local(c, Side::B, u))
            })
    }

    /// `ψ(c) = (E_A⁻¹(c_{E(u)}))_{u∈A}`.
    pub fn psi(&self, c: &[Fe]) -> Result<Vec<PhiSymbol>, ExpanderError> {
        if !self.contains(c) {
            return Err(ExpanderError::NotACodeword);
        }
        let k = self.symbol_width();
        Ok((0..self.n())
            .map(|u| self.graph.incident(Side::A, u)[..k].iter().map(|&e| c[e]).collect())
            .collect())
    }

    /// Lifts a Φ word to the edges: `E_A(y_u)` on `E(u)`, or all erased.
    pub fn psi_inv(&self, word: &PhiWord) -> Result<Vec<Option<Fe>>, ExpanderError> {
        if word.len() != self.n() {
            return Err(ExpanderError::WordLength {
                expected: self.n(),
                got: word.len(),
            });
        }
        let mut z = vec![None; self.edge_length()];
        for (u, sym) in word.0.iter().enumerate() {
            let Some(sym) = sym else { continue };
            if sym.len() != self.symbol_width() {
                return Err(ExpanderError::SymbolWidth {
                    expected: self.symbol_width(),
                    got: sym.len(),
                });
            }
            let cw = self.code_a.encode_systematic(sym)?;
            for (&e, v) in self.graph.incident(Side::A, u).iter().zip(cw) {
                z[e] = Some(v);
            }
        }
        Ok(z)
    }

    /// Iterative decoder with the configured iteration count.
    pub fn decode(
        &self,
        word: &PhiWord,
    ) -> Result<(Result<Vec<PhiSymbol>, DecodeFailure>, DecodeTrace), ExpanderError> {
        self.decode_with(word, self.m)
    }

    /// Runs `m` alternating rounds: odd rounds apply the errors-and-erasures
    /// decoder of `C_B` at every B vertex, even rounds the errors-only decoder
    /// of `C_A` at every A vertex. From the second round on, a round that
    /// changes nothing means both sides already see constituent codewords, so
    /// the remaining rounds are skipped.
    pub fn decode_with(
        &self,
        word: &PhiWord,
        m: usize,
    ) -> Result<(Result<Vec<PhiSymbol>, DecodeFailure>, DecodeTrace), ExpanderError> {
        if m == 0 {
            return Err(ExpanderError::ZeroIterations);
        }
        let mut z = self.psi_inv(word)?;
        let mut trace = DecodeTrace::default();
        let mut local = Vec::with_capacity(self.graph.degree());
        for i in 1..=m {
            trace.iterations_used = i;
            let side = if i % 2 == 0 { Side::A } else { Side::B };
            let mut changed = false;
            for u in 0..self.n() {
                let edges = self.graph.incident(side, u);
                local.clear();
                local.extend(edges.iter().map(|&e| z[e]));
                let out = match side {
                    Side::A => {
                        trace.decoder_calls_a += 1;
                        let w: Vec<Fe> = local.iter().map(|s| s.unwrap_or(Fe::ZERO)).collect();
                        self.code_a.decode_errors_total(&w)?
                    }
                    Side::B => {
                        trace.decoder_calls_b += 1;
                        self.code_b.decode_erasures_total(&local)?
                    }
                };
                if out.failure.is_some() {
                    trace.local_failures += 1;
                }
                for (&e, v) in edges.iter().zip(out.codeword) {
                    if z[e] != Some(v) {
                        z[e] = Some(v);
                        changed = true;
                    }
                }
            }
            if !changed && i >= 2 {
                break;
            }
        }
        let z: Option<Vec<Fe>> = z.into_iter().collect();
        let result = match z {
            Some(c) if self.contains(&c) => {
                trace.success = true;
                Ok(self.psi(&c)?)
            }
            _ => Err(DecodeFailure),
        };
        Ok((result, trace))
    }
}

/// Constituent code description for a preset; the length comes from the
/// graph degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentPreset {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval_points: Option<Vec<u16>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multipliers: Option<Vec<u16>>,
}

/// `{graph, ell, code_a, code_b, m?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderPreset {
    pub graph: GraphSpec,
    pub ell: u32,
    pub code_a: ConstituentPreset,
    pub code_b: ConstituentPreset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl ExpanderPreset {
    pub fn build(&self) -> Result<ExpanderCode, ExpanderError> {
        let graph = Arc::new(self.graph.build()?);
        let field = Arc::new(Field::new(self.ell)?);
        let side = |c: &ConstituentPreset| {
            GrsPreset {
                ell: self.ell,
                delta: graph.degree(),
                k: c.k,
                eval_points: c.eval_points.clone(),
                multipliers: c.multipliers.clone(),
            }
            .build_in(field.clone())
        };
        let code = ExpanderCode::new(graph.clone(), side(&self.code_a)?, side(&self.code_b)?)?;
        match self.m {
            Some(m) => code.with_iterations(m),
            None => Ok(code),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn instance(delta: usize, ell: u32, ka: usize, kb: usize) -> ExpanderCode {
        let f = Arc::new(Field::new(ell).unwrap());
        let g = Arc::new(BipartiteGraph::complete(delta).unwrap());
        ExpanderCode::new(
            g,
            GrsCode::new(f.clone(), delta, ka).unwrap(),
            GrsCode::new(f, delta, kb).unwrap(),
        )
        .unwrap()
    }

    fn random_msg(code: &ExpanderCode, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        let q = code.field().size();
        (0..code.dimension()).map(|_| Fe(rng.gen_range(0..q) as u16)).collect()
    }

    #[test]
    fn rank_meets_rate_bound() {
        let c = instance(7, 3, 5, 5);
        assert!((c.rate_lower_bound() - 3.0 / 7.0).abs() < 1e-12);
        // tensor-product structure on K_{7,7}: dim = 5·5
        assert_eq!(c.dimension(), 25);
        assert!(c.rate() >= c.rate_lower_bound());
    }

    #[test]
    fn full_constituents_give_full_space() {
        let c = instance(4, 2, 4, 4);
        assert_eq!(c.dimension(), 16);
        assert_eq!(c.rate(), 1.0);
    }

    #[test]
    fn gamma_zero_bounds() {
        let c = instance(7, 3, 3, 3);
        let d = 5.0 / 7.0;
        assert_eq!(c.spectral().gamma, 0.0);
        assert!((c.beta() - d / 2.0).abs() < 1e-15);
        assert!((c.distance_bound() - d).abs() < 1e-15);
    }

    #[test]
    fn basis_satisfies_local_constraints() {
        let f = Arc::new(Field::new(3).unwrap());
        let g = Arc::new(BipartiteGraph::random_regular(9, 7, 3).unwrap());
        let c = ExpanderCode::new(
            g,
            GrsCode::new(f.clone(), 7, 5).unwrap(),
            GrsCode::new(f, 7, 6).unwrap(),
        )
        .unwrap();
        assert!(c.rate() >= c.rate_lower_bound() - 1e-12);
        for b in c.generator() {
            assert!(c.contains(&b));
        }
    }

    #[test]
    fn psi_roundtrip_and_zero() {
        let c = instance(7, 3, 5, 5);
        let zero = c.encode(&vec![Fe::ZERO; c.dimension()]).unwrap();
        assert!(zero.iter().all(|s| s.iter().all(|v| v.is_zero())));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let cw = c.encode_edges(&random_msg(&c, &mut rng)).unwrap();
            let sym = c.psi(&cw).unwrap();
            let lifted: Vec<Fe> = c
                .psi_inv(&PhiWord::from_codeword(&sym))
                .unwrap()
                .into_iter()
                .map(Option::unwrap)
                .collect();
            assert_eq!(lifted, cw);
        }
    }

    #[test]
    fn one_erased_symbol_erases_degree_edges() {
        let c = instance(7, 3, 5, 5);
        let sym = c.encode(&vec![Fe::ONE; c.dimension()]).unwrap();
        let mut w = PhiWord::from_codeword(&sym);
        w.0[3] = None;
        let z = c.psi_inv(&w).unwrap();
        assert_eq!(z.iter().filter(|s| s.is_none()).count(), 7);
    }

    #[test]
    fn psi_rejects_non_codeword() {
        let c = instance(7, 3, 5, 5);
        let mut w = vec![Fe::ZERO; 49];
        w[0] = Fe::ONE;
        assert_eq!(c.psi(&w), Err(ExpanderError::NotACodeword));
    }

    #[test]
    fn clean_word_stops_after_two_rounds() {
        let c = instance(7, 3, 3, 3);
        let sym = c.encode(&vec![Fe(2); c.dimension()]).unwrap();
        let (out, trace) = c.decode(&PhiWord::from_codeword(&sym)).unwrap();
        assert_eq!(out.unwrap(), sym);
        assert_eq!(trace.iterations_used, 2);
        assert!(trace.success);
    }

    #[test]
    fn corrects_within_guarantee() {
        let c = instance(7, 3, 3, 3);
        let beta_n = c.beta() * c.n() as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let sym = c.encode(&random_msg(&c, &mut rng)).unwrap();
            let mut w = PhiWord::from_codeword(&sym);
            // μ + ρ/2 < βn = 2.5
            let (mu, rho) = [(2, 0), (1, 2), (0, 4), (1, 1)][rng.gen_range(0..4)];
            assert!((mu as f64) + (rho as f64) / 2.0 < beta_n);
            let mut pos: Vec<usize> = (0..7).collect();
            rand::seq::SliceRandom::shuffle(&mut pos[..], &mut rng);
            for &p in &pos[..mu] {
                let mut s = sym[p].clone();
                s[rng.gen_range(0..3)].0 ^= rng.gen_range(1..8);
                w.0[p] = Some(s);
            }
            for &p in &pos[mu..mu + rho] {
                w.0[p] = None;
            }
            let (out, trace) = c.decode(&w).unwrap();
            assert_eq!(out.unwrap(), sym);
            assert!(trace.decoder_calls() <= trace.iterations_used * c.n());
        }
    }

    #[test]
    fn heavy_corruption_never_yields_non_codeword() {
        let c = instance(4, 2, 2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let w = PhiWord(
                (0..4)
                    .map(|_| {
                        if rng.gen_bool(0.2) {
                            None
                        } else {
                            Some((0..2).map(|_| Fe(rng.gen_range(0..4))).collect())
                        }
                    })
                    .collect(),
            );
            let (out, trace) = c.decode(&w).unwrap();
            if let Ok(sym) = out {
                assert!(trace.success);
                let z: Vec<Fe> = c
                    .psi_inv(&PhiWord::from_codeword(&sym))
                    .unwrap()
                    .into_iter()
                    .map(Option::unwrap)
                    .collect();
                assert!(c.contains(&z));
            }
        }
    }

    #[test]
    fn measured_distance_meets_bound() {
        // K_{4,4} over GF(4), [4,2,3] constituents: |C| = 4^4
        let c = instance(4, 2, 2, 2);
        assert_eq!(c.dimension(), 4);
        let mut min = usize::MAX;
        for idx in 1..256usize {
            let msg: Vec<Fe> = (0..4).map(|i| Fe(((idx >> (2 * i)) & 3) as u16)).collect();
            let sym = c.encode(&msg).unwrap();
            min = min.min(sym.iter().filter(|s| s.iter().any(|v| !v.is_zero())).count());
        }
        let rel = min as f64 / c.n() as f64;
        assert!(rel >= c.distance_bound() - 1e-12, "{rel} < {}", c.distance_bound());
        assert!(c.beta() <= rel / 2.0 + 1e-12);
    }

    #[test]
    fn beta_nonincreasing_in_gamma() {
        for (da, db) in [(0.5, 0.5), (0.3, 0.6), (0.7, 0.2)] {
            let mut prev = f64::INFINITY;
            for i in 0..100 {
                let b = beta_bound(da, db, i as f64 / 101.0);
                assert!(b <= prev + 1e-15);
                prev = b;
            }
        }
    }

    #[test]
    fn omega_at_gamma_zero_and_near_zero() {
        let w0 = iteration_bound(7, 0.25, 0.125, SigmaUnit::Fraction, 0.0, 0.5, 0.5).unwrap();
        assert_eq!(w0, 2.0);
        let w = iteration_bound(7, 0.25, 0.125, SigmaUnit::Fraction, 1e-9, 0.5, 0.5).unwrap();
        // ln(7·0.25·√0.125/0.125) / ln(0.25/4e-18) ∈ (0, 1), ceiling 1
        assert!((w - 4.0).abs() < 1e-9, "{w}");
    }

    #[test]
    fn omega_count_unit_matches_fraction() {
        let a = iteration_bound(100, 0.2, 0.05, SigmaUnit::Fraction, 0.1, 0.5, 0.5).unwrap();
        let b = iteration_bound(100, 0.2, 5.0, SigmaUnit::Count { n: 100 }, 0.1, 0.5, 0.5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn omega_grows_logarithmically_in_degree() {
        let (da, db) = (0.5, 0.5);
        for d in [100usize, 1000, 10_000] {
            let g = 2.0 * ((d - 1) as f64).sqrt() / d as f64;
            let beta = beta_bound(da, db, g);
            let g2 = 2.0 * ((2 * d - 1) as f64).sqrt() / (2 * d) as f64;
            let beta2 = beta_bound(da, db, g2);
            let w1 = iteration_bound(d, beta, beta / 2.0, SigmaUnit::Fraction, g, da, db).unwrap();
            let w2 = iteration_bound(2 * d, beta2, beta2 / 2.0, SigmaUnit::Fraction, g2, da, db).unwrap();
            let slack = 2.0 * 2f64.ln() / (da * db / (4.0 * g2 * g2)).ln() + 2.0 + 0.1;
            assert!(w2 - w1 <= slack, "d={d}: {w1} -> {w2}");
        }
    }

    #[test]
    fn omega_bounded_over_ramanujan_grid() {
        // ω is nonincreasing along Δ = 10², ..., 10⁶ for each σ/β, so the
        // value at the smallest degree bounds the whole family
        let (da, db) = (0.5, 0.5);
        for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let mut prev = f64::INFINITY;
            let mut d = 100usize;
            while d <= 1_000_000 {
                let g = 2.0 * ((d - 1) as f64).sqrt() / d as f64;
                let beta = beta_bound(da, db, g);
                let w = iteration_bound(d, beta, frac * beta, SigmaUnit::Fraction, g, da, db).unwrap();
                assert!(w <= prev + 1e-9, "d={d} frac={frac}: {w} > {prev}");
                assert!(w < 30.0);
                prev = w;
                d *= 10;
            }
            // large-Δ limit: 2⌈→1⌉ + 2
            assert!((prev - 6.0).abs() < 1e-6);
        }
    }

    #[test]
    fn omega_domain_errors() {
        assert!(iteration_bound(7, 0.2, 0.3, SigmaUnit::Fraction, 0.0, 0.5, 0.5).is_err());
        assert!(iteration_bound(7, 0.2, 0.1, SigmaUnit::Fraction, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn select_params_examples() {
        assert_eq!(select_params(0.5).unwrap().delta_min, 1025);
        assert_eq!(select_params(0.1).unwrap().delta_min, 25601);
        let p = select_params(0.25).unwrap();
        assert!(p.delta_min as f64 > (16.0f64 / 0.25).powi(2));
        assert!(p.beta_at_ramanujan() > p.epsilon / 8.0);
        assert!(select_params(0.05).is_err());
        assert_eq!(select_params(0.5).unwrap().ell, 11);
    }

    #[test]
    fn gamma_zero_beta_is_quarter_epsilon() {
        for eps in [0.9, 0.5, 0.25, 0.1] {
            let b = beta_bound(eps / 2.0, eps / 2.0, 0.0);
            assert_eq!(b, eps / 4.0);
            assert!(b > eps / 8.0);
        }
    }

    #[test]
    fn preset_builds() {
        let json = r#"{"graph":{"kind":"complete","degree":7},"ell":3,"code_a":{"k":3},"code_b":{"k":3},"m":5}"#;
        let p: ExpanderPreset = serde_json::from_str(json).unwrap();
        let c = p.build().unwrap();
        assert_eq!(c.iterations(), 5);
        assert_eq!(c.n(), 7);
    }
}
