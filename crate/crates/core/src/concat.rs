//! Concatenation of a binary inner code with an outer code over `Φ`, and the
//! parameter selection used to show a positive error exponent.

use std::f64::consts::E;
use std::fmt::Debug;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, Fe, Field, GrsCode};
use crate::bz_baseline::{BzError, RandomCodebook};
use crate::expander::{ExpanderCode, ExpanderError, PhiSymbol, PhiWord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConcatError {
    #[error("inner code carries {inner} bits but an outer symbol has {outer}")]
    SymbolBits { inner: usize, outer: usize },
    #[error("word has {got} bits, expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("invalid inner code parameters: {0}")]
    InnerParams(&'static str),
    #[error("invalid outer code parameters: {0}")]
    OuterParams(&'static str),
    #[error("invalid parameter: {0}")]
    Domain(&'static str),
    #[error("no available alphabet has log2|Φ| ≥ {required}")]
    NoAlphabet { required: f64 },
    #[error(transparent)]
    Expander(#[from] ExpanderError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Codebook(#[from] BzError),
}

type Result<T> = std::result::Result<T, ConcatError>;

/// The concatenated decoder declared an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("outer decoder declared an error")]
pub struct DecodeFailure;

/// Binary inner code mapping `k_in` information bits to `n_in` bits.
pub trait InnerCode: Debug + Send + Sync {
    fn n_in(&self) -> usize;
    fn k_in(&self) -> usize;
    fn rate(&self) -> f64 {
        self.k_in() as f64 / self.n_in() as f64
    }
    fn encode(&self, info: &[bool]) -> Vec<bool>;
    /// Returns `k_in` information bits. `rng` drives randomized decoders.
    fn decode(&self, block: &[bool], rng: &mut dyn RngCore) -> Vec<bool>;
    /// Known per-block failure probability, if the code is a failure model.
    fn profile(&self) -> Option<f64> {
        None
    }
}

/// Random binary linear code with exhaustive maximum-likelihood decoding.
#[derive(Debug, Clone)]
pub struct RandomLinearInner {
    book: RandomCodebook,
}

impl RandomLinearInner {
    pub fn new(n_in: usize, k_in: usize, seed: u64) -> Result<Self> {
        Ok(RandomLinearInner {
            book: RandomCodebook::new(n_in, k_in, seed)?,
        })
    }

    pub fn codebook(&self) -> &RandomCodebook {
        &self.book
    }
}

impl InnerCode for RandomLinearInner {
    fn n_in(&self) -> usize {
        self.book.length()
    }

    fn k_in(&self) -> usize {
        self.book.dimension()
    }

    fn encode(&self, info: &[bool]) -> Vec<bool> {
        self.book.encode(info)
    }

    fn decode(&self, block: &[bool], _rng: &mut dyn RngCore) -> Vec<bool> {
        let idx = self.book.ml_index(block);
        (0..self.book.dimension()).map(|b| idx >> b & 1 == 1).collect()
    }
}

/// Identity "code" whose decoder fails independently with probability π,
/// returning a uniformly chosen wrong symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileInner {
    bits: usize,
    pi: f64,
}

impl ProfileInner {
    pub fn new(bits: usize, pi: f64) -> Result<Self> {
        if bits == 0 {
            return Err(ConcatError::InnerParams("symbol width must be positive"));
        }
        if !(0.0..=1.0).contains(&pi) {
            return Err(ConcatError::InnerParams("π must be in [0, 1]"));
        }
        Ok(ProfileInner { bits, pi })
    }

    pub fn pi(&self) -> f64 {
        self.pi
    }
}

impl InnerCode for ProfileInner {
    fn n_in(&self) -> usize {
        self.bits
    }

    fn k_in(&self) -> usize {
        self.bits
    }

    fn encode(&self, info: &[bool]) -> Vec<bool> {
        info.to_vec()
    }

    fn decode(&self, block: &[bool], rng: &mut dyn RngCore) -> Vec<bool> {
        if !rng.gen_bool(self.pi) {
            return block.to_vec();
        }
        loop {
            let flip: Vec<bool> = (0..self.bits).map(|_| rng.gen_bool(0.5)).collect();
            if flip.iter().any(|&b| b) {
                return block.iter().zip(flip).map(|(&a, b)| a ^ b).collect();
            }
        }
    }

    fn profile(&self) -> Option<f64> {
        Some(self.pi)
    }
}

/// Outer code over `Φ = F^w`.
pub trait OuterCode: Debug + Send + Sync {
    fn field(&self) -> &Arc<Field>;
    fn n(&self) -> usize;
    /// Field elements per symbol.
    fn symbol_width(&self) -> usize;
    /// Field elements per message.
    fn message_len(&self) -> usize;
    /// Fraction of symbol errors below which decoding always succeeds.
    fn beta(&self) -> f64;
    fn encode(&self, msg: &[Fe]) -> Result<Vec<PhiSymbol>>;
    fn decode(&self, word: &PhiWord) -> Result<Option<Vec<PhiSymbol>>>;

    fn symbol_bits(&self) -> usize {
        self.symbol_width() * self.field().ell() as usize
    }

    /// `R_Φ = log|C_Φ| / (n log|Φ|)`.
    fn rate(&self) -> f64 {
        self.message_len() as f64 / (self.n() * self.symbol_width()) as f64
    }
}

impl OuterCode for ExpanderCode {
    fn field(&self) -> &Arc<Field> {
        ExpanderCode::field(self)
    }

    fn n(&self) -> usize {
        ExpanderCode::n(self)
    }

    fn symbol_width(&self) -> usize {
        ExpanderCode::symbol_width(self)
    }

    fn message_len(&self) -> usize {
        self.dimension()
    }

    fn beta(&self) -> f64 {
        ExpanderCode::beta(self)
    }

    fn encode(&self, msg: &[Fe]) -> Result<Vec<PhiSymbol>> {
        Ok(ExpanderCode::encode(self, msg)?)
    }

    fn decode(&self, word: &PhiWord) -> Result<Option<Vec<PhiSymbol>>> {
        Ok(ExpanderCode::decode(self, word)?.0.ok())
    }
}

/// GRS code used as an outer code with bounded-distance decoding: a decode
/// is accepted only when `2·errors + erasures ≤ 2t`.
#[derive(Debug, Clone)]
pub struct GrsOuter {
    code: GrsCode,
    radius: usize,
}

impl GrsOuter {
    pub fn new(code: GrsCode, radius: usize) -> Result<Self> {
        if 2 * radius >= code.distance() {
            return Err(ConcatError::OuterParams("radius must satisfy 2t < d"));
        }
        Ok(GrsOuter { code, radius })
    }

    /// Length-`n` code over GF(2^ℓ) correcting every pattern of fewer than
    /// `βn` errors: `t = ⌈βn⌉ - 1`, `k = n - 2t`.
    pub fn for_beta(ell: u32, n: usize, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta < 0.5) {
            return Err(ConcatError::OuterParams("β must be in (0, 1/2)"));
        }
        let x = beta * n as f64;
        let nearest = x.round();
        let ceil = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
            nearest
        } else {
            x.ceil()
        };
        let t = ceil.max(1.0) as usize - 1;
        if 2 * t >= n {
            return Err(ConcatError::OuterParams("β too large for this length"));
        }
        let field = Arc::new(Field::new(ell)?);
        GrsOuter::new(GrsCode::new(field, n, n - 2 * t)?, t)
    }

    pub fn code(&self) -> &GrsCode {
        &self.code
    }

    pub fn radius(&self) -> usize {
        self.radius
    }
}

impl OuterCode for GrsOuter {
    fn field(&self) -> &Arc<Field> {
        self.code.field()
    }

    fn n(&self) -> usize {
        self.code.length()
    }

    fn symbol_width(&self) -> usize {
        1
    }

    fn message_len(&self) -> usize {
        self.code.dimension()
    }

    fn beta(&self) -> f64 {
        (self.radius + 1) as f64 / self.code.length() as f64
    }

    fn encode(&self, msg: &[Fe]) -> Result<Vec<PhiSymbol>> {
        Ok(self.code.encode_systematic(msg)?.into_iter().map(|v| vec![v]).collect())
    }

    fn decode(&self, word: &PhiWord) -> Result<Option<Vec<PhiSymbol>>> {
        if word.len() != self.n() {
            return Err(ConcatError::WordLength {
                expected: self.n(),
                got: word.len(),
            });
        }
        let w: Vec<Option<Fe>> = word.0.iter().map(|s| s.as_ref().map(|s| s[0])).collect();
        let Ok(cw) = self.code.decode_errors_erasures(&w)? else {
            return Ok(None);
        };
        let errors = w
            .iter()
            .zip(&cw)
            .filter(|(r, c)| matches!(r, Some(v) if v != *c))
            .count();
        let erasures = word.erasures();
        Ok((2 * errors + erasures <= 2 * self.radius).then(|| cw.into_iter().map(|v| vec![v]).collect()))
    }
}

/// Bits of a symbol: bit `b` of element `j` is at index `j·ℓ + b`.
pub fn symbol_to_bits(sym: &[Fe], ell: u32) -> Vec<bool> {
    sym.iter()
        .flat_map(|v| (0..ell).map(move |b| v.value() >> b & 1 == 1))
        .collect()
}

pub fn bits_to_symbol(bits: &[bool], ell: u32) -> PhiSymbol {
    bits.chunks(ell as usize)
        .map(|c| Fe(c.iter().enumerate().map(|(b, &x)| (x as u16) << b).sum()))
        .collect()
}

/// `C_cont`: outer codeword symbols mapped blockwise through the inner code.
#[derive(Debug, Clone)]
pub struct ConcatCode {
    inner: Arc<dyn InnerCode>,
    outer: Arc<dyn OuterCode>,
}

impl ConcatCode {
    pub fn new(inner: Arc<dyn InnerCode>, outer: Arc<dyn OuterCode>) -> Result<Self> {
        if inner.k_in() != outer.symbol_bits() {
            return Err(ConcatError::SymbolBits {
                inner: inner.k_in(),
                outer: outer.symbol_bits(),
            });
        }
        Ok(ConcatCode { inner, outer })
    }

    pub fn inner(&self) -> &dyn InnerCode {
        self.inner.as_ref()
    }

    pub fn outer(&self) -> &dyn OuterCode {
        self.outer.as_ref()
    }

    /// `N_cont = n · n_in`.
    pub fn length(&self) -> usize {
        self.outer.n() * self.inner.n_in()
    }

    /// `R_cont = R_in · R_Φ`.
    pub fn rate(&self) -> f64 {
        self.inner.rate() * self.outer.rate()
    }

    pub fn message_len(&self) -> usize {
        self.outer.message_len()
    }

    fn ell(&self) -> u32 {
        self.outer.field().ell()
    }

    /// Applies the inner encoder to each outer symbol.
    pub fn expand(&self, symbols: &[PhiSymbol]) -> Vec<bool> {
        symbols
            .iter()
            .flat_map(|s| self.inner.encode(&symbol_to_bits(s, self.ell())))
            .collect()
    }

    pub fn encode(&self, msg: &[Fe]) -> Result<Vec<bool>> {
        if msg.len() != self.message_len() {
            return Err(ConcatError::MessageLength {
                expected: self.message_len(),
                got: msg.len(),
            });
        }
        Ok(self.expand(&self.outer.encode(msg)?))
    }

    /// Inner decodes of every block, as a received outer word.
    pub fn inner_decode(&self, word: &[bool], rng: &mut dyn RngCore) -> Result<PhiWord> {
        if word.len() != self.length() {
            return Err(ConcatError::WordLength {
                expected: self.length(),
                got: word.len(),
            });
        }
        Ok(PhiWord(
            word.chunks(self.inner.n_in())
                .map(|b| Some(bits_to_symbol(&self.inner.decode(b, rng), self.ell())))
                .collect(),
        ))
    }

    /// Inner decodes, one outer decode, then re-expansion to a binary codeword.
    pub fn decode(
        &self,
        word: &[bool],
        rng: &mut dyn RngCore,
    ) -> Result<std::result::Result<Vec<bool>, DecodeFailure>> {
        let y = self.inner_decode(word, rng)?;
        Ok(match self.outer.decode(&y)? {
            Some(symbols) => Ok(self.expand(&symbols)),
            None => Err(DecodeFailure),
        })
    }
}

/// Largest κ ∈ (0, 1) with `κ^b ≤ ϑ(1-κ)^b / e`. The left side minus the
/// right is increasing in κ, so bisection brackets the boundary; the lower
/// end of the final bracket is returned so the inequality holds.
pub fn kappa_select(b: f64, theta: f64) -> Result<f64> {
    if !(b > 0.0 && theta > 0.0) {
        return Err(ConcatError::Domain("kappa_select needs b > 0 and ϑ > 0"));
    }
    let g = |k: f64| crate::analysis::kappa_constraint(k, b, theta);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `1 / (κε)^{h0}`.
pub fn alphabet_threshold(eps: f64, kappa: f64, h0: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 1.0 && kappa > 0.0 && kappa <= 1.0 && h0 > 0.0) {
        return Err(ConcatError::Domain("alphabet_threshold needs 0 < ε, κ ≤ 1 and h0 > 0"));
    }
    Ok((kappa * eps).powf(-h0))
}

/// Smallest available `log₂|Φ|` at least `1/(κε)^{h0}`.
pub fn select_alphabet(eps: f64, kappa: f64, h0: f64, available: &[f64]) -> Result<f64> {
    let required = alphabet_threshold(eps, kappa, h0)?;
    available
        .iter()
        .copied()
        .find(|&v| v >= required)
        .ok_or(ConcatError::NoAlphabet { required })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Input {
    pub eps: f64,
    pub b: f64,
    pub theta: f64,
    pub h0: f64,
    pub capacity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub kappa: f64,
    pub log2_phi: f64,
    pub r_in: f64,
    pub n_in: f64,
    /// `ϑ((1-κ)ε)^b`, the correctable fraction guaranteed for the outer code.
    pub beta: f64,
    /// Inner error probability at length `1/(κε)^{h0}`.
    pub prob_threshold: f64,
    /// Inner error probability at the selected `n_in`.
    pub prob_in: f64,
    /// `prob_threshold < (κε)^b`.
    pub condition_ii: bool,
    /// `(κε)^b ≤ ϑ((1-κ)ε)^b / e`.
    pub kappa_bound: bool,
    /// `β > e · prob_in`.
    pub beta_required: bool,
    pub condition_holds: bool,
    pub failing: Option<String>,
}

/// Walks the positive-exponent argument for one ε: chooses κ, the alphabet
/// and `n_in = log₂|Φ| / ((1-κε)C)`, then checks each inequality.
/// `prob_fn(gap, n_in)` bounds the inner error probability at rate `(1-gap)C`.
/// With `available = None` the alphabet sequence is taken to be dense enough
/// that `log₂|Φ|` equals the threshold.
pub fn theorem1_check(
    input: &Theorem1Input,
    prob_fn: &dyn Fn(f64, f64) -> f64,
    available: Option<&[f64]>,
) -> Result<Theorem1Report> {
    let Theorem1Input {
        eps,
        b,
        theta,
        h0,
        capacity,
    } = *input;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ConcatError::Domain("ε must be in (0, 1)"));
    }
    if !(capacity > 0.0 && capacity <= 1.0) {
        return Err(ConcatError::Domain("capacity must be in (0, 1]"));
    }
    let kappa = kappa_select(b, theta)?;
    let gap = kappa * eps;
    let threshold = alphabet_threshold(eps, kappa, h0)?;
    let log2_phi = match available {
        Some(seq) => select_alphabet(eps, kappa, h0, seq)?,
        None => threshold,
    };
    let r_in = (1.0 - gap) * capacity;
    let n_in = log2_phi / r_in;
    let beta = theta * ((1.0 - kappa) * eps).powf(b);
    let prob_threshold = prob_fn(gap, threshold);
    let prob_in = prob_fn(gap, n_in);
    let condition_ii = prob_threshold < gap.powf(b);
    let kappa_bound = gap.powf(b) <= beta / E;
    let beta_required = beta > E * prob_in;
    let failing = if !condition_ii {
        Some(format!(
            "Prob(n_in = {threshold:e}) = {prob_threshold:e} ≥ (κε)^b = {:e}",
            gap.powf(b)
        ))
    } else if !kappa_bound {
        Some(format!("(κε)^b = {:e} > ϑ((1-κ)ε)^b/e = {:e}", gap.powf(b), beta / E))
    } else if !beta_required {
        Some(format!("β = {beta:e} ≤ e·Prob = {:e}", E * prob_in))
    } else {
        None
    };
    Ok(Theorem1Report {
        kappa,
        log2_phi,
        r_in,
        n_in,
        beta,
        prob_threshold,
        prob_in,
        condition_ii,
        kappa_bound,
        beta_required,
        condition_holds: failing.is_none(),
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BipartiteGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn desk_outer() -> Arc<ExpanderCode> {
        let f = Arc::new(Field::new(3).unwrap());
        let g = Arc::new(BipartiteGraph::complete(7).unwrap());
        Arc::new(
            ExpanderCode::new(
                g,
                GrsCode::new(f.clone(), 7, 3).unwrap(),
                GrsCode::new(f, 7, 3).unwrap(),
            )
            .unwrap(),
        )
    }

    fn random_msg(len: usize, q: usize, rng: &mut ChaCha8Rng) -> Vec<Fe> {
        (0..len).map(|_| Fe(rng.gen_range(0..q) as u16)).collect()
    }

    #[test]
    fn bit_packing_roundtrip() {
        let sym = vec![Fe(5), Fe(0), Fe(6)];
        let bits = symbol_to_bits(&sym, 3);
        assert_eq!(bits, vec![true, false, true, false, false, false, false, true, true]);
        assert_eq!(bits_to_symbol(&bits, 3), sym);
    }

    #[test]
    fn lengths_and_rates() {
        let outer = desk_outer();
        let inner = Arc::new(RandomLinearInner::new(14, 9, 1).unwrap());
        let c = ConcatCode::new(inner, outer.clone()).unwrap();
        assert_eq!(c.length(), 7 * 14);
        let r_phi = outer.dimension() as f64 / (7.0 * 3.0);
        assert!((c.rate() - 9.0 / 14.0 * r_phi).abs() < 1e-15);
        let bad = Arc::new(RandomLinearInner::new(14, 8, 1).unwrap());
        assert!(ConcatCode::new(bad, outer).is_err());
    }

    #[test]
    fn zero_message_gives_zero_word_and_roundtrips() {
        let outer = desk_outer();
        let inner = Arc::new(RandomLinearInner::new(14, 9, 2).unwrap());
        let c = ConcatCode::new(inner, outer).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert!(c.encode(&vec![Fe(0); c.message_len()]).unwrap().iter().all(|&b| !b));
        for _ in 0..100 {
            let m = random_msg(c.message_len(), 8, &mut rng);
            let w = c.encode(&m).unwrap();
            assert_eq!(c.decode(&w, &mut rng).unwrap(), Ok(w));
        }
    }

    #[test]
    fn garbled_blocks_below_beta_are_corrected() {
        let outer = desk_outer();
        // βn = 2.5 on this instance, so up to two garbled blocks are fine
        assert!((outer.beta() * 7.0 - 2.5).abs() < 1e-9);
        let inner = Arc::new(ProfileInner::new(9, 0.0).unwrap());
        let c = ConcatCode::new(inner, outer).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for trial in 0..200 {
            let m = random_msg(c.message_len(), 8, &mut rng);
            let w = c.encode(&m).unwrap();
            let mut r = w.clone();
            for blk in [trial % 7, (trial + 3) % 7] {
                for b in &mut r[blk * 9..(blk + 1) * 9] {
                    *b = rng.gen_bool(0.5);
                }
            }
            assert_eq!(c.decode(&r, &mut rng).unwrap(), Ok(w));
        }
    }

    #[test]
    fn profile_pi_one_fails() {
        let inner = Arc::new(ProfileInner::new(9, 1.0).unwrap());
        let c = ConcatCode::new(inner, desk_outer()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = c.encode(&random_msg(c.message_len(), 8, &mut rng)).unwrap();
        assert_ne!(c.decode(&w, &mut rng).unwrap(), Ok(w));
    }

    #[test]
    fn profile_failure_rate() {
        for pi in [0.3, 0.05, 0.01] {
            let p = ProfileInner::new(4, pi).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let block = vec![true, false, true, true];
            let n = 1_000_000;
            let fails = (0..n).filter(|_| p.decode(&block, &mut rng) != block).count() as f64;
            let sd = (n as f64 * pi * (1.0 - pi)).sqrt();
            assert!((fails - pi * n as f64).abs() < 3.0 * sd, "π={pi}: {fails}");
        }
    }

    #[test]
    fn grs_outer_radius() {
        let o = GrsOuter::for_beta(5, 32, 0.1).unwrap();
        assert_eq!(o.radius(), 3);
        assert_eq!(GrsOuter::for_beta(4, 16, 0.1).unwrap().radius(), 1);
        assert_eq!(GrsOuter::for_beta(3, 8, 0.1).unwrap().radius(), 0);
        assert_eq!(GrsOuter::for_beta(4, 10, 0.1).unwrap().radius(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = random_msg(o.message_len(), 32, &mut rng);
        let cw = OuterCode::encode(&o, &m).unwrap();
        let mut w = PhiWord::from_codeword(&cw);
        for i in 0..3 {
            w.0[i * 5] = Some(vec![o.field().add(cw[i * 5][0], Fe(1))]);
        }
        assert_eq!(OuterCode::decode(&o, &w).unwrap(), Some(cw.clone()));
        w.0[20] = Some(vec![o.field().add(cw[20][0], Fe(1))]);
        assert_ne!(OuterCode::decode(&o, &w).unwrap(), Some(cw));
    }

    #[test]
    fn kappa_examples() {
        let k = kappa_select(1.0, E).unwrap();
        assert!((k - 0.5).abs() < 1e-12);
        let k = kappa_select(1.0, 0.125).unwrap();
        assert!((k - 1.0 / (1.0 + 8.0 * E)).abs() < 1e-12);
        assert!((k - 0.04397).abs() < 1e-5);
        for b in [0.5, 1.0, 2.0, 3.0] {
            let k = kappa_select(b, 0.125).unwrap();
            let c = crate::analysis::kappa_constraint(k, b, 0.125);
            assert!(c <= 0.0 && c > -1e-10);
        }
    }

    #[test]
    fn alphabet_thresholds() {
        assert_eq!(select_alphabet(1.0, 1.0, 7.0, &[0.5, 1.0, 2.0]).unwrap(), 1.0);
        assert!((alphabet_threshold(0.5, 0.5, 2.0).unwrap() - 16.0).abs() < 1e-12);
        assert!((alphabet_threshold(0.1, 0.2, 3.0).unwrap() - 125_000.0).abs() < 1e-6);
        assert_eq!(select_alphabet(0.5, 0.5, 2.0, &[8.0, 15.0, 16.0, 32.0]).unwrap(), 16.0);
        assert!(matches!(
            select_alphabet(0.5, 0.5, 2.0, &[8.0]),
            Err(ConcatError::NoAlphabet { .. })
        ));
    }

    #[test]
    fn theorem1_examples() {
        let input = |h0| Theorem1Input {
            eps: 0.01,
            b: 1.0,
            theta: 0.125,
            h0,
            capacity: 0.5,
        };
        let poly = |gap: f64, n: f64| 1.0 / (n * gap.powi(4));
        let r = theorem1_check(&input(6.0), &poly, None).unwrap();
        assert!(r.condition_ii && r.condition_holds, "{r:?}");
        let expo = |gap: f64, n: f64| (-n * gap * gap).exp();
        let r = theorem1_check(&input(3.0), &expo, None).unwrap();
        assert!(r.condition_holds, "{r:?}");
        let one = |_: f64, _: f64| 1.0;
        for eps in [0.5, 0.1, 0.01] {
            let r = theorem1_check(&Theorem1Input { eps, ..input(3.0) }, &one, None).unwrap();
            assert!(!r.condition_ii && !r.condition_holds && r.failing.is_some());
        }
    }
}
