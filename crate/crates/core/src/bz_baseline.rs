//! Baseline expander code with random binary constituent codes and
//! exhaustive maximum-likelihood local decoding, whose cost grows
//! exponentially in the degree.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{Matrix, NullSpace};
use crate::algebra::{AlgebraError, Fe, Field};
use crate::graph::{BipartiteGraph, GraphError, Side};
use crate::ops;

/// Largest dimension for which the codebook is enumerated.
pub const MAX_ENUM_DIMENSION: usize = 20;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BzError {
    #[error("dimension {k} invalid for length {n}")]
    Dimension { k: usize, n: usize },
    #[error("length {0} exceeds 64 bits")]
    LengthTooLarge(usize),
    #[error("dimension {0} exceeds the enumeration bound")]
    DimensionTooLarge(usize),
    #[error("constituent length {code} does not match graph degree {degree}")]
    LengthMismatch { code: usize, degree: usize },
    #[error("word has {got} bits, expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, BzError>;

fn to_mask(bits: &[bool]) -> u64 {
    bits.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
}

fn from_mask(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

fn gf2_rank(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Random full-rank binary `[n, k]` code with all `2^k` codewords listed.
/// Codeword `i` encodes the information bits of `i`, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomCodebook {
    n: usize,
    k: usize,
    seed: u64,
    rows: Vec<u64>,
    words: Vec<u64>,
}

impl RandomCodebook {
    /// Draws generator rows from the seed, resampling until they are
    /// independent.
    pub fn new(n: usize, k: usize, seed: u64) -> Result<Self> {
        if n > 64 {
            return Err(BzError::LengthTooLarge(n));
        }
        if k == 0 || k > n {
            return Err(BzError::Dimension { k, n });
        }
        if k > MAX_ENUM_DIMENSION {
            return Err(BzError::DimensionTooLarge(k));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let rows = loop {
            let rows: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & full).collect();
            if gf2_rank(&rows) == k {
                break rows;
            }
        };
        let mut words = vec![0u64; 1 << k];
        for i in 1..words.len() {
            let low = i.trailing_zeros() as usize;
            words[i] = words[i & (i - 1)] ^ rows[low];
        }
        Ok(RandomCodebook {
            n,
            k,
            seed,
            rows,
            words,
        })
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Generator rows as bit masks, bit `j` being coordinate `j`.
    pub fn generator(&self) -> &[u64] {
        &self.rows
    }

    pub fn codewords(&self) -> &[u64] {
        &self.words
    }

    pub fn encode(&self, info: &[bool]) -> Vec<bool> {
        from_mask(self.words[to_mask(&info[..self.k]) as usize], self.n)
    }

    pub fn contains(&self, word: &[bool]) -> bool {
        self.words.contains(&to_mask(word))
    }

    /// Index of the nearest codeword in Hamming distance, lowest index on
    /// ties. Charges `2^k · n` operations.
    pub fn ml_index(&self, word: &[bool]) -> usize {
        ops::add((self.words.len() * self.n) as u64);
        let w = to_mask(word);
        let mut best = (u32::MAX, 0);
        for (i, &c) in self.words.iter().enumerate() {
            let d = (c ^ w).count_ones();
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }

    pub fn ml_decode(&self, word: &[bool]) -> Vec<bool> {
        from_mask(self.words[self.ml_index(word)], self.n)
    }

    /// Parity-check rows over GF(2), one per basis vector of the dual.
    pub fn parity_check(&self, field: &Field) -> Vec<Vec<Fe>> {
        let g = Matrix::from_rows(
            self.rows
                .iter()
                .map(|&r| (0..self.n).map(|j| Fe((r >> j & 1) as u16)).collect())
                .collect(),
        )
        .expect("rows have equal length");
        NullSpace::of(field, &g).basis(field)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bz2Trace {
    pub iterations_used: usize,
    pub ml_calls: usize,
    pub success: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("decoder output is not a codeword")]
pub struct Bz2Failure;

/// Binary code on the edges of a bipartite graph whose local views are
/// codewords of `code_a` (A side) and `code_b` (B side).
#[derive(Debug, Clone)]
pub struct Bz2Code {
    graph: Arc<BipartiteGraph>,
    code_a: RandomCodebook,
    code_b: RandomCodebook,
    null: NullSpace,
    m: usize,
}

impl Bz2Code {
    pub fn new(graph: Arc<BipartiteGraph>, code_a: RandomCodebook, code_b: RandomCodebook) -> Result<Self> {
        let degree = graph.degree();
        for c in [&code_a, &code_b] {
            if c.length() != degree {
                return Err(BzError::LengthMismatch {
                    code: c.length(),
                    degree,
                });
            }
        }
        let f = Field::new(1)?;
        let ha = code_a.parity_check(&f);
        let hb = code_b.parity_check(&f);
        let n = graph.n();
        let mut h = Matrix::zeros(n * (ha.len() + hb.len()), graph.num_edges());
        let mut r = 0;
        for (side, local) in [(Side::A, &ha), (Side::B, &hb)] {
            for u in 0..n {
                let edges = graph.incident(side, u);
                for row in local {
                    for (j, &e) in edges.iter().enumerate() {
                        h.set(r, e, row[j]);
                    }
                    r += 1;
                }
            }
        }
        let null = NullSpace::of(&f, &h);
        let m = default_iterations(n);
        Ok(Bz2Code {
            graph,
            code_a,
            code_b,
            null,
            m,
        })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_length(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn dimension(&self) -> usize {
        self.null.dimension()
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.edge_length() as f64
    }

    pub fn iterations(&self) -> usize {
        self.m
    }

    pub fn with_iterations(mut self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(BzError::ZeroIterations);
        }
        self.m = m;
        Ok(self)
    }

    pub fn encode(&self, msg: &[bool]) -> Result<Vec<bool>> {
        if msg.len() != self.dimension() {
            return Err(BzError::WordLength {
                expected: self.dimension(),
                got: msg.len(),
            });
        }
        let f = Field::new(1)?;
        let m: Vec<Fe> = msg.iter().map(|&b| Fe(b as u16)).collect();
        Ok(self.null.encode(&f, &m)?.into_iter().map(|v| v.value() == 1).collect())
    }

    fn local(&self, z: &[bool], side: Side, u: usize) -> Vec<bool> {
        self.graph.incident(side, u).iter().map(|&e| z[e]).collect()
    }

    pub fn contains(&self, z: &[bool]) -> bool {
        z.len() == self.edge_length()
            && (0..self.n()).all(|u| {
                self.code_a.contains(&self.local(z, Side::A, u)) && self.code_b.contains(&self.local(z, Side::B, u))
            })
    }

    pub fn decode(&self, word: &[bool]) -> Result<(std::result::Result<Vec<bool>, Bz2Failure>, Bz2Trace)> {
        self.decode_with(word, self.m)
    }

    /// `m` rounds of ML decoding at every vertex of one side: odd rounds on
    /// A, even rounds on B, followed by a membership check.
    pub fn decode_with(
        &self,
        word: &[bool],
        m: usize,
    ) -> Result<(std::result::Result<Vec<bool>, Bz2Failure>, Bz2Trace)> {
        if m == 0 {
            return Err(BzError::ZeroIterations);
        }
        if word.len() != self.edge_length() {
            return Err(BzError::WordLength {
                expected: self.edge_length(),
                got: word.len(),
            });
        }
        let mut z = word.to_vec();
        let mut trace = Bz2Trace::default();
        for i in 1..=m {
            trace.iterations_used = i;
            let (side, code) = if i % 2 == 1 {
                (Side::A, &self.code_a)
            } else {
                (Side::B, &self.code_b)
            };
            let mut changed = false;
            for u in 0..self.n() {
                let c = code.ml_decode(&self.local(&z, side, u));
                trace.ml_calls += 1;
                for (&e, v) in self.graph.incident(side, u).iter().zip(c) {
                    changed |= z[e] != v;
                    z[e] = v;
                }
            }
            // after round two, an unchanged round means both sides hold codewords
            if !changed && i >= 2 {
                break;
            }
        }
        if self.contains(&z) {
            trace.success = true;
            Ok((Ok(z), trace))
        } else {
            Ok((Err(Bz2Failure), trace))
        }
    }
}

/// `4⌈log₂ n⌉`, at least 2.
pub fn default_iterations(n: usize) -> usize {
    (4 * (n.max(1) as f64).log2().ceil() as usize).max(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scan_nearest(book: &RandomCodebook, w: u64) -> usize {
        // independent enumeration: rebuild each codeword from the generator
        let mut best = (u32::MAX, 0);
        for i in 0..1usize << book.dimension() {
            let mut c = 0u64;
            for (b, &row) in book.generator().iter().enumerate() {
                if i >> b & 1 == 1 {
                    c ^= row;
                }
            }
            let d = (c ^ w).count_ones();
            if d < best.0 {
                best = (d, i);
            }
        }
        best.1
    }

    #[test]
    fn codebook_is_full_rank_and_complete() {
        let b = RandomCodebook::new(12, 7, 3).unwrap();
        assert_eq!(gf2_rank(b.generator()), 7);
        assert_eq!(b.codewords().len(), 128);
        let mut sorted = b.codewords().to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 128);
        assert!(RandomCodebook::new(30, 21, 0).is_err());
        assert!(RandomCodebook::new(65, 3, 0).is_err());
    }

    #[test]
    fn ml_matches_scan_exhaustively() {
        let b = RandomCodebook::new(8, 4, 7).unwrap();
        for w in 0..256u64 {
            assert_eq!(b.ml_index(&from_mask(w, 8)), scan_nearest(&b, w));
        }
        for i in 0..16 {
            let c = from_mask(b.codewords()[i], 8);
            assert_eq!(b.ml_decode(&c), c);
        }
    }

    #[test]
    fn ml_op_count_is_exact() {
        let b = RandomCodebook::new(10, 5, 1).unwrap();
        let (_, ops) = ops::measure(|| b.ml_index(&[false; 10]));
        assert_eq!(ops, 32 * 10);
    }

    #[test]
    fn parity_check_annihilates_codebook() {
        let f = Field::new(1).unwrap();
        let b = RandomCodebook::new(10, 4, 9).unwrap();
        let h = b.parity_check(&f);
        assert_eq!(h.len(), 6);
        for &c in b.codewords() {
            let x: Vec<Fe> = (0..10).map(|j| Fe((c >> j & 1) as u16)).collect();
            assert!(h.iter().all(|row| f.dot(row, &x).is_zero()));
        }
    }

    fn instance(delta: usize, k: usize, seed: u64) -> Bz2Code {
        let g = Arc::new(BipartiteGraph::complete(delta).unwrap());
        Bz2Code::new(
            g,
            RandomCodebook::new(delta, k, seed).unwrap(),
            RandomCodebook::new(delta, k, seed + 1).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn codewords_are_fixed_points() {
        let c = instance(8, 6, 1);
        assert!(c.dimension() >= 2 * 6 * 8 - 64);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let msg: Vec<bool> = (0..c.dimension()).map(|_| rng.gen()).collect();
            let w = c.encode(&msg).unwrap();
            assert!(c.contains(&w));
            let (out, trace) = c.decode(&w).unwrap();
            assert_eq!(out, Ok(w));
            assert!(trace.success);
        }
    }

    #[test]
    fn failures_are_flagged() {
        let c = instance(8, 6, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let w: Vec<bool> = (0..64).map(|_| rng.gen_bool(0.3)).collect();
            if let Ok(z) = c.decode(&w).unwrap().0 {
                assert!(c.contains(&z));
            }
        }
    }

    #[test]
    fn low_noise_trials_decode() {
        use crate::channel::Bsc;
        let c = instance(10, 5, 1);
        let ch = Bsc::new(0.005, 17).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut ok = 0;
        for t in 0..1000 {
            let msg: Vec<bool> = (0..c.dimension()).map(|_| rng.gen()).collect();
            let w = c.encode(&msg).unwrap();
            let r = ch.for_trial(t).transmit(&w);
            if c.decode(&r).unwrap().0 == Ok(w) {
                ok += 1;
            }
        }
        assert!(ok >= 950, "{ok}");
    }

    #[test]
    fn default_iteration_count() {
        assert_eq!(default_iterations(16), 16);
        assert_eq!(default_iterations(10), 16);
        assert_eq!(default_iterations(1), 2);
    }
}
