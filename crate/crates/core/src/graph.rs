//! Δ-regular bipartite graphs with fixed per-vertex edge orderings.
//!
//! Edges are indexed `0..N` with `N = Δn`. Side A vertices are `0..n`, side
//! B vertices are `0..n` as well; [`Side`] tells them apart. Each vertex's
//! incident edges `E(u)` are sorted by the index of the opposite endpoint.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const MAX_RESTARTS: usize = 1000;
const POWER_ITERATION_CAP: usize = 1_000_000;
const SPECTRAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("degree {degree} is invalid for {n} vertices per side")]
    InvalidDegree { n: usize, degree: usize },
    #[error("no simple connected graph found after {0} attempts")]
    ConstructionFailed(usize),
    #[error("graph is not {0}-regular")]
    NotRegular(usize),
    #[error("graph has parallel edges")]
    ParallelEdges,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("endpoint {index} out of range for n = {n}")]
    EndpointOutOfRange { index: usize, n: usize },
    #[error("power iteration did not converge in {0} iterations")]
    NonConvergence(usize),
    #[error("edge list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    degree: usize,
    seed: u64,
    edges: Vec<(usize, usize)>,
    incidence_a: Vec<Vec<usize>>,
    incidence_b: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralInfo {
    /// Second largest singular value of the biadjacency matrix.
    pub lambda: f64,
    /// `lambda / Δ`.
    pub gamma: f64,
    /// `lambda ≤ 2√(Δ-1)`.
    pub ramanujan: bool,
    pub iterations: usize,
}

/// Serializable description of how to obtain a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    Complete { degree: usize },
    Random { n: usize, degree: usize, seed: u64 },
}

impl GraphSpec {
    pub fn build(&self) -> Result<BipartiteGraph, GraphError> {
        match *self {
            GraphSpec::Complete { degree } => BipartiteGraph::complete(degree),
            GraphSpec::Random { n, degree, seed } => BipartiteGraph::random_regular(n, degree, seed),
        }
    }
}

impl BipartiteGraph {
    /// `K_{Δ,Δ}`: every A vertex joined to every B vertex once.
    pub fn complete(degree: usize) -> Result<Self, GraphError> {
        if degree < 2 {
            return Err(GraphError::InvalidDegree { n: degree, degree });
        }
        let edges = (0..degree).flat_map(|a| (0..degree).map(move |b| (a, b))).collect();
        Self::from_edges(degree, degree, 0, edges)
    }

    /// Union of Δ random perfect matchings, repaired to be simple and
    /// resampled until connected. `n == Δ` gives the complete graph.
    pub fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Self, GraphError> {
        if degree == 0 || degree > n {
            return Err(GraphError::InvalidDegree { n, degree });
        }
        if n == degree {
            let mut g = Self::complete(degree)?;
            g.seed = seed;
            return Ok(g);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_RESTARTS {
            if let Some(edges) = sample_matchings(n, degree, &mut rng) {
                match Self::from_edges(n, degree, seed, edges) {
                    Ok(g) => return Ok(g),
                    Err(GraphError::Disconnected) => continue,
                    Err(e) => return Err(e),
                }
            }
        }
        Err(GraphError::ConstructionFailed(MAX_RESTARTS))
    }

    /// Validates regularity, simplicity and connectivity.
    pub fn from_edges(n: usize, degree: usize, seed: u64, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if degree == 0 || degree > n {
            return Err(GraphError::InvalidDegree { n, degree });
        }
        let mut incidence_a = vec![Vec::with_capacity(degree); n];
        let mut incidence_b = vec![Vec::with_capacity(degree); n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            for index in [a, b] {
                if index >= n {
                    return Err(GraphError::EndpointOutOfRange { index, n });
                }
            }
            incidence_a[a].push(e);
            incidence_b[b].push(e);
        }
        if edges.len() != n * degree || incidence_a.iter().chain(&incidence_b).any(|l| l.len() != degree) {
            return Err(GraphError::NotRegular(degree));
        }
        for l in &mut incidence_a {
            l.sort_by_key(|&e| (edges[e].1, e));
            if l.windows(2).any(|w| edges[w[0]].1 == edges[w[1]].1) {
                return Err(GraphError::ParallelEdges);
            }
        }
        for l in &mut incidence_b {
            l.sort_by_key(|&e| (edges[e].0, e));
        }
        let g = BipartiteGraph {
            n,
            degree,
            seed,
            edges,
            incidence_a,
            incidence_b,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Vertices per side.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of edges `N = Δn`.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The ordered incident edge list `E(u)`.
    pub fn incident(&self, side: Side, u: usize) -> &[usize] {
        match side {
            Side::A => &self.incidence_a[u],
            Side::B => &self.incidence_b[u],
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            let (side, u) = if v < n { (Side::A, v) } else { (Side::B, v - n) };
            for &e in self.incident(side, u) {
                let (a, b) = self.edges[e];
                let w = if side == Side::A { n + b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == 2 * n
    }

    /// Second singular value of the biadjacency matrix by power iteration
    /// on `MᵀM` with the all-ones vector deflated.
    pub fn spectral(&self) -> Result<SpectralInfo, GraphError> {
        let n = self.n;
        let d = self.degree as f64;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed_5bec);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if !deflate_normalize(&mut x) {
            return Ok(self.spectral_result(0.0, 0));
        }
        let mut y = vec![0.0; n];
        let mut prev_rq = 0.0;
        let mut prev_diff = f64::INFINITY;
        for it in 1..=POWER_ITERATION_CAP {
            // y = M x on the B side, rq = |Mx|² for unit x
            y.iter_mut().for_each(|v| *v = 0.0);
            for &(a, b) in &self.edges {
                y[b] += x[a];
            }
            let rq: f64 = y.iter().map(|v| v * v).sum();
            x.iter_mut().for_each(|v| *v = 0.0);
            for &(a, b) in &self.edges {
                x[a] += y[b];
            }
            if rq <= f64::EPSILON * d * d || !deflate_normalize(&mut x) {
                return Ok(self.spectral_result(0.0, it));
            }
            let diff = (rq - prev_rq).abs();
            let ratio = if prev_diff.is_finite() && prev_diff > 0.0 {
                diff / prev_diff
            } else {
                1.0
            };
            // geometric tail of the remaining Rayleigh-quotient increments
            let remaining = if ratio < 1.0 {
                diff * ratio / (1.0 - ratio)
            } else {
                f64::INFINITY
            };
            let lambda = rq.sqrt();
            if it > 2 && (remaining / (2.0 * lambda.max(1e-300)) < SPECTRAL_TOL * 1e-2 || diff == 0.0) {
                return Ok(self.spectral_result(lambda, it));
            }
            prev_rq = rq;
            prev_diff = diff;
        }
        Err(GraphError::NonConvergence(POWER_ITERATION_CAP))
    }

    fn spectral_result(&self, lambda: f64, iterations: usize) -> SpectralInfo {
        let d = self.degree as f64;
        let lambda = lambda.min(d);
        SpectralInfo {
            lambda,
            gamma: lambda / d,
            ramanujan: lambda <= 2.0 * (d - 1.0).sqrt() + 1e-12,
            iterations,
        }
    }

    /// Edge-list text: header `n Δ seed`, then one `a b` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.degree, self.seed);
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "{a} {b}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let h = parse_fields(hl + 1, header, 3)?;
        let (n, degree, seed) = (h[0] as usize, h[1] as usize, h[2]);
        let edges = lines
            .map(|(i, l)| parse_fields(i + 1, l, 2).map(|v| (v[0] as usize, v[1] as usize)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_edges(n, degree, seed, edges)
    }
}

fn parse_fields(line: usize, s: &str, count: usize) -> Result<Vec<u64>, GraphError> {
    let v = s
        .split_whitespace()
        .map(|t| t.parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| GraphError::Parse {
            line,
            msg: e.to_string(),
        })?;
    if v.len() != count {
        return Err(GraphError::Parse {
            line,
            msg: format!("expected {count} fields, found {}", v.len()),
        });
    }
    Ok(v)
}

/// Removes the all-ones component and normalizes; false if nothing is left.
fn deflate_normalize(x: &mut [f64]) -> bool {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-300 {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

/// Δ matchings `a → perm_t[a]`; each new matching is repaired by swaps so it
/// shares no pair with the earlier ones.
fn sample_matchings(n: usize, degree: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::with_capacity(n * degree);
    for _ in 0..degree {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let budget = 50 * n;
        let mut steps = 0;
        while let Some(a) = (0..n).find(|&a| adj[a][perm[a]]) {
            let c = rng.gen_range(0..n);
            if c != a && !adj[a][perm[c]] && !adj[c][perm[a]] {
                perm.swap(a, c);
            }
            steps += 1;
            if steps > budget {
                return None;
            }
        }
        for a in 0..n {
            adj[a][perm[a]] = true;
            edges.push((a, perm[a]));
        }
    }
    Some(edges)
}
