//! Closed-form exponents and bounds: binary entropy and its inverse, the
//! Chernoff exponent for concatenated decoding, the ε³ exponent optimization,
//! the random coding exponent for the BSC, and degree lower bounds for
//! ML-decoded product-like expander codes.

use std::f64::consts::{E, LOG2_E};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("rate {rate} is below the critical rate {critical}")]
    BelowCriticalRate { rate: f64, critical: f64 },
}

type Result<T> = std::result::Result<T, AnalysisError>;

fn check(cond: bool, msg: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(AnalysisError::Domain(msg))
    }
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn h2(x: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&x), "h2 needs x in [0, 1]")?;
    let term = |t: f64| if t <= 0.0 { 0.0 } else { -t * t.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Inverse of `h2` on `[0, 1/2]`, by bisection to full double precision.
pub fn h2_inv(y: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&y), "h2_inv needs y in [0, 1]")?;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h2(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if (h2(hi)? - y).abs() <= (y - h2(lo)?).abs() {
        hi
    } else {
        lo
    })
}

/// Second-order expansion of `h2_inv(h2(p) + ε(1 - h2(p)))` around `p`.
pub fn h2_inv_taylor(p: f64, eps: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "h2_inv_taylor needs 0 < p < 1/2")?;
    let gap = 1.0 - h2(p)?;
    let l = ((1.0 - p) / p).log2();
    Ok(p + eps * gap / l - eps * eps * gap * gap * LOG2_E / (2.0 * p * (p - 1.0) * l.powi(3)))
}

/// BSC capacity `1 - h2(p)`.
pub fn bsc_capacity(p: f64) -> Result<f64> {
    check((0.0..=0.5).contains(&p), "capacity needs p in [0, 1/2]")?;
    Ok(1.0 - h2(p)?)
}

/// `T(x, y) = -x log₂ y - (1-x) log₂(1-y)`.
pub fn t_fn(x: f64, y: f64) -> f64 {
    -x * y.log2() - (1.0 - x) * (1.0 - y).log2()
}

/// Gilbert–Varshamov relative distance `h2_inv(1 - R)`.
pub fn delta_gv(rate: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&rate), "rate must be in [0, 1]")?;
    h2_inv(1.0 - rate)
}

/// Exponent of the probability that at least a fraction β of `n` i.i.d.
/// inner decodes fail, each with probability π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForneyBound {
    pub beta: f64,
    pub pi: f64,
    /// Exponent in nats, `Pr ≤ exp(-nE)`.
    pub e: f64,
    /// Optimal Chernoff parameter.
    pub s_star: f64,
}

/// `E = -β ln π - (1-β) ln(1-π) + β ln β + (1-β) ln(1-β)` for `π < β`; zero
/// otherwise, where the optimal Chernoff parameter would be non-positive and
/// the bound is trivial.
pub fn forney_exponent(beta: f64, pi: f64) -> Result<ForneyBound> {
    check(beta > 0.0 && beta < 1.0, "forney_exponent needs 0 < β < 1")?;
    check(pi > 0.0 && pi < 1.0, "forney_exponent needs 0 < π < 1")?;
    let s_star = 0.5 * ((1.0 - pi) * 2.0 * beta / (pi * (2.0 - 2.0 * beta))).ln();
    let raw = -beta * pi.ln() - (1.0 - beta) * (1.0 - pi).ln() + beta * beta.ln() + (1.0 - beta) * (1.0 - beta).ln();
    let e = if pi < beta { raw.max(0.0) } else { 0.0 };
    Ok(ForneyBound { beta, pi, e, s_star })
}

/// `μ(-s) = ln(π e^s + (1-π) e^{-s})`.
pub fn chernoff_mu(pi: f64, s: f64) -> f64 {
    (pi * s.exp() + (1.0 - pi) * (-s).exp()).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    HighRate,
    Middle,
    LowRate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GallagerExponent {
    pub p: f64,
    pub rate: f64,
    pub regime: Regime,
    /// Exponent in bits.
    pub value: f64,
    pub r_crit: f64,
    pub r_min: f64,
    pub delta_gv: f64,
}

/// `R_crit = 1 - h2(ρ₀)` with `ρ₀ = √p / (√p + √(1-p))`.
pub fn critical_rate(p: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "critical_rate needs 0 < p < 1/2")?;
    let rho0 = p.sqrt() / (p.sqrt() + (1.0 - p).sqrt());
    Ok(1.0 - h2(rho0)?)
}

/// Rate where the middle and low-rate branches meet. The low-rate branch
/// is convex in R and the straight middle branch is tangent to it, at the
/// rate whose GV distance is `z/(1+z)` with `z = √(4p(1-p))`.
pub fn min_rate(p: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "min_rate needs 0 < p < 1/2")?;
    let z = (4.0 * p * (1.0 - p)).sqrt();
    Ok(1.0 - h2(z / (1.0 + z))?)
}

fn e0_high(rate: f64, p: f64) -> Result<f64> {
    Ok(t_fn(delta_gv(rate)?, p) + rate - 1.0)
}

fn e0_middle(rate: f64, p: f64) -> f64 {
    1.0 - (1.0 + (4.0 * p * (1.0 - p)).sqrt()).log2() - rate
}

fn e0_low(rate: f64, p: f64) -> Result<f64> {
    Ok(-delta_gv(rate)? * (4.0 * p * (1.0 - p)).sqrt().log2())
}

/// Random coding exponent of the BSC, three-branch form.
pub fn gallager_e0(rate: f64, p: f64) -> Result<GallagerExponent> {
    check(p > 0.0 && p < 0.5, "gallager_e0 needs 0 < p < 1/2")?;
    let cap = bsc_capacity(p)?;
    check((0.0..=cap).contains(&rate), "gallager_e0 needs 0 ≤ R ≤ C")?;
    let r_crit = critical_rate(p)?;
    let r_min = min_rate(p)?;
    let (regime, value) = if rate >= r_crit {
        (Regime::HighRate, e0_high(rate, p)?)
    } else if rate >= r_min {
        (Regime::Middle, e0_middle(rate, p))
    } else {
        (Regime::LowRate, e0_low(rate, p)?)
    };
    Ok(GallagerExponent {
        p,
        rate,
        regime,
        value: value.max(0.0),
        r_crit,
        r_min,
        delta_gv: delta_gv(rate)?,
    })
}

/// Evaluates one branch of `E₀` regardless of the rate's regime.
pub fn gallager_branch(regime: Regime, rate: f64, p: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "gallager_branch needs 0 < p < 1/2")?;
    match regime {
        Regime::HighRate => e0_high(rate, p),
        Regime::Middle => Ok(e0_middle(rate, p)),
        Regime::LowRate => e0_low(rate, p),
    }
}

/// `c_p = (1 - h2(p))² log₂e / (2p(1-p) log₂²((1-p)/p))`, the near-capacity
/// curvature of `E₀`.
pub fn c_p(p: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "c_p needs 0 < p < 1/2")?;
    let gap = 1.0 - h2(p)?;
    let l = ((1.0 - p) / p).log2();
    Ok(gap * gap * LOG2_E / (2.0 * p * (1.0 - p) * l * l))
}

/// `η(1-κ)/(2ϱ) - 2√(η/(ϱ³(1-η)))`.
pub fn upsilon_value(kappa: f64, eta: f64, rho: f64) -> f64 {
    eta * (1.0 - kappa) / (2.0 * rho) - 2.0 * (eta / (rho.powi(3) * (1.0 - eta))).sqrt()
}

/// Feasibility of `(κ, η, ϱ)`: `ϱ > 16 / (η(1-η)(1-κ)²)`.
pub fn upsilon_feasible(kappa: f64, eta: f64, rho: f64) -> bool {
    (0.0..1.0).contains(&kappa) && eta > 0.0 && eta < 1.0 && rho > 16.0 / (eta * (1.0 - eta) * (1.0 - kappa).powi(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UpsilonOptimum {
    pub eta: f64,
    pub rho: f64,
    pub upsilon: f64,
}

/// Maximizes `Υ` at `κ = 0`: for fixed η the optimal ϱ is `36/(η(1-η))`,
/// leaving a one-dimensional golden-section search over η.
pub fn upsilon_optimize() -> UpsilonOptimum {
    let rho_of = |eta: f64| 36.0 / (eta * (1.0 - eta));
    let (eta, upsilon) = golden_max(|eta| upsilon_value(0.0, eta, rho_of(eta)), 1e-6, 1.0 - 1e-6, 1e-12);
    UpsilonOptimum {
        eta,
        rho: rho_of(eta),
        upsilon,
    }
}

/// `E(C, ε) = (2t-1) C ε³ / (2916 log₂e)`.
pub fn error_exponent(capacity: f64, eps: f64, t: f64) -> Result<f64> {
    check(t >= 1.0, "error_exponent needs t ≥ 1")?;
    check((0.0..1.0).contains(&eps), "error_exponent needs 0 ≤ ε < 1")?;
    check(capacity > 0.0 && capacity <= 1.0, "error_exponent needs 0 < C ≤ 1")?;
    Ok((2.0 * t - 1.0) * capacity * eps.powi(3) / (2916.0 * LOG2_E))
}

/// Exponent before optimizing `(κ, η, ϱ)`: `Υ(κ,η,ϱ) (2t-1) C ε³ / (2 log₂e)`.
pub fn error_exponent_with(capacity: f64, eps: f64, t: f64, kappa: f64, eta: f64, rho: f64) -> Result<f64> {
    check(upsilon_feasible(kappa, eta, rho), "infeasible (κ, η, ϱ)")?;
    check(t >= 1.0, "error_exponent needs t ≥ 1")?;
    Ok(upsilon_value(kappa, eta, rho) * (2.0 * t - 1.0) * capacity * eps.powi(3) / (2.0 * LOG2_E))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldVariant {
    Binary,
    LargeField,
}

impl FieldVariant {
    fn g(self, x: f64) -> Result<f64> {
        match self {
            FieldVariant::Binary => h2_inv(x.clamp(0.0, 1.0)),
            FieldVariant::LargeField => Ok(x),
        }
    }
}

/// Constants that the degree bounds leave unspecified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// `c` in the `c/√Δ` penalty term.
    pub theta_const: f64,
    /// Overall multiplier `0 < α ≤ 1` of the exponent.
    pub alpha: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            theta_const: 2.0,
            alpha: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bz2Term {
    pub value: f64,
    pub r0: f64,
}

/// `max_{R ≤ R₀ < C} α E₀(R₀, p) (g(R₀ - R)/2 - c/√Δ)`.
pub fn bz2_exponent_term(
    rate: f64,
    p: f64,
    degree: usize,
    variant: FieldVariant,
    k: BoundConstants,
) -> Result<Bz2Term> {
    let cap = bsc_capacity(p)?;
    check(rate >= 0.0 && rate < cap, "bz2_exponent_term needs 0 ≤ R < C")?;
    check(degree >= 1, "degree must be positive")?;
    let penalty = k.theta_const / (degree as f64).sqrt();
    let f = |r0: f64| -> f64 {
        let e0 = gallager_e0(r0, p).map(|g| g.value).unwrap_or(0.0);
        let g = variant.g(r0 - rate).unwrap_or(0.0);
        k.alpha * e0 * (g / 2.0 - penalty)
    };
    // E₀ vanishes at C, so the search stays strictly inside [R, C)
    let grid = 400;
    let step = (cap - rate) / grid as f64;
    let mut best = (rate, f(rate));
    for i in 1..grid {
        let r0 = rate + i as f64 * step;
        let v = f(r0);
        if v > best.1 {
            best = (r0, v);
        }
    }
    let lo = (best.0 - step).max(rate);
    let hi = (best.0 + step).min(cap);
    let (r0, v) = golden_max(f, lo, hi, 1e-13);
    let (r0, value) = if v > best.1 { (r0, v) } else { best };
    // adding 0.0 turns a -0.0 product into +0.0
    Ok(Bz2Term { value: value + 0.0, r0 })
}

/// Smallest integer strictly greater than `x`, treating values within
/// relative 1e-9 of an integer as that integer.
pub fn smallest_integer_above(x: f64) -> u64 {
    let nearest = x.round();
    let x = if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest
    } else {
        x
    };
    x.floor() as u64 + 1
}

/// Smallest Δ with `g(Cε)/2 > c/√Δ`, i.e. `Δ > (2c/g(Cε))²`.
pub fn bz2_min_degree(eps: f64, p: f64, variant: FieldVariant, k: BoundConstants) -> Result<u64> {
    check(eps > 0.0 && eps < 1.0, "bz2_min_degree needs 0 < ε < 1")?;
    let cap = bsc_capacity(p)?;
    let g = variant.g(cap * eps)?;
    check(g > 0.0, "g(Cε) must be positive")?;
    Ok(smallest_integer_above((2.0 * k.theta_const / g).powi(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bz3Report {
    pub rate: f64,
    pub e0: f64,
    pub m_exact: f64,
    pub m_approx: f64,
    pub alpha_lower: f64,
    pub positive: bool,
}

/// `M(R,p) = log₂(δ_GV(R)(1-p) / ((1-δ_GV(R))p))` for `R ≥ R_crit`.
pub fn m_exact(rate: f64, p: f64) -> Result<f64> {
    let d = delta_gv(rate)?;
    Ok((d * (1.0 - p) / ((1.0 - d) * p)).log2())
}

/// First-order form `log₂e/(p(1-p)) · ε(1 - h2(p))/log₂((1-p)/p)`.
pub fn m_approx(eps: f64, p: f64) -> Result<f64> {
    check(p > 0.0 && p < 0.5, "m_approx needs 0 < p < 1/2")?;
    Ok(LOG2_E / (p * (1.0 - p)) * eps * (1.0 - h2(p)?) / ((1.0 - p) / p).log2())
}

/// Positivity of `E₀(R,p) - M α` at `R = (1-ε)C` and the smallest allowed
/// `α = 4√(Δ-1)/Δ`.
pub fn bz3_positivity(degree: usize, p: f64, eps: f64) -> Result<Bz3Report> {
    check(degree >= 2, "bz3_positivity needs Δ ≥ 2")?;
    check(eps > 0.0 && eps < 1.0, "bz3_positivity needs 0 < ε < 1")?;
    let cap = bsc_capacity(p)?;
    let rate = (1.0 - eps) * cap;
    let critical = critical_rate(p)?;
    if rate < critical {
        return Err(AnalysisError::BelowCriticalRate { rate, critical });
    }
    let e0 = gallager_e0(rate, p)?.value;
    let m = m_exact(rate, p)?;
    let d = degree as f64;
    let alpha_lower = 4.0 * (d - 1.0).sqrt() / d;
    Ok(Bz3Report {
        rate,
        e0,
        m_exact: m,
        m_approx: m_approx(eps, p)?,
        alpha_lower,
        positive: e0 > m * alpha_lower,
    })
}

/// Smallest Δ ≥ 2 for which [`bz3_positivity`] holds. `4√(Δ-1)/Δ` is
/// decreasing for Δ ≥ 2, so positivity is monotone in Δ.
pub fn bz3_threshold_degree(p: f64, eps: f64) -> Result<u64> {
    let pos = |d: u64| bz3_positivity(d as usize, p, eps).map(|r| r.positive);
    if pos(2)? {
        return Ok(2);
    }
    let mut hi = 4u64;
    while !pos(hi)? {
        check(hi < 1 << 60, "no positive degree found")?;
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pos(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol * (1.0 + a.abs() + b.abs()) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// `κ/(1-κ)` bound used when selecting κ for a given `b`, `ϑ`: `κ^b ≤ ϑ(1-κ)^b / e`.
pub fn kappa_constraint(kappa: f64, b: f64, theta: f64) -> f64 {
    kappa.powf(b) - theta * (1.0 - kappa).powf(b) / E
}
