//! Exact final-state distribution of the annealed spins.
//!
//! Two independent routes to the same law: the Gibbs form
//! P ∝ exp(−2πg Σ_j j s_j^z) restricted to the sector (direct enumeration),
//! and the sequential product form P = Π_j p^{σ_j}_{m_j,j} built from the
//! per-spin factors p±. The two must agree entrywise; that agreement pins
//! the sign and index conventions and is enforced by the test suite.

use crate::error::{capacity, validation, Result};
use crate::sector::{binomial, eta_of, Microstate, SpinSector};
use crate::sweep::map_indexed;
use serde::Serialize;
use std::f64::consts::PI;

/// Default cap on direct enumeration of a sector's distribution.
pub const ENUMERATION_CAP: usize = 2_000_000;

/// Parameters of the exact final-microstate law: (N, 2S_tot^z, g) with the
/// derived detailed-balance ratio x = e^{−2πg}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GibbsLaw {
    pub n: usize,
    pub two_sz: i32,
    pub g: f64,
    pub x: f64,
}

impl GibbsLaw {
    pub fn new(n: usize, two_sz: i32, g: f64) -> Result<Self> {
        if n < 2 {
            return validation("GibbsLaw requires n ≥ 2");
        }
        if (n as i32 + two_sz) % 2 != 0 {
            return validation(format!(
                "parity mismatch: n = {n} and two_sz = {two_sz} must have equal parity"
            ));
        }
        if !(g >= 0.0) {
            return validation(format!("g must be nonnegative, got {g}"));
        }
        Ok(Self {
            n,
            two_sz,
            g,
            x: (-2.0 * PI * g).exp(),
        })
    }
}

/// Probability that the next spin placed is down, given that the n
/// lowest-index spins remain and must supply total magnetization m/2:
/// p⁻_{m,n} = (1 − x^{(n−m)/2}) / (1 − x^n).
///
/// Evaluated as a ratio of expm1 terms, with the analytic limit
/// (n−m)/(2n) at g = 0. Outside the feasible band |m| ≤ n the value is
/// clamped to the forced endpoint.
pub fn p_minus(law: &GibbsLaw, m: i64, n: u32) -> Result<f64> {
    if n == 0 {
        return validation("p_minus requires n ≥ 1");
    }
    if (n as i64 - m) % 2 != 0 {
        return validation(format!("p_minus requires n − m even, got m = {m}, n = {n}"));
    }
    let n_f = n as f64;
    if m >= n as i64 {
        return Ok(0.0); // all remaining spins forced up (or infeasible)
    }
    if m <= -(n as i64) {
        return Ok(1.0); // all remaining spins forced down (or infeasible)
    }
    if law.g == 0.0 {
        return Ok((n_f - m as f64) / (2.0 * n_f));
    }
    let num = (-PI * law.g * (n_f - m as f64)).exp_m1();
    let den = (-2.0 * PI * law.g * n_f).exp_m1();
    Ok(num / den)
}

/// p⁺ = 1 − p⁻.
pub fn p_plus(law: &GibbsLaw, m: i64, n: u32) -> Result<f64> {
    Ok(1.0 - p_minus(law, m, n)?)
}

/// A microstate probability together with a feasibility flag; infeasible
/// states (wrong total magnetization) carry probability exactly 0.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StateProb {
    pub prob: f64,
    pub feasible: bool,
}

/// Exact probability of one microstate via the sequential product form,
/// scanning spins j = N down to 1 with m_j = 2(S_tot^z − Σ_{l>j} s_l^z).
/// Accumulated in the log domain.
pub fn microstate_prob(law: &GibbsLaw, ms: Microstate) -> Result<StateProb> {
    if ms.bits() >> law.n != 0 {
        return validation(format!(
            "microstate {:b} has bits beyond n = {}",
            ms.bits(),
            law.n
        ));
    }
    let feasible = ms.two_sz(law.n) == law.two_sz;
    if !feasible {
        return Ok(StateProb {
            prob: 0.0,
            feasible: false,
        });
    }
    let mut log_p = 0.0;
    let mut two_sz_above = 0i64; // Σ_{l>j} 2 s_l^z
    for j in (1..=law.n).rev() {
        let m_j = law.two_sz as i64 - two_sz_above;
        let factor = if ms.is_up(j) {
            two_sz_above += 1;
            p_plus(law, m_j, j as u32)?
        } else {
            two_sz_above -= 1;
            p_minus(law, m_j, j as u32)?
        };
        if factor <= 0.0 {
            return Ok(StateProb {
                prob: 0.0,
                feasible,
            });
        }
        log_p += factor.ln();
    }
    Ok(StateProb {
        prob: log_p.exp(),
        feasible: true,
    })
}

/// Log-weight −2πg Σ_j j s_j^z of a microstate (unnormalized Gibbs form).
fn log_weight(law: &GibbsLaw, ms: Microstate) -> f64 {
    // 2 Σ_j j s_j^z = 2 Σ_{up} j − N(N+1)/2, an integer
    let mut two_e = -((law.n * (law.n + 1) / 2) as i64);
    for j in 1..=law.n {
        if ms.is_up(j) {
            two_e += 2 * j as i64;
        }
    }
    -PI * law.g * two_e as f64
}

/// Full normalized distribution over the sector basis by direct enumeration
/// of the Gibbs form. Independent of the product form on purpose: the two
/// routes cross-validate each other.
pub fn enumerate_distribution(law: &GibbsLaw, sector: &SpinSector) -> Result<Vec<f64>> {
    check_sector(law, sector)?;
    if sector.dim() > ENUMERATION_CAP {
        return capacity(format!(
            "sector dimension {} exceeds the enumeration cap {}; use the O(N²) \
             eta-markov route for distribution-level quantities",
            sector.dim(),
            ENUMERATION_CAP
        ));
    }
    let lw = map_indexed(sector.dim(), |i| log_weight(law, sector.state(i)));
    let log_z = log_sum_exp(&lw);
    Ok(lw.iter().map(|&l| (l - log_z).exp()).collect())
}

/// Ground-state probability at S_tot^z = 0:
/// P_G = (x, x)_{N/2} / (x^{N/2+1}, x)_{N/2}, evaluated as a stable product
/// of factor ratios (1 − x^i)/(1 − x^{i+N/2}).
pub fn ground_prob(law: &GibbsLaw) -> Result<f64> {
    if law.two_sz != 0 {
        return validation("ground_prob is defined for two_sz = 0");
    }
    if law.n % 2 != 0 {
        return validation("ground_prob requires even n");
    }
    let half = law.n / 2;
    let mut prod = 1.0;
    for i in 1..=half {
        let ratio = if law.g == 0.0 {
            i as f64 / (i + half) as f64
        } else {
            (-2.0 * PI * law.g * i as f64).exp_m1()
                / (-2.0 * PI * law.g * (i + half) as f64).exp_m1()
        };
        prod *= ratio;
    }
    Ok(prod)
}

/// N → ∞ limit (x, x)_∞ of the ground-state probability.
pub fn ground_prob_limit(g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return validation("ground_prob_limit requires g > 0 (the limit vanishes at g = 0)");
    }
    let x = (-2.0 * PI * g).exp();
    crate::special::q_pochhammer_inf(x, x)
}

/// Entropy −Σ P log P over all sector microstates, in nats, by direct
/// enumeration (log-domain safe for P → 0).
pub fn entropy_direct(law: &GibbsLaw, sector: &SpinSector) -> Result<f64> {
    check_sector(law, sector)?;
    if sector.dim() > ENUMERATION_CAP {
        return capacity(format!(
            "sector dimension {} exceeds the enumeration cap {}; use \
             entropy_partition from the closed-form analytics instead",
            sector.dim(),
            ENUMERATION_CAP
        ));
    }
    let lw = map_indexed(sector.dim(), |i| log_weight(law, sector.state(i)));
    let log_z = log_sum_exp(&lw);
    let s = lw
        .iter()
        .map(|&l| {
            let p = (l - log_z).exp();
            -p * (l - log_z)
        })
        .sum();
    Ok(s)
}

/// All ordered pairs of sector states related by one adjacent-index
/// transposition of (↑, ↓). The law fixes P(upper)/P(lower) = x.
#[derive(Debug, Clone, Copy)]
pub struct AdjacentFlip {
    /// basis index of the state with ↑ at `site`, ↓ at `site`+1 (lower energy)
    pub lower: usize,
    /// basis index of the transposed state (higher energy)
    pub upper: usize,
    /// 1-based spin index j of the (j, j+1) transposition
    pub site: usize,
}

pub fn adjacent_flip_pairs(sector: &SpinSector) -> Vec<AdjacentFlip> {
    let mut pairs = Vec::new();
    for i in 0..sector.dim() {
        let ms = sector.state(i);
        for j in 1..sector.n_spins() {
            if ms.is_up(j) && !ms.is_up(j + 1) {
                let partner = ms.toggled(j, j + 1);
                let upper = sector.index_of(partner).expect("flip stays in sector");
                pairs.push(AdjacentFlip {
                    lower: i,
                    upper,
                    site: j,
                });
            }
        }
    }
    pairs
}

/// Exact mean accuracy ⟨η⟩ under the law by direct enumeration.
pub fn mean_eta_enumerated(law: &GibbsLaw, sector: &SpinSector) -> Result<f64> {
    let probs = enumerate_distribution(law, sector)?;
    let mut mean = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        mean += p * eta_of(sector.state(i), law.n)?;
    }
    Ok(mean)
}

fn check_sector(law: &GibbsLaw, sector: &SpinSector) -> Result<()> {
    if sector.n_spins() != law.n || sector.two_sz() != law.two_sz {
        return validation(format!(
            "sector ({}, {}) does not match law ({}, {})",
            sector.n_spins(),
            sector.two_sz(),
            law.n,
            law.two_sz
        ));
    }
    Ok(())
}

fn log_sum_exp(vals: &[f64]) -> f64 {
    let m = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + vals.iter().map(|&v| (v - m).exp()).sum::<f64>().ln()
}

/// 1/|sector| for the g → 0 uniform check.
pub fn uniform_prob(n: usize, two_sz: i32) -> f64 {
    1.0 / binomial(n, ((n as i32 + two_sz) / 2) as usize) as f64
}
