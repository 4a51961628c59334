//! Closed-form and asymptotic results: mean accuracy and its inverse,
//! variance, grand-canonical marginals, entropy via the partition function,
//! entropy saturation, the effective temperature, and the Landau-Zener
//! baseline.
//!
//! All exponentials go through softplus/log1p/expm1 forms; πgN easily
//! exceeds 700 at the sizes these formulas are used for, while every result
//! stays O(1).

use crate::error::{validation, Result};
use crate::gibbs::ground_prob;
use crate::levels::EnergyLevels;
use crate::special::polylog2;
use serde::Serialize;
use std::f64::consts::PI;

/// ln(1 + e^a) without overflow.
fn softplus(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

/// Large-N mean accuracy ⟨η⟩ ≈ (2/(πgN)) (ln(1 + e^{πgN}) − ln 2) − 1.
pub fn mean_eta_approx(g: f64, n: usize) -> Result<f64> {
    check_even(n)?;
    if !(g >= 0.0) {
        return validation(format!("g must be nonnegative, got {g}"));
    }
    let a = PI * g * n as f64;
    if a < 1e-4 {
        // series around a = 0 avoids the 0/0 cancellation
        return Ok(a / 4.0 - a.powi(3) / 96.0);
    }
    Ok(2.0 / a * (softplus(a) - std::f64::consts::LN_2) - 1.0)
}

/// Coupling required for a target accuracy, from the gN ≫ 1 asymptote
/// g = 2 ln2 / (πN(1 − ⟨η⟩)), with its validity window.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RequiredG {
    pub g: f64,
    pub gn: f64,
    /// The asymptote is trustworthy for gN ≳ 3 and g < 1.
    pub in_asymptotic_window: bool,
}

pub fn required_g(eta_target: f64, n: usize) -> Result<RequiredG> {
    check_even(n)?;
    if !(0.0 < eta_target && eta_target < 1.0) {
        return validation(format!("eta_target must lie in (0,1), got {eta_target}"));
    }
    let g = 2.0 * std::f64::consts::LN_2 / (PI * n as f64 * (1.0 - eta_target));
    let gn = g * n as f64;
    Ok(RequiredG {
        g,
        gn,
        in_asymptotic_window: gn >= 3.0 && g < 1.0,
    })
}

/// Grand-canonical variance of η: (4/(πgN²)) (1/(1+e^{−πgN}) − 1/2),
/// evaluated as (2/(πgN²)) tanh(πgN/2) with the g → 0 limit 1/N.
pub fn var_eta_approx(g: f64, n: usize) -> Result<f64> {
    check_even(n)?;
    let nf = n as f64;
    let a = PI * g * nf;
    if a < 1e-4 {
        return Ok((1.0 - a * a / 12.0) / nf);
    }
    Ok(2.0 / (PI * g * nf * nf) * (a / 2.0).tanh())
}

/// The grand-canonical replacement of the magnetization constraint.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrandCanonical {
    /// inverse temperature β = 2πg
    pub beta: f64,
    /// chemical potential μ = (N+1)/2 fixing ⟨S_tot^z⟩ = 0
    pub mu: f64,
}

impl GrandCanonical {
    pub fn new(g: f64, n: usize) -> Self {
        Self {
            beta: 2.0 * PI * g,
            mu: (n as f64 + 1.0) / 2.0,
        }
    }
}

/// Grand-canonical marginal ⟨s_j^z⟩ = ½ tanh[β(μ − j)/2] = ½ tanh(πg(μ − j)).
pub fn marginal_gc(g: f64, n: usize, j: usize) -> Result<f64> {
    if j < 1 || j > n {
        return validation(format!("spin index j = {j} outside 1..={n}"));
    }
    let gc = GrandCanonical::new(g, n);
    Ok(0.5 * (gc.beta * (gc.mu - j as f64) / 2.0).tanh())
}

/// log Z of the Gibbs law at S_tot^z = 0: log Z = −πgN²/4 − log P_G(N).
pub fn log_partition(g: f64, n: usize) -> Result<f64> {
    check_even(n)?;
    let pg = ground_prob(&crate::gibbs::GibbsLaw::new(n, 0, g)?)?;
    Ok(-PI * g * (n * n) as f64 / 4.0 - pg.ln())
}

/// Analytic ∂ log Z / ∂g, differentiating every q-Pochhammer factor
/// (dx/dg = −2πx). Finite differences of `log_partition` are the test
/// oracle for this, not the implementation.
pub fn d_log_partition_dg(g: f64, n: usize) -> Result<f64> {
    check_even(n)?;
    let half = n / 2;
    // d/dg ln(1−x^k) = 2πk x^k/(1−x^k) = 2πk / (e^{2πgk} − 1)
    let term = |k: usize| -> f64 {
        let a = 2.0 * PI * g * k as f64;
        if a == 0.0 {
            // limit k/(2πg k) diverges; handled by the caller’s g=0 branch
            f64::NAN
        } else {
            k as f64 / a.exp_m1()
        }
    };
    if g == 0.0 {
        // d log Z/dg → 0 at g = 0 (the uniform point is the entropy maximum)
        return Ok(0.0);
    }
    let mut dlog_pg = 0.0;
    for i in 1..=half {
        dlog_pg += 2.0 * PI * (term(i) - term(i + half));
    }
    Ok(-PI * (n * n) as f64 / 4.0 - dlog_pg)
}

/// Entropy from the partition function: S = log Z − g ∂logZ/∂g.
pub fn entropy_partition(g: f64, n: usize) -> Result<f64> {
    check_even(n)?;
    if g == 0.0 {
        return Ok(ln_central_binomial(n));
    }
    Ok(log_partition(g, n)? - g * d_log_partition_dg(g, n)?)
}

/// Large-N entropy saturation value S ∼ Li₂(e^{−πg})/(πg) − ½ ln(1 − e^{−πg}).
pub fn entropy_saturation(g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return validation(format!(
            "entropy_saturation requires g > 0 (diverges at g = 0), got {g}"
        ));
    }
    let z = (-PI * g).exp();
    let one_minus_z = -(-PI * g).exp_m1();
    Ok(polylog2(z)? / (PI * g) - 0.5 * one_minus_z.ln())
}

/// ln C(n, n/2).
pub fn ln_central_binomial(n: usize) -> f64 {
    let half = n / 2;
    (1..=half)
        .map(|i| (((half + i) as f64) / i as f64).ln())
        .sum()
}

/// Effective temperature T = ε/(2πg) (units k_B = 1), defined only for
/// equidistant levels ε_j = ε·j, where the final law is a true thermal
/// state of the Ising part.
pub fn temperature(levels: &EnergyLevels, g: f64) -> Result<f64> {
    let Some(spacing) = levels.equidistant_spacing() else {
        return validation(
            "temperature is only defined for equidistant levels ε_j = ε·j; \
             the final distribution is thermal for the Ising part only in that case",
        );
    };
    temperature_from_spacing(spacing, g)
}

pub fn temperature_from_spacing(spacing: f64, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return validation("temperature requires g > 0");
    }
    Ok(spacing / (2.0 * PI * g))
}

/// The Landau-Zener estimate of the ground-state probability. The level
/// spacing Δ cancels from the final estimate; the intermediate scales are
/// reported for context.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LZBaseline {
    /// minimum adjacent level spacing Δ
    pub gap: f64,
    /// sweep rate β = Δ²/g
    pub rate: f64,
    /// effective annealing time τ = g/Δ
    pub effective_time: f64,
    /// P_G ≈ 1 − e^{−2πg}
    pub estimate: f64,
}

pub fn lz_baseline(g: f64, levels: &EnergyLevels) -> Result<LZBaseline> {
    if !(g >= 0.0) {
        return validation("g must be nonnegative");
    }
    let gap = levels.min_adjacent_gap();
    Ok(LZBaseline {
        gap,
        rate: if g > 0.0 { gap * gap / g } else { f64::INFINITY },
        effective_time: if gap > 0.0 { g / gap } else { f64::INFINITY },
        estimate: -(-2.0 * PI * g).exp_m1(),
    })
}

/// Mean/variance pair for the Gaussian overlay of P(η).
pub fn gaussian_eta(g: f64, n: usize) -> Result<(f64, f64)> {
    Ok((mean_eta_approx(g, n)?, var_eta_approx(g, n)?))
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return validation(format!("n must be even and ≥ 2, got {n}"));
    }
    Ok(())
}
