//! Dilogarithm and q-Pochhammer helpers used by the closed-form results.

use crate::error::{validation, Result};

const REL_TOL: f64 = 1e-14;

/// Li₂(z) = Σ_{j≥1} z^j / j² for z ∈ [0, 1).
///
/// Direct series for z ≤ 1/2; for z closer to 1 the series is summed after
/// the Landen reflection Li₂(z) = π²/6 − ln(z)ln(1−z) − Li₂(1−z), which keeps
/// the argument small.
pub fn polylog2(z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return validation(format!("polylog2 requires z in [0,1), got {z}"));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z <= 0.5 {
        Ok(polylog2_series(z))
    } else {
        let pi2_6 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
        Ok(pi2_6 - z.ln() * (1.0 - z).ln() - polylog2_series(1.0 - z))
    }
}

fn polylog2_series(z: f64) -> f64 {
    let mut term = z;
    let mut sum = z;
    let mut j = 1u64;
    loop {
        j += 1;
        term *= z;
        let add = term / (j * j) as f64;
        sum += add;
        if add < REL_TOL * sum || j > 10_000_000 {
            return sum;
        }
    }
}

/// Finite q-Pochhammer symbol (a, q)_k = Π_{i=0}^{k−1} (1 − a q^i).
pub fn q_pochhammer(a: f64, q: f64, k: u32) -> f64 {
    let mut prod = 1.0;
    let mut aq = a;
    for _ in 0..k {
        prod *= 1.0 - aq;
        aq *= q;
    }
    prod
}

/// Infinite product (a, q)_∞, |q| < 1; truncated once the running factor
/// differs from 1 by less than 1e-16.
pub fn q_pochhammer_inf(a: f64, q: f64) -> Result<f64> {
    if q.abs() >= 1.0 {
        return validation(format!("(a,q)_∞ requires |q| < 1, got q = {q}"));
    }
    let mut prod = 1.0;
    let mut aq = a;
    for _ in 0..1_000_000 {
        if aq.abs() < 1e-16 {
            break;
        }
        prod *= 1.0 - aq;
        aq *= q;
    }
    Ok(prod)
}
