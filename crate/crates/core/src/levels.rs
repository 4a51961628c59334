//! Single-spin energies ε_1 < … < ε_N and their generation recipes.
//!
//! Every formula downstream assumes spins indexed by ascending ε, so levels
//! are sorted at construction and the sort permutation is kept for reporting.

use crate::error::{validation, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

/// How a level vector was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelRecipe {
    /// User-supplied values.
    Explicit,
    /// ε_j = j/N, no randomness.
    Equidistant,
    /// ε_j = j/N + ξ_j with ξ_j uniform in (−1/(2N), 1/(2N)), seeded.
    Jitter { seed: u64 },
}

/// Strictly increasing, positive single-spin energies.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyLevels {
    eps: Vec<f64>,
    recipe: LevelRecipe,
    /// sorted position → original input position (identity unless Explicit
    /// input arrived unsorted).
    permutation: Vec<usize>,
}

impl EnergyLevels {
    /// Wrap explicit values; sorts them and records the permutation.
    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return validation("need at least 2 levels");
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
        let eps: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        Self::check(&eps)?;
        Ok(Self {
            eps,
            recipe: LevelRecipe::Explicit,
            permutation: order,
        })
    }

    /// ε_j = j/N for j = 1..=N.
    pub fn equidistant(n: usize) -> Result<Self> {
        if n < 2 {
            return validation("need at least 2 levels");
        }
        let eps = (1..=n).map(|j| j as f64 / n as f64).collect();
        Ok(Self {
            eps,
            recipe: LevelRecipe::Equidistant,
            permutation: (0..n).collect(),
        })
    }

    /// ε_j = j/N + ξ_j with ξ_j uniform in (−1/(2N), 1/(2N)); deterministic
    /// for a fixed seed (ChaCha12 keyed by `seed`).
    pub fn jittered(n: usize, seed: u64) -> Result<Self> {
        if n < 2 {
            return validation("need at least 2 levels");
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let half = 1.0 / (2.0 * n as f64);
        let mut eps: Vec<f64> = (1..=n)
            .map(|j| j as f64 / n as f64 + rng.random_range(-half..half))
            .collect();
        // The jitter windows are disjoint so this is a no-op in practice,
        // but the ordering is a hard invariant.
        eps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self::check(&eps)?;
        Ok(Self {
            eps,
            recipe: LevelRecipe::Jitter { seed },
            permutation: (0..n).collect(),
        })
    }

    fn check(eps: &[f64]) -> Result<()> {
        if eps.iter().any(|e| !e.is_finite()) {
            return validation("levels must be finite");
        }
        if eps[0] <= 0.0 {
            return validation(format!("levels must be positive, got ε_1 = {}", eps[0]));
        }
        for w in eps.windows(2) {
            if w[1] <= w[0] {
                return validation(format!(
                    "levels must be strictly increasing, got adjacent pair ({}, {})",
                    w[0], w[1]
                ));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }

    /// ε_j for 1-based spin index j.
    pub fn get(&self, j: usize) -> f64 {
        self.eps[j - 1]
    }

    pub fn recipe(&self) -> LevelRecipe {
        self.recipe
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// Smallest adjacent spacing (the Landau-Zener gap Δ).
    pub fn min_adjacent_gap(&self) -> f64 {
        self.eps
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Some(spacing) if ε_j = ε·j to relative precision 1e-12.
    pub fn equidistant_spacing(&self) -> Option<f64> {
        let spacing = self.eps[0];
        for (i, &e) in self.eps.iter().enumerate() {
            let expect = spacing * (i + 1) as f64;
            if (e - expect).abs() > 1e-12 * expect.abs().max(1.0) {
                return None;
            }
        }
        Some(spacing)
    }
}
