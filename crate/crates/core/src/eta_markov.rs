//! O(N²) Markov-chain evaluation of the accuracy distribution P(η) and the
//! per-spin marginal polarizations, usable far beyond enumeration scale
//! (thousands of spins).
//!
//! Spins are placed from j = N down, tracking the distribution of
//! d = (#up − #down) among the placed spins. One placement step reads the
//! p± factor with arguments m = −d (the magnetization the remaining spins
//! must supply at S_tot^z = 0) and n = j. After N/2 placements, η = −2d/N.

use crate::error::{validation, Result};
use crate::gibbs::{p_minus, GibbsLaw};
use serde::Serialize;

/// Hard cap on N for the recursion.
pub const MARKOV_CAP: usize = 10_000;

/// Probability law of η on its exact grid, with first two moments.
#[derive(Debug, Clone, Serialize)]
pub struct EtaDistribution {
    pub n: usize,
    pub g: f64,
    /// η values in ascending order, grid spacing 4/N.
    pub support: Vec<f64>,
    pub probs: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    /// Worst |Σ_m q_{j,m} − 1| seen across all recursion rows.
    pub conservation_error: f64,
}

/// One row of the placement recursion: probabilities over d after `placed`
/// spins, stored densely on the reachable grid d ∈ {−b, −b+2, …, b}.
struct Row {
    placed: usize,
    bound: usize,
    q: Vec<f64>,
}

impl Row {
    fn initial() -> Self {
        Row {
            placed: 0,
            bound: 0,
            q: vec![1.0],
        }
    }

    fn d(&self, idx: usize) -> i64 {
        2 * idx as i64 - self.bound as i64
    }

    /// Place spin j (the recursion runs j = N, N−1, …).
    fn place(&mut self, law: &GibbsLaw, j: usize, n_total: usize) -> Result<f64> {
        let placed = self.placed + 1;
        // reachable |d| ≤ placed; feasible |d| ≤ remaining = n_total − placed
        let bound = placed.min(n_total - placed);
        let mut next = vec![0.0; bound + 1];
        for idx in 0..self.q.len() {
            let w = self.q[idx];
            if w == 0.0 {
                continue;
            }
            let d = self.d(idx);
            let pm = p_minus(law, -d, j as u32)?;
            let pp = 1.0 - pm;
            // spin up: d+1, spin down: d−1
            for (delta, p) in [(1i64, pp), (-1i64, pm)] {
                if p == 0.0 {
                    continue;
                }
                let nd = d + delta;
                if nd.unsigned_abs() as usize > bound {
                    // beyond the feasibility trim; the law puts zero mass here
                    debug_assert!(w * p < 1e-12, "mass {:.3e} escaped the trim", w * p);
                    continue;
                }
                next[((nd + bound as i64) / 2) as usize] += w * p;
            }
        }
        self.placed = placed;
        self.bound = bound;
        self.q = next;
        let total: f64 = self.q.iter().sum();
        Ok((total - 1.0).abs())
    }
}

fn check_law(law: &GibbsLaw) -> Result<()> {
    if law.two_sz != 0 {
        return validation("the Markov route is derived for two_sz = 0");
    }
    if law.n % 2 != 0 {
        return validation(format!("the Markov route requires even n, got {}", law.n));
    }
    if law.n > MARKOV_CAP {
        return crate::error::capacity(format!(
            "n = {} exceeds the Markov recursion cap {MARKOV_CAP}",
            law.n
        ));
    }
    Ok(())
}

/// Distribution of η = −2d/N after placing the upper half of the spins.
pub fn eta_distribution(law: &GibbsLaw) -> Result<EtaDistribution> {
    check_law(law)?;
    let n = law.n;
    let mut row = Row::initial();
    let mut worst = 0.0f64;
    for j in (n / 2 + 1..=n).rev() {
        worst = worst.max(row.place(law, j, n)?);
    }
    debug_assert_eq!(row.placed, n / 2);
    // d descending ⇔ η ascending
    let mut support = Vec::with_capacity(row.q.len());
    let mut probs = Vec::with_capacity(row.q.len());
    for idx in (0..row.q.len()).rev() {
        support.push(-2.0 * row.d(idx) as f64 / n as f64);
        probs.push(row.q[idx]);
    }
    let (mean, variance) = moments_of(&support, &probs);
    Ok(EtaDistribution {
        n,
        g: law.g,
        support,
        probs,
        mean,
        variance,
        conservation_error: worst,
    })
}

/// ⟨s_j^z⟩ for j = 1..=N: before placing spin j the row holds q over d, and
/// ⟨s_j^z⟩ = Σ_d q(d) (p⁺(−d,j) − p⁻(−d,j))/2. One O(N²) pass.
pub fn marginal_polarizations(law: &GibbsLaw) -> Result<Vec<f64>> {
    check_law(law)?;
    let n = law.n;
    let mut row = Row::initial();
    let mut marg = vec![0.0; n];
    for j in (1..=n).rev() {
        let mut s = 0.0;
        for idx in 0..row.q.len() {
            let w = row.q[idx];
            if w == 0.0 {
                continue;
            }
            let pm = p_minus(law, -row.d(idx), j as u32)?;
            s += w * (0.5 - pm); // (p⁺ − p⁻)/2 = 1/2 − p⁻
        }
        marg[j - 1] = s;
        if j > 1 {
            row.place(law, j, n)?;
        }
    }
    Ok(marg)
}

/// First two moments of a stored distribution.
pub fn moments(dist: &EtaDistribution) -> (f64, f64) {
    moments_of(&dist.support, &dist.probs)
}

fn moments_of(support: &[f64], probs: &[f64]) -> (f64, f64) {
    let mean: f64 = support.iter().zip(probs).map(|(e, p)| e * p).sum();
    let m2: f64 = support.iter().zip(probs).map(|(e, p)| e * e * p).sum();
    (mean, m2 - mean * mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gibbs::{enumerate_distribution, GibbsLaw};
    use crate::sector::{eta_of, SpinSector};
    use std::collections::BTreeMap;
    use std::f64::consts::PI;

    fn law(n: usize, g: f64) -> GibbsLaw {
        GibbsLaw::new(n, 0, g).unwrap()
    }

    /// Enumeration oracle: histogram of the exact distribution by η value.
    fn eta_histogram(n: usize, g: f64) -> BTreeMap<i64, f64> {
        let sector = SpinSector::new(n, 0).unwrap();
        let probs = enumerate_distribution(&law(n, g), &sector).unwrap();
        let mut hist = BTreeMap::new();
        for (i, &p) in probs.iter().enumerate() {
            let eta = eta_of(sector.state(i), n).unwrap();
            // key on the integer grid index to avoid float keys
            let key = (eta * n as f64 / 4.0 * 2.0).round() as i64;
            *hist.entry(key).or_insert(0.0) += p;
        }
        hist
    }

    #[test]
    fn two_spin_law() {
        for &g in &[0.0, 0.1, 0.5, 1.0] {
            let d = eta_distribution(&law(2, g)).unwrap();
            let x = (-2.0 * PI * g).exp();
            assert_eq!(d.support, vec![-1.0, 1.0]);
            assert!((d.probs[1] - 1.0 / (1.0 + x)).abs() < 1e-14);
            assert!((d.probs[0] - x / (1.0 + x)).abs() < 1e-14);
            assert!((d.mean - (PI * g).tanh()).abs() < 1e-14);
        }
    }

    #[test]
    fn matches_enumeration_histogram() {
        for n in [4usize, 6, 8, 10, 12] {
            for &g in &[0.0, 0.05, 0.3, 1.0] {
                let d = eta_distribution(&law(n, g)).unwrap();
                let hist = eta_histogram(n, g);
                assert_eq!(d.support.len(), hist.len());
                for (eta, p) in d.support.iter().zip(&d.probs) {
                    let key = (eta * n as f64 / 2.0).round() as i64;
                    let oracle = hist.get(&key).copied().unwrap_or(0.0);
                    assert!(
                        (p - oracle).abs() < 1e-10,
                        "N={n} g={g} η={eta}: markov {p} vs enumeration {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn marginals_match_enumeration() {
        for n in [4usize, 6, 8] {
            for &g in &[0.0, 0.2, 0.7] {
                let marg = marginal_polarizations(&law(n, g)).unwrap();
                let sector = SpinSector::new(n, 0).unwrap();
                let probs = enumerate_distribution(&law(n, g), &sector).unwrap();
                for j in 1..=n {
                    let oracle: f64 = probs
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| p * sector.state(i).sz(j))
                        .sum();
                    assert!(
                        (marg[j - 1] - oracle).abs() < 1e-10,
                        "N={n} g={g} j={j}: {} vs {}",
                        marg[j - 1],
                        oracle
                    );
                }
            }
        }
    }

    #[test]
    fn marginals_antisymmetric() {
        let marg = marginal_polarizations(&law(30, 0.11)).unwrap();
        for j in 1..=30 {
            assert!((marg[j - 1] + marg[30 - j]).abs() < 1e-12);
        }
    }

    #[test]
    fn strong_coupling_is_step_profile() {
        let marg = marginal_polarizations(&law(10, 40.0)).unwrap();
        for j in 1..=10 {
            let expect = if j <= 5 { 0.5 } else { -0.5 };
            assert!((marg[j - 1] - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn g_zero_gives_hypergeometric_moments() {
        for n in [4usize, 6, 8] {
            let d = eta_distribution(&law(n, 0.0)).unwrap();
            assert!(d.mean.abs() < 1e-14);
            assert!((d.variance - 1.0 / (n as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn conservation_and_normalization() {
        let d = eta_distribution(&law(600, 0.01)).unwrap();
        assert!(d.conservation_error < 1e-12);
        let total: f64 = d.probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!(d.support.iter().all(|e| (-1.0..=1.0).contains(e)));
    }

    #[test]
    fn point_mass_moments() {
        let d = EtaDistribution {
            n: 4,
            g: 1.0,
            support: vec![1.0],
            probs: vec![1.0],
            mean: 0.0,
            variance: 0.0,
            conservation_error: 0.0,
        };
        assert_eq!(moments(&d), (1.0, 0.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(eta_distribution(&GibbsLaw::new(5, 1, 0.1).unwrap()).is_err());
        assert!(eta_distribution(&GibbsLaw::new(6, 2, 0.1).unwrap()).is_err());
    }
}
