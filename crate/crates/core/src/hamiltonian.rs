//! The driven BCS Hamiltonian, the Gaudin commuting family, and the
//! nonintegrable three-body comparison model, all on a fixed-magnetization
//! sector.
//!
//! Ĥ(t) = (Ising diagonal) − (g/t) Σ_{j≠k} ŝ_j^+ ŝ_k^-. The hop term is the
//! same for both models; only the diagonal differs. Matrix elements are real,
//! so dense materializations are real symmetric.

use crate::error::{validation, Result};
use crate::levels::EnergyLevels;
use crate::sector::{ising_energy, Microstate, SpinSector};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Rows below this dimension are cheaper to process on one thread.
#[cfg(feature = "parallel")]
const PAR_MIN_DIM: usize = 512;

/// Per-spin factors of the three-body couplings J_{ijk} = J_i J_j J_k.
#[derive(Debug, Clone, Serialize)]
pub struct ThreeBodyCouplings {
    pub factors: Vec<f64>,
    pub variance: f64,
}

impl ThreeBodyCouplings {
    /// J_i ~ Normal(0, variance), seeded (ChaCha12). `variance` is the
    /// variance, not the standard deviation.
    pub fn gaussian(n: usize, variance: f64, seed: u64) -> Result<Self> {
        if !(variance > 0.0) {
            return validation("coupling variance must be positive");
        }
        let normal = Normal::new(0.0, variance.sqrt())
            .map_err(|e| crate::error::AnnealError::Validation(e.to_string()))?;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        Ok(Self {
            factors: (0..n).map(|_| normal.sample(&mut rng)).collect(),
            variance,
        })
    }

    pub fn from_factors(factors: Vec<f64>) -> Self {
        let n = factors.len() as f64;
        let mean = factors.iter().sum::<f64>() / n;
        let variance = factors.iter().map(|j| (j - mean) * (j - mean)).sum::<f64>() / n;
        Self { factors, variance }
    }
}

/// Which Ising diagonal the driven Hamiltonian carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Bcs,
    ThreeBody,
}

/// A driven Hamiltonian bound to a sector: precomputed Ising diagonal and
/// the hop adjacency (for every state, the n_up·n_down partners reachable by
/// one ŝ^+ŝ^- move). Immutable once built; `apply` is pure.
pub struct Hamiltonian<'a> {
    sector: &'a SpinSector,
    kind: ModelKind,
    g: f64,
    diag: Vec<f64>,
    /// flat row-major partner table, `pairs_per_row` entries per basis state
    partners: Vec<u32>,
    pairs_per_row: usize,
}

fn hop_partners(sector: &SpinSector) -> (Vec<u32>, usize) {
    let n = sector.n_spins();
    let pairs = sector.n_up() * sector.n_down();
    let mut partners = Vec::with_capacity(sector.dim() * pairs);
    for i in 0..sector.dim() {
        let ms = sector.state(i);
        for u in 1..=n {
            if !ms.is_up(u) {
                continue;
            }
            for d in 1..=n {
                if ms.is_up(d) {
                    continue;
                }
                let p = sector
                    .index_of(ms.toggled(u, d))
                    .expect("hop conserves magnetization");
                partners.push(p as u32);
            }
        }
    }
    (partners, pairs)
}

impl<'a> Hamiltonian<'a> {
    /// Ĥ_BCS(t) = Σ_j ε_j ŝ_j^z − (g/t) Σ_{j≠k} ŝ_j^+ ŝ_k^-.
    pub fn bcs(sector: &'a SpinSector, levels: &EnergyLevels, g: f64) -> Result<Self> {
        if levels.len() != sector.n_spins() {
            return validation(format!(
                "levels length {} does not match sector n_spins {}",
                levels.len(),
                sector.n_spins()
            ));
        }
        check_g(g)?;
        let diag = (0..sector.dim())
            .map(|i| ising_energy(sector.state(i), levels))
            .collect();
        let (partners, pairs_per_row) = hop_partners(sector);
        Ok(Self {
            sector,
            kind: ModelKind::Bcs,
            g,
            diag,
            partners,
            pairs_per_row,
        })
    }

    /// Ĥ'(t) = Σ_{i≠j≠k} J_i J_j J_k ŝ_i^z ŝ_j^z ŝ_k^z − (g/t) Σ ŝ^+ŝ^-.
    /// The ordered sum counts each unordered triple 3! times.
    pub fn three_body(
        sector: &'a SpinSector,
        couplings: &ThreeBodyCouplings,
        g: f64,
    ) -> Result<Self> {
        if couplings.factors.len() != sector.n_spins() {
            return validation(format!(
                "coupling factors length {} does not match sector n_spins {}",
                couplings.factors.len(),
                sector.n_spins()
            ));
        }
        check_g(g)?;
        let diag = (0..sector.dim())
            .map(|i| three_body_diag(sector.state(i), &couplings.factors))
            .collect();
        let (partners, pairs_per_row) = hop_partners(sector);
        Ok(Self {
            sector,
            kind: ModelKind::ThreeBody,
            g,
            diag,
            partners,
            pairs_per_row,
        })
    }

    pub fn sector(&self) -> &SpinSector {
        self.sector
    }

    pub fn dim(&self) -> usize {
        self.sector.dim()
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn ising_diag(&self) -> &[f64] {
        &self.diag
    }

    fn check_apply(&self, t: f64, v_len: usize, out_len: usize) -> Result<f64> {
        if !(t > 0.0) {
            return validation(format!(
                "t must be positive (the coupling g/t is singular at t = 0), got {t}"
            ));
        }
        if v_len != self.dim() || out_len != self.dim() {
            return validation(format!(
                "vector length {} does not match sector dimension {}",
                v_len,
                self.dim()
            ));
        }
        Ok(self.g / t)
    }

    /// out = scale · Ĥ(t) v. Row-partitioned when parallel, which keeps the
    /// per-element summation order fixed: results are bitwise identical for
    /// any thread count.
    pub fn apply_scaled(
        &self,
        t: f64,
        scale: Complex64,
        v: &[Complex64],
        out: &mut [Complex64],
    ) -> Result<()> {
        let w = self.check_apply(t, v.len(), out.len())?;
        let row = |i: usize| -> Complex64 {
            let base = i * self.pairs_per_row;
            let mut acc = Complex64::ZERO;
            for &p in &self.partners[base..base + self.pairs_per_row] {
                acc += v[p as usize];
            }
            scale * (self.diag[i] * v[i] - w * acc)
        };
        #[cfg(feature = "parallel")]
        if self.dim() >= PAR_MIN_DIM {
            out.par_iter_mut().enumerate().for_each(|(i, o)| *o = row(i));
            return Ok(());
        }
        for (i, o) in out.iter_mut().enumerate() {
            *o = row(i);
        }
        Ok(())
    }

    /// out = Ĥ(t) v.
    pub fn apply(&self, t: f64, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        self.apply_scaled(t, Complex64::ONE, v, out)
    }

    /// Single-threaded apply, kept public as the bench baseline.
    pub fn apply_seq(&self, t: f64, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        let w = self.check_apply(t, v.len(), out.len())?;
        for i in 0..self.dim() {
            let base = i * self.pairs_per_row;
            let mut acc = Complex64::ZERO;
            for &p in &self.partners[base..base + self.pairs_per_row] {
                acc += v[p as usize];
            }
            out[i] = self.diag[i] * v[i] - w * acc;
        }
        Ok(())
    }

    /// Dense real-symmetric materialization of Ĥ(t).
    pub fn dense(&self, t: f64) -> Result<DMatrix<f64>> {
        let w = self.check_apply(t, self.dim(), self.dim())?;
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = self.diag[i];
            let base = i * self.pairs_per_row;
            for &p in &self.partners[base..base + self.pairs_per_row] {
                m[(p as usize, i)] -= w;
            }
        }
        Ok(m)
    }

    /// Sorted eigenvalues of Ĥ(t).
    pub fn eigenvalues_sorted(&self, t: f64) -> Result<Vec<f64>> {
        let m = self.dense(t)?;
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(ev)
    }
}

fn check_g(g: f64) -> Result<()> {
    if !(g >= 0.0) {
        return validation(format!("g must be nonnegative, got {g}"));
    }
    Ok(())
}

/// Σ_{i≠j≠k} J_i J_j J_k s_i s_j s_k over ordered triples = 6·e₃(w) with
/// w_j = J_j s_j, via Newton's identity e₃ = (p₁³ − 3p₁p₂ + 2p₃)/6.
fn three_body_diag(ms: Microstate, factors: &[f64]) -> f64 {
    let (mut p1, mut p2, mut p3) = (0.0, 0.0, 0.0);
    for (idx, &j) in factors.iter().enumerate() {
        let w = j * ms.sz(idx + 1);
        p1 += w;
        p2 += w * w;
        p3 += w * w * w;
    }
    p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3
}

/// One-shot Ĥ_BCS(t)·v without keeping the operator around.
pub fn apply_bcs(
    t: f64,
    g: f64,
    levels: &EnergyLevels,
    sector: &SpinSector,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    let h = Hamiltonian::bcs(sector, levels, g)?;
    let mut out = vec![Complex64::ZERO; sector.dim()];
    h.apply(t, v, &mut out)?;
    Ok(out)
}

/// One-shot Ĥ'(t)·v for the three-body model.
pub fn apply_three_body(
    t: f64,
    g: f64,
    couplings: &ThreeBodyCouplings,
    sector: &SpinSector,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    let h = Hamiltonian::three_body(sector, couplings, g)?;
    let mut out = vec![Complex64::ZERO; sector.dim()];
    h.apply(t, v, &mut out)?;
    Ok(out)
}

/// A real-symmetric operator stored as diagonal plus upper-triangle
/// triplets; Hermiticity is structural.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    pub dim: usize,
    pub diagonal: Vec<f64>,
    /// (row, col, coefficient) with row < col; the transpose entry is implied
    pub off_diagonal: Vec<(u32, u32, f64)>,
}

impl HermitianOperator {
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            m[(i, i)] = self.diagonal[i];
        }
        for &(r, c, v) in &self.off_diagonal {
            m[(r as usize, c as usize)] += v;
            m[(c as usize, r as usize)] += v;
        }
        m
    }
}

/// Gaudin Hamiltonian Ĥ_j = t ŝ_j^z − 2g Σ_{k≠j} (ŝ_j·ŝ_k)/(ε_j − ε_k),
/// materialized dense-sparse for verification at small N. `site` is the
/// 1-based spin index j.
pub fn build_gaudin(
    site: usize,
    t: f64,
    g: f64,
    levels: &EnergyLevels,
    sector: &SpinSector,
) -> Result<HermitianOperator> {
    let n = sector.n_spins();
    if levels.len() != n {
        return validation("levels length does not match sector");
    }
    if site < 1 || site > n {
        return validation(format!("spin index {site} outside 1..={n}"));
    }
    check_g(g)?;
    let dim = sector.dim();
    let mut diagonal = vec![0.0; dim];
    let mut off_diagonal = Vec::new();
    let eps_j = levels.get(site);
    for i in 0..dim {
        let ms = sector.state(i);
        let sz_j = ms.sz(site);
        let mut d = t * sz_j;
        for k in 1..=n {
            if k == site {
                continue;
            }
            let inv = 1.0 / (eps_j - levels.get(k));
            // z·z part of ŝ_j·ŝ_k
            d -= 2.0 * g * sz_j * ms.sz(k) * inv;
            // transverse part hops when the two spins are opposite
            if ms.is_up(k) != ms.is_up(site) {
                let p = sector
                    .index_of(ms.toggled(site, k))
                    .expect("swap conserves magnetization");
                if p > i {
                    off_diagonal.push((i as u32, p as u32, -g * inv));
                }
            }
        }
        diagonal[i] = d;
    }
    Ok(HermitianOperator {
        dim,
        diagonal,
        off_diagonal,
    })
}

/// Max-norm of A·B − B·A.
pub fn commutator_max_norm(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let c = a * b - b * a;
    c.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::SpinSector;

    const I1: Complex64 = Complex64::new(1.0, 0.0);

    #[test]
    fn two_spin_bcs_matrix() {
        // basis {|↑↓⟩, |↓↑⟩}: [[(ε₁−ε₂)/2, −g/t], [−g/t, (ε₂−ε₁)/2]]
        let sector = SpinSector::new(2, 0).unwrap();
        let levels = EnergyLevels::explicit(vec![0.3, 1.1]).unwrap();
        let (g, t) = (0.7, 2.0);
        let h = Hamiltonian::bcs(&sector, &levels, g).unwrap();
        let m = h.dense(t).unwrap();
        let d = (0.3 - 1.1) / 2.0;
        assert!((m[(0, 0)] - d).abs() < 1e-15);
        assert!((m[(1, 1)] + d).abs() < 1e-15);
        assert!((m[(0, 1)] + g / t).abs() < 1e-15);
        assert!((m[(1, 0)] + g / t).abs() < 1e-15);
    }

    #[test]
    fn g_zero_is_diagonal() {
        let sector = SpinSector::new(4, 0).unwrap();
        let levels = EnergyLevels::jittered(4, 1).unwrap();
        let h = Hamiltonian::bcs(&sector, &levels, 0.0).unwrap();
        let v: Vec<Complex64> = (0..6).map(|i| I1 * (i as f64 + 1.0)).collect();
        let mut out = vec![Complex64::ZERO; 6];
        h.apply(1.3, &v, &mut out).unwrap();
        for i in 0..6 {
            let expect = ising_energy(sector.state(i), &levels) * v[i];
            assert!((out[i] - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn uniform_vector_is_hop_eigenvector() {
        // hopping alone sends the uniform vector to −(g/t)·n_up·n_down·u
        let sector = SpinSector::new(4, 0).unwrap();
        let n_updown = (sector.n_up() * sector.n_down()) as f64;
        let couplings = ThreeBodyCouplings::from_factors(vec![0.0; 4]);
        let (g, t) = (0.9, 3.0);
        let u = vec![I1; sector.dim()];
        let out = apply_three_body(t, g, &couplings, &sector, &u).unwrap();
        for o in out {
            assert!((o + I1 * (g / t) * n_updown).norm() < 1e-14);
        }
        // brute-force partner count: every state reaches n_up·n_down others
        let h = Hamiltonian::bcs(&sector, &EnergyLevels::equidistant(4).unwrap(), g).unwrap();
        let m = h.dense(t).unwrap();
        for i in 0..sector.dim() {
            let count = (0..sector.dim())
                .filter(|&r| r != i && m[(r, i)] != 0.0)
                .count();
            assert_eq!(count, sector.n_up() * sector.n_down());
        }
    }

    #[test]
    fn rejects_nonpositive_time() {
        let sector = SpinSector::new(2, 0).unwrap();
        let levels = EnergyLevels::equidistant(2).unwrap();
        let h = Hamiltonian::bcs(&sector, &levels, 0.5).unwrap();
        let v = vec![I1; 2];
        let mut out = vec![Complex64::ZERO; 2];
        assert!(h.apply(0.0, &v, &mut out).is_err());
        assert!(h.apply(-1.0, &v, &mut out).is_err());
    }

    #[test]
    fn dense_is_symmetric_and_matches_apply() {
        let sector = SpinSector::new(6, 0).unwrap();
        let levels = EnergyLevels::jittered(6, 5).unwrap();
        let h = Hamiltonian::bcs(&sector, &levels, 0.42).unwrap();
        let m = h.dense(0.8).unwrap();
        for i in 0..m.nrows() {
            for j in 0..i {
                assert_eq!(m[(i, j)], m[(j, i)]);
            }
        }
        // H·e_k column check against apply, both threaded and not
        for k in [0usize, 7, 19] {
            let mut v = vec![Complex64::ZERO; sector.dim()];
            v[k] = I1;
            let mut out = vec![Complex64::ZERO; sector.dim()];
            h.apply(0.8, &v, &mut out).unwrap();
            let mut out_seq = vec![Complex64::ZERO; sector.dim()];
            h.apply_seq(0.8, &v, &mut out_seq).unwrap();
            for i in 0..sector.dim() {
                assert!((out[i].re - m[(i, k)]).abs() < 1e-15);
                assert_eq!(out[i], out_seq[i]);
            }
        }
    }

    #[test]
    fn three_body_single_triple() {
        // N=3: ordered sum = 3!·J₁J₂J₃·s₁s₂s₃
        let sector = SpinSector::new(3, 1).unwrap();
        let factors = vec![0.4, -1.1, 0.9];
        let c = ThreeBodyCouplings::from_factors(factors.clone());
        let h = Hamiltonian::three_body(&sector, &c, 0.0).unwrap();
        for i in 0..sector.dim() {
            let ms = sector.state(i);
            let expect = 6.0
                * factors[0]
                * factors[1]
                * factors[2]
                * ms.sz(1)
                * ms.sz(2)
                * ms.sz(3);
            assert!((h.ising_diag()[i] - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn three_body_diag_matches_brute_force() {
        let sector = SpinSector::new(6, 0).unwrap();
        let c = ThreeBodyCouplings::gaussian(6, 0.1, 11).unwrap();
        let h = Hamiltonian::three_body(&sector, &c, 0.0).unwrap();
        for i in 0..sector.dim() {
            let ms = sector.state(i);
            let mut brute = 0.0;
            for a in 1..=6 {
                for b in 1..=6 {
                    for d in 1..=6 {
                        if a != b && b != d && a != d {
                            brute += c.factors[a - 1]
                                * c.factors[b - 1]
                                * c.factors[d - 1]
                                * ms.sz(a)
                                * ms.sz(b)
                                * ms.sz(d);
                        }
                    }
                }
            }
            assert!((h.ising_diag()[i] - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn gaudin_two_spin_identity() {
        // Ĥ₁ − Ĥ₂ = t(ŝ₁^z − ŝ₂^z) − 4g ŝ₁·ŝ₂/(ε₁−ε₂), checked entrywise
        let sector = SpinSector::new(2, 0).unwrap();
        let levels = EnergyLevels::explicit(vec![0.4, 1.0]).unwrap();
        let (t, g) = (1.7, 0.6);
        let h1 = build_gaudin(1, t, g, &levels, &sector).unwrap().to_dense();
        let h2 = build_gaudin(2, t, g, &levels, &sector).unwrap().to_dense();
        let diff = h1 - h2;
        let inv = 1.0 / (0.4 - 1.0);
        // on {|↑↓⟩, |↓↑⟩}: ŝ₁·ŝ₂ = [[−1/4, 1/2], [1/2, −1/4]], ŝ₁^z−ŝ₂^z = diag(1, −1)
        let expect = |r: usize, c: usize| -> f64 {
            let s_dot = if r == c { -0.25 } else { 0.5 };
            let tz = if r == c {
                t * if r == 0 { 1.0 } else { -1.0 }
            } else {
                0.0
            };
            tz - 4.0 * g * s_dot * inv
        };
        for r in 0..2 {
            for c in 0..2 {
                assert!((diff[(r, c)] - expect(r, c)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gaudin_family_commutes_with_bcs() {
        let sector = SpinSector::new(6, 0).unwrap();
        let levels = EnergyLevels::jittered(6, 21).unwrap();
        let g = 0.8;
        let h = Hamiltonian::bcs(&sector, &levels, g).unwrap();
        for &t in &[0.5, 1.0, 5.0] {
            let hb = h.dense(t).unwrap();
            for j in 1..=6 {
                let hj = build_gaudin(j, t, g, &levels, &sector).unwrap().to_dense();
                let r = commutator_max_norm(&hb, &hj);
                assert!(r <= 1e-10, "[H_BCS, H_{j}] = {r} at t={t}");
            }
        }
    }

    #[test]
    fn gaudin_sum_is_total_sz() {
        // Σ_j Ĥ_j = t·S_tot^z: the pairwise terms cancel
        let sector = SpinSector::new(4, 2).unwrap();
        let levels = EnergyLevels::jittered(4, 2).unwrap();
        let (t, g) = (0.9, 1.3);
        let mut sum = DMatrix::zeros(sector.dim(), sector.dim());
        for j in 1..=4 {
            sum += build_gaudin(j, t, g, &levels, &sector).unwrap().to_dense();
        }
        let expect = t * sector.two_sz() as f64 / 2.0;
        for r in 0..sector.dim() {
            for c in 0..sector.dim() {
                let want = if r == c { expect } else { 0.0 };
                assert!((sum[(r, c)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn compatibility_conditions() {
        // ∂_{ε_j} Ĥ_BCS = ∂_t Ĥ_j (FD in t vs analytic ŝ_j^z) and
        // ∂_{ε_j} Ĥ_i = ∂_{ε_i} Ĥ_j (central FD both sides)
        let n = 6;
        let sector = SpinSector::new(n, 0).unwrap();
        let base = vec![1.0, 1.7, 2.3, 3.1, 4.0, 4.9];
        let levels = EnergyLevels::explicit(base.clone()).unwrap();
        let (t, g) = (1.1, 0.7);

        let dt = 1e-4;
        for j in 1..=n {
            let hp = build_gaudin(j, t + dt, g, &levels, &sector).unwrap().to_dense();
            let hm = build_gaudin(j, t - dt, g, &levels, &sector).unwrap().to_dense();
            let fd = (hp - hm) / (2.0 * dt);
            for i in 0..sector.dim() {
                for c in 0..sector.dim() {
                    let want = if i == c { sector.state(i).sz(j) } else { 0.0 };
                    assert!((fd[(i, c)] - want).abs() < 1e-10);
                }
            }
        }

        let de = 1e-5;
        let gaudin_at = |site: usize, shift_idx: usize, delta: f64| {
            let mut eps = base.clone();
            eps[shift_idx] += delta;
            let l = EnergyLevels::explicit(eps).unwrap();
            build_gaudin(site, t, g, &l, &sector).unwrap().to_dense()
        };
        for i in 1..=n {
            for j in (i + 1)..=n {
                let d_i_by_j = (gaudin_at(i, j - 1, de) - gaudin_at(i, j - 1, -de)) / (2.0 * de);
                let d_j_by_i = (gaudin_at(j, i - 1, de) - gaudin_at(j, i - 1, -de)) / (2.0 * de);
                let diff = &d_i_by_j - &d_j_by_i;
                let r = diff.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
                assert!(r <= 1e-8, "compatibility residual {r} at (i,j)=({i},{j})");
            }
        }
    }

    #[test]
    fn hop_conserves_magnetization() {
        // structural: every partner index is inside the sector table
        let sector = SpinSector::new(8, 2).unwrap();
        let (partners, ppr) = hop_partners(&sector);
        assert_eq!(ppr, sector.n_up() * sector.n_down());
        assert_eq!(partners.len(), sector.dim() * ppr);
        assert!(partners.iter().all(|&p| (p as usize) < sector.dim()));
    }

    #[test]
    fn gaussian_couplings_deterministic() {
        let a = ThreeBodyCouplings::gaussian(12, 0.1, 4).unwrap();
        let b = ThreeBodyCouplings::gaussian(12, 0.1, 4).unwrap();
        assert_eq!(a.factors, b.factors);
        assert_eq!(a.variance, 0.1);
    }
}
