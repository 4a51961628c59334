//! Fixed-magnetization sector of N spins-1/2: bit-encoded microstates,
//! the enumerated basis with bidirectional index maps, and microstate-level
//! utilities (accuracy η, ground state of the Ising part).
//!
//! Conventions, fixed once and used everywhere:
//! - spins are indexed 1..=N by ascending single-spin energy ε;
//! - bit (j−1) of the mask set ⇔ s_j^z = +1/2;
//! - the basis is ordered by ascending bit value.

use crate::error::{capacity, validation, AnnealError, Result};
use crate::levels::EnergyLevels;

/// Hard cap on N for basis enumeration: the reverse index is a dense
/// table of 2^N entries.
pub const MAX_SECTOR_SPINS: usize = 24;

/// A definite assignment of every s_j^z, packed into a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Microstate(pub u64);

impl Microstate {
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Number of up spins.
    pub fn n_up(self) -> u32 {
        self.0.count_ones()
    }

    /// Is spin j (1-based) up?
    pub fn is_up(self, j: usize) -> bool {
        debug_assert!(j >= 1);
        self.0 >> (j - 1) & 1 == 1
    }

    /// s_j^z = ±1/2 for spin j (1-based).
    pub fn sz(self, j: usize) -> f64 {
        if self.is_up(j) {
            0.5
        } else {
            -0.5
        }
    }

    /// Twice the total magnetization, Σ_j 2 s_j^z.
    pub fn two_sz(self, n_spins: usize) -> i32 {
        2 * self.n_up() as i32 - n_spins as i32
    }

    /// Flip spins j and k (1-based).
    pub fn toggled(self, j: usize, k: usize) -> Microstate {
        Microstate(self.0 ^ (1 << (j - 1)) ^ (1 << (k - 1)))
    }

    /// "↑↓↑↓"-style string, spin 1 leftmost.
    pub fn to_arrows(self, n_spins: usize) -> String {
        (1..=n_spins)
            .map(|j| if self.is_up(j) { '↑' } else { '↓' })
            .collect()
    }

    /// "1010"-style string, spin 1 leftmost, 1 = up.
    pub fn to_bitstring(self, n_spins: usize) -> String {
        (1..=n_spins)
            .map(|j| if self.is_up(j) { '1' } else { '0' })
            .collect()
    }

    /// Parse either an arrow string or a 0/1 bitstring (spin 1 leftmost).
    pub fn parse(s: &str) -> Result<(Microstate, usize)> {
        let mut bits = 0u64;
        let mut n = 0usize;
        for c in s.chars() {
            let up = match c {
                '↑' | '1' => true,
                '↓' | '0' => false,
                _ => return validation(format!("invalid microstate character {c:?} in {s:?}")),
            };
            if n >= 64 {
                return validation("microstate string longer than 64 spins");
            }
            if up {
                bits |= 1 << n;
            }
            n += 1;
        }
        if n == 0 {
            return validation("empty microstate string");
        }
        Ok((Microstate(bits), n))
    }
}

/// The enumerated basis of all microstates with fixed N and total
/// magnetization, with O(1) lookup in both directions.
#[derive(Debug, Clone)]
pub struct SpinSector {
    n_spins: usize,
    two_sz: i32,
    basis: Vec<Microstate>,
    /// Dense reverse map: mask → basis position (u32::MAX = not in sector).
    index: Vec<u32>,
}

impl SpinSector {
    /// Enumerate the sector with `n_spins` spins and total 2·S_tot^z = `two_sz`.
    pub fn new(n_spins: usize, two_sz: i32) -> Result<Self> {
        if n_spins < 2 {
            return validation(format!("n_spins must be ≥ 2, got {n_spins}"));
        }
        if n_spins > MAX_SECTOR_SPINS {
            return capacity(format!(
                "n_spins = {n_spins} exceeds the sector enumeration cap {MAX_SECTOR_SPINS}"
            ));
        }
        if (n_spins as i32 + two_sz) % 2 != 0 {
            return validation(format!(
                "parity mismatch: n_spins = {n_spins} and two_sz = {two_sz} must have equal parity"
            ));
        }
        let n_up = (n_spins as i32 + two_sz) / 2;
        if n_up < 0 || n_up > n_spins as i32 {
            return validation(format!(
                "two_sz = {two_sz} is outside the reachable range for {n_spins} spins"
            ));
        }
        let n_up = n_up as usize;

        let mut basis = Vec::with_capacity(binomial(n_spins, n_up));
        if n_up == 0 {
            basis.push(Microstate(0));
        } else {
            // Gosper's hack walks same-popcount masks in ascending order.
            let limit = 1u64 << n_spins;
            let mut v = (1u64 << n_up) - 1;
            while v < limit {
                basis.push(Microstate(v));
                let c = v & v.wrapping_neg();
                let r = v + c;
                v = (((r ^ v) >> 2) / c) | r;
            }
        }

        let mut index = vec![u32::MAX; 1 << n_spins];
        for (i, ms) in basis.iter().enumerate() {
            index[ms.0 as usize] = i as u32;
        }
        Ok(Self {
            n_spins,
            two_sz,
            basis,
            index,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn two_sz(&self) -> i32 {
        self.two_sz
    }

    pub fn n_up(&self) -> usize {
        ((self.n_spins as i32 + self.two_sz) / 2) as usize
    }

    pub fn n_down(&self) -> usize {
        self.n_spins - self.n_up()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn state(&self, i: usize) -> Microstate {
        self.basis[i]
    }

    pub fn basis(&self) -> &[Microstate] {
        &self.basis
    }

    /// Basis position of `ms`, or None if it lies outside the sector.
    pub fn index_of(&self, ms: Microstate) -> Option<usize> {
        if ms.0 >= self.index.len() as u64 {
            return None;
        }
        match self.index[ms.0 as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }
}

/// Accuracy η = (4/N) Σ_{k=1}^{N/2} s_k^z of a microstate. 1 for the sorted
/// ground state at half filling, 0 for no information.
pub fn eta_of(ms: Microstate, n_spins: usize) -> Result<f64> {
    if n_spins % 2 != 0 {
        return validation(format!("eta is defined for even N, got {n_spins}"));
    }
    let lower = (1u64 << (n_spins / 2)) - 1;
    let up_lower = (ms.0 & lower).count_ones() as f64;
    Ok(4.0 * up_lower / n_spins as f64 - 1.0)
}

/// The microstate minimizing Σ_j ε_j s_j^z within the sector: the n_up
/// lowest-ε spins up, the rest down. Levels are kept sorted ascending, so
/// this is the contiguous low-index block.
pub fn ising_ground_state(sector: &SpinSector, levels: &EnergyLevels) -> Result<Microstate> {
    if levels.len() != sector.n_spins() {
        return validation(format!(
            "levels length {} does not match sector n_spins {}",
            levels.len(),
            sector.n_spins()
        ));
    }
    let n_up = sector.n_up();
    let ms = if n_up == 0 {
        Microstate(0)
    } else {
        Microstate((1u64 << n_up) - 1)
    };
    debug_assert!(sector.index_of(ms).is_some());
    Ok(ms)
}

/// Ising energy Σ_j ε_j s_j^z of a microstate.
pub fn ising_energy(ms: Microstate, levels: &EnergyLevels) -> f64 {
    levels
        .eps()
        .iter()
        .enumerate()
        .map(|(i, &e)| e * ms.sz(i + 1))
        .sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

impl std::fmt::Display for Microstate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:b}", self.0)
    }
}

#[allow(dead_code)]
fn _assert_error_kinds(e: AnnealError) -> i32 {
    match e {
        AnnealError::Validation(_) => 2,
        AnnealError::Capacity(_) => 3,
        AnnealError::Numerical(_) => 4,
    }
}
