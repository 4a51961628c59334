//! Adiabatic spectrum scans over the annealing time and classification of
//! adjacent-level gap minima into exact crossings (integrable BCS case) vs
//! avoided crossings (the generic three-body model).

use crate::error::{capacity, validation, Result};
use crate::hamiltonian::Hamiltonian;
use crate::sweep::map_items;
use serde::Serialize;

/// Dense-eigendecomposition capacity cap.
pub const DENSE_DIAG_CAP: usize = 4000;

/// A refined gap below this is an exact crossing: true crossings bottom out
/// at eigensolver noise (~1e-12) while avoided gaps at these sizes stay
/// ≥ 1e-4, four orders of magnitude on each side.
pub const CROSSING_TOLERANCE: f64 = 1e-8;

/// Eigenvalue curves on a time grid.
#[derive(Debug, Clone)]
pub struct SpectrumScan {
    pub times: Vec<f64>,
    /// `eigenvalues[i]` = sorted spectrum at `times[i]`
    pub eigenvalues: Vec<Vec<f64>>,
}

/// `points` log-spaced values from t0 to t1 inclusive.
pub fn log_spaced(t0: f64, t1: f64, points: usize) -> Vec<f64> {
    assert!(t0 > 0.0 && t1 > t0 && points >= 2);
    let (l0, l1) = (t0.ln(), t1.ln());
    (0..points)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Full sorted spectrum at every grid time (grid points are independent and
/// run in parallel).
pub fn spectrum_scan(h: &Hamiltonian, t_grid: &[f64]) -> Result<SpectrumScan> {
    if h.dim() > DENSE_DIAG_CAP {
        return capacity(format!(
            "sector dimension {} exceeds the dense diagonalization cap {DENSE_DIAG_CAP}",
            h.dim()
        ));
    }
    if t_grid.len() < 2 {
        return validation("t_grid needs at least 2 points");
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) || t_grid[0] <= 0.0 {
        return validation("t_grid must be sorted ascending and positive");
    }
    let eigenvalues = map_items(t_grid, |&t| h.eigenvalues_sorted(t))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumScan {
        times: t_grid.to_vec(),
        eigenvalues,
    })
}

/// An interior local minimum of one adjacent-level gap on the scan grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GapCandidate {
    /// gap between sorted levels `level` and `level`+1
    pub level: usize,
    pub grid_index: usize,
    pub bracket: (f64, f64),
    pub gap_on_grid: f64,
}

/// Locate interior gap minima with grid value below `prefilter`.
pub fn find_gap_minima(scan: &SpectrumScan, prefilter: f64) -> Vec<GapCandidate> {
    let mut out = Vec::new();
    let n_levels = scan.eigenvalues[0].len();
    for level in 0..n_levels - 1 {
        let gap = |i: usize| scan.eigenvalues[i][level + 1] - scan.eigenvalues[i][level];
        for i in 1..scan.times.len() - 1 {
            let g = gap(i);
            if g < prefilter && g <= gap(i - 1) && g < gap(i + 1) {
                out.push(GapCandidate {
                    level,
                    grid_index: i,
                    bracket: (scan.times[i - 1], scan.times[i + 1]),
                    gap_on_grid: g,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    Crossing,
    Avoided,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RefinedGap {
    pub level: usize,
    pub t_star: f64,
    pub gap: f64,
    pub classification: GapClass,
    /// false when the minimum sat on the bracket edge (no interior minimum)
    pub interior: bool,
}

/// Golden-section refinement of a gap minimum given any eigenvalue oracle
/// (used directly by tests with toy two-level models).
pub fn refine_min_gap_with<F>(
    eigvals: F,
    bracket: (f64, f64),
    level: usize,
    crossing_tolerance: f64,
) -> Result<RefinedGap>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    if !(bracket.0 > 0.0 && bracket.1 > bracket.0) {
        return validation(format!("invalid bracket {bracket:?}"));
    }
    let gap_at = |t: f64| -> Result<f64> {
        let ev = eigvals(t)?;
        if level + 1 >= ev.len() {
            return validation(format!("level {level} out of range (dim {})", ev.len()));
        }
        Ok(ev[level + 1] - ev[level])
    };
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = bracket;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = gap_at(c)?;
    let mut fd = gap_at(d)?;
    for _ in 0..96 {
        if b - a < 1e-13 * b {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = gap_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = gap_at(d)?;
        }
    }
    let (t_star, gap) = if fc < fd { (c, fc) } else { (d, fd) };
    // edge values decide whether the minimum was interior at all
    let (f_lo, f_hi) = (gap_at(bracket.0)?, gap_at(bracket.1)?);
    let interior = gap <= f_lo && gap <= f_hi;
    Ok(RefinedGap {
        level,
        t_star,
        gap,
        classification: if gap < crossing_tolerance {
            GapClass::Crossing
        } else {
            GapClass::Avoided
        },
        interior,
    })
}

/// Refine one candidate against the model's spectrum.
pub fn refine_min_gap(
    h: &Hamiltonian,
    bracket: (f64, f64),
    level: usize,
) -> Result<RefinedGap> {
    refine_min_gap_with(|t| h.eigenvalues_sorted(t), bracket, level, CROSSING_TOLERANCE)
}

/// Scan-then-refine convenience: all interior minima below `prefilter`,
/// refined (in parallel) and classified.
pub fn gap_report(h: &Hamiltonian, scan: &SpectrumScan, prefilter: f64) -> Result<Vec<RefinedGap>> {
    let candidates = find_gap_minima(scan, prefilter);
    map_items(&candidates, |c| refine_min_gap(h, c.bracket, c.level))
        .into_iter()
        .collect()
}
