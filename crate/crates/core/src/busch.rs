//! Transcendental relation for the relative/hyperangular energy of two
//! contact-interacting particles in an isotropic harmonic trap, its root
//! solver, and the two asymptotic series for the bound branch.
//!
//! Everything is in oscillator units: energies in ħω, the scattering length
//! in units of a_ho, entered as its inverse `inv_a0` so that unitarity
//! (|a0| → ∞) is the regular value `inv_a0 = 0`.

use crate::special::gamma_ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuschError {
    /// Γ(3/4 - E/2) has a pole at E = 3/2 + 2n; the relation has no value.
    #[error("gamma-ratio pole at energy {energy}")]
    Pole { energy: f64 },
    #[error("failed to bracket root {index} in [{lo}, {hi}] for target {target}")]
    Bracketing {
        index: usize,
        lo: f64,
        hi: f64,
        target: f64,
    },
    #[error("series requires 0 < a0 < 1 (a_ho units), got {a0}")]
    SeriesDomain { a0: f64 },
}

/// One root of the transcendental relation, indexed by the hyperangular
/// branch number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuschRoot {
    pub n_chi: usize,
    /// Dimensionless energy in ħω.
    pub energy: f64,
}

/// √2 Γ(3/4 - E/2) / Γ(1/4 - E/2).
///
/// Vanishes exactly at the denominator poles E = 1/2 + 2n and has poles of
/// its own at E = 3/2 + 2n, reported as [`BuschError::Pole`].
pub fn busch_lhs(energy: f64) -> Result<f64, BuschError> {
    let a = 0.75 - 0.5 * energy;
    let b = 0.25 - 0.5 * energy;
    match gamma_ratio(a, b) {
        Some(r) => Ok(std::f64::consts::SQRT_2 * r),
        None => Err(BuschError::Pole { energy }),
    }
}

/// Left endpoint of the bracket containing root `n`; the right endpoint is
/// the numerator pole 3/2 + 2n. Between consecutive poles the left-hand
/// side falls monotonically from +∞ to -∞, so every finite target is hit
/// exactly once per interval.
fn bracket_lo(n: usize, inv_a0: f64) -> f64 {
    if n == 0 {
        // The molecular branch dives to -1/a0² for a0 → 0⁺.
        (-inv_a0 * inv_a0 - 10.0).min(0.0)
    } else {
        1.5 + 2.0 * (n as f64 - 1.0)
    }
}

/// The `n_max` lowest roots of `busch_lhs(E) = inv_a0`, refined until the
/// residual is below 1e-12. For a0 > 0 the lowest root is the negative
/// molecular branch.
pub fn solve_busch_roots(inv_a0: f64, n_max: usize) -> Result<Vec<BuschRoot>, BuschError> {
    assert!(n_max >= 1, "n_max must be at least 1");
    let mut roots = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let lo_edge = bracket_lo(n, inv_a0);
        let hi_edge = 1.5 + 2.0 * n as f64;
        let energy = bisect_branch(lo_edge, hi_edge, inv_a0).ok_or(BuschError::Bracketing {
            index: n,
            lo: lo_edge,
            hi: hi_edge,
            target: inv_a0,
        })?;
        roots.push(BuschRoot { n_chi: n, energy });
    }
    Ok(roots)
}

/// Bisection on g(E) = lhs(E) - target over an interval where g runs from
/// +∞ down to -∞, followed by secant polishing of the residual.
fn bisect_branch(lo_edge: f64, hi_edge: f64, target: f64) -> Option<f64> {
    let margin = 1e-9 * (1.0 + hi_edge.abs());
    let mut lo = lo_edge + if lo_edge.is_finite() { margin } else { 0.0 };
    let mut hi = hi_edge - margin;
    let g = |e: f64| busch_lhs(e).map(|v| v - target);

    // Walk the endpoints inward if they sit too close to a pole to evaluate.
    let mut g_lo = g(lo).ok()?;
    let mut g_hi = g(hi).ok()?;
    if g_lo < 0.0 || g_hi > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid).ok()?;
        if g_mid >= 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
        if hi - lo < 1e-15 * (1.0 + mid.abs()) {
            break;
        }
    }
    // Secant refinement; the bisected interval already brackets the root
    // tightly, this just pushes the residual to the 1e-13 level.
    let mut e0 = lo;
    let mut e1 = hi;
    let mut f0 = g_lo;
    let mut f1 = g_hi;
    for _ in 0..8 {
        if (f1 - f0).abs() < f64::MIN_POSITIVE {
            break;
        }
        let e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
        if !e2.is_finite() || e2 <= lo_edge || e2 >= hi_edge {
            break;
        }
        let f2 = g(e2).ok()?;
        e0 = e1;
        f0 = f1;
        e1 = e2;
        f1 = f2;
        if f2.abs() < 1e-14 {
            break;
        }
    }
    Some(if f1.abs() <= f0.abs() { e1 } else { e0 })
}

/// Bound-branch series E = -(1/a0)² + a0²/8, valid for 0 < a0 < 1 at r0 = 0.
pub fn series_small_a0_3d(a0: f64) -> Result<f64, BuschError> {
    if !(a0 > 0.0 && a0 < 1.0) {
        return Err(BuschError::SeriesDomain { a0 });
    }
    Ok(-1.0 / (a0 * a0) + a0 * a0 / 8.0)
}

/// Bound-branch series E = -(1/a0)² + a0²/24 for the thin-shell (large r0)
/// regime, same validity window.
pub fn series_large_r0(a0: f64) -> Result<f64, BuschError> {
    if !(a0 > 0.0 && a0 < 1.0) {
        return Err(BuschError::SeriesDomain { a0 });
    }
    Ok(-1.0 / (a0 * a0) + a0 * a0 / 24.0)
}

/// One level of the separable r0 = 0 spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableLevel {
    pub energy: f64,
    pub n_xi: usize,
    pub n_chi: usize,
}

/// Full two-particle spectrum at r0 = 0: E = E_{n_χ} + 2 n_ξ + 3/2, sorted
/// ascending.
pub fn spectrum_r0_zero(
    inv_a0: f64,
    n_xi_max: usize,
    n_chi_max: usize,
) -> Result<Vec<SeparableLevel>, BuschError> {
    let roots = solve_busch_roots(inv_a0, n_chi_max + 1)?;
    let mut levels = Vec::with_capacity((n_xi_max + 1) * (n_chi_max + 1));
    for root in &roots {
        for n_xi in 0..=n_xi_max {
            levels.push(SeparableLevel {
                energy: root.energy + 2.0 * n_xi as f64 + 1.5,
                n_xi,
                n_chi: root.n_chi,
            });
        }
    }
    levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(levels)
}
