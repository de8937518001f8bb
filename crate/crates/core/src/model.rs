//! Physical parameters, quantum-number bookkeeping and channel enumeration.
//!
//! All quantities are dimensionless oscillator units: ħ = m = ω = 1, lengths
//! in a_ho = √(ħ/(mω)) and energies in ħω. The shell trap for each particle
//! is ½(|r_i| - r0)², so `r0` is the shell radius and `a0` the s-wave
//! scattering length, both in units of a_ho.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("scattering length must be nonzero")]
    ZeroScatteringLength,
    #[error("a0 = {a0} and inv_a0 = {inv_a0} are inconsistent")]
    InconsistentScattering { a0: f64, inv_a0: f64 },
    #[error("shell radius must be nonnegative, got {0}")]
    NegativeShellRadius(f64),
    #[error("fidelity step delta_r0 must be positive, got {0}")]
    NonPositiveFidelityStep(f64),
    #[error("|M_J| = {m_j} exceeds J = {j}")]
    ProjectionOutOfRange { j: u32, m_j: i32 },
    #[error("no admissible channels")]
    NoAdmissibleChannels,
    #[error("{what} must be at least {min}, got {got}")]
    CountTooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("grid extent must be positive, got {0}")]
    NonPositiveExtent(f64),
    #[error("multipole cutoff k_max must be even, got {0}")]
    OddMultipoleCutoff(u32),
    #[error("quadrature stride {stride} must divide the radial interval count {intervals}")]
    StrideMismatch { stride: usize, intervals: usize },
    #[error("quadrature node count must be odd for Simpson weights (stride {stride}, intervals {intervals})")]
    SimpsonParity { stride: usize, intervals: usize },
    #[error("chi grid interval count must be even, got {0}")]
    OddChiIntervals(usize),
    #[error("basis size {n_max} needs at least {needed} radial intervals, got {got}")]
    BasisVsGrid {
        n_max: usize,
        needed: usize,
        got: usize,
    },
    #[error("xi grid needs at least 16 points, got {0}")]
    XiGridTooSmall(usize),
    #[error("fidelity step delta_r0 = {delta_r0} must be smaller than the scan step {step}")]
    FidelityStepVsScan { delta_r0: f64, step: f64 },
}

/// Scattering length stored together with its inverse so unitarity
/// (|a0| → ∞) is the finite value inv_a0 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scattering {
    a0: f64,
    inv_a0: f64,
}

impl Scattering {
    pub fn from_a0(a0: f64) -> Result<Self, ModelError> {
        if a0 == 0.0 || !a0.is_finite() && a0.is_nan() {
            return Err(ModelError::ZeroScatteringLength);
        }
        if a0.is_infinite() {
            return Ok(Self { a0, inv_a0: 0.0 });
        }
        Ok(Self { a0, inv_a0: 1.0 / a0 })
    }

    pub fn from_inv_a0(inv_a0: f64) -> Result<Self, ModelError> {
        if !inv_a0.is_finite() {
            return Err(ModelError::ZeroScatteringLength);
        }
        let a0 = if inv_a0 == 0.0 {
            f64::INFINITY
        } else {
            1.0 / inv_a0
        };
        Ok(Self { a0, inv_a0 })
    }

    pub fn unitarity() -> Self {
        Self {
            a0: f64::INFINITY,
            inv_a0: 0.0,
        }
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn inv_a0(&self) -> f64 {
        self.inv_a0
    }

    fn check(&self) -> Result<(), ModelError> {
        let ok = if self.inv_a0 == 0.0 {
            self.a0.is_infinite()
        } else {
            (self.a0 * self.inv_a0 - 1.0).abs() < 1e-12
        };
        if ok {
            Ok(())
        } else {
            Err(ModelError::InconsistentScattering {
                a0: self.a0,
                inv_a0: self.inv_a0,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(&self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn of_channel(l_rel: u32, l_com: u32) -> Parity {
        if (l_rel + l_com) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Physical parameters of one spectral block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub scattering: Scattering,
    /// Shell radius in a_ho.
    pub r0: f64,
    /// Step used by the fidelity-change finite difference.
    pub delta_r0: f64,
    /// Total angular momentum J of the pair.
    pub total_j: u32,
    /// Projection M_J; the spectra are M_J-independent.
    pub m_j: i32,
    pub parity: Parity,
}

impl ModelParams {
    /// J = 0 positive-parity block, the configuration all scans default to.
    pub fn j0(scattering: Scattering, r0: f64) -> Self {
        Self {
            scattering,
            r0,
            delta_r0: 1e-3,
            total_j: 0,
            m_j: 0,
            parity: Parity::Even,
        }
    }
}

/// One coupled angular-momentum channel (ℓ, L): relative angular momentum
/// ℓ (even, bosonic exchange symmetry) and center-of-mass angular momentum
/// L, coupled to the block's total J.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Channel {
    pub l_rel: u32,
    pub l_com: u32,
}

impl Channel {
    pub fn label(&self) -> String {
        format!("l{}L{}", self.l_rel, self.l_com)
    }
}

/// Uniform radial grid specification; the actual extent grows with the
/// shell radius as max(extent_floor, r0 + 8).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGridSpec {
    pub extent_floor: f64,
    pub n_intervals: usize,
    /// Subsampling stride of the eigenfunction grid used as the 2D
    /// quadrature grid in the Hamiltonian assembly.
    pub quad_stride: usize,
}

impl RadialGridSpec {
    pub fn extent_for(&self, r0: f64) -> f64 {
        self.extent_floor.max(r0 + 8.0)
    }
}

/// Hyperradial tabulation grid: [min, √2 r0 + pad] sampled with `points`
/// nodes for the adiabatic curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiGridSpec {
    pub min: f64,
    pub pad: f64,
    pub points: usize,
}

/// Numerical truncations and grids for one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Radial basis size per channel, relative motion.
    pub n_rel_max: usize,
    /// Radial basis size per channel, center-of-mass motion.
    pub n_com_max: usize,
    /// Largest relative/CoM angular momentum admitted to a channel.
    pub l_max: u32,
    /// Largest (even) multipole kept in the coupling expansion.
    pub k_max: u32,
    pub radial: RadialGridSpec,
    pub xi: XiGridSpec,
    /// Interval count of the hyperangular grid on [0, π/2]; kept even so
    /// χ = π/4 is a node.
    pub chi_intervals: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            n_rel_max: 20,
            n_com_max: 20,
            l_max: 6,
            k_max: 16,
            radial: RadialGridSpec {
                extent_floor: 12.0,
                n_intervals: 2000,
                quad_stride: 2,
            },
            xi: XiGridSpec {
                min: 0.05,
                pad: 10.0,
                points: 400,
            },
            chi_intervals: 1000,
        }
    }
}

impl Truncation {
    /// Cheaper configuration for dense r0 scans; validated by the
    /// convergence tests against the default truncation.
    pub fn scan() -> Self {
        Self {
            n_rel_max: 14,
            n_com_max: 14,
            l_max: 4,
            k_max: 12,
            radial: RadialGridSpec {
                extent_floor: 12.0,
                n_intervals: 1600,
                quad_stride: 4,
            },
            ..Self::default()
        }
    }
}

/// Channels admitted by bosonic symmetry (even ℓ), the triangle rule
/// |ℓ - L| <= J <= ℓ + L and the block parity, ordered by ℓ then L.
pub fn enumerate_channels(
    params: &ModelParams,
    trunc: &Truncation,
) -> Result<Vec<Channel>, ModelError> {
    let j = params.total_j;
    let mut channels = Vec::new();
    let mut l_rel = 0;
    while l_rel <= trunc.l_max {
        let lo = l_rel.abs_diff(j);
        let hi = l_rel + j;
        for l_com in lo..=hi {
            if Parity::of_channel(l_rel, l_com) == params.parity {
                channels.push(Channel { l_rel, l_com });
            }
        }
        l_rel += 2;
    }
    if channels.is_empty() {
        return Err(ModelError::NoAdmissibleChannels);
    }
    Ok(channels)
}

/// Parameters and truncation that passed every structural check, with the
/// channel list already enumerated.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckedConfig {
    pub params: ModelParams,
    pub trunc: Truncation,
    pub channels: Vec<Channel>,
}

/// Validate a configuration, collecting every violated constraint.
pub fn validate(params: &ModelParams, trunc: &Truncation) -> Result<CheckedConfig, Vec<ModelError>> {
    let mut errors = Vec::new();

    if let Err(e) = params.scattering.check() {
        errors.push(e);
    }
    if params.r0 < 0.0 || !params.r0.is_finite() {
        errors.push(ModelError::NegativeShellRadius(params.r0));
    }
    if !(params.delta_r0 > 0.0) {
        errors.push(ModelError::NonPositiveFidelityStep(params.delta_r0));
    }
    if params.m_j.unsigned_abs() > params.total_j {
        errors.push(ModelError::ProjectionOutOfRange {
            j: params.total_j,
            m_j: params.m_j,
        });
    }

    for (what, got) in [
        ("n_rel_max", trunc.n_rel_max),
        ("n_com_max", trunc.n_com_max),
        ("xi points", trunc.xi.points),
        ("chi intervals", trunc.chi_intervals),
    ] {
        if got < 1 {
            errors.push(ModelError::CountTooSmall { what, min: 1, got });
        }
    }
    if trunc.k_max % 2 != 0 {
        errors.push(ModelError::OddMultipoleCutoff(trunc.k_max));
    }
    if !(trunc.radial.extent_floor > 0.0) {
        errors.push(ModelError::NonPositiveExtent(trunc.radial.extent_floor));
    }
    if trunc.radial.quad_stride == 0
        || trunc.radial.n_intervals % trunc.radial.quad_stride.max(1) != 0
    {
        errors.push(ModelError::StrideMismatch {
            stride: trunc.radial.quad_stride,
            intervals: trunc.radial.n_intervals,
        });
    } else if (trunc.radial.n_intervals / trunc.radial.quad_stride) % 2 != 0 {
        errors.push(ModelError::SimpsonParity {
            stride: trunc.radial.quad_stride,
            intervals: trunc.radial.n_intervals,
        });
    }
    if trunc.chi_intervals % 2 != 0 {
        errors.push(ModelError::OddChiIntervals(trunc.chi_intervals));
    }
    let needed = 4 * trunc.n_rel_max.max(trunc.n_com_max);
    if trunc.radial.n_intervals < needed {
        errors.push(ModelError::BasisVsGrid {
            n_max: trunc.n_rel_max.max(trunc.n_com_max),
            needed,
            got: trunc.radial.n_intervals,
        });
    }
    if trunc.xi.points < 16 {
        errors.push(ModelError::XiGridTooSmall(trunc.xi.points));
    }
    if !(trunc.xi.min > 0.0) {
        errors.push(ModelError::NonPositiveExtent(trunc.xi.min));
    }

    let channels = match enumerate_channels(params, trunc) {
        Ok(ch) => ch,
        Err(e) => {
            errors.push(e);
            Vec::new()
        }
    };

    if errors.is_empty() {
        Ok(CheckedConfig {
            params: *params,
            trunc: *trunc,
            channels,
        })
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_j0(a0: f64, r0: f64) -> ModelParams {
        ModelParams::j0(Scattering::from_a0(a0).unwrap(), r0)
    }

    #[test]
    fn j0_even_parity_forces_diagonal_channels() {
        let trunc = Truncation {
            l_max: 4,
            ..Truncation::default()
        };
        let channels = enumerate_channels(&params_j0(0.53, 1.0), &trunc).unwrap();
        let expect: Vec<Channel> = [(0, 0), (2, 2), (4, 4)]
            .iter()
            .map(|&(l_rel, l_com)| Channel { l_rel, l_com })
            .collect();
        assert_eq!(channels, expect);
    }

    #[test]
    fn j1_odd_parity_channels() {
        let mut params = params_j0(0.53, 1.0);
        params.total_j = 1;
        params.parity = Parity::Odd;
        let trunc = Truncation {
            l_max: 2,
            ..Truncation::default()
        };
        let channels = enumerate_channels(&params, &trunc).unwrap();
        let expect: Vec<Channel> = [(0, 1), (2, 1), (2, 3)]
            .iter()
            .map(|&(l_rel, l_com)| Channel { l_rel, l_com })
            .collect();
        assert_eq!(channels, expect);
    }

    #[test]
    fn j0_odd_parity_has_no_channels() {
        let mut params = params_j0(0.53, 1.0);
        params.parity = Parity::Odd;
        assert_eq!(
            enumerate_channels(&params, &Truncation::default()),
            Err(ModelError::NoAdmissibleChannels)
        );
    }

    #[test]
    fn channel_invariants_hold_for_higher_j() {
        for j in 0..4 {
            for parity in [Parity::Even, Parity::Odd] {
                let mut params = params_j0(0.53, 1.0);
                params.total_j = j;
                params.parity = parity;
                let Ok(channels) = enumerate_channels(&params, &Truncation::default()) else {
                    continue;
                };
                for ch in &channels {
                    assert_eq!(ch.l_rel % 2, 0, "bosonic symmetry requires even ℓ");
                    assert!(ch.l_rel.abs_diff(ch.l_com) <= j && j <= ch.l_rel + ch.l_com);
                    assert_eq!(Parity::of_channel(ch.l_rel, ch.l_com), parity);
                }
                // deterministic ordering by (ℓ, L)
                let mut sorted = channels.clone();
                sorted.sort();
                assert_eq!(channels, sorted);
            }
        }
    }

    #[test]
    fn enumeration_is_idempotent() {
        let params = params_j0(0.53, 1.0);
        let trunc = Truncation::default();
        let a = enumerate_channels(&params, &trunc).unwrap();
        let b = enumerate_channels(&params, &trunc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validate_accepts_reference_configuration() {
        let checked = validate(&params_j0(0.53, 1.0), &Truncation::default()).unwrap();
        assert_eq!(checked.channels.len(), 4);
    }

    #[test]
    fn validate_rejects_bad_inputs() {
        let errs = validate(&params_j0(0.53, -1.0), &Truncation::default()).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ModelError::NegativeShellRadius(_))));

        let mut params = params_j0(0.53, 1.0);
        params.delta_r0 = 0.0;
        let errs = validate(&params, &Truncation::default()).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ModelError::NonPositiveFidelityStep(_))));

        let bad_trunc = Truncation {
            k_max: 7,
            ..Truncation::default()
        };
        let errs = validate(&params_j0(0.53, 1.0), &bad_trunc).unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, ModelError::OddMultipoleCutoff(7))));
    }

    #[test]
    fn unitarity_round_trip() {
        let s = Scattering::from_inv_a0(0.0).unwrap();
        assert!(s.a0().is_infinite());
        assert_eq!(s.inv_a0(), 0.0);
        assert!(Scattering::from_a0(0.0).is_err());
    }
}
