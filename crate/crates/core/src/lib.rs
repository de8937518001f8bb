//! Energy spectra and wave functions of two bosons in a spherically
//! symmetric shell trap with a zero-range s-wave interaction, and detection
//! of the confinement-induced resonances that appear as avoided crossings
//! when the shell radius is tuned.
//!
//! The crate has two solver routes: an exact coupled-channel
//! diagonalization in relative/center-of-mass coordinates ([`coupled`]) and
//! an adiabatic hyperspherical treatment ([`hyper`]) used to attach
//! (n_ξ, n_χ) configuration labels to the exact states. The resonance
//! machinery ([`resonance`]) locates avoided crossings from fidelity-change
//! scans and classifies them as bound-trap or trap-trap.

pub mod busch;
pub mod eigen1d;
pub mod exec;
pub mod model;
pub mod special;

pub use busch::{busch_lhs, solve_busch_roots, BuschRoot};
pub use model::{Channel, ModelParams, Parity, Scattering, Truncation};
