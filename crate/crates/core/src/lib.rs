//! Control synthesis for a driven two-level system by fast-forward scaling.
//!
//! The crate is organised bottom-up:
//!
//! * [`dynamics`] holds the state type, time grids, sampled drives and the
//!   fixed-step Schrödinger integrator every other module builds on.
//! * [`reference`] constructs the cosine detuning sweep and its reference
//!   trajectory.
//! * [`ffst`] implements magnification profiles, the phase residual
//!   β(t, f₂), closed-form phase roots, speed-controlled trajectory
//!   extraction and control synthesis.
//! * [`sta`] is the adiabatic-shortcut counterpart built on instantaneous
//!   eigenstates.
//! * [`itt`] splices speed-controlled trajectories into virtual trajectories
//!   and tunes their bridges with a Nelder–Mead simplex.
//! * [`analysis`] re-integrates synthesized controls and runs the
//!   diagnostic scans.
//! * [`device`] maps schedules onto flux-tunable transmon parameters.
//!
//! Units: the coupling g sets the unit system, so times are in g⁻¹ and
//! frequencies in g everywhere except [`device`].

// Negated float comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod device;
pub mod dynamics;
pub mod error;
pub mod ffst;
pub mod itt;
pub mod numeric;
pub mod reference;
pub mod scenario;
pub mod sta;

pub use error::{Error, Result};
