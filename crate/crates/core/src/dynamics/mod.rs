//! Two-level state, sampled drives and the Schrödinger integrator.
//!
//! States live on the {|10⟩, |01⟩} subspace. The second qubit's frequency
//! is absorbed into a rotating frame, so a drive is fully described by the
//! detuning Δω(t) = ω₁(t) − ω₂ and the coupling g(t); the propagator is
//! generated by H = [[Δω, g], [g, 0]].

mod drive;
mod grid;
mod integrate;
mod state;

pub use drive::{DriveSchedule, LevelDrive};
pub use grid::TimeGrid;
pub use integrate::{integrate_schrodinger, propagate_backward, ReferenceTrajectory};
pub use state::{overlap, TwoLevelState, NORM_TOLERANCE};
