//! Fast-forward scaling: magnification profiles, the phase residual β^FF,
//! closed-form phase roots, speed-controlled trajectories and control
//! synthesis.

mod magnification;
mod residual;
mod scaled;
mod sct;
mod synthesis;

pub use magnification::{build_magnification, MagnificationProfile};
pub use residual::{
    beta_ff, build_beta_map, roots_of, solve_phase_roots, BetaMap, PhaseEquation, PhaseRoots,
    DEGENERATE_AMPLITUDE, LN_BETA_FLOOR, ROOT_TOLERANCE,
};
pub use scaled::ScaledReference;
pub use sct::{extract_scts, SpeedControlledTrajectory, DEFAULT_LINK_THRESHOLD};
pub use synthesis::{
    alpha_scaled_control, naive_scaled_control, resample_path, synthesize_control,
    synthesize_control_tunable, ControlSchedule, SINGULAR_AMPLITUDE,
};
