//! Inter-trajectory travel: virtual phase paths that splice speed-controlled
//! trajectories across gaps, with bridge parameters chosen by minimizing
//! the integrated residual.

mod cost;
mod gaps;
mod nelder_mead;
mod optimize;
mod virtual_trajectory;

pub use cost::{itt_cost, IttCostReport};
pub use gaps::{detect_gaps, substantial, Gap, GapEndpoint, GapKind, MIN_BRANCH_SAMPLES};
pub use nelder_mead::{Bounds, Minimum, NelderMead};
pub use optimize::{optimize_virtual_trajectory, IttOutcome, IttSettings};
pub use virtual_trajectory::{
    BridgeKind, BridgeParams, CrossingPlan, Segment, SegmentSource, VirtualTrajectory,
    VirtualTrajectoryPlan, WINDOW_HALF_WIDTHS,
};
