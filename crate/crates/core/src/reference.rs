//! The cosine detuning sweep Δω(t) = Δω₀ cos(πt/T) and its reference
//! dynamics.

use std::f64::consts::PI;

use crate::dynamics::{integrate_schrodinger, DriveSchedule, ReferenceTrajectory, TimeGrid, TwoLevelState};
use crate::{Error, Result};

/// Default integration resolution.
pub const DEFAULT_STEPS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineSweepSpec {
    /// Δω₀ in units of g.
    pub delta_omega0: f64,
    /// Sweep duration in units of g⁻¹.
    pub duration: f64,
}

impl CosineSweepSpec {
    pub fn new(delta_omega0: f64, duration: f64) -> Result<Self> {
        if !(duration > 0.0 && duration.is_finite()) {
            return Err(Error::Domain(format!("sweep duration must be positive, got {duration}")));
        }
        if !delta_omega0.is_finite() {
            return Err(Error::Domain("sweep amplitude must be finite".into()));
        }
        Ok(Self {
            delta_omega0,
            duration,
        })
    }

    pub fn detuning(&self, t: f64) -> f64 {
        self.delta_omega0 * (PI * t / self.duration).cos()
    }

    /// dΔω/dt.
    pub fn detuning_rate(&self, t: f64) -> f64 {
        -self.delta_omega0 * PI / self.duration * (PI * t / self.duration).sin()
    }
}

/// Samples the sweep on `grid`, which must span `[0, T]`.
pub fn build_cosine_sweep(spec: &CosineSweepSpec, grid: TimeGrid) -> Result<DriveSchedule> {
    let tol = 1e-12 * spec.duration.max(1.0);
    if grid.t0().abs() > tol || (grid.t_end() - spec.duration).abs() > tol {
        return Err(Error::Domain(format!(
            "grid [{}, {}] does not span the sweep [0, {}]",
            grid.t0(),
            grid.t_end(),
            spec.duration
        )));
    }
    let n = grid.n_steps();
    // Evaluate on the index so that Δω(T−t) = −Δω(t) holds exactly.
    let mut delta_omega: Vec<f64> = (0..=n)
        .map(|k| spec.delta_omega0 * (PI * k as f64 / n as f64).cos())
        .collect();
    for k in 0..=n / 2 {
        delta_omega[n - k] = -delta_omega[k];
    }
    if n.is_multiple_of(2) {
        delta_omega[n / 2] = 0.0;
    }
    DriveSchedule::with_unit_coupling(grid, delta_omega)
}

/// Reference dynamics under the cosine sweep from `initial`.
pub fn solve_reference(
    spec: &CosineSweepSpec,
    initial: TwoLevelState,
    n_steps: usize,
) -> Result<ReferenceTrajectory> {
    let grid = TimeGrid::span(spec.duration, n_steps)?;
    let drive = build_cosine_sweep(spec, grid)?;
    integrate_schrodinger(&drive, initial)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_values_at_landmarks() {
        let spec = CosineSweepSpec::new(30.0, 1.0).unwrap();
        let grid = TimeGrid::span(1.0, 1000).unwrap();
        let drive = build_cosine_sweep(&spec, grid).unwrap();
        assert_eq!(drive.delta_omega[0], 30.0);
        assert_eq!(drive.delta_omega[500], 0.0);
        assert_eq!(drive.delta_omega[1000], -30.0);
        assert!(drive.coupling.iter().all(|&g| g == 1.0));
    }

    #[test]
    fn sweep_is_antisymmetric_about_midpoint() {
        let spec = CosineSweepSpec::new(30.0, 1.0).unwrap();
        for n in [999, 1000] {
            let drive = build_cosine_sweep(&spec, TimeGrid::span(1.0, n).unwrap()).unwrap();
            for k in 0..=n {
                assert_eq!(drive.delta_omega[n - k], -drive.delta_omega[k]);
            }
        }
    }

    #[test]
    fn grid_must_span_sweep() {
        let spec = CosineSweepSpec::new(30.0, 1.0).unwrap();
        assert!(build_cosine_sweep(&spec, TimeGrid::span(0.9, 10).unwrap()).is_err());
        assert!(CosineSweepSpec::new(30.0, -1.0).is_err());
    }

    #[test]
    fn zero_amplitude_is_rabi() {
        let spec = CosineSweepSpec::new(0.0, 1.0).unwrap();
        let traj = solve_reference(&spec, TwoLevelState::first(), 2000).unwrap();
        let (_, p2) = traj.final_state().populations();
        assert!((p2 - 1f64.sin().powi(2)).abs() < 1e-10);
    }
}
