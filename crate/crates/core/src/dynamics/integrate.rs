use num_complex::Complex64;

use super::{DriveSchedule, LevelDrive, TimeGrid, TwoLevelState};
use crate::numeric::cubic_at;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Instantaneous Hamiltonian [[d1, g], [g, d2]].
#[derive(Debug, Clone, Copy)]
struct Hamiltonian {
    d1: f64,
    d2: f64,
    g: f64,
}

impl Hamiltonian {
    /// −i H ψ
    fn rate(&self, p1: Complex64, p2: Complex64) -> (Complex64, Complex64) {
        (
            -I * (self.d1 * p1 + self.g * p2),
            -I * (self.g * p1 + self.d2 * p2),
        )
    }

    fn is_finite(&self) -> bool {
        self.d1.is_finite() && self.d2.is_finite() && self.g.is_finite()
    }
}

fn rk4_step(
    p: (Complex64, Complex64),
    h: f64,
    start: Hamiltonian,
    mid: Hamiltonian,
    end: Hamiltonian,
) -> (Complex64, Complex64) {
    let (a1, b1) = start.rate(p.0, p.1);
    let (a2, b2) = mid.rate(p.0 + 0.5 * h * a1, p.1 + 0.5 * h * b1);
    let (a3, b3) = mid.rate(p.0 + 0.5 * h * a2, p.1 + 0.5 * h * b2);
    let (a4, b4) = end.rate(p.0 + h * a3, p.1 + h * b3);
    (
        p.0 + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
        p.1 + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4),
    )
}

/// Classical RK4 over the grid; `ham(x)` returns the Hamiltonian at
/// fractional sample index `x`. With `backward` the grid is walked from
/// `t_end` to `t0` and the returned states are in that order.
fn propagate(
    grid: &TimeGrid,
    initial: TwoLevelState,
    backward: bool,
    ham: impl Fn(f64) -> Hamiltonian,
) -> Result<Vec<TwoLevelState>> {
    let n = grid.n_steps();
    let h = if backward { -grid.step() } else { grid.step() };
    let mut out = Vec::with_capacity(n + 1);
    let mut p = (initial.phi1, initial.phi2);
    out.push(initial);
    for step in 0..n {
        let (from, to) = if backward { (n - step, n - step - 1) } else { (step, step + 1) };
        let start = ham(from as f64);
        let end = ham(to as f64);
        let mid = ham(0.5 * (from + to) as f64);
        for (idx, hh) in [(from, start), (to, end)] {
            if !hh.is_finite() {
                return Err(Error::Integration {
                    index: idx,
                    time: grid.time(idx),
                });
            }
        }
        if !mid.is_finite() {
            return Err(Error::Integration {
                index: from,
                time: grid.time(from),
            });
        }
        p = rk4_step(p, h, start, mid, end);
        if !(p.0.is_finite() && p.1.is_finite()) {
            return Err(Error::Integration {
                index: to,
                time: grid.time(to),
            });
        }
        out.push(TwoLevelState { phi1: p.0, phi2: p.1 });
    }
    Ok(out)
}

fn rotating_frame(drive: &DriveSchedule) -> impl Fn(f64) -> Hamiltonian + '_ {
    move |x| Hamiltonian {
        d1: cubic_at(&drive.delta_omega, x),
        d2: 0.0,
        g: cubic_at(&drive.coupling, x),
    }
}

fn check_initial(initial: &TwoLevelState) -> Result<()> {
    if !initial.is_finite() || (initial.norm_sqr() - 1.0).abs() > super::NORM_TOLERANCE {
        return Err(Error::Domain("initial state must be finite and normalized".into()));
    }
    Ok(())
}

/// Integrates i dφ/dt = H(t) φ with H = [[Δω(t), g(t)], [g(t), 0]] by
/// fixed-step RK4 on the drive's grid. Midpoint drive values come from
/// cubic interpolation of the samples. No renormalization is applied.
pub fn integrate_schrodinger(
    drive: &DriveSchedule,
    initial: TwoLevelState,
) -> Result<ReferenceTrajectory> {
    check_initial(&initial)?;
    if let Some(k) = drive.first_non_finite() {
        return Err(Error::Integration {
            index: k,
            time: drive.grid.time(k),
        });
    }
    let states = propagate(&drive.grid, initial, false, rotating_frame(drive))?;
    Ok(ReferenceTrajectory {
        grid: drive.grid,
        states,
        drive: drive.clone(),
    })
}

/// Integrates the same equation from `t_end` back to `t0`, starting from
/// `final_state`, and returns the state at `t0`.
pub fn propagate_backward(drive: &DriveSchedule, final_state: TwoLevelState) -> Result<TwoLevelState> {
    check_initial(&final_state)?;
    let states = propagate(&drive.grid, final_state, true, rotating_frame(drive))?;
    Ok(*states.last().expect("grid has at least two samples"))
}

impl LevelDrive {
    /// Integrates with both level energies tracked explicitly.
    pub fn integrate(&self, initial: TwoLevelState) -> Result<Vec<TwoLevelState>> {
        check_initial(&initial)?;
        propagate(&self.grid, initial, false, |x| Hamiltonian {
            d1: cubic_at(&self.omega1, x),
            d2: cubic_at(&self.omega2, x),
            g: cubic_at(&self.coupling, x),
        })
    }
}

/// Time-indexed solution of the two-level dynamics under a drive.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTrajectory {
    pub grid: TimeGrid,
    pub states: Vec<TwoLevelState>,
    pub drive: DriveSchedule,
}

impl ReferenceTrajectory {
    pub fn initial_state(&self) -> TwoLevelState {
        self.states[0]
    }

    pub fn final_state(&self) -> TwoLevelState {
        *self.states.last().expect("trajectory is never empty")
    }

    pub fn max_norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.norm_sqr() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// dφ/dt at sample `k` from the equation of motion.
    fn rate_at(&self, k: usize) -> (Complex64, Complex64) {
        let s = self.states[k];
        Hamiltonian {
            d1: self.drive.delta_omega[k],
            d2: 0.0,
            g: self.drive.coupling[k],
        }
        .rate(s.phi1, s.phi2)
    }

    /// State at time `t`: exact at grid points, otherwise cubic Hermite
    /// interpolation using the equation-of-motion derivative at both ends,
    /// renormalized.
    pub fn state_at(&self, t: f64) -> Result<TwoLevelState> {
        let x = self.grid.position(t)?;
        let n = self.grid.n_steps();
        let k = (x.floor() as usize).min(n - 1);
        let s = x - k as f64;
        if s == 0.0 {
            return Ok(self.states[k]);
        }
        if s == 1.0 {
            return Ok(self.states[k + 1]);
        }
        let h = self.grid.step();
        let (d0a, d0b) = self.rate_at(k);
        let (d1a, d1b) = self.rate_at(k + 1);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        let a = self.states[k];
        let b = self.states[k + 1];
        let phi1 = h00 * a.phi1 + h10 * h * d0a + h01 * b.phi1 + h11 * h * d1a;
        let phi2 = h00 * a.phi2 + h10 * h * d0b + h01 * b.phi2 + h11 * h * d1b;
        TwoLevelState::normalized(phi1, phi2)
    }

    pub fn populations(&self) -> Vec<(f64, f64)> {
        self.states.iter().map(TwoLevelState::populations).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn rabi_drive(duration: f64, n: usize) -> DriveSchedule {
        let grid = TimeGrid::span(duration, n).unwrap();
        DriveSchedule::from_fn(grid, |_| 0.0, |_| 1.0)
    }

    #[test]
    fn free_evolution_keeps_eigenstate() {
        let grid = TimeGrid::span(2.0, 100).unwrap();
        let drive = DriveSchedule::from_fn(grid, |_| 0.0, |_| 0.0);
        let traj = integrate_schrodinger(&drive, TwoLevelState::first()).unwrap();
        assert_eq!(traj.final_state(), TwoLevelState::first());
    }

    #[test]
    fn resonant_rabi_flop() {
        let traj = integrate_schrodinger(&rabi_drive(FRAC_PI_2, 2000), TwoLevelState::first()).unwrap();
        let (p1, p2) = traj.final_state().populations();
        assert!(p1 < 1e-8 && (p2 - 1.0).abs() < 1e-8, "{p1} {p2}");
        for (k, s) in traj.states.iter().enumerate() {
            let t = traj.grid.time(k);
            assert!((s.phi1.norm_sqr() - t.cos().powi(2)).abs() < 1e-10);
        }
    }

    #[test]
    fn state_at_matches_grid_points_and_analytic_midpoints() {
        let traj = integrate_schrodinger(&rabi_drive(FRAC_PI_2, 200), TwoLevelState::first()).unwrap();
        let t5 = traj.grid.time(5);
        assert_eq!(traj.state_at(t5).unwrap(), traj.states[5]);
        let h = traj.grid.step();
        for k in [0, 17, 99, 199] {
            let t = traj.grid.time(k) + 0.5 * h;
            let s = traj.state_at(t).unwrap();
            let exact = TwoLevelState {
                phi1: Complex64::new(t.cos(), 0.0),
                phi2: Complex64::new(0.0, -t.sin()),
            };
            assert!((s.phi1 - exact.phi1).norm() < 1e-6);
            assert!((s.phi2 - exact.phi2).norm() < 1e-6);
        }
        assert!(traj.state_at(2.0).is_err());
    }

    #[test]
    fn state_at_between_identical_states() {
        let grid = TimeGrid::span(1.0, 10).unwrap();
        let drive = DriveSchedule::from_fn(grid, |_| 0.0, |_| 0.0);
        let traj = integrate_schrodinger(&drive, TwoLevelState::second()).unwrap();
        assert_eq!(traj.state_at(0.55).unwrap(), TwoLevelState::second());
    }

    #[test]
    fn non_finite_sample_names_index() {
        let grid = TimeGrid::span(1.0, 10).unwrap();
        let mut drive = DriveSchedule::from_fn(grid, |_| 1.0, |_| 1.0);
        drive.delta_omega[4] = f64::NAN;
        match integrate_schrodinger(&drive, TwoLevelState::first()) {
            Err(Error::Integration { index, .. }) => assert_eq!(index, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}
