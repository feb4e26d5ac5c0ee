//! Shortcut to adiabaticity: drive a cosine sweep in a short time T_F
//! and correct the detuning so that the instantaneous eigenstate is
//! followed exactly where possible.
//!
//! Eigenstates of [[Δω, g], [g, 0]] are parametrized by the mixing angle
//! ϑ = ½ atan2(2g, Δω), which keeps the amplitudes real, sign-continuous
//! along any sweep and analytically differentiable.

use num_complex::Complex64;

use crate::dynamics::{TimeGrid, TwoLevelState};
use crate::ffst::{roots_of, ControlSchedule, PhaseEquation, PhaseRoots};
use crate::numeric::{cumulative_trapezoid, derivative};
use crate::reference::CosineSweepSpec;
use crate::{Error, Result};

/// Which instantaneous eigenstate to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// Higher energy; connected to (1, 0) at large positive detuning.
    #[default]
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub energy: f64,
    pub amplitudes: (f64, f64),
}

impl EigenPair {
    pub fn state(&self) -> TwoLevelState {
        TwoLevelState {
            phi1: Complex64::new(self.amplitudes.0, 0.0),
            phi2: Complex64::new(self.amplitudes.1, 0.0),
        }
    }

    /// Largest component of (H − E)v for H = [[Δω, g], [g, 0]].
    pub fn residual(&self, delta_omega: f64, coupling: f64) -> f64 {
        let (a, b) = self.amplitudes;
        let r1 = delta_omega * a + coupling * b - self.energy * a;
        let r2 = coupling * a - self.energy * b;
        r1.abs().max(r2.abs())
    }
}

fn mixing_angle(delta_omega: f64, coupling: f64) -> f64 {
    0.5 * (2.0 * coupling).atan2(delta_omega)
}

/// Closed-form eigenpair of [[Δω, g], [g, 0]].
pub fn eigenpair(delta_omega: f64, coupling: f64, branch: Branch) -> EigenPair {
    let theta = mixing_angle(delta_omega, coupling);
    let (s, c) = theta.sin_cos();
    let radius = (0.25 * delta_omega * delta_omega + coupling * coupling).sqrt();
    match branch {
        Branch::Upper => EigenPair {
            energy: 0.5 * delta_omega + radius,
            amplitudes: (c, s),
        },
        Branch::Lower => EigenPair {
            energy: 0.5 * delta_omega - radius,
            amplitudes: (-s, c),
        },
    }
}

/// A cosine sweep of duration T_F together with the eigen-amplitudes of
/// the followed branch and their analytic time derivative at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct StaSweep {
    pub spec: CosineSweepSpec,
    pub grid: TimeGrid,
    pub branch: Branch,
    pub coupling: f64,
    pub delta_omega: Vec<f64>,
    pub phi1: Vec<f64>,
    pub phi2: Vec<f64>,
    /// dφ₁/dt from the mixing-angle derivative.
    pub dphi1: Vec<f64>,
    pub energy: Vec<f64>,
}

/// φ₂ and dφ₁/dt at one instant.
fn sample(spec: &CosineSweepSpec, coupling: f64, branch: Branch, t: f64) -> (f64, f64) {
    let d = spec.detuning(t);
    let d_rate = spec.detuning_rate(t);
    let pair = eigenpair(d, coupling, branch);
    let theta = mixing_angle(d, coupling);
    let theta_rate = -coupling * d_rate / (d * d + 4.0 * coupling * coupling);
    let dphi1 = match branch {
        Branch::Upper => -theta.sin() * theta_rate,
        Branch::Lower => -theta.cos() * theta_rate,
    };
    (pair.amplitudes.1, dphi1)
}

impl StaSweep {
    /// `spec.duration` is the controlled duration T_F; g = 1.
    pub fn new(spec: CosineSweepSpec, n_steps: usize, branch: Branch) -> Result<Self> {
        Self::with_coupling(spec, n_steps, branch, 1.0)
    }

    pub fn with_coupling(spec: CosineSweepSpec, n_steps: usize, branch: Branch, coupling: f64) -> Result<Self> {
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::Domain(format!("coupling must be positive, got {coupling}")));
        }
        let grid = TimeGrid::span(spec.duration, n_steps)?;
        let drive = crate::reference::build_cosine_sweep(&spec, grid)?;
        let mut out = Self {
            spec,
            grid,
            branch,
            coupling,
            delta_omega: drive.delta_omega,
            phi1: Vec::with_capacity(grid.len()),
            phi2: Vec::with_capacity(grid.len()),
            dphi1: Vec::with_capacity(grid.len()),
            energy: Vec::with_capacity(grid.len()),
        };
        for k in 0..grid.len() {
            let (_, dp1) = sample(&spec, coupling, branch, grid.time(k));
            // amplitudes from the exactly antisymmetric detuning samples
            let pair = eigenpair(out.delta_omega[k], coupling, branch);
            out.phi1.push(pair.amplitudes.0);
            out.phi2.push(pair.amplitudes.1);
            out.dphi1.push(dp1);
            out.energy.push(pair.energy);
        }
        Ok(out)
    }

    pub fn eigenstate(&self, k: usize) -> TwoLevelState {
        TwoLevelState {
            phi1: Complex64::new(self.phi1[k], 0.0),
            phi2: Complex64::new(self.phi2[k], 0.0),
        }
    }

    /// β_STA(f₂) = dφ₁/dt − g φ₂ sin f₂ at every sample.
    pub fn phase_equation(&self) -> PhaseEquation {
        PhaseEquation {
            grid: self.grid,
            offset: self.dphi1.clone(),
            sin_coeff: self.phi2.iter().map(|p| self.coupling * p).collect(),
            cos_coeff: vec![0.0; self.grid.len()],
            overlap_real: None,
        }
    }

    /// The unmodified sweep as a control.
    pub fn unmodified_control(&self) -> Result<ControlSchedule> {
        ControlSchedule::new(self.grid, self.delta_omega.clone(), vec![self.coupling; self.grid.len()])
    }
}

/// The eigenstate at t = T_F carrying the accumulated dynamical phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticTarget {
    pub state: TwoLevelState,
    /// ∫₀^{T_F} E dt.
    pub phase_integral: f64,
}

pub fn adiabatic_target(sweep: &StaSweep) -> AdiabaticTarget {
    let n = sweep.grid.n_steps();
    let phase_integral = cumulative_trapezoid(&sweep.energy, sweep.grid.step())[n];
    let rotation = Complex64::from_polar(1.0, -phase_integral);
    let s = sweep.eigenstate(n);
    AdiabaticTarget {
        state: TwoLevelState {
            phi1: s.phi1 * rotation,
            phi2: s.phi2 * rotation,
        },
        phase_integral,
    }
}

/// β_STA at an arbitrary time, evaluated in closed form.
pub fn beta_sta(t: f64, f2: f64, sweep: &StaSweep) -> Result<f64> {
    sweep.grid.position(t)?;
    let (p2, dp1) = sample(&sweep.spec, sweep.coupling, sweep.branch, t);
    Ok(dp1 - sweep.coupling * p2 * f2.sin())
}

/// Roots of β_STA(t, ·): asin(s) and π − asin(s) with s = (dφ₁/dt)/(g φ₂).
pub fn solve_sta_phase(t: f64, sweep: &StaSweep) -> Result<PhaseRoots> {
    sweep.grid.position(t)?;
    let (p2, dp1) = sample(&sweep.spec, sweep.coupling, sweep.branch, t);
    Ok(roots_of(dp1, sweep.coupling * p2, 0.0))
}

/// Control from the shortcut ansatz with f₁ = 0:
///
/// ```text
/// ω_m^FF = ω_m + g (φ_l/φ_m)(1 − cos(f_l − f_m)) − df_m/dt
/// ```
pub fn synthesize_sta_control(path: &[f64], sweep: &StaSweep) -> Result<ControlSchedule> {
    use crate::ffst::SINGULAR_AMPLITUDE;
    let n = sweep.grid.len();
    if path.len() != n {
        return Err(Error::SampleCount {
            expected: n,
            found: path.len(),
        });
    }
    let df = derivative(path, sweep.grid.step());
    let mut delta = Vec::with_capacity(n);
    for k in 0..n {
        let bracket = sweep.coupling * (1.0 - path[k].cos());
        let (p1, p2) = (sweep.phi1[k], sweep.phi2[k]);
        if bracket != 0.0 && (p1.abs() < SINGULAR_AMPLITUDE || p2.abs() < SINGULAR_AMPLITUDE) {
            let (level, amplitude) = if p1.abs() < p2.abs() { (1, p1.abs()) } else { (2, p2.abs()) };
            return Err(Error::Synthesis {
                time: sweep.grid.time(k),
                level,
                amplitude,
            });
        }
        let correction = if bracket == 0.0 { 0.0 } else { bracket * (p2 / p1 - p1 / p2) };
        delta.push(sweep.delta_omega[k] + correction + df[k]);
    }
    ControlSchedule::new(sweep.grid, delta, vec![sweep.coupling; n])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn resonance_eigenpairs() {
        let up = eigenpair(0.0, 1.0, Branch::Upper);
        let lo = eigenpair(0.0, 1.0, Branch::Lower);
        assert!((up.energy - 1.0).abs() < 1e-15 && (lo.energy + 1.0).abs() < 1e-15);
        assert!((up.amplitudes.0 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((up.amplitudes.1 - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((lo.amplitudes.0 + FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn far_detuned_upper_branch_is_first_level() {
        let p = eigenpair(30.0, 1.0, Branch::Upper);
        assert!(p.amplitudes.0.powi(2) > 0.998);
        assert!(p.residual(30.0, 1.0) < 1e-12);
    }

    #[test]
    fn analytic_derivative_matches_differences() {
        let spec = CosineSweepSpec::new(30.0, 10.0).unwrap();
        let sweep = StaSweep::new(spec, 4000, Branch::Upper).unwrap();
        let numeric = derivative(&sweep.phi1, sweep.grid.step());
        for (k, (n, a)) in numeric.iter().zip(&sweep.dphi1).enumerate().take(4000).skip(1) {
            assert!((n - a).abs() < 1e-4, "k={k}");
        }
    }

    #[test]
    fn zero_path_returns_sweep() {
        let spec = CosineSweepSpec::new(30.0, 20.0).unwrap();
        let sweep = StaSweep::new(spec, 1000, Branch::Upper).unwrap();
        let c = synthesize_sta_control(&vec![0.0; 1001], &sweep).unwrap();
        assert_eq!(c.delta_omega_ff, sweep.delta_omega);
    }

    #[test]
    fn static_roots() {
        let spec = CosineSweepSpec::new(30.0, 30.0).unwrap();
        let sweep = StaSweep::new(spec, 1000, Branch::Upper).unwrap();
        assert_eq!(solve_sta_phase(0.0, &sweep).unwrap(), PhaseRoots::Two(0.0, -std::f64::consts::PI));
    }
}
