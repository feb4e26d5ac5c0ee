use num_complex::Complex64;

use super::ScaledReference;
use crate::dynamics::{DriveSchedule, TimeGrid};
use crate::numeric::{derivative, fill_by_cubic, pchip};
use crate::{Error, Result};

/// Amplitude below which a level is treated as a removable singularity.
pub const SINGULAR_AMPLITUDE: f64 = 1e-6;

/// Bracket size tolerated at a singular sample.
const BRACKET_TOLERANCE: f64 = 1e-6;

/// A synthesized control: Δω^FF = ω₁^FF − ω₂^FF, its time derivative and
/// the coupling g^FF on the controlled grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    pub grid: TimeGrid,
    pub delta_omega_ff: Vec<f64>,
    pub derivative: Vec<f64>,
    pub coupling_ff: Vec<f64>,
}

impl ControlSchedule {
    /// Builds a schedule, computing the derivative numerically.
    pub fn new(grid: TimeGrid, delta_omega_ff: Vec<f64>, coupling_ff: Vec<f64>) -> Result<Self> {
        for len in [delta_omega_ff.len(), coupling_ff.len()] {
            if len != grid.len() {
                return Err(Error::SampleCount {
                    expected: grid.len(),
                    found: len,
                });
            }
        }
        if let Some(k) = (0..grid.len())
            .find(|&k| !(delta_omega_ff[k].is_finite() && coupling_ff[k].is_finite()))
        {
            return Err(Error::Synthesis {
                time: grid.time(k),
                level: 0,
                amplitude: f64::NAN,
            });
        }
        let derivative = derivative(&delta_omega_ff, grid.step());
        Ok(Self {
            grid,
            delta_omega_ff,
            derivative,
            coupling_ff,
        })
    }

    /// The drive to integrate in the rotating frame.
    pub fn to_drive(&self) -> DriveSchedule {
        DriveSchedule {
            grid: self.grid,
            delta_omega: self.delta_omega_ff.clone(),
            coupling: self.coupling_ff.clone(),
        }
    }

    pub fn from_drive(drive: &DriveSchedule) -> Result<Self> {
        Self::new(drive.grid, drive.delta_omega.clone(), drive.coupling.clone())
    }
}

/// Resamples a path given on `from` onto `to` by monotone cubic
/// interpolation.
pub fn resample_path(from: TimeGrid, values: &[f64], to: TimeGrid) -> Result<Vec<f64>> {
    if values.len() != from.len() {
        return Err(Error::SampleCount {
            expected: from.len(),
            found: values.len(),
        });
    }
    if from == to {
        return Ok(values.to_vec());
    }
    Ok(pchip(&from.times(), values, &to.times()))
}

/// Control realizing φ_m(Λ(t)) e^{i f_m(t)} with f₁ = 0, f₂ = `path` and
/// the coupling held at g(Λ(t)).
///
/// `path` must be a continuous lift (no 2π jumps) sampled on the grid of
/// `scaled`.
pub fn synthesize_control(path: &[f64], scaled: &ScaledReference) -> Result<ControlSchedule> {
    synthesize(path, scaled, &scaled.coupling)
}

/// Like [`synthesize_control`] with a prescribed coupling g^FF(t):
///
/// ```text
/// ω_m^FF = Re{(φ_l/φ_m)(α g − g^FF e^{i(f_l − f_m)})} + α ω_m(Λ) − df_m/dt
/// ```
pub fn synthesize_control_tunable(
    path: &[f64],
    scaled: &ScaledReference,
    g_ff: &[f64],
) -> Result<ControlSchedule> {
    if g_ff.len() != scaled.len() {
        return Err(Error::SampleCount {
            expected: scaled.len(),
            found: g_ff.len(),
        });
    }
    if let Some(k) = g_ff.iter().position(|&g| !(g > 0.0)) {
        return Err(Error::Domain(format!(
            "tunable coupling must be positive, got {} at sample {k}",
            g_ff[k]
        )));
    }
    synthesize(path, scaled, g_ff)
}

fn synthesize(path: &[f64], scaled: &ScaledReference, g_ff: &[f64]) -> Result<ControlSchedule> {
    let n = scaled.len();
    if path.len() != n {
        return Err(Error::SampleCount {
            expected: n,
            found: path.len(),
        });
    }
    let grid = scaled.grid;
    let df = derivative(path, grid.step());
    let mut omega1 = vec![0.0; n];
    let mut omega2 = vec![0.0; n];
    let mut bad1 = vec![false; n];
    let mut bad2 = vec![false; n];
    for k in 0..n {
        let s = scaled.states[k];
        let a = scaled.alpha[k];
        let g = scaled.coupling[k];
        let e = Complex64::from_polar(1.0, path[k]);
        // level 1: φ₂/φ₁ (α g − g^FF e^{if})
        let bracket1 = a * g - g_ff[k] * e;
        // level 2: φ₁/φ₂ (α g − g^FF e^{−if})
        let bracket2 = a * g - g_ff[k] * e.conj();
        let drift1 = a * scaled.delta_omega[k];
        match regular_term(s.phi2, s.phi1, bracket1) {
            Term::Value(v) => omega1[k] = v + drift1,
            Term::Removable => bad1[k] = true,
            Term::Divergent(amp) => {
                return Err(Error::Synthesis {
                    time: grid.time(k),
                    level: 1,
                    amplitude: amp,
                })
            }
        }
        match regular_term(s.phi1, s.phi2, bracket2) {
            Term::Value(v) => omega2[k] = v - df[k],
            Term::Removable => bad2[k] = true,
            Term::Divergent(amp) => {
                return Err(Error::Synthesis {
                    time: grid.time(k),
                    level: 2,
                    amplitude: amp,
                })
            }
        }
    }
    fill_singular(&mut omega1, &bad1, grid, 1)?;
    fill_singular(&mut omega2, &bad2, grid, 2)?;
    let delta: Vec<f64> = omega1.iter().zip(&omega2).map(|(a, b)| a - b).collect();
    ControlSchedule::new(grid, delta, g_ff.to_vec())
}

pub(crate) enum Term {
    Value(f64),
    Removable,
    Divergent(f64),
}

/// Re{(num/den) · bracket}, classifying a vanishing denominator.
pub(crate) fn regular_term(num: Complex64, den: Complex64, bracket: Complex64) -> Term {
    let amp = den.norm();
    if amp < SINGULAR_AMPLITUDE {
        if bracket.norm() > BRACKET_TOLERANCE {
            Term::Divergent(amp)
        } else {
            Term::Removable
        }
    } else {
        Term::Value((num / den * bracket).re)
    }
}

pub(crate) fn fill_singular(values: &mut [f64], bad: &[bool], grid: TimeGrid, level: usize) -> Result<()> {
    if !bad.iter().any(|&b| b) {
        return Ok(());
    }
    if fill_by_cubic(values, bad) {
        Ok(())
    } else {
        let k = bad.iter().position(|&b| b).unwrap_or(0);
        Err(Error::Synthesis {
            time: grid.time(k),
            level,
            amplitude: 0.0,
        })
    }
}

/// Baseline that only rescales time: Δω(Λ(t)).
pub fn naive_scaled_control(scaled: &ScaledReference) -> Result<ControlSchedule> {
    ControlSchedule::new(scaled.grid, scaled.delta_omega.clone(), scaled.coupling.clone())
}

/// Baseline that rescales time and amplitude: α(t) Δω(Λ(t)).
pub fn alpha_scaled_control(scaled: &ScaledReference) -> Result<ControlSchedule> {
    let delta = scaled
        .alpha
        .iter()
        .zip(&scaled.delta_omega)
        .map(|(a, d)| a * d)
        .collect();
    ControlSchedule::new(scaled.grid, delta, scaled.coupling.clone())
}
