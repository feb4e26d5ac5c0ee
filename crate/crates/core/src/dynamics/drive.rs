use super::TimeGrid;
use crate::numeric::cubic_at;
use crate::{Error, Result};

/// Sampled detuning Δω(t) = ω₁(t) − ω₂ and coupling g(t) on a uniform grid.
///
/// Between samples both functions are evaluated by cubic interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveSchedule {
    pub grid: TimeGrid,
    pub delta_omega: Vec<f64>,
    pub coupling: Vec<f64>,
}

impl DriveSchedule {
    pub fn new(grid: TimeGrid, delta_omega: Vec<f64>, coupling: Vec<f64>) -> Result<Self> {
        for len in [delta_omega.len(), coupling.len()] {
            if len != grid.len() {
                return Err(Error::SampleCount {
                    expected: grid.len(),
                    found: len,
                });
            }
        }
        Ok(Self {
            grid,
            delta_omega,
            coupling,
        })
    }

    /// Detuning samples with the coupling fixed at g = 1.
    pub fn with_unit_coupling(grid: TimeGrid, delta_omega: Vec<f64>) -> Result<Self> {
        let coupling = vec![1.0; grid.len()];
        Self::new(grid, delta_omega, coupling)
    }

    pub fn from_fn(grid: TimeGrid, delta: impl Fn(f64) -> f64, coupling: impl Fn(f64) -> f64) -> Self {
        let times = grid.times();
        Self {
            grid,
            delta_omega: times.iter().map(|&t| delta(t)).collect(),
            coupling: times.iter().map(|&t| coupling(t)).collect(),
        }
    }

    pub fn delta_omega_at(&self, t: f64) -> Result<f64> {
        Ok(cubic_at(&self.delta_omega, self.grid.position(t)?))
    }

    pub fn coupling_at(&self, t: f64) -> Result<f64> {
        Ok(cubic_at(&self.coupling, self.grid.position(t)?))
    }

    /// Index of the first non-finite sample, if any.
    pub fn first_non_finite(&self) -> Option<usize> {
        (0..self.grid.len())
            .find(|&k| !(self.delta_omega[k].is_finite() && self.coupling[k].is_finite()))
    }
}

/// Drive written in the absolute frame: both level energies ω₁(t), ω₂(t)
/// and the coupling are tracked, H = [[ω₁, g], [g, ω₂]].
#[derive(Debug, Clone, PartialEq)]
pub struct LevelDrive {
    pub grid: TimeGrid,
    pub omega1: Vec<f64>,
    pub omega2: Vec<f64>,
    pub coupling: Vec<f64>,
}

impl LevelDrive {
    pub fn new(grid: TimeGrid, omega1: Vec<f64>, omega2: Vec<f64>, coupling: Vec<f64>) -> Result<Self> {
        for len in [omega1.len(), omega2.len(), coupling.len()] {
            if len != grid.len() {
                return Err(Error::SampleCount {
                    expected: grid.len(),
                    found: len,
                });
            }
        }
        Ok(Self {
            grid,
            omega1,
            omega2,
            coupling,
        })
    }

    /// Lifts a rotating-frame drive into the absolute frame with ω₂(t) given.
    pub fn from_detuning(drive: &DriveSchedule, omega2: Vec<f64>) -> Result<Self> {
        if omega2.len() != drive.grid.len() {
            return Err(Error::SampleCount {
                expected: drive.grid.len(),
                found: omega2.len(),
            });
        }
        let omega1 = drive
            .delta_omega
            .iter()
            .zip(&omega2)
            .map(|(d, w2)| d + w2)
            .collect();
        Self::new(drive.grid, omega1, omega2, drive.coupling.clone())
    }
}
