use std::f64::consts::PI;

use crate::dynamics::TimeGrid;
use crate::numeric::{cubic_at, cumulative_trapezoid};
use crate::{Error, Result};

/// Magnification factor α(t) on `[0, T_F]` and the scaled time
/// Λ(t) = ∫₀ᵗ α dt', which maps controlled time onto reference time.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnificationProfile {
    pub grid: TimeGrid,
    pub alpha: Vec<f64>,
    pub lambda: Vec<f64>,
    /// Reference duration T.
    pub reference_duration: f64,
    /// Controlled duration T_F.
    pub controlled_duration: f64,
}

impl MagnificationProfile {
    /// Builds a profile from α samples; Λ is the cumulative trapezoid.
    pub fn from_alpha(grid: TimeGrid, alpha: Vec<f64>, reference_duration: f64) -> Result<Self> {
        if alpha.len() != grid.len() {
            return Err(Error::SampleCount {
                expected: grid.len(),
                found: alpha.len(),
            });
        }
        if grid.t0() != 0.0 {
            return Err(Error::InvalidGrid("magnification grid must start at t = 0".into()));
        }
        let lambda = cumulative_trapezoid(&alpha, grid.step());
        Ok(Self {
            grid,
            alpha,
            lambda,
            reference_duration,
            controlled_duration: grid.t_end(),
        })
    }

    /// α ≡ 1 on `[0, duration]`.
    pub fn identity(grid: TimeGrid) -> Result<Self> {
        let mut p = Self::from_alpha(grid, vec![1.0; grid.len()], grid.duration())?;
        p.lambda = grid.times();
        Ok(p)
    }

    pub fn alpha_at(&self, t: f64) -> Result<f64> {
        Ok(cubic_at(&self.alpha, self.grid.position(t)?))
    }

    pub fn lambda_at(&self, t: f64) -> Result<f64> {
        Ok(cubic_at(&self.lambda, self.grid.position(t)?))
    }

    /// |Λ(T_F) − T|.
    pub fn endpoint_error(&self) -> f64 {
        (self.lambda[self.grid.n_steps()] - self.reference_duration).abs()
    }
}

/// α(t) = 1 − (T_F − T)/T_F · (1 − cos(2πt/T_F)), which satisfies
/// α(0) = α(T_F) = 1 and Λ(T_F) = T.
pub fn build_magnification(
    reference_duration: f64,
    controlled_duration: f64,
    grid: TimeGrid,
) -> Result<MagnificationProfile> {
    if !(reference_duration > 0.0 && controlled_duration > 0.0) {
        return Err(Error::Domain("durations T and T_F must be positive".into()));
    }
    let tol = 1e-12 * controlled_duration.max(1.0);
    if grid.t0() != 0.0 || (grid.t_end() - controlled_duration).abs() > tol {
        return Err(Error::InvalidGrid(format!(
            "magnification grid must span [0, {controlled_duration}]"
        )));
    }
    let deficit = (controlled_duration - reference_duration) / controlled_duration;
    let n = grid.n_steps();
    let alpha = (0..=n)
        .map(|k| {
            // k/n keeps both endpoints exact
            let phase = 2.0 * PI * k as f64 / n as f64;
            let c = if k == 0 || k == n { 1.0 } else { phase.cos() };
            1.0 - deficit * (1.0 - c)
        })
        .collect();
    let mut profile = MagnificationProfile::from_alpha(grid, alpha, reference_duration)?;
    if deficit == 0.0 {
        profile.lambda = grid.times();
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_durations_give_identity() {
        let grid = TimeGrid::span(1.0, 1000).unwrap();
        let p = build_magnification(1.0, 1.0, grid).unwrap();
        assert!(p.alpha.iter().all(|&a| a == 1.0));
        for k in 0..=1000 {
            assert!((p.lambda[k] - grid.time(k)).abs() < 1e-13);
        }
    }

    #[test]
    fn acceleration_peak() {
        let grid = TimeGrid::span(0.9, 20_000).unwrap();
        let p = build_magnification(1.0, 0.9, grid).unwrap();
        let expected = 1.0 + 2.0 * (1.0 - 0.9) / 0.9;
        assert!((p.alpha[10_000] - expected).abs() < 1e-12);
        assert!((p.alpha[10_000] - 1.2222222222222).abs() < 1e-9);
        assert!(p.alpha.iter().all(|&a| a >= 1.0));
        assert_eq!(p.alpha[0], 1.0);
        assert_eq!(p.alpha[20_000], 1.0);
    }

    #[test]
    fn deceleration_endpoint() {
        let grid = TimeGrid::span(1.1, 20_000).unwrap();
        let p = build_magnification(1.0, 1.1, grid).unwrap();
        assert!(p.endpoint_error() < 1e-6);
        assert_eq!(p.lambda[0], 0.0);
        assert!(p.alpha.iter().all(|&a| a > 0.0 && a <= 1.0));
    }
}
