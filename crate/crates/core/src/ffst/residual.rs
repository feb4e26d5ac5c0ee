use std::f64::consts::PI;

use rayon::prelude::*;

use super::{MagnificationProfile, ScaledReference};
use crate::dynamics::{ReferenceTrajectory, TimeGrid};
use crate::numeric::wrap_phase;
use crate::{Error, Result};

/// Below this amplitude the phase equation no longer constrains f₂.
pub const DEGENERATE_AMPLITUDE: f64 = 1e-12;

/// Residual tolerance that a point on a speed-controlled trajectory meets.
pub const ROOT_TOLERANCE: f64 = 1e-8;

/// Floor applied to |β| before taking logarithms for export.
pub const LN_BETA_FLOOR: f64 = 1e-14;

/// Roots of a phase equation at one instant, canonicalized to `[-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseRoots {
    /// The amplitude vanishes together with the offset: every f₂ solves.
    Degenerate,
    /// The amplitude vanishes but the offset does not: nothing solves.
    Singular,
    None,
    One(f64),
    Two(f64, f64),
}

impl PhaseRoots {
    /// Number of isolated roots; degenerate and singular instants count 0.
    pub fn count(&self) -> usize {
        match self {
            PhaseRoots::One(_) => 1,
            PhaseRoots::Two(..) => 2,
            _ => 0,
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        match *self {
            PhaseRoots::One(a) => vec![a],
            PhaseRoots::Two(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, PhaseRoots::Degenerate)
    }

    /// True when no phase at all satisfies the equation.
    pub fn is_empty(&self) -> bool {
        matches!(self, PhaseRoots::None | PhaseRoots::Singular)
    }
}

/// Solves `offset = sin_coeff · sin f + cos_coeff · cos f` for f.
///
/// Writing the right side as r·sin(f + θ) gives f = asin(offset/r) − θ
/// and f = π − asin(offset/r) − θ.
pub fn roots_of(offset: f64, sin_coeff: f64, cos_coeff: f64) -> PhaseRoots {
    let r = sin_coeff.hypot(cos_coeff);
    if r < DEGENERATE_AMPLITUDE {
        return if offset.abs() <= DEGENERATE_AMPLITUDE {
            PhaseRoots::Degenerate
        } else {
            PhaseRoots::Singular
        };
    }
    let theta = cos_coeff.atan2(sin_coeff);
    let s = offset / r;
    if (s.abs() - 1.0).abs() <= 1e-12 {
        return PhaseRoots::One(wrap_phase(s.signum() * PI / 2.0 - theta));
    }
    if s.abs() > 1.0 {
        return PhaseRoots::None;
    }
    let a = s.asin();
    PhaseRoots::Two(wrap_phase(a - theta), wrap_phase(PI - a - theta))
}

/// A sampled phase-consistency equation
///
/// ```text
/// β_k(f) = offset_k − (sin_coeff_k · sin f + cos_coeff_k · cos f)
/// ```
///
/// Both the fast-forward residual and the shortcut-to-adiabaticity
/// residual have this shape, so roots, trajectory extraction, gap
/// detection and the optimizer cost are all written once against it.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseEquation {
    pub grid: TimeGrid,
    pub offset: Vec<f64>,
    pub sin_coeff: Vec<f64>,
    pub cos_coeff: Vec<f64>,
    /// Re[φ₁*φ₂] where the equation comes from a reference overlap. Its
    /// sign changes mark the instants where the two root branches come
    /// closest.
    pub overlap_real: Option<Vec<f64>>,
}

impl PhaseEquation {
    /// β^FF/g = α Im z − Im(z e^{if₂}) with z = φ₁*(Λ) φ₂(Λ), scaled by g(Λ).
    pub fn fast_forward(scaled: &ScaledReference) -> Self {
        let g = scaled.coupling.clone();
        Self::with_coupling(scaled, &g)
    }

    /// Tunable-coupling variant: α g Im z = g^FF Im(z e^{if₂}).
    pub fn fast_forward_tunable(scaled: &ScaledReference, g_ff: &[f64]) -> Result<Self> {
        if g_ff.len() != scaled.len() {
            return Err(Error::SampleCount {
                expected: scaled.len(),
                found: g_ff.len(),
            });
        }
        Ok(Self::with_coupling(scaled, g_ff))
    }

    fn with_coupling(scaled: &ScaledReference, g_ff: &[f64]) -> Self {
        let n = scaled.len();
        let mut offset = Vec::with_capacity(n);
        let mut sin_coeff = Vec::with_capacity(n);
        let mut cos_coeff = Vec::with_capacity(n);
        let mut overlap_real = Vec::with_capacity(n);
        for (k, s) in scaled.states.iter().enumerate() {
            let z = s.phi1.conj() * s.phi2;
            // Im(z e^{if}) = Re z sin f + Im z cos f
            offset.push(scaled.alpha[k] * scaled.coupling[k] * z.im);
            sin_coeff.push(g_ff[k] * z.re);
            cos_coeff.push(g_ff[k] * z.im);
            overlap_real.push(z.re);
        }
        Self {
            grid: scaled.grid,
            offset,
            sin_coeff,
            cos_coeff,
            overlap_real: Some(overlap_real),
        }
    }

    pub fn len(&self) -> usize {
        self.offset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offset.is_empty()
    }

    pub fn residual(&self, k: usize, f: f64) -> f64 {
        let (s, c) = f.sin_cos();
        self.offset[k] - (self.sin_coeff[k] * s + self.cos_coeff[k] * c)
    }

    pub fn roots(&self, k: usize) -> PhaseRoots {
        roots_of(self.offset[k], self.sin_coeff[k], self.cos_coeff[k])
    }

    /// Roots at every sample, evaluated in parallel.
    pub fn root_scan(&self) -> Vec<PhaseRoots> {
        (0..self.len()).into_par_iter().map(|k| self.roots(k)).collect()
    }

    /// |β| along a sampled path.
    pub fn abs_residual_along(&self, path: &[f64]) -> Vec<f64> {
        path.iter()
            .enumerate()
            .map(|(k, &f)| self.residual(k, f).abs())
            .collect()
    }
}

/// β^FF(t, f₂) in units of g, evaluated from the interpolated reference
/// state at Λ(t).
pub fn beta_ff(
    t: f64,
    f2: f64,
    reference: &ReferenceTrajectory,
    profile: &MagnificationProfile,
) -> Result<f64> {
    let (offset, p, q) = pointwise_coefficients(t, reference, profile)?;
    let (s, c) = f2.sin_cos();
    Ok(offset - (p * s + q * c))
}

/// Closed-form roots of β^FF(t, ·).
pub fn solve_phase_roots(
    t: f64,
    reference: &ReferenceTrajectory,
    profile: &MagnificationProfile,
) -> Result<PhaseRoots> {
    let (offset, p, q) = pointwise_coefficients(t, reference, profile)?;
    Ok(roots_of(offset, p, q))
}

fn pointwise_coefficients(
    t: f64,
    reference: &ReferenceTrajectory,
    profile: &MagnificationProfile,
) -> Result<(f64, f64, f64)> {
    let alpha = profile.alpha_at(t)?;
    let lambda = profile
        .lambda_at(t)?
        .clamp(reference.grid.t0(), reference.grid.t_end());
    let state = reference.state_at(lambda)?;
    let g = reference.drive.coupling_at(lambda)?;
    let z = state.phi1.conj() * state.phi2;
    Ok((g * alpha * z.im, g * z.re, g * z.im))
}

/// Dense β over a (time, phase) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaMap {
    pub times: Vec<f64>,
    /// Uniform phases −π + 2πj/n_phase, so the axis covers `[-π, π)`.
    pub phases: Vec<f64>,
    /// `values[i][j]` = β(times[i], phases[j]).
    pub values: Vec<Vec<f64>>,
}

impl BetaMap {
    /// ln max(|β|, floor), finite everywhere.
    pub fn ln_abs(&self, i: usize, j: usize) -> f64 {
        self.values[i][j].abs().max(LN_BETA_FLOOR).ln()
    }

    pub fn n_phase(&self) -> usize {
        self.phases.len()
    }
}

/// Evaluates the equation on at most `n_time + 1` evenly strided samples
/// and `n_phase` phases. Rows are computed in parallel.
pub fn build_beta_map(eq: &PhaseEquation, n_time: usize, n_phase: usize) -> Result<BetaMap> {
    if n_phase < 256 {
        return Err(Error::Domain(format!("n_phase must be at least 256, got {n_phase}")));
    }
    if n_time == 0 {
        return Err(Error::Domain("n_time must be positive".into()));
    }
    let n = eq.grid.n_steps();
    let rows = n_time.min(n);
    let indices: Vec<usize> = (0..=rows)
        .map(|i| ((i as f64) * n as f64 / rows as f64).round() as usize)
        .collect();
    let phases: Vec<f64> = (0..n_phase)
        .map(|j| -PI + 2.0 * PI * j as f64 / n_phase as f64)
        .collect();
    let values = indices
        .par_iter()
        .map(|&k| phases.iter().map(|&f| eq.residual(k, f)).collect())
        .collect();
    Ok(BetaMap {
        times: indices.iter().map(|&k| eq.grid.time(k)).collect(),
        phases,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_roots(offset: f64, p: f64, q: f64) {
        for f in roots_of(offset, p, q).to_vec() {
            let beta = offset - (p * f.sin() + q * f.cos());
            assert!(beta.abs() < 1e-10, "beta({f}) = {beta}");
            assert!((-PI..PI).contains(&f));
        }
    }

    #[test]
    fn roots_satisfy_equation() {
        check_roots(0.3, 0.5, 0.2);
        check_roots(-0.1, -0.4, 0.9);
        check_roots(0.0, 1.0, 0.0);
        assert_eq!(roots_of(0.0, 1.0, 0.0), PhaseRoots::Two(0.0, -PI));
    }

    #[test]
    fn purely_imaginary_overlap_gap_direction() {
        // a = 0, b = 0.4: offset = α b, coefficients (a, b)
        let b = 0.4;
        assert_eq!(roots_of(1.2 * b, 0.0, b), PhaseRoots::None);
        match roots_of(0.8 * b, 0.0, b) {
            PhaseRoots::Two(x, y) => assert!((x + y).abs() < 1e-12, "{x} {y}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tangency_and_degeneracy() {
        assert_eq!(roots_of(1.0, 1.0, 0.0), PhaseRoots::One(PI / 2.0));
        assert_eq!(roots_of(0.0, 0.0, 0.0), PhaseRoots::Degenerate);
        assert_eq!(roots_of(0.5, 0.0, 1e-13), PhaseRoots::Singular);
    }
}
