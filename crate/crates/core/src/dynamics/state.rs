use num_complex::Complex64;

use crate::{Error, Result};

/// Allowed deviation of |φ₁|² + |φ₂|² from one.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Amplitudes on |1⟩ = |10⟩ and |2⟩ = |01⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelState {
    pub phi1: Complex64,
    pub phi2: Complex64,
}

impl TwoLevelState {
    /// Builds a state, rejecting amplitudes whose norm is off by more than
    /// [`NORM_TOLERANCE`].
    pub fn new(phi1: Complex64, phi2: Complex64) -> Result<Self> {
        let state = Self { phi1, phi2 };
        let drift = (state.norm_sqr() - 1.0).abs();
        if !(drift <= NORM_TOLERANCE) {
            return Err(Error::Domain(format!(
                "state not normalized: |phi1|^2 + |phi2|^2 - 1 = {drift:e}"
            )));
        }
        Ok(state)
    }

    /// Builds a state scaled to unit norm.
    pub fn normalized(phi1: Complex64, phi2: Complex64) -> Result<Self> {
        let norm = (phi1.norm_sqr() + phi2.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain("cannot normalize a zero or non-finite state".into()));
        }
        Ok(Self {
            phi1: phi1 / norm,
            phi2: phi2 / norm,
        })
    }

    /// The state |10⟩.
    pub fn first() -> Self {
        Self {
            phi1: Complex64::new(1.0, 0.0),
            phi2: Complex64::new(0.0, 0.0),
        }
    }

    /// The state |01⟩.
    pub fn second() -> Self {
        Self {
            phi1: Complex64::new(0.0, 0.0),
            phi2: Complex64::new(1.0, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.phi1.norm_sqr() + self.phi2.norm_sqr()
    }

    pub fn populations(&self) -> (f64, f64) {
        (self.phi1.norm_sqr(), self.phi2.norm_sqr())
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.phi1.conj() * other.phi1 + self.phi2.conj() * other.phi2
    }

    /// |⟨self|other⟩|.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.overlap(other).norm()
    }

    /// Multiplies φ₂ by e^{i f₂}, i.e. the fast-forward ansatz with f₁ = 0.
    pub fn with_relative_phase(&self, f2: f64) -> Self {
        Self {
            phi1: self.phi1,
            phi2: self.phi2 * Complex64::from_polar(1.0, f2),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.phi1.is_finite() && self.phi2.is_finite()
    }
}

/// ⟨a|b⟩ = φ₁ₐ* φ₁ᵦ + φ₂ₐ* φ₂ᵦ.
pub fn overlap(a: &TwoLevelState, b: &TwoLevelState) -> Complex64 {
    a.overlap(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn overlap_of_identical_states_is_one() {
        let a = TwoLevelState::normalized(Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.7)).unwrap();
        assert!((overlap(&a, &a).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overlap_of_basis_states_is_zero() {
        assert_eq!(overlap(&TwoLevelState::first(), &TwoLevelState::second()).norm(), 0.0);
    }

    #[test]
    fn overlap_with_superposition() {
        let b = TwoLevelState::new(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, FRAC_1_SQRT_2),
        )
        .unwrap();
        assert!((overlap(&TwoLevelState::first(), &b).norm() - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(TwoLevelState::new(Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0)).is_err());
        assert!(TwoLevelState::normalized(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }
}
