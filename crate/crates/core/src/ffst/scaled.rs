use rayon::prelude::*;

use super::MagnificationProfile;
use crate::dynamics::{ReferenceTrajectory, TimeGrid, TwoLevelState};
use crate::numeric::cubic_at;
use crate::{Error, Result};

/// Slack allowed when Λ(t) overshoots the reference interval.
const LAMBDA_SLACK: f64 = 1e-6;

/// The reference dynamics read off at scaled time: φ(Λ(t_k)), Δω(Λ(t_k))
/// and g(Λ(t_k)) for every sample of the controlled grid, together with
/// α(t_k) and Λ(t_k).
///
/// Every FFST quantity is a pointwise function of these samples, so they
/// are computed once and shared by the residual, the root solver and
/// the synthesis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledReference {
    pub grid: TimeGrid,
    pub alpha: Vec<f64>,
    pub lambda: Vec<f64>,
    pub states: Vec<TwoLevelState>,
    pub delta_omega: Vec<f64>,
    pub coupling: Vec<f64>,
}

impl ScaledReference {
    pub fn new(reference: &ReferenceTrajectory, profile: &MagnificationProfile) -> Result<Self> {
        let rgrid = reference.grid;
        let lo = rgrid.t0();
        let hi = rgrid.t_end();
        if let Some(k) = profile
            .lambda
            .iter()
            .position(|&l| !(l >= lo - LAMBDA_SLACK && l <= hi + LAMBDA_SLACK))
        {
            return Err(Error::Domain(format!(
                "scaled time {} at sample {k} leaves the reference interval [{lo}, {hi}]",
                profile.lambda[k]
            )));
        }
        let lookups: Vec<(TwoLevelState, f64, f64)> = profile
            .lambda
            .par_iter()
            .map(|&l| {
                let l = l.clamp(lo, hi);
                let mut x = rgrid.position(l)?;
                // land exactly on samples when Λ reproduces a grid time
                if (x - x.round()).abs() < 1e-9 {
                    x = x.round();
                }
                let state = if x.fract() == 0.0 {
                    reference.states[x as usize]
                } else {
                    reference.state_at(l)?
                };
                Ok((
                    state,
                    cubic_at(&reference.drive.delta_omega, x),
                    cubic_at(&reference.drive.coupling, x),
                ))
            })
            .collect::<Result<_>>()?;
        let mut states = Vec::with_capacity(lookups.len());
        let mut delta_omega = Vec::with_capacity(lookups.len());
        let mut coupling = Vec::with_capacity(lookups.len());
        for (s, d, g) in lookups {
            states.push(s);
            delta_omega.push(d);
            coupling.push(g);
        }
        Ok(Self {
            grid: profile.grid,
            alpha: profile.alpha.clone(),
            lambda: profile.lambda.clone(),
            states,
            delta_omega,
            coupling,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The FFST target φ(Λ(T_F)) with the additional phase `f2` on level 2.
    pub fn target(&self, f2_final: f64) -> TwoLevelState {
        self.states[self.len() - 1].with_relative_phase(f2_final)
    }
}
