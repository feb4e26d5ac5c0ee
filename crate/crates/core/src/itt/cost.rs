use serde::Serialize;

use super::VirtualTrajectory;
use crate::ffst::PhaseEquation;
use crate::numeric::trapezoid;
use crate::{Error, Result};

/// ∫|β(t, f₂(t))| dt along a path and its share inside each bridge window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IttCostReport {
    pub integrated_residual: f64,
    pub per_gap_residual: Vec<f64>,
    pub evaluations: usize,
}

pub(crate) fn integrated_abs_residual(eq: &PhaseEquation, path: &[f64]) -> f64 {
    trapezoid(&eq.abs_residual_along(path), eq.grid.step())
}

/// Trapezoidal ∫|β| along the trajectory, decomposed over bridge windows.
pub fn itt_cost(vt: &VirtualTrajectory, eq: &PhaseEquation) -> Result<IttCostReport> {
    if vt.lift.len() != eq.len() || !vt.grid.same_span(&eq.grid, 1e-12) {
        return Err(Error::SampleCount {
            expected: eq.len(),
            found: vt.lift.len(),
        });
    }
    let abs = eq.abs_residual_along(&vt.lift);
    let h = eq.grid.step();
    let n = eq.grid.n_steps();
    let per_gap_residual = vt
        .bridge_params
        .iter()
        .map(|p| {
            let (lo, hi) = p.window();
            let first = eq.grid.position(lo.max(eq.grid.t0())).map(|x| x.ceil() as usize).unwrap_or(0);
            let last = eq
                .grid
                .position(hi.min(eq.grid.t_end()))
                .map(|x| (x.floor() as usize).min(n))
                .unwrap_or(n);
            if first >= last {
                0.0
            } else {
                trapezoid(&abs[first..=last], h)
            }
        })
        .collect();
    Ok(IttCostReport {
        integrated_residual: trapezoid(&abs, h),
        per_gap_residual,
        evaluations: 1,
    })
}
