use serde::{Deserialize, Serialize};

use super::cost::integrated_abs_residual;
use super::{itt_cost, BridgeKind, BridgeParams, Bounds, IttCostReport, NelderMead, VirtualTrajectory, VirtualTrajectoryPlan};
use crate::ffst::PhaseEquation;
use crate::{Error, Result};

/// Parameter box and stopping rule for the bridge optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IttSettings {
    /// Smallest bridge width in units of g⁻¹.
    pub min_width: f64,
    /// Largest bridge width as a fraction of T_F.
    pub max_width_fraction: f64,
    /// How far a bridge centre may leave its gap, as a fraction of T_F.
    pub center_margin_fraction: f64,
    /// Bound on |amplitude| in radians.
    pub amplitude_bound: f64,
    pub max_evaluations: usize,
    pub tolerance: f64,
    pub initial_step: f64,
}

impl Default for IttSettings {
    fn default() -> Self {
        Self {
            min_width: 0.01,
            max_width_fraction: 0.25,
            center_margin_fraction: 0.1,
            amplitude_bound: std::f64::consts::PI,
            max_evaluations: 2000,
            tolerance: 1e-6,
            initial_step: 0.05,
        }
    }
}

impl IttSettings {
    fn bounds(&self, plan: &VirtualTrajectoryPlan) -> Result<Bounds> {
        let t_f = plan.grid.t_end();
        let margin = self.center_margin_fraction * t_f;
        let max_width = match plan.kind {
            BridgeKind::Splice => self.max_width_fraction * t_f,
            BridgeKind::Envelope => 0.5 * t_f,
        };
        if !(self.min_width > 0.0 && self.min_width < max_width) {
            return Err(Error::Domain(format!(
                "bridge width bounds [{}, {max_width}] are empty",
                self.min_width
            )));
        }
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for g in &plan.gaps {
            lower.extend([(g.t_start - margin).max(0.0), self.min_width, -self.amplitude_bound]);
            upper.extend([(g.t_end + margin).min(t_f), max_width, self.amplitude_bound]);
        }
        Bounds::new(lower, upper)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IttOutcome {
    pub vt: VirtualTrajectory,
    pub report: IttCostReport,
    pub initial_params: Vec<BridgeParams>,
    pub initial_cost: f64,
    /// Best cost after each optimizer iteration (non-increasing).
    pub history: Vec<f64>,
    pub converged: bool,
}

fn unpack(x: &[f64]) -> Vec<BridgeParams> {
    x.chunks(3)
        .map(|c| BridgeParams {
            center: c[0],
            width: c[1],
            amplitude: c[2],
        })
        .collect()
}

/// Minimizes ∫|β| over the bridge parameters of `plan`, starting from
/// `init` or the plan's deterministic initial parameters.
pub fn optimize_virtual_trajectory(
    plan: &VirtualTrajectoryPlan,
    eq: &PhaseEquation,
    settings: &IttSettings,
    init: Option<&[BridgeParams]>,
) -> Result<IttOutcome> {
    if eq.len() != plan.grid.len() {
        return Err(Error::SampleCount {
            expected: plan.grid.len(),
            found: eq.len(),
        });
    }
    let initial_params = match init {
        Some(p) => p.to_vec(),
        None => plan.initial_params(settings.min_width),
    };
    let bounds = settings.bounds(plan)?;
    let x0: Vec<f64> = initial_params
        .iter()
        .flat_map(|p| [p.center, p.width, p.amplitude])
        .enumerate()
        .map(|(i, v)| v.clamp(bounds.lower[i], bounds.upper[i]))
        .collect();
    let initial_params = unpack(&x0);
    let initial_cost = integrated_abs_residual(eq, &plan.path(&initial_params)?);

    let nm = NelderMead {
        max_evaluations: settings.max_evaluations,
        tolerance: settings.tolerance,
        initial_step: settings.initial_step,
    };
    let minimum = nm.minimize(
        |x| match plan.path(&unpack(x)) {
            Ok(path) => integrated_abs_residual(eq, &path),
            Err(_) => f64::NAN,
        },
        &x0,
        &bounds,
    )?;
    let best = unpack(&minimum.x);
    let vt = plan.build(&best)?;
    let mut report = itt_cost(&vt, eq)?;
    report.evaluations = minimum.evaluations;
    Ok(IttOutcome {
        vt,
        report,
        initial_params,
        initial_cost,
        history: minimum.history,
        converged: minimum.converged,
    })
}
