//! End-to-end workflows: from a reference sweep to verified controls for
//! acceleration, deceleration and shortcut-to-adiabaticity runs.

use crate::analysis::{simulate_control, FidelityReport};
use crate::dynamics::{ReferenceTrajectory, TimeGrid, TwoLevelState};
use crate::ffst::{
    alpha_scaled_control, build_magnification, extract_scts, naive_scaled_control,
    synthesize_control, ControlSchedule, MagnificationProfile, PhaseEquation, ScaledReference,
    SpeedControlledTrajectory,
};
use crate::itt::{
    detect_gaps, optimize_virtual_trajectory, BridgeKind, CrossingPlan, Gap, IttOutcome,
    IttSettings, VirtualTrajectoryPlan,
};
use crate::sta::{adiabatic_target, synthesize_sta_control, AdiabaticTarget, Branch, StaSweep};
use crate::reference::CosineSweepSpec;
use crate::Result;

/// Numerical knobs shared by all workflows.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub n_steps: usize,
    pub link_threshold: f64,
    pub itt: IttSettings,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            n_steps: crate::reference::DEFAULT_STEPS,
            link_threshold: crate::ffst::DEFAULT_LINK_THRESHOLD,
            itt: IttSettings::default(),
        }
    }
}

/// A virtual trajectory, the control synthesized from it and its
/// verification.
#[derive(Debug, Clone)]
pub struct IttRun {
    pub plan: VirtualTrajectoryPlan,
    pub outcome: IttOutcome,
    pub control: ControlSchedule,
    pub report: FidelityReport,
    pub states: Vec<TwoLevelState>,
}

#[derive(Debug, Clone)]
pub struct FastForwardRun {
    pub t_f: f64,
    pub profile: MagnificationProfile,
    pub scaled: ScaledReference,
    pub equation: PhaseEquation,
    pub scts: Vec<SpeedControlledTrajectory>,
    pub gaps: Vec<Gap>,
    pub target: TwoLevelState,
    pub naive: FidelityReport,
    pub alpha_scaled: FidelityReport,
    pub itt: IttRun,
}

impl FastForwardRun {
    pub fn branch(&self, label: &str) -> Option<&SpeedControlledTrajectory> {
        self.scts.iter().find(|b| b.label == label)
    }
}

#[allow(clippy::too_many_arguments)]
fn run_plan(
    equation: &PhaseEquation,
    scts: &[SpeedControlledTrajectory],
    gaps: &[Gap],
    plan: &CrossingPlan,
    kind: BridgeKind,
    settings: &IttSettings,
    synthesize: impl Fn(&[f64]) -> Result<ControlSchedule>,
    initial: TwoLevelState,
    target: TwoLevelState,
) -> Result<IttRun> {
    let resolved = VirtualTrajectoryPlan::resolve(scts, gaps, plan, kind)?;
    let outcome = optimize_virtual_trajectory(&resolved, equation, settings, None)?;
    let control = synthesize(&outcome.vt.lift)?;
    let run = simulate_control(&control, initial)?;
    let report = FidelityReport::from_run(&run, target, "itt");
    Ok(IttRun {
        plan: resolved,
        outcome,
        control,
        report,
        states: run.states,
    })
}

/// Accelerates (T_F < T) or decelerates (T_F > T) the reference dynamics
/// and compares the inter-trajectory control with both naive baselines.
pub fn run_fast_forward(
    reference: &ReferenceTrajectory,
    t_f: f64,
    plan: &CrossingPlan,
    options: &RunOptions,
) -> Result<FastForwardRun> {
    let grid = TimeGrid::span(t_f, options.n_steps)?;
    let profile = build_magnification(reference.grid.duration(), t_f, grid)?;
    let scaled = ScaledReference::new(reference, &profile)?;
    let equation = PhaseEquation::fast_forward(&scaled);
    let scts = extract_scts(&equation, options.link_threshold);
    let gaps = detect_gaps(&equation, &scts);
    let initial = reference.initial_state();
    let target = scaled.target(0.0);
    let naive = FidelityReport::from_run(
        &simulate_control(&naive_scaled_control(&scaled)?, initial)?,
        target,
        "naive",
    );
    let alpha_scaled = FidelityReport::from_run(
        &simulate_control(&alpha_scaled_control(&scaled)?, initial)?,
        target,
        "alpha-scaled",
    );
    let itt = run_plan(
        &equation,
        &scts,
        &gaps,
        plan,
        BridgeKind::Splice,
        &options.itt,
        |path| synthesize_control(path, &scaled),
        initial,
        target,
    )?;
    Ok(FastForwardRun {
        t_f,
        profile,
        scaled,
        equation,
        scts,
        gaps,
        target,
        naive,
        alpha_scaled,
        itt,
    })
}

#[derive(Debug, Clone)]
pub struct StaRun {
    pub sweep: StaSweep,
    pub equation: PhaseEquation,
    pub scts: Vec<SpeedControlledTrajectory>,
    pub gaps: Vec<Gap>,
    pub target: AdiabaticTarget,
    pub unmodified: FidelityReport,
    pub itt: IttRun,
}

/// Shortcut to adiabaticity over `spec.duration` = T_F, following
/// `branch`. Gaps are bridged with `kind`.
pub fn run_sta(spec: CosineSweepSpec, branch: Branch, kind: BridgeKind, options: &RunOptions) -> Result<StaRun> {
    let sweep = StaSweep::new(spec, options.n_steps, branch)?;
    let equation = sweep.phase_equation();
    let scts = extract_scts(&equation, options.link_threshold);
    let gaps = detect_gaps(&equation, &scts);
    let target = adiabatic_target(&sweep);
    let initial = sweep.eigenstate(0);
    let unmodified = FidelityReport::from_run(
        &simulate_control(&sweep.unmodified_control()?, initial)?,
        target.state,
        "unmodified",
    );
    let itt = run_plan(
        &equation,
        &scts,
        &gaps,
        &CrossingPlan::default(),
        kind,
        &options.itt,
        |path| synthesize_sta_control(path, &sweep),
        initial,
        target.state,
    )?;
    Ok(StaRun {
        sweep,
        equation,
        scts,
        gaps,
        target,
        unmodified,
        itt,
    })
}
