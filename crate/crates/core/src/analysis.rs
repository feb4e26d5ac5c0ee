//! Verification of synthesized controls and the diagnostics built on top
//! of it: which speed-controlled trajectory an inter-trajectory run is
//! closest to, how gaps open as T_F varies, and invariance under a
//! common frequency shift.

use serde::Serialize;

use crate::dynamics::{integrate_schrodinger, LevelDrive, ReferenceTrajectory, TimeGrid, TwoLevelState};
use crate::ffst::{
    build_magnification, extract_scts, ControlSchedule, PhaseEquation, ScaledReference,
    SpeedControlledTrajectory, DEFAULT_LINK_THRESHOLD,
};
use crate::itt::{detect_gaps, GapKind};
use crate::{Error, Result};

/// Default dominance hysteresis for shift detection.
pub const SHIFT_HYSTERESIS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport {
    pub control_label: String,
    pub fidelity: f64,
    pub final_state: TwoLevelState,
    pub target_state: TwoLevelState,
    pub populations: Vec<(f64, f64)>,
}

/// Integrates the control from `initial`.
pub fn simulate_control(control: &ControlSchedule, initial: TwoLevelState) -> Result<ReferenceTrajectory> {
    integrate_schrodinger(&control.to_drive(), initial)
}

/// Integrates the control and scores the final state by |⟨target|final⟩|.
pub fn verify_control(
    control: &ControlSchedule,
    initial: TwoLevelState,
    target: TwoLevelState,
    label: &str,
) -> Result<FidelityReport> {
    let run = simulate_control(control, initial)?;
    Ok(FidelityReport::from_run(&run, target, label))
}

impl FidelityReport {
    pub fn from_run(run: &ReferenceTrajectory, target: TwoLevelState, label: &str) -> Self {
        let final_state = run.final_state();
        Self {
            control_label: label.to_string(),
            fidelity: target.fidelity(&final_state),
            final_state,
            target_state: target,
            populations: run.populations(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryShiftSeries {
    pub grid: TimeGrid,
    pub label_x: String,
    pub label_y: String,
    /// |⟨Ψ_X(t)|Ψ(t)⟩|, absent where branch X has no root.
    pub overlap_x: Vec<Option<f64>>,
    pub overlap_y: Vec<Option<f64>>,
    /// Label of the closer branch once dominance is established.
    pub dominant: Vec<Option<String>>,
    pub shift_times: Vec<f64>,
}

impl TrajectoryShiftSeries {
    pub fn shift_count(&self) -> usize {
        self.shift_times.len()
    }
}

/// Compares an integrated run with the fast-forward states
/// φ_m(Λ(t)) e^{i f_m(t)} of two branches.
///
/// Dominance passes from one branch to the other only when the other
/// overlap exceeds it by more than `hysteresis`; before the first such
/// separation no branch is dominant. Where either branch is absent the
/// previous dominance is kept.
pub fn trajectory_shift_analysis(
    run: &[TwoLevelState],
    x: &SpeedControlledTrajectory,
    y: &SpeedControlledTrajectory,
    scaled: &ScaledReference,
    hysteresis: f64,
) -> Result<TrajectoryShiftSeries> {
    let n = scaled.len();
    for len in [run.len(), x.f2.len(), y.f2.len()] {
        if len != n {
            return Err(Error::SampleCount { expected: n, found: len });
        }
    }
    let overlap = |b: &SpeedControlledTrajectory, k: usize| {
        b.valid[k].then(|| scaled.states[k].with_relative_phase(b.f2[k]).fidelity(&run[k]))
    };
    let overlap_x: Vec<Option<f64>> = (0..n).map(|k| overlap(x, k)).collect();
    let overlap_y: Vec<Option<f64>> = (0..n).map(|k| overlap(y, k)).collect();
    let mut dominant = Vec::with_capacity(n);
    let mut shift_times = Vec::new();
    let mut current: Option<bool> = None; // Some(true) means X dominates
    for k in 0..n {
        if let (Some(ox), Some(oy)) = (overlap_x[k], overlap_y[k]) {
            let next = match current {
                None if ox - oy > hysteresis => Some(true),
                None if oy - ox > hysteresis => Some(false),
                Some(true) if oy - ox > hysteresis => Some(false),
                Some(false) if ox - oy > hysteresis => Some(true),
                c => c,
            };
            if current.is_some() && next != current {
                shift_times.push(scaled.grid.time(k));
            }
            current = next;
        }
        dominant.push(current.map(|is_x| if is_x { x.label.clone() } else { y.label.clone() }));
    }
    Ok(TrajectoryShiftSeries {
        grid: scaled.grid,
        label_x: x.label.clone(),
        label_y: y.label.clone(),
        overlap_x,
        overlap_y,
        dominant,
        shift_times,
    })
}

/// How the root structure separates near the degenerate points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapDirection {
    /// Branches touch: no gap at all.
    None,
    /// Two branches stay present but are split in phase.
    Horizontal,
    /// Roots disappear for a stretch of time.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapProfile {
    pub t_f: f64,
    pub times: Vec<f64>,
    pub root_counts: Vec<usize>,
    pub zero_root_intervals: Vec<(f64, f64)>,
    pub narrow_gap_times: Vec<f64>,
    pub direction: GapDirection,
}

/// Root-count profiles of β^FF for each controlled duration in `t_f_values`.
pub fn gap_direction_scan(
    reference: &ReferenceTrajectory,
    t_f_values: &[f64],
    n_steps: usize,
) -> Result<Vec<GapProfile>> {
    use rayon::prelude::*;
    t_f_values
        .par_iter()
        .map(|&t_f| {
            let grid = TimeGrid::span(t_f, n_steps)?;
            let profile = build_magnification(reference.grid.duration(), t_f, grid)?;
            let scaled = ScaledReference::new(reference, &profile)?;
            let eq = PhaseEquation::fast_forward(&scaled);
            let scan = eq.root_scan();
            let scts = extract_scts(&eq, DEFAULT_LINK_THRESHOLD);
            let gaps = detect_gaps(&eq, &scts);
            let root_counts: Vec<usize> = scan.iter().map(|r| if r.is_degenerate() { 2 } else { r.count() }).collect();
            let mut zero_root_intervals = Vec::new();
            let mut k = 0;
            while k < scan.len() {
                if scan[k].is_empty() {
                    let s = k;
                    while k < scan.len() && scan[k].is_empty() {
                        k += 1;
                    }
                    zero_root_intervals.push((grid.time(s), grid.time(k - 1)));
                } else {
                    k += 1;
                }
            }
            let narrow_gap_times: Vec<f64> = gaps
                .iter()
                .filter(|g| g.kind == GapKind::Narrow)
                .map(|g| grid.time(g.center_index))
                .collect();
            let direction = if !zero_root_intervals.is_empty() {
                GapDirection::Vertical
            } else if !narrow_gap_times.is_empty() {
                GapDirection::Horizontal
            } else {
                GapDirection::None
            };
            Ok(GapProfile {
                t_f,
                times: grid.times(),
                root_counts,
                zero_root_intervals,
                narrow_gap_times,
                direction,
            })
        })
        .collect()
}

/// Shifts both level frequencies by δ(t) and reports the change in
/// fidelity against `target`; physically this is a global phase, so the
/// result should vanish.
pub fn global_phase_check(
    control: &ControlSchedule,
    shift: &[f64],
    initial: TwoLevelState,
    target: TwoLevelState,
) -> Result<f64> {
    let n = control.grid.len();
    if shift.len() != n {
        return Err(Error::SampleCount {
            expected: n,
            found: shift.len(),
        });
    }
    let plain = LevelDrive::new(
        control.grid,
        control.delta_omega_ff.clone(),
        vec![0.0; n],
        control.coupling_ff.clone(),
    )?;
    let shifted = LevelDrive::new(
        control.grid,
        control.delta_omega_ff.iter().zip(shift).map(|(d, s)| d + s).collect(),
        shift.to_vec(),
        control.coupling_ff.clone(),
    )?;
    let a = plain.integrate(initial)?;
    let b = shifted.integrate(initial)?;
    let fa = target.fidelity(a.last().expect("non-empty"));
    let fb = target.fidelity(b.last().expect("non-empty"));
    Ok((fa - fb).abs())
}

/// Largest deviation, over the run, between the numerical derivative of
/// |φ₁|² and the two closed forms 2g Im(φ₁*φ₂) and −2g|φ₁||φ₂| sin(θ₁ − θ₂).
pub fn population_rate_identity(run: &ReferenceTrajectory) -> f64 {
    let h = run.grid.step();
    let p1: Vec<f64> = run.states.iter().map(|s| s.phi1.norm_sqr()).collect();
    let d = crate::numeric::derivative(&p1, h);
    let mut worst: f64 = 0.0;
    let n = run.states.len();
    for ((s, &g), &dk) in run.states.iter().zip(&run.drive.coupling).zip(&d).take(n - 1).skip(1) {
        let direct = 2.0 * g * (s.phi1.conj() * s.phi2).im;
        let polar = -2.0 * g * s.phi1.norm() * s.phi2.norm() * (s.phi1.arg() - s.phi2.arg()).sin();
        worst = worst.max((dk - direct).abs()).max((dk - polar).abs());
    }
    worst
}
