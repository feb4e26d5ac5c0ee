//! Command implementations. Each returns one [`Summary`] per run and
//! writes its tables into the output directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fastforward::analysis::{trajectory_shift_analysis, verify_control, TrajectoryShiftSeries, SHIFT_HYSTERESIS};
use fastforward::device::{
    coupling_strength, duration_ns, flux_frequency, flux_schedule_for, rwa_emulation_map,
};
use fastforward::dynamics::{ReferenceTrajectory, TimeGrid, TwoLevelState};
use fastforward::ffst::{
    build_beta_map, build_magnification, extract_scts, ControlSchedule, PhaseEquation, ScaledReference,
    SpeedControlledTrajectory, LN_BETA_FLOOR,
};
use fastforward::itt::{detect_gaps, BridgeParams, Gap, GapKind};
use fastforward::reference::{solve_reference, CosineSweepSpec};
use fastforward::scenario::{run_fast_forward, run_sta, IttRun, RunOptions};
use fastforward::sta::{adiabatic_target, StaSweep};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Baseline, RunConfig, Scenario, SCHEMA_VERSION};
use crate::export::{read_columns, write_json, ExportError, Table};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Core(#[from] fastforward::Error),
    #[error(transparent)]
    Export(#[from] ExportError),
    #[error("{0}")]
    Unsupported(String),
    #[error("cannot create {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct SctSummary {
    pub label: String,
    pub start_time: f64,
    pub end_time: f64,
    pub f2_start: f64,
    pub f2_end: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapSummary {
    pub kind: &'static str,
    pub t_start: f64,
    pub t_end: f64,
    pub center: f64,
    pub min_separation: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CostSummary {
    pub initial: f64,
    pub integrated_residual: f64,
    pub per_bridge: Vec<f64>,
    pub evaluations: usize,
    pub converged: bool,
    pub winding: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeviceSummary {
    pub g_ghz: f64,
    pub g_from_capacitance_ghz: f64,
    pub omega2_ghz: f64,
    pub band_ghz: (f64, f64),
    pub duration_ns: f64,
    pub max_roundtrip_error_ghz: f64,
    pub rwa_validity_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub t_f: f64,
    pub direction: fastforward::analysis::GapDirection,
    pub zero_root_intervals: Vec<(f64, f64)>,
    pub narrow_gap_times: Vec<f64>,
}

/// Machine-readable record of one run. Field order is fixed, so equal
/// inputs give byte-identical files.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema_version: i64,
    pub command: String,
    pub scenario: String,
    pub delta_omega0: f64,
    pub t_ref: f64,
    pub t_f: f64,
    pub n_steps: usize,
    pub ln_beta_floor: f64,
    pub rng_used: bool,
    pub fidelities: BTreeMap<String, f64>,
    /// Fidelity compared against `--require-fidelity`.
    pub checked_fidelity: Option<f64>,
    pub target_populations: Option<(f64, f64)>,
    pub final_populations: Option<(f64, f64)>,
    pub shift_count: Option<usize>,
    pub shift_times: Vec<f64>,
    pub scts: Vec<SctSummary>,
    pub gaps: Vec<GapSummary>,
    pub bridges: Vec<BridgeParams>,
    pub cost: Option<CostSummary>,
    pub device: Option<DeviceSummary>,
    pub gap_scan: Vec<ScanSummary>,
    pub warnings: Vec<String>,
}

impl Summary {
    fn new(command: &str, cfg: &RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            scenario: cfg.scenario.name().to_string(),
            delta_omega0: cfg.delta_omega0,
            t_ref: cfg.t_ref,
            t_f: cfg.t_f,
            n_steps: cfg.grid.n_steps,
            ln_beta_floor: LN_BETA_FLOOR,
            rng_used: false,
            fidelities: BTreeMap::new(),
            checked_fidelity: None,
            target_populations: None,
            final_populations: None,
            shift_count: None,
            shift_times: Vec::new(),
            scts: Vec::new(),
            gaps: Vec::new(),
            bridges: Vec::new(),
            cost: None,
            device: None,
            gap_scan: Vec::new(),
            warnings: Vec::new(),
        }
    }

    fn record_branches(&mut self, scts: &[SpeedControlledTrajectory], gaps: &[Gap]) {
        self.scts = scts
            .iter()
            .map(|b| SctSummary {
                label: b.label.clone(),
                start_time: b.start_time(),
                end_time: b.end_time(),
                f2_start: b.f2[b.start],
                f2_end: b.f2[b.end],
                samples: b.end + 1 - b.start,
            })
            .collect();
        self.gaps = gaps
            .iter()
            .map(|g| GapSummary {
                kind: match g.kind {
                    GapKind::Temporal => "temporal",
                    GapKind::Narrow => "narrow",
                },
                t_start: g.t_start,
                t_end: g.t_end,
                center: scts
                    .first()
                    .map(|b| b.grid.time(g.center_index))
                    .unwrap_or_else(|| g.midpoint()),
                min_separation: g.min_separation,
            })
            .collect();
    }

    fn record_itt(&mut self, itt: &IttRun) {
        let o = &itt.outcome;
        self.bridges = o.vt.bridge_params.clone();
        self.cost = Some(CostSummary {
            initial: o.initial_cost,
            integrated_residual: o.report.integrated_residual,
            per_bridge: o.report.per_gap_residual.clone(),
            evaluations: o.report.evaluations,
            converged: o.converged,
            winding: o.vt.winding(),
        });
        self.fidelities.insert("itt".into(), itt.report.fidelity);
        self.checked_fidelity = Some(itt.report.fidelity);
        self.target_populations = Some(itt.report.target_state.populations());
        self.final_populations = Some(itt.report.final_state.populations());
    }
}

/// Resolved output location and switches for one run.
#[derive(Debug, Clone)]
pub struct Output {
    pub dir: PathBuf,
    pub tables: bool,
    pub beta_map: bool,
}

impl Output {
    pub fn new(cfg: &RunConfig, override_dir: Option<&Path>) -> Self {
        Self {
            dir: override_dir.map(Path::to_path_buf).unwrap_or_else(|| cfg.output.dir.clone()),
            tables: cfg.output.tables,
            beta_map: cfg.output.beta_map,
        }
    }

    fn prepare(&self) -> Result<(), PipelineError> {
        std::fs::create_dir_all(&self.dir).map_err(|source| PipelineError::Io {
            path: self.dir.clone(),
            source,
        })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn child(&self, name: &str) -> Self {
        Self {
            dir: self.dir.join(name),
            ..self.clone()
        }
    }

    fn finish(&self, summary: &Summary) -> Result<(), PipelineError> {
        write_json(&self.path("summary.json"), summary)?;
        Ok(())
    }
}

fn options(cfg: &RunConfig) -> RunOptions {
    RunOptions {
        n_steps: cfg.grid.n_steps,
        link_threshold: cfg.grid.link_threshold,
        itt: cfg.itt.clone(),
    }
}

fn reference(cfg: &RunConfig) -> Result<ReferenceTrajectory, PipelineError> {
    let spec = CosineSweepSpec::new(cfg.delta_omega0, cfg.t_ref)?;
    Ok(solve_reference(&spec, TwoLevelState::first(), cfg.grid.n_steps)?)
}

fn population_columns(table: Table, name: &str, populations: &[(f64, f64)]) -> Table {
    table
        .column(&format!("p1_{name}"), populations.iter().map(|p| p.0))
        .column(&format!("p2_{name}"), populations.iter().map(|p| p.1))
}

fn sct_table(grid: &TimeGrid, scts: &[SpeedControlledTrajectory]) -> Table {
    let mut t = Table::new().column("t", grid.times());
    for b in scts {
        t = t.optional(
            &format!("f2_{}", b.label),
            (0..grid.len()).map(|k| b.valid[k].then(|| b.canonical(k))),
        );
    }
    t
}

fn control_table(
    control: &ControlSchedule,
    scaling: Option<(&[f64], &[f64])>,
    f2: &[f64],
    lift: &[f64],
) -> Table {
    let n = control.grid.len();
    let (alpha, lambda): (Vec<Option<f64>>, Vec<Option<f64>>) = match scaling {
        Some((a, l)) => (a.iter().copied().map(Some).collect(), l.iter().copied().map(Some).collect()),
        None => (vec![None; n], vec![None; n]),
    };
    Table::new()
        .column("t", control.grid.times())
        .optional("alpha", alpha)
        .optional("lambda", lambda)
        .column("f2", f2.iter().copied())
        .column("f2_lift", lift.iter().copied())
        .column("delta_omega_ff", control.delta_omega_ff.iter().copied())
        .column("d_delta_omega_ff", control.derivative.iter().copied())
        .column("coupling_ff", control.coupling_ff.iter().copied())
}

fn shift_table(s: &TrajectoryShiftSeries) -> Table {
    Table::new()
        .column("t", s.grid.times())
        .optional(&format!("overlap_{}", s.label_x), s.overlap_x.iter().copied())
        .optional(&format!("overlap_{}", s.label_y), s.overlap_y.iter().copied())
        .optional(
            "dominant_is_x",
            s.dominant
                .iter()
                .map(|d| d.as_ref().map(|l| if *l == s.label_x { 1.0 } else { 0.0 })),
        )
}

fn write_beta_map(eq: &PhaseEquation, cfg: &RunConfig, out: &Output) -> Result<(), PipelineError> {
    let map = build_beta_map(eq, cfg.grid.map_rows, cfg.grid.n_phase)?;
    let n_phase = map.n_phase();
    let rows = map.times.len() * n_phase;
    let mut t = Vec::with_capacity(rows);
    let mut f = Vec::with_capacity(rows);
    let mut beta = Vec::with_capacity(rows);
    let mut ln = Vec::with_capacity(rows);
    for (i, &ti) in map.times.iter().enumerate() {
        for (j, &fj) in map.phases.iter().enumerate() {
            t.push(ti);
            f.push(fj);
            beta.push(map.values[i][j]);
            ln.push(map.ln_abs(i, j));
        }
    }
    Table::new()
        .column("t", t)
        .column("f2", f)
        .column("beta", beta)
        .column("ln_abs_beta", ln)
        .write(&out.path("beta_map.csv"))?;
    Ok(())
}

/// The reference sweep alone.
pub fn run_reference(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    out.prepare()?;
    let traj = reference(cfg)?;
    let mut summary = Summary::new("reference", cfg);
    summary.t_f = cfg.t_ref;
    summary.final_populations = Some(traj.final_state().populations());
    summary
        .fidelities
        .insert("norm_drift".into(), traj.max_norm_drift());
    if out.tables {
        population_columns(Table::new().column("t", traj.grid.times()), "reference", &traj.populations())
            .write(&out.path("populations.csv"))?;
    }
    out.finish(&summary)?;
    Ok(vec![summary])
}

/// Phase equation of the configured scenario, without optimization.
pub fn run_map(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    out.prepare()?;
    let eq = match cfg.scenario {
        Scenario::Sta => {
            let spec = CosineSweepSpec::new(cfg.delta_omega0, cfg.t_f)?;
            StaSweep::new(spec, cfg.grid.n_steps, cfg.branch)?.phase_equation()
        }
        _ => {
            let traj = reference(cfg)?;
            let grid = TimeGrid::span(cfg.t_f, cfg.grid.n_steps)?;
            let profile = build_magnification(cfg.t_ref, cfg.t_f, grid)?;
            PhaseEquation::fast_forward(&ScaledReference::new(&traj, &profile)?)
        }
    };
    let scts = extract_scts(&eq, cfg.grid.link_threshold);
    let gaps = detect_gaps(&eq, &scts);
    let mut summary = Summary::new("map", cfg);
    summary.record_branches(&scts, &gaps);
    if out.beta_map {
        write_beta_map(&eq, cfg, out)?;
    }
    if out.tables {
        sct_table(&eq.grid, &scts).write(&out.path("scts.csv"))?;
    }
    out.finish(&summary)?;
    Ok(vec![summary])
}

/// Output of one synthesis, kept for the device mapping.
struct Synthesis {
    summary: Summary,
    control: ControlSchedule,
    initial: TwoLevelState,
    target: TwoLevelState,
}

fn synthesize_one(cfg: &RunConfig, out: &Output) -> Result<Synthesis, PipelineError> {
    out.prepare()?;
    let opts = options(cfg);
    let mut summary = Summary::new("synthesize", cfg);
    let want = |b: Baseline| cfg.baselines.contains(&b);
    match cfg.scenario {
        Scenario::Sta => {
            let spec = CosineSweepSpec::new(cfg.delta_omega0, cfg.t_f)?;
            let run = run_sta(spec, cfg.branch, cfg.bridge, &opts)?;
            summary.record_branches(&run.scts, &run.gaps);
            summary.record_itt(&run.itt);
            if want(Baseline::Unmodified) {
                summary.fidelities.insert("unmodified".into(), run.unmodified.fidelity);
            }
            if out.tables {
                let vt = &run.itt.outcome.vt;
                let mut pops = Table::new().column("t", run.sweep.grid.times());
                pops = population_columns(pops, "itt", &run.itt.report.populations);
                if want(Baseline::Unmodified) {
                    pops = population_columns(pops, "unmodified", &run.unmodified.populations);
                }
                pops.write(&out.path("populations.csv"))?;
                control_table(&run.itt.control, None, &vt.f2(), &vt.lift).write(&out.path("control.csv"))?;
                sct_table(&run.sweep.grid, &run.scts).write(&out.path("scts.csv"))?;
            }
            if out.beta_map {
                write_beta_map(&run.equation, cfg, out)?;
            }
            let initial = run.sweep.eigenstate(0);
            Ok(Synthesis {
                summary,
                control: run.itt.control,
                initial,
                target: run.target.state,
            })
        }
        Scenario::Accelerate | Scenario::Decelerate | Scenario::DeviceMap => {
            let traj = reference(cfg)?;
            let run = run_fast_forward(&traj, cfg.t_f, &cfg.plan, &opts)?;
            summary.record_branches(&run.scts, &run.gaps);
            summary.record_itt(&run.itt);
            if want(Baseline::Naive) {
                summary.fidelities.insert("naive".into(), run.naive.fidelity);
            }
            if want(Baseline::AlphaScaled) {
                summary.fidelities.insert("alpha-scaled".into(), run.alpha_scaled.fidelity);
            }
            let shifts = match (run.branch("X"), run.branch("Y")) {
                (Some(x), Some(y)) => Some(trajectory_shift_analysis(
                    &run.itt.states,
                    x,
                    y,
                    &run.scaled,
                    SHIFT_HYSTERESIS,
                )?),
                _ => None,
            };
            if let Some(s) = &shifts {
                summary.shift_count = Some(s.shift_count());
                summary.shift_times = s.shift_times.clone();
            }
            if out.tables {
                let vt = &run.itt.outcome.vt;
                let mut pops = Table::new().column("t", run.scaled.grid.times());
                pops = population_columns(pops, "itt", &run.itt.report.populations);
                if want(Baseline::Naive) {
                    pops = population_columns(pops, "naive", &run.naive.populations);
                }
                if want(Baseline::AlphaScaled) {
                    pops = population_columns(pops, "alpha_scaled", &run.alpha_scaled.populations);
                }
                pops.write(&out.path("populations.csv"))?;
                control_table(
                    &run.itt.control,
                    Some((&run.profile.alpha, &run.profile.lambda)),
                    &vt.f2(),
                    &vt.lift,
                )
                .write(&out.path("control.csv"))?;
                sct_table(&run.scaled.grid, &run.scts).write(&out.path("scts.csv"))?;
                if let Some(s) = &shifts {
                    shift_table(s).write(&out.path("shifts.csv"))?;
                }
            }
            if out.beta_map {
                write_beta_map(&run.equation, cfg, out)?;
            }
            Ok(Synthesis {
                summary,
                control: run.itt.control,
                initial: traj.initial_state(),
                target: run.target,
            })
        }
        Scenario::ReferenceOnly => Err(PipelineError::Unsupported(
            "the reference-only scenario has no control to synthesize; use the reference command".into(),
        )),
    }
}

fn sweep_values(cfg: &RunConfig) -> Vec<f64> {
    if cfg.t_f_sweep.is_empty() {
        vec![cfg.t_f]
    } else {
        cfg.t_f_sweep.clone()
    }
}

/// Runs `one` for every entry of the duration sweep in parallel, each in
/// its own `tf_<value>` directory. Without a sweep the output directory
/// is used directly.
fn fan_out(
    cfg: &RunConfig,
    out: &Output,
    one: impl Fn(&RunConfig, &Output) -> Result<Summary, PipelineError> + Sync,
) -> Result<Vec<Summary>, PipelineError> {
    if cfg.t_f_sweep.is_empty() {
        return Ok(vec![one(cfg, out)?]);
    }
    let summaries: Vec<Summary> = sweep_values(cfg)
        .par_iter()
        .map(|&t_f| {
            let mut c = cfg.clone();
            c.t_f = t_f;
            c.t_f_sweep.clear();
            one(&c, &out.child(&format!("tf_{t_f}")))
        })
        .collect::<Result<_, _>>()?;
    out.prepare()?;
    write_json(&out.path("sweep.json"), &summaries)?;
    Ok(summaries)
}

pub fn run_synthesize(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    fan_out(cfg, out, |c, o| {
        let s = synthesize_one(c, o)?.summary;
        o.finish(&s)?;
        Ok(s)
    })
}

/// Partner frequency that puts the required ω₁ range in the middle of
/// the tunable band.
fn centred_partner_frequency(
    control: &ControlSchedule,
    spec: &fastforward::device::TransmonSpec,
    g_ghz: f64,
) -> Result<f64, PipelineError> {
    let (low, high) = spec.band()?;
    let (lo, hi) = control
        .delta_omega_ff
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &d| (a.min(d), b.max(d)));
    Ok(0.5 * (low + high) - 0.5 * g_ghz * (lo + hi))
}

/// Maps the synthesized control onto a flux-tunable transmon pair and
/// checks that the realized waveform reproduces the dynamics.
pub fn run_device(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    fan_out(cfg, out, |c, o| {
        let syn = synthesize_one(c, o)?;
        let mut summary = syn.summary;
        summary.command = "device".into();
        let dev = &c.device;
        summary.warnings.extend(dev.transmon.validate()?);
        let omega2 = match dev.omega2_ghz {
            Some(w) => w,
            None => centred_partner_frequency(&syn.control, &dev.transmon, dev.g_ghz)?,
        };
        let wave = flux_schedule_for(&syn.control, &dev.transmon, omega2, dev.g_ghz)?;
        // Rebuild the control from the realized qubit frequency.
        let realized: Vec<f64> = wave
            .flux
            .iter()
            .map(|&phi| flux_frequency(phi, &dev.transmon).map(|w| (w - omega2) / dev.g_ghz))
            .collect::<Result<_, _>>()?;
        let realized = ControlSchedule::new(syn.control.grid, realized, syn.control.coupling_ff.clone())?;
        let flux_fid = verify_control(&realized, syn.initial, syn.target, "flux")?.fidelity;
        summary.fidelities.insert("flux".into(), flux_fid);

        let anharmonicity = dev.anharmonicity_ghz.map(|a| a / dev.g_ghz);
        let rwa = rwa_emulation_map(&syn.control, 1.0, anharmonicity);
        let states = rwa.integrate(&syn.control, syn.initial)?;
        let rwa_fid = syn.target.fidelity(states.last().expect("non-empty run"));
        summary.fidelities.insert("rwa".into(), rwa_fid);
        summary.warnings.extend(rwa.warnings.iter().cloned());
        summary.device = Some(DeviceSummary {
            g_ghz: dev.g_ghz,
            g_from_capacitance_ghz: coupling_strength(&dev.transmon),
            omega2_ghz: omega2,
            band_ghz: dev.transmon.band()?,
            duration_ns: duration_ns(c.t_f, dev.g_ghz),
            max_roundtrip_error_ghz: wave.max_roundtrip_error,
            rwa_validity_ratio: rwa.validity_ratio,
        });
        if o.tables {
            Table::new()
                .column("t_ns", wave.times_ns.iter().copied())
                .column("flux", wave.flux.iter().copied())
                .column("omega1_ghz", wave.omega1_ghz.iter().copied())
                .write(&o.path("flux.csv"))?;
        }
        o.finish(&summary)?;
        Ok(summary)
    })
}

/// Root structure of the fast-forward equation across the duration sweep.
pub fn run_scan(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    if cfg.scenario == Scenario::Sta {
        return Err(PipelineError::Unsupported("the gap scan applies to fast-forward scenarios".into()));
    }
    out.prepare()?;
    let traj = reference(cfg)?;
    let profiles = fastforward::analysis::gap_direction_scan(&traj, &sweep_values(cfg), cfg.grid.n_steps)?;
    let mut summary = Summary::new("scan", cfg);
    for p in &profiles {
        if out.tables {
            Table::new()
                .column("t", p.times.iter().copied())
                .column("roots", p.root_counts.iter().map(|&c| c as f64))
                .write(&out.path(&format!("roots_tf_{}.csv", p.t_f)))?;
        }
        summary.gap_scan.push(ScanSummary {
            t_f: p.t_f,
            direction: p.direction,
            zero_root_intervals: p.zero_root_intervals.clone(),
            narrow_gap_times: p.narrow_gap_times.clone(),
        });
    }
    out.finish(&summary)?;
    Ok(vec![summary])
}

/// Re-integrates a control table written by `synthesize` (or produced
/// elsewhere) and scores it against the scenario's target.
pub fn run_verify(cfg: &RunConfig, control_path: &Path, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    out.prepare()?;
    let cols = read_columns(control_path, &["t", "delta_omega_ff", "coupling_ff"])?;
    let (t, dw, g) = (&cols[0], cols[1].clone(), cols[2].clone());
    if t.len() < 2 {
        return Err(PipelineError::Unsupported("control table needs at least two rows".into()));
    }
    let grid = TimeGrid::new(t[0], t[t.len() - 1], t.len() - 1)?;
    let tol = 1e-9 * grid.duration().max(1.0);
    if let Some(k) = (0..t.len()).find(|&k| (t[k] - grid.time(k)).abs() > tol) {
        return Err(PipelineError::Unsupported(format!(
            "control table row {} breaks the uniform time grid (t = {})",
            k + 2,
            t[k]
        )));
    }
    let control = ControlSchedule::new(grid, dw, g)?;
    let duration = grid.duration();
    let (initial, target) = match cfg.scenario {
        Scenario::Sta => {
            let spec = CosineSweepSpec::new(cfg.delta_omega0, duration)?;
            let sweep = StaSweep::new(spec, grid.n_steps(), cfg.branch)?;
            (sweep.eigenstate(0), adiabatic_target(&sweep).state)
        }
        _ => {
            let traj = reference(cfg)?;
            (traj.initial_state(), traj.final_state())
        }
    };
    let report = verify_control(&control, initial, target, "verify")?;
    let mut summary = Summary::new("verify", cfg);
    summary.t_f = duration;
    summary.n_steps = grid.n_steps();
    summary.fidelities.insert("verify".into(), report.fidelity);
    summary.checked_fidelity = Some(report.fidelity);
    summary.target_populations = Some(target.populations());
    summary.final_populations = Some(report.final_state.populations());
    if out.tables {
        population_columns(Table::new().column("t", grid.times()), "verify", &report.populations)
            .write(&out.path("populations.csv"))?;
    }
    out.finish(&summary)?;
    Ok(vec![summary])
}

/// Everything the scenario calls for.
pub fn run_full(cfg: &RunConfig, out: &Output) -> Result<Vec<Summary>, PipelineError> {
    match cfg.scenario {
        Scenario::ReferenceOnly => run_reference(cfg, out),
        Scenario::DeviceMap => run_device(cfg, out),
        _ => run_synthesize(cfg, out),
    }
}
