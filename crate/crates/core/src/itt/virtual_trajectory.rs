use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use super::gaps::{substantial, Gap, GapKind, MIN_BRANCH_SAMPLES};
use crate::dynamics::TimeGrid;
use crate::ffst::SpeedControlledTrajectory;
use crate::numeric::wrap_phase;
use crate::{Error, Result};

/// A bridge acts on `[center − κ·width, center + κ·width]` with κ = 3.
pub const WINDOW_HALF_WIDTHS: f64 = 3.0;

/// Tolerance for "the chosen branch returns to f₂ ≡ 0 at T_F".
const ENDPOINT_TOLERANCE: f64 = 1e-6;

/// Tolerance for "the chosen branch starts at f₂ ≡ 0".
const START_TOLERANCE: f64 = 0.05;

/// How bridges are shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeKind {
    /// Follow a branch, hand over to the next branch through a smooth
    /// step, and add a Gaussian bump that vanishes outside the window.
    #[default]
    Splice,
    /// A single Gaussian over the whole interval with the linear trend
    /// removed so that both endpoints vanish.
    Envelope,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BridgeParams {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl BridgeParams {
    pub fn window(&self) -> (f64, f64) {
        let half = WINDOW_HALF_WIDTHS * self.width;
        (self.center - half, self.center + half)
    }

    fn gaussian(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.width;
        (-0.5 * u * u).exp()
    }

    /// Gaussian shifted and rescaled to vanish at the window edges, zero
    /// outside.
    fn clipped_bump(&self, t: f64) -> f64 {
        let (lo, hi) = self.window();
        if t < lo || t > hi {
            return 0.0;
        }
        let floor = (-0.5 * WINDOW_HALF_WIDTHS * WINDOW_HALF_WIDTHS).exp();
        (self.gaussian(t) - floor) / (1.0 - floor)
    }

    /// Integrated-Gaussian step, exactly 0 before and 1 after the window.
    fn step(&self, t: f64) -> f64 {
        let (lo, hi) = self.window();
        let e = |x: f64| libm::erf((x - self.center) / (SQRT_2 * self.width));
        (e(t.clamp(lo, hi)) - e(lo)) / (e(hi) - e(lo))
    }
}

/// Which narrow gaps to cross, by approximate time. Temporal gaps are
/// always crossed since no branch continues through them.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CrossingPlan {
    pub crossings: Vec<f64>,
}

impl CrossingPlan {
    pub fn new(crossings: Vec<f64>) -> Self {
        Self { crossings }
    }

    /// One crossing near t = 0.9 g⁻¹.
    pub fn vt_a() -> Self {
        Self::new(vec![0.9])
    }

    /// Three crossings near t = 0.7, 0.9 and 1.0 g⁻¹.
    pub fn vt_b() -> Self {
        Self::new(vec![0.7, 0.9, 1.0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SegmentSource {
    /// On a valid stretch of a speed-controlled trajectory.
    Branch { id: usize, label: String },
    /// Outside the branch's valid run, holding its last value.
    Hold { id: usize, label: String },
    Bridge { index: usize },
    Envelope,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub t_start: f64,
    pub t_end: f64,
    pub index_start: usize,
    pub index_end: usize,
    pub source: SegmentSource,
}

/// A resolved crossing plan: the sequence of branches to follow (lifted
/// so consecutive branches meet without 2π jumps) and the gaps bridged.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualTrajectoryPlan {
    pub grid: TimeGrid,
    pub kind: BridgeKind,
    pub branch_ids: Vec<usize>,
    pub labels: Vec<String>,
    pub branch_paths: Vec<Vec<f64>>,
    branch_valid: Vec<Vec<bool>>,
    /// Bridge j crosses `gaps[j]`.
    pub gaps: Vec<Gap>,
}

fn lift_to(reference: f64, path: &[f64], at: usize) -> Vec<f64> {
    let shift = 2.0 * PI * ((reference - path[at]) / (2.0 * PI)).round();
    path.iter().map(|v| v + shift).collect()
}

impl VirtualTrajectoryPlan {
    pub fn resolve(
        scts: &[SpeedControlledTrajectory],
        gaps: &[Gap],
        plan: &CrossingPlan,
        kind: BridgeKind,
    ) -> Result<Self> {
        let branches = substantial(scts);
        let first = branches
            .first()
            .ok_or_else(|| Error::Construction("no speed-controlled trajectories".into()))?;
        let grid = first.grid;
        let last_index = grid.n_steps();
        let window = 0.1 * grid.duration();

        let temporal: Vec<&Gap> = gaps.iter().filter(|g| g.kind == GapKind::Temporal).collect();
        if let Some(g) = temporal.iter().find(|g| g.left.is_empty() || g.right.is_empty()) {
            return Err(Error::Construction(format!(
                "no branch on one side of the gap [{}, {}]",
                g.t_start, g.t_end
            )));
        }
        let narrow: Vec<&Gap> = gaps.iter().filter(|g| g.kind == GapKind::Narrow).collect();
        if plan.crossings.len() > narrow.len() {
            return Err(Error::Construction(format!(
                "plan requests {} crossings but only {} narrow gaps were detected",
                plan.crossings.len(),
                narrow.len()
            )));
        }
        if kind == BridgeKind::Envelope && !plan.crossings.is_empty() {
            return Err(Error::Construction(
                "envelope bridges do not support narrow-gap crossings".into(),
            ));
        }
        let mut events: Vec<&Gap> = temporal.clone();
        for &c in &plan.crossings {
            let nearest = narrow
                .iter()
                .min_by(|a, b| {
                    let da = (grid.time(a.center_index) - c).abs();
                    let db = (grid.time(b.center_index) - c).abs();
                    da.total_cmp(&db)
                })
                .expect("narrow gaps are non-empty here");
            if (grid.time(nearest.center_index) - c).abs() > window {
                return Err(Error::Construction(format!("no narrow gap near t = {c}")));
            }
            if events.iter().any(|e| std::ptr::eq(*e, *nearest)) {
                return Err(Error::Construction(format!("crossing near t = {c} requested twice")));
            }
            events.push(nearest);
        }
        events.sort_by_key(|g| g.center_index);

        let by_mean = |a: &&&SpeedControlledTrajectory, b: &&&SpeedControlledTrajectory| {
            a.mean_abs_canonical()
                .total_cmp(&b.mean_abs_canonical())
                .then(a.id.cmp(&b.id))
        };
        let start = branches
            .iter()
            .filter(|b| b.start == 0)
            .min_by(by_mean)
            .ok_or_else(|| Error::Construction("no branch starts at t = 0".into()))?;
        if wrap_phase(start.f2[0]).abs() > START_TOLERANCE {
            return Err(Error::Construction(format!(
                "branch {} starts at f2 = {}, not 0",
                start.label, start.f2[0]
            )));
        }

        let mut current: &SpeedControlledTrajectory = start;
        let mut ids = vec![current.id];
        let mut labels = vec![current.label.clone()];
        let mut paths = vec![current.f2.clone()];
        let mut valid = vec![current.valid.clone()];
        for gap in &events {
            let (next, at) = match gap.kind {
                GapKind::Temporal => {
                    if current.end > gap.index_start || current.end + MIN_BRANCH_SAMPLES < gap.index_start {
                        return Err(Error::Construction(format!(
                            "branch {} does not reach the gap at t = {}",
                            current.label, gap.t_start
                        )));
                    }
                    let next = branches
                        .iter()
                        .filter(|b| b.start >= gap.index_end && b.start <= gap.index_end + MIN_BRANCH_SAMPLES)
                        .min_by(by_mean)
                        .ok_or_else(|| {
                            Error::Construction(format!("no branch leaves the gap at t = {}", gap.t_end))
                        })?;
                    (*next, next.start)
                }
                GapKind::Narrow => {
                    let k = gap.center_index;
                    if !current.valid[k] {
                        return Err(Error::Construction(format!(
                            "branch {} is not present at the crossing t = {}",
                            current.label,
                            grid.time(k)
                        )));
                    }
                    let next = branches
                        .iter()
                        .find(|b| b.id != current.id && b.valid[k])
                        .ok_or_else(|| {
                            Error::Construction(format!("no partner branch at t = {}", grid.time(k)))
                        })?;
                    (*next, k)
                }
            };
            let previous = paths.last().expect("at least the start branch");
            let reference = previous[at.min(last_index)];
            paths.push(lift_to(reference, &next.f2, at));
            valid.push(next.valid.clone());
            ids.push(next.id);
            labels.push(next.label.clone());
            current = next;
        }
        if current.end != last_index {
            return Err(Error::Construction(format!(
                "branch {} ends at t = {} before the final time",
                current.label,
                current.end_time()
            )));
        }
        let end_phase = wrap_phase(current.f2[last_index]);
        if kind == BridgeKind::Splice && end_phase.abs() > ENDPOINT_TOLERANCE {
            return Err(Error::Construction(format!(
                "the plan ends on branch {} at f2 = {end_phase}, which cannot be pinned to 0",
                current.label
            )));
        }
        Ok(Self {
            grid,
            kind,
            branch_ids: ids,
            labels,
            branch_paths: paths,
            branch_valid: valid,
            gaps: events.into_iter().cloned().collect(),
        })
    }

    pub fn bridge_count(&self) -> usize {
        self.gaps.len()
    }

    /// Deterministic starting point: window centred on the gap, width
    /// half the gap length (at least `min_width`), no extra bump for
    /// splices, and for envelopes the phase where the branch meets the
    /// gap.
    pub fn initial_params(&self, min_width: f64) -> Vec<BridgeParams> {
        self.gaps
            .iter()
            .map(|g| {
                let amplitude = match self.kind {
                    BridgeKind::Splice => 0.0,
                    BridgeKind::Envelope => g.left.first().map(|e| e.phase).unwrap_or(0.0),
                };
                BridgeParams {
                    center: g.midpoint(),
                    width: (0.5 * g.length()).max(min_width),
                    amplitude,
                }
            })
            .collect()
    }

    /// The lifted path for `params`, with f₂(0) = 0 and f₂(T_F) ∈ 2πℤ
    /// pinned exactly.
    pub fn path(&self, params: &[BridgeParams]) -> Result<Vec<f64>> {
        if params.len() != self.bridge_count() {
            return Err(Error::Construction(format!(
                "{} bridge parameter sets for {} bridges",
                params.len(),
                self.bridge_count()
            )));
        }
        if let Some(p) = params.iter().find(|p| !(p.width > 0.0) || !p.center.is_finite()) {
            return Err(Error::Construction(format!("invalid bridge parameters {p:?}")));
        }
        let times = self.grid.times();
        let mut f = if params.is_empty() || self.kind == BridgeKind::Splice {
            self.branch_paths[0].clone()
        } else {
            let t_f = self.grid.t_end();
            times
                .iter()
                .map(|&t| {
                    params
                        .iter()
                        .map(|p| {
                            let trend = p.gaussian(0.0) * (1.0 - t / t_f) + p.gaussian(t_f) * t / t_f;
                            p.amplitude * (p.gaussian(t) - trend)
                        })
                        .sum()
                })
                .collect()
        };
        if self.kind == BridgeKind::Splice {
            for (j, p) in params.iter().enumerate() {
                let next = &self.branch_paths[j + 1];
                let (lo, hi) = p.window();
                for (k, &t) in times.iter().enumerate() {
                    if t < lo {
                        continue;
                    }
                    if t > hi {
                        f[k] = next[k];
                    } else {
                        let s = p.step(t);
                        f[k] = (1.0 - s) * f[k] + s * next[k] + p.amplitude * p.clipped_bump(t);
                    }
                }
            }
        }
        let last = f.len() - 1;
        f[0] = 0.0;
        f[last] = 2.0 * PI * (f[last] / (2.0 * PI)).round();
        Ok(f)
    }

    pub fn build(&self, params: &[BridgeParams]) -> Result<VirtualTrajectory> {
        let lift = self.path(params)?;
        let sources: Vec<SegmentSource> = (0..self.grid.len())
            .map(|k| self.source_at(k, params))
            .collect();
        let mut segments: Vec<Segment> = Vec::new();
        for (k, src) in sources.into_iter().enumerate() {
            match segments.last_mut() {
                Some(seg) if seg.source == src => {
                    seg.index_end = k;
                    seg.t_end = self.grid.time(k);
                }
                _ => segments.push(Segment {
                    t_start: self.grid.time(k),
                    t_end: self.grid.time(k),
                    index_start: k,
                    index_end: k,
                    source: src,
                }),
            }
        }
        Ok(VirtualTrajectory {
            grid: self.grid,
            kind: self.kind,
            lift,
            segments,
            bridge_params: params.to_vec(),
        })
    }

    fn source_at(&self, k: usize, params: &[BridgeParams]) -> SegmentSource {
        let t = self.grid.time(k);
        if let Some(j) = params.iter().rposition(|p| {
            let (lo, hi) = p.window();
            t >= lo && t <= hi
        }) {
            return SegmentSource::Bridge { index: j };
        }
        if self.kind == BridgeKind::Envelope && !params.is_empty() {
            return SegmentSource::Envelope;
        }
        let m = params.iter().filter(|p| p.window().1 < t).count();
        let (id, label) = (self.branch_ids[m], self.labels[m].clone());
        if self.branch_valid[m][k] {
            SegmentSource::Branch { id, label }
        } else {
            SegmentSource::Hold { id, label }
        }
    }
}

/// A phase path with f₂(0) = f₂(T_F) = 0 (mod 2π) that follows
/// speed-controlled trajectories where possible.
#[derive(Debug, Clone, PartialEq)]
pub struct VirtualTrajectory {
    pub grid: TimeGrid,
    pub kind: BridgeKind,
    /// Continuous lift used for differentiation.
    pub lift: Vec<f64>,
    pub segments: Vec<Segment>,
    pub bridge_params: Vec<BridgeParams>,
}

impl VirtualTrajectory {
    /// The path with f₂ in `[-π, π)`.
    pub fn f2(&self) -> Vec<f64> {
        self.lift.iter().map(|&v| wrap_phase(v)).collect()
    }

    /// Number of full turns between the endpoints of the lift.
    pub fn winding(&self) -> i64 {
        (self.lift[self.lift.len() - 1] / (2.0 * PI)).round() as i64
    }
}
