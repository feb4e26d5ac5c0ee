use crate::ffst::{PhaseEquation, SpeedControlledTrajectory};
use crate::numeric::phase_difference;

/// Branches shorter than this are linking artefacts near tangencies and
/// are ignored when looking for gaps and planning crossings.
pub const MIN_BRANCH_SAMPLES: usize = 20;

/// Ratio |offset|/amplitude above which a near-approach of two branches is
/// treated as a touching crossing rather than a gap.
const CROSSING_RATIO: f64 = 1.0 - 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    /// No root exists for a stretch of time.
    Temporal,
    /// Two branches approach each other without touching.
    Narrow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapEndpoint {
    pub branch: usize,
    pub time: f64,
    /// Phase in `[-π, π)`.
    pub phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub kind: GapKind,
    pub index_start: usize,
    pub index_end: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// Sample of closest approach for narrow gaps; midpoint otherwise.
    pub center_index: usize,
    pub left: Vec<GapEndpoint>,
    pub right: Vec<GapEndpoint>,
    /// Smallest phase distance between the two branches (narrow gaps).
    pub min_separation: Option<f64>,
}

impl Gap {
    pub fn length(&self) -> f64 {
        self.t_end - self.t_start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.t_start + self.t_end)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.t_start && t <= self.t_end
    }
}

/// Branches long enough to take part in planning.
pub fn substantial(scts: &[SpeedControlledTrajectory]) -> Vec<&SpeedControlledTrajectory> {
    scts.iter()
        .filter(|b| b.end + 1 - b.start >= MIN_BRANCH_SAMPLES)
        .collect()
}

/// Finds temporal gaps (stretches not covered by any branch) and narrow
/// gaps (points where Re[φ₁*φ₂] changes sign while the two branches stay
/// apart), sorted by start time.
pub fn detect_gaps(eq: &PhaseEquation, scts: &[SpeedControlledTrajectory]) -> Vec<Gap> {
    let branches = substantial(scts);
    let grid = eq.grid;
    let n = grid.len();
    let mut gaps = Vec::new();
    if branches.is_empty() {
        return gaps;
    }

    let covered: Vec<bool> = (0..n).map(|k| branches.iter().any(|b| b.valid[k])).collect();
    let mut k = 0;
    while k < n {
        if covered[k] {
            k += 1;
            continue;
        }
        let run_start = k;
        while k < n && !covered[k] {
            k += 1;
        }
        let run_end = k - 1;
        let index_start = run_start.saturating_sub(1);
        let index_end = (run_end + 1).min(n - 1);
        let endpoint = |b: &&SpeedControlledTrajectory, idx: usize| GapEndpoint {
            branch: b.id,
            time: grid.time(idx),
            phase: b.canonical(idx),
        };
        gaps.push(Gap {
            kind: GapKind::Temporal,
            index_start,
            index_end,
            t_start: grid.time(index_start),
            t_end: grid.time(index_end),
            center_index: (index_start + index_end) / 2,
            left: branches
                .iter()
                .filter(|b| run_start > 0 && b.end == run_start - 1)
                .map(|b| endpoint(b, b.end))
                .collect(),
            right: branches
                .iter()
                .filter(|b| b.start == run_end + 1)
                .map(|b| endpoint(b, b.start))
                .collect(),
            min_separation: None,
        });
    }

    if let Some(re) = &eq.overlap_real {
        for k in 0..n.saturating_sub(1) {
            if !(re[k] * re[k + 1] < 0.0) {
                continue;
            }
            let here: Vec<&&SpeedControlledTrajectory> = branches
                .iter()
                .filter(|b| b.valid[k] && b.valid[k + 1])
                .collect();
            if here.len() != 2 {
                continue;
            }
            let amplitude = eq.sin_coeff[k].hypot(eq.cos_coeff[k]);
            if eq.offset[k].abs() >= CROSSING_RATIO * amplitude {
                continue;
            }
            let (a, b) = (here[0], here[1]);
            let valid = |j: usize| a.valid[j] && b.valid[j];
            let sep = |j: usize| phase_difference(a.f2[j], b.f2[j]).abs();
            // descend to the local minimum of the separation
            let mut kmin = if sep(k + 1) < sep(k) { k + 1 } else { k };
            while kmin > 0 && valid(kmin - 1) && sep(kmin - 1) < sep(kmin) {
                kmin -= 1;
            }
            while kmin + 1 < n && valid(kmin + 1) && sep(kmin + 1) < sep(kmin) {
                kmin += 1;
            }
            if gaps.iter().any(|g: &Gap| g.kind == GapKind::Narrow && g.center_index == kmin) {
                continue;
            }
            let smin = sep(kmin);
            let mut lo = kmin;
            while lo > 0 && valid(lo - 1) && sep(lo - 1) <= 2.0 * smin {
                lo -= 1;
            }
            let mut hi = kmin;
            while hi + 1 < n && valid(hi + 1) && sep(hi + 1) <= 2.0 * smin {
                hi += 1;
            }
            let ends = |idx: usize| -> Vec<GapEndpoint> {
                [a, b]
                    .iter()
                    .map(|br| GapEndpoint {
                        branch: br.id,
                        time: grid.time(idx),
                        phase: br.canonical(idx),
                    })
                    .collect()
            };
            gaps.push(Gap {
                kind: GapKind::Narrow,
                index_start: lo,
                index_end: hi,
                t_start: grid.time(lo),
                t_end: grid.time(hi),
                center_index: kmin,
                left: ends(lo),
                right: ends(hi),
                min_separation: Some(smin),
            });
        }
    }
    gaps.sort_by(|x, y| x.t_start.total_cmp(&y.t_start).then(x.center_index.cmp(&y.center_index)));
    gaps
}
