use super::{PhaseEquation, PhaseRoots};
use crate::dynamics::TimeGrid;
use crate::numeric::{phase_difference, wrap_phase};

/// Maximum phase change per sample when linking roots into a branch.
pub const DEFAULT_LINK_THRESHOLD: f64 = 0.2;

/// A continuous branch of roots of a phase equation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedControlledTrajectory {
    pub id: usize,
    /// X and Y for the first two branches, then S2, S3, ...
    pub label: String,
    pub grid: TimeGrid,
    /// Unwrapped phase. Outside the valid run the nearest valid value is
    /// held so that the path is defined on the whole grid.
    pub f2: Vec<f64>,
    pub valid: Vec<bool>,
    /// First and last valid sample (inclusive).
    pub start: usize,
    pub end: usize,
}

impl SpeedControlledTrajectory {
    pub fn is_valid(&self, k: usize) -> bool {
        self.valid[k]
    }

    pub fn canonical(&self, k: usize) -> f64 {
        wrap_phase(self.f2[k])
    }

    /// Mean of |f₂| over the valid run, with f₂ taken in `[-π, π)`.
    pub fn mean_abs_canonical(&self) -> f64 {
        let n = self.end - self.start + 1;
        (self.start..=self.end)
            .map(|k| self.canonical(k).abs())
            .sum::<f64>()
            / n as f64
    }

    pub fn start_time(&self) -> f64 {
        self.grid.time(self.start)
    }

    pub fn end_time(&self) -> f64 {
        self.grid.time(self.end)
    }

    /// Whether the branch joins f₂(0) = 0 to f₂(T_F) ≡ 0 (mod 2π).
    pub fn connects_endpoints(&self, tol: f64) -> bool {
        let last = self.grid.n_steps();
        self.start == 0
            && self.end == last
            && wrap_phase(self.f2[0]).abs() < tol
            && wrap_phase(self.f2[last]).abs() < tol
    }
}

#[derive(Debug)]
struct Open {
    start: usize,
    values: Vec<f64>,
}

impl Open {
    fn last(&self) -> f64 {
        *self.values.last().expect("open branches are never empty")
    }

    fn extrapolated(&self) -> f64 {
        match self.values.len() {
            0 => unreachable!(),
            1 => self.values[0],
            n => 2.0 * self.values[n - 1] - self.values[n - 2],
        }
    }
}

/// Links the roots of `eq` at consecutive samples into continuous
/// branches.
///
/// Roots are matched to open branches greedily by circular distance and
/// lifted by the shortest 2π-equivalent step, so a branch crossing ±π
/// continues without a jump. A branch ends when no root lies within
/// `threshold` of it or when the equation has no roots. At degenerate
/// samples every phase is a root, so open branches continue by linear
/// extrapolation and branches born right after a degenerate run are
/// extended backwards over it.
pub fn extract_scts(eq: &PhaseEquation, threshold: f64) -> Vec<SpeedControlledTrajectory> {
    let scan = eq.root_scan();
    let len = eq.len();
    let mut open: Vec<Open> = Vec::new();
    let mut closed: Vec<Open> = Vec::new();

    for (k, roots) in scan.iter().enumerate() {
        match roots {
            PhaseRoots::Degenerate => {
                for b in &mut open {
                    let v = b.extrapolated();
                    b.values.push(v);
                }
                continue;
            }
            PhaseRoots::None | PhaseRoots::Singular => {
                closed.append(&mut open);
            }
            PhaseRoots::One(_) | PhaseRoots::Two(..) => {
                let roots = roots.to_vec();
                let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
                for (i, b) in open.iter().enumerate() {
                    for (j, &r) in roots.iter().enumerate() {
                        pairs.push((phase_difference(b.last(), r).abs(), i, j));
                    }
                }
                pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
                let mut branch_used = vec![false; open.len()];
                let mut root_used = vec![false; roots.len()];
                for (d, i, j) in pairs {
                    if d >= threshold || branch_used[i] || root_used[j] {
                        continue;
                    }
                    branch_used[i] = true;
                    root_used[j] = true;
                    let last = open[i].last();
                    open[i].values.push(last + phase_difference(last, roots[j]));
                }
                let mut still_open = Vec::with_capacity(open.len() + roots.len());
                for (b, used) in open.drain(..).zip(branch_used) {
                    if used {
                        still_open.push(b);
                    } else {
                        closed.push(b);
                    }
                }
                for (j, &r) in roots.iter().enumerate() {
                    if !root_used[j] {
                        still_open.push(Open {
                            start: k,
                            values: vec![r],
                        });
                    }
                }
                open = still_open;
            }
        }
    }
    closed.append(&mut open);

    // Trailing degenerate samples were extrapolated while open; a branch
    // born after a degenerate run is extended backwards over that run.
    let branches: Vec<Open> = closed
        .into_iter()
        .map(|mut b| {
            let mut first = b.start;
            while first > 0 && scan[first - 1].is_degenerate() && !b.values.is_empty() {
                let v = if b.values.len() >= 2 {
                    2.0 * b.values[0] - b.values[1]
                } else {
                    b.values[0]
                };
                b.values.insert(0, v);
                first -= 1;
            }
            b.start = first;
            b
        })
        .collect();
    let grid = eq.grid;
    let mut out: Vec<SpeedControlledTrajectory> = branches
        .into_iter()
        .map(|b| {
            let end = b.start + b.values.len() - 1;
            let mut f2 = vec![0.0; len];
            let mut valid = vec![false; len];
            for (k, item) in f2.iter_mut().enumerate() {
                *item = if k < b.start {
                    b.values[0]
                } else if k > end {
                    b.values[b.values.len() - 1]
                } else {
                    valid[k] = true;
                    b.values[k - b.start]
                };
            }
            SpeedControlledTrajectory {
                id: 0,
                label: String::new(),
                grid,
                f2,
                valid,
                start: b.start,
                end,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.start
            .cmp(&b.start)
            .then(a.mean_abs_canonical().total_cmp(&b.mean_abs_canonical()))
    });
    for (id, b) in out.iter_mut().enumerate() {
        b.id = id;
        b.label = match id {
            0 => "X".to_string(),
            1 => "Y".to_string(),
            _ => format!("S{id}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equation(offset: Vec<f64>, p: Vec<f64>, q: Vec<f64>) -> PhaseEquation {
        PhaseEquation {
            grid: TimeGrid::span(1.0, offset.len() - 1).unwrap(),
            offset,
            sin_coeff: p,
            cos_coeff: q,
            overlap_real: None,
        }
    }

    #[test]
    fn constant_equation_gives_two_flat_branches() {
        let n = 11;
        let eq = equation(vec![0.0; n], vec![1.0; n], vec![0.0; n]);
        let scts = extract_scts(&eq, 0.2);
        assert_eq!(scts.len(), 2);
        assert_eq!(scts[0].label, "X");
        assert!(scts[0].f2.iter().all(|&f| f == 0.0));
        assert!(scts[0].connects_endpoints(1e-12));
        assert!(scts[1].f2.iter().all(|&f| f == -std::f64::consts::PI));
    }

    #[test]
    fn gap_splits_branches() {
        // offset exceeds the amplitude in the middle
        let offset: Vec<f64> = (0..21).map(|k| if (8..=12).contains(&k) { 2.0 } else { 0.5 }).collect();
        let eq = equation(offset, vec![1.0; 21], vec![0.0; 21]);
        let scts = extract_scts(&eq, 0.2);
        assert_eq!(scts.len(), 4);
        assert_eq!((scts[0].start, scts[0].end), (0, 7));
        assert_eq!(scts[2].start, 13);
        assert!(!scts[0].is_valid(10));
    }

    #[test]
    fn leading_degenerate_sample_is_backfilled() {
        let p: Vec<f64> = (0..11).map(|k| k as f64 * 0.1).collect();
        let eq = equation(vec![0.0; 11], p, vec![0.0; 11]);
        let scts = extract_scts(&eq, 0.2);
        assert_eq!(scts.len(), 2);
        assert_eq!(scts[0].start, 0);
        assert!(scts[0].valid[0]);
    }

    #[test]
    fn branch_crosses_pi_continuously() {
        // roots move linearly through ±π
        let n = 41;
        let shifts: Vec<f64> = (0..n).map(|k| 2.8 + 0.02 * k as f64).collect();
        let eq = equation(
            vec![0.0; n],
            shifts.iter().map(|t| t.cos()).collect(),
            shifts.iter().map(|t| t.sin()).collect(),
        );
        let scts = extract_scts(&eq, 0.2);
        assert_eq!(scts.len(), 2);
        for b in &scts {
            for w in b.f2.windows(2) {
                assert!((w[1] - w[0]).abs() < 0.05);
            }
        }
    }
}
