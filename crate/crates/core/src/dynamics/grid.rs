use crate::{Error, Result};

/// Uniform time grid with `n_steps` intervals on `[t0, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t0: f64,
    t_end: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t0: f64, t_end: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidGrid("n_steps must be positive".into()));
        }
        if !(t0.is_finite() && t_end.is_finite()) {
            return Err(Error::InvalidGrid("grid bounds must be finite".into()));
        }
        if !(t_end > t0) {
            return Err(Error::InvalidGrid(format!(
                "t_end ({t_end}) must exceed t0 ({t0})"
            )));
        }
        Ok(Self { t0, t_end, n_steps })
    }

    /// Grid on `[0, duration]`.
    pub fn span(duration: f64, n_steps: usize) -> Result<Self> {
        Self::new(0.0, duration, n_steps)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn duration(&self) -> f64 {
        self.t_end - self.t0
    }

    /// Number of samples, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.duration() / self.n_steps as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_end
        } else {
            self.t0 + k as f64 * self.step()
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.time(k)).collect()
    }

    /// Fractional sample index of `t`; errors outside the grid.
    pub fn position(&self, t: f64) -> Result<f64> {
        let slack = 1e-12 * self.duration().max(1.0);
        if !(t >= self.t0 - slack && t <= self.t_end + slack) {
            return Err(Error::Domain(format!(
                "t = {t} outside grid [{}, {}]",
                self.t0, self.t_end
            )));
        }
        Ok(((t - self.t0) / self.step()).clamp(0.0, self.n_steps as f64))
    }

    pub fn same_span(&self, other: &TimeGrid, tol: f64) -> bool {
        (self.t0 - other.t0).abs() <= tol && (self.t_end - other.t_end).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(TimeGrid::new(0.0, 1.0, 0).is_err());
        assert!(TimeGrid::new(1.0, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 10).is_err());
    }

    #[test]
    fn endpoints_are_exact() {
        let g = TimeGrid::new(0.0, 0.9, 7).unwrap();
        assert_eq!(g.time(0), 0.0);
        assert_eq!(g.time(7), 0.9);
        assert_eq!(g.len(), 8);
        assert!(g.position(0.95).is_err());
        assert!((g.position(0.45).unwrap() - 3.5).abs() < 1e-12);
    }
}
