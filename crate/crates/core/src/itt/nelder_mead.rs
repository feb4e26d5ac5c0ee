use crate::{Error, Result};

/// Box constraints; trial points are clamped into the box.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Domain("bounds of different dimension".into()));
        }
        if let Some(i) = (0..lower.len()).find(|&i| !(lower[i] < upper[i])) {
            return Err(Error::Domain(format!(
                "empty bound interval [{}, {}] for parameter {i}",
                lower[i], upper[i]
            )));
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    fn to_unit(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(i, v)| ((v - self.lower[i]) / (self.upper[i] - self.lower[i])).clamp(0.0, 1.0))
            .collect()
    }

    fn unit_to_box(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .enumerate()
            .map(|(i, v)| self.lower[i] + v * (self.upper[i] - self.lower[i]))
            .collect()
    }
}

/// Deterministic bounded Nelder–Mead in coordinates scaled to the unit box.
#[derive(Debug, Clone, PartialEq)]
pub struct NelderMead {
    pub max_evaluations: usize,
    /// Stop once the simplex fits in a cube of this side (unit coordinates).
    pub tolerance: f64,
    /// Initial simplex edge in unit coordinates.
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_evaluations: 2000,
            tolerance: 1e-6,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// Best value after each iteration, starting with the initial simplex.
    pub history: Vec<f64>,
}

struct Objective<'a, F> {
    f: F,
    bounds: &'a Bounds,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Objective<'_, F> {
    fn eval(&mut self, u: &[f64]) -> Result<f64> {
        let x = self.bounds.unit_to_box(u);
        self.evaluations += 1;
        let v = (self.f)(&x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Optimizer { params: x })
        }
    }
}

fn clamp_unit(mut u: Vec<f64>) -> Vec<f64> {
    for v in &mut u {
        *v = v.clamp(0.0, 1.0);
    }
    u
}

fn affine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b − a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, f: F, x0: &[f64], bounds: &Bounds) -> Result<Minimum> {
        let n = bounds.dim();
        if x0.len() != n {
            return Err(Error::Domain("initial point and bounds differ in dimension".into()));
        }
        let mut obj = Objective {
            f,
            bounds,
            evaluations: 0,
        };
        if n == 0 {
            let value = obj.eval(&[])?;
            return Ok(Minimum {
                x: Vec::new(),
                value,
                evaluations: 1,
                converged: true,
                history: vec![value],
            });
        }
        // dimension-adapted coefficients for n ≥ 2
        let nf = n as f64;
        let (rho, chi, gamma, sigma) = if n >= 2 {
            (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf)
        } else {
            (1.0, 2.0, 0.5, 0.5)
        };

        let u0 = bounds.to_unit(x0);
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let v0 = obj.eval(&u0)?;
        simplex.push((u0.clone(), v0));
        for i in 0..n {
            let mut u = u0.clone();
            u[i] = if u[i] + self.initial_step <= 1.0 {
                u[i] + self.initial_step
            } else {
                u[i] - self.initial_step
            };
            let v = obj.eval(&u)?;
            simplex.push((u, v));
        }

        let mut history = Vec::new();
        let mut converged = false;
        loop {
            // stable sort keeps earlier vertices first among ties
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            history.push(simplex[0].1);
            let diameter = simplex[1..]
                .iter()
                .flat_map(|(u, _)| u.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter < self.tolerance {
                converged = true;
                break;
            }
            if obj.evaluations + n + 2 > self.max_evaluations {
                break;
            }
            let mut centroid = vec![0.0; n];
            for (u, _) in &simplex[..n] {
                for (c, v) in centroid.iter_mut().zip(u) {
                    *c += v / nf;
                }
            }
            let worst = simplex[n].clone();
            let second_worst = simplex[n - 1].1;
            let best = simplex[0].1;

            let xr = clamp_unit(affine(&centroid, &worst.0, -rho));
            let fr = obj.eval(&xr)?;
            if fr < best {
                let xe = clamp_unit(affine(&centroid, &xr, chi));
                let fe = obj.eval(&xe)?;
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_worst {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc, accept) = if fr < worst.1 {
                let xc = clamp_unit(affine(&centroid, &xr, gamma));
                let fc = obj.eval(&xc)?;
                (xc, fc, fc <= fr)
            } else {
                let xc = clamp_unit(affine(&centroid, &worst.0, gamma));
                let fc = obj.eval(&xc)?;
                (xc, fc, fc < worst.1)
            };
            if accept {
                simplex[n] = (xc, fc);
                continue;
            }
            let anchor = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let u = affine(&anchor, &vertex.0, sigma);
                let v = obj.eval(&u)?;
                *vertex = (u, v);
            }
        }
        let (u, value) = simplex.swap_remove(0);
        Ok(Minimum {
            x: bounds.unit_to_box(&u),
            value,
            evaluations: obj.evaluations,
            converged,
            history,
        })
    }
}
