//! Small numerical kernels on uniformly sampled data.

use std::f64::consts::PI;

/// Map a phase into `[-π, π)`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can round up to exactly 2π
    if y >= PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Signed shortest angular difference `b - a`, in `[-π, π)`.
pub fn phase_difference(a: f64, b: f64) -> f64 {
    wrap_phase(b - a)
}

/// Cumulative trapezoidal integral with uniform spacing `h`, starting at 0.
pub fn cumulative_trapezoid(samples: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = 0.0;
    if let Some(&first) = samples.first() {
        out.push(0.0);
        let mut prev = first;
        for &y in &samples[1..] {
            acc += 0.5 * h * (prev + y);
            out.push(acc);
            prev = y;
        }
    }
    out
}

/// Trapezoidal integral with uniform spacing `h`.
pub fn trapezoid(samples: &[f64], h: f64) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = samples[1..n - 1].iter().sum();
            h * (inner + 0.5 * (samples[0] + samples[n - 1]))
        }
    }
}

/// Second-order derivative of uniformly spaced samples: central differences
/// in the interior, one-sided three-point stencils at both ends.
pub fn derivative(samples: &[f64], h: f64) -> Vec<f64> {
    let n = samples.len();
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        2 => {
            let d = (samples[1] - samples[0]) / h;
            vec![d, d]
        }
        _ => {
            let mut out = vec![0.0; n];
            out[0] = (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) / (2.0 * h);
            for k in 1..n - 1 {
                out[k] = (samples[k + 1] - samples[k - 1]) / (2.0 * h);
            }
            out[n - 1] = (3.0 * samples[n - 1] - 4.0 * samples[n - 2] + samples[n - 3]) / (2.0 * h);
            out
        }
    }
}

/// Cubic Lagrange interpolation at fractional sample position `x`
/// (in units of the sample index). Uses the four-point stencil centred on
/// the enclosing interval, shifted inwards at the boundaries.
///
/// Positions outside `[0, n-1]` are clamped.
pub fn cubic_at(samples: &[f64], x: f64) -> f64 {
    let n = samples.len();
    if n == 0 {
        return f64::NAN;
    }
    if n == 1 {
        return samples[0];
    }
    let last = (n - 1) as f64;
    let x = x.clamp(0.0, last);
    let k = (x.floor() as usize).min(n - 2);
    let frac = x - k as f64;
    if frac == 0.0 {
        return samples[k];
    }
    if n < 4 {
        return samples[k] + frac * (samples[k + 1] - samples[k]);
    }
    let start = k.saturating_sub(1).min(n - 4);
    let u = x - start as f64;
    let y = &samples[start..start + 4];
    // nodes at 0, 1, 2, 3
    let l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    let l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    let l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    let l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3]
}

/// Fill samples flagged in `bad` by cubic extrapolation/interpolation from
/// the four nearest good samples. Returns `false` if fewer than four good
/// samples exist.
pub fn fill_by_cubic(values: &mut [f64], bad: &[bool]) -> bool {
    let good: Vec<usize> = (0..values.len()).filter(|&i| !bad[i]).collect();
    if good.len() < 4 {
        return false;
    }
    for i in 0..values.len() {
        if !bad[i] {
            continue;
        }
        // nearest four good samples by index distance
        let mut nearest = good.clone();
        nearest.sort_by_key(|&j| (j as i64 - i as i64).unsigned_abs());
        let nodes = &nearest[..4];
        let x = i as f64;
        let mut acc = 0.0;
        for (a, &ja) in nodes.iter().enumerate() {
            let mut w = 1.0;
            for (b, &jb) in nodes.iter().enumerate() {
                if a != b {
                    w *= (x - jb as f64) / (ja as f64 - jb as f64);
                }
            }
            acc += w * values[ja];
        }
        values[i] = acc;
    }
    true
}

/// Monotone piecewise-cubic Hermite (Fritsch–Carlson) interpolation of
/// `(xs, ys)` evaluated at `queries`. `xs` must be strictly increasing.
pub fn pchip(xs: &[f64], ys: &[f64], queries: &[f64]) -> Vec<f64> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    if n == 1 {
        return vec![ys[0]; queries.len()];
    }
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
    let mut m = vec![0.0; n];
    if n == 2 {
        m[0] = delta[0];
        m[1] = delta[0];
    } else {
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] <= 0.0 {
                m[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        m[0] = pchip_end(h[0], h[1], delta[0], delta[1]);
        m[n - 1] = pchip_end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    queries
        .iter()
        .map(|&q| {
            let i = match xs.partition_point(|&x| x <= q) {
                0 => 0,
                p => (p - 1).min(n - 2),
            };
            let t = (q - xs[i]) / h[i];
            let t2 = t * t;
            let t3 = t2 * t;
            let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
            let h10 = t3 - 2.0 * t2 + t;
            let h01 = -2.0 * t3 + 3.0 * t2;
            let h11 = t3 - t2;
            h00 * ys[i] + h10 * h[i] * m[i] + h01 * ys[i + 1] + h11 * h[i] * m[i + 1]
        })
        .collect()
}

fn pchip_end(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), -PI);
        assert_eq!(wrap_phase(-PI), -PI);
        assert!((wrap_phase(3.0 * PI + 0.1) - (-PI + 0.1)).abs() < 1e-12);
        assert!((wrap_phase(0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn trapezoid_exact_for_linear() {
        let h = 0.1;
        let ys: Vec<f64> = (0..=10).map(|k| 2.0 * k as f64 * h + 1.0).collect();
        assert!((trapezoid(&ys, h) - 2.0).abs() < 1e-12);
        let cum = cumulative_trapezoid(&ys, h);
        assert_eq!(cum[0], 0.0);
        assert!((cum[10] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_exact_for_quadratic() {
        let h = 0.01;
        let ys: Vec<f64> = (0..50).map(|k| (k as f64 * h).powi(2)).collect();
        let d = derivative(&ys, h);
        for (k, dk) in d.iter().enumerate() {
            assert!((dk - 2.0 * k as f64 * h).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn cubic_exact_for_cubic_polynomial() {
        let f = |x: f64| 0.5 * x * x * x - x * x + 3.0;
        let ys: Vec<f64> = (0..8).map(|k| f(k as f64)).collect();
        for &x in &[0.0, 0.5, 1.25, 3.5, 6.5, 6.9, 7.0] {
            assert!((cubic_at(&ys, x) - f(x)).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn fill_by_cubic_recovers_polynomial() {
        let f = |x: f64| x * x * x - 2.0 * x;
        let mut ys: Vec<f64> = (0..10).map(|k| f(k as f64)).collect();
        let mut bad = vec![false; 10];
        bad[0] = true;
        ys[0] = f64::INFINITY;
        assert!(fill_by_cubic(&mut ys, &bad));
        assert!((ys[0] - f(0.0)).abs() < 1e-9);
    }

    #[test]
    fn pchip_preserves_monotonicity() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = [0.0, 0.1, 0.2, 5.0, 5.1];
        let qs: Vec<f64> = (0..=400).map(|k| k as f64 * 0.01).collect();
        let out = pchip(&xs, &ys, &qs);
        for w in out.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
        assert!((out[100] - 0.1).abs() < 1e-12);
    }
}
