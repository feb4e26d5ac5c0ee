//! Mapping of schedules in units of g onto flux-tunable transmons and onto
//! a driven single qubit.
//!
//! Frequencies here are ordinary frequencies in GHz. The dimensionless
//! schedules are written in angular units, so one unit of time is
//! 1/(2π g) and a duration τ (in g⁻¹) lasts τ / (2π g_GHz) ns.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{LevelDrive, TwoLevelState};
use crate::ffst::ControlSchedule;
use crate::{Error, Result};

/// Bisection stops once the frequency error is below this (GHz).
pub const FLUX_TOLERANCE_GHZ: f64 = 1e-9;

/// E_J/E_C below which the transmon approximation is questionable.
pub const TRANSMON_RATIO_WARNING: f64 = 20.0;

/// ω = √(8 E_J E_C) − E_C.
pub fn transmon_frequency(ej: f64, ec: f64) -> Result<f64> {
    if !(ej > 0.0 && ec > 0.0) {
        return Err(Error::Domain(format!("E_J and E_C must be positive, got {ej}, {ec}")));
    }
    Ok((8.0 * ej * ec).sqrt() - ec)
}

/// Flux-tunable qubit 1 coupled capacitively to fixed qubit 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransmonSpec {
    pub ej_max: f64,
    pub ej_fixed: f64,
    pub ec: f64,
    pub ecc: f64,
    pub d: f64,
}

impl TransmonSpec {
    /// E_J^max = 30 GHz, E_J2 = 27.7 GHz, E_C = 203 MHz, d = 0.85, with
    /// E_Cc chosen so that g = 9 MHz at zero flux.
    pub fn prototype() -> Self {
        let mut spec = Self {
            ej_max: 30.0,
            ej_fixed: 27.7,
            ec: 0.203,
            ecc: 1.0,
            d: 0.85,
        };
        spec.ecc = coupling_capacitance_for(0.009, &spec);
        spec
    }

    pub fn validate(&self) -> Result<Vec<String>> {
        for (name, v) in [
            ("ej_max", self.ej_max),
            ("ej_fixed", self.ej_fixed),
            ("ec", self.ec),
            ("ecc", self.ecc),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.d > 0.0 && self.d <= 1.0) {
            return Err(Error::Domain(format!("junction asymmetry d must lie in (0, 1], got {}", self.d)));
        }
        let mut warnings = Vec::new();
        for (name, ej) in [("qubit 1", self.ej_max * self.d), ("qubit 2", self.ej_fixed)] {
            if ej / self.ec < TRANSMON_RATIO_WARNING {
                warnings.push(format!("{name}: E_J/E_C = {:.1} is below {TRANSMON_RATIO_WARNING}", ej / self.ec));
            }
        }
        Ok(warnings)
    }

    /// Achievable frequency range of qubit 1, from half a flux quantum to
    /// zero flux.
    pub fn band(&self) -> Result<(f64, f64)> {
        Ok((
            transmon_frequency(self.ej_max * self.d, self.ec)?,
            transmon_frequency(self.ej_max, self.ec)?,
        ))
    }

    pub fn fixed_frequency(&self) -> Result<f64> {
        transmon_frequency(self.ej_fixed, self.ec)
    }
}

/// g = (E_Cc/√2) (E_J1 E_J2 / E_C1 E_C2)^{1/4} at zero flux.
pub fn coupling_strength(spec: &TransmonSpec) -> f64 {
    spec.ecc / 2f64.sqrt() * (spec.ej_max * spec.ej_fixed / (spec.ec * spec.ec)).powf(0.25)
}

/// The E_Cc giving coupling `g` for the other parameters of `spec`.
pub fn coupling_capacitance_for(g: f64, spec: &TransmonSpec) -> f64 {
    g * 2f64.sqrt() / (spec.ej_max * spec.ej_fixed / (spec.ec * spec.ec)).powf(0.25)
}

/// E_J(Φ) = E_J^max |cos(πΦ/Φ₀)| √(1 + d² tan²(πΦ/Φ₀)), evaluated as
/// E_J^max √(cos² + d² sin²) so that half a flux quantum gives E_J^max·d.
pub fn squid_ej(flux_ratio: f64, ej_max: f64, d: f64) -> f64 {
    if (flux_ratio.abs() - 0.5).abs() == 0.0 {
        return ej_max * d;
    }
    let (s, c) = (PI * flux_ratio).sin_cos();
    ej_max * c.hypot(d * s)
}

/// Qubit 1 frequency at the given flux.
pub fn flux_frequency(flux_ratio: f64, spec: &TransmonSpec) -> Result<f64> {
    transmon_frequency(squid_ej(flux_ratio, spec.ej_max, spec.d), spec.ec)
}

/// The flux in `[0, ½]` giving qubit-1 frequency `target` (GHz).
pub fn invert_flux(target: f64, spec: &TransmonSpec) -> Result<f64> {
    let (low, high) = spec.band()?;
    if !(target >= low && target <= high) {
        return Err(Error::Infeasible {
            index: 0,
            target,
            low,
            high,
        });
    }
    // frequency decreases with flux on [0, 1/2]
    let (mut a, mut b) = (0.0, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let f = flux_frequency(mid, spec)?;
        if (f - target).abs() < 0.1 * FLUX_TOLERANCE_GHZ || b - a < 1e-16 {
            return Ok(mid);
        }
        if f > target {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Converts a duration in g⁻¹ to nanoseconds for coupling `g_ghz`.
pub fn duration_ns(t: f64, g_ghz: f64) -> f64 {
    t / (2.0 * PI * g_ghz)
}

/// Converts nanoseconds back to units of g⁻¹.
pub fn duration_g_units(t_ns: f64, g_ghz: f64) -> f64 {
    t_ns * 2.0 * PI * g_ghz
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxWaveform {
    pub times_ns: Vec<f64>,
    /// Φ/Φ₀.
    pub flux: Vec<f64>,
    pub omega1_ghz: Vec<f64>,
    /// Largest |ω₁(Φ(t)) − ω₁(t)| in GHz.
    pub max_roundtrip_error: f64,
}

/// Flux waveform realizing ω₁(t) = ω₂ + Δω^FF(t)·g on qubit 1.
pub fn flux_schedule_for(
    control: &ControlSchedule,
    spec: &TransmonSpec,
    omega2_ghz: f64,
    g_ghz: f64,
) -> Result<FluxWaveform> {
    spec.validate()?;
    let (low, high) = spec.band()?;
    let omega1: Vec<f64> = control
        .delta_omega_ff
        .iter()
        .map(|d| omega2_ghz + d * g_ghz)
        .collect();
    let outside = omega1
        .iter()
        .enumerate()
        .filter(|(_, &w)| !(w >= low && w <= high))
        .max_by(|a, b| {
            let excess = |w: f64| (low - w).max(w - high);
            excess(*a.1).total_cmp(&excess(*b.1))
        });
    if let Some((index, &target)) = outside {
        return Err(Error::Infeasible {
            index,
            target,
            low,
            high,
        });
    }
    let flux: Vec<f64> = omega1
        .par_iter()
        .map(|&w| invert_flux(w, spec))
        .collect::<Result<_>>()?;
    let mut max_roundtrip_error: f64 = 0.0;
    for (phi, w) in flux.iter().zip(&omega1) {
        max_roundtrip_error = max_roundtrip_error.max((flux_frequency(*phi, spec)? - w).abs());
    }
    Ok(FluxWaveform {
        times_ns: control.grid.times().iter().map(|&t| duration_ns(t, g_ghz)).collect(),
        flux,
        omega1_ghz: omega1,
        max_roundtrip_error,
    })
}

/// A two-level schedule relabelled as a driven qubit,
/// H = (Δ/2) σ_z + Ω σ_x.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RwaSchedule {
    pub detuning: Vec<f64>,
    pub rabi: f64,
    /// max(|Δ|, Ω) / |anharmonicity| when an anharmonicity is given.
    pub validity_ratio: Option<f64>,
    pub warnings: Vec<String>,
}

pub fn rwa_emulation_map(control: &ControlSchedule, rabi: f64, anharmonicity: Option<f64>) -> RwaSchedule {
    let detuning = control.delta_omega_ff.clone();
    let largest = detuning.iter().fold(rabi.abs(), |m, d| m.max(d.abs()));
    let validity_ratio = anharmonicity.map(|a| largest / a.abs());
    let mut warnings = Vec::new();
    if let Some(r) = validity_ratio {
        if r > 0.1 {
            warnings.push(format!(
                "detuning or Rabi rate reaches {r:.3} of the anharmonicity; the two-level reduction may fail"
            ));
        }
    }
    RwaSchedule {
        detuning,
        rabi,
        validity_ratio,
        warnings,
    }
}

impl RwaSchedule {
    /// Integrates the driven qubit in the σ_z form, with level energies ±Δ/2.
    pub fn integrate(&self, control: &ControlSchedule, initial: TwoLevelState) -> Result<Vec<TwoLevelState>> {
        let n = control.grid.len();
        let drive = LevelDrive::new(
            control.grid,
            self.detuning.iter().map(|d| 0.5 * d).collect(),
            self.detuning.iter().map(|d| -0.5 * d).collect(),
            vec![self.rabi; n],
        )?;
        drive.integrate(initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prototype_frequency() {
        let w = transmon_frequency(30.0, 0.203).unwrap();
        assert!((w - 6.777).abs() < 1e-3, "{w}");
    }

    #[test]
    fn half_flux_quantum_limit_is_exact() {
        assert_eq!(squid_ej(0.5, 30.0, 0.85), 25.5);
        assert_eq!(squid_ej(0.0, 30.0, 0.85), 30.0);
    }

    #[test]
    fn coupling_round_trip() {
        let spec = TransmonSpec::prototype();
        assert!((coupling_strength(&spec) - 0.009).abs() < 1e-15);
    }

    #[test]
    fn flux_inversion_round_trip() {
        let spec = TransmonSpec::prototype();
        let (lo, hi) = spec.band().unwrap();
        for i in 0..=100 {
            let target = lo + (hi - lo) * i as f64 / 100.0;
            let phi = invert_flux(target, &spec).unwrap();
            assert!((flux_frequency(phi, &spec).unwrap() - target).abs() < FLUX_TOLERANCE_GHZ);
        }
        assert!(invert_flux(hi + 0.01, &spec).is_err());
    }
}
