//! Run configuration: a versioned TOML document validated strictly, with
//! every problem reported together.

use std::path::{Path, PathBuf};

use fastforward::device::TransmonSpec;
use fastforward::itt::{BridgeKind, CrossingPlan, IttSettings};
use fastforward::sta::Branch;
use toml::{Table, Value};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Accelerate,
    Decelerate,
    Sta,
    ReferenceOnly,
    DeviceMap,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Accelerate => "accelerate",
            Scenario::Decelerate => "decelerate",
            Scenario::Sta => "sta",
            Scenario::ReferenceOnly => "reference-only",
            Scenario::DeviceMap => "device-map",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "accelerate" => Scenario::Accelerate,
            "decelerate" => Scenario::Decelerate,
            "sta" => Scenario::Sta,
            "reference-only" => Scenario::ReferenceOnly,
            "device-map" => Scenario::DeviceMap,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    Naive,
    AlphaScaled,
    Unmodified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub n_steps: usize,
    pub n_phase: usize,
    pub map_rows: usize,
    pub link_threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviceConfig {
    pub transmon: TransmonSpec,
    pub g_ghz: f64,
    /// Defaults to the value centring the control in the tunable band.
    pub omega2_ghz: Option<f64>,
    pub anharmonicity_ghz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub beta_map: bool,
    pub tables: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub delta_omega0: f64,
    pub t_ref: f64,
    pub t_f: f64,
    pub t_f_sweep: Vec<f64>,
    pub baselines: Vec<Baseline>,
    pub grid: GridConfig,
    pub plan: CrossingPlan,
    pub bridge: BridgeKind,
    pub itt: IttSettings,
    pub branch: Branch,
    pub device: DeviceConfig,
    pub output: OutputConfig,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed TOML: {0}")]
    Syntax(String),
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

impl ConfigError {
    pub fn messages(&self) -> Vec<String> {
        match self {
            ConfigError::Invalid(v) => v.clone(),
            other => vec![other.to_string()],
        }
    }
}

/// Reads typed values out of one table, remembering which keys were seen
/// so that leftovers can be reported as unknown.
struct Section<'a> {
    table: Option<&'a Table>,
    prefix: String,
    seen: Vec<&'static str>,
}

impl<'a> Section<'a> {
    fn new(table: Option<&'a Table>, prefix: &str) -> Self {
        Self {
            table,
            prefix: prefix.to_string(),
            seen: Vec::new(),
        }
    }

    fn path(&self, key: &str) -> String {
        if self.prefix.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.prefix)
        }
    }

    fn raw(&mut self, key: &'static str) -> Option<&'a Value> {
        self.seen.push(key);
        self.table.and_then(|t| t.get(key))
    }

    fn float(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<f64> {
        match self.raw(key)? {
            Value::Float(v) => Some(*v),
            Value::Integer(v) => Some(*v as f64),
            other => {
                errors.push(format!("{}: expected a number, found {}", self.path(key), other.type_str()));
                None
            }
        }
    }

    fn positive(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<f64> {
        let v = self.float(key, errors)?;
        if v > 0.0 && v.is_finite() {
            Some(v)
        } else {
            errors.push(format!("{}: must be positive, got {v}", self.path(key)));
            None
        }
    }

    fn count(&mut self, key: &'static str, min: usize, errors: &mut Vec<String>) -> Option<usize> {
        match self.raw(key)? {
            Value::Integer(v) if *v >= min as i64 => Some(*v as usize),
            Value::Integer(v) => {
                errors.push(format!("{}: must be at least {min}, got {v}", self.path(key)));
                None
            }
            other => {
                errors.push(format!("{}: expected an integer, found {}", self.path(key), other.type_str()));
                None
            }
        }
    }

    fn string(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<&'a str> {
        match self.raw(key)? {
            Value::String(s) => Some(s.as_str()),
            other => {
                errors.push(format!("{}: expected a string, found {}", self.path(key), other.type_str()));
                None
            }
        }
    }

    fn boolean(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<bool> {
        match self.raw(key)? {
            Value::Boolean(b) => Some(*b),
            other => {
                errors.push(format!("{}: expected a boolean, found {}", self.path(key), other.type_str()));
                None
            }
        }
    }

    fn floats(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<Vec<f64>> {
        let path = self.path(key);
        match self.raw(key)? {
            Value::Array(items) => {
                let mut out = Vec::with_capacity(items.len());
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::Float(v) => out.push(*v),
                        Value::Integer(v) => out.push(*v as f64),
                        other => errors.push(format!("{path}[{i}]: expected a number, found {}", other.type_str())),
                    }
                }
                Some(out)
            }
            other => {
                errors.push(format!("{path}: expected an array, found {}", other.type_str()));
                None
            }
        }
    }

    fn strings(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<Vec<&'a str>> {
        let path = self.path(key);
        match self.raw(key)? {
            Value::Array(items) => {
                let mut out = Vec::with_capacity(items.len());
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::String(s) => out.push(s.as_str()),
                        other => errors.push(format!("{path}[{i}]: expected a string, found {}", other.type_str())),
                    }
                }
                Some(out)
            }
            other => {
                errors.push(format!("{path}: expected an array, found {}", other.type_str()));
                None
            }
        }
    }

    fn table(&mut self, key: &'static str, errors: &mut Vec<String>) -> Option<&'a Table> {
        match self.raw(key)? {
            Value::Table(t) => Some(t),
            other => {
                errors.push(format!("{}: expected a table, found {}", self.path(key), other.type_str()));
                None
            }
        }
    }

    fn finish(self, errors: &mut Vec<String>) {
        if let Some(t) = self.table {
            for key in t.keys() {
                if !self.seen.contains(&key.as_str()) {
                    errors.push(format!("{}: unknown key", self.path(key)));
                }
            }
        }
    }
}

/// Parses and validates a configuration document. Relative output
/// directories are kept as written.
pub fn parse_config(source: &str) -> Result<RunConfig, ConfigError> {
    let doc: Table = source.parse().map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))?;
    let mut errors = Vec::new();
    let mut top = Section::new(Some(&doc), "");

    match top.raw("schema_version") {
        Some(Value::Integer(SCHEMA_VERSION)) => {}
        Some(Value::Integer(v)) => errors.push(format!(
            "schema_version: unsupported version {v} (expected {SCHEMA_VERSION})"
        )),
        Some(other) => errors.push(format!("schema_version: expected an integer, found {}", other.type_str())),
        None => {}
    }
    let scenario = match top.string("scenario", &mut errors) {
        Some(s) => Scenario::parse(s).or_else(|| {
            errors.push(format!(
                "scenario: unknown scenario \"{s}\" (expected accelerate, decelerate, sta, reference-only or device-map)"
            ));
            None
        }),
        None => {
            errors.push("scenario: required".into());
            None
        }
    };
    let delta_omega0 = match top.float("delta_omega0", &mut errors) {
        Some(v) if v.is_finite() => v,
        Some(v) => {
            errors.push(format!("delta_omega0: must be finite, got {v}"));
            30.0
        }
        None => 30.0,
    };
    let t_ref = top.positive("t_ref", &mut errors).unwrap_or(1.0);
    let t_f_given = doc.contains_key("t_f");
    let t_f_raw = top.positive("t_f", &mut errors);
    let t_f_sweep = top.floats("t_f_sweep", &mut errors).unwrap_or_default();
    for (i, v) in t_f_sweep.iter().enumerate() {
        if !(*v > 0.0 && v.is_finite()) {
            errors.push(format!("t_f_sweep[{i}]: must be positive, got {v}"));
        }
    }
    let baseline_names = top.strings("baselines", &mut errors);

    let grid_table = top.table("grid", &mut errors);
    let itt_table = top.table("itt", &mut errors);
    let sta_table = top.table("sta", &mut errors);
    let device_table = top.table("device", &mut errors);
    let output_table = top.table("output", &mut errors);
    top.finish(&mut errors);

    let t_f = match (scenario, t_f_raw) {
        (_, Some(v)) => v,
        (Some(Scenario::ReferenceOnly), None) => t_ref,
        (Some(Scenario::Accelerate), None) => 0.9 * t_ref,
        (Some(Scenario::Decelerate), None) | (Some(Scenario::DeviceMap), None) => 1.1 * t_ref,
        (Some(Scenario::Sta), None) if !t_f_sweep.is_empty() => t_f_sweep[0],
        (Some(Scenario::Sta), None) => {
            if !t_f_given {
                errors.push("t_f: required for the sta scenario".into());
            }
            1.0
        }
        (None, None) => 1.0,
    };
    if scenario == Some(Scenario::Accelerate) && t_f > t_ref {
        errors.push(format!("t_f: accelerate needs t_f <= t_ref, got {t_f} > {t_ref}"));
    }
    if scenario == Some(Scenario::Decelerate) && t_f < t_ref {
        errors.push(format!("t_f: decelerate needs t_f >= t_ref, got {t_f} < {t_ref}"));
    }

    let baselines = baseline_names
        .map(|names| {
            names
                .iter()
                .enumerate()
                .filter_map(|(i, n)| match *n {
                    "naive" => Some(Baseline::Naive),
                    "alpha-scaled" => Some(Baseline::AlphaScaled),
                    "unmodified" => Some(Baseline::Unmodified),
                    other => {
                        errors.push(format!(
                            "baselines[{i}]: unknown baseline \"{other}\" (expected naive, alpha-scaled or unmodified)"
                        ));
                        None
                    }
                })
                .collect()
        })
        .unwrap_or_else(|| vec![Baseline::Naive, Baseline::AlphaScaled, Baseline::Unmodified]);

    let mut g = Section::new(grid_table, "grid");
    let grid = GridConfig {
        n_steps: g.count("n_steps", 16, &mut errors).unwrap_or(fastforward::reference::DEFAULT_STEPS),
        n_phase: g.count("n_phase", 256, &mut errors).unwrap_or(256),
        map_rows: g.count("map_rows", 1, &mut errors).unwrap_or(400),
        link_threshold: g.positive("link_threshold", &mut errors).unwrap_or(fastforward::ffst::DEFAULT_LINK_THRESHOLD),
    };
    g.finish(&mut errors);
    if grid.n_steps > 100_000 {
        errors.push(format!("grid.n_steps: at most 100000 steps are supported, got {}", grid.n_steps));
    }

    let mut it = Section::new(itt_table, "itt");
    let plan_name = it.string("plan", &mut errors);
    let crossings = it.floats("crossings", &mut errors);
    let plan = match (plan_name, crossings) {
        (Some(_), Some(_)) => {
            errors.push("itt: give either plan or crossings, not both".into());
            CrossingPlan::default()
        }
        (Some("none"), None) => CrossingPlan::default(),
        (Some("vt-a"), None) => CrossingPlan::vt_a(),
        (Some("vt-b"), None) => CrossingPlan::vt_b(),
        (Some(other), None) => {
            errors.push(format!("itt.plan: unknown plan \"{other}\" (expected none, vt-a or vt-b)"));
            CrossingPlan::default()
        }
        (None, Some(c)) => CrossingPlan::new(c),
        (None, None) if scenario == Some(Scenario::Decelerate) || scenario == Some(Scenario::DeviceMap) => {
            CrossingPlan::vt_a()
        }
        (None, None) => CrossingPlan::default(),
    };
    let default_bridge = if scenario == Some(Scenario::Sta) {
        BridgeKind::Envelope
    } else {
        BridgeKind::Splice
    };
    let bridge = match it.string("bridge", &mut errors) {
        Some("splice") => BridgeKind::Splice,
        Some("envelope") => BridgeKind::Envelope,
        Some(other) => {
            errors.push(format!("itt.bridge: unknown bridge \"{other}\" (expected splice or envelope)"));
            default_bridge
        }
        None => default_bridge,
    };
    if bridge == BridgeKind::Envelope && scenario != Some(Scenario::Sta) {
        errors.push("itt.bridge: the envelope bridge is only available for the sta scenario".into());
    }
    if scenario == Some(Scenario::Sta) && !plan.crossings.is_empty() {
        errors.push("itt: crossings are not used by the sta scenario".into());
    }
    let d = IttSettings::default();
    let itt = IttSettings {
        min_width: it.positive("min_width", &mut errors).unwrap_or(d.min_width),
        max_width_fraction: it.positive("max_width_fraction", &mut errors).unwrap_or(d.max_width_fraction),
        center_margin_fraction: it
            .float("center_margin_fraction", &mut errors)
            .unwrap_or(d.center_margin_fraction),
        amplitude_bound: it.positive("amplitude_bound", &mut errors).unwrap_or(d.amplitude_bound),
        max_evaluations: it.count("max_evaluations", 1, &mut errors).unwrap_or(d.max_evaluations),
        tolerance: it.positive("tolerance", &mut errors).unwrap_or(d.tolerance),
        initial_step: it.positive("initial_step", &mut errors).unwrap_or(d.initial_step),
    };
    it.finish(&mut errors);
    if itt.center_margin_fraction < 0.0 {
        errors.push("itt.center_margin_fraction: must not be negative".into());
    }
    if itt.max_evaluations > 2000 {
        errors.push(format!("itt.max_evaluations: at most 2000, got {}", itt.max_evaluations));
    }

    let mut st = Section::new(sta_table, "sta");
    let branch = match st.string("branch", &mut errors) {
        Some("upper") | None => Branch::Upper,
        Some("lower") => Branch::Lower,
        Some(other) => {
            errors.push(format!("sta.branch: unknown branch \"{other}\" (expected upper or lower)"));
            Branch::Upper
        }
    };
    st.finish(&mut errors);

    let mut dv = Section::new(device_table, "device");
    let proto = TransmonSpec::prototype();
    let g_ghz = dv.positive("g_ghz", &mut errors).unwrap_or(0.009);
    let mut transmon = TransmonSpec {
        ej_max: dv.positive("ej_max", &mut errors).unwrap_or(proto.ej_max),
        ej_fixed: dv.positive("ej_fixed", &mut errors).unwrap_or(proto.ej_fixed),
        ec: dv.positive("ec", &mut errors).unwrap_or(proto.ec),
        ecc: 1.0,
        d: dv.positive("d", &mut errors).unwrap_or(proto.d),
    };
    transmon.ecc = dv
        .positive("ecc", &mut errors)
        .unwrap_or_else(|| fastforward::device::coupling_capacitance_for(g_ghz, &transmon));
    if transmon.d > 1.0 {
        errors.push(format!("device.d: must lie in (0, 1], got {}", transmon.d));
    }
    let device = DeviceConfig {
        transmon,
        g_ghz,
        omega2_ghz: dv.positive("omega2_ghz", &mut errors),
        anharmonicity_ghz: dv.float("anharmonicity_ghz", &mut errors),
    };
    dv.finish(&mut errors);

    let mut out = Section::new(output_table, "output");
    let output = OutputConfig {
        dir: out.string("dir", &mut errors).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("out")),
        beta_map: out.boolean("beta_map", &mut errors).unwrap_or(true),
        tables: out.boolean("tables", &mut errors).unwrap_or(true),
    };
    out.finish(&mut errors);

    if !errors.is_empty() {
        return Err(ConfigError::Invalid(errors));
    }
    Ok(RunConfig {
        scenario: scenario.expect("validated above"),
        delta_omega0,
        t_ref,
        t_f,
        t_f_sweep,
        baselines,
        grid,
        plan,
        bridge,
        itt,
        branch,
        device,
        output,
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sta_config() {
        let c = parse_config("scenario = \"sta\"\nt_f = 20\ndelta_omega0 = 30\n").unwrap();
        assert_eq!(c.scenario, Scenario::Sta);
        assert_eq!(c.t_f, 20.0);
        assert_eq!(c.bridge, BridgeKind::Envelope);
        assert_eq!(c.grid.n_steps, 20_000);
    }

    #[test]
    fn negative_duration_names_field() {
        let err = parse_config("scenario = \"sta\"\nt_f = -1\n").unwrap_err();
        assert!(err.messages().iter().any(|m| m.starts_with("t_f:")), "{err}");
    }

    #[test]
    fn all_errors_are_collected() {
        let err = parse_config(
            "scenario = \"warp\"\nbogus = 1\n[grid]\nn_steps = \"many\"\n[itt]\nplan = \"vt-z\"\n",
        )
        .unwrap_err();
        let m = err.messages();
        assert!(m.iter().any(|s| s.starts_with("scenario:")));
        assert!(m.iter().any(|s| s == "bogus: unknown key"));
        assert!(m.iter().any(|s| s.starts_with("grid.n_steps: expected an integer")));
        assert!(m.iter().any(|s| s.starts_with("itt.plan:")));
    }

    #[test]
    fn deceleration_defaults_to_single_crossing() {
        let c = parse_config("scenario = \"decelerate\"\n").unwrap();
        assert_eq!(c.t_f, 1.1);
        assert_eq!(c.plan, CrossingPlan::vt_a());
    }
}
