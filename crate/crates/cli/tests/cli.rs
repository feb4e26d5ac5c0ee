use std::fs;
use std::path::{Path, PathBuf};

use fastforward_cli::config::{load_config, parse_config};
use fastforward_cli::export::read_columns;
use fastforward_cli::{run, EXIT_CONFIG, EXIT_FIDELITY, EXIT_PIPELINE};

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn ffwd(args: &[&str]) -> i32 {
    run(std::iter::once("ffwd").chain(args.iter().copied()))
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

const DECEL: &str = r#"
schema_version = 1
scenario = "decelerate"
delta_omega0 = 30.0
t_ref = 1.0
t_f = 1.1

[grid]
n_steps = 6000
map_rows = 50

[itt]
plan = "vt-a"
"#;

#[test]
fn shipped_configs_are_valid() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        load_config(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        n += 1;
    }
    assert!(n >= 9);
}

#[test]
fn invalid_config_exits_with_config_code() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.toml", "scenario = \"sta\"\nt_f = -1.0\ncolour = 3\n");
    let out = tmp.path().join("out");
    assert_eq!(ffwd(&["synthesize", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]), EXIT_CONFIG);
    assert!(!out.exists(), "nothing may be written for an invalid config");
    let msgs = parse_config("scenario = \"sta\"\nt_f = -1.0\ncolour = 3\n").unwrap_err().messages();
    assert_eq!(msgs.len(), 2, "{msgs:?}");
}

#[test]
fn reference_tables_are_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "ref.toml",
        "scenario = \"reference-only\"\n[grid]\nn_steps = 2000\n",
    );
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        assert_eq!(ffwd(&["reference", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()]), 0);
    }
    for file in ["populations.csv", "summary.json"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
    let s = summary(&a);
    assert_eq!(s["rng_used"], false);
    assert_eq!(s["ln_beta_floor"], 1e-14);
    let cols = read_columns(&a.join("populations.csv"), &["t", "p1_reference", "p2_reference"]).unwrap();
    assert_eq!(cols[0].len(), 2001);
    assert_eq!(cols[1][0], 1.0);
}

#[test]
fn deceleration_synthesis_and_verification_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "dec.toml", DECEL);
    let cfg = cfg.to_str().unwrap();
    let out = tmp.path().join("syn");
    assert_eq!(ffwd(&["synthesize", "-c", cfg, "-o", out.to_str().unwrap(), "--require-fidelity", "0.999"]), 0);
    let s = summary(&out);
    let itt = s["fidelities"]["itt"].as_f64().unwrap();
    assert!(itt > s["fidelities"]["alpha-scaled"].as_f64().unwrap());
    assert_eq!(s["bridges"].as_array().unwrap().len(), 1);
    assert!(s["shift_count"].as_u64().unwrap() >= 1);
    for file in ["control.csv", "populations.csv", "scts.csv", "shifts.csv", "beta_map.csv"] {
        assert!(out.join(file).exists(), "{file}");
    }
    let beta = read_columns(&out.join("beta_map.csv"), &["ln_abs_beta"]).unwrap();
    assert_eq!(beta[0].len(), 51 * 256);
    assert!(beta[0].iter().all(|v| v.is_finite()));

    let ver = tmp.path().join("ver");
    let control = out.join("control.csv");
    assert_eq!(
        ffwd(&["verify", "-c", cfg, "-o", ver.to_str().unwrap(), "--control", control.to_str().unwrap()]),
        0
    );
    let verified = summary(&ver)["fidelities"]["verify"].as_f64().unwrap();
    assert!((verified - itt).abs() < 1e-12, "{verified} vs {itt}");

    assert_eq!(
        ffwd(&["verify", "-c", cfg, "-o", ver.to_str().unwrap(), "--control", control.to_str().unwrap(), "--require-fidelity", "1.0"]),
        EXIT_FIDELITY
    );
}

#[test]
fn impossible_crossing_plan_is_a_pipeline_error() {
    let tmp = tempfile::tempdir().unwrap();
    let body = DECEL.replace("plan = \"vt-a\"", "crossings = [0.5, 0.7, 0.9, 1.0]");
    let cfg = write_config(tmp.path(), "many.toml", &body);
    let out = tmp.path().join("out");
    assert_eq!(ffwd(&["synthesize", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()]), EXIT_PIPELINE);
}

#[test]
fn sweep_fans_out_into_subdirectories() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "sta.toml",
        "scenario = \"sta\"\nt_f_sweep = [20.0, 30.0]\n[grid]\nn_steps = 4000\n[output]\nbeta_map = false\n",
    );
    let out = tmp.path().join("sweep");
    assert_eq!(ffwd(&["sta", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap(), "--seed-free"]), 0);
    for tf in ["tf_20", "tf_30"] {
        let s = summary(&out.join(tf));
        assert!(s["fidelities"]["itt"].as_f64().unwrap() > s["fidelities"]["unmodified"].as_f64().unwrap());
    }
    let all: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(all.as_array().unwrap().len(), 2);
}

#[test]
fn device_mapping_reproduces_dynamics() {
    let tmp = tempfile::tempdir().unwrap();
    let shipped = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/device_map.toml")).unwrap();
    let cfg = write_config(tmp.path(), "dev.toml", &shipped.replace("n_steps = 20000", "n_steps = 6000"));
    let out = tmp.path().join("dev");
    assert_eq!(ffwd(&["device", "-c", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()]), 0);
    let s = summary(&out);
    let fid = &s["fidelities"];
    assert!((fid["flux"].as_f64().unwrap() - fid["itt"].as_f64().unwrap()).abs() < 1e-6);
    assert!(s["device"]["max_roundtrip_error_ghz"].as_f64().unwrap() < 1e-9);
    let ns = s["device"]["duration_ns"].as_f64().unwrap();
    assert!((10.0..1000.0).contains(&ns));
    assert!(out.join("flux.csv").exists());
}

#[test]
fn sta_command_rejects_other_scenarios() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "dec.toml", DECEL);
    assert_eq!(ffwd(&["sta", "-c", cfg.to_str().unwrap()]), EXIT_CONFIG);
}
