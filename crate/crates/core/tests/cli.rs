//! End-to-end checks of the command-line surface: exit-code contract,
//! deterministic output, and the report schemas.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gauge-optics"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("gauge-optics-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn verify_monopole_exits_zero_with_deviation_block() {
    let out = bin()
        .args(["verify", "--config"])
        .arg(config("monopole.cfg"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    // the deviation of the alternative radial closed form is always reported
    let dev = &report["radial_form_deviation"];
    assert_eq!(dev["q"], 2.0);
    let rows = dev["at"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    // isotropic part 6/r² at r = 1
    let iso = rows[1]["isotropic"].as_f64().unwrap();
    assert!((iso - 6.0).abs() < 1e-9, "isotropic deviation {iso}");
}

#[test]
fn verify_perturbed_monopole_exits_one_with_flag() {
    let out = bin()
        .args(["verify", "--config"])
        .arg(config("monopole_perturbed.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let flagged: Vec<&str> = report["identities"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["pass"] == false)
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert!(
        flagged.contains(&"field_equation_flat"),
        "flagged = {flagged:?}"
    );
}

#[test]
fn verify_missing_field_kind_exits_two() {
    let cfg = temp_file("missing_kind.cfg", "[field]\nscale = 2.0\n");
    let out = bin()
        .args(["verify", "--config"])
        .arg(cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_unparseable_config_exits_two() {
    let cfg = temp_file("broken.cfg", "not a config\n");
    let out = bin()
        .args(["verify", "--config"])
        .arg(cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sampling_into_singular_locus_exits_three() {
    let cfg = temp_file(
        "domain.cfg",
        "[field]\nkind = wu_yang_monopole\n[sampling]\ncount = 50\nseed = 1\nr_min = 1e-5\nr_max = 2e-4\n",
    );
    let out = bin()
        .args(["verify", "--config"])
        .arg(cfg)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [vec!["verify", "--config"], vec!["copies", "--config"]] {
        let cfg = if args[0] == "verify" {
            config("monopole.cfg")
        } else {
            config("copies_q2.cfg")
        };
        let run = || bin().args(&args).arg(&cfg).output().unwrap().stdout;
        assert_eq!(run(), run(), "{} output not deterministic", args[0]);
    }

    let run_ansatz = || bin().arg("ansatz").output().unwrap().stdout;
    assert_eq!(run_ansatz(), run_ansatz());
}

#[test]
fn ansatz_scan_has_exact_roots_and_header() {
    let out = bin().arg("ansatz").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "profile,q,residual_r0.5,residual_r1,residual_r2,is_root"
    );
    let root_rows: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("power") && l.ends_with(",true"))
        .collect();
    assert_eq!(root_rows.len(), 3, "{root_rows:?}");
    for (row, q) in root_rows.iter().zip(["0", "1", "2"]) {
        assert!(row.starts_with(&format!("power,{q},")), "{row}");
    }
    // a single q row
    let out = bin()
        .args(["ansatz", "--q-min", "1", "--q-max", "1", "--q-step", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let power_row = text.lines().find(|l| l.starts_with("power,")).unwrap();
    assert!(power_row.ends_with(",true"), "{power_row}");

    // q = 3: nonzero residual at every radius (−q(1−q)(2−q) r^(−q−3)
    // decays with r, so only the r = 1 value carries the 0.1 bound)
    let out = bin()
        .args(["ansatz", "--q-min", "3", "--q-max", "3", "--q-step", "1"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let power_row = text.lines().find(|l| l.starts_with("power,")).unwrap();
    assert!(power_row.ends_with(",false"), "{power_row}");
    let fields: Vec<&str> = power_row.split(',').collect();
    for v in &fields[2..5] {
        assert!(v.parse::<f64>().unwrap().abs() > 1e-3, "{power_row}");
    }
    assert!(fields[3].parse::<f64>().unwrap().abs() > 0.1, "{power_row}");
}

#[test]
fn trace_fisheye_writes_rays_and_focusing_summary() {
    let out_dir = std::env::temp_dir().join("gauge-optics-cli-tests/trace-fisheye");
    let _ = std::fs::remove_dir_all(&out_dir);
    let out = bin()
        .args(["trace", "--config"])
        .arg(config("fisheye_trace.cfg"))
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("trace.json")).unwrap())
            .unwrap();
    let miss = summary["focusing"]["max_miss_distance"].as_f64().unwrap();
    assert!(miss < 1e-4, "reconvergence distance {miss}");
    for ray in summary["rays"].as_array().unwrap() {
        assert_eq!(ray["termination"], "span complete");
    }

    // per-ray CSV with the documented header
    let csv = std::fs::read_to_string(out_dir.join("ray_0.csv")).unwrap();
    assert!(csv.starts_with("s,x1,x2,x3,v1,v2,v3,I1,I2,I3\n"));
    assert!(csv.lines().count() > 1000);
}

#[test]
fn trace_hyperbolic_bundle_stays_inside() {
    let out = bin()
        .args(["trace", "--config"])
        .arg(config("hyperbolic_trace.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["all_inside"], true);
    assert_eq!(summary["any_domain_exit"], false);
    for ray in summary["rays"].as_array().unwrap() {
        assert_eq!(ray["termination"], "span complete");
        assert!(ray["max_radius"].as_f64().unwrap() < 2.0);
    }
}

#[test]
fn trace_singular_launch_exits_three() {
    let cfg = temp_file(
        "singular_launch.cfg",
        "[medium]\nkind = poincare-ball\n[trace]\nkind = geodesic\nlaunch = 2.0001, 0, 0\nstep = 1e-2\nspan = 0, 1\nrays = 1\n",
    );
    let out = bin().args(["trace", "--config"]).arg(cfg).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn media_report_shape() {
    let out = bin()
        .args(["media", "--medium", "fisheye"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mean = report["scalar_curvature_mean"].as_f64().unwrap();
    assert!((mean - 6.0).abs() < 1e-6, "mean curvature {mean}");
    assert!(report["scalar_curvature_spread"].as_f64().unwrap() < 1e-5);
    assert!(report["yang_mills_residual_max"].as_f64().unwrap() < 1e-6);

    let out = bin()
        .args(["media", "--medium", "no-such-medium"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn copies_report_flags_the_flat_pair() {
    let out = bin()
        .args(["copies", "--config"])
        .arg(config("copies_q2.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["are_copies"], true);
    assert!(report["curvature_deviation"].as_f64().unwrap() < 1e-10);
    assert!(report["torsion_difference"].as_f64().unwrap() > 0.1);
}
