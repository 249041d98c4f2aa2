use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use voronautoma::io::{load_tessellation, points_to_csv};
use voronautoma::scenario;

fn voronautoma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_voronautoma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = voronautoma(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Small tessellation plus seven data points scaled to it.
fn fixture(dir: &Path) -> (String, String) {
    let tess = dir.join("tess.json");
    ok(&["generate", "--radius", "120", "--count", "500", "--seed", "4", "-o", s(&tess)]);
    let points = dir.join("seven.csv");
    fs::write(&points, points_to_csv(scenario::seven_points(120.0).points())).unwrap();
    (s(&tess).to_string(), s(&points).to_string())
}

#[test]
fn generate_writes_tessellation_histogram_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let tess = tmp.path().join("t.json");
    let stdout = ok(&["generate", "--radius", "100", "--count", "300", "--seed", "2", "-o", s(&tess)]);
    assert!(stdout.contains("300 cells"));
    let t = load_tessellation(&tess).unwrap();
    assert_eq!(t.len(), 300);
    assert_eq!(t.meta().seed, Some(2));
    let hist = fs::read_to_string(tmp.path().join("t.histogram.csv")).unwrap();
    assert!(hist.starts_with("kind,count,fraction\n"));
    let manifest = fs::read_to_string(tmp.path().join("generate.manifest.json")).unwrap();
    assert!(manifest.contains(r#""spacing": 5.0"#));
}

#[test]
fn generate_single_cell() {
    let tmp = tempfile::tempdir().unwrap();
    let tess = tmp.path().join("one.json");
    ok(&["generate", "--radius", "50", "--count", "1", "-o", s(&tess)]);
    let t = load_tessellation(&tess).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t.w(0).is_empty());
}

#[test]
fn impossible_spacing_exits_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let out = voronautoma(&["generate", "--radius", "10", "--spacing", "21", "--count", "2", "-o", s(&tmp.path().join("x.json"))]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot fit"));
    assert!(!tmp.path().join("x.json").exists());
}

#[test]
fn run_without_data_exits_nonzero() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = voronautoma(&["run", "--tess", &tess, "-o", s(&tmp.path().join("r"))]);
    assert!(!out.status.success());
    let out = voronautoma(&["run", "--tess", s(&tmp.path().join("missing.json")), "--points", &points]);
    assert!(!out.status.success());
    let out = voronautoma(&["run", "--tess", &tess, "--points", &points, "--mask-interior"]);
    assert!(!out.status.success());
    let out = voronautoma(&["run", "--tess", &tess, "--points", &points, "--eta", "1.5"]);
    assert!(!out.status.success());
}

#[test]
fn run_with_frames_writes_every_step() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = tmp.path().join("run");
    ok(&["run", "--tess", &tess, "--points", &points, "--eta", "0.4", "--frames", "--history", "--size", "100", "-o", s(&out)]);
    let history = fs::read_to_string(out.join("history.txt")).unwrap();
    let frames = fs::read_dir(out.join("frames")).unwrap().count();
    assert_eq!(frames, history.lines().count());
    assert!(out.join("frames/frame_00000.ppm").exists());
    assert_eq!(history.lines().last().unwrap(), fs::read_to_string(out.join("final.state")).unwrap().trim_end());
    let metrics = fs::read_to_string(out.join("metrics.csv")).unwrap();
    let mut lines = metrics.lines();
    assert_eq!(lines.next(), Some("eta,rho,nu,precipitate_count,steps"));
    assert!(lines.next().unwrap().starts_with("0.4,"));
    assert!(fs::read(out.join("final.ppm")).unwrap().starts_with(b"P6\n100 100\n255\n"));
}

#[test]
fn unreachable_threshold_leaves_no_precipitate() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = tmp.path().join("run");
    ok(&["run", "--tess", &tess, "--points", &points, "--eta", "1.0", "-o", s(&out)]);
    let state = fs::read_to_string(out.join("final.state")).unwrap();
    assert!(!state.contains('#'));
    assert!(!state.contains('+'));
    assert!(state.contains('-'));
}

#[test]
fn raster_run_with_interior_mask() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, _) = fixture(tmp.path());
    let pbm = tmp.path().join("star.pbm");
    let mut bytes = Vec::new();
    scenario::star_contour(64).write_plain_pbm(&mut bytes).unwrap();
    fs::write(&pbm, bytes).unwrap();
    let out = tmp.path().join("star");
    ok(&["run", "--tess", &tess, "--raster", s(&pbm), "--mask-interior", "--svg", "-o", s(&out)]);
    let summary = fs::read_to_string(out.join("skeleton.csv")).unwrap();
    assert!(summary.starts_with("interior_cells,interior_precipitate,precipitate_count,steps\n"));
    assert!(out.join("final.svg").exists());
    assert!(!out.join("metrics.csv").exists());
}

#[test]
fn sweep_over_default_grid_renders_each_threshold() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = tmp.path().join("sweep");
    ok(&[
        "sweep", "--tess", &tess, "--points", &points, "--eta-from", "0.2", "--eta-to", "0.525", "--eta-step", "0.025",
        "--render", "--size", "64", "-o", s(&out),
    ]);
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 15);
    let images = fs::read_dir(&out)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "ppm"))
        .count();
    assert_eq!(images, 14);
    assert!(out.join("eta_0.425.ppm").exists());
}

#[test]
fn single_threshold_sweep_is_its_own_baseline() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = tmp.path().join("sweep");
    ok(&["sweep", "--tess", &tess, "--points", &points, "--eta-from", "0.2", "--eta-to", "0.2", "-o", s(&out)]);
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "0.2");
    assert_eq!(row[2], "1");
}

#[test]
fn sweep_rejects_raster_data() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, _) = fixture(tmp.path());
    let pbm = tmp.path().join("s.pbm");
    let mut bytes = Vec::new();
    scenario::shapes(32).write_plain_pbm(&mut bytes).unwrap();
    fs::write(&pbm, bytes).unwrap();
    let out = voronautoma(&["sweep", "--tess", &tess, "--raster", s(&pbm)]);
    assert!(!out.status.success());
}

#[test]
fn flags_override_config_which_overrides_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let config = tmp.path().join("config.json");
    fs::write(&config, format!(r#"{{"tess": {tess:?}, "points": {points:?}, "eta": 0.3, "size": 50}}"#)).unwrap();
    let out = tmp.path().join("run");
    ok(&["run", "--config", s(&config), "--eta", "0.35", "-o", s(&out)]);
    let echoed = fs::read_to_string(out.join("run.manifest.json")).unwrap();
    assert!(echoed.contains(r#""eta": 0.35"#));
    assert!(echoed.contains(r#""size": 50"#));
    assert!(echoed.contains(r#""excitation_radius": 9.0"#));
    assert!(echoed.contains(r#""excitation": "first""#));

    fs::write(&config, r#"{"eta": 0.3, "bogus": 1}"#).unwrap();
    assert!(!voronautoma(&["run", "--config", s(&config)]).status.success());
}

#[test]
fn jobs_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let out = Command::new(env!("CARGO_BIN_EXE_voronautoma"))
        .env("VORONAUTOMA_JOBS", "2")
        .args(["sweep", "--tess", &tess, "--points", &points, "--eta-from", "0.3", "--eta-to", "0.4", "--eta-step", "0.05"])
        .arg("-o")
        .arg(tmp.path().join("sweep"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = Command::new(env!("CARGO_BIN_EXE_voronautoma"))
        .env("VORONAUTOMA_JOBS", "many")
        .args(["histogram", "--tess", &tess])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn render_formats_follow_extension() {
    let tmp = tempfile::tempdir().unwrap();
    let (tess, points) = fixture(tmp.path());
    let run = tmp.path().join("run");
    ok(&["run", "--tess", &tess, "--points", &points, "-o", s(&run)]);
    let state = run.join("final.state");
    for (name, magic) in [("a.ppm", &b"P6"[..]), ("a.pgm", &b"P5"[..]), ("a.svg", &b"<?xml"[..])] {
        let out = tmp.path().join("img").join(name);
        ok(&["render", "--tess", &tess, "--state", s(&state), "--points", &points, "--size", "40", "-o", s(&out)]);
        assert!(fs::read(&out).unwrap().starts_with(magic), "{name}");
    }
    let other = tmp.path().join("other.json");
    ok(&["generate", "--radius", "50", "--count", "30", "-o", s(&other)]);
    assert!(!voronautoma(&["render", "--tess", s(&other), "--state", s(&state)]).status.success());
}

#[test]
fn histogram_packs_when_no_tessellation_given() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("h.csv");
    let stdout = ok(&["histogram", "--radius", "150", "--count", "800", "--seed", "3", "-o", s(&out)]);
    assert!(stdout.contains("first-order mode"));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("u_total,")));
}
