use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use vlp_mono::{default_features, project, CameraIntrinsics, TransmitterModel, WorldPoint};

const BIN: &str = env!("CARGO_BIN_EXE_vlp-mono");
const REFERENCE: &str = include_str!("../configs/reference.toml");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn simulate(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["simulate", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn default_scenario_writes_49_summary_rows() {
    let tmp = TempDir::new().unwrap();
    let out = simulate(tmp.path(), &[]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let summary = csv_rows(&tmp.path().join("summary.csv"));
    assert_eq!(summary.len(), 49);
    assert!(summary.iter().all(|r| r[4] == "100" && r[5] == "0"));
    assert_eq!(csv_rows(&tmp.path().join("results.csv")).len(), 49 * 100);
}

#[test]
fn zero_grid_step_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(
        tmp.path(),
        "bad.toml",
        &REFERENCE.replace("step_m = 0.5", "step_m = 0.0"),
    );
    let out = simulate(&tmp.path().join("out"), &["--config", &cfg]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_config_file_is_an_io_error() {
    let tmp = TempDir::new().unwrap();
    let missing = tmp.path().join("nope.toml");
    let out = simulate(
        &tmp.path().join("out"),
        &["--config", missing.to_str().unwrap()],
    );
    assert_eq!(code(&out), 3);
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(
        tmp.path(),
        "gauss.toml",
        &REFERENCE
            .replace(
                "kind = \"quantize\"\npitch_um = 1.0",
                "kind = \"gaussian\"\nsigma_um = 2.0",
            )
            .replace("trials_per_point = 100", "trials_per_point = 20"),
    );
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert_eq!(code(&simulate(&a, &["--config", &cfg, "--seed", "7"])), 0);
    let out = Command::new(BIN)
        .args([
            "simulate",
            "--quiet",
            "--config",
            &cfg,
            "--seed",
            "7",
            "--out",
            b.to_str().unwrap(),
        ])
        .env("VLP_MONO_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    for name in [
        "results.csv",
        "summary.csv",
        "cdf.csv",
        "plots/cdf.csv",
        "plots/scatter3d.svg",
    ] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
            "{name}"
        );
    }

    let c = tmp.path().join("c");
    assert_eq!(code(&simulate(&c, &["--config", &cfg, "--seed", "8"])), 0);
    assert_ne!(
        fs::read(a.join("results.csv")).unwrap(),
        fs::read(c.join("results.csv")).unwrap()
    );
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let out = Command::new(BIN)
        .args(["simulate", "--quiet", "--out", tmp.path().to_str().unwrap()])
        .env("VLP_MONO_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

const TRANSMITTER: &str = r#"{"id":"LED-1","center_m":[1.5,1.5,5.0],"shape":"rectangle","width_x_m":1.0,"length_y_m":1.0}"#;

fn observation_csv(camera: WorldPoint, labels: &[&str]) -> String {
    let k = CameraIntrinsics::default();
    let features = default_features(&TransmitterModel::reference()).unwrap();
    let mut text = String::from("label,u_um,v_um\n");
    for f in features
        .iter()
        .filter(|f| labels.contains(&f.label.as_str()))
    {
        let p = project(&camera, &k, &f.point).unwrap();
        text.push_str(&format!("{},{:.17e},{:.17e}\n", f.label, p.u, p.v));
    }
    text
}

fn localize(dir: &Path, observations: &str, method: &str) -> Output {
    let intr = write(
        dir,
        "camera.toml",
        "fx_um = 4000.1\nfy_um = 4010.2\ncx_um = 2634.8\ncy_um = 1528.6\n",
    );
    let tx = write(dir, "led.json", TRANSMITTER);
    let obs = write(dir, "obs.csv", observations);
    run(&[
        "localize",
        "--intrinsics",
        &intr,
        "--transmitter",
        &tx,
        "--observations",
        &obs,
        "--method",
        method,
    ])
}

#[test]
fn localize_recovers_the_camera() {
    let tmp = TempDir::new().unwrap();
    let truth = WorldPoint::new(1.5, 1.5, 2.0);
    for method in ["tri", "lsq"] {
        let out = localize(
            tmp.path(),
            &observation_csv(truth, &["A", "B", "C", "E"]),
            method,
        );
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        let fix: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let got = WorldPoint::new(
            fix["x_m"].as_f64().unwrap(),
            fix["y_m"].as_f64().unwrap(),
            fix["z_m"].as_f64().unwrap(),
        );
        assert!(got.distance(&truth) < 1e-6, "{method}: {got}");
        assert_eq!(fix["method"], method);
        assert!((fix["depth_scale_m"].as_f64().unwrap() - 3.0).abs() < 1e-6);
    }
}

#[test]
fn localize_accepts_pixel_coordinates() {
    let tmp = TempDir::new().unwrap();
    let k = CameraIntrinsics::default();
    let truth = WorldPoint::new(0.5, 2.0, 2.0);
    let features = default_features(&TransmitterModel::reference()).unwrap();
    let mut text = String::from("label,px,py\n");
    for f in features.iter() {
        let p = project(&truth, &k, &f.point).unwrap();
        let (x, y) = k.to_sensor(p);
        text.push_str(&format!("{},{x:.17e},{y:.17e}\n", f.label));
    }
    let out = localize(tmp.path(), &text, "tri");
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let fix: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((fix["x_m"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!((fix["y_m"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn localize_with_two_features_is_a_solver_error() {
    let tmp = TempDir::new().unwrap();
    let out = localize(
        tmp.path(),
        &observation_csv(WorldPoint::new(1.5, 1.5, 2.0), &["A", "B"]),
        "tri",
    );
    assert_eq!(code(&out), 4);
    assert!(out.stdout.is_empty());
}

#[test]
fn localize_rejects_malformed_input() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&localize(tmp.path(), "", "tri")), 2);
    assert_eq!(
        code(&localize(tmp.path(), "label,u_um,v_um\nA,x,1\n", "tri")),
        2
    );
}

#[test]
fn localize_missing_file_is_an_io_error() {
    let tmp = TempDir::new().unwrap();
    let intr = write(tmp.path(), "camera.toml", "");
    let tx = write(tmp.path(), "led.json", TRANSMITTER);
    let missing = tmp.path().join("missing.csv");
    let out = run(&[
        "localize",
        "--intrinsics",
        &intr,
        "--transmitter",
        &tx,
        "--observations",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn export_plots_round_trip() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&simulate(tmp.path(), &[])), 0);
    let plots = tmp.path().join("plots");
    fs::remove_dir_all(&plots).unwrap();

    let out = run(&["export-plots", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for stem in ["scatter3d", "scatter_xy", "scatter_yz", "cdf"] {
        assert!(plots.join(format!("{stem}.csv")).is_file(), "{stem}.csv");
        let svg = fs::read_to_string(plots.join(format!("{stem}.svg"))).unwrap();
        assert!(
            svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"),
            "{stem}.svg"
        );
    }

    let cdf = csv_rows(&plots.join("cdf.csv"));
    for series in ["xy", "yz", "3d"] {
        let rows: Vec<_> = cdf.iter().filter(|r| r[0] == series).collect();
        assert!(!rows.is_empty() && rows.len() <= 49, "{series}");
        let probs: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
        assert!(probs.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*probs.last().unwrap(), 1.0);
    }
}

#[test]
fn noiseless_scatter_has_coincident_truth_and_estimates() {
    let tmp = TempDir::new().unwrap();
    let cfg = write(
        tmp.path(),
        "clean.toml",
        &REFERENCE
            .replace("kind = \"quantize\"\npitch_um = 1.0", "kind = \"none\"")
            .replace("trials_per_point = 100", "trials_per_point = 2"),
    );
    let out_dir = tmp.path().join("out");
    assert_eq!(code(&simulate(&out_dir, &["--config", &cfg])), 0);

    let rows = csv_rows(&out_dir.join("plots/scatter_xy.csv"));
    assert!(!rows.is_empty());
    let header = fs::read_to_string(out_dir.join("plots/scatter_xy.csv")).unwrap();
    let header: Vec<&str> = header.lines().next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (tx, ty, cx, cy) = (col("truth_x"), col("truth_y"), col("calc_x"), col("calc_y"));
    for r in rows {
        let d = |a: usize, b: usize| {
            (r[a].parse::<f64>().unwrap() - r[b].parse::<f64>().unwrap()).abs()
        };
        assert!(d(tx, cx) < 1e-6 && d(ty, cy) < 1e-6, "{r:?}");
    }
}

#[test]
fn export_plots_without_results_is_an_io_error() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(
        code(&run(&[
            "export-plots",
            "--out",
            tmp.path().to_str().unwrap()
        ])),
        3
    );

    fs::write(
        tmp.path().join("results.csv"),
        "scenario_id,gx\nx,not-a-number\n",
    )
    .unwrap();
    fs::write(tmp.path().join("summary.csv"), "garbage").unwrap();
    assert_eq!(
        code(&run(&[
            "export-plots",
            "--out",
            tmp.path().to_str().unwrap()
        ])),
        3
    );
}
