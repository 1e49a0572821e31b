//! Snapshot files, summaries and the command-line front end.

use std::fs;
use std::process::Command;

use avalanche_dg::output::{read_snapshot, RunSummary, SNAPSHOT_HEADER};
use avalanche_dg::{run_case, Mesh, RunConfig};

fn short_case(dir: Option<&std::path::Path>) -> RunConfig {
    let mut cfg = RunConfig::case(1).unwrap();
    cfg.numerical.n_cells = 64;
    cfg.numerical.time.t_end = 2.0;
    cfg.output.snapshot_times = vec![0.0, 1.0, 2.0];
    cfg.output.record_every = 50;
    cfg.output.directory = dir.map(|d| d.to_path_buf());
    cfg
}

#[test]
fn snapshot_mass_matches_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = short_case(Some(tmp.path()));
    let out = run_case(&cfg, "short").unwrap();
    let summary: RunSummary =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.times, out.summary.times);

    let mesh = Mesh::uniform(cfg.numerical.domain_length, cfg.numerical.n_cells).unwrap();
    for snap in &out.snapshots {
        let back = read_snapshot(&tmp.path().join(snap.file_name())).unwrap();
        assert_eq!(&back, snap);
        let mass: f64 = back.rows.iter().enumerate().map(|(j, r)| mesh.width(j) * r.h).sum();
        let k = summary.index_at(snap.t).unwrap();
        assert_eq!(summary.times[k], snap.t);
        assert_eq!(mass, summary.mass[k], "t = {}", snap.t);
    }
}

#[test]
fn repeated_runs_write_identical_snapshots() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_case(&short_case(Some(a.path())), "a").unwrap();
    let mut cfg = short_case(Some(b.path()));
    cfg.numerical.parallel = true;
    run_case(&cfg, "b").unwrap();
    for t in ["0", "1", "2"] {
        let name = format!("snapshot_t{:09.3}.csv", t.parse::<f64>().unwrap());
        let x = fs::read(a.path().join(&name)).unwrap();
        let y = fs::read(b.path().join(&name)).unwrap();
        assert!(x == y, "{name} differs between sequential and parallel runs");
    }
}

#[test]
fn vacuum_run_reports_bed_as_surface() {
    let mut cfg = short_case(None);
    cfg.initial.center = -10.0;
    cfg.numerical.time.t_end = 0.1;
    cfg.output.snapshot_times = vec![0.0, 0.1];
    let out = run_case(&cfg, "vacuum").unwrap();
    for snap in &out.snapshots {
        for r in &snap.rows {
            assert_eq!((r.h, r.u, r.m_stop), (0.0, 0.0, 0));
            assert_eq!((r.surf_x, r.surf_y), (r.x_b, r.y_b));
        }
    }
    assert_eq!(out.summary.front_position.last(), Some(&None));
}

#[test]
fn cli_writes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_avalanche"))
        .args([
            "--case",
            "2",
            "--n-cells",
            "48",
            "--t-end",
            "0.5",
            "--snap",
            "0,0.25,0.5",
        ])
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let csv = fs::read_to_string(tmp.path().join("snapshot_t00000.250.csv")).unwrap();
    assert_eq!(csv.lines().nth(1), Some(SNAPSHOT_HEADER));
    assert_eq!(csv.lines().count(), 2 + 48);
    assert!(tmp.path().join("summary.json").exists());

    // the echoed configuration reloads to the same run
    let echoed = avalanche_dg::load_config(tmp.path().join("config.toml")).unwrap();
    assert_eq!(echoed.numerical.n_cells, 48);
    assert_eq!(echoed.physical.delta, 23f64.to_radians());
}

#[test]
fn cli_reports_missing_fields() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("bad.toml");
    fs::write(&path, "[physical]\nzeta0 = 35.0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_avalanche"))
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("physical.phi") && err.contains("physical.delta"), "{err}");
    assert!(!err.contains("physical.zeta0"), "{err}");
}

#[test]
fn cli_strict_cfl_aborts() {
    // resting pile: max speed √(βh₀) ≈ 0.436, so Δt = 0.02 on Δx ≈ 0.029 gives CFL ≈ 0.3
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("coarse_dt.toml");
    fs::write(
        &path,
        "[physical]\nzeta0 = 35.0\nphi = 30.0\ndelta = 30.0\n\n[numerical]\nn_cells = 1024\ndt = 0.02\nt_end = 1.0\n\n[output]\nsnapshot_times = []\n",
    )
    .unwrap();
    let run = |strict: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_avalanche"));
        cmd.arg("--config").arg(&path).env("RUST_LOG", "off");
        if strict {
            cmd.arg("--strict-cfl");
        }
        cmd.output().unwrap()
    };
    let strict = run(true);
    assert!(!strict.status.success());
    let stderr = String::from_utf8_lossy(&strict.stderr);
    assert!(stderr.contains("CFL") && stderr.contains("t = 0"), "{stderr}");
    // without the flag the run only warns
    assert!(run(false).status.success());
}
