use std::path::PathBuf;
use std::process::{Command, Output};

use dirac_msy_cli::verify::{table_rows, GOLDEN};

const BIN: &str = env!("CARGO_BIN_EXE_dirac-msy");

fn golden(t: usize) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("golden/table{t}.conf")).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn rows(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn config_file(dir: &tempfile::TempDir, text: &str) -> String {
    let p = dir.path().join("run.conf");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn energies_reproduce_table_four() {
    let out = run(&["--no-timestamp", "--config", &golden(4), "energies"]);
    assert!(out.status.success());
    let (header, data) = rows(&out);
    assert_eq!(&header[..9], ["limit", "choice", "n", "kappa", "label", "H", "E_fm_inv", "branch", "residual"]);
    assert_eq!(data.len(), 48);
    for (q, h, e) in table_rows(GOLDEN[3].2) {
        let row = data
            .iter()
            .find(|r| r[2] == q.n.to_string() && r[3] == q.kappa.to_string() && r[5].parse::<f64>().unwrap() == h)
            .unwrap();
        assert!((row[6].parse::<f64>().unwrap() - e).abs() <= 1e-6, "{q} H={h}");
    }
}

#[test]
fn empty_n_list_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "n_list =\n");
    let out = run(&["--no-timestamp", "--config", &cfg, "energies"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(rows(&out).1.is_empty());
}

#[test]
fn single_step_sweep_equals_energies() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "states = 1:-1, 0:2\n");
    let sweep = rows(&run(&[
        "--no-timestamp",
        "--config",
        &cfg,
        "sweep",
        "--param",
        "alpha",
        "--from",
        "0.01",
        "--to",
        "0.5",
        "--steps",
        "1",
    ]));
    let energies = rows(&run(&["--no-timestamp", "--config", &cfg, "energies"]));
    assert_eq!(sweep.1.len(), 1);
    let from_energies: Vec<&String> = energies.1.iter().map(|r| &r[6]).collect();
    let from_sweep: Vec<&String> = sweep.1[0][1..].iter().collect();
    assert_eq!(from_sweep, from_energies);
}

#[test]
fn tensor_sweep_endpoints_match_table_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "states = 1:-1, 2:3\n");
    let (header, data) = rows(&run(&[
        "--no-timestamp",
        "--config",
        &cfg,
        "sweep",
        "--param",
        "tensor",
        "--from",
        "0",
        "--to",
        "0.5",
        "--steps",
        "6",
    ]));
    assert_eq!(header[0], "param_value");
    let table = table_rows(GOLDEN[0].2);
    for (col, (n, k)) in [(1, (1, -1)), (2, (2, 3))] {
        for (row, h) in [(0, 0.0), (5, 0.5)] {
            let want = table.iter().find(|r| r.0.n == n && r.0.kappa == k && r.1 == h).unwrap().2;
            assert!((data[row][col].parse::<f64>().unwrap() - want).abs() <= 1e-6);
        }
    }
}

#[test]
fn alpha_sweep_is_continuous() {
    let out = run(&[
        "--no-timestamp",
        "--config",
        &golden(3),
        "sweep",
        "--param",
        "alpha",
        "--from",
        "0.005",
        "--to",
        "0.1",
        "--steps",
        "60",
    ]);
    assert!(out.status.success());
    let (_, data) = rows(&out);
    for col in 1..data[0].len() {
        let e: Vec<f64> = data.iter().map(|r| r[col].parse().unwrap()).collect();
        let mut d: Vec<f64> = e.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
        let max = d.iter().copied().fold(0.0, f64::max);
        d.sort_by(f64::total_cmp);
        let median = d[d.len() / 2];
        assert!(max <= 10.0 * median, "column {col}: jump {max} vs median {median}");
    }
}

#[test]
fn unknown_sweep_parameter_is_usage_error() {
    let out = run(&["sweep", "--param", "spin", "--from", "0", "--to", "1", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wavefunction_output_contract() {
    let out = run(&["--no-timestamp", "wavefunction", "--n", "2", "--kappa", "-1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    for key in ["# E_fm_inv = ", "# branch = ", "# exp1 = ", "# exp2 = "] {
        assert!(text.contains(key), "{key}");
    }
    let (header, data) = rows(&out);
    assert_eq!(header, ["r", "F", "G"]);
    let v: Vec<[f64; 3]> =
        data.iter().map(|r| [r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap()]).collect();
    let gmax = v.iter().map(|x| x[2].abs()).fold(0.0, f64::max);
    assert!(v[0][2].abs() < 1e-6 * gmax && v[v.len() - 1][2].abs() < 1e-6 * gmax);
    // independent re-integration of the emitted grid
    let norm: f64 = v
        .windows(2)
        .map(|w| 0.5 * (w[1][0] - w[0][0]) * (w[0][1].powi(2) + w[0][2].powi(2) + w[1][1].powi(2) + w[1][2].powi(2)))
        .sum();
    assert!((norm - 1.0).abs() <= 1e-6, "{norm}");
}

#[test]
fn tensor_changes_the_wavefunction() {
    let with = |h: &str| {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config_file(&dir, "r_min = 1\nr_max = 300\npoints = 1001\n");
        rows(&run(&["--no-timestamp", "--config", &cfg, "wavefunction", "--n", "1", "--kappa", "-1", "--tensor", h])).1
    };
    let (a, b) = (with("0"), with("0.5"));
    assert_eq!(a.len(), b.len());
    let max_diff = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x[2].parse::<f64>().unwrap() - y[2].parse::<f64>().unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(max_diff > 1e-4, "{max_diff}");
}

#[test]
fn degeneracy_suite_with_and_without_tensor() {
    let dir = tempfile::tempdir().unwrap();
    for h in ["0", "0.5"] {
        let cfg = config_file(&dir, &format!("tensor = {h}\nn_list = 1, 2\nkappa_list = -1, -2, 2, 3\n"));
        let out = run(&["--config", &cfg, "verify", "degeneracy"]);
        assert_eq!(out.status.code(), Some(0), "H = {h}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 2);
        assert_eq!(h == "0.5", text.contains("intentionally split"));
    }
}

#[test]
fn every_suite_passes_on_the_golden_configs() {
    for suite in ["tables", "riccati", "shape-invariance", "oracle", "degeneracy"] {
        let out = run(&["verify", suite]);
        let text = String::from_utf8(out.stdout).unwrap();
        assert_eq!(out.status.code(), Some(0), "{suite}:\n{text}");
        assert!(!text.contains("FAIL"));
    }
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config_file(&dir, "limit = pseudospin\nv0 = 0\nv1 = 0.3\nstates = 1:-1\n");
    let out = run(&["--config", &cfg, "verify", "riccati"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL"));
}

#[test]
fn flags_override_config_and_out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("e.csv");
    let o = run(&[
        "--no-timestamp",
        "--config",
        &golden(1),
        "--limit",
        "spin",
        "--out",
        out_path.to_str().unwrap(),
        "energies",
    ]);
    assert!(o.status.success() || o.status.code() == Some(1));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("# limit = spin"));
    assert!(text.lines().any(|l| l.starts_with("spin,first,")));
}

#[test]
fn timestamp_lives_only_in_metadata() {
    let o = run(&["energies"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let stamp = text.lines().find(|l| l.contains("generated_unix")).unwrap();
    assert!(stamp.starts_with("# "));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
}
