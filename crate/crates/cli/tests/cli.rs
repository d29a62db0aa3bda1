use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn simulate(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_simulate"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("SIM_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("exp.cfg");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// Parses a CSV table, checking the header width and that every cell other
/// than the listed text columns is a number.
fn table(path: &Path, text_cols: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let body = fs::read_to_string(path).unwrap();
    let mut lines = body.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    for r in &rows {
        assert_eq!(r.len(), header.len(), "{}", path.display());
        for (h, v) in header.iter().zip(r) {
            if !text_cols.contains(&h.as_str()) {
                assert!(v.parse::<f64>().is_ok(), "{h} = {v:?} in {}", path.display());
            }
        }
    }
    (header, rows)
}

fn col(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn list_designs_prints_table() {
    let out = simulate(&["list-designs"], None);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("28-d1,28,") && text.contains("140-d2,140,"));
}

#[test]
fn link_fit_writes_tables_and_fits_well() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = simulate(&["link-fit", "--seed", "4", "--out", out_dir.to_str().unwrap()], Some("2"));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let (h, rows) = table(&out_dir.join("measurements.csv"), &[]);
    assert_eq!(h, ["gamma_sig_db", "gamma_int_db", "gamma_out_db", "gamma_out_model_db"]);
    assert_eq!(rows.len(), 60);
    let measured = col(&h, &rows, "gamma_out_db");
    let model = col(&h, &rows, "gamma_out_model_db");
    let rms = (measured.iter().zip(&model).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / 60.0).sqrt();
    assert!(rms < 1.0, "rms {rms}");

    let (h, rows) = table(&out_dir.join("fit_summary.csv"), &["key", "value"]);
    assert_eq!(h, ["key", "value"]);
    let get = |k: &str| rows.iter().find(|r| r[0] == k).unwrap()[1].clone();
    assert_eq!(get("converged"), "true");
    assert_eq!(get("design"), "28-d1");
    assert!((get("rms_residual_db").parse::<f64>().unwrap() - rms).abs() < 1e-9);
}

#[test]
fn near_identity_chain_fits_distortionless_model() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "design = custom\n[grid]\nframes_per_point = 16\n");
    let out_dir = dir.path().join("out");
    let out = simulate(&["link-fit", "--config", &cfg, "--seed", "2", "--out", out_dir.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = table(&out_dir.join("fit_summary.csv"), &["key", "value"]);
    let get = |k: &str| rows.iter().find(|r| r[0] == k).unwrap()[1].parse::<f64>().unwrap();
    assert!((get("beta") - 1.0).abs() < 0.02, "{}", get("beta"));
    assert!(get("alpha1") < 1e-3 && get("alpha2") < 1e-3);
}

#[test]
fn network_writes_monotone_cdfs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_drops = 5\n");
    let out_dir = dir.path().join("out");
    let out = simulate(&["network", "--config", &cfg, "--seed", "8", "--out", out_dir.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let mut tops = Vec::new();
    for mode in ["full", "no_aci", "no_distortion"] {
        let (h, rows) = table(&out_dir.join(format!("cdf_{mode}.csv")), &[]);
        assert_eq!(h, ["snr_db", "cdf"]);
        let x = col(&h, &rows, "snr_db");
        let p = col(&h, &rows, "cdf");
        assert!(x.iter().all(|v| v.is_finite()));
        assert!(x.windows(2).all(|w| w[0] <= w[1]) && p.windows(2).all(|w| w[0] < w[1]));
        assert!(p[0] > 0.0 && *p.last().unwrap() == 1.0);
        tops.push(x[x.len() * 9 / 10]);
    }
    assert!(tops[2] > tops[0], "no-distortion tail {} vs full {}", tops[2], tops[0]);

    let (h, rows) = table(&out_dir.join("ue_reports.csv"), &["carrier"]);
    let full = col(&h, &rows, "sinr_full_db");
    let none = col(&h, &rows, "sinr_no_distortion_db");
    assert!(full.iter().zip(&none).all(|(f, n)| f <= n));
    table(&out_dir.join("network_summary.csv"), &["key", "value"]);
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n_drops = 4\n");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (d, t) in [(&a, "1"), (&b, "0")] {
        let out = simulate(&["network", "--config", &cfg, "--seed", "3", "--out", d.to_str().unwrap()], Some(t));
        assert!(out.status.success());
    }
    for f in ["cdf_full.csv", "ue_reports.csv", "network_summary.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out_s = out_dir.to_str().unwrap();

    let cfg = write_config(dir.path(), "[scenario]\nisd_m = oops\n");
    let out = simulate(&["network", "--config", &cfg, "--out", out_s], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.cfg");
    assert_eq!(simulate(&["network", "--config", missing.to_str().unwrap(), "--out", out_s], None).status.code(), Some(1));
    assert_eq!(simulate(&["network", "--bogus"], None).status.code(), Some(1));
    assert_eq!(simulate(&["network", "--out", out_s], Some("many")).status.code(), Some(1));

    let cfg = write_config(dir.path(), "[grid]\ngamma_int_db = -inf\nframes_per_point = 2\n");
    let out = simulate(&["link-fit", "--config", &cfg, "--out", out_s], None);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));

    let cfg = write_config(dir.path(), "n_drops = 2\n[scenario]\nisd_m = 1000000\n");
    assert_eq!(simulate(&["network", "--config", &cfg, "--out", out_s], None).status.code(), Some(4));

    let cfg = write_config(dir.path(), "mode = network\n");
    assert_eq!(simulate(&["link-fit", "--config", &cfg, "--out", out_s], None).status.code(), Some(1));
}
