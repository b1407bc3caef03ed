mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use common::data_file;

fn allagmatic(args: &[&str], out: &Path) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_allagmatic"))
        .args(args)
        .arg("--output-dir")
        .arg(out)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stderr).into_owned(),
    )
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn ca_run_ends_at_target() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = allagmatic(&["run", "--model", "ca", "--rule", "110", "--pgm"], dir.path());
    assert_eq!(code, 0);
    let trace = read(dir.path(), "trace.txt");
    assert_eq!(trace.lines().count(), 16);
    assert_eq!(trace.lines().last().unwrap(), "1101011001111101000000000000000");
    let pgm = fs::read(dir.path().join("trace.pgm")).unwrap();
    let header = b"P5\n31 16\n255\n";
    assert_eq!(&pgm[..header.len()], header);
    assert_eq!(pgm.len(), header.len() + 31 * 16);
    assert!(read(dir.path(), "config.toml").contains("rule = 110"));
}

#[test]
fn zero_step_run_echoes_input() {
    let dir = tempfile::tempdir().unwrap();
    let init = "0110010111010001110100111010110";
    let (code, _) = allagmatic(&["run", "--steps", "0", "--initial", init], dir.path());
    assert_eq!(code, 0);
    assert_eq!(read(dir.path(), "trace.txt"), format!("{init}\n"));
}

#[test]
fn ann_run_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = allagmatic(&["run", "--model", "ann", "--seed", "2024"], dir.path());
    assert_eq!(code, 0);
    let trace = read(dir.path(), "trace.txt");
    assert_eq!(trace.lines().count(), 16);
    assert_eq!(
        trace.lines().last().unwrap(),
        data_file("ann_forward_seed2024.txt").trim()
    );
    assert_eq!(read(dir.path(), "weights.txt"), data_file("ann_weights_seed2024.txt"));
}

#[test]
fn ca_search_names_rule_110() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = allagmatic(&["search", "--seed", "17"], dir.path());
    assert_eq!(code, 0);
    let report: toml::Table = toml::from_str(&read(dir.path(), "report.toml")).unwrap();
    assert_eq!(report["report"]["rule"].as_integer(), Some(110));
    assert_eq!(report["report"]["terminated"].as_bool(), Some(true));
    assert_eq!(report["config"]["seed"].as_integer(), Some(17));
}

#[test]
fn exhausted_budget_exits_3_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = allagmatic(&["search", "--budget", "0"], dir.path());
    assert_eq!(code, 3);
    let report: toml::Table = toml::from_str(&read(dir.path(), "report.toml")).unwrap();
    assert_eq!(report["report"]["iterations"].as_integer(), Some(0));
    assert_eq!(report["report"]["terminated"].as_bool(), Some(false));
}

#[test]
fn census_file_has_256_lines_and_is_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(allagmatic(&["census"], a.path()).0, 0);
    assert_eq!(allagmatic(&["census"], b.path()).0, 0);
    let text = read(a.path(), "census.txt");
    assert_eq!(text.lines().count(), 256);
    assert_eq!(text, read(b.path(), "census.txt"));
    assert_eq!(text, data_file("census_rule110_target.txt"));
}

#[test]
fn invalid_config_exits_2_naming_field() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stderr) = allagmatic(&["run", "--rule", "256"], dir.path());
    assert_eq!(code, 2);
    assert!(stderr.contains("`rule`"), "{stderr}");
    let (code, stderr) = allagmatic(&["search", "--initial", "0101"], dir.path());
    assert_eq!(code, 2);
    assert!(stderr.contains("`initial`"), "{stderr}");
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let (code, _) = allagmatic(&["census"], &blocker.join("sub"));
    assert_eq!(code, 4);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.toml");
    fs::write(&cfg, "model = \"ca\"\nrule = 30\nsteps = 4\n").unwrap();
    let out = dir.path().join("out");
    let (code, _) = allagmatic(&["run", "--config", cfg.to_str().unwrap(), "--rule", "90"], &out);
    assert_eq!(code, 0);
    let echoed = read(&out, "config.toml");
    assert!(echoed.contains("rule = 90"));
    assert!(echoed.contains("steps = 4"));
    assert_eq!(read(&out, "trace.txt").lines().count(), 5);

    // the echoed config is itself a valid config reproducing the run
    let again = dir.path().join("again");
    let (code, _) = allagmatic(&["run", "--config", out.join("config.toml").to_str().unwrap()], &again);
    assert_eq!(code, 0);
    assert_eq!(read(&out, "trace.txt"), read(&again, "trace.txt"));
}

#[test]
fn study_writes_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = allagmatic(&["study", "--seeds-count", "3", "--workers", "2"], dir.path());
    assert_eq!(code, 0);
    let study: toml::Table = toml::from_str(&read(dir.path(), "study.toml")).unwrap();
    assert_eq!(study["summary"]["seeds"].as_integer(), Some(3));
    assert_eq!(study["runs"].as_array().unwrap().len(), 3);
}
