use std::fs;
use std::process::{Command, Output};

fn faid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_faid")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn code_info_reports_the_tanner_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let alist = dir.path().join("code.alist");
    let a = alist.to_str().unwrap();
    assert!(faid(&["code", "build-tanner", "--out", a]).status.success());
    let o = faid(&["code", "info", a]);
    let text = stdout(&o);
    for want in ["N 155", "M 93", "K 64", "girth 8", "quasi-cyclic L 31 alpha 2 beta 5"] {
        assert!(text.contains(want), "{text}");
    }
}

#[test]
fn decode_prints_outcome() {
    let o = faid(&["decode", "--rule", "D0", "--errors", "3,40,77", "--iters", "15"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("converged true") && stdout(&o).contains("correct true"));
}

#[test]
fn rule_validation_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("D0.rule");
    let o = faid(&["rule", "list-builtin", "--tables"]);
    let text = stdout(&o);
    let d0: String = text.split("# D1").next().unwrap().lines().skip(1).collect::<Vec<_>>().join("\n");
    fs::write(&good, &d0).unwrap();
    assert_eq!(faid(&["rule", "validate", good.to_str().unwrap()]).status.code(), Some(0));
    // swap one off-diagonal entry to break symmetry
    let bad = dir.path().join("bad.rule");
    let mut lines: Vec<String> = d0.lines().map(String::from).collect();
    let mut row: Vec<&str> = lines[1].split_whitespace().collect();
    row[1] = "3";
    lines[1] = row.join(" ");
    fs::write(&bad, lines.join("\n")).unwrap();
    assert_eq!(faid(&["rule", "validate", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(faid(&["rule", "validate", "/nonexistent.rule"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(faid(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(faid(&["decode", "--errors", "999"]).status.code(), Some(2));
}

#[test]
fn pipeline_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let o = faid(&["ts", "enum", "--max-a", "8", "--max-b", "4", "--reduce", "--out", &p("ts.txt")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(p("ts.txt")).unwrap().starts_with("# max_a 8 max_b 4\n"));
    // config supplies iters; the flag below overrides the dset path
    fs::write(p("run.cfg"), format!("iters = 15\ndset = {}\n", p("missing.txt"))).unwrap();
    let o = faid(&["--config", &p("run.cfg"), "div", "select", "--ts", &p("ts.txt"), "-t", "4", "-B", "4", "--out", &p("d.txt")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let dset = fs::read_to_string(p("d.txt")).unwrap();
    assert!(dset.starts_with("n_iter 15\nrule D0 4\n"), "{dset}");
    let o = faid(&["--config", &p("run.cfg"), "div", "guarantee", "--dset", &p("d.txt"), "-t", "2", "--mode", "qc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    // without the flag the config's missing dset path is used
    let o = faid(&["--config", &p("run.cfg"), "div", "guarantee", "-t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = faid(&["eset", "build", "--ts", &p("ts.txt"), "-t", "4", "-A", "8", "-B", "4", "--out", &p("e.txt")]);
    assert!(o.status.success());
    let o = faid(&["div", "check", "--dset", &p("d.txt"), "--eset", &p("e.txt")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // one iteration cannot correct weight-four patterns
    fs::write(p("short.txt"), "n_iter 1\nrule D0 4\n").unwrap();
    let o = faid(&["div", "guarantee", "--dset", &p("short.txt"), "-t", "4", "--mode", "eset", "--eset", &p("e.txt"), "--first-failure"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).matches("uncorrected").count(), 1);
}

#[test]
fn fer_csv_has_one_row_per_stage_and_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    fs::write(&d, "n_iter 15\nrule D0 5\nrule D1 6\n").unwrap();
    let out = dir.path().join("fer.csv");
    let o = faid(&[
        "sim", "fer", "--dset", d.to_str().unwrap(), "--alpha", "0.05,0.04", "--max-frames", "2000",
        "--target-errors", "20", "--seed", "5", "--workers", "2", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,stage,frames,frame_errors,fer,ci_low,ci_high");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("0.05,t5,") && lines[2].starts_with("0.05,t6,"));
}
