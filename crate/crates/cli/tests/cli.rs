use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn config_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("semistar-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn semistar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semistar")).args(args).output().unwrap()
}

fn with_config(name: &str, cfg: &Value, extra: &[&str]) -> Output {
    let path = config_file(name, &cfg.to_string());
    let mut args = vec!["--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = semistar(&args);
    let _ = std::fs::remove_file(&path);
    out
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn syntax_errors_report_their_position() {
    let path = config_file("syntax", "{\n  \"backend\": {\"order\": -12},\n  \"command\" \"survey\"\n}\n");
    let out = semistar(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3, column 13"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_configs_exit_with_two() {
    let cases = [
        json!({"backend": {"order": -12}, "command": "survey", "colour": "red"}),
        json!({"backend": {"order": -12}, "command": "propsuite", "suite": "gauss", "bounds": {"samples": 5}}),
        json!({"backend": {"valuation": "Z[1/2]"}, "command": "propsuite", "suite": "cut-oracle", "seed": 1, "bounds": {"grid_level": 13}}),
        json!({"backend": {"valuation": "Z[1/3]"}, "command": "propsuite", "suite": "cut-oracle", "seed": 1}),
        json!({"backend": {"valuation": "Z"}, "command": "survey"}),
        json!({"backend": {"order": -12}, "command": "closure", "ideal": "I"}),
        json!({"backend": {"order": 6}, "command": "survey"}),
    ];
    for (n, cfg) in cases.iter().enumerate() {
        let out = with_config(&format!("bad{n}"), cfg, &[]);
        assert_eq!(out.status.code(), Some(2), "{cfg}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("config error: "), "{}", stderr(&out));
    }
    assert!(stderr(&with_config("seedless", &cases[1], &[])).contains("seed"));
}

#[test]
fn empty_samples_pass_vacuously() {
    let cfg = json!({"backend": {"order": -12}, "command": "propsuite", "suite": "gauss", "op": "v", "bounds": {"samples": 0}});
    let out = with_config("vacuous", &cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], json!(true));
    assert!(r["warnings"][0].as_str().unwrap().contains("vacuous"));
}

#[test]
fn failing_checks_exit_with_one() {
    let cfg = json!({
        "backend": {"order": -12},
        "command": "gauss",
        "polys": {"f": "2+(1+sqrt(-3))X", "g": "2+(1-sqrt(-3))X"},
        "f": "f",
        "g": "g",
    });
    let out = with_config("gauss", &cfg, &[]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], json!(false));
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 1);
    assert!(stderr(&out).is_empty(), "report format prints nothing else");
}

#[test]
fn suite_flag_runs_a_default_backend() {
    let out = semistar(&["--suite", "cut-oracle", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!((r["command"].as_str(), r["seed"].as_u64()), (Some("propsuite"), Some(4)));
    assert_eq!(r["oracle"]["compared"], r["oracle"]["agreed"]);

    let out = semistar(&["--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("lattice-oracle"), "the error lists known suites");
}

#[test]
fn suite_flag_overrides_the_config_command() {
    let cfg = json!({"backend": {"order": -20}, "command": "survey", "seed": 9});
    let r = report(&with_config("override", &cfg, &["--suite", "lattice-oracle"]));
    assert_eq!(r["command"], json!("propsuite"));
    assert_eq!(r["backend"], json!(report(&with_config("survey", &cfg, &[]))["backend"]));
}

#[test]
fn seed_flag_changes_the_draw() {
    let cfg = json!({"backend": {"valuation": "Q"}, "command": "propsuite", "suite": "star-axioms", "op": "v", "seed": 1, "bounds": {"samples": 5}});
    let a = with_config("seed-a", &cfg, &[]);
    let b = with_config("seed-b", &cfg, &["--seed", "2"]);
    let c = with_config("seed-c", &cfg, &["--seed", "1"]);
    assert_eq!(a.stdout, c.stdout);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(report(&b)["seed"], json!(2));
}

#[test]
fn summary_format_keeps_timing_on_stderr() {
    let cfg = json!({"backend": {"order": -20}, "command": "survey", "bounds": {"norm": 16}});
    let out = with_config("summary", &cfg, &["--format", "summary"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("PASS survey on "), "{text}");
    assert!(!text.contains("elapsed"));
    assert!(stderr(&out).starts_with("elapsed "));
}

#[test]
fn out_flag_writes_the_report_file() {
    let cfg = json!({"backend": {"valuation": "Z[1/2]"}, "command": "closure", "ideals": {"M": {"cut": {"point": ["0"], "open": true}}}, "ideal": "M", "op": "v"});
    let target = std::env::temp_dir().join(format!("semistar-cli-{}-written-report.json", std::process::id()));
    let out = with_config("out", &cfg, &["--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    let _ = std::fs::remove_file(&target);
    assert_eq!(r["results"]["fixed"], json!(false));
    assert_eq!(r["results"]["closure"], json!("cut(0, closed)"));
}
