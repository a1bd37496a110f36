use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn quadnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadnorm")).args(args).output().unwrap()
}

fn quadnorm_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadnorm"))
        .args(args)
        .env(key, value)
        .output()
        .unwrap()
}

fn stdout_lines(o: &Output) -> Vec<String> {
    String::from_utf8_lossy(&o.stdout).lines().map(str::to_string).collect()
}

#[test]
fn every_report_starts_with_the_header() {
    let o = quadnorm(&["class", &fixture("freecomm.qmap")]);
    assert_eq!(stdout_lines(&o)[0], "# quadnorm-report v1");
}

#[test]
fn stable212_fails_on_sign() {
    let o = quadnorm(&["check", &fixture("sign.qmap"), "--stable212"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout_lines(&o).contains(&"CHECK stable212 FAIL witness=+1 -1 -1".to_string()));
}

#[test]
fn ab5_class() {
    let o = quadnorm(&["class", &fixture("ab5.qmap")]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines[1], "CLASS left=5 right=4");
    assert!(lines.contains(&"WITNESS left a b1 a".to_string()));
}

#[test]
fn sort_normalises() {
    let o = quadnorm(&["normalize", &fixture("freecomm.qmap"), "c b a", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_lines(&o)[1..], ["a b c", "POSITIONS (1,2,1)"]);
}

#[test]
fn recipe43_is_refused_outside_its_class() {
    let o = quadnorm(&["normalize", &fixture("ab5.qmap"), "a b1 a", "--strategy", "recipe43"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_2() {
    let o = quadnorm(&["class", &fixture("broken.qmap")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = quadnorm(&["normalize", &fixture("freecomm.qmap"), "a z"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quadnorm(&["class", &fixture("missing.qmap")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn full_check_on_sign() {
    let o = quadnorm(&["check", &fixture("sign.qmap")]);
    assert_eq!(o.status.code(), Some(1));
    let lines = stdout_lines(&o);
    assert!(lines.contains(&"CHECK domino FAIL witness=+1 -1 -1".to_string()));
    assert!(lines.contains(&"CHECK weak-domino PASS".to_string()));
    assert!(lines.contains(&"CHECK local-factorability PASS".to_string()));
}

#[test]
fn rules_and_rewriting() {
    let o = quadnorm(&["rules", &fixture("sign.qmap"), "--mod-e"]);
    assert_eq!(stdout_lines(&o)[1..], ["+1 -1 -> ^", "-1 +1 -> ^"]);
    let o = quadnorm(&["rules", &fixture("sign.qmap")]);
    assert_eq!(o.status.code(), Some(2));

    let o = quadnorm(&["rewrite", &fixture("ab5.qmap"), "a b1 a", "--trace"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines[1], "a b1 a @2 -> a b2 a");
    assert_eq!(lines.last().unwrap(), "RESULT a b5 a steps=4 end=irreducible");

    let o = quadnorm(&["rewrite", &fixture("sign.qmap"), "+1 0 -1 +1"]);
    assert_eq!(stdout_lines(&o).last().unwrap(), "RESULT +1 steps=1 end=irreducible");
}

#[test]
fn monoid_counts_and_checks() {
    let o = quadnorm(&["monoid", &fixture("freecomm.qmap"), "--max-len", "2", "--check-greedy"]);
    let lines = stdout_lines(&o);
    // normal words of length <= 2 over a < b < c: 1 + 3 + 6
    assert_eq!(lines[1], "ELEMENTS 10");
    assert_eq!(lines[2], "CHECK greedy FAIL witness=b a b");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_expectations_are_met() {
    for name in ["freecomm-abc", "sign", "ab5", "free1"] {
        let o = quadnorm(&["catalog", name, "--run"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert!(stdout_lines(&o)[1..].iter().all(|l| l.starts_with("EXPECT ") && l.contains(" MET ")));
    }
    let o = quadnorm(&["catalog", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_description_parses_back() {
    let o = quadnorm(&["catalog", "sign"]);
    let text = stdout_lines(&o)[1..].join("\n");
    assert_eq!(text.trim(), std::fs::read_to_string(fixture("sign.qmap")).unwrap().trim());
}

#[test]
fn search_is_exhaustive_for_two_letters() {
    let o = quadnorm(&["search", "--letters", "2", "--neutral", "--require", "local-factorability"]);
    assert_eq!(o.status.code(), Some(0));
    let lines = stdout_lines(&o);
    assert_eq!(lines[1], "SEARCH letters=2 space=512 mode=exhaustive candidates=512");
    let matches = lines.iter().filter(|l| l.starts_with("MATCH ")).count();
    assert!(matches > 0);
    assert_eq!(lines.last().unwrap(), &format!("MATCHED {matches} of 512 +local-factorability"));
}

#[test]
fn search_output_does_not_depend_on_workers() {
    let args = ["search", "--letters", "3", "--neutral", "--count", "200", "--seed", "7", "--forbid", "domino"];
    let one = quadnorm_env(&args, "QUADNORM_WORKERS", "1");
    let four = quadnorm_env(&args, "QUADNORM_WORKERS", "4");
    assert_eq!(one.stdout, four.stdout);
    assert!(stdout_lines(&one)[1].contains("mode=sampled candidates=200"));
}

#[test]
fn search_requires_the_neutral_flag() {
    assert_eq!(quadnorm(&["search", "--letters", "2"]).status.code(), Some(2));
}
