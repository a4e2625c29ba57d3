use std::process::{Command, Output};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn same_seed_same_bytes() {
    let args = ["--family", "sp", "--n", "1", "--checks", "identities", "--samples", "10", "--seed", "7"];
    let (a, b) = (verify(&args), verify(&args));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let c = verify(&["--family", "sp", "--n", "1", "--checks", "identities", "--samples", "10", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn numbers_report() {
    let o = verify(&["--family", "spin", "--n", "1", "--checks", "numbers"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(v["families"][0]["e_value"]["value"], "239/240");
    assert_eq!(v["families"][0]["e_value"]["order"], "240");
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.iter().all(|id| id.starts_with("numbers/spin/n=1/")));
}

#[test]
fn pairing_records_and_text_format() {
    let o = verify(&["--family", "sp", "--n", "1", "--checks", "pairing", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.lines().any(|l| l.starts_with("PASS") && l.contains("pairing/N=12 ")), "{s}");
}

#[test]
fn failing_check_exits_one() {
    let o = verify(&["--family", "sp", "--n", "1", "--checks", "reconstruction", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["verdict"] == "fail"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--checks", "bogus"][..],
        &["--samples", "0"],
        &["--n", "0"],
        &["--family", "g2"],
        &["--format", "xml"],
        &["--frobnicate"],
    ] {
        assert_eq!(verify(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("einv-cli-test-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let to_file = verify(&["--family", "sp", "--n", "2", "--checks", "numbers", "--output", p]);
    assert_eq!(to_file.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let to_stdout = verify(&["--family", "sp", "--n", "2", "--checks", "numbers"]);
    assert_eq!(written, to_stdout.stdout);
}

#[test]
fn unwritable_output_exits_three() {
    let o = verify(&["--checks", "numbers", "--n", "1", "--output", "/nonexistent-dir/report.json"]);
    assert_eq!(o.status.code(), Some(3));
}
