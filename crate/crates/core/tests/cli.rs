use std::process::{Command, Output};

fn clumpstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clumpstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn distribution_is_exact() {
    let o = clumpstat(&["distribution", "--words", "aa", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "value\tprobability\tprobability_decimal\n0\t5/8\t0.625000000000000\n1\t3/8\t0.375000000000000\n"
    );
}

#[test]
fn correlate_lists_prefix_code() {
    let o = clumpstat(&["correlate", "--words", "abaabaaba"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "K\t1\t1\t{aba, baabaaba}"));
}

#[test]
fn verify_reports_every_view() {
    let o = clumpstat(&["verify", "--words", "aba,bba", "--n", "8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.ends_with("\tok")).count(),
        7,
        "{out}"
    );
}

#[test]
fn markov_model_file() {
    let dir = std::env::temp_dir().join(format!("clumpstat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("model.txt");
    std::fs::write(
        &path,
        "alphabet: ab\nmodel: markov\ninit a = 1/2\ninit b = 1/2\n\
         trans a a = 3/4\ntrans a b = 1/4\ntrans b a = 1/4\ntrans b b = 3/4\n",
    )
    .unwrap();
    let o = clumpstat(&[
        "verify",
        "--words",
        "aa",
        "--model",
        path.to_str().unwrap(),
        "--n",
        "8",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(
        out.lines()
            .skip(1)
            .all(|l| l.ends_with("\tok") || l.contains("skipped")),
        "{out}"
    );
    assert_eq!(out.lines().filter(|l| l.ends_with("\tok")).count(), 5);
}

#[test]
fn automaton_writes_dot() {
    let o = clumpstat(&["automaton", "--words", "bababa"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("digraph clump_automaton {"));
    assert_eq!(out.matches("doublecircle").count(), 1);
}

#[test]
fn json_output() {
    let o = clumpstat(&["moments", "--words", "aa", "--n", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["clumps_mean"], "1/2");
}

#[test]
fn exit_codes() {
    assert_eq!(clumpstat(&["gf", "--words", "aa,a"]).status.code(), Some(3));
    assert_eq!(
        clumpstat(&["gf", "--words", "aba,ab"]).status.code(),
        Some(3)
    );
    assert_eq!(clumpstat(&["gf", "--bogus"]).status.code(), Some(2));
    assert_eq!(clumpstat(&["frobnicate"]).status.code(), Some(2));
    let bad = std::env::temp_dir().join(format!("clumpstat-bad-{}", std::process::id()));
    std::fs::write(
        &bad,
        "alphabet: ab\nmodel: bernoulli\np a = 1/2\np b = 1/3\n",
    )
    .unwrap();
    assert_eq!(
        clumpstat(&["gf", "--words", "aa", "--model", bad.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    std::fs::remove_file(&bad).ok();
    assert_eq!(
        clumpstat(&["gf", "--words", "aa", "--model", "/nonexistent/model"])
            .status
            .code(),
        Some(4)
    );
}
