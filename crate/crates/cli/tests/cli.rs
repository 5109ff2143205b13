use std::process::{Command, Output};

fn gwcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwcount")).args(args).output().expect("run gwcount")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_line(args: &[&str]) -> String {
    let o = gwcount(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn degree_examples() {
    assert_eq!(first_line(&["degree", "--vars", "x", "--system", "x^3"]), "2⟨1⟩ + ⟨−1⟩");
    assert_eq!(first_line(&["degree", "--vars", "x", "--system", "x^2"]), "⟨1⟩ + ⟨−1⟩");
    assert_eq!(first_line(&["degree", "--vars", "x,y", "--system", "x;y", "--at", "0,0"]), "⟨1⟩");
}

#[test]
fn degree_json_reports_invariants() {
    let o = gwcount(&["degree", "--vars", "x", "--system", "x^3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["gw"]["rank"], "3");
    assert_eq!(v["gw"]["signature"], "1");
    assert_eq!(v["gw"]["disc"], "-1");
}

#[test]
fn plane_counts() {
    assert_eq!(first_line(&["planes", "-d", "1", "-n", "3", "--degrees", "3"]), "15⟨1⟩ + 12⟨−1⟩");
    assert_eq!(first_line(&["planes", "-d", "3", "-n", "8", "--degrees", "3"]), "160839⟨1⟩ + 160650⟨−1⟩");
    assert_eq!(first_line(&["planes", "-d", "3", "-n", "7", "--degrees", "1,1,1,1"]), "⟨1⟩");
}

#[test]
fn plane_count_json() {
    let o = gwcount(&["planes", "-d", "1", "-n", "4", "--degrees", "5", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n_C"], "2875");
    assert_eq!(v["n_R"], "15");
    assert_eq!(v["orientable"], true);
    assert_eq!(v["gw"]["rank"], "2875");
    assert_eq!(v["gw"]["signature"], "15");
}

#[test]
fn trace_forms() {
    assert_eq!(first_line(&["gw", "trace-form", "--poly", "x^2-2"]), "⟨1⟩ + ⟨2⟩");
    assert_eq!(first_line(&["gw", "trace-form", "--poly", "x^2+1"]), "⟨1⟩ + ⟨−1⟩");
    assert_eq!(first_line(&["gw", "invariants", "--gram", "0,1;1,0"]), "⟨1⟩ + ⟨−1⟩");
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["degree", "--vars", "x", "--system", "x^2+"], 2),
        (&["degree", "--vars", "x,y", "--system", "x^2;x*y"], 3),
        (&["gw", "invariants", "--gram", "1,1;1,1"], 4),
        (&["planes", "-d", "2", "-n", "5", "--degrees", "1,1,1"], 5),
        (&["planes", "-d", "1", "-n", "3", "--degrees", "3", "--field", "5"], 2),
        (&["verify", "nope"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let o = gwcount(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn verify_is_deterministic() {
    let a = gwcount(&["verify", "bezoutian-core", "--seed", "11"]);
    let b = gwcount(&["verify", "bezoutian-core", "--seed", "11"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("PASS bezoutian-core"));
}
