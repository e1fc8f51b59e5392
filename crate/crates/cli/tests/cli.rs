use std::path::PathBuf;
use std::process::{Command, Output};

fn cmdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmdef"))
        .args(args)
        .env_remove("CMDEF_CAP_BASIS")
        .env_remove("CMDEF_CAP_DEGREE")
        .output()
        .expect("spawn cmdef")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn all_output(o: &Output) -> String {
    stdout(o) + &String::from_utf8_lossy(&o.stderr)
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cmdef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_reports_dimension() {
    let o = cmdef(&["build", "--example", "ex51", "-p", "2", "-k", "3"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["dim"], 11);
    assert_eq!(doc["faithful"], true);
    assert_eq!(doc["annihilators"].as_array().unwrap().len(), 3);
}

#[test]
fn wrong_prime_exits_2() {
    let o = cmdef(&["build", "--example", "ex52a", "-p", "2", "-k", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_group_exits_2() {
    let o = cmdef(&["build", "--group", "SL3", "--theorem", "4.7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_then_verify() {
    let path = tmp("ex51.json");
    let p = path.to_str().unwrap();
    let o = cmdef(&[
        "certify",
        "--example",
        "ex51",
        "-p",
        "2",
        "-k",
        "3",
        "--out",
        p,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["conclusion"], 1);
    let v = cmdef(&["verify", p]);
    assert_eq!(v.status.code(), Some(0));
    let out = stdout(&v);
    for name in [
        "cocycle",
        "nontriviality",
        "annihilators",
        "phsop",
        "witness m",
    ] {
        assert!(out.contains(&format!("PASS {name}:")), "{out}");
    }
}

#[test]
fn tampered_certificate_names_the_check() {
    let o = cmdef(&["certify", "--example", "ex51", "-p", "2", "-k", "3"]);
    assert!(o.status.success());
    let mut cert = json(&o);
    let poly = cert["cocycle"]["poly"].as_str().unwrap().to_string();
    cert["cocycle"]["poly"] = format!("{poly}+1*x0").into();
    let path = tmp("bad-cocycle.json");
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let v = cmdef(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(10));
    assert!(all_output(&v).contains("cocycle check failed"));

    let mut cert = json(&o);
    cert["annihilators"][1] = cert["annihilators"][0].clone();
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let v = cmdef(&["verify", path.to_str().unwrap()]);
    assert_ne!(v.status.code(), Some(0));
    assert!(all_output(&v).contains("FAIL"));
}

#[test]
fn two_annihilators_conclude_zero() {
    let o = cmdef(&["certify", "--example", "ex51", "-p", "2", "-k", "2"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["conclusion"], 0);
}

#[test]
fn invariants_in_degree_one() {
    let o = cmdef(&[
        "invariants",
        "--example",
        "ex51",
        "-k",
        "2",
        "--degree",
        "1",
    ]);
    assert!(o.status.success());
    let doc = json(&o);
    let basis: Vec<&str> = doc["slices"][0]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_str().unwrap())
        .collect();
    assert_eq!(basis, ["1*x4", "1*x7"]);

    let o = cmdef(&[
        "invariants",
        "--example",
        "ex51",
        "-k",
        "2",
        "--degree",
        "0",
    ]);
    assert_eq!(json(&o)["slices"][0]["dimension"], 1);
}

#[test]
fn cohom_reports_nontrivial() {
    let o = cmdef(&["cohom", "--example", "ex51", "-k", "2", "--is-coboundary"]);
    assert!(o.status.success());
    let doc = json(&o);
    assert_eq!(doc["result"], "nontrivial");
    assert!(doc["evidence"]["rank"].as_u64() < doc["evidence"]["rank_augmented"].as_u64());
}

#[test]
fn output_is_deterministic() {
    let args = ["certify", "--example", "ex52b", "-p", "3", "-k", "3"];
    let a = cmdef(&args);
    let b = cmdef(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cap_exceeded_exits_3() {
    let o = cmdef(&[
        "--cap-basis",
        "5",
        "certify",
        "--example",
        "ex51",
        "-k",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_cmdef"))
        .args(["certify", "--example", "ex51", "-k", "3"])
        .env("CMDEF_CAP_BASIS", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ga_transfer_certifies() {
    let path = tmp("ga.json");
    let p = path.to_str().unwrap();
    let o = cmdef(&[
        "certify",
        "--example",
        "ex52b",
        "-p",
        "3",
        "-k",
        "3",
        "--group",
        "Ga",
        "--out",
        p,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert["condition"]["kind"], "b_roberts");
    assert_eq!(cmdef(&["verify", p]).status.code(), Some(0));
}
