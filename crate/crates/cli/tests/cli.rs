use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hk")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn kernel_examples() {
    let out = hk(&["kernel", "--case", "real", "--m", "3", "--k", "0", "--which", "K"]);
    assert_eq!(stdout(&out), "1");
    let out = hk(&["kernel", "--case", "real", "--m", "3", "--k", "1", "--which", "K"]);
    assert_eq!(stdout(&out), "3*x[1]*y[1]+3*x[2]*y[2]+3*x[3]*y[3]");
    let out = hk(&["kernel", "--case", "symplectic", "--n", "1", "--p", "0", "--q", "2", "--which", "ZS"]);
    assert_eq!(stdout(&out), "1/2*zbar[1]^2*u[1]^2+zbar[1]*zbar[2]*u[1]*u[2]+1/2*zbar[2]^2*u[2]^2");
}

#[test]
fn kernel_json_output() {
    let out = hk(&["kernel", "--case", "complex", "--n", "2", "--p", "1", "--q", "0", "--which", "K", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["polynomial"], "2*z[1]*ubar[1]+2*z[2]*ubar[2]");
    assert_eq!(v["params"]["n"], 2);
}

#[test]
fn invalid_parameters_exit_two() {
    let out = hk(&["kernel", "--case", "real", "--m", "2", "--k", "1", "--which", "K"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(hk(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn project_examples() {
    let out = hk(&["project", "x[1]^2", "--flavor", "harmonic", "--m", "3"]);
    assert_eq!(stdout(&out), "2/3*x[1]^2-1/3*x[2]^2-1/3*x[3]^2");
    let out = hk(&["project", "2/3*x[1]^2-1/3*x[2]^2-1/3*x[3]^2", "--flavor", "harmonic", "--m", "3"]);
    assert_eq!(stdout(&out), "2/3*x[1]^2-1/3*x[2]^2-1/3*x[3]^2");
    let out = hk(&["project", "x[1]^2+x[2]^2+x[3]^2", "--flavor", "harmonic", "--m", "3"]);
    assert_eq!(stdout(&out), "0");
    assert_eq!(hk(&["project", "x[1]^2+x[2]", "--flavor", "harmonic", "--m", "3"]).status.code(), Some(2));
    assert_eq!(hk(&["project", "x[1]^", "--flavor", "harmonic", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn project_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hk"))
        .args(["project", "--flavor", "symplectic", "--case", "symplectic", "--n", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"zbar[1]*z[1]").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1/2*z[1]*zbar[1]+1/2*z[2]*zbar[2]");
}

#[test]
fn verify_examples() {
    let out = hk(&["verify", "planewave", "--case", "real", "--m", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["identity_id"], "planewave.real");
    assert_eq!(v["status"], "pass");

    let out = hk(&["verify", "spherical", "--m", "3", "--kmax", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(lines.iter().any(|r| r["identity_id"] == "spherical.reproduction"));
    assert!(lines.iter().all(|r| r["status"] == "pass" && r["params"]["k"] == 0));
    let ids: Vec<&str> = lines.iter().map(|r| r["identity_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn skips_need_permission() {
    let args = ["verify", "planewave", "--case", "real", "--m", "3", "--k", "1", "--max-terms", "2"];
    let out = hk(&args);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("\"status\":\"skipped\""));
    let mut allowed = args.to_vec();
    allowed.push("--allow-skip");
    assert_eq!(hk(&allowed).status.code(), Some(0));
}

#[test]
fn seeded_runs_do_not_depend_on_jobs() {
    let a = hk(&["verify", "complex", "--n", "2", "--pqmax", "1", "--seed", "7", "--jobs", "1"]);
    let b = hk(&["verify", "complex", "--n", "2", "--pqmax", "1", "--seed", "7", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = hk(&["verify", "complex", "--n", "2", "--pqmax", "1", "--seed", "8", "--jobs", "1"]);
    assert_ne!(a.stdout, c.stdout);
}
