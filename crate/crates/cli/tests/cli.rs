use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const PASSTHROUGH: &str = "in a\nout a\n";
const CONTRADICTION: &str = "in a\nnot n a\nand o a n\nout o\n";
const UNIT_SQUARE: &str = r#"{"field": "real", "n_vars": 1, "equations": [{"q": {"domain": "q", "rows": 1, "cols": 1, "entries": [["1"]]}, "linear": ["0"], "b": "1"}], "witness": [1]}"#;
const NEGATIVE_SQUARE: &str = r#"{"field": "real", "n_vars": 1, "equations": [{"q": {"domain": "q", "rows": 1, "cols": 1, "entries": [["1"]]}, "linear": ["0"], "b": "-1"}]}"#;

fn gapforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapforge"))
        .args(args)
        .env_remove("GAPFORGE_BUDGET_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn mdp_from_passthrough_circuit() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", PASSTHROUGH);
    let out = dir.path().join("i.json");
    let o = gapforge(&["reduce", "--from", s(&c), "--target", "mdp", "--gadget", "hadamard:m=3", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    assert_eq!(v["kind"], "mdp");
    assert_eq!(v["s"], 16);
    assert_eq!(v["claimed_gap"], "3/2");
    assert_eq!(v["provenance"]["gadget"], "hadamard:m=3");
    assert!(v["provenance"]["circuit_hash"].is_string());
}

#[test]
fn yes_no_pair_realizes_the_gap() {
    let dir = TempDir::new().unwrap();
    let yes_c = write(&dir, "yes.txt", PASSTHROUGH);
    let no_c = write(&dir, "no.txt", CONTRADICTION);
    let (yes, no) = (dir.path().join("yes.json"), dir.path().join("no.json"));
    for (c, out) in [(&yes_c, &yes), (&no_c, &no)] {
        let o = gapforge(&["reduce", "--from", s(c), "--target", "mdp", "--gadget", "hadamard:m=4", "--require-cert", "--out", s(out)]);
        assert_eq!(code(&o), 0);
    }
    let report = dir.path().join("report.json");
    let o = gapforge(&["verify", "--instance", s(&yes), "--no", s(&no), "--json", s(&report)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("result: PASS"));
    let r = read_json(&report);
    assert_eq!(r["realized_gap"], "3/2");
    assert_eq!(r["instances"][1]["oracle"]["floor"], 96);
}

#[test]
fn mismatched_pair_fails_verification() {
    let dir = TempDir::new().unwrap();
    let yes_c = write(&dir, "yes.txt", PASSTHROUGH);
    let no_c = write(&dir, "no.txt", CONTRADICTION);
    let (yes, no) = (dir.path().join("yes.json"), dir.path().join("no.json"));
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&yes_c), "--target", "mdp", "--out", s(&yes)])), 0);
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&no_c), "--target", "mdp", "--out", s(&no)])), 0);
    let o = gapforge(&["verify", "--instance", s(&yes), "--no", s(&no)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("check FAIL: YES and NO share kind, s and claimed gap"));
}

#[test]
fn ncp_needs_a_distinguished_variable() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", UNIT_SQUARE);
    let o = gapforge(&["reduce", "--from", s(&sys), "--target", "ncp"]);
    assert_eq!(code(&o), 2);
    let c = write(&dir, "c.txt", PASSTHROUGH);
    let o = gapforge(&["reduce", "--from", s(&c), "--target", "ncp", "--tensor", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn ncp_from_circuit_verifies() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", PASSTHROUGH);
    let out = dir.path().join("ncp.json");
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&c), "--target", "ncp", "--out", s(&out)])), 0);
    let o = gapforge(&["verify", "--instance", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("planted vector lies in the affine subspace"));
}

#[test]
fn svp_chain_from_real_system() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", UNIT_SQUARE);
    let out = dir.path().join("svp.json");
    let o = gapforge(&["reduce", "--from", s(&sys), "--target", "svp", "--gadget", "fixture:handcrafted", "--require-cert", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    assert_eq!(v["kind"], "svp");
    assert_eq!(v["s"], 5);
    let o = gapforge(&["verify", "--instance", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("check PASS: planted ||x||_2^2 <= s"));
}

#[test]
fn real_pair_meets_the_floor() {
    let dir = TempDir::new().unwrap();
    let yes_s = write(&dir, "yes.json", UNIT_SQUARE);
    let no_s = write(&dir, "no.json", NEGATIVE_SQUARE);
    let (yes, no) = (dir.path().join("y.json"), dir.path().join("n.json"));
    for (src, out) in [(&yes_s, &yes), (&no_s, &no)] {
        let o = gapforge(&["reduce", "--from", s(src), "--target", "real", "--gadget", "fixture:handcrafted", "--out", s(out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = gapforge(&["verify", "--instance", s(&yes), "--no", s(&no)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("floor 8, target 8"));
}

#[test]
fn tampered_planted_vector_fails() {
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", UNIT_SQUARE);
    let out = dir.path().join("r.json");
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&sys), "--target", "real", "--gadget", "fixture:handcrafted", "--out", s(&out)])), 0);
    let mut v = read_json(&out);
    let planted = v["planted"].as_array_mut().unwrap();
    let i = planted.iter().position(|x| x == 1).unwrap();
    planted[i] = 0.into();
    std::fs::write(&out, v.to_string()).unwrap();
    let o = gapforge(&["verify", "--instance", s(&out)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("check FAIL: planted vector lies in ker(M) (residual nonzero at rows"));
}

#[test]
fn gadget_fixture_certificate() {
    let o = gapforge(&["gadget", "--fixture", "handcrafted"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cert"]["d"], 2);
    assert_eq!(v["cert"]["d2"], 4);
    assert_eq!(v["cert"]["alpha"], "2/1");
    assert_eq!(v["cert"]["wld"], true);
    assert_eq!(v["gadget"]["k"], 2);
}

#[test]
fn random_gadgets_need_a_seed() {
    assert_eq!(code(&gapforge(&["gadget", "--h", "3", "--N", "8", "--k", "2"])), 2);
    let dir = TempDir::new().unwrap();
    let sys = write(&dir, "sys.json", UNIT_SQUARE);
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&sys), "--target", "real", "--gadget", "random:h=3,N=8,k=2"])), 2);
    assert_eq!(code(&gapforge(&["experiment", "--sweep", "slice-count", "--N", "8", "--k", "2", "--h", "3", "--seeds", "2"])), 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", CONTRADICTION);
    let a = gapforge(&["reduce", "--from", s(&c), "--target", "mdp-dist", "--field", "3"]);
    let b = gapforge(&["reduce", "--from", s(&c), "--target", "mdp-dist", "--field", "3"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let g1 = gapforge(&["gadget", "--h", "3", "--N", "10", "--k", "3", "--seed", "7"]);
    let g2 = gapforge(&["gadget", "--h", "3", "--N", "10", "--k", "3", "--seed", "7"]);
    assert_eq!(g1.stdout, g2.stdout);
    let args = ["experiment", "--sweep", "distance", "--N", "8", "--k", "3", "--h", "3", "--seeds", "4", "--seed", "11"];
    let e1 = gapforge(&args);
    assert_eq!(code(&e1), 0);
    assert_eq!(e1.stdout, gapforge(&args).stdout);
    let text = stdout(&e1);
    assert!(text.starts_with("seed,h,N,k,d,d2,alpha,slice_count,wld\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.txt", PASSTHROUGH);
    let out = dir.path().join("i.json");
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&c), "--target", "mdp", "--out", s(&out)])), 0);
    let o = gapforge(&["--budget", "1", "verify", "--instance", s(&out)]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("budget exceeded"));
    let o = Command::new(env!("CARGO_BIN_EXE_gapforge"))
        .args(["verify", "--instance", s(&out)])
        .env("GAPFORGE_BUDGET_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "in a\nfrob x a\nout x\n");
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&bad), "--target", "mdp"])), 2);
    let c = write(&dir, "c.txt", PASSTHROUGH);
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&c), "--target", "mdp", "--field", "6"])), 2);
    assert_eq!(code(&gapforge(&["reduce", "--from", s(&c), "--target", "real"])), 2);
    assert_eq!(code(&gapforge(&["verify", "--instance", s(&dir.path().join("missing.json"))])), 2);
    assert_eq!(code(&gapforge(&["frobnicate"])), 2);
}
