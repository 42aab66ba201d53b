use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn params(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/params").join(name)
}

fn crs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crs")).args(args).env_remove("CRS_PARAMS").output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn two_parties_agree() {
    let dir = tempfile::tempdir().unwrap();
    let toy = params("toy677.params");
    let (a, b) = (dir.path().join("alice"), dir.path().join("bob"));
    assert_eq!(code(&crs(&["--seed", "1", "keygen", "--params", s(&toy), "--out", s(&a)])), 0);
    assert_eq!(code(&crs(&["--seed", "2", "keygen", "--params", s(&toy), "--out", s(&b)])), 0);
    let (ka, kb) = (dir.path().join("ab.key"), dir.path().join("ba.key"));
    let priv_a = dir.path().join("alice.priv");
    let pub_b = dir.path().join("bob.pub");
    let priv_b = dir.path().join("bob.priv");
    let pub_a = dir.path().join("alice.pub");
    assert_eq!(code(&crs(&["dh", "--params", s(&toy), "--priv", s(&priv_a), "--pub", s(&pub_b), "--out", s(&ka)])), 0);
    assert_eq!(code(&crs(&["dh", "--params", s(&toy), "--priv", s(&priv_b), "--pub", s(&pub_a), "--out", s(&kb)])), 0);
    assert_eq!(std::fs::read(&ka).unwrap(), std::fs::read(&kb).unwrap());
    let again = crs(&["pub", "--params", s(&toy), "--priv", s(&priv_a)]);
    assert_eq!(again.stdout, std::fs::read(&pub_a).unwrap());
}

#[test]
fn alpha_validates_at_512_bits() {
    let o = crs(&["validate", "--params", s(&params("crs512.params")), "--pub", s(&params("alpha.pub"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "valid\n");
}

#[test]
fn verify_toy_set() {
    let o = crs(&["--seed", "0", "verify", "--params", s(&params("toy7.params"))]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("orbit = 2 = h(-24) = 2: PASS\n"), "{out}");
}

#[test]
fn params_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_crs"))
        .args(["--seed", "0", "verify"])
        .env("CRS_PARAMS", params("toy7.params"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn same_seed_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let toy = params("volcano6007.params");
    let run = |tag: &str| {
        let prefix = dir.path().join(tag);
        assert_eq!(code(&crs(&["--seed", "7", "keygen", "--params", s(&toy), "--out", s(&prefix)])), 0);
        (std::fs::read(dir.path().join(format!("{tag}.priv"))).unwrap(), std::fs::read(dir.path().join(format!("{tag}.pub"))).unwrap())
    };
    assert_eq!(run("x"), run("y"));
    let search = || crs(&["--seed", "3", "params", "search", "--bits", "10", "--require", "1", "--jobs", "3"]);
    let (first, second) = (search(), search());
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout);
    let single = crs(&["--seed", "3", "params", "search", "--bits", "10", "--require", "1"]);
    assert_eq!(first.stdout, single.stdout);
}

#[test]
fn searched_params_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found.params");
    let o = crs(&["--seed", "11", "params", "search", "--bits", "9", "--require", "1", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&crs(&["--seed", "0", "verify", "--params", s(&out)])), 0);
    let dot = crs(&["--seed", "0", "graph", "--params", s(&out)]);
    assert!(String::from_utf8(dot.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&crs(&["--bogus"])), 2);
    assert_eq!(code(&crs(&["keygen"])), 2);
    assert_eq!(code(&crs(&["verify", "--params", "/nonexistent.params"])), 2);
    assert_eq!(code(&crs(&["params", "search", "--bits", "10", "--q", "11"])), 2);
    assert_eq!(code(&crs(&["--help"])), 0);
}

#[test]
fn bad_peer_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let toy = params("toy677.params");
    let a = dir.path().join("a");
    assert_eq!(code(&crs(&["--seed", "1", "keygen", "--params", s(&toy), "--out", s(&a)])), 0);
    let bad = dir.path().join("bad.pub");
    std::fs::write(&bad, "0\n").unwrap();
    let priv_a = dir.path().join("a.priv");
    assert_eq!(code(&crs(&["validate", "--params", s(&toy), "--pub", s(&bad)])), 1);
    assert_eq!(code(&crs(&["dh", "--params", s(&toy), "--priv", s(&priv_a), "--pub", s(&bad)])), 1);
    // out of range for the field: an input error
    std::fs::write(&bad, "ffff\n").unwrap();
    assert_eq!(code(&crs(&["validate", "--params", s(&toy), "--pub", s(&bad)])), 2);
}

#[test]
fn skipping_validation_warns() {
    let dir = tempfile::tempdir().unwrap();
    let toy = params("toy7.params");
    let a = dir.path().join("a");
    assert_eq!(code(&crs(&["--seed", "1", "keygen", "--params", s(&toy), "--out", s(&a)])), 0);
    let o = crs(&[
        "dh",
        "--params",
        s(&toy),
        "--priv",
        s(&dir.path().join("a.priv")),
        "--pub",
        s(&dir.path().join("a.pub")),
        "--no-validate",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn bench_feeds_optimize() {
    let dir = tempfile::tempdir().unwrap();
    let toy = params("toy677.params");
    let cost = dir.path().join("toy.cost");
    let o = crs(&["--seed", "0", "bench", "--params", s(&toy), "--reps", "1", "--out", s(&cost)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("opt.params");
    let o = crs(&["params", "optimize", "--params", s(&toy), "--security", "4", "--cost", s(&cost), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stdout).unwrap().contains("keyspace = 2^"));
    assert_eq!(code(&crs(&["--seed", "0", "verify", "--params", s(&out)])), 0);
}

#[test]
fn optimize_512_bit_partition() {
    let o = crs(&["params", "optimize", "--params", s(&params("crs512.params"))]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().contains("keyspace = 2^256."));
}

#[test]
fn classify_from_trace() {
    let o = crs(&["params", "classify", "--q", "7", "--t", "2", "--ell-max", "11"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("5\tVE\t4\t3\t"), "{out}");
}
