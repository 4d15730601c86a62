use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_frontdga"));
    c.env_remove("FRONTDGA_DISK_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn trefoil(dir: &Path, n: i64) {
    let o = run(&["construct", "trefoil", "--param", &format!("n={}", n), "--out", dir.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn linearized_trefoil_report() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 2);
    let o = run(&["lch", &p(dir.path(), "trefoil.front"), "--aug", &p(dir.path(), "trefoil.eps.aug")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("LCH = Z^2[0] + Z[-1]"), "{}", stdout(&o));
}

#[test]
fn bilinearized_pair_gives_torsion() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 3);
    let (f, a, b) = (p(dir.path(), "trefoil.front"), p(dir.path(), "trefoil.ex1.aug"), p(dir.path(), "trefoil.ex2.aug"));
    let o = run(&["--format", "json", "bilch", &f, "--aug1", &a, "--aug2", &b]);
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let degree0 = recs.iter().find(|r| r["record"] == "homology" && r["degree"] == 0).unwrap();
    assert_eq!(degree0["rank"], 1);
    assert_eq!(degree0["torsion"], serde_json::json!(["3"]));
}

#[test]
fn five_augmentations_mod_two() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 0);
    let o = run(&["augs", &p(dir.path(), "trefoil.front"), "--mod", "2"]);
    assert!(stdout(&o).starts_with("5 augmentations"));
}

#[test]
fn structured_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 2);
    let args = ["--format", "json", "duality", &p(dir.path(), "trefoil.front")];
    let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    full.extend(["--aug1".into(), p(dir.path(), "trefoil.eps1.aug"), "--aug2".into(), p(dir.path(), "trefoil.eps2.aug")]);
    let full: Vec<&str> = full.iter().map(|s| s.as_str()).collect();
    let a = run(&full);
    let b = run(&full);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 2);
    let f = p(dir.path(), "trefoil.front");
    assert_eq!(run(&["augs", &f, "--box", "1", "--mod", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["surgery", "r9", &f]).status.code(), Some(2));
    // a zigzag has rotation number 1, so no Maslov potential exists
    let zig = p(dir.path(), "zig.front");
    std::fs::write(&zig, "lc 1\nlc 2\nrc 1\nrc 1\n").unwrap();
    let o = run(&["dga", &zig]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("diagram::NoPotential"));
}

#[test]
fn disk_cap_flag_and_environment_agree() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 2);
    let f = p(dir.path(), "trefoil.front");
    let by_flag = run(&["dga", &f, "--disk-cap", "0"]);
    let by_env = bin().args(["dga", &f]).env("FRONTDGA_DISK_CAP", "0").output().unwrap();
    assert_eq!(by_flag.status.code(), Some(1));
    assert_eq!(by_flag.status.code(), by_env.status.code());
    assert_eq!(by_flag.stdout, by_env.stdout);
    assert_eq!(by_flag.stderr, by_env.stderr);
}

#[test]
fn help_names_file_formats() {
    for sub in ["validate", "invariants", "dga", "augs", "homotopic", "lch", "bilch", "duality", "construct", "surgery"] {
        let o = run(&[sub, "--help"]);
        assert!(stdout(&o).contains("FRONT FILE"), "{}", sub);
        if !["validate", "invariants", "dga"].contains(&sub) {
            assert!(stdout(&o).contains("AUGMENTATION FILE"), "{}", sub);
        }
    }
}

#[test]
fn surgery_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    trefoil(dir.path(), 3);
    let f = p(dir.path(), "trefoil.front");
    let kinked = p(dir.path(), "kinked.front");
    let o = run(&["surgery", "r1", &f, "--param", "pos=2", "--param", "slot=1", "--aug", &p(dir.path(), "trefoil.eps.aug"), "--out", &kinked]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = run(&["validate", &kinked]);
    assert!(v.status.success());
    let d = run(&["dga", &kinked, "--check"]);
    assert!(stdout(&d).contains("d^2 = 0"));
}

#[test]
fn catalog_is_listed() {
    let o = run(&["construct", "--list"]);
    for name in ["trefoil", "torsion-knot", "hopf-sum", "theorem1", "2n-copy", "lambda-mk"] {
        assert!(stdout(&o).contains(name), "{}", name);
    }
    assert!(stdout(&run(&["surgery", "--list"])).contains("unclasp"));
}
