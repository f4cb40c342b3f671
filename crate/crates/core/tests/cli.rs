//! End-to-end tests of the `algdet` binary.
//!
//! Expected outputs live in `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite
//! them after an intended change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_algdet"));
    c.env_remove("ALGDET_SEED");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("spawn algdet")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden {name}");
}

/// A temporary directory holding the catalog entries the tests use.
fn workspace() -> TempDir {
    let dir = TempDir::new().unwrap();
    for (name, file) in [
        ("quaternion", "quaternion.alg"),
        ("boolean2", "boolean2.alg"),
        ("dim2", "dim2.alg"),
        ("dim3nc", "dim3nc.alg"),
        ("matrix:2", "m2.alg"),
        ("matrix:3", "m3.alg"),
        ("split:1", "s1.alg"),
        ("exterior:2", "ext2.alg"),
    ] {
        let o = run(dir.path(), &["catalog", name, "-o", file]);
        assert!(o.status.success(), "catalog {name}: {}", stderr(&o));
    }
    dir
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("det_quaternion.out", &["det", "quaternion.alg"]),
    ("det_dim3nc.out", &["det", "dim3nc.alg"]),
    ("degree_boolean2.out", &["degree", "boolean2.alg"]),
    ("charpoly_dim2.out", &["charpoly", "dim2.alg"]),
    ("charpoly_ch_m2.out", &["charpoly", "--ch", "m2.alg"]),
    ("trace_m3.out", &["trace", "m3.alg"]),
    ("disc_quaternion.out", &["disc", "quaternion.alg"]),
    ("unimodular_m2.out", &["unimodular", "m2.alg"]),
    ("invert_dim2.out", &["invert", "dim2.alg", "-e", "1 + x"]),
    ("eldeg_boolean2.out", &["eldeg", "boolean2.alg", "-e", "x"]),
    ("eldeg_adjoin.out", &["eldeg", "boolean2.alg", "-e", "u*x + y", "--adjoin", "u"]),
    ("check_mult_quaternion.out", &["check", "quaternion.alg", "--property", "mult"]),
    ("check_mult_m3_random.out", &["check", "m3.alg", "--property", "mult", "--random", "--trials", "20", "--seed", "7"]),
    ("check_units_m2.out", &["check", "m2.alg", "--property", "units", "--samples", "200", "--seed", "3"]),
    ("strata3_p2.out", &["strata3", "--prime", "2"]),
    ("inseparable_p3.out", &["inseparable", "--prime", "3"]),
    ("validate_quaternion.out", &["validate", "quaternion.alg"]),
    ("catalog_quaternion.alg", &["catalog", "quaternion"]),
];

#[test]
fn golden_outputs() {
    let dir = workspace();
    for (name, args) in GOLDEN {
        let o = run(dir.path(), args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        check_golden(name, &stdout(&o));
    }
}

#[test]
fn documented_examples() {
    let dir = workspace();
    let o = run(dir.path(), &["det", "quaternion.alg"]);
    assert_eq!(stdout(&o), "a^2 - al*b^2 - be*c^2 + al*be*d^2\n");
    let o = run(dir.path(), &["degree", "boolean2.alg"]);
    assert_eq!(stdout(&o), "3\n");
    let o = run(dir.path(), &["det", "m2.alg"]);
    assert_eq!(stdout(&o), "t1*t4 - t2*t3\n");
    let o = run(dir.path(), &["strata3", "--prime", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("PASS 4096 points, components 2"));
    let o = run(dir.path(), &["inseparable", "--prime", "3"]);
    assert!(stdout(&o).contains("SIGN DIFFERS"), "{}", stdout(&o));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn operations_write_files() {
    let dir = workspace();
    let o = run(dir.path(), &["op", "product", "m2.alg", "s1.alg", "-o", "p.alg"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let hom = "hom \"pr2\" {\n  kind = hom\n  E11 -> 0\n  E12 -> 0\n  E21 -> 0\n  E22 -> 0\n  e1 -> e1\n}\n";
    fs::write(dir.path().join("pr2.hom"), hom).unwrap();
    let o = run(dir.path(), &["reldet", "p.alg", "s1.alg", "--hom", "pr2.hom"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "t1*t4 - t2*t3\n");

    let o = run(dir.path(), &["op", "opposite", "quaternion.alg", "-o", "hop.alg"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["det", "hop.alg"]);
    assert_eq!(stdout(&o), "a^2 - al*b^2 - be*c^2 + al*be*d^2\n");

    let o = run(dir.path(), &["op", "tensor", "m2.alg", "m2.alg", "-o", "t.alg"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["degree", "t.alg"]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn invariance_with_hom_file() {
    let dir = workspace();
    let conj = "hom \"bar\" { kind = anti i -> -i j -> -j k -> -k }";
    fs::write(dir.path().join("bar.hom"), conj).unwrap();
    let o = run(dir.path(), &["check", "quaternion.alg", "--property", "invariance", "--hom", "bar.hom"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("PASS"));
    let wrong = "hom \"bad\" { kind = hom i -> -i j -> -j k -> -k }";
    fs::write(dir.path().join("bad.hom"), wrong).unwrap();
    let o = run(dir.path(), &["check", "quaternion.alg", "--property", "invariance", "--hom", "bad.hom"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let dir = workspace();
    // missing file
    let o = run(dir.path(), &["det", "nope.alg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nope.alg"));
    // parse error reported with path:line:col
    fs::write(dir.path().join("bad.alg"), "algebra \"x\" {\n  field = GF(9)\n}\n").unwrap();
    let o = run(dir.path(), &["det", "bad.alg"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.alg:2:"), "{}", stderr(&o));
    // associativity violation
    let text = fs::read_to_string(dir.path().join("quaternion.alg")).unwrap();
    fs::write(dir.path().join("nonassoc.alg"), text.replace("k*j = be*i", "k*j = -be*i")).unwrap();
    let o = run(dir.path(), &["validate", "nonassoc.alg"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    // non-invertible element
    let o = run(dir.path(), &["invert", "ext2.alg", "-e", "e1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    // unknown property
    let o = run(dir.path(), &["check", "m2.alg", "--property", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
    // strata only for p = 2, 3
    let o = run(dir.path(), &["strata3", "--prime", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_checks_are_deterministic() {
    let dir = workspace();
    let args = ["check", "m3.alg", "--property", "mult", "--random", "--trials", "20", "--seed", "42"];
    let a = run(dir.path(), &args);
    let b = run(dir.path(), &args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "4"]);
    let c = run(dir.path(), &with_jobs);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));

    let units = ["check", "m2.alg", "--property", "units", "--samples", "100"];
    let explicit = run(dir.path(), &[&units[..], &["--seed", "9"]].concat());
    let from_env = bin().current_dir(dir.path()).args(units).env("ALGDET_SEED", "9").output().unwrap();
    assert_eq!(stdout(&explicit), stdout(&from_env));
    assert!(explicit.status.success());
}
