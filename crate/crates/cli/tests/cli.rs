use std::path::PathBuf;
use std::process::{Command, Output};

fn groups() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups")
}

fn racg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_racg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn group(name: &str) -> String {
    groups().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_temp(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).expect("temp file written");
    path.to_string_lossy().into_owned()
}

#[test]
fn info_pentagon() {
    let o = racg(&["info", "--group", &group("pentagon.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: irreducible, infinite, 5 generators"));
}

#[test]
fn info_reducible_and_exceptional() {
    let o = racg(&["info", "--group", &group("dihedral_squared.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 components"), "{}", stdout(&o));
    let o = racg(&["info", "--group", &group("z2sq_free_z2.toml")]);
    assert!(stdout(&o).contains("free Z2 factor: s"));
}

#[test]
fn malformed_pair_is_a_parse_error() {
    let path = write_temp(
        "malformed.toml",
        "generators = [\"a\", \"b\"]\ncommuting_pairs = [[\"a\"]]\n",
    );
    let o = racg(&["info", "--group", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 20"), "{}", stderr(&o));
    let path = write_temp("unknown.toml", "generators = [\"a\", \"b\"]\nextra = 1\n");
    let o = racg(&["info", "--group", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["error"]["kind"], "parse");
    assert_eq!(v["error"]["line"], 2);
}

#[test]
fn classify_free_product_quarter() {
    let o = racg(&[
        "classify",
        "--group",
        &group("free3.toml"),
        "--q",
        "1/4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["classification"]["kind"], "factor_plus_C");
    assert_eq!(v["rho"], 0.5);
}

#[test]
fn rho_pentagon() {
    let o = racg(&["rho", "--group", &group("pentagon.toml")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rho: 0.381966011250"), "{}", stdout(&o));
}

#[test]
fn exit_codes_name_the_hypothesis() {
    let o = racg(&["gamma", "--group", &group("dihedral_squared.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("requires an irreducible infinite system"));
    let o = racg(&["zeta-check", "--group", &group("free3.toml"), "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("apply j"));
    let o = racg(&["classify", "--group", &group("free3.toml"), "--q", "abc"]);
    assert_eq!(o.status.code(), Some(2));
    let o = racg(&["classify", "--group", &group("free3.toml"), "--q", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = racg(&[
        "ball",
        "--group",
        &group("pentagon.toml"),
        "--radius",
        "12",
        "--max-ball",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("capacity"));
}

#[test]
fn ball_growth_and_gamma() {
    let o = racg(&["ball", "--group", &group("free3.toml"), "--radius", "2"]);
    assert!(
        stdout(&o).contains("length 2 (6): s.t s.u t.s t.u u.s u.t"),
        "{}",
        stdout(&o)
    );
    let o = racg(&["growth", "--group", &group("pentagon.toml"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["taylor"][1], "5");
    assert_eq!(v["taylor"][2], "15");
    let o = racg(&[
        "gamma",
        "--group",
        &group("z2sq_free_z2.toml"),
        "--radius",
        "4",
        "--edges",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exceptional: 1, s"));
    assert!(stdout(&o).contains("edge list:"));
}

#[test]
fn zeta_check_passes_below_rho() {
    let o = racg(&[
        "zeta-check",
        "--group",
        &group("free3.toml"),
        "--q",
        "1/4",
        "--radius",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("projection: PASS"));
}

#[test]
fn dykema_and_hecke() {
    let o = racg(&["dykema", "--ranks", "2,1", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("atom: (a1_1.a1_2, a2_1) mass 5/16"),
        "{}",
        stdout(&o)
    );
    let o = racg(&["hecke", "--group", &group("free3.toml"), "--expr", "T(s)*T(s) - p*T(s)"]);
    assert!(stdout(&o).contains("value: T(1)"));
    let o = racg(&[
        "hecke",
        "--group",
        &group("free3.toml"),
        "--expr",
        "T(s",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = racg(&["verify", "--seed", "7"]);
    let b = racg(&["verify", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("0 failed"));
}
