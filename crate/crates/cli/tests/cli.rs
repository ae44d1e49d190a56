use serde_json::Value;
use std::process::Command;

fn covers(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_covers")).args(args).output().expect("binary runs");
    let code = out.status.code().expect("exit code");
    let text = if code == 2 { out.stderr } else { out.stdout };
    let v = serde_json::from_slice(&text).unwrap_or(Value::Null);
    (code, v)
}

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/arrangements/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn classify_quarter_point() {
    let (code, v) = covers(&["classify", "point", "--rank", "3", "--branches", "100:1,010:2,110:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["caseId"], "3.2");
    assert_eq!(v["payload"]["singularity"], "1/4(1,1)");
    assert_eq!(v["status"], "ok");
}

#[test]
fn classify_ncpoint_with_ramified_curve() {
    let (code, v) = covers(&["classify", "ncpoint", "--ramified", "1", "--side1", "", "--side2", ""]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["record"]["kind"], "R");
}

#[test]
fn burniat_invariants_payload() {
    let (code, v) = covers(&["cover", "invariants", "--preset", "burniat"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"], serde_json::json!({"chi": "1", "degree": 4, "k2": "6"}));
}

#[test]
fn uniform_preset_prints_exact_integers() {
    let (_, v) = covers(&["cover", "invariants", "--preset", "uniform:2,4"]);
    assert_eq!(v["payload"]["k2"], "324");
    let (code, v) = covers(&["cover", "invariants", "--preset", "uniform:3,3"]);
    assert_eq!(code, 1);
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn complementary_pairs_split_into_four() {
    let (_, v) = covers(&["cover", "components", "--pairs", "100=101,010=011,110=111"]);
    assert_eq!(v["payload"]["components"], 4);
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(covers(&["frobnicate"]).0, 2);
    assert_eq!(covers(&["cover", "invariants"]).0, 2);
    let (code, v) = covers(&["classify", "point", "--rank", "2", "--branches", "10:1,01:2,11:3,10:4,01:5"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    let (code, _) = covers(&["arrangement", "scan", "--file", "/nonexistent.json"]);
    assert_eq!(code, 1);
}

#[test]
fn scan_reports_row_of_serious_degeneration() {
    let (code, v) = covers(&["arrangement", "scan", "--file", &fixture("burniat_item1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["lc"], false);
    assert_eq!(v["payload"]["row"], "1");
    let (_, v) = covers(&["arrangement", "scan", "--file", &fixture("burniat_generic.json")]);
    assert_eq!(v["payload"]["lc"], true);
}

#[test]
fn output_independent_of_threads() {
    let run = |t: &str| {
        Command::new(env!("CARGO_BIN_EXE_covers"))
            .args(["--threads", t, "boundary", "burniat"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn campedelli_boundary_has_two_orbits() {
    let (_, v) = covers(&["boundary", "campedelli"]);
    assert_eq!(v["payload"]["divisorOrbits"].as_array().unwrap().len(), 2);
    assert_eq!(v["payload"]["singleComponent"][0]["value"], "1");
}

#[test]
fn dimension_of_a_cell() {
    let dir = std::env::temp_dir().join(format!("covers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("cell.json");
    std::fs::write(&p, r#"{"inequalities": ["a1+a2+b1+b2+c1+c2<=2"]}"#).unwrap();
    let (code, v) = covers(&["polytope", "dim", "--cell", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["dimension"], 8);
}
