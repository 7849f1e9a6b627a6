use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const PENTAGON: &str = r#"{"m":5,"edges":[[1,2],[2,3],[3,4],[4,5],[1,5]],"k":[1,1,1,1,1]}"#;
const S_TRIANGLES: [&str; 6] = ["XZI", "ZXI", "XIZ", "ZIX", "IXZ", "IZX"];

fn qcmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcmap"))
        .args(args)
        .env_remove("QCMAP_SEED")
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qcmap(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, contents: &[u8]) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_owned())
        .collect()
}

fn strip_phase(p: &str) -> &str {
    p.trim_start_matches(['-', '+', 'i'])
}

#[test]
fn pentagon_scalar_mapping() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "pentagon.json", PENTAGON.as_bytes());
    let json = ok_json(&[
        "map",
        "--spec",
        s(&spec),
        "--pivots",
        "1,2:3,4",
        "--mode",
        "scalar",
        "--branch",
        "+",
    ]);
    let images = strings(&json["images"]);
    let unsigned: Vec<&str> = images.iter().map(|p| strip_phase(p)).collect();
    assert_eq!(unsigned, ["XI", "ZI", "XX", "IZ", "ZY"]);
    assert_eq!(json["mode"], "scalar");
    assert_eq!(json["qubits"], 2);
    assert_eq!(json["centrals"], 1);
    assert_eq!(json["sign_branch"], serde_json::json!([1]));
    assert_eq!(json["pivots"], serde_json::json!([[1, 2], [3, 4]]));
}

#[test]
fn jordan_wigner_two_modes() {
    let json = ok_json(&["jw", "2"]);
    let images = strings(&json["images"]);
    let unsigned: Vec<&str> = images.iter().map(|p| strip_phase(p)).collect();
    assert_eq!(unsigned, ["XI", "ZI", "YX", "YZ"]);
}

#[test]
fn maxacomm_example() {
    let json = ok_json(&["maxacomm", "XXI", "XIX", "ZZI", "ZIZ"]);
    let set = strings(&json["set"]);
    let unsigned: Vec<&str> = set.iter().map(|p| strip_phase(p)).collect();
    assert_eq!(unsigned, ["XXI", "ZIZ", "ZXY", "XYZ", "IYY"]);
    assert_eq!(json["s"], 2);
    assert_eq!(strip_phase(json["completion"].as_str().unwrap()), "IYY");
}

#[test]
fn decompose_then_map_matches_direct_map() {
    let dir = TempDir::new().unwrap();
    let specs = [
        PENTAGON,
        r#"{"m":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]],"k":[1,-1,1,-1]}"#,
        r#"{"m":3,"edges":[],"k":[-1,1,-1]}"#,
        r#"{"m":6,"edges":[[1,4],[2,5],[3,6],[1,2]],"k":[1,1,-1,1,-1,1]}"#,
    ];
    for (n, spec) in specs.iter().enumerate() {
        let spec_path = write(&dir, &format!("spec{n}.json"), spec.as_bytes());
        for pivots in [None, Some("1,2")] {
            let mut decompose = vec!["decompose", "--spec", s(&spec_path)];
            if let Some(p) = pivots {
                decompose.extend(["--pivots", p]);
            }
            let out = qcmap(&decompose);
            if out.status.code() != Some(0) {
                // explicit pivot may commute in this spec; both paths must then refuse it
                let mut direct = vec!["map", "--spec", s(&spec_path)];
                direct.extend(["--pivots", pivots.unwrap()]);
                assert_eq!(qcmap(&direct).status.code(), Some(2));
                continue;
            }
            let dec_path = write(&dir, &format!("dec{n}.json"), &out.stdout);
            let r = serde_json::from_slice::<Value>(&out.stdout).unwrap()["r"]
                .as_u64()
                .unwrap() as usize;
            let branch = "-".repeat(r);
            for mode in ["scalar", "independent"] {
                let mut direct = vec!["map", "--spec", s(&spec_path), "--mode", mode];
                let mut via = vec!["map", "--from-decomposition", s(&dec_path), "--mode", mode];
                if let Some(p) = pivots {
                    direct.extend(["--pivots", p]);
                }
                if mode == "scalar" && r > 0 {
                    direct.extend(["--branch", &branch]);
                    via.extend(["--branch", &branch]);
                }
                let a = qcmap(&direct);
                let b = qcmap(&via);
                assert_eq!(
                    a.status.code(),
                    Some(0),
                    "{}",
                    String::from_utf8_lossy(&a.stderr)
                );
                assert_eq!(a.stdout, b.stdout, "spec {n}, mode {mode}");
            }
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "pentagon.json", PENTAGON.as_bytes());
    let runs: Vec<Vec<&str>> = vec![
        vec!["decompose", "--spec", s(&spec)],
        vec!["map", "--spec", s(&spec)],
        [&["pauli-map"][..], &S_TRIANGLES].concat(),
        vec!["jw", "4"],
        vec!["maxacomm", "XXI", "XIX", "ZZI", "ZIZ"],
        [&["blocks", "--reduce"][..], &S_TRIANGLES].concat(),
    ];
    for args in runs {
        let a = qcmap(&args);
        let b = qcmap(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn certify_accepts_every_subcommand_output() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "pentagon.json", PENTAGON.as_bytes());
    let runs: Vec<Vec<&str>> = vec![
        vec!["decompose", "--spec", s(&spec)],
        vec!["decompose", "--spec", s(&spec), "--pivots", "3,4"],
        vec!["map", "--spec", s(&spec)],
        vec![
            "map",
            "--spec",
            s(&spec),
            "--mode",
            "scalar",
            "--branch",
            "-",
        ],
        [&["pauli-map"][..], &S_TRIANGLES].concat(),
        vec!["jw", "3"],
        vec!["maxacomm", "XXI", "XIX", "ZZI", "ZIZ"],
        vec!["blocks", "XI", "ZI"],
        [&["blocks", "--reduce"][..], &S_TRIANGLES].concat(),
    ];
    for (n, args) in runs.iter().enumerate() {
        let out = qcmap(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let path = write(&dir, &format!("out{n}.json"), &out.stdout);
        let report = ok_json(&["certify", s(&path)]);
        assert_eq!(report["passed"], true, "{args:?}");
        assert_eq!(report["violations"], serde_json::json!([]));
    }
}

#[test]
fn certify_reports_corrupted_phase() {
    let dir = TempDir::new().unwrap();
    let out = qcmap(&["jw", "2"]);
    let mut json: Value = serde_json::from_slice(&out.stdout).unwrap();
    let first = json["images"][0].as_str().unwrap().to_owned();
    json["images"][0] = Value::String(format!("i{first}"));
    let path = write(
        &dir,
        "bad.json",
        serde_json::to_string(&json).unwrap().as_bytes(),
    );
    let out = qcmap(&["certify", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(
        report["violations"],
        serde_json::json!([{"kind": "square", "indices": [1]}])
    );
}

#[test]
fn certify_reports_broken_star_map() {
    let dir = TempDir::new().unwrap();
    let doc = serde_json::json!({
        "kind": "star_isomorphism",
        "domain": ["X", "Z"],
        "images": ["X", "X"],
        "independent": [1, 2],
        "pairs": 1,
        "centrals": 0
    });
    let path = write(&dir, "star.json", doc.to_string().as_bytes());
    let out = qcmap(&["certify", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certify_reports_false_block_claim() {
    let dir = TempDir::new().unwrap();
    let doc = serde_json::json!({
        "kind": "block_certificate",
        "diagonal_coords": [1, 2],
        "block_count": 4,
        "block_size": 1,
        "qubits": 2,
        "images": ["XI", "ZI"]
    });
    let path = write(&dir, "blocks.json", doc.to_string().as_bytes());
    let out = qcmap(&["certify", s(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        report["violations"][0],
        serde_json::json!({"kind": "block", "indices": [1, 1]})
    );
}

#[test]
fn certify_refuses_above_dimension_cap() {
    let dir = TempDir::new().unwrap();
    let out = qcmap(&["jw", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let path = write(&dir, "big.json", &out.stdout);
    let out = qcmap(&["certify", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 12"));
    assert!(out.stdout.is_empty());
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "pentagon.json", PENTAGON.as_bytes());
    let garbage = write(&dir, "garbage.json", b"{not json");
    let bad_spec = write(&dir, "bad.json", br#"{"m":2,"edges":[[1,3]],"k":[1,1]}"#);
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["frobnicate"],
        vec!["jw", "2", "--bogus"],
        vec!["decompose", "--spec", s(&missing)],
        vec!["decompose", "--spec", s(&garbage)],
        vec!["decompose", "--spec", s(&bad_spec)],
        vec!["map", "--spec", s(&spec), "--pivots", "1,3"],
        vec!["map", "--spec", s(&spec), "--pivots", "0,1"],
        vec!["map", "--spec", s(&spec), "--pivots", "1-2"],
        vec![
            "map",
            "--spec",
            s(&spec),
            "--mode",
            "scalar",
            "--branch",
            "+-",
        ],
        vec!["map", "--spec", s(&spec), "--mode", "sideways"],
        vec!["map", "--from-decomposition", s(&spec)],
        vec!["maxacomm", "XQ"],
        vec!["maxacomm", "iX"],
        vec!["pauli-map", "XX", "Z"],
        vec!["jw", "0"],
        vec!["certify", s(&spec)],
        vec!["certify", s(&garbage)],
    ];
    for args in cases {
        let out = qcmap(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_seed_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let out = qcmap(&[&["pauli-map"][..], &S_TRIANGLES].concat());
    let path = write(&dir, "star.json", &out.stdout);
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_qcmap"))
            .args(["certify", s(&path)])
            .env("QCMAP_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(run("17").status.code(), Some(0));
    assert_eq!(run("seventeen").status.code(), Some(2));
}

#[test]
fn negative_pauli_arguments_parse() {
    let json = ok_json(&["maxacomm", "-X", "Z"]);
    assert_eq!(json["set"].as_array().unwrap().len(), 3);
}
