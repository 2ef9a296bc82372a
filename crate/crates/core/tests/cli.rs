use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn poskit(args: &[&str], stdin: &str) -> Output {
    poskit_env(args, stdin, &[])
}

fn poskit_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_poskit"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn envelope(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json envelope")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("poskit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn flag_build(t: &str) -> String {
    let out = poskit(&["flag", "build", t], "");
    assert!(out.status.success());
    stdout(&out)
}

#[test]
fn flag_build_pipes_into_blowup_seshadri() {
    let model = flag_build("A3");
    let out = poskit(&["blowup", "seshadri", "--L", "3,1,2"], &model);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1");
}

#[test]
fn flag_build_output_feeds_every_model_consumer() {
    let model = flag_build("B3");
    let split = r#"{"rank":1,"c1":[1,2,3],"per_curve":{"C1":[1],"C2":[2],"C3":[3]}}"#;
    let split_path = write_temp("split.json", split);
    let split_path = split_path.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["model", "validate"],
        vec!["model", "intersect", "--L", "1,2,3", "--curve", "C2"],
        vec!["model", "nef", "--L", "1,2,3"],
        vec!["model", "ample", "--L", "1,2,3"],
        vec!["model", "seshadri", "--L", "1,2,3"],
        vec!["blowup", "build"],
        vec!["blowup", "nefcone"],
        vec!["blowup", "moricone"],
        vec!["blowup", "isnef", "--b", "1,2,3", "--c", "1"],
        vec!["blowup", "seshadri", "--L", "1,2,3"],
        vec!["bundle", "validate", "--model", "-", split_path],
        vec!["bundle", "nef", "--model", "-", split_path],
        vec!["bundle", "ample", "--model", "-", split_path],
        vec!["bundle", "seshadri", "--model", "-", split_path],
    ];
    for args in cases {
        let out = poskit(&args, &model);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(
        stdout(&poskit(
            &["model", "intersect", "--L", "1,2,3", "--curve", "C2"],
            &model
        )),
        "2"
    );
    assert_eq!(
        stdout(&poskit(
            &["bundle", "seshadri", "--model", "-", split_path],
            &model
        )),
        "1"
    );
}

#[test]
fn text_and_json_modes_agree() {
    let model = flag_build("A2");
    let cases: Vec<Vec<&str>> = vec![
        vec!["model", "seshadri", "--L", "4,6"],
        vec!["blowup", "seshadri", "--L", "5,3"],
        vec!["blowup", "isnef", "--b", "1/2,1", "--c", "1/3"],
        vec!["model", "nef", "--L", "-1,2"],
    ];
    for args in cases {
        let text = stdout(&poskit(&args, &model));
        let mut json_args = args.clone();
        json_args.push("--json");
        let env = envelope(&poskit(&json_args, &model));
        assert_eq!(env["status"], "ok");
        let payload = &env["payload"];
        let rendered = match payload {
            Value::Bool(b) => b.to_string(),
            Value::Object(m) if m["den"] == json!(1) => m["num"].to_string(),
            Value::Object(m) => format!("{}/{}", m["num"], m["den"]),
            other => other.to_string(),
        };
        assert_eq!(text, rendered, "{args:?}");
    }
}

#[test]
fn isnef_explains_failure() {
    let model = flag_build("A2");
    let path = write_temp("a2.json", &model);
    let out = poskit(
        &[
            "blowup",
            "isnef",
            path.to_str().unwrap(),
            "--b",
            "1,0",
            "--c",
            "1",
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "false");
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a nef line bundle"));
}

#[test]
fn toric_commands() {
    let p2 = r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#;
    let path = write_temp("p2.json", p2);
    let p = path.to_str().unwrap();
    assert_eq!(
        stdout(&poskit(
            &["toric", "seshadri", p, "--D", "0,0,0", "--cone", "0"],
            ""
        )),
        "0"
    );
    assert_eq!(
        stdout(&poskit(
            &["toric", "seshadri", p, "--D", "5,0,0", "--cone", "2"],
            ""
        )),
        "5"
    );
    assert_eq!(
        stdout(&poskit(&["toric", "nef", p, "--D", "1,-1,0"], "")),
        "true"
    );
    assert_eq!(
        stdout(&poskit(&["toric", "nef", p, "--D", "-1,0,0"], "")),
        "false"
    );
    assert_eq!(
        stdout(&poskit(
            &["toric", "degree", p, "--D", "1,0,0", "--wall", "w1"],
            ""
        )),
        "1"
    );
    assert_eq!(stdout(&poskit(&["toric", "validate", p], "")), "valid");
    let walls = envelope(&poskit(&["toric", "walls", p, "--json"], ""));
    assert_eq!(walls["payload"].as_array().unwrap().len(), 3);

    let bad = r#"{"dim":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[0,2]]}"#;
    let out = poskit(&["toric", "validate", "--json"], bad);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(envelope(&out)["payload"]["passed"], json!(false));

    let refused = poskit(
        &["toric", "seshadri", p, "--D", "-1,0,0", "--cone", "0"],
        "",
    );
    assert_eq!(refused.status.code(), Some(3));
}

#[test]
fn cone_commands_and_dimension_bound() {
    let orthant = r#"{"dim":3,"generators":[[1,0,0],[0,1,0],[0,0,1]]}"#;
    let half = r#"{"dim":2,"generators":[[1,0],[-1,0],[0,1]]}"#;
    let env = envelope(&poskit(&["cone", "dual", "--json"], half));
    assert_eq!(env["payload"], json!({"dim": 2, "generators": [[0, 1]]}));
    assert_eq!(
        stdout(&poskit(&["cone", "contains", "--v", "1,-1,0"], orthant)),
        "false"
    );
    assert_eq!(
        stdout(&poskit(&["cone", "contains", "--v", "0,1/2,3"], orthant)),
        "true"
    );

    let a = write_temp("a.json", orthant);
    let b = write_temp(
        "b.json",
        r#"{"dim":3,"generators":[[0,0,1],[[1,2],0,0],[0,1,0],[1,1,1]]}"#,
    );
    assert_eq!(
        stdout(&poskit(
            &["cone", "equal", a.to_str().unwrap(), b.to_str().unwrap()],
            ""
        )),
        "true"
    );

    let big =
        json!({"dim": 13, "generators": [(0..13).map(|i| (i == 0) as i64).collect::<Vec<_>>()]})
            .to_string();
    assert_eq!(poskit(&["cone", "dual"], &big).status.code(), Some(3));
    let raised = poskit_env(&["cone", "dual"], &big, &[("POSKIT_MAX_CONE_DIM", "13")]);
    assert_eq!(raised.status.code(), Some(0));
    let lowered = poskit_env(&["cone", "dual"], orthant, &[("POSKIT_MAX_CONE_DIM", "2")]);
    assert_eq!(lowered.status.code(), Some(3));
}

#[test]
fn exit_codes_and_errors() {
    assert_eq!(poskit(&["no-such-command"], "").status.code(), Some(2));
    let out = poskit(&["model", "validate", "--json"], "{\"name\": }");
    assert_eq!(out.status.code(), Some(2));
    let env = envelope(&out);
    assert_eq!(env["status"], "input_error");
    assert!(env["message"].as_str().unwrap().contains("byte offset 9"));

    let model = flag_build("A2");
    let refused = poskit(&["model", "seshadri", "--L", "2,0", "--json"], &model);
    assert_eq!(refused.status.code(), Some(3));
    assert_eq!(envelope(&refused)["status"], "refused");

    let unknown_field = r#"{"name":"x","rank":1,"divisors":["H"],"curves":[],"colour":"red"}"#;
    assert_eq!(
        poskit(&["model", "validate"], unknown_field).status.code(),
        Some(2)
    );
    assert_eq!(poskit(&["flag", "build", "E9"], "").status.code(), Some(2));
    assert_eq!(poskit(&["--help"], "").status.code(), Some(0));
}

#[test]
fn flag_and_projective_models() {
    let p1 = envelope(&poskit(&["flag", "projective", "1", "--json"], ""));
    let a1 = envelope(&poskit(&["flag", "build", "a1", "--json"], ""));
    assert_eq!(p1["payload"]["rank"], a1["payload"]["rank"]);
    assert_eq!(
        p1["payload"]["curves"][0]["class"],
        a1["payload"]["curves"][0]["class"]
    );
    let cartan = envelope(&poskit(&["flag", "cartan", "G2", "--json"], ""));
    assert_eq!(cartan["payload"], json!([[2, -1], [-3, 2]]));
}
