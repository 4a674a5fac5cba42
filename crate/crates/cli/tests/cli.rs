use std::process::{Command, Output};

fn rasp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rasp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn program(name: &str) -> String {
    format!("{}/../../programs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn exit_codes() {
    assert_eq!(rasp(&["solve", &program("strategic.lp")]).status.code(), Some(0));
    assert_eq!(rasp(&["solve", &program("unsatisfiable.lp")]).status.code(), Some(10));
    let out = rasp(&["solve", &program("hamiltonian.lp"), "--max-atoms", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(rasp(&["solve", "/nonexistent.lp"]).status.code(), Some(2));
    let out = rasp(&["solve", &program("strategic.lp"), "--semantics", "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["solve", "strategic_variant.lp", "--all-witnesses"],
        vec!["compare", "strategic_variant.lp"],
        vec!["worldviews", "mutual_may.lp"],
        vec!["properties", "strategic_nonminimal.lp", "--property", "MM,FN"],
    ] {
        let mut args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        args[1] = program(&args[1]);
        args.push("--json".into());
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = rasp(&args);
        let b = rasp(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn check_ws_rejects_non_model_and_unsupported() {
    let out = rasp(&["check-ws", &program("support.lp"), "--model", "p,q"]);
    assert_eq!(out.status.code(), Some(0));
    let out = rasp(&["check-ws", &program("know_p.lp"), "--model", "{p}"]);
    assert_eq!(out.status.code(), Some(10));
    let out = rasp(&["check-ws", &program("support.lp"), "--model", "zz"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn properties_report_violations() {
    let out = rasp(&[
        "properties",
        &program("strategic_base.lp"),
        "--property",
        "CM",
        "--constraint",
        ":- c1 & ~c2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(10));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v["properties"][0];
    assert_eq!(r["property"], "CM");
    assert_eq!(r["holds"], false);
    assert_eq!(r["witness"]["answer_set"], serde_json::json!(["c1", "c2", "g1", "g2"]));
}
