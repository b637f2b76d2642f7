use noether::cli::run;

fn exec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["noether"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn burgers() -> String {
    format!(
        "{}/examples/systems/burgers.json",
        env!("CARGO_MANIFEST_DIR")
    )
}

#[test]
fn verify_whole_catalog() {
    let (code, out, _) = exec(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checks passed"));
}

#[test]
fn kdv_scaling_law_has_unit_characteristic() {
    let (code, out, err) = exec(&["--catalog", "kdv", "--json", "cl-from-symmetry", "scaling"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["law"]["characteristic"][0], "1", "{v}");
}

#[test]
fn vorticity_law_is_trivial() {
    let (code, out, err) = exec(&["--catalog", "vorticity-generic", "classify", "F-family"]);
    assert_eq!(code, 0, "{err}");
    assert!(
        out.contains("TRIVIAL") && !out.contains("NONTRIVIAL"),
        "{out}"
    );
}

#[test]
fn liouville_needs_subset_not_classify() {
    let (code, _, err) = exec(&["--catalog", "liouville", "classify", "f-family"]);
    assert_eq!(code, 2);
    assert!(err.contains("subset"), "{err}");
    let (code, out, err) = exec(&["--catalog", "liouville", "subset", "f-family"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("Function-free law"), "{out}");
}

#[test]
fn literal_euler_symmetry_is_rejected() {
    let (code, _, _) = exec(&[
        "--catalog",
        "vorticity-euler",
        "cl-from-symmetry",
        "g-family-literal",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn system_file_round_trip() {
    let path = burgers();
    let (code, out, err) = exec(&["--system", &path, "verify"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("law mass: pass"), "{out}");
    let (code, out, _) = exec(&["--system", &path, "classify", "mass"]);
    assert_eq!(code, 0);
    assert!(out.contains("NONTRIVIAL"));
}

#[test]
fn euler_operator_on_file_expression() {
    let (code, out, err) = exec(&["--system", &burgers(), "euler", "u*u_x^2"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("-2*u*D(u,x,x) - D(u,x)^2"), "{out}");
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = exec(&["--system", "/nonexistent.json", "verify"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = exec(&["--catalog", "kdv", "tderiv", "q_x", "--wrt", "x"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["--catalog", "no-such-system", "verify"]);
    assert_eq!(code, 2);
}
