use std::process::Command;

use serde_json::Value;

fn ratchar(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ratchar")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = ratchar(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    let v: Value = serde_json::from_str(&out).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], args[0]);
    assert_eq!(v["input"], args[1]);
    assert!(v["params"].is_object());
    v
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 17] = [
        (&["divisor", "(z^2-1)/(z-1)"], 0),
        (&["divisor", "exp(z)"], 3),
        (&["divisor", "z-z"], 3),
        (&["divisor", "z^(3"], 2),
        (&["classify", "exp(0.001*z)*(z-1)"], 0),
        (&["classify", "z +"], 2),
        (&["classify", "z-z"], 4),
        (&["classify", "z", "--steps", "2"], 2),
        (&["classify", "z", "--growth", "1"], 2),
        (&["classify", "z", "--nodes", "100"], 2),
        (&["classify", "z", "--tol-int", "0.7"], 2),
        (&["winding", "z", "--radius", "-1"], 2),
        (&["winding", "z-z", "--radius", "1"], 4),
        (&["fta", "1/z"], 3),
        (&["fta", "exp(z)"], 3),
        (&["fta", "z^4-1", "--format", "xml"], 2),
        (&["frobnicate", "z"], 2),
    ];
    for (args, want) in cases {
        let (code, _, err) = ratchar(args);
        assert_eq!(code, want, "{args:?}: {err}");
        if want != 0 {
            assert!(!err.is_empty(), "{args:?} should explain the failure");
        }
    }
}

#[test]
fn divisor_examples() {
    let v = json(&["divisor", "(z^2-1)/(z-1)"]);
    let r = &v["result"];
    assert_eq!((r["m"].as_i64(), r["n"].as_i64(), r["d"].as_i64()), (Some(1), Some(0), Some(1)));
    assert_eq!(r["numerator"]["coeffs"], serde_json::json!([["1", "0"], ["1", "0"]]));
    assert_eq!(r["denominator"]["coeffs"], serde_json::json!([["1", "0"]]));

    let v = json(&["divisor", "(z-1)/(z+1)^2"]);
    assert_eq!(v["result"]["d"], -1);

    let (_, _, err) = ratchar(&["divisor", "exp(z)"]);
    assert!(err.contains("classify"), "{err}");
}

#[test]
fn negative_leading_term_is_an_expression_not_a_flag() {
    let v = json(&["divisor", "-z^2/(z-1)"]);
    assert_eq!(v["result"]["d"], 1);
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "(z^2+1)/(z-2)"]);
    let r = &v["result"];
    assert_eq!(r["verdict"], serde_json::json!({"kind": "rational", "d": 1}));
    assert_eq!(r["exact"]["d"], 1);
    assert_eq!(r["agrees"], true);

    let v = json(&["classify", "exp(2*z)*(z-1)"]);
    let r = &v["result"];
    assert_eq!(r["verdict"], serde_json::json!({"kind": "not_rational", "reason": "growth"}));
    assert!(r.get("exact").is_none() && r.get("agrees").is_none());

    let v = json(&["classify", "z^0"]);
    assert_eq!(v["result"]["verdict"]["d"], 0);

    let v = json(&["classify", "exp(0.001*z)*(z-1)"]);
    assert_eq!(v["result"]["verdict"]["kind"], "inconclusive");
    assert!(v["result"]["verdict"]["reason"].is_string());
}

#[test]
fn classify_probe_schema_and_order() {
    let v = json(&["classify", "z^2/(z-1)", "--r0", "3", "--growth", "3", "--steps", "4"]);
    let p = &v["params"];
    assert_eq!((p["r0"].as_f64(), p["growth"].as_f64(), p["steps"].as_u64()), (Some(3.0), Some(3.0), Some(4)));
    let probes = v["result"]["probes"].as_array().unwrap();
    assert_eq!(probes.len(), 4);
    let radii: Vec<f64> = probes.iter().map(|p| p["radius"].as_f64().unwrap()).collect();
    assert!(radii.windows(2).all(|w| w[0] < w[1]));
    for p in probes {
        assert_eq!(p["mean"].as_array().unwrap().len(), 2);
        assert!(p["spread"].is_f64());
        let w = &p["winding"];
        assert_eq!(w["raw"].as_array().unwrap().len(), 2);
        assert_eq!(w["nearest_int"], 1);
        assert!(w["residual"].is_f64() && w["nodes"].is_u64() && w["converged"].is_boolean());
    }
}

#[test]
fn exp_free_classify_always_prints_self_check() {
    for expr in ["(z^2+1)/(z-2)", "z^0", "(3 - 0.5*i)/(z^3 + z)", "z^4 - 1"] {
        let (code, out, _) = ratchar(&["classify", expr]);
        assert_eq!(code, 0);
        let line = out.lines().find(|l| l.starts_with("self-check:")).expect("self-check line");
        assert!(line.ends_with("agrees"), "{expr}: {line}");
    }
    let (_, out, _) = ratchar(&["classify", "exp(z)"]);
    assert!(!out.contains("self-check"));
}

#[test]
fn winding_examples() {
    for (expr, radius, want) in [("(z^2+1)/(z-2)", "3", 1), ("(z^2+1)/(z-2)", "1.5", 2), ("z^5", "2", 5)] {
        let v = json(&["winding", expr, "--radius", radius]);
        let r = &v["result"];
        assert_eq!(r["nearest_int"], want, "{expr} r = {radius}");
        assert_eq!(r["converged"], true);
    }
    let v = json(&["winding", "1/(z-2)", "--radius", "1", "--center", "2,0"]);
    assert_eq!(v["result"]["nearest_int"], -1);
    assert_eq!(v["params"]["center"], serde_json::json!([2.0, 0.0]));
}

#[test]
fn winding_through_a_pole_is_perturbed() {
    let v = json(&["winding", "1/(z-1)", "--radius", "1"]);
    let r = &v["result"];
    assert_eq!(r["nearest_int"], -1);
    assert!(r["radius_used"].as_f64().unwrap() > 1.0);
}

#[test]
fn fta_examples() {
    let v = json(&["fta", "z^4-1"]);
    let r = &v["result"];
    assert_eq!((r["degree"].as_u64(), r["count"].as_i64(), r["pass"].as_bool()), (Some(4), Some(4), Some(true)));

    let v = json(&["fta", "7"]);
    let r = &v["result"];
    assert_eq!((r["degree"].as_u64(), r["count"].as_i64(), r["pass"].as_bool()), (Some(0), Some(0), Some(true)));

    let (code, _, err) = ratchar(&["fta", "1/z"]);
    assert_eq!(code, 3);
    assert!(err.contains("not a polynomial"), "{err}");
}

fn numbers_in(text: &str) -> Vec<f64> {
    text.split(|c: char| c.is_whitespace() || ",;=()".contains(c))
        .filter_map(|t| t.trim_end_matches('i').parse::<f64>().ok())
        .collect()
}

fn numbers_in_json(v: &Value, acc: &mut Vec<f64>) {
    match v {
        Value::Number(n) => acc.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| numbers_in_json(x, acc)),
        Value::Object(o) => o.values().for_each(|x| numbers_in_json(x, acc)),
        _ => {}
    }
}

#[test]
fn text_output_shows_nothing_json_lacks() {
    let commands: [&[&str]; 5] = [
        &["classify", "(z^2+1)/(z-2)"],
        &["classify", "exp(2*z)*(z-1)", "--steps", "3"],
        &["winding", "(z^2+1)/(z-2)", "--radius", "1.5", "--center", "0.25,-0.5"],
        &["fta", "z^4-1"],
        &["divisor", "(z-1)/(z+1)^2"],
    ];
    for args in commands {
        let (_, text, _) = ratchar(args);
        let mut in_json = Vec::new();
        numbers_in_json(&json(args), &mut in_json);
        // divisor text shows polynomial text, which JSON carries verbatim
        let shown: Vec<&str> = text.lines().skip(1).filter(|l| !l.contains("(z) =")).collect();
        for x in numbers_in(&shown.join("\n")) {
            let found = in_json.iter().any(|y| (x - y).abs() <= 1e-4 * y.abs().max(1e-300) || x == *y);
            assert!(found, "{args:?}: text number {x} missing from JSON");
        }
    }
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["classify", "(z^3 - 1)/(z^2 + 0.5)", "--format", "json"];
    assert_eq!(ratchar(&args).1, ratchar(&args).1);
}
