use std::process::{Command, Output};

use serde_json::Value;

fn msop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msop"))
        .args(args)
        .env_remove("MSOP_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_sobolev_worked_value() {
    let o = msop(&["eval", "--family", "sobolev", "--beta", "2", "--c", "1/2", "--lambda", "1", "--n", "2", "--x", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("family,n,x,value,approx"));
    assert_eq!(lines.next(), Some("sobolev,2,0,13/5,2.6"));
}

#[test]
fn eval_meixner_degree_zero() {
    let o = msop(&["eval", "--family", "meixner", "--beta", "1", "--c", "1/2", "--n", "0", "--x", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("meixner,0,7,1,1"));
}

#[test]
fn eval_generating_function_gap() {
    let o = msop(&["eval", "--gf", "gm", "--beta", "1", "--c", "1/2", "--lambda", "1", "--x", "3", "--omega", "0.1", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let gap: f64 = v[0]["gap"].as_str().unwrap().parse().unwrap();
    assert!(gap < 1e-9, "{gap}");
}

#[test]
fn eval_outside_region_is_config_error() {
    let o = msop(&["eval", "--gf", "gl", "--alpha", "1", "--lambda-t", "1", "--x", "1", "--omega", "0.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn coeffs_table_rows() {
    let o = msop(&["coeffs", "--beta", "2", "--c", "1/2", "--lambda", "1", "--max-n", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,a_n,q_n");
    assert!(lines.contains(&"1,4/5,1"));
    assert!(lines[3].starts_with("2,") && lines[3].ends_with(",5/4"));
}

#[test]
fn coeffs_lambda_zero_all_ones() {
    let o = msop(&["coeffs", "--beta", "3", "--c", "1/3", "--lambda", "0", "--max-n", "8"]);
    let out = stdout(&o);
    for line in out.lines().skip(1) {
        assert!(line.ends_with(",1,1"), "{line}");
    }
}

#[test]
fn coeffs_json_carries_constants() {
    let o = msop(&["coeffs", "--beta", "1", "--c", "1/2", "--lambda", "1", "--max-n", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["gamma"].as_f64().unwrap() - 0.5).abs() < 1e-13);
    assert!((v["a_limit"].as_f64().unwrap() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
    assert_eq!(v["sobolev_polynomials"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_orthogonality_passes_with_schema_fields() {
    let o = msop(&["verify", "--suite", "orthogonality", "--beta", "2", "--c", "1/2", "--lambda", "1", "--max-n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let schema: Value =
        serde_json::from_str(include_str!("../../../schemas/verify_report.schema.json")).unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(v.get(key.as_str().unwrap()).is_some(), "missing {key}");
    }
    let check_keys = schema["properties"]["checks"]["items"]["required"].as_array().unwrap();
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check.as_object().unwrap().len(), check_keys.len());
        assert_eq!(check["status"], "pass");
        assert_eq!(check["measured"], 0.0);
    }
}

#[test]
fn verify_gf_beta1_default_grid() {
    let o = msop(&["verify", "--suite", "gf-beta1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("suite,name,status,measured,tolerance,identity,detail"));
}

#[test]
fn verify_invalid_c_exits_two() {
    let o = msop(&["verify", "--suite", "all", "--c", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c must lie in (0, 1)"));
}

#[test]
fn verify_unknown_suite_exits_two() {
    assert_eq!(msop(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn verify_failure_exits_one() {
    // a tolerance no floating comparison can meet
    let o = msop(&["verify", "--suite", "gf-beta1", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_output_deterministic() {
    let args = ["verify", "--suite", "hypergeom-identities", "--seed", "7"];
    assert_eq!(stdout(&msop(&args)), stdout(&msop(&args)));
}

#[test]
fn limit_sweep_rows() {
    let o = msop(&["limit-sweep", "--alpha", "1", "--lambda-t", "1", "--max-n", "1", "--x", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("relation,params,n,x,k,c,error,monotone"));
    let mut seen = 0;
    for line in out.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        // params contains a comma: relation, alpha=.., lambda_t=.., n, x, k, c, error, monotone
        let (relation, n, c, err) = (f[0], f[3], f[6].parse::<f64>().unwrap(), f[7].parse::<f64>().unwrap());
        if relation == "meixner-laguerre" && n == "0" {
            assert_eq!(err, 0.0);
        }
        if relation == "meixner-laguerre" && n == "1" {
            assert_eq!(err, 2.0 * (1.0 - c));
            seen += 1;
        }
    }
    assert_eq!(seen, 9);
}

#[test]
fn table_rows_have_rational_coefficients() {
    let o = msop(&["table", "--family", "sobolev", "--beta", "2", "--c", "1/2", "--lambda", "1", "--max-n", "2"]);
    let out = stdout(&o);
    assert!(out.contains("sobolev,2,0,13/5"));
    assert!(out.contains("sobolev,2,1,-33/10"));
    assert!(out.contains("sobolev,2,2,1/2"));
}
