use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gw-euler"))
        .args(args)
        .env_remove("GW_EULER_BUDGET")
        .output()
        .expect("binary runs")
}

fn first_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).lines().next().unwrap_or_default().to_string()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn worked_example_degree() {
    let o = run(&["degree", "--system", "x^2-1;y^2-x^2;z^2+x^2", "--field", "Q"]);
    assert!(o.status.success());
    assert_eq!(first_line(&o), "4H");
}

#[test]
fn simplify_square_class() {
    let o = run(&["simplify", "<9>", "--field", "Q"]);
    assert_eq!(first_line(&o), "<1>");
    let o = run(&["simplify", "2H + <3> + <-3>"]);
    assert_eq!(first_line(&o), "3H");
}

#[test]
fn stacky_naive() {
    let o = run(&["o-n-stacky", "--n", "3", "--mode", "naive"]);
    assert_eq!(first_line(&o), "3<1>");
}

#[test]
fn o_n_signs() {
    assert_eq!(first_line(&run(&["o-n", "--n", "3", "--sign", "+1", "--mode", "scharlau"])), "H + <1>");
    assert_eq!(first_line(&run(&["o-n", "--n", "3", "--sign", "-1"])), "H + <-1>");
    assert_eq!(first_line(&run(&["o-n", "--n", "4"])), "2H");
}

#[test]
fn text_output_embeds_manifest() {
    let o = run(&["o-n", "--n", "2"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let manifest_line = text.lines().last().unwrap();
    let m: Value = serde_json::from_str(manifest_line.trim_start_matches("# ")).unwrap();
    assert_eq!(m["command"], "o-n");
    assert_eq!(m["mode"], "scharlau");
    assert_eq!(m["order"], "degrevlex");
    assert!(m["timing"].is_null());
}

#[test]
fn domain_errors_exit_two_with_kind() {
    let o = run(&["ss", "--system", "x^2; x*y"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "NonIsolatedZeros");
    assert_eq!(v["manifest"]["command"], "ss");

    let o = run(&["simplify", "<1>", "--field", "fp:2"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "CharTwo");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["o-n"]).status.code(), Some(1));
    assert_eq!(run(&["o-n", "--n", "3", "--mode", "fancy"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn identical_manifests_give_identical_output() {
    let args = ["lines-p4", "--field", "fp", "--p", "7", "--seed", "42", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lines_swap_changes_disc_over_f7() {
    let plain: Value = serde_json::from_slice(&run(&["lines-p4", "--field", "fp:7", "--seed", "42", "--json"]).stdout).unwrap();
    let swapped: Value =
        serde_json::from_slice(&run(&["lines-p4", "--field", "fp:7", "--seed", "42", "--swap-first-pair", "--json"]).stdout)
            .unwrap();
    assert_eq!(plain["result"]["dim"], 5);
    assert_eq!(plain["result"]["class_swapped"], swapped["result"]["class"]);
    assert_ne!(plain["result"]["invariants"]["disc"], swapped["result"]["invariants"]["disc"]);
}

#[test]
fn lines_from_config_file() {
    let o = run(&["lines-p4", "--config", &fixture("lines_q.json"), "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["dim"], 5);
    assert_eq!(v["result"]["invariants"]["rank"], 5);
    assert_eq!(v["result"]["invariants"]["signature"].as_i64().unwrap().abs(), 1);
}

#[test]
fn trace_form_micro_check() {
    let o = run(&["trace-form", "--modulus", "t^2+t+1", "--element", "3*t^2"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("[[-3, 6], [6, -3]]"));
    assert_eq!(lines.next(), Some("<1> + <-3>"));
}

#[test]
fn extension_field_from_file() {
    let field = format!("ext:{}", fixture("cyclotomic3.json"));
    let o = run(&["simplify", "<t> + <-t>", "--field", &field]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(first_line(&o), "H");
}

#[test]
fn verify_lines_report() {
    let o = run(&["verify-lines", "--p", "7", "--seed", "42", "--trials", "2", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["manifest"]["field"]["p"], 7);
    let trials = v["result"]["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 2);
    for t in trials {
        assert!(t["report"]["configuration"]["planes"].is_array());
    }
}

#[test]
fn consistency_on_a_stacky_fiber() {
    let o = run(&["consistency", "--system", "x^3; x*y", "--value", "-1,-1", "--hint", "x^2-x+1"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l == "verdict equal"), "{text}");
}

#[test]
fn timing_only_on_request() {
    let o = run(&["o-n", "--n", "2", "--json", "--timing"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["manifest"]["timing"]["elapsed_ms"].is_number());
}

#[test]
fn budget_is_read_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gw-euler"))
        .args(["ss", "--system", "x^2 + y*z - 2; y^2 + x*z - 3; z^2 + x*y - 4"])
        .env("GW_EULER_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "BudgetExceeded");
}
