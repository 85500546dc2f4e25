use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motzkin-tamari"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_lists_paths_in_canonical_order() {
    let o = run(&["enumerate", "--family", "motzkin", "--n", "3"]);
    assert!(o.status.success());
    let words: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(words, ["NED", "NDE", "DNE", "DDD"]);
}

#[test]
fn enumerate_json_has_path_fields() {
    let o = run(&["enumerate", "--family", "schroder", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for key in ["word", "class", "primitive", "contacts", "d_steps"] {
        assert!(rows[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn stats_and_covers_of_a_sample_path() {
    let o = run(&["stats", "--path", "NNDEDNNEEDE"]);
    assert!(stdout(&o).contains("class: (3,4,7)"));
    let o = run(&["covers", "--path", "NNDEDNNEEDE", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valleys"], serde_json::json!([4, 9]));
    assert_eq!(v["covers"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run(&["stats", "--path", "NXE"]).status.code(), Some(2));
    assert_eq!(run(&["stats", "--path", "EN"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "--dir", "phi", "--path", "NNNEEE"]).status.code(), Some(2));
    assert_eq!(run(&["bijection", "--dir", "delta1", "--tree", "(."]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn intervals_methods_agree() {
    for method in ["brute", "fe", "algebraic", "all"] {
        let o = run(&["intervals", "--family", "motzkin", "--n", "6", "--method", method]);
        assert!(o.status.success(), "{method}");
        assert_eq!(stdout(&o).trim(), "140", "{method}");
    }
    let o = run(&["intervals", "--family", "schroder", "--n", "3"]);
    assert_eq!(stdout(&o).trim(), "46");
    let o = run(&["intervals", "--family", "schroder", "--n", "2", "--u-refined"]);
    assert_eq!(stdout(&o).trim(), "u^2+4u+3");
}

#[test]
fn over_budget_brute_force_exits_with_three() {
    let o = run(&["intervals", "--family", "motzkin", "--n", "13", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["hasse", "--family", "schroder", "--n", "16"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn hasse_dot_and_json() {
    let o = run(&["hasse", "--family", "motzkin", "--n", "4", "--cluster"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("subgraph cluster_"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nodes: 9"));
    let o = run(&["hasse", "--family", "dyck", "--n", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
}

#[test]
fn components_count_matches_fibonacci() {
    let o = run(&["components", "--family", "motzkin", "--n", "6"]);
    assert!(stdout(&o).ends_with("components: 13\n"));
    let o = run(&["components", "--family", "schroder", "--n", "8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 16);
}

#[test]
fn bijection_round_trip_through_cli() {
    let o = run(&["bijection", "--dir", "phi", "--path", "NNENEENNEE"]);
    let image = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(image, "NDENE");
    let o = run(&["bijection", "--dir", "phi-inv", "--path", &image]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "NNENEENNEE");
    let o = run(&["bijection", "--dir", "delta1", "--tree", "(. .)"]);
    assert_eq!(stdout(&o).trim(), "NE");
}

#[test]
fn series_csv_and_catalytic() {
    let o = run(&["series", "--family", "motzkin", "--order", "10"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,coefficient");
    assert_eq!(lines[10], "9,6106");
    let o = run(&["series", "--family", "motzkin", "--order", "3", "--catalytic", "--u-refined"]);
    assert!(stdout(&o).contains("2,u^2x^2+x"));
    let o = run(&["series", "--family", "schroder", "--order", "3", "--catalytic"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = ["verify", "--motzkin-max", "7", "--schroder-max", "4", "--isomorphism-max", "6"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("PASS motzkin-interval-counts"));
}
