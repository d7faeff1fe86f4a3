use gamma_roots::cli::{run, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("gamma-roots").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn table_prints_invariants() {
    let (code, out, _) = cli(&["table", "B", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("h∨ = 7"));
    assert!(out.contains("comarks = (1, 1, 2, 2, 1)"));

    let (_, out, _) = cli(&["table", "G", "2"]);
    assert!(out.contains("marks (n_0..n_r) = (1, 3, 2)"));

    let (_, out, _) = cli(&["table", "A", "1"]);
    assert!(out.contains("h = 2"));
    assert!(out.contains("positive roots (1)"));
}

#[test]
fn table_json_parses() {
    let (code, out, _) = cli(&["table", "F", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"], 12);
    assert_eq!(v["h_check"], "9");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 24);
}

#[test]
fn word_uses_brace_notation() {
    let (code, out, _) = cli(&["word", "D", "4", "1", "F"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("N=6"));
    assert!(out.contains("word:    {2}/({1}{4})"));

    let (_, out, _) = cli(&["word", "G", "2", "1", "Fprime"]);
    assert!(out.contains("word:    {2}/({1}{4})"));
}

#[test]
fn word_refuses_f_on_non_simply_laced() {
    let (code, _, err) = cli(&["word", "B", "2", "1", "F"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("simply-laced"));
}

#[test]
fn bad_arguments_are_usage_errors() {
    for args in [
        &["table", "E", "9"][..],
        &["table", "Q", "3"],
        &["word", "A", "3", "4", "F"],
        &["verify", "--family", "G", "--rank", "3"],
        &["verify", "--digits", "5"],
        &["verify", "--rank", "3", "--rank-max", "4"],
        &["relations", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(cli(args).0, EXIT_USAGE, "{args:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for cmd in ["table", "word", "verify", "relations"] {
        assert!(out.contains(cmd));
    }
}

#[test]
fn verify_e8_both_modes() {
    let (code, out, _) = cli(&[
        "verify", "--family", "E", "--rank", "8", "--variant", "F", "--mode", "both", "--digits", "60", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 8);
    assert!(reports.iter().all(|r| r["status"] == "proved_exact" && r["numeric_residual"].is_string()));
}

#[test]
fn verify_c_second_constants() {
    let (code, out, _) = cli(&["verify", "--family", "C", "--rank-max", "12", "--variant", "Fsecond", "--mode", "exact", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for r in v["reports"].as_array().unwrap() {
        let n = r["rank"].as_i64().unwrap();
        let i = r["index"].as_i64().unwrap();
        let exp = &r["rhs_constant"][0];
        assert_eq!(exp["base"], "2");
        let (num, den) = if i == n { (n - 1, n + 1) } else { (-2, n + 1) };
        let g = gcd(num.abs(), den);
        assert_eq!(exp["num"], (num / g).to_string(), "C{n} α{i}");
        assert_eq!(exp["den"], (den / g).to_string(), "C{n} α{i}");
        assert_eq!(r["status"], "proved_exact");
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn verify_a_is_trivial() {
    let (code, out, _) = cli(&["verify", "--family", "A", "--rank-max", "12", "--variant", "F", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 78);
    assert!(v["reports"].as_array().unwrap().iter().all(|r| r["rhs_constant"].as_array().unwrap().is_empty()));
}

#[test]
fn verify_without_fallback_still_passes() {
    let (code, _, _) = cli(&["verify", "--family", "G", "--no-fallback", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn verify_text_output_is_deterministic() {
    let a = cli(&["verify", "--rank-max", "4"]).1;
    let b = cli(&["verify", "--rank-max", "4"]).1;
    let strip = |s: &str| s.lines().map(|l| l.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
    assert!(a.lines().last().unwrap().contains("failures=0"));
}

#[test]
fn verify_writes_output_file() {
    let path = std::env::temp_dir().join(format!("gamma-roots-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["verify", "--family", "G", "--format", "json", "--output", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total"], 4);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn relations_dump() {
    let (code, out, _) = cli(&["relations", "12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("multiplication(3,1)"));
    assert!(out.contains("consistent: true"));
    let (_, out, _) = cli(&["relations", "30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kernel_consistent"], true);
}

