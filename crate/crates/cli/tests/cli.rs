mod common;

use common::{check_golden, code, diagnostic, run, run_env, stdout};
use serde_json::Value;

fn compose_to(dir: &tempfile::TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let path_str = path.to_str().unwrap().to_string();
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", &path_str]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn identity_composite_is_byte_identical() {
    let x = stdout(&run(&["normalize", "e1_two.json"]));
    let left = run(&["compose", "--mode", "full", "e1_identity.json", "e1_two.json"]);
    assert_eq!(code(&left), 0);
    assert_eq!(stdout(&left), x);
    let right = run(&["compose", "--mode", "full", "e1_two.json", "e1_identity.json", "e1_identity.json"]);
    assert_eq!(stdout(&right), x);
    let half = stdout(&run(&["normalize", "sc1_half.json"]));
    let h = run(&["compose", "--mode", "mixed", "sc1_identity.json", "sc1_half.json"]);
    assert_eq!(stdout(&h), half);
}

#[test]
fn full_composite_matches_golden() {
    let out = run(&["compose", "--mode", "full", "e1_two.json", "e1_identity.json", "e1_two.json"]);
    assert_eq!(code(&out), 0);
    assert!(check_golden("compose_full_e1.json", &stdout(&out)));
}

#[test]
fn mixed_d1_example() {
    let out = run(&["compose", "--mode", "mixed", "sc1_half.json", "e1_two.json", "sc1_half.json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(check_golden("compose_mixed_sc1.json", &text));
    let v: Value = serde_json::from_str(&text).unwrap();
    let discs = v["discs"].as_array().unwrap();
    let radii: Vec<&str> = discs.iter().map(|d| d["r"].as_str().unwrap()).collect();
    assert_eq!(radii, ["1/12", "1/16", "1/16", "1/16"]);
    assert_eq!(discs[3]["color"], "half");
    assert_eq!(v["target"], "half");
}

#[test]
fn output_keys_are_sorted() {
    let text = stdout(&run(&["compose", "--mode", "mixed", "sc2_half.json", "e2_two.json", "sc2_half.json"]));
    let first_keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(str::trim).collect();
    assert!(first_keys[0].starts_with("\"d\""));
    assert!(first_keys[1].starts_with("\"discs\""));
    assert!(first_keys[2].starts_with("\"target\""));
    assert!(text.ends_with("}\n"));
}

#[test]
fn zero_denominator_is_a_parse_failure() {
    let out = run(&["compose", "--mode", "full", "zero_denominator.json", "e1_identity.json", "e1_identity.json"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let diag = diagnostic(&out);
    assert_eq!(diag["error"], "parse");
    assert!(diag["message"].as_str().unwrap().contains("1/0"));
}

#[test]
fn invalid_configuration_lists_violations() {
    let out = run(&["compose", "--mode", "full", "not_contained.json", "e1_identity.json", "e1_identity.json"]);
    assert_eq!(code(&out), 2);
    let diag = diagnostic(&out);
    assert_eq!(diag["error"], "validation");
    assert_eq!(diag["violations"][0]["kind"], "not_contained");
    assert_eq!(diag["violations"][0]["disc"], 0);
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["compose", "--mode", "full", "no_such_file.json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(diagnostic(&out)["error"], "io");
}

#[test]
fn arity_and_color_mismatches_exit_three() {
    let arity = run(&["compose", "--mode", "full", "e1_two.json", "e1_identity.json"]);
    assert_eq!(code(&arity), 3);
    assert_eq!(diagnostic(&arity)["error"], "mismatch");
    let color = run(&["compose", "--mode", "mixed", "sc1_half.json", "sc1_half.json", "e1_two.json"]);
    assert_eq!(code(&color), 3);
    let full_target = run(&["compose", "--mode", "mixed", "e1_two.json", "e1_identity.json", "e1_identity.json"]);
    assert_eq!(code(&full_target), 3);
    let half_in_full = run(&["compose", "--mode", "full", "e1_identity.json", "sc1_identity.json"]);
    assert_eq!(code(&half_in_full), 3);
    let dims = run(&["compose", "--mode", "full", "e1_identity.json", "e2_two.json"]);
    assert_eq!(code(&dims), 3);
}

#[test]
fn level_sequences_compose_and_mismatch() {
    let ok = run(&["compose", "--mode", "le", "le_merge.json", "le_split.json"]);
    assert_eq!(code(&ok), 0);
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!((v["source"].as_u64(), v["target"].as_u64()), (Some(3), Some(1)));
    let bad = run(&["compose", "--mode", "le", "le_merge.json", "le_merge.json"]);
    assert_eq!(code(&bad), 3);
}

#[test]
fn schinf_compose_and_mismatch() {
    let ok = run(&["compose", "--mode", "schinf", "schinf.json", "schinf.json"]);
    assert_eq!(code(&ok), 0);
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["degree"], 4);
    let again = run(&["compose", "--mode", "schinf", "schinf.json", "schinf.json"]);
    assert_eq!(ok.stdout, again.stdout);
    let bad = run(&["compose", "--mode", "schinf", "schinf.json", "schinf.json", "schinf.json"]);
    assert_eq!(code(&bad), 3);
}

#[test]
fn semidirect_compose() {
    let ok = run(&["compose", "--mode", "semidirect", "semi_half.json", "semi_full.json", "semi_full.json", "semi_half.json"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    let v: Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert!(v.get("half").is_some());
    let full = run(&["compose", "--mode", "semidirect", "semi_full.json", "semi_full.json", "semi_full.json"]);
    assert_eq!(code(&full), 0);
    assert!(serde_json::from_str::<Value>(&stdout(&full)).unwrap().get("full").is_some());
    let color = run(&["compose", "--mode", "semidirect", "semi_half.json", "semi_half.json", "semi_full.json", "semi_half.json"]);
    assert_eq!(code(&color), 3);
    let shape = run(&["compose", "--mode", "semidirect", "e1_two.json"]);
    assert_eq!(code(&shape), 2);
}

#[test]
fn normalize_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let once = compose_to(&dir, "w.json", &["normalize", "wtree.json"]);
    let first = std::fs::read_to_string(&once).unwrap();
    let second = stdout(&run(&["normalize", &once]));
    assert_eq!(first, second);
    let s = stdout(&run(&["normalize", "schinf.json"]));
    assert!(s.contains("\"degree\": 2"));
    assert_eq!(code(&run(&["normalize", "dual_numbers.json"])), 2);
}

#[test]
fn verify_axioms_on_e2_passes() {
    let out = run(&["verify", "--suite", "axioms", "--dim", "2", "--cases", "100", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "axioms");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"] == "E2 axioms"));
    assert!(checks.iter().all(|c| c["seed"] == 7 && c["counterexamples"].as_array().unwrap().is_empty()));
}

#[test]
fn verify_relations_with_200_cases_passes() {
    let out = run(&["verify", "--suite", "relations", "--cases", "200"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["cases"] == 200));
}

#[test]
fn verify_d1_universal_passes() {
    let out = run(&["verify", "--suite", "d1-universal", "--prime", "2", "--dim", "2", "--max-arity", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(serde_json::from_str::<Value>(&stdout(&out)).unwrap()["passed"], true);
}

#[test]
fn verify_confluence_and_monad_pass() {
    assert_eq!(code(&run(&["verify", "--suite", "confluence", "--cases", "60"])), 0);
    assert_eq!(code(&run(&["verify", "--suite", "monad", "--dim", "1"])), 0);
}

#[test]
fn verify_rejects_bad_parameters() {
    assert_eq!(code(&run(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "monad", "--prime", "4"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "axioms", "--cases", "0"])), 2);
}

#[test]
fn verify_report_is_deterministic_across_thread_counts() {
    let args = ["verify", "--suite", "confluence", "--cases", "40", "--seed", "3"];
    let a = run_env(&args, &[("OPERAD_FORGE_THREADS", "1")]);
    let b = run_env(&args, &[("OPERAD_FORGE_THREADS", "4")]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&run_env(&args, &[("OPERAD_FORGE_THREADS", "zero")])), 2);
}

#[test]
fn render_identity_half_disc() {
    let out = run(&["render", "sc2_identity.json"]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    assert!(svg.starts_with("<svg"));
    assert!(check_golden("render_sc2_identity.svg", &svg));
}

#[test]
fn render_composed_sc2_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let composed = compose_to(&dir, "c.json", &["compose", "--mode", "mixed", "sc2_half.json", "e2_two.json", "sc2_half.json"]);
    let svg_path = dir.path().join("c.svg");
    let out = run(&["render", &composed, "--out", svg_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let svg = std::fs::read_to_string(svg_path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 3);
    assert!(check_golden("render_sc2_composed.svg", &svg));
}

#[test]
fn render_wtree_with_lengths() {
    let out = run(&["render", "wtree.json"]);
    assert_eq!(code(&out), 0);
    let svg = stdout(&out);
    assert!(svg.contains(">1/2<") && svg.contains(">inf<"));
    assert!(check_golden("render_wtree.svg", &svg));
}

#[test]
fn render_rejects_unsupported_input() {
    assert_eq!(code(&run(&["render", "e3_identity.json"])), 2);
    let out = run(&["render", "dual_numbers.json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(diagnostic(&out)["error"], "unsupported");
}

#[test]
fn count_dual_numbers() {
    let out = run(&["count", "dual_numbers.json", "--dim", "2", "--max-arity", "3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let counts: Vec<u64> = v["counts"].as_array().unwrap().iter().map(|r| r["actions"].as_u64().unwrap()).collect();
    assert_eq!(counts, [1, 1, 4]);
    assert!(v["counts"].as_array().unwrap().iter().all(|r| r["bijection"] == true));
}
