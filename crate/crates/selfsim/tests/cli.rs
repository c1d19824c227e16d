use std::process::{Command, Output};

use serde_json::Value;

fn selfsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfsim")).args(args).env_remove("FRACTALITY_MAX_ORDER").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn section_of_conjugated_chain_generator() {
    let o = selfsim(&["section", "--group", "hanoi-chain:3", "--word", "b1^-1 b2^-1 b1 b2 b1", "--vertex", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "b1\n");
}

#[test]
fn section_of_grigorchuk_element() {
    let o = selfsim(&["section", "--group", "grigorchuk", "--word", "(ab)^4(adabac)^2", "--vertex", "2.2.1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "a\n");
}

#[test]
fn identity_portrait() {
    let o = selfsim(&["portrait", "--group", "grigorchuk", "--word", "e", "--depth", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "root: e\n1: e\n2: e\n");
}

#[test]
fn chain_is_not_strongly_fractal() {
    let o = selfsim(&[
        "check", "--group", "hanoi-chain:3", "--property", "strongly_fractal", "--depth", "3", "--format", "json",
    ]);
    assert_eq!(code(&o), 20);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "CERTIFIED_FAIL");
    assert_eq!(v["certificate"]["proper_image"]["excluded_generator"], "b1");
}

#[test]
fn shallow_run_is_inconclusive() {
    let o = selfsim(&["check", "--group", "grigorchuk", "--property", "fractal", "--depth", "1"]);
    assert_eq!(code(&o), 10);
    assert!(stdout(&o).contains("PASS_UP_TO_DEPTH"));
}

#[test]
fn periodic_ggs_lists_level_two_witness() {
    let o = selfsim(&[
        "check",
        "--group",
        "ggs:3:1,2",
        "--property",
        "super_strongly_fractal",
        "--depth",
        "4",
        "--max-level",
        "2",
        "--format",
        "json",
    ]);
    assert!(matches!(code(&o), 0 | 10));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let def = selfsim::resolve("ggs:3:1,2").unwrap();
    let g = def.display_word(&def.parse_word("a^-1 b a a^-2 b a^2 b").unwrap());
    let witnesses = v["certificate"]["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["word"] == g.as_str()), "{g} missing from {witnesses:?}");
}

#[test]
fn verdict_json_schema() {
    let runs = [
        ["hanoi-chain:3", "fractal"],
        ["hanoi-chain:3", "strongly_fractal"],
        ["ggs:3:1,1", "super_strongly_fractal"],
        ["grigorchuk", "level_transitive"],
    ];
    for [group, property] in runs {
        let o = selfsim(&["check", "--group", group, "--property", property, "--format", "json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let obj = v.as_object().unwrap();
        for key in ["property", "status", "depth_checked", "certificate"] {
            assert!(obj.contains_key(key), "{key}");
        }
        assert_eq!(v["property"], property);
        assert!(v["depth_checked"].is_u64());
        let cert = &v["certificate"];
        assert!(cert["kind"].is_string());
        for w in cert["witnesses"].as_array().unwrap() {
            assert!(w["word"].is_string() && w["vertex"].is_string() && w["target"].is_string());
        }
        let p = &cert["proper_image"];
        if !p.is_null() {
            assert!(p["depth"].is_u64() && p["vertex"].is_string() && p["level"].is_u64());
            assert!(p["excluded_generator"].is_string() || p["excluded_generator"].is_null());
        }
        let expected = match v["status"].as_str().unwrap() {
            "CERTIFIED_PASS" => 0,
            "PASS_UP_TO_DEPTH" => 10,
            "CERTIFIED_FAIL" => 20,
            other => panic!("status {other}"),
        };
        assert_eq!(code(&o), expected);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "--group", "ggs:3:1,1", "--property", "super_strongly_fractal", "--format", "json"];
    assert_eq!(selfsim(&args).stdout, selfsim(&args).stdout);
}

#[test]
fn order_cap_aborts() {
    let o = Command::new(env!("CARGO_BIN_EXE_selfsim"))
        .args(["check", "--group", "grigorchuk", "--property", "fractal", "--depth", "4"])
        .env("FRACTALITY_MAX_ORDER", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&selfsim(&["check", "--group", "nonesuch", "--property", "fractal"])), 2);
    assert_eq!(code(&selfsim(&["check", "--group", "grigorchuk", "--property", "wiggly"])), 2);
    assert_eq!(code(&selfsim(&["check", "--group", "grigorchuk", "--property", "fractal", "--depth", "3", "--max-level", "3"])), 2);
    assert_eq!(code(&selfsim(&["section", "--group", "grigorchuk", "--word", "a z", "--vertex", "1"])), 2);
}

#[test]
fn definition_files_round_trip_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["hanoi:3", "hanoi-chain:4", "ggs:3:1,2", "ggs:2:1", "grigorchuk"] {
        let def = selfsim::resolve(spec).unwrap();
        let path = dir.path().join(spec.replace(':', "_").replace(',', "_"));
        std::fs::write(&path, def.to_string()).unwrap();
        let loaded = selfsim::resolve(path.to_str().unwrap()).unwrap();
        assert_eq!(loaded.generators(), def.generators(), "{spec}");

        let shown = stdout(&selfsim(&["info", "--group", path.to_str().unwrap()]));
        assert!(shown.starts_with(&def.to_string()));
    }
}

#[test]
fn file_groups_are_checked_like_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("adding.grp");
    std::fs::write(&path, "# binary adding machine\ndegree = 2\ngenerator t : root = (1 2) ; sections = [e, t]\n").unwrap();
    let p = path.to_str().unwrap();
    let o = selfsim(&["check", "--group", p, "--property", "level_transitive", "--depth", "5"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = selfsim(&["check", "--group", p, "--property", "fractal", "--depth", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness: t^2 at 1 has section t"), "{}", stdout(&o));

    std::fs::write(&path, "degree = 2\ngenerator a : root = (1 2) ; sections = [e, e]\n").unwrap();
    let o = selfsim(&["check", "--group", p, "--property", "fractal", "--depth", "2"]);
    assert_eq!(code(&o), 20);

    std::fs::write(&path, "degree = 2\ngenerator t : root = (1 2) ; sections = [e, z]\n").unwrap();
    let o = selfsim(&["info", "--group", p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared generator"));
}
