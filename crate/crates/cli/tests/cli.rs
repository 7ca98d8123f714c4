use std::process::Command;

use mosaic_tilings_cli::{run, Outcome, EXIT_LIMIT, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("mosaic-tilings").chain(args.split_whitespace()))
}

fn ok(args: &str) -> String {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args}: {}", out.stderr);
    out.stdout
}

fn json(args: &str) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn grid_sequence_csv() {
    assert_eq!(ok("seq --q 4 --n 0..5 --method closed --a 1 --b 1 --format csv"), "1,2,7,22,71,228\n");
    assert_eq!(ok("seq --q 4 --n 0..8 --method system --a 1 --b 1 --format csv"), "1,2,7,22,71,228,733,2356,7573\n");
    assert_eq!(ok("seq --q 5 --n 0..4 --method fib --format csv"), "1,3,16,80,409\n");
}

#[test]
fn count_text() {
    assert_eq!(ok("count --q 4 --n 2 --method oracle --format text"), "a^4 + 4*a^2*b + 2*b^2\n");
    assert_eq!(ok("count --q 4 --n 2 --method frontier --format text"), "a^4 + 4*a^2*b + 2*b^2\n");
    assert_eq!(ok("count --q 5 --n 3 --unbreakable --a 1 --b 1 --format text"), "11\n");
    assert_eq!(ok("count --variant path --m 3 --format text"), "a^3 + 2*a*b\n");
}

#[test]
fn count_json_and_tilings() {
    let v = json("count --q 4 --n 1 --list");
    assert_eq!(v["value"], serde_json::json!([[2, 0, "1"], [0, 1, "1"]]));
    assert_eq!(v["cells"], 2);
    let tilings = v["tilings"].as_array().unwrap();
    assert_eq!(tilings.len(), 2);
    assert_eq!(tilings[0], serde_json::json!([{ "m": 0 }, { "m": 1 }]));
    assert_eq!(tilings[1], serde_json::json!([{ "d": [0, 1] }]));
}

#[test]
fn oracle_matches_system() {
    for q in 4..=6 {
        for n in 0..=4 {
            for variant in ["full", "a", "b", "c"] {
                if n == 0 && variant != "full" {
                    continue;
                }
                let base = format!("count --q {q} --n {n} --variant {variant} --format text");
                let oracle = cli(&format!("{base} --method oracle"));
                if oracle.code == EXIT_LIMIT {
                    continue;
                }
                assert_eq!(oracle.code, EXIT_OK, "{base}: {}", oracle.stderr);
                assert_eq!(oracle.stdout, ok(&format!("{base} --method system")), "{base}");
            }
        }
    }
}

#[test]
fn board_json() {
    let v = json("board --q 7 --n 4");
    assert_eq!(v["cells"].as_array().unwrap().len(), 20);
    assert_eq!(v["cuts"].as_object().unwrap().len(), 3);
    let mirrored = json("board --q 5 --n 2 --mirror");
    assert_eq!(mirrored["mirrored"], true);
    assert!(ok("board --q 4 --n 3 --format text").starts_with("cells 6 (level 1: 3, level 2: 3)"));
}

#[test]
fn coefficients() {
    assert_eq!(ok("coeffs --q 6 --a 1 --b 1 --format csv"), "q,alpha,beta,gamma,delta\n6,6,19,2,-1\n");
    assert_eq!(json("coeffs --q 4..7 --method system"), json("coeffs --q 4..7"));
    assert_eq!(ok("coeffs --q 4..8 --method fib --format csv"), ok("coeffs --q 4..8 --a 1 --b 1 --format csv"));
}

#[test]
fn unbreakable_modes() {
    assert_eq!(ok("seq --q 4 --n 1..5 --kind rtilde --method closed --mode as-stated --a 1 --b 1 --format csv"), "2,3,2,3,2\n");
    assert_eq!(ok("seq --q 4 --n 1..5 --kind rtilde --method closed --a 1 --b 1 --format csv"), "2,3,2,2,2\n");
    assert_eq!(ok("seq --q 5 --n 1..6 --kind rtilde --method oracle --a 1 --b 1 --format csv"), "3,7,11,24,46,94\n");
}

#[test]
fn verify_bundle() {
    let v = json("verify --q 4..6 --n 0..4 --points (1,1);(2,3)");
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    let stated = reports.iter().find(|r| r["leg"] == "unbreakable-recurrence-as-stated").unwrap();
    assert_eq!(stated["status"], "expected-fail");
    assert_eq!(stated["counterexample"]["q"], 4);
    assert_eq!(stated["counterexample"]["n"], 4);
    assert_eq!(stated["counterexample"]["lhs"], serde_json::json!([[0, 0, "3"]]));
    assert_eq!(stated["counterexample"]["rhs"], serde_json::json!([[0, 0, "2"]]));
    for r in reports.iter().filter(|r| r["leg"] != "unbreakable-recurrence-as-stated") {
        assert_eq!(r["status"], "pass", "{r}");
    }
}

#[test]
fn verify_empty_range_is_vacuous() {
    let v = json("verify --q 5..4 --n 1..0");
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked_count"], 0);
}

#[test]
fn usage_errors_name_the_option() {
    for (args, needle) in [
        ("count --q 3 --n 2", "--q"),
        ("count --q 4 --n 1..3", "--n"),
        ("seq --q 4 --n 0..3 --method fib --a 2 --b 1", "--method fib"),
        ("seq --q 4 --n 0..3 --format csv", "--format csv"),
        ("count --q 4 --n 2 --a 1", "--a"),
        ("verify --limit 40", "--allow-large-limit"),
        ("seq --q 4 --n 0..3 --kind rtilde", "--n"),
        ("count --variant path --q 4", "--m"),
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_USAGE, "{args}");
        assert!(out.stderr.contains(needle), "{args}: {}", out.stderr);
    }
    assert_eq!(cli("frobnicate").code, EXIT_USAGE);
}

#[test]
fn oracle_limit() {
    let out = cli("count --q 7 --n 6");
    assert_eq!(out.code, EXIT_LIMIT);
    assert!(out.stderr.contains("30 cells"));
    assert_eq!(cli("count --q 4 --n 14 --limit 28 --allow-large-limit --a 1 --b 1 --format text").code, EXIT_OK);
    assert_eq!(cli("count --q 7 --n 6 --method system --format text").code, EXIT_OK);
}

#[test]
fn output_is_byte_identical() {
    for args in [
        "verify --q 4..5 --n 0..4",
        "seq --q 6 --n 0..6",
        "count --q 5 --n 2 --list",
        "board --q 6 --n 3",
        "coeffs --q 4..9",
    ] {
        assert_eq!(cli(args), cli(args), "{args}");
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_mosaic-tilings");
    let out = Command::new(bin)
        .args(["seq", "--q", "4", "--n", "0..5", "--method", "closed", "--a", "1", "--b", "1", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,2,7,22,71,228\n");
    let first = Command::new(bin).args(["verify", "--n", "0..3"]).output().unwrap();
    let second = Command::new(bin).args(["verify", "--n", "0..3"]).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let limit = Command::new(bin).args(["count", "--q", "7", "--n", "6"]).output().unwrap();
    assert_eq!(limit.status.code(), Some(3));
    let usage = Command::new(bin).args(["count", "--q", "3", "--n", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8(usage.stderr).unwrap().starts_with("error: --q"));
}
