use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfranklin"))
        .args(args)
        .output()
        .expect("failed to launch binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// (arguments, expected exit code, substring expected on stderr)
const ERROR_FIXTURES: &[(&[&str], i32, &str)] = &[
    (&["eval", "q +", "--qorder", "3"], 2, "line 1, column 4"),
    (&["eval", "(1 - q", "--qorder", "3"], 2, "line 1, column 7"),
    (&["eval", "poch(q, inf) @", "--qorder", "3"], 2, "line 1, column 14"),
    (&["verify", "q", "q\n*", "--qorder", "3"], 2, "line 2, column 2"),
    (&["eval", "1/q", "--qorder", "3"], 2, "constant term 0"),
    (&["eval", "1/(3 + q)", "--qorder", "3"], 2, "constant term 3"),
    (&["verify", "1/(2 - q)", "1", "--qorder", "3"], 2, "constant term 2"),
    (&["eval", "sum(k, 0, inf, 1)", "--qorder", "3"], 2, "diverges"),
    (
        &["eval", "sum(k, 0, inf, x)", "--qorder", "3", "--guard-window", "2"],
        2,
        "2 consecutive",
    ),
    (&["eval", "q^-2", "--qorder", "3"], 2, "exponent out of range"),
    (&["eval", "q", "--qorder", "-1"], 2, "qorder"),
    (
        &["franklin", "--max-weight", "5", "--orbits", "--census"],
        2,
        "cannot be used",
    ),
    (&["bogus"], 2, "unrecognized subcommand"),
];

#[test]
fn error_fixtures_exit_nonzero() {
    for (args, code, needle) in ERROR_FIXTURES {
        let o = run(args);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).contains(needle), "{args:?}: stderr was {}", stderr(&o));
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn eval_text_and_json() {
    let o = run(&["eval", "poch(q,inf)", "--qorder", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1 - 1*q - 1*q^2 + 1*q^5 + 1*q^7");

    let o = run(&["eval", "sum(k,1,inf, q^k/(1-q^k))", "--qorder", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!({"qorder": 4, "coeffs": ["0", "1", "2", "2", "3"]}));

    let o = run(&["eval", "1/(1-q) * (1-q)", "--qorder", "10"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = run(&["eval", "q - q", "--qorder", "3"]);
    assert_eq!(stdout(&o).trim(), "0");

    let o = run(&[
        "eval",
        "(1 - x*q)^2",
        "--qorder",
        "3",
        "--xorder",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"qorder": 3, "xorder": 2, "rows": [["1","0","0"],["0","-2","0"],["0","0","1"],["0","0","0"]]})
    );
}

#[test]
fn large_coefficients_survive_json() {
    let o = run(&["eval", "(1 + 1000000*q)^4", "--qorder", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coeffs"][4], "1000000000000000000000000");
}

#[test]
fn verify_statuses() {
    let o = run(&["verify", "poch(q,inf)", "1 - q", "--qorder", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "mismatch at q^2: lhs -1, rhs 0");

    let o = run(&["verify", "poch(q,inf)", "1 - q", "--qorder", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "mismatch");
    assert_eq!(
        v["first_mismatch"],
        serde_json::json!({"x_exp": 0, "q_exp": 2, "lhs": "-1", "rhs": "0"})
    );

    let pentagonal = "1 + sum(r, 1, inf, (-1)^r*(q^(r*(3*r - 1)/2) + q^(r*(3*r + 1)/2)))";
    let o = run(&["verify", "poch(q, inf)", pentagonal, "--qorder", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "equal (qorder 100, xorder 0)");
}

#[test]
fn franklin_listings() {
    let o = run(&["franklin", "--max-weight", "5", "--orbits"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("3: (3) <-> (2,1)"), "{text}");
    assert!(text.contains("5: (3,2) fixed (exceptional-first r=2)"), "{text}");

    let o = run(&["franklin", "--max-weight", "7", "--census"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "weight signed_count predicted witness");
    assert_eq!(lines[1 + 5], "5 1 1 (3,2)");
    assert_eq!(lines[1 + 7], "7 1 1 (4,3)");
    assert_eq!(lines[1 + 6], "6 0 0 -");

    let o = run(&["franklin", "--max-weight", "12", "--census", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][12]["witness"], serde_json::json!([5, 4, 3]));
    assert_eq!(v["rows"][12]["signed_count"], -1);
}

#[test]
fn suite_passes_at_small_orders() {
    let o = run(&["suite", "--qorder", "30", "--xorder", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 19);
    assert!(!text.contains("FAIL"));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
