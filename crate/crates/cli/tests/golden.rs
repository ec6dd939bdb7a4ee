//! Frozen JSON outputs for the example suite.

mod common;

use common::{model, run};

const CASES: &[(&[&str], i32, &str)] = &[
    (
        &["diagnosable", "--system", "s1.rv", "--agent", "a", "--error", "e", "--delay", "2", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["diagnosable", "--system", "s1.rv", "--agent", "a", "--error", "e", "--delay", "1", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{r}"],"position":1,"stem":["{p,e}","{p}"]}}"#,
    ),
    (
        &["diagnosable", "--system", "s1.rv", "--agent", "a", "--error", "e", "--delay", "1", "--direct", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{r}"],"position":2,"stem":["{p,e}","{p}"]}}"#,
    ),
    (
        &["diagnosable", "--system", "s1.rv", "--agent", "a", "--error", "e", "--delay", "2", "--negative", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["diagnosable", "--system", "s2.rv", "--agent", "a", "--error", "e", "--delay", "0", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{p}"],"position":1,"stem":["{p,e}"]}}"#,
    ),
    (
        &["diagnosable", "--system", "s2.rv", "--agent", "a", "--error", "e", "--unbounded", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{p}"],"position":1,"stem":["{p}","{p,e}"]}}"#,
    ),
    (
        &["diagnosable", "--system", "s3.rv", "--agent", "a", "--error", "e", "--delay", "0", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["diagnosable", "--system", "s3.rv", "--agent", "a", "--error", "e", "--delay", "0", "--negative", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["diagnosable", "--system", "s4.rv", "--agent", "a", "--error", "e", "--delay", "3", "--direct", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{r}"],"position":4,"stem":["{p,e}","{p}","{p}","{p}"]}}"#,
    ),
    (
        &["diagnosable", "--system", "s4.rv", "--agent", "a", "--error", "e", "--unbounded", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag1.rv", "--agents", "a1,a2", "--error", "e", "--delay", "1", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag1.rv", "--agents", "a1,a2", "--error", "e", "--delay", "3", "--negative", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{}"],"position":1,"stem":["{}","{}","{}","{}","{e}","{p1}"]}}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag2.rv", "--agents", "a1,a2", "--error", "e", "--delay", "0", "--negative", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag2.rv", "--agents", "a1,a2", "--error", "e", "--delay", "3", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{}"],"position":1,"stem":["{e}"]}}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag3.rv", "--agents", "a1,a2", "--error", "e", "--delay", "3", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{}"],"position":1,"stem":["{p1,p2,e}"]}}"#,
    ),
    (
        &["codiagnosable", "--system", "codiag3.rv", "--agents", "a1,a2", "--error", "e", "--delay", "3", "--negative", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{}"],"position":1,"stem":["{p1,p2}"]}}"#,
    ),
    (
        &["opaque", "--system", "opaque.rv", "--agent", "a", "--secret", "s", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["opaque", "--system", "opaque.rv", "--agent", "a", "--secret", "s", "--two-sided", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["opaque", "--system", "past_opacity.rv", "--agent", "a", "--secret", "s", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["monitorable", "--system", "recovery.rv", "--agent", "a", "--formula", "F e", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["monitorable", "--system", "blackbox_pr.rv", "--agent", "a", "--formula", "p U r", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["monitorable", "--system", "blackbox_p.rv", "--agent", "a", "--formula", "G F p", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":[],"position":1,"stem":["{}"]}}"#,
    ),
    (
        &["monitorable", "--system", "blackbox_p.rv", "--agent", "a", "--formula", "X p | G F p", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":[],"position":2,"stem":["{}","{}"]}}"#,
    ),
    (
        &["check", "--system", "nested.rv", "--formula", "X X (K[a] W[b] h & !W[a] h)", "--json"],
        0,
        r#"{"result":true}"#,
    ),
    (
        &["check", "--system", "s2.rv", "--formula", "G (e -> F K[a] P e)", "--json"],
        1,
        r#"{"result":false,"witness":{"loop":["{p}"],"position":1,"stem":["{p}","{p,e}"]}}"#,
    ),
    (
        &["check", "--system", "error_or_reset.rv", "--formula", "G (e -> X G p)", "--json"],
        0,
        r#"{"result":true}"#,
    ),
];

#[test]
fn example_suite_matches_golden_json() {
    for (args, code, expected) in CASES {
        let argv: Vec<String> = args
            .iter()
            .enumerate()
            .map(|(i, a)| if i > 0 && args[i - 1] == "--system" { model(a) } else { a.to_string() })
            .collect();
        let out = run(&argv, "");
        assert_eq!(out.code, *code, "{args:?}");
        assert_eq!(out.stdout.trim_end(), *expected, "{args:?}");
    }
}
