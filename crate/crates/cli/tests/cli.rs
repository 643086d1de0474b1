use std::fs;
use std::process::{Command, Output};

fn permbin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permbin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn info_reports_status() {
    let out = permbin(&["info", "--p", "3", "--e", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ell       13"), "{text}");
    assert!(text.contains("characterized (e <= 4"), "{text}");
    assert!(stdout(&permbin(&["info", "--p", "3", "--e", "5"]))
        .contains("characterized (e = 5, prime q)"));
    assert!(
        stdout(&permbin(&["info", "--p", "2", "--m", "2", "--e", "5"])).contains("conjectural")
    );
    // --q is sugar for --p/--m
    assert_eq!(
        stdout(&permbin(&["info", "--q", "4", "--e", "5"])),
        stdout(&permbin(&["info", "--p", "2", "--m", "2", "--e", "5"]))
    );
}

#[test]
fn invalid_fields_exit_2() {
    assert_eq!(
        permbin(&["info", "--p", "4", "--e", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        permbin(&["info", "--q", "6", "--e", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        permbin(&["info", "--p", "3", "--e", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(permbin(&["info", "--e", "3"]).status.code(), Some(2));
    assert_eq!(permbin(&["bogus"]).status.code(), Some(2));
    let out = permbin(&["check", "--p", "3", "--e", "3", "--r", "1", "--a-exp", "26"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_verdicts_and_exit_codes() {
    let out = permbin(&["check", "--p", "3", "--e", "3", "--r", "23", "--a-exp", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PERMUTATION (construction h=2)"));

    let out = permbin(&["check", "--p", "3", "--e", "3", "--r", "10", "--a-exp", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("NOT ("));

    let out = permbin(&["check", "--p", "3", "--e", "3", "--r", "4", "--a-exp", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("reject: prop43"), "{}", stdout(&out));

    let out = permbin(&[
        "check", "--p", "3", "--m", "1", "--e", "2", "--r", "1", "--a-exp", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("NOT (necessary condition (-a)^ell != 1 fails)"));
}

#[test]
fn check_agrees_with_criterion_everywhere_on_f9() {
    for r in 1..=8 {
        for a in 0..=7 {
            let out = permbin(&[
                "check",
                "--q",
                "9",
                "--e",
                "2",
                "--r",
                &r.to_string(),
                "--a-exp",
                &a.to_string(),
            ]);
            assert!(matches!(out.status.code(), Some(0 | 1)), "r={r} a={a}");
        }
    }
}

#[test]
fn construct_rows() {
    let text = stdout(&permbin(&["construct", "--p", "3", "--e", "5"]));
    let residues: Vec<u64> = text
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().last().unwrap().parse().unwrap())
        .collect();
    assert_eq!(residues, vec![1, 91, 28, 118]);
    let text = stdout(&permbin(&["construct", "--p", "2", "--e", "2"]));
    assert_eq!(text.lines().count(), 3);
    let text = stdout(&permbin(&[
        "construct",
        "--p",
        "3",
        "--e",
        "3",
        "--s-max",
        "1",
    ]));
    assert!(text.contains("h=2: r = 10, 23"), "{text}");
}

#[test]
fn filters_explain_each_check() {
    let text = stdout(&permbin(&["filters", "--p", "3", "--e", "3", "--r", "4"]));
    assert!(text.contains("reject: prop43"), "{text}");
    assert!(
        text.contains("reject: prop45") && text.contains("(h=1)"),
        "{text}"
    );
    let text = stdout(&permbin(&["filters", "--p", "3", "--e", "3", "--r", "10"]));
    assert!(!text.contains("reject"), "{text}");
    let text = stdout(&permbin(&["filters", "--p", "3", "--e", "4", "--r", "4"]));
    assert!(
        text.contains("reject: prop42 (h = 1 not divisible by q+1 = 4)"),
        "{text}"
    );
}

#[test]
fn classify_json_equals_search_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let status = permbin(&[
        "search",
        "--max",
        "30",
        "--jobs",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let lines = fs::read_to_string(&out).unwrap();
    let json = stdout(&permbin(&["classify", "--p", "3", "--e", "3", "--json"]));
    assert!(lines.lines().any(|l| l == json.trim_end()), "{json}");
    let human = stdout(&permbin(&["classify", "--p", "3", "--e", "3"]));
    assert!(human.contains("(1, 0) (23, 0)") && human.contains("matches predicted"));
    let empty = stdout(&permbin(&["classify", "--p", "2", "--e", "3"]));
    assert!(empty.contains("found (0): none"));
}

#[test]
fn search_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let out = out.to_str().unwrap();
    let first = permbin(&[
        "search",
        "--max",
        "27",
        "--jobs",
        "4",
        "--out",
        out,
        "--stop-after",
        "3",
    ]);
    assert_eq!(first.status.code(), Some(0));
    assert!(stdout(&first).contains("incomplete"));
    let second = permbin(&["search", "--max", "27", "--jobs", "4", "--out", out]);
    assert!(stdout(&second).contains("resumed 3"));
    let third = permbin(&["search", "--max", "27", "--jobs", "4", "--out", out]);
    assert_eq!(third.status.code(), Some(0));
    assert!(stdout(&third).contains("all tasks checkpointed"));
    assert_eq!(fs::read_to_string(out).unwrap().lines().count(), 7);
    let ckpt: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{out}.ckpt")).unwrap()).unwrap();
    assert_eq!(ckpt["bound"], 27);
    assert_eq!(ckpt["completed"].as_array().unwrap().len(), 7);
}

#[test]
fn search_below_smallest_field_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.jsonl");
    let result = permbin(&["search", "--max", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("no field tasks"));
}

#[test]
fn verify_paper_list_and_fault() {
    let list = stdout(&permbin(&["verify-paper", "--list"]));
    assert_eq!(list.lines().count(), 14);
    assert!(list.contains("f27-example"));

    let ok = permbin(&[
        "verify-paper",
        "--claim",
        "f27-example",
        "--claim",
        "sn-structure",
    ]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("all claims passed"));

    let bad = permbin(&[
        "verify-paper",
        "--claim",
        "f27-example",
        "--inject-fault",
        "f27-example",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL f27-example"));

    let unknown = permbin(&["verify-paper", "--claim", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}
