//! End-to-end tests of the `opst` binary: real process spawns, byte-exact
//! output, grep-style exit codes.

use std::io::Write as _;
use std::process::{Command, Stdio};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn opst(args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_opst"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn opst");
    // A usage error exits before stdin is read; the broken pipe is fine.
    let _ = child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes());
    let out = child.wait_with_output().expect("wait for opst");
    Run {
        code: out.status.code().expect("no exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data_file(dir: &tempfile::TempDir, content: &str) -> String {
    let path = dir.path().join("input.txt");
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn code_prints_code_and_shape() {
    let r = opst(&["code"], Some("5 2 7 5 1 4 9 4 5\n"));
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(
        r.stdout,
        "(0,0)(0,0)(2,0)(1,1)(0,0)(2,0)(6,0)(2,1)(4,2)\n3 1 4 3 0 2 5 2 3\n"
    );
}

#[test]
fn code_accepts_commas_comments_and_many_sequences() {
    let dir = tempfile::tempdir().unwrap();
    let f = data_file(&dir, "# two sequences\n1,2, 3\n\n3 1 2\n");
    let r = opst(&["code", &f], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "(0,0)(1,0)(2,0)\n0 1 2\n(0,0)(0,0)(1,0)\n2 0 1\n");
}

#[test]
fn code_of_empty_input_is_empty() {
    let r = opst(&["code"], Some("# nothing but comments\n\n"));
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "");
}

#[test]
fn match_prints_ascending_positions() {
    let r = opst(&["match", "-", "1 2 3"], Some("6 8 2 0 7 9 3 1 4 5\n"));
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "4\n8\n");
}

#[test]
fn match_exits_one_on_no_occurrence() {
    let r = opst(&["match", "-", "1 3 2"], Some("6 8 2 0 7 9 3 1 4 5\n"));
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "");
    assert_eq!(r.stderr, "");
}

#[test]
fn match_json_object() {
    let r = opst(
        &["match", "-", "1,2,3", "--json"],
        Some("6 8 2 0 7 9 3 1 4 5\n"),
    );
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "{\"occurrences\":[4,8],\"pattern_len\":3}\n");
}

#[test]
fn match_overlong_pattern_finds_nothing() {
    let r = opst(&["match", "-", "1 2 3 4"], Some("5 6\n"));
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "");
}

#[test]
fn match_rejects_bad_pattern() {
    let r = opst(&["match", "-", "1 two 3"], Some("1 2 3\n"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("pattern"), "stderr: {}", r.stderr);
    assert!(r.stderr.contains("bad integer"), "stderr: {}", r.stderr);
}

#[test]
fn text_commands_want_exactly_one_sequence() {
    let r = opst(&["match", "-", "1 2"], Some("1 2 3\n4 5 6\n"));
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("exactly one sequence"),
        "stderr: {}",
        r.stderr
    );
    assert!(r.stderr.contains("lines 1 and 2"), "stderr: {}", r.stderr);

    let r = opst(&["stats", "-"], Some("# empty\n"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("no sequence"), "stderr: {}", r.stderr);
}

#[test]
fn squares_all_lists_shortest_first() {
    let dir = tempfile::tempdir().unwrap();
    let f = data_file(&dir, "1 2 1 2\n");
    let r = opst(&["squares", &f, "--all"], None);
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "1 2\n2 2\n3 2\n1 4\n");
}

#[test]
fn squares_all_exits_one_when_square_free() {
    let r = opst(&["squares", "-", "--all"], Some("7\n"));
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "");
}

#[test]
fn squares_length_answers_yes_no() {
    let yes = opst(&["squares", "-", "--length", "4"], Some("1 2 1 2\n"));
    assert_eq!((yes.code, yes.stdout.as_str()), (0, "yes\n"));
    let no = opst(&["squares", "-", "--length", "6"], Some("1 2 1 2\n"));
    assert_eq!((no.code, no.stdout.as_str()), (1, "no\n"));
    let no2 = opst(&["squares", "-", "--length", "4"], Some("1 2 3 1\n"));
    assert_eq!((no2.code, no2.stdout.as_str()), (1, "no\n"));
}

#[test]
fn squares_length_must_be_even_and_positive() {
    for bad in ["3", "0"] {
        let r = opst(&["squares", "-", "--length", bad], Some("1 2 1 2\n"));
        assert_eq!(r.code, 2, "--length {bad}");
        assert!(r.stderr.contains("even"), "stderr: {}", r.stderr);
        assert_eq!(r.stdout, "");
    }
}

#[test]
fn squares_needs_exactly_one_mode() {
    let neither = opst(&["squares", "-"], Some("1 2 1 2\n"));
    assert_eq!(neither.code, 2);
    let both = opst(&["squares", "-", "--all", "--length", "4"], Some("1 2 1 2\n"));
    assert_eq!(both.code, 2);
}

#[test]
fn stats_summary() {
    let r = opst(&["stats", "-"], Some("7\n"));
    assert_eq!(r.code, 0);
    assert!(
        r.stdout
            .starts_with("n=1\nnodes=2\ninternal=1\nleaves=1\nmax_depth=1\n"),
        "stdout: {}",
        r.stdout
    );
    assert!(r.stdout.contains("oracle_calls="), "stdout: {}", r.stdout);

    let r = opst(&["stats", "-"], Some("6 8 2 0 7 9 3 1 4 5\n"));
    assert!(r.stdout.contains("n=10\n"));
    assert!(r.stdout.contains("leaves=10\n"));
}

#[test]
fn parse_errors_name_the_line() {
    let r = opst(&["code"], Some("1 2 3\n\n# comment\n4 x 6\n"));
    assert_eq!(r.code, 2);
    assert_eq!(r.stdout, "", "no partial output before the error");
    assert!(r.stderr.contains("line 4"), "stderr: {}", r.stderr);
    assert!(r.stderr.contains("bad integer \"x\""), "stderr: {}", r.stderr);
}

#[test]
fn missing_file_is_an_input_error() {
    let r = opst(&["stats", "/nonexistent/opst-input.txt"], None);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("reading"), "stderr: {}", r.stderr);
}

#[test]
fn negative_values_are_fine() {
    let r = opst(&["match", "-", "-5, -1"], Some("-10 -3 4 -9 0\n"));
    assert_eq!(r.code, 0, "stderr: {}", r.stderr);
    assert_eq!(r.stdout, "1\n2\n4\n");
}
