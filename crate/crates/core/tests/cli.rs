use std::io::Write;
use std::process::{Command, Output, Stdio};

fn thompson(args: &[&str], stdin: &str) -> Output {
    thompson_env(args, stdin, &[])
}

fn thompson_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_thompson"));
    cmd.args(args)
        .env_remove("THOMPSON_CLI_COLOR")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let o = thompson(args, stdin);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn gamma_pipes_into_rotation() {
    let g = ok(&["el", "gamma", "3"], "");
    assert_eq!(
        g,
        "{\"bp\":[[\"0\",\"1/2\"],[\"1/2\",\"3/4\"],[\"3/4\",\"1\"]]}\n"
    );
    assert_eq!(ok(&["dyn", "rot", "-"], &g), "1/3\n");
    assert_eq!(
        ok(&["--json", "dyn", "rot", "-"], &g),
        "{\"rotation\":\"1/3\"}\n"
    );
}

#[test]
fn rank_commands() {
    assert_eq!(ok(&["kth", "wh", "5"], ""), "1\n");
    assert_eq!(ok(&["kth", "theta", "6", "1"], ""), "0\n");
    assert_eq!(
        ok(&["kth", "growth", "10"], ""),
        "0 0 1 4 11 26 57 120 247 502\n"
    );
    assert_eq!(ok(&["kth", "morphisms", "2", "4"], ""), "1\n");
    assert_eq!(
        ok(&["--json", "kth", "fj", "2", "--kmax", "1"], ""),
        "{\"n\":2,\"k_max\":1,\"t_min\":0,\"rows\":[{\"k\":1,\"s\":2,\"t\":0,\"dim\":2}],\"total\":2}\n"
    );
    assert!(ok(&["kth", "fj", "0", "--kmax", "6"], "").ends_with("total: 6\n"));
}

#[test]
fn element_output_is_accepted_unchanged() {
    let g = ok(&["el", "random", "--seed", "7", "--complexity", "3"], "");
    assert_eq!(ok(&["el", "pow", "-", "1"], &g), g);
    assert_eq!(ok(&["el", "inv", "-"], &ok(&["el", "inv", "-"], &g)), g);
    let square = ok(&["el", "pow", "-", "2"], &g);
    assert_eq!(
        ok(&["el", "inv", "-"], &square),
        ok(&["el", "pow", "-", "-2"], &g)
    );
}

#[test]
fn conjugator_and_centralizer_pipeline() {
    let dir = std::env::temp_dir().join(format!("thompson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let write = |name: &str, text: &str| std::fs::write(dir.join(name), text).unwrap();

    write("g2", &ok(&["el", "gamma", "2"], ""));
    write("g3", &ok(&["el", "gamma", "3"], ""));
    write(
        "w",
        &ok(&["el", "random", "--seed", "3", "--complexity", "2"], ""),
    );
    let conj = ok(&["el", "compose", &path("w"), &path("g3")], "");
    write("wg", &conj);
    write("winv", &ok(&["el", "inv", &path("w")], ""));
    write("c", &ok(&["el", "compose", &path("wg"), &path("winv")], ""));
    assert_eq!(ok(&["dyn", "order", &path("c")], ""), "3\n");

    let h = ok(&["conj", "to-gamma", &path("c")], "");
    write("h", &h);
    write("hinv", &ok(&["el", "inv", &path("h")], ""));
    write("hc", &ok(&["el", "compose", &path("h"), &path("c")], ""));
    write(
        "hchinv",
        &ok(&["el", "compose", &path("hc"), &path("hinv")], ""),
    );
    assert_eq!(
        ok(&["el", "eq", &path("hchinv"), &path("g3")], ""),
        "true\n"
    );

    assert_eq!(
        ok(&["cent", "ctx", &path("g2")], ""),
        "p: 1\nq: 2\ns: 1\na: 1/2\n"
    );
    let lifted = ok(&["cent", "lift", &path("g2"), &path("g3")], "");
    write("s3", &lifted);
    assert_eq!(
        ok(&["cent", "check", &path("g2"), &path("s3")], ""),
        "true\n"
    );
    assert_eq!(
        ok(&["cent", "check", &path("g2"), &path("g3")], ""),
        "false\n"
    );
    assert_eq!(
        ok(&["cent", "pi", &path("g2"), &path("s3")], ""),
        ok(&["el", "gamma", "3"], "")
    );
    assert_eq!(ok(&["dyn", "rot", &path("s3")], ""), "1/6\n");
    let k = ok(
        &["cent", "defect", &path("g2"), &path("g3"), &path("g3")],
        "",
    );
    assert!(k == "0\n" || k == "1\n");
    assert_eq!(
        thompson(&["cent", "pi", &path("g2"), &path("g3")], "")
            .status
            .code(),
        Some(2)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| thompson(args, stdin).status.code();
    assert_eq!(code(&["el", "eval", "nonexistent.json", "0"], ""), Some(3));
    assert_eq!(code(&["el", "inv", "-"], "not json"), Some(3));
    assert_eq!(code(&["el", "inv", "-"], r#"{"bp":[["0","x"]]}"#), Some(3));
    assert_eq!(
        code(&["el", "inv", "-"], r#"{"bp":[["0","1/3"]]}"#),
        Some(1)
    );
    assert_eq!(
        code(&["el", "inv", "-"], r#"{"bp":[["0","0"],["1/2","3/8"]]}"#),
        Some(1)
    );
    let f = r#"{"bp":[["0","0"],["1/2","1/4"],["3/4","1/2"]]}"#;
    assert_eq!(code(&["conj", "to-gamma", "-"], f), Some(2));
    assert_eq!(code(&["dyn", "order", "-"], f), Some(0));
    assert_eq!(ok(&["dyn", "order", "-"], f), "infinite\n");
    assert_eq!(code(&["kth", "wh", "five"], ""), Some(3));
    assert_eq!(code(&["nope"], ""), Some(3));
    assert_eq!(code(&["--help"], ""), Some(0));
    assert_eq!(code(&["--version"], ""), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["el", "random", "--seed", "99", "--complexity", "4"];
    assert_eq!(ok(&args, ""), ok(&args, ""));
    let table = ["kth", "fj", "5", "--kmax", "24"];
    assert_eq!(ok(&table, ""), ok(&table, ""));
}

#[test]
fn color_only_decorates_human_text() {
    let color = [("THOMPSON_CLI_COLOR", "1")];
    let g = ok(&["el", "gamma", "2"], "");
    let plain = thompson_env(&["cent", "ctx", "-"], &g, &[]);
    let fancy = thompson_env(&["cent", "ctx", "-"], &g, &color);
    assert!(!stdout(&plain).contains('\x1b'));
    assert!(stdout(&fancy).contains('\x1b'));
    let json = thompson_env(&["--json", "cent", "ctx", "-"], &g, &color);
    assert_eq!(stdout(&json), "{\"a\":\"1/2\",\"p\":1,\"q\":2,\"s\":1}\n");
    let element = thompson_env(&["el", "gamma", "2"], "", &color);
    assert_eq!(stdout(&element), g);
}
