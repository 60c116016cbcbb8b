use std::io::Write;
use std::process::{Command, Output, Stdio};

fn conres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conres"))
        .args(args)
        .env_remove("CONRES_SEARCH_BOUND")
        .output()
        .expect("spawn conres")
}

fn conres_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_conres"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn conres");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

const QUARTIC: &str = "P_mH = 1 + t^3*(uv)^-2 + t^5*(uv)^-3 + t^7*(uv)^-4 + t^8*(uv)^-5 + t^10*(uv)^-6 + t^12*(uv)^-7 + t^13*(uv)^-8 + t^14*(uv)^-8 + t^15*(uv)^-9";

#[test]
fn ring_commands() {
    let o = conres(&["ring", "dims", "--preset", "pair-n2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1 2 2 1");
    assert_eq!(
        stdout(&conres(&["ring", "nf", "--preset", "pair-n2", "a2^2"])).trim(),
        "-a1^2 - a1*a2"
    );
    assert_eq!(
        stdout(&conres(&["ring", "nf", "--preset", "pair-n2", "0"])).trim(),
        "0"
    );
}

#[test]
fn ring_from_presentation_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cp1.json");
    std::fs::write(
        &path,
        r#"{"generators":[{"name":"a","degree":2}],"relations":["a^2"],"top_degree":2}"#,
    )
    .unwrap();
    let o = conres(&["ring", "dims", "--presentation", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "1 1");
}

#[test]
fn chern_commands() {
    let o = conres(&["chern", "theta", "--d", "4", "--n", "2", "--check"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("routes agree"));
    assert!(s.contains("pulled back: 1 - 12*ax - 2*ay"), "{s}");
    let o = conres(&["chern", "theta", "--d", "1", "--n", "2", "--check"]);
    assert_eq!(stdout(&o).lines().next(), Some("routes agree"));
    let s = stdout(&conres(&["chern", "xi-eta"]));
    assert!(s.lines().any(|l| l == "c1(xi'/eta') = 2*a1 + 2*a2"), "{s}");
}

#[test]
fn chern_eval_bundle_json() {
    let input = r#"{"ring":{"preset":"pair-n2"},
        "expr":{"inverse_from_exact_sequence":{"trivial_rank":6,"quotients":["2a1","2a2"]}}}"#;
    let o = conres(&["chern", "eval", input]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "rank 4\nc = 1 - 2*a1 - 2*a2\n");
}

#[test]
fn space_eval_expression() {
    let o = conres(&["space", "eval", r#"{"open_cone":{"projective_space":1}}"#]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "{(3,1):1}");
}

#[test]
fn ss_presets() {
    let o = conres(&["ss", "infer", "--preset", "lastcolq"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().next(),
        Some("forced nonzero: d1(2,1) d1(2,3) d1(3,5)")
    );
    let s = stdout(&conres(&["ss", "run", "--preset", "quartic-e1"]));
    assert!(s.starts_with("survivors:\n"));
    assert_eq!(s.lines().filter(|l| l.starts_with("  (")).count(), 9);
    assert!(s.contains("  (6,10):Q(7)"));
}

#[test]
fn ss_run_empty_page() {
    let o = conres_stdin(&["ss", "run", "-"], r#"{"page": []}"#);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("survivors: none"));
}

#[test]
fn json_output_round_trips() {
    for args in [
        vec!["ss", "run", "--preset", "quartic-e1"],
        vec!["ss", "infer", "--preset", "lastcolq"],
    ] {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let first = stdout(&conres(&a));
        let sub = &args[..2];
        let mut b: Vec<&str> = sub.to_vec();
        b.extend(["-", "--format", "json"]);
        let second = conres_stdin(&b, &first);
        assert_eq!(
            code(&second),
            0,
            "{}",
            String::from_utf8_lossy(&second.stderr)
        );
        assert_eq!(stdout(&second), first);
    }
}

#[test]
fn case_runs() {
    let o = conres(&["case", "run", "quartic-p2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    let tail: Vec<&str> = s.lines().rev().take(2).collect();
    assert_eq!(tail, vec!["MATCH", QUARTIC]);

    let o = conres(&["case", "run", "cubic-p2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("MATCH"));

    let o = conres(&["case", "run", "cubic-p3"]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout(&o).lines().last(), Some("incomplete reference"));
}

#[test]
fn case_stage_and_list() {
    let s = stdout(&conres(&["case", "run", "quartic-p2", "--stage", "c"]));
    assert!(s.starts_with("[c] inference: pass"), "{s}");
    assert!(s.contains("stored facts confirmed by inference: 8 of 8"));
    let s = stdout(&conres(&["case", "list"]));
    assert_eq!(s.lines().count(), 3);
    assert_eq!(
        code(&conres(&["case", "run", "quartic-p2", "--stage", "z"])),
        2
    );
}

#[test]
fn exported_case_runs_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quartic.json");
    let o = conres(&[
        "case",
        "export",
        "quartic-p2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let o = conres(&["case", "run", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), stdout(&conres(&["case", "run", "quartic-p2"])));
}

#[test]
fn corrupted_case_reports_mismatch_or_schema() {
    let dir = tempfile::tempdir().unwrap();
    let json = stdout(&conres(&["case", "export", "cubic-p2"]));
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();

    v["expected"] = "1 + t^3*(uv)^-2".into();
    let path = dir.path().join("wrong.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = conres(&["case", "run", path.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout(&o).lines().last(), Some("MISMATCH"));

    v["columns"][2]["d"] = "three".into();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = conres(&["case", "run", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("/columns/2/d"));
}

#[test]
fn hodge_commands() {
    let p = "1 + t^3*(uv)^-2 + t^5*(uv)^-3 + t^7*(uv)^-4 + t^8*(uv)^-5 + t^10*(uv)^-6 + t^12*(uv)^-7 + t^13*(uv)^-8 + t^14*(uv)^-8 + t^15*(uv)^-9";
    let m = "1 + t^2*(uv)^-1 + t^4*(uv)^-2 + t^6*(uv)^-3";
    let o = conres(&["hodge", "divide", p, m]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "not divisible; obstruction t^2*(uv)^-1");
    assert_eq!(
        stdout(&conres(&["hodge", "specialize", "--mode", "euler", p])).trim(),
        "0"
    );
    let o = conres(&[
        "hodge",
        "dualize",
        "--ambient-dim",
        "10",
        r#"[{"degree":16,"twist":8,"dim":1}]"#,
    ]);
    assert_eq!(stdout(&o).trim(), "1 + t^3*(uv)^-2");
    assert_eq!(code(&conres(&["hodge", "specialize", "t^"])), 2);
}

#[test]
fn strata_validate_exit_codes() {
    let o = conres(&[
        "strata",
        "validate",
        "--preset",
        "singular-cubics",
        "--level",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let o = conres(&[
        "strata",
        "validate",
        "--preset",
        "singular-cubics",
        "--level",
        "5+",
    ]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("three points on a line"));
    let o = conres(&["strata", "validate", "--preset", "quartic", "--table"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("geometrization table: 10 rows, 0 violations"));
}

#[test]
fn search_bound_from_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_conres"))
        .args(["ss", "infer", "--preset", "lastcolq"])
        .env("CONRES_SEARCH_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}

#[test]
fn missing_input_is_schema_error() {
    let o = conres(&["space", "eval", "/nonexistent/file.json"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

/// Full reports are pinned; regenerate with `UPDATE_GOLDEN=1`.
#[test]
fn golden_case_reports() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in [
        ("case_quartic_p2.txt", vec!["case", "run", "quartic-p2"]),
        ("case_cubic_p2.txt", vec!["case", "run", "cubic-p2"]),
        ("case_cubic_p3.txt", vec!["case", "run", "cubic-p3"]),
        (
            "ss_infer_lastcolq.json",
            vec!["ss", "infer", "--preset", "lastcolq", "--format", "json"],
        ),
    ] {
        let got = stdout(&conres(&args));
        let path = dir.join(name);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(got, want, "{name} drifted");
    }
}
