use std::io::Write;
use std::process::{Command, Output, Stdio};

const SAMPLE_BRAID: &str = "-n 5 4 3 3 -4 -2 -1 -1 -2 -1 -1 2 1 1 -2";

fn bforder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bforder"))
        .args(args)
        .env_remove("BFORDER_DEVIATION_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = bforder(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o).trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    bforder(args).status.code().unwrap()
}

#[test]
fn sign_examples() {
    assert_eq!(
        ok(&["sign", SAMPLE_BRAID]),
        "positive, decided by f2 = A(3,5)"
    );
    assert_eq!(ok(&["sign", "-n 3"]), "zero");
    assert!(ok(&["sign", "1"]).starts_with("positive"));
    assert!(ok(&["sign", "2 1 -2 -1"]).starts_with("negative"));
    assert_eq!(
        ok(&["sign", "(.(..)) ((..).)"]),
        "negative, decided by F slope at leaf 1 (slope 2^-1)"
    );
    assert_eq!(ok(&["sign", "n: 1 minus: . braid: plus: ."]), "zero");
}

#[test]
fn compare_examples() {
    let x = "n: 2 minus: (..) braid: 1 1 plus: (..)";
    let id = "n: 1 minus: . braid: plus: .";
    assert_eq!(ok(&["compare", x, x]), "=");
    assert!(ok(&["compare", id, x]).starts_with('<'));
    assert!(ok(&["compare", x, id]).starts_with('>'));
    // f1 is the A(2,3) layer, so it decides first
    assert_eq!(
        ok(&["compare", "-n 3 1 1", "-n 3 2 2"]),
        "< decided by f1 = A(2,3)"
    );
    assert_eq!(
        ok(&["compare", "-n 3 2 2", "-n 3 1 1"]),
        "> decided by f1 = A(2,3)^-1"
    );
}

#[test]
fn comb_examples() {
    let out = ok(&["comb", SAMPLE_BRAID, "--verify"]);
    assert_eq!(
        out,
        "f1: 1\nf2: A(3,5)^1\nf3: A(2,3)^-1\nf4: A(1,3)^-1 A(1,2)^-1 A(1,3)^1\nround-trip: ok"
    );
    assert_eq!(ok(&["comb", "-n 3"]), "f1: 1\nf2: 1");
}

#[test]
fn arithmetic_and_surgery() {
    assert_eq!(
        ok(&["magnus", "\u{2212}1", "--cap", "3"]),
        "1 \u{2212}X1 +X1X1 \u{2212}X1X1X1"
    );
    assert_eq!(ok(&["double", "-n 2 1 1", "1"]), "-n 3 2 1 1 2");
    assert_eq!(ok(&["delete", "-n 3 2 2", "1"]), "-n 2 1 1");
    assert_eq!(ok(&["catalan", "5"]), "14");
    assert_eq!(ok(&["mul", "-n 3 1", "-n 3 -1 2"]), "-n 3 2");
    assert_eq!(ok(&["inv", "1 -2"]), "2 -1");
    assert_eq!(ok(&["mul", "(.(..)) ((..).)", "((..).) (.(..))"]), ". .");
    let product = ok(&[
        "mul",
        "(.(..)) ((..).)",
        "n: 2 minus: (..) braid: 1 1 plus: (..)",
    ]);
    assert_eq!(
        product,
        "n: 3\nminus: (.(..))\nbraid: 2 1 1 2\nplus: ((..).)"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["sign", "-n 3 1"]), 3);
    assert_eq!(code(&["comb", "-n 2 1"]), 3);
    assert_eq!(code(&["sign", "-n 3 x"]), 2);
    assert_eq!(code(&["sign", "(.)"]), 2);
    assert_eq!(code(&["double", "-n 2 1", "5"]), 2);
    assert_eq!(code(&["magnus", "-n 2 1"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["fuzz", "--max-strands", "0"]), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_bforder"))
        .args(["sign", "1"])
        .env("BFORDER_DEVIATION_CEILING", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn deviation_ceiling_is_honoured() {
    // [x1,x2] has deviation degree 2; a ceiling of 1 cannot see it
    let w = "-1 -2 1 2";
    assert_eq!(
        ok(&["sign", w]),
        "positive, decided by coefficient 1 of X1X2 in degree 2"
    );
    let o = Command::new(env!("CARGO_BIN_EXE_bforder"))
        .args(["sign", w])
        .env("BFORDER_DEVIATION_CEILING", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("BFORDER_DEVIATION_CEILING"));
}

#[test]
fn inputs_from_files_and_stdin() {
    let dir = std::env::temp_dir().join(format!("bforder-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("x.bv");
    std::fs::write(&path, "n: 3\nminus: ((..).)\nbraid: 1 1\nplus: ((..).)\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["sign", p]), "positive, decided by f2 = A(1,2)");
    assert_eq!(
        ok(&["inv", p]),
        "n: 3\nminus: ((..).)\nbraid: -1 -1\nplus: ((..).)"
    );
    std::fs::remove_dir_all(&dir).unwrap();

    let mut child = Command::new(env!("CARGO_BIN_EXE_bforder"))
        .args(["sign", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(SAMPLE_BRAID.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o).trim_end(), "positive, decided by f2 = A(3,5)");
}

#[test]
fn fuzz_is_deterministic_and_green() {
    let args = ["fuzz", "--seed", "11", "--cases", "100"];
    let first = ok(&args);
    assert_eq!(first, ok(&args));
    assert!(first.ends_with("violations: 0"), "{first}");
    assert_ne!(
        first,
        ok(&[
            "fuzz",
            "--seed",
            "12",
            "--cases",
            "100",
            "--max-leaves",
            "5"
        ])
    );
}

#[test]
fn corrupted_sign_fails_the_fuzz() {
    let o = bforder(&["fuzz", "--cases", "100", "--corrupt-sign"]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report.contains("minimized counterexample"), "{report}");
    assert_eq!(
        report,
        stdout(&bforder(&["fuzz", "--cases", "100", "--corrupt-sign"]))
    );
}
