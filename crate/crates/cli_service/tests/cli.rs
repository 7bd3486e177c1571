// SPDX-License-Identifier: Apache-2.0
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn le(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_le")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn copy_misc(dir: &Path, names: &[&str]) {
    for n in names {
        std::fs::copy(corpus(&format!("misc/{n}")), dir.join(n)).unwrap();
    }
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("bad.le"), "module M: emit end").unwrap();
    std::fs::write(d.path().join("undecl.le"), "module M: Output: O; emit Q end").unwrap();
    copy_misc(d.path(), &["Cycle.le"]);
    assert_eq!(le(d.path(), &["compile", "bad.le"]).status.code(), Some(1));
    assert_eq!(le(d.path(), &["compile", "undecl.le"]).status.code(), Some(2));
    let c = le(d.path(), &["compile", "Cycle.le"]);
    assert_eq!(c.status.code(), Some(3));
    let e = stderr(&c);
    assert!(e.contains('a') && e.contains('b'), "{e}");
    assert_eq!(le(d.path(), &["compile", "missing.le"]).status.code(), Some(4));
}

#[test]
fn json_errors() {
    let d = tempfile::tempdir().unwrap();
    copy_misc(d.path(), &["Cycle.le"]);
    let o = le(d.path(), &["--json", "compile", "Cycle.le"]);
    assert_eq!(o.status.code(), Some(3));
    let text = if o.stdout.is_empty() { stderr(&o) } else { stdout(&o) };
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "cycle");
    let sig: Vec<&str> = v["error"]["signals"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(sig.contains(&"a") && sig.contains(&"b"), "{sig:?}");
}

#[test]
fn compile_link_finalize_simulate() {
    let d = tempfile::tempdir().unwrap();
    copy_misc(d.path(), &["first.le", "second.le", "final.le", "Finalization.le"]);
    for f in ["first.le", "second.le"] {
        let o = le(d.path(), &["compile", f]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let o = le(d.path(), &["--json", "compile", "final.le", "-o", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["ok"], true);
    assert!(d.path().join("out/final.lec").is_file());

    let o = le(d.path(), &["compile", "--no-link", "final.le", "-o", "nl"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = le(d.path(), &["link", "nl/final.lec", "first.lec", "second.lec", "-o", "linked.lec"]);
    assert!(o.status.success(), "{}", stderr(&o));

    std::fs::write(d.path().join("in.txt"), "# header\nI\n\nI\n").unwrap();
    let a = le(d.path(), &["simulate", "linked.lec", "--inputs", "in.txt"]);
    let b = le(d.path(), &["simulate", "out/final.lec", "--inputs", "in.txt"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a).lines().count(), 3);
    let outs = |s: String| s.lines().map(|l| l.split(" regs").next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(outs(stdout(&a)), outs(stdout(&b)));

    let o = le(d.path(), &["compile", "Finalization.le"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = le(d.path(), &["finalize", "Finalization.lec", "--canon", "anf"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let blif = std::fs::read_to_string(d.path().join("Finalization.blif")).unwrap();
    assert!(blif.contains(".names I_val O1_val\n1 1\n"), "{blif}");
    let fin = std::fs::read_to_string(d.path().join("Finalization.final.lec")).unwrap();
    assert!(fin.starts_with(".lec 1\n.model Finalization\n"), "{fin}");
    assert_eq!(le(d.path(), &["finalize", "Finalization.lec", "--canon", "zdd"]).status.code(), Some(2));
}

#[test]
fn empty_input_file_gives_empty_trace() {
    let d = tempfile::tempdir().unwrap();
    copy_misc(d.path(), &["WIO.le"]);
    std::fs::write(d.path().join("none.txt"), "").unwrap();
    let o = le(d.path(), &["simulate", "WIO.le", "--inputs", "none.txt"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn interpret_engines_agree() {
    let d = tempfile::tempdir().unwrap();
    copy_misc(d.path(), &["WIO.le"]);
    std::fs::write(d.path().join("in.txt"), "\nI\nI\n").unwrap();
    let b = le(d.path(), &["interpret", "WIO.le", "--inputs", "in.txt", "--engine", "behavioral"]);
    let e = le(d.path(), &["interpret", "WIO.le", "--inputs", "in.txt", "--engine", "equational"]);
    assert!(b.status.success() && e.status.success(), "{}{}", stderr(&b), stderr(&e));
    assert_eq!(stdout(&b), stdout(&e));
    assert!(stdout(&b).contains("O=1"), "{}", stdout(&b));
    assert_eq!(stdout(&b).lines().count(), 2);
    assert_eq!(le(d.path(), &["interpret", "WIO.le", "--engine", "magic"]).status.code(), Some(2));
}

#[test]
fn check_verdicts() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("bad.le"), "module M: Input: I; Output: ERROR; present I {emit ERROR} else nothing end").unwrap();
    std::fs::write(d.path().join("good.le"), "module M: Input: I; Output: ERROR; loop {pause} end").unwrap();
    let o = le(d.path(), &["check", "bad.le"]);
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));
    assert!(stdout(&o).contains('I'), "{}", stdout(&o));
    let o = le(d.path(), &["check", "good.le"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = le(d.path(), &["check", "good.le", "--alarm", "NOPE"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn config_file_search_paths() {
    let d = tempfile::tempdir().unwrap();
    std::fs::create_dir(d.path().join("lib")).unwrap();
    copy_misc(d.path(), &["first.le", "second.le"]);
    for f in ["first.le", "second.le"] {
        assert!(le(d.path(), &["compile", f, "-o", "lib"]).status.success());
    }
    std::fs::create_dir(d.path().join("top")).unwrap();
    std::fs::copy(corpus("misc/final.le"), d.path().join("top/final.le")).unwrap();
    std::fs::write(d.path().join("le.toml"), "search_paths = [\"lib\"]\n").unwrap();
    let o = le(d.path(), &["--json", "compile", "top/final.le", "-o", "top"]);
    assert!(o.status.success(), "{}", stderr(&o));
    std::fs::write(d.path().join("le.toml"), "bogus = 1\n").unwrap();
    assert_ne!(le(d.path(), &["compile", "top/final.le"]).status.code(), Some(0));
}
