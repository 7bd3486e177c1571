// SPDX-License-Identifier: Apache-2.0
use frontend::*;
use std::path::PathBuf;

fn corpus(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(corpus(rel)).unwrap()
}

#[test]
fn wio_listing() {
    let m = parse_module("module WIO: Input: I; Output: O; wait I >> emit O end").unwrap();
    assert_eq!(m.name, "WIO");
    assert_eq!(m.inputs, vec!["I"]);
    assert_eq!(m.outputs, vec!["O"]);
    assert_eq!(m.body, Body::Stmt(Stmt::seq(Stmt::Wait("I".into()), Stmt::Emit("O".into()))));
}

#[test]
fn optional_input_list() {
    let m = parse_module("module M: Output: O; emit O end").unwrap();
    assert!(m.inputs.is_empty());
    assert_eq!(m.body, Body::Stmt(Stmt::Emit("O".into())));
}

#[test]
fn control_listing() {
    let m = parse_module(&read("control/Control.le")).unwrap();
    assert_eq!(m.runs.len(), 2);
    assert_eq!(m.inputs.len(), 5);
    assert_eq!(m.outputs.len(), 5);
    match &m.body {
        Body::Stmt(Stmt::Local(names, _)) => assert_eq!(names, &vec!["start_tempo", "end_tempo"]),
        other => panic!("unexpected body {other:?}"),
    }
}

#[test]
fn corpus_parses_without_diagnostics() {
    for f in [
        "control/Control.le",
        "control/Temporisation.le",
        "control/NormalCycle.le",
        "control/SuctionObs.le",
        "control/System.le",
        "misc/WIO.le",
        "misc/Finalization.le",
        "misc/first.le",
        "misc/second.le",
        "misc/final.le",
    ] {
        for m in parse_file(&read(f)).unwrap() {
            assert_eq!(check_static(&m), vec![], "{f}");
        }
    }
}

#[test]
fn precedence_par_below_seq() {
    let m = parse_module("module M: Output: A, B, C; emit A >> emit B || emit C end").unwrap();
    let a = || Stmt::Emit("A".into());
    let b = || Stmt::Emit("B".into());
    let c = || Stmt::Emit("C".into());
    assert_eq!(m.body, Body::Stmt(Stmt::par(Stmt::seq(a(), b()), c())));
}

#[test]
fn present_branches_are_primaries() {
    let m = parse_module(
        "module M: Input: S; Output: O; present S {nothing} else wait S >> emit O end",
    )
    .unwrap();
    let expect = Stmt::seq(
        Stmt::present(SigExpr::name("S"), Stmt::Nothing, Stmt::Wait("S".into())),
        Stmt::Emit("O".into()),
    );
    assert_eq!(m.body, Body::Stmt(expect));
}

#[test]
fn compound_triggers() {
    let m = parse_module(
        "module M: Input: a, b, c; Output: O; present not a and {b or c} {emit O} else nothing end",
    )
    .unwrap();
    let Body::Stmt(Stmt::Present(e, _, _)) = m.body else { panic!() };
    assert_eq!(
        e,
        SigExpr::and(
            SigExpr::not(SigExpr::name("a")),
            SigExpr::or(SigExpr::name("b"), SigExpr::name("c"))
        )
    );
}

#[test]
fn comments_are_skipped() {
    let m = parse_module(";; head\nmodule M: ;; here\nOutput: O; ;; and here\nemit O\nend ;; tail").unwrap();
    assert_eq!(m.outputs, vec!["O"]);
}

#[test]
fn syntax_error_position() {
    let e = parse_module("module M:\nOutput: O;\nemit O >>\nend").unwrap_err();
    match e {
        FrontendError::Syntax { line, col, .. } => assert_eq!((line, col), (4, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_signal() {
    let e = parse_module("module M: Output: O;\nemit P end").unwrap_err();
    assert_eq!(e, FrontendError::UnknownSignal { line: 2, module: "M".into(), name: "P".into() });
}

#[test]
fn duplicates() {
    assert!(matches!(
        parse_module("module M: Input: A; Output: A; nothing end"),
        Err(FrontendError::Duplicate { .. })
    ));
    assert!(matches!(
        parse_module("module M: Output: A; local A { emit A } end"),
        Err(FrontendError::Duplicate { .. })
    ));
    assert!(matches!(
        parse_file("module M: nothing end module M: halt end"),
        Err(FrontendError::Duplicate { .. })
    ));
}

#[test]
fn instantaneous_loops_rejected() {
    for src in [
        "module M: Output: s; loop {emit s} end",
        "module M: loop {nothing} end",
        "module M: Input: a; Output: s; loop {present a {pause} else {emit s}} end",
        "module M: Output: s; loop {emit s >> emit s} end",
        "module M: Input: a; Output: s; loop {abort {pause} when a} end",
    ] {
        let m = parse_module(src).unwrap();
        let d = check_static(&m);
        assert!(
            d.iter().any(|d| d.severity == Severity::Error && d.msg == "instantaneous loop body"),
            "{src}: {d:?}"
        );
    }
    let m = parse_module("module M: Output: s; loop {emit s >> pause} end").unwrap();
    assert!(check_static(&m).is_empty());
}

#[test]
fn local_never_emitted() {
    let m = parse_module("module M: local s { wait s } end").unwrap();
    let d = check_static(&m);
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].severity, Severity::Warning);
    assert!(d[0].msg.contains("never emitted"));
}

#[test]
fn emitting_an_input_is_an_error() {
    let m = parse_module("module M: Input: I; emit I end").unwrap();
    assert_eq!(check_static(&m)[0].severity, Severity::Error);
}

#[test]
fn tick_is_reserved() {
    let m = parse_module("module M: Input: tick; wait tick end").unwrap();
    assert!(!check_static(&m).is_empty());
}

const AUTO: &str = "module A:
Input: a, b;
Output: o, p;
automaton
  state S1;
  state S2;
  state F final;
transition
  initial / o -> S1;
  S1 a / p -> S2;
  S1 not a and b -> F;
  S2 -> F;
end";

#[test]
fn automaton_syntax() {
    let m = parse_module(AUTO).unwrap();
    let Body::Automaton(a) = &m.body else { panic!() };
    assert_eq!(a.states.len(), 3);
    assert_eq!(a.final_state().unwrap().name, "F");
    assert_eq!(a.transitions.len(), 4);
    assert!(a.transitions[0].initial);
    assert_eq!(a.transitions[0].trigger, None);
    assert_eq!(a.transitions[0].action, vec!["o"]);
    assert_eq!(a.transitions[1].source.as_deref(), Some("S1"));
    assert_eq!(a.transitions[3].trigger, None);
    assert!(check_static(&m).is_empty());
    let again = parse_module(&print_module(&m)).unwrap();
    assert_eq!(again.body, m.body);
}

#[test]
fn nondeterministic_automaton() {
    let src = AUTO.replace("S1 not a and b -> F", "S1 b -> F");
    let m = parse_module(&src).unwrap();
    assert!(check_static(&m).iter().any(|d| d.msg.contains("nondeterministic")));
}

#[test]
fn automaton_structure_errors() {
    let no_final = AUTO.replace("state F final;", "state F;");
    let d = check_static(&parse_module(&no_final).unwrap());
    assert!(d.iter().any(|d| d.msg.contains("exactly one final")));
    let out_of_final = AUTO.replace("S2 -> F;", "S2 -> F;\n  F -> S1;");
    let d = check_static(&parse_module(&out_of_final).unwrap());
    assert!(d.iter().any(|d| d.msg.contains("outgoing")));
    let acted = AUTO.replace("state S2;", "state S2 / o;");
    let d = check_static(&parse_module(&acted).unwrap());
    assert!(d.iter().any(|d| d.severity == Severity::Warning && d.msg.contains("unsupported")));
    assert!(parse_module(&AUTO.replace("S2 -> F", "S2 -> G")).is_err());
}

#[test]
fn corpus_print_round_trip() {
    for f in ["control/NormalCycle.le", "control/SuctionObs.le", "control/Control.le"] {
        let ms = parse_file(&read(f)).unwrap();
        let again = parse_file(&print_file(&ms)).unwrap();
        assert_eq!(ms.len(), again.len());
        for (a, b) in ms.iter().zip(&again) {
            assert_eq!(a.body, b.body, "{f}");
            assert_eq!(a.inputs, b.inputs);
            assert_eq!(a.runs, b.runs);
        }
    }
}
