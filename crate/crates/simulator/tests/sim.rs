// SPDX-License-Identifier: Apache-2.0
use circuitgen::compile_module;
use frontend::parse_module;
use simulator::*;
use std::collections::BTreeMap;
use xi_core::XiValue::{self, *};

fn build(src: &str) -> Simulator {
    let m = parse_module(src).unwrap();
    let sys = compile_module(&m).unwrap().lower();
    let sched = scheduler::schedule(&sys).unwrap();
    Simulator::new(&sys, &sched).unwrap()
}

fn ins(pairs: &[(&str, XiValue)]) -> BTreeMap<String, XiValue> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

const WIO: &str = "module WIO: Input: I; Output: O; wait I >> emit O end";

#[test]
fn wio_waits_one_instant() {
    let sim = build(WIO);
    let tr = sim.run_trace(&[ins(&[("I", Present)]), ins(&[("I", Present)])]).unwrap();
    assert_eq!(tr[0].outputs["O"], Absent);
    assert!(!tr[0].rtl);
    assert_eq!(tr[1].outputs["O"], Present);
    assert!(tr[1].rtl);
    print!("{}", format_trace(&tr));
}

fn bools(v: &BTreeMap<String, bool>) -> BTreeMap<String, XiValue> {
    v.iter().map(|(k, b)| (k.clone(), xi_core::xi_of_bool(*b))).collect()
}

/// Length of the shortest input sequence raising `alarm`, searching every
/// sequence up to `depth` instants.
fn brute_force(sim: &Simulator, alarm: &str, depth: usize) -> Option<usize> {
    let n = sim.inputs.len();
    let mut frontier = vec![sim.initial_state()];
    for d in 1..=depth {
        let mut next = Vec::new();
        for st in &frontier {
            for v in 0..1u32 << n {
                let bits: Vec<bool> = (0..n).map(|k| (v >> (n - 1 - k)) & 1 == 1).collect();
                let (r, s) = sim.step_bits(st, &bits);
                if r.outputs[alarm] == Present {
                    return Some(d);
                }
                next.push(s);
            }
        }
        frontier = next;
    }
    None
}

#[test]
fn immediate_alarm_counterexample() {
    let sim = build("module M: Input: I; Output: ERROR; present I {emit ERROR} else nothing end");
    let v = reach_check(&sim, "ERROR", 100).unwrap();
    let want: BTreeMap<String, bool> = [("I".to_string(), true)].into();
    assert_eq!(v, Verdict::Counterexample { inputs: vec![want] });
}

#[test]
fn never_emitted_is_safe() {
    let sim = build("module M: Input: I; Output: ERROR; loop {wait I} end");
    assert!(matches!(reach_check(&sim, "ERROR", 100).unwrap(), Verdict::Safe { .. }));
    assert!(matches!(reach_check(&sim, "NOPE", 100), Err(SimError::UnknownOutput(_))));
}

#[test]
fn budget_is_reported() {
    let sim = build(
        "module M: Input: I; Output: ERROR; wait I >> wait I >> wait I >> wait I >> emit ERROR end",
    );
    assert!(matches!(reach_check(&sim, "ERROR", 2).unwrap(), Verdict::StateBudgetExceeded { .. }));
}

#[test]
fn reach_agrees_with_brute_force() {
    let programs = [
        "module M: Input: I, J; Output: ERROR; wait I >> wait J >> emit ERROR end",
        "module M: Input: I, J; Output: ERROR; wait I >> present J {emit ERROR} else nothing end",
        "module M: Input: I; Output: ERROR; abort {pause >> pause >> emit ERROR} when I end",
        "module M: Input: I, J; Output: ERROR; {wait I || wait J} >> emit ERROR end",
        "module M: Input: I; Output: ERROR; loop {pause} end",
        "module M: Input: I; Output: ERROR; wait I >> abort {halt} when I >> pause >> emit ERROR end",
    ];
    for p in programs {
        let sim = build(p);
        let depth = brute_force(&sim, "ERROR", 6);
        match reach_check(&sim, "ERROR", 10_000).unwrap() {
            Verdict::Counterexample { inputs } => {
                assert_eq!(Some(inputs.len()), depth, "{p}");
                let seq: Vec<_> = inputs.iter().map(bools).collect();
                let tr = sim.run_trace(&seq).unwrap();
                assert_eq!(tr.last().unwrap().outputs["ERROR"], Present, "{p}");
            }
            Verdict::Safe { .. } => assert_eq!(depth, None, "{p}"),
            v => panic!("{p}: {v:?}"),
        }
    }
}

#[test]
fn step_bits_matches_step() {
    let sim = build("module M: Input: I, J; Output: O; loop {present {I and not J} {emit O} else nothing >> pause} end");
    let mut a = sim.initial_state();
    let mut b = sim.initial_state();
    for v in [3u8, 2, 0, 1, 2] {
        let bits = [v & 2 != 0, v & 1 != 0];
        let m = ins(&[("I", xi_core::xi_of_bool(bits[0])), ("J", xi_core::xi_of_bool(bits[1]))]);
        let (ra, na) = sim.step(&a, &m).unwrap();
        let (rb, nb) = sim.step_bits(&b, &bits);
        assert_eq!(ra, rb);
        assert_eq!(sim.next_state(&a.latches, &bits), na.latches);
        a = na;
        b = nb;
    }
}

#[test]
fn traces_are_deterministic() {
    let sim = build(WIO);
    let seq = vec![ins(&[]), ins(&[("I", Present)]), ins(&[])];
    assert_eq!(sim.run_trace(&seq).unwrap(), sim.run_trace(&seq).unwrap());
    assert!(sim.run_trace(&[]).unwrap().is_empty());
    assert_eq!(format_trace(&[]), "");
}

#[test]
fn unknown_inputs_are_rejected() {
    let sim = build(WIO);
    let r = sim.step(&sim.initial_state(), &ins(&[("Q", Present)]));
    assert!(matches!(r, Err(SimError::UnknownInput(q)) if q == "Q"));
}

#[test]
fn trace_line_format() {
    let sim = build(WIO);
    let tr = sim.run_trace(&[ins(&[])]).unwrap();
    let line = format_step(&tr[0]);
    assert!(line.starts_with("t=0 in{I=0} out{O=0} regs{"), "{line}");
    assert!(line.contains("ctl.boot=1"), "{line}");
}

#[test]
fn input_lines() {
    let m = parse_inputs_line("I J=0, K=_ # note").unwrap();
    assert_eq!(m["I"], Present);
    assert_eq!(m["J"], Absent);
    assert_eq!(m["K"], Bottom);
    assert!(parse_inputs_line("").unwrap().is_empty());
    assert!(parse_inputs_line("I=7").is_err());
    assert!(parse_inputs_line("=1").is_err());
}

#[test]
fn signal_names() {
    assert_eq!(signal_name("WIO_1.n5.O"), "O");
    assert_eq!(signal_name("L1@3"), "L1");
    assert_eq!(signal_name("O~2"), "O");
    assert_eq!(signal_name("a"), "a");
}
