// SPDX-License-Identifier: Apache-2.0
use circuitgen::{compile_module, BoolExpr, BooleanSystem};
use finalize::*;
use frontend::parse_module;
use proptest::prelude::*;
use simulator::Simulator;
use std::collections::BTreeMap;
use xi_core::XiValue;

fn lowered(src: &str) -> BooleanSystem {
    compile_module(&parse_module(src).unwrap()).unwrap().lower()
}

const FINALIZATION: &str =
    "module Finalization: Input: I; Output: O1, O2; loop { present I {emit O1} else {emit O2} >> pause } end";

fn v(n: &str) -> BoolExpr {
    BoolExpr::var(n)
}

#[test]
fn finalization_example_reduces_to_input() {
    for c in canonicalizers() {
        let (f, _) = finalize(&lowered(FINALIZATION), c.as_ref());
        assert_eq!(f.equations["O1_def"], BoolExpr::Const(true), "{}", c.name());
        assert_eq!(f.equations["O1_val"], v("I_val"), "{}", c.name());
        assert_eq!(f.equations["O2_def"], BoolExpr::Const(true), "{}", c.name());
        assert_eq!(f.equations["O2_val"], BoolExpr::not(v("I_val")), "{}", c.name());
        assert!(f.is_finalized());
    }
}

#[test]
fn finalize_is_idempotent() {
    let srcs = [
        FINALIZATION,
        "module WIO: Input: I; Output: O; wait I >> emit O end",
        "module P: Input: A, B; Output: O; loop { abort { loop { emit O >> pause } } when A >> wait B } end",
    ];
    for src in srcs {
        for c in canonicalizers() {
            let (f1, s1) = finalize(&lowered(src), c.as_ref());
            let (f2, s2) = finalize(&f1, c.as_ref());
            assert_eq!(f1, f2, "{} on {src}", c.name());
            assert_eq!(s1, s2);
        }
    }
}

#[test]
fn no_inputs_is_identity_up_to_simplification() {
    let sys = lowered("module E: Output: O; emit O >> pause >> emit O end");
    let (f, sched) = finalize(&sys, &Bdd);
    let a = Simulator::new(&sys, &scheduler::schedule(&sys).unwrap()).unwrap();
    let b = Simulator::new(&f, &sched).unwrap();
    let seq = vec![BTreeMap::new(); 4];
    let (ta, tb) = (a.run_trace(&seq).unwrap(), b.run_trace(&seq).unwrap());
    for (x, y) in ta.iter().zip(&tb) {
        assert_eq!(x.outputs, y.outputs);
        assert_eq!(x.rtl, y.rtl);
    }
    assert!(f.latches.len() <= sys.latches.len());
}

#[test]
fn blif_identity_and_negation() {
    let mut sys = BooleanSystem { name: "m".into(), inputs: vec!["I".into()], outputs: vec!["O".into()], ..Default::default() };
    sys.equations.insert("O_def".into(), BoolExpr::Const(true));
    sys.equations.insert("O_val".into(), v("I_val"));
    let t = export_blif(&sys);
    assert!(t.contains(".names I_val O_val\n1 1\n"), "{t}");
    sys.equations.insert("O_val".into(), BoolExpr::not(v("I_val")));
    let t = export_blif(&sys);
    assert!(t.contains(".names I_val O_val\n0 1\n"), "{t}");
    assert!(t.contains(".names O_def\n1\n"), "{t}");
}

#[test]
fn blif_round_trip_preserves_behaviour() {
    let sys = lowered("module P: Input: A, B; Output: O, Q; loop { present A {emit O} else {emit Q} >> wait B } end");
    let (f, sched) = finalize(&sys, &Bdd);
    let back = read_blif(&export_blif(&f)).unwrap();
    let a = Simulator::new(&f, &sched).unwrap();
    let b = Simulator::new(&back, &scheduler::schedule(&back).unwrap()).unwrap();
    let seq: Vec<BTreeMap<String, XiValue>> = (0..12)
        .map(|k| {
            BTreeMap::from([
                ("A".to_string(), xi_core::xi_of_bool(k % 3 == 0)),
                ("B".to_string(), xi_core::xi_of_bool(k % 2 == 1)),
            ])
        })
        .collect();
    let (ta, tb) = (a.run_trace(&seq).unwrap(), b.run_trace(&seq).unwrap());
    for (x, y) in ta.iter().zip(&tb) {
        assert_eq!(x.outputs, y.outputs);
    }
}

fn random_inputs(n: usize, len: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 0..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Harmlessness: outputs after finalization equal the raw system's with
    /// every input defined, on up to 3 inputs and 6 instants.
    #[test]
    fn finalization_is_harmless(seq in random_inputs(3, 6), which in 0usize..4) {
        let srcs = [
            "module A: Input: X, Y, Z; Output: O, P; loop { present X {emit O} else {present Y {emit P} else nothing} >> pause } end",
            "module B: Input: X, Y, Z; Output: O; abort { wait X >> emit O >> wait Y } when Z >> emit O end",
            "module C: Input: X, Y, Z; Output: O, P; local s { loop { present X {emit s} else nothing >> pause } || loop { present s {emit O} else {emit P} >> pause } } end",
            "module D: Input: X, Y, Z; Output: O; loop { wait X >> present {Y and not Z} {emit O} else nothing } end",
        ];
        let sys = lowered(srcs[which]);
        for c in canonicalizers() {
            let (f, fs) = finalize(&sys, c.as_ref());
            let a = Simulator::new(&sys, &scheduler::schedule(&sys).unwrap()).unwrap();
            let b = Simulator::new(&f, &fs).unwrap();
            let ins: Vec<BTreeMap<String, XiValue>> = seq.iter().map(|bits| {
                ["X", "Y", "Z"].iter().zip(bits).map(|(k, v)| (k.to_string(), xi_core::xi_of_bool(*v))).collect()
            }).collect();
            let (ta, tb) = (a.run_trace(&ins).unwrap(), b.run_trace(&ins).unwrap());
            for (x, y) in ta.iter().zip(&tb) {
                prop_assert_eq!(&x.outputs, &y.outputs);
                prop_assert_eq!(x.rtl, y.rtl);
            }
        }
    }
}
