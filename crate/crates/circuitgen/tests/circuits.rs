// SPDX-License-Identifier: Apache-2.0
use circuitgen::*;
use frontend::parse_module;
use proptest::prelude::*;
use xi_core::{decode, encode, BoolPair, XiValue, ALL};

fn circuit(src: &str) -> Circuit {
    compile_module(&parse_module(src).unwrap()).unwrap()
}

fn w(n: &str) -> XiExpr {
    XiExpr::wire(n)
}

fn b(e: XiExpr) -> Box<XiExpr> {
    Box::new(e)
}

/// Boolean evaluation of the lowering against ξ evaluation, for one assignment.
fn agrees(e: &XiExpr, vals: &[XiValue; 3], bits: &[bool; 2]) -> bool {
    let wire = |n: &str| vals[(n.as_bytes()[0] - b'a') as usize];
    let bit = |n: &str| bits[(n.as_bytes()[0] - b'p') as usize];
    let boolean = |n: &str| {
        if let Some(s) = n.strip_suffix("_def") {
            encode(wire(s)).def
        } else if let Some(s) = n.strip_suffix("_val") {
            encode(wire(s)).val
        } else {
            bit(n)
        }
    };
    let (d, v) = e.lower();
    let got = decode(BoolPair::new(d.eval(&boolean), v.eval(&boolean)));
    got == e.eval(&wire, &bit)
}

fn all_assignments() -> impl Iterator<Item = ([XiValue; 3], [bool; 2])> {
    (0..64 * 4).map(|k| {
        let v = [ALL[k % 4], ALL[(k / 4) % 4], ALL[(k / 16) % 4]];
        let bits = [(k / 64) % 2 == 1, (k / 128) % 2 == 1];
        (v, bits)
    })
}

#[test]
fn every_operator_lowers_homomorphically() {
    let ops = vec![
        XiExpr::Join(b(w("a")), b(w("b"))),
        XiExpr::Meet(b(w("a")), b(w("b"))),
        XiExpr::Not(b(w("a"))),
        XiExpr::Cond(b(w("a")), BoolExpr::var("p")),
        XiExpr::Gate(b(w("a")), b(w("b"))),
        XiExpr::OfBool(BoolExpr::and(BoolExpr::var("p"), BoolExpr::not(BoolExpr::var("q")))),
        XiExpr::And(b(w("a")), b(w("b"))),
        XiExpr::Or(b(w("a")), b(w("b"))),
        XiExpr::TNot(b(w("a"))),
        XiExpr::Reg("p".into()),
    ];
    for e in &ops {
        for (v, bits) in all_assignments() {
            if matches!(e, XiExpr::Gate(..)) && !encode(v[1]).def {
                continue;
            }
            assert!(agrees(e, &v, &bits), "{e:?} at {v:?} {bits:?}");
        }
    }
    for c in ALL {
        for (v, bits) in all_assignments().take(1) {
            assert!(agrees(&XiExpr::Const(c), &v, &bits));
        }
    }
}

#[test]
fn lowering_examples() {
    let (_, v) = XiExpr::Join(b(w("a")), b(w("b"))).lower();
    assert_eq!(v, BoolExpr::or(BoolExpr::var("a_val"), BoolExpr::var("b_val")));
    let (d, _) = XiExpr::Not(b(w("a"))).lower();
    assert_eq!(d, BoolExpr::var("a_def"));
    let (d, _) = XiExpr::Cond(b(w("a")), BoolExpr::var("c")).lower();
    assert_eq!(d, BoolExpr::and(BoolExpr::var("a_def"), BoolExpr::var("c")));
}

fn xi_tree() -> impl Strategy<Value = XiExpr> {
    let leaf = prop_oneof![
        prop::sample::select(ALL.to_vec()).prop_map(XiExpr::Const),
        prop::sample::select(vec!["a", "b", "c"]).prop_map(w),
        prop::sample::select(vec!["p", "q"]).prop_map(|r| XiExpr::Reg(r.into())),
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| XiExpr::Join(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| XiExpr::Meet(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| XiExpr::And(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| XiExpr::Or(b(x), b(y))),
            inner.clone().prop_map(|x| XiExpr::Not(b(x))),
            inner.clone().prop_map(|x| XiExpr::TNot(b(x))),
            inner.prop_map(|x| XiExpr::Cond(b(x), BoolExpr::var("q"))),
        ]
    })
}

proptest! {
    #[test]
    fn random_trees_lower_homomorphically(e in xi_tree()) {
        for (v, bits) in all_assignments() {
            prop_assert!(agrees(&e, &v, &bits), "{:?} at {:?} {:?}", e, v, bits);
        }
    }
}

#[test]
fn nothing_passes_control_through() {
    let c = circuit("module N: Output: O; nothing end");
    assert_eq!(c.equation(CTL_RTL), Some(&w(CTL_SET)));
    assert_eq!(c.equation(CTL_SET), Some(&XiExpr::Reg(CTL_BOOT.into())));
    assert_eq!(c.equation("O"), Some(&XiExpr::Const(XiValue::Absent)));
}

#[test]
fn pause_and_wait_have_one_register() {
    let p = circuit("module P: Output: O; pause end");
    assert_eq!(p.registers.len(), 2);
    let a = &p.registers[1];
    assert!(matches!(a.next, XiExpr::Gate(..)));
    assert_eq!(p.equation(CTL_RTL), Some(&XiExpr::Reg(a.name.clone())));
    let wt = circuit("module W: Input: S; Output: O; wait S end");
    assert_eq!(wt.registers.len(), 2);
    let rtl = wt.equation(CTL_RTL).unwrap();
    let XiExpr::Wire(n) = rtl else { panic!("{rtl:?}") };
    assert_eq!(wt.equation(n), Some(&XiExpr::And(b(XiExpr::Reg(wt.registers[1].name.clone())), b(w("S")))));
}

#[test]
fn register_counts_per_construct() {
    let count = |src: &str| circuit(src).registers.len() - 1;
    assert_eq!(count("module M: Output: O; emit O end"), 0);
    assert_eq!(count("module M: Output: O; pause || pause end"), 4);
    assert_eq!(count("module M: Input: S; Output: O; abort { pause } when S end"), 2);
    assert_eq!(count("module M: Output: O; loop { pause } end"), 2);
}

#[test]
fn emit_is_gated_by_control() {
    let c = circuit("module E: Output: O; emit O end");
    let sys = c.lower();
    let sched = sys.equations.keys().count();
    assert!(sched > 0);
    let o = c.equation("O").unwrap();
    let boot = |v: bool| o.eval(&|n| if n == CTL_SET { xi_core::xi_of_bool(v) } else { XiValue::Bottom }, &|_| v);
    assert_eq!(boot(true), XiValue::Present);
}

#[test]
fn lowering_gives_two_equations_per_wire() {
    let c = circuit("module P: Input: A; Output: O; loop { present A {emit O} else nothing >> pause } end");
    let sys = c.lower();
    assert_eq!(sys.equations.len(), 2 * c.equations.len() + c.registers.len());
    for (wname, _) in &c.equations {
        assert!(sys.equations.contains_key(&def_of(wname)));
        assert!(sys.equations.contains_key(&val_of(wname)));
    }
    assert!(sys.dangling().is_empty());
}

#[test]
fn inline_wio_registers_grow_linearly() {
    let mut counts = Vec::new();
    for n in 1..=6 {
        let body: Vec<&str> = (0..n).map(|_| "run WIO").collect();
        let src = format!(
            "module WIO: Input: I; Output: O; wait I >> emit O end\n\
             module Top: Input: I; Output: O; {} end",
            body.join(" || ")
        );
        let ms = frontend::parse_file(&src).unwrap();
        let res = frontend::resolve_runs(&ms[1], &ms, None, &Default::default(), &|_| Err(String::new())).unwrap();
        counts.push(compile(&res, &CompileOptions::default()).unwrap().lower().register_count());
    }
    let d: Vec<isize> = counts.windows(2).map(|p| p[1] as isize - p[0] as isize).collect();
    assert!(d.iter().all(|x| *x == d[0]), "{counts:?}");
}
