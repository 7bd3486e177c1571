// SPDX-License-Identifier: Apache-2.0
//! Static checks producing diagnostics.

use crate::ast::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub module: String,
    pub msg: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: module {}: {}", self.module, self.msg)
    }
}

/// Conservative instantaneity test: `false` only when every control path
/// through `s` is guaranteed to take at least one instant.
pub fn possibly_instantaneous(s: &Stmt) -> bool {
    match s {
        Stmt::Nothing | Stmt::Emit(_) => true,
        Stmt::Pause | Stmt::Wait(_) | Stmt::Halt | Stmt::Loop(_) | Stmt::Run(_) => false,
        Stmt::Present(_, p, q) => possibly_instantaneous(p) || possibly_instantaneous(q),
        Stmt::Seq(p, q) => possibly_instantaneous(p) && possibly_instantaneous(q),
        Stmt::Par(p, q) => possibly_instantaneous(p) && possibly_instantaneous(q),
        // weak immediate preemption may end the body at once
        Stmt::Abort(..) => true,
        Stmt::Local(_, p) => possibly_instantaneous(p),
    }
}

fn tested_signals(s: &Stmt, out: &mut Vec<String>) {
    let add = |n: &String, out: &mut Vec<String>| {
        if !out.contains(n) {
            out.push(n.clone())
        }
    };
    match s {
        Stmt::Wait(n) => add(n, out),
        Stmt::Abort(p, n) => {
            add(n, out);
            tested_signals(p, out);
        }
        Stmt::Present(c, p, q) => {
            let mut l = Vec::new();
            c.leaves(&mut l);
            for n in &l {
                add(n, out);
            }
            tested_signals(p, out);
            tested_signals(q, out);
        }
        Stmt::Seq(p, q) | Stmt::Par(p, q) => {
            tested_signals(p, out);
            tested_signals(q, out);
        }
        Stmt::Loop(p) | Stmt::Local(_, p) => tested_signals(p, out),
        Stmt::Run(r) => {
            for (n, _) in &r.renamings {
                add(n, out);
            }
        }
        _ => {}
    }
}

/// Runs all checks that need only the module itself.
pub fn check_static(m: &Module) -> Vec<Diagnostic> {
    let mut d = Vec::new();
    let mut push = |severity, msg: String| d.push(Diagnostic { severity, module: m.name.clone(), msg });
    for s in m.inputs.iter().chain(&m.outputs) {
        if s == "tick" {
            push(Severity::Error, "`tick` is reserved for the implicit clock".into());
        }
    }
    match &m.body {
        Body::Stmt(s) => check_stmt(s, m, &mut push),
        Body::Automaton(a) => check_automaton(a, m, &mut push),
    }
    d
}

fn check_stmt(s: &Stmt, m: &Module, push: &mut dyn FnMut(Severity, String)) {
    match s {
        Stmt::Emit(n) if m.inputs.contains(n) => {
            push(Severity::Error, format!("input `{n}` cannot be emitted"));
        }
        Stmt::Loop(p) => {
            if possibly_instantaneous(p) {
                push(Severity::Error, "instantaneous loop body".into());
            }
            check_stmt(p, m, push);
        }
        Stmt::Local(names, p) => {
            let mut em = Vec::new();
            emitted_signals(p, &mut em);
            let mut tested = Vec::new();
            tested_signals(p, &mut tested);
            for n in names {
                if n == "tick" {
                    push(Severity::Error, "`tick` is reserved for the implicit clock".into());
                }
                if tested.contains(n) && !em.contains(n) && !contains_run(p) {
                    push(Severity::Warning, format!("local `{n}` tested, never emitted"));
                }
            }
            check_stmt(p, m, push);
        }
        Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => {
            check_stmt(p, m, push);
            check_stmt(q, m, push);
        }
        Stmt::Abort(p, _) => check_stmt(p, m, push),
        _ => {}
    }
}

/// A run call may emit `n` through its callee interface; we assume it does.
fn contains_run(s: &Stmt) -> bool {
    match s {
        Stmt::Run(_) => true,
        Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => contains_run(p) || contains_run(q),
        Stmt::Abort(p, _) | Stmt::Loop(p) | Stmt::Local(_, p) => contains_run(p),
        _ => false,
    }
}

fn check_automaton(a: &Automaton, m: &Module, push: &mut dyn FnMut(Severity, String)) {
    let finals: Vec<&State> = a.states.iter().filter(|s| s.is_final).collect();
    if finals.len() != 1 {
        push(Severity::Error, format!("automaton needs exactly one final state, found {}", finals.len()));
    }
    for s in &a.states {
        if !s.action.is_empty() {
            push(Severity::Warning, format!("state `{}`: state actions are unsupported and ignored", s.name));
        }
        if s.is_final && a.outgoing(&s.name).next().is_some() {
            push(Severity::Error, format!("final state `{}` has outgoing transitions", s.name));
        }
    }
    for t in &a.transitions {
        for o in &t.action {
            if m.inputs.contains(o) {
                push(Severity::Error, format!("input `{o}` cannot be emitted"));
            }
        }
    }
    if a.initial().next().is_none() {
        push(Severity::Warning, "automaton has no initial transition".into());
    }
    let mut groups: Vec<(String, Vec<&Transition>)> = vec![("initial".into(), a.initial().collect())];
    for s in &a.states {
        groups.push((format!("state `{}`", s.name), a.outgoing(&s.name).collect()));
    }
    for (label, ts) in groups {
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                if overlapping(ts[i].trigger.as_ref(), ts[j].trigger.as_ref()) {
                    push(Severity::Error, format!("nondeterministic automaton: overlapping triggers from {label}"));
                }
            }
        }
    }
}

/// True when both triggers can hold together for some boolean valuation.
fn overlapping(a: Option<&SigExpr>, b: Option<&SigExpr>) -> bool {
    let mut leaves = Vec::new();
    for e in [a, b].into_iter().flatten() {
        e.leaves(&mut leaves);
    }
    let n = leaves.len();
    (0u64..(1u64 << n)).any(|bits| {
        let v = |s: &str| {
            let i = leaves.iter().position(|l| l == s).unwrap();
            bits >> i & 1 == 1
        };
        let ea = a.map_or(true, |e| e.eval_bool(&v));
        let eb = b.map_or(true, |e| e.eval_bool(&v));
        ea && eb
    })
}
