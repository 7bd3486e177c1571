// SPDX-License-Identifier: Apache-2.0
//! Pretty printer. Output reparses to the same AST.

use crate::ast::*;
use std::fmt::Write;

pub fn print_module(m: &Module) -> String {
    let mut out = String::new();
    writeln!(out, "module {}:", m.name).unwrap();
    if !m.inputs.is_empty() {
        writeln!(out, "Input: {};", m.inputs.join(", ")).unwrap();
    }
    if !m.outputs.is_empty() {
        writeln!(out, "Output: {};", m.outputs.join(", ")).unwrap();
    }
    if !m.runs.is_empty() {
        out.push_str("Run:");
        for r in &m.runs {
            write!(out, " \"{}\" : {};", r.path, r.module).unwrap();
        }
        out.push('\n');
    }
    match &m.body {
        Body::Stmt(s) => {
            print_stmt(s, 0, &mut out);
            out.push('\n');
        }
        Body::Automaton(a) => print_automaton(a, &mut out),
    }
    out.push_str("end\n");
    out
}

pub fn print_file(ms: &[Module]) -> String {
    ms.iter().map(print_module).collect::<Vec<_>>().join("\n")
}

fn indent(n: usize, out: &mut String) {
    for _ in 0..n {
        out.push_str("  ");
    }
}

pub fn print_sig(e: &SigExpr) -> String {
    fn go(e: &SigExpr, prec: u8, out: &mut String) {
        match e {
            SigExpr::Name(n) => out.push_str(n),
            SigExpr::Or(a, b) => {
                if prec > 0 {
                    out.push('{');
                }
                go(a, 0, out);
                out.push_str(" or ");
                go(b, 1, out);
                if prec > 0 {
                    out.push('}');
                }
            }
            SigExpr::And(a, b) => {
                if prec > 1 {
                    out.push('{');
                }
                go(a, 1, out);
                out.push_str(" and ");
                go(b, 2, out);
                if prec > 1 {
                    out.push('}');
                }
            }
            SigExpr::Not(a) => {
                out.push_str("not ");
                go(a, 2, out);
            }
        }
    }
    let mut s = String::new();
    go(e, 0, &mut s);
    s
}

fn print_run(r: &RunCall, out: &mut String) {
    write!(out, "run {}", r.module).unwrap();
    if !r.renamings.is_empty() {
        let rs: Vec<String> = r.renamings.iter().map(|(n, f)| format!("{n}\\{f}")).collect();
        write!(out, "[{}]", rs.join(" ")).unwrap();
    }
}

/// Prints `s` as a primary (braced when it is a binary composition).
fn print_primary(s: &Stmt, ind: usize, out: &mut String) {
    match s {
        Stmt::Seq(..) | Stmt::Par(..) => {
            out.push_str("{ ");
            print_stmt(s, ind + 1, out);
            out.push_str(" }");
        }
        _ => print_stmt(s, ind, out),
    }
}

pub fn print_stmt(s: &Stmt, ind: usize, out: &mut String) {
    match s {
        Stmt::Nothing => out.push_str("nothing"),
        Stmt::Halt => out.push_str("halt"),
        Stmt::Pause => out.push_str("pause"),
        Stmt::Emit(n) => write!(out, "emit {n}").unwrap(),
        Stmt::Wait(n) => write!(out, "wait {n}").unwrap(),
        Stmt::Present(c, p, q) => {
            write!(out, "present {} ", print_sig(c)).unwrap();
            out.push_str("{ ");
            print_stmt(p, ind + 1, out);
            out.push_str(" } else { ");
            print_stmt(q, ind + 1, out);
            out.push_str(" }");
        }
        Stmt::Seq(a, b) => {
            match **a {
                Stmt::Par(..) => print_primary(a, ind, out),
                _ => print_stmt(a, ind, out),
            }
            out.push('\n');
            indent(ind, out);
            out.push_str(">> ");
            print_primary(b, ind, out);
        }
        Stmt::Par(a, b) => {
            print_stmt(a, ind, out);
            out.push('\n');
            indent(ind, out);
            out.push_str("|| ");
            match **b {
                Stmt::Par(..) => print_primary(b, ind, out),
                _ => print_stmt(b, ind, out),
            }
        }
        Stmt::Abort(p, sig) => {
            out.push_str("abort { ");
            print_stmt(p, ind + 1, out);
            write!(out, " }} when {sig}").unwrap();
        }
        Stmt::Loop(p) => {
            out.push_str("loop { ");
            print_stmt(p, ind + 1, out);
            out.push_str(" }");
        }
        Stmt::Local(names, p) => {
            write!(out, "local {} {{ ", names.join(", ")).unwrap();
            print_stmt(p, ind + 1, out);
            out.push_str(" }");
        }
        Stmt::Run(r) => print_run(r, out),
    }
}

fn print_automaton(a: &Automaton, out: &mut String) {
    out.push_str("automaton\n");
    for s in &a.states {
        write!(out, "  state {}", s.name).unwrap();
        if s.is_final {
            out.push_str(" final");
        }
        if let Some(r) = &s.run {
            out.push(' ');
            print_run(r, out);
        }
        if !s.action.is_empty() {
            write!(out, " / {}", s.action.join(" ")).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("transition\n");
    for t in &a.transitions {
        out.push_str("  ");
        if t.initial {
            out.push_str("initial");
        }
        if let Some(src) = &t.source {
            out.push_str(src);
        }
        if let Some(c) = &t.trigger {
            write!(out, " {}", print_sig(c)).unwrap();
        }
        if !t.action.is_empty() {
            write!(out, " / {}", t.action.join(" ")).unwrap();
        }
        if let Some(d) = &t.target {
            write!(out, " -> {d}").unwrap();
        }
        out.push_str(";\n");
    }
}
