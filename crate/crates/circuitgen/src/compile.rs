// SPDX-License-Identifier: Apache-2.0
//! Statement-by-statement circuit construction.
//!
//! Every statement receives a SET and a RESET expression and returns its
//! RTL expression. Control connectives are the truth-order `and`/`or`/`tnot`
//! so an undecided wire stays `⊥` until its inputs are known.

use crate::circuit::*;
use crate::expr::{def_of, val_of, BoolExpr, XiExpr};
use frontend::{Automaton, Body, Callee, Module, Resolved, RunCall, SigExpr, Stmt};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;
use xi_core::XiValue::{self, Absent, Present};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("module `{0}` is not resolved")]
    Unresolved(String),
    #[error("module {module}: {msg}")]
    Invalid { module: String, msg: String },
}

#[derive(Clone, Debug)]
pub struct CompileOptions {
    /// Add shadow latches carrying the previous status of inlined callee locals.
    pub apply_pre: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { apply_pre: true }
    }
}

type Scope = HashMap<String, String>;

struct Builder<'a> {
    callees: &'a BTreeMap<String, Callee>,
    opts: &'a CompileOptions,
    eqs: Vec<(String, XiExpr)>,
    regs: Vec<Register>,
    runs: Vec<RunInstance>,
    emitters: BTreeMap<String, Vec<XiExpr>>,
    run_driven: BTreeSet<String>,
    locals: Vec<String>,
    pre_locals: Vec<String>,
    prefix: String,
    node: usize,
    instance: usize,
}

fn c(v: XiValue) -> XiExpr {
    XiExpr::Const(v)
}

impl<'a> Builder<'a> {
    fn fresh(&mut self, hint: &str) -> String {
        self.node += 1;
        format!("{}n{}.{hint}", self.prefix, self.node)
    }

    fn define(&mut self, name: String, e: XiExpr) {
        self.eqs.push((name, e));
    }

    fn materialize(&mut self, hint: &str, e: XiExpr) -> XiExpr {
        if e.is_atom() {
            return e;
        }
        let n = self.fresh(hint);
        self.define(n.clone(), e);
        XiExpr::Wire(n)
    }

    fn or(&mut self, a: XiExpr, b: XiExpr) -> XiExpr {
        match (&a, &b) {
            (XiExpr::Const(Absent), _) => b,
            (_, XiExpr::Const(Absent)) => a,
            (XiExpr::Const(Present), _) | (_, XiExpr::Const(Present)) => c(Present),
            _ if a == b => a,
            _ => self.materialize("or", XiExpr::Or(Box::new(a), Box::new(b))),
        }
    }

    fn and(&mut self, a: XiExpr, b: XiExpr) -> XiExpr {
        match (&a, &b) {
            (XiExpr::Const(Present), _) => b,
            (_, XiExpr::Const(Present)) => a,
            (XiExpr::Const(Absent), _) | (_, XiExpr::Const(Absent)) => c(Absent),
            _ if a == b => a,
            _ => self.materialize("and", XiExpr::And(Box::new(a), Box::new(b))),
        }
    }

    fn tnot(&mut self, a: XiExpr) -> XiExpr {
        match a {
            XiExpr::Const(v) => c(xi_core::tnot(v)),
            a => self.materialize("not", XiExpr::TNot(Box::new(a))),
        }
    }

    /// Register with next value `(x) ⊠ ¬reset`.
    fn register(&mut self, name: String, x: XiExpr, reset: &XiExpr) -> XiExpr {
        let nr = self.tnot(reset.clone());
        let next = match nr {
            XiExpr::Const(Absent) => c(Absent),
            nr => XiExpr::Gate(Box::new(x), Box::new(nr)),
        };
        self.regs.push(Register { name: name.clone(), init: false, next });
        XiExpr::Reg(name)
    }

    fn reg_name(&mut self, hint: &str) -> String {
        self.fresh(hint)
    }

    fn emit(&mut self, wire: &str, e: XiExpr) {
        self.emitters.entry(wire.to_string()).or_default().push(e);
    }

    fn sig(&mut self, e: &SigExpr, scope: &Scope) -> XiExpr {
        match e {
            SigExpr::Name(n) => XiExpr::Wire(scope[n].clone()),
            SigExpr::And(a, b) => {
                let (x, y) = (self.sig(a, scope), self.sig(b, scope));
                self.and(x, y)
            }
            SigExpr::Or(a, b) => {
                let (x, y) = (self.sig(a, scope), self.sig(b, scope));
                self.or(x, y)
            }
            SigExpr::Not(a) => {
                let x = self.sig(a, scope);
                self.tnot(x)
            }
        }
    }

    fn stmt(&mut self, s: &Stmt, scope: &Scope, set: XiExpr, reset: XiExpr) -> Result<XiExpr, CompileError> {
        Ok(match s {
            Stmt::Nothing => set,
            Stmt::Halt => c(Absent),
            Stmt::Emit(n) => {
                let w = scope[n].clone();
                self.emit(&w, set.clone());
                set
            }
            Stmt::Pause => {
                let a = self.reg_name("A");
                let x = self.or(set, XiExpr::Reg(a.clone()));
                self.register(a, x, &reset)
            }
            Stmt::Wait(n) => {
                let a = self.reg_name("A");
                let x = self.or(set, XiExpr::Reg(a.clone()));
                let r = self.register(a, x, &reset);
                self.and(r, XiExpr::Wire(scope[n].clone()))
            }
            Stmt::Present(cond, p, q) => {
                let cw = self.sig(cond, scope);
                let s1 = self.and(set.clone(), cw.clone());
                let nc = self.tnot(cw.clone());
                let s2 = self.and(set, nc);
                let r1 = self.stmt(p, scope, s1, reset.clone())?;
                let r2 = self.stmt(q, scope, s2, reset)?;
                let err = match &cw {
                    XiExpr::Const(v) => c(xi_core::xi_of_bool(*v == XiValue::Error)),
                    XiExpr::Wire(w) => self.materialize(
                        "top",
                        XiExpr::OfBool(BoolExpr::and(
                            BoolExpr::not(BoolExpr::var(def_of(w))),
                            BoolExpr::var(val_of(w)),
                        )),
                    ),
                    _ => c(Absent),
                };
                let r = self.or(r1, r2);
                self.or(r, err)
            }
            Stmt::Seq(p, q) => {
                let r1 = self.fresh("R1");
                let rtl1 = self.stmt(p, scope, set, XiExpr::Wire(r1.clone()))?;
                let e = self.or(reset.clone(), rtl1.clone());
                self.define(r1, e);
                self.stmt(q, scope, rtl1, reset)?
            }
            Stmt::Par(p, q) => {
                let r1 = self.stmt(p, scope, set.clone(), reset.clone())?;
                let r2 = self.stmt(q, scope, set, reset.clone())?;
                let d1 = self.reg_name("D1");
                let d2 = self.reg_name("D2");
                let x1 = self.or(r1, XiExpr::Reg(d1.clone()));
                let x2 = self.or(r2, XiExpr::Reg(d2.clone()));
                self.register(d1, x1.clone(), &reset);
                self.register(d2, x2.clone(), &reset);
                self.and(x1, x2)
            }
            Stmt::Abort(p, sname) => {
                let sw = XiExpr::Wire(scope[sname].clone());
                let rp = self.fresh("RP");
                let rtlp = self.stmt(p, scope, set.clone(), XiExpr::Wire(rp.clone()))?;
                let nr = self.tnot(reset.clone());
                let sr = self.and(sw.clone(), nr);
                let e = self.or(sr, reset.clone());
                self.define(rp, e);
                let a = self.reg_name("A");
                let x = self.or(set, XiExpr::Reg(a.clone()));
                self.register(a, x.clone(), &reset);
                let ns = self.tnot(sw.clone());
                let left = self.and(ns, rtlp);
                let right = self.and(sw, x);
                self.or(left, right)
            }
            Stmt::Loop(p) => {
                let sa = self.fresh("SA");
                let ra = self.fresh("RA");
                let rb = self.fresh("RB");
                let rtl_a = self.stmt(p, scope, XiExpr::Wire(sa.clone()), XiExpr::Wire(ra.clone()))?;
                let rtl_b = self.stmt(p, scope, rtl_a.clone(), XiExpr::Wire(rb.clone()))?;
                let e = self.or(set, rtl_b.clone());
                self.define(sa, e);
                let e = self.or(reset.clone(), rtl_a);
                self.define(ra, e);
                let e = self.or(reset, rtl_b);
                self.define(rb, e);
                c(Absent)
            }
            Stmt::Local(names, p) => {
                let mut inner = scope.clone();
                for n in names {
                    self.node += 1;
                    let w = format!("{}{n}@{}", self.prefix, self.node);
                    self.emitters.entry(w.clone()).or_default();
                    self.locals.push(w.clone());
                    if !self.prefix.is_empty() {
                        self.pre_locals.push(w.clone());
                    }
                    inner.insert(n.clone(), w);
                }
                self.stmt(p, &inner, set, reset)?
            }
            Stmt::Run(call) => {
                let a1 = self.reg_name("A1");
                let x1 = self.or(set.clone(), XiExpr::Reg(a1.clone()));
                let a1r = self.register(a1, x1, &reset);
                let rp = self.instantiate(call, scope, set, reset.clone())?;
                let a2 = self.reg_name("A2");
                let x2 = self.or(rp, XiExpr::Reg(a2.clone()));
                self.register(a2, x2.clone(), &reset);
                self.and(a1r, x2)
            }
        })
    }

    /// Callee body started by `set`; returns the callee RTL.
    fn instantiate(&mut self, call: &RunCall, scope: &Scope, set: XiExpr, reset: XiExpr) -> Result<XiExpr, CompileError> {
        let callee = self.callees.get(&call.module).ok_or_else(|| CompileError::Unresolved(call.module.clone()))?;
        let iface = callee.interface();
        let mut inner = Scope::new();
        for f in iface.signals() {
            let actual = call.actual(f);
            let w = scope.get(actual).ok_or_else(|| CompileError::Invalid {
                module: call.module.clone(),
                msg: format!("no binding for `{f}`"),
            })?;
            inner.insert(f.clone(), w.clone());
        }
        self.instance += 1;
        let prefix = format!("{}_{}", call.module, self.instance);
        match callee {
            Callee::Source { module, .. } => {
                let saved = std::mem::replace(&mut self.prefix, format!("{prefix}."));
                for o in &module.outputs {
                    self.emitters.entry(inner[o].clone()).or_default();
                }
                let r = self.body(&module.body, &inner, set, reset, &module.name);
                self.prefix = saved;
                r
            }
            Callee::Compiled { .. } => {
                let inst = RunInstance {
                    prefix,
                    model: call.module.clone(),
                    bindings: iface.signals().map(|f| (f.clone(), inner[f].clone())).collect(),
                };
                self.define(inst.set_wire(), set);
                self.define(inst.reset_wire(), reset);
                for o in &iface.outputs {
                    self.run_driven.insert(inner[o].clone());
                }
                let rtl = XiExpr::Wire(inst.rtl_wire());
                self.runs.push(inst);
                Ok(rtl)
            }
        }
    }

    fn body(&mut self, b: &Body, scope: &Scope, set: XiExpr, reset: XiExpr, module: &str) -> Result<XiExpr, CompileError> {
        match b {
            Body::Stmt(s) => self.stmt(s, scope, set, reset),
            Body::Automaton(a) => self.automaton(a, scope, set, reset, module),
        }
    }

    fn automaton(&mut self, a: &Automaton, scope: &Scope, set: XiExpr, reset: XiExpr, module: &str) -> Result<XiExpr, CompileError> {
        let fin = a.final_state().ok_or_else(|| CompileError::Invalid {
            module: module.into(),
            msg: "automaton has no final state".into(),
        })?;
        let in_reg: HashMap<&str, String> =
            a.states.iter().map(|s| (s.name.as_str(), self.reg_name(&format!("IN_{}", s.name)))).collect();
        let mut enter: HashMap<&str, XiExpr> = HashMap::new();
        let mut leave: HashMap<&str, XiExpr> = HashMap::new();
        for t in &a.transitions {
            let trig = match &t.trigger {
                Some(e) => self.sig(e, scope),
                None => c(Present),
            };
            let src = if t.initial {
                set.clone()
            } else {
                XiExpr::Reg(in_reg[t.source.as_deref().unwrap()].clone())
            };
            let taken = self.and(src, trig);
            for o in &t.action {
                let w = scope[o].clone();
                self.emit(&w, taken.clone());
            }
            let tgt = t.target.as_deref().unwrap();
            let prev = enter.remove(tgt).unwrap_or(c(Absent));
            let e = self.or(prev, taken.clone());
            enter.insert(tgt, e);
            if let Some(s) = t.source.as_deref().filter(|_| !t.initial) {
                let prev = leave.remove(s).unwrap_or(c(Absent));
                let e = self.or(prev, taken);
                leave.insert(s, e);
            }
        }
        let mut rtl = c(Absent);
        for st in &a.states {
            let name = st.name.as_str();
            let en = enter.get(name).cloned().unwrap_or(c(Absent));
            let lv = leave.get(name).cloned().unwrap_or(c(Absent));
            let inr = XiExpr::Reg(in_reg[name].clone());
            let nl = self.tnot(lv.clone());
            let stay = self.and(inr.clone(), nl);
            let x = self.or(en.clone(), stay);
            self.register(in_reg[name].clone(), x, &reset);
            let state_rtl = if let Some(call) = &st.run {
                let ent = self.reg_name(&format!("ENT_{name}"));
                let ent_r = self.register(ent, en, &reset);
                let body_reset = self.or(lv, reset.clone());
                let rp = self.instantiate(call, scope, ent_r, body_reset.clone())?;
                let done = self.reg_name(&format!("DONE_{name}"));
                let x = self.or(rp, XiExpr::Reg(done.clone()));
                self.register(done, x.clone(), &body_reset);
                self.and(inr, x)
            } else {
                inr
            };
            if name == fin.name {
                rtl = state_rtl;
            }
        }
        Ok(rtl)
    }
}

/// Compiles a resolved module into a closed circuit: the body is started by
/// a boot latch and never reset from outside.
pub fn compile(res: &Resolved, opts: &CompileOptions) -> Result<Circuit, CompileError> {
    let m: &Module = &res.root;
    let mut b = Builder {
        callees: &res.callees,
        opts,
        eqs: Vec::new(),
        regs: Vec::new(),
        runs: Vec::new(),
        emitters: BTreeMap::new(),
        run_driven: BTreeSet::new(),
        locals: Vec::new(),
        pre_locals: Vec::new(),
        prefix: String::new(),
        node: 0,
        instance: 0,
    };
    let mut scope = Scope::new();
    for s in m.inputs.iter().chain(&m.outputs) {
        scope.insert(s.clone(), s.clone());
    }
    for o in &m.outputs {
        b.emitters.entry(o.clone()).or_default();
    }
    b.regs.push(Register { name: CTL_BOOT.into(), init: true, next: c(Absent) });
    b.define(CTL_SET.into(), XiExpr::Reg(CTL_BOOT.into()));
    b.define(CTL_RESET.into(), c(Absent));
    let rtl = b.body(&m.body, &scope, XiExpr::wire(CTL_SET), XiExpr::wire(CTL_RESET), &m.name)?;
    b.define(CTL_RTL.into(), rtl);
    let emitters = std::mem::take(&mut b.emitters);
    for (w, mut es) in emitters {
        if m.inputs.contains(&w) {
            continue;
        }
        let e = match es.len() {
            0 if b.run_driven.contains(&w) => continue,
            0 => c(Absent),
            1 => es.pop().unwrap(),
            _ => {
                let last = es.pop().unwrap();
                let mut acc = es.remove(0);
                for e in es {
                    acc = b.or(acc, e);
                }
                XiExpr::Or(Box::new(acc), Box::new(last))
            }
        };
        b.define(w, e);
    }
    if b.opts.apply_pre {
        for l in std::mem::take(&mut b.pre_locals) {
            for (bit, src) in [("pre_def", def_of(&l)), ("pre_val", val_of(&l))] {
                b.regs.push(Register {
                    name: format!("{l}.{bit}"),
                    init: false,
                    next: XiExpr::OfBool(BoolExpr::Var(src)),
                });
            }
        }
    }
    Ok(Circuit {
        name: m.name.clone(),
        inputs: m.inputs.clone(),
        outputs: m.outputs.clone(),
        locals: b.locals,
        equations: b.eqs,
        registers: b.regs,
        runs: b.runs,
    })
}

/// Compiles a module that needs no callees.
pub fn compile_module(m: &Module) -> Result<Circuit, CompileError> {
    let res = Resolved { root: m.clone(), callees: BTreeMap::new() };
    compile(&res, &CompileOptions::default())
}
