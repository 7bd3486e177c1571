// SPDX-License-Identifier: Apache-2.0
//! Process terms and the translation from LE statements.

use crate::BehavError;
use frontend::{Automaton, Body, Callee, Module, Resolved, RunCall, SigExpr, Stmt};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Clock signal present in every reaction.
pub const TICK: &str = "tick";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Nothing,
    Halt,
    Emit(String),
    /// Not yet started: consumes the first instant.
    Wait(String),
    /// Started: reacts to the signal in the current instant.
    IWait(String),
    Present(SigExpr, Box<Term>, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    Abort(Box<Term>, String),
    /// `cur` is the running iteration; iterations alternate between two
    /// copies whose local signals are distinct, so the last instant of one
    /// and the first of the next never share a local.
    Loop { cur: Box<Term>, copies: Arc<[Term; 2]>, next: usize },
    /// Names are already unique; the node only records the scope.
    Local(Vec<String>, Box<Term>),
    Aut(Arc<AutDef>, AutPos),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutDef {
    pub states: Vec<StateDef>,
    pub initial: Vec<TransDef>,
    pub outgoing: Vec<Vec<TransDef>>,
    pub final_state: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDef {
    pub name: String,
    pub body: Option<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransDef {
    pub trigger: Option<SigExpr>,
    pub action: Vec<String>,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutPos {
    Fresh,
    /// Started but no initial transition fired.
    Dead,
    In { state: usize, sub: Sub },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sub {
    /// Plain macro state.
    None,
    /// Entered last instant; the body starts now.
    Pending,
    Active(Box<Term>),
    Done,
}

pub(crate) struct Gamma<'a> {
    callees: &'a BTreeMap<String, Callee>,
    counter: usize,
    pub locals: Vec<String>,
}

type Scope = HashMap<String, String>;

/// Γ: translates a resolved program. Signal names in the result are global:
/// interface signals keep their names, locals become `name@k`.
pub fn translate(res: &Resolved) -> Result<(Term, Vec<String>), BehavError> {
    let mut g = Gamma { callees: &res.callees, counter: 0, locals: Vec::new() };
    let m = &res.root;
    let mut scope = Scope::new();
    for s in m.inputs.iter().chain(&m.outputs) {
        scope.insert(s.clone(), s.clone());
    }
    scope.insert(TICK.into(), TICK.into());
    let t = g.body(&m.body, &scope, &m.name)?;
    Ok((t, g.locals))
}

impl Gamma<'_> {
    fn body(&mut self, b: &Body, scope: &Scope, module: &str) -> Result<Term, BehavError> {
        match b {
            Body::Stmt(s) => self.stmt(s, scope),
            Body::Automaton(a) => self.automaton(a, scope, module),
        }
    }

    fn sig(&self, e: &SigExpr, scope: &Scope) -> SigExpr {
        e.rename(&|n| scope[n].clone())
    }

    fn stmt(&mut self, s: &Stmt, scope: &Scope) -> Result<Term, BehavError> {
        let b = Box::new;
        Ok(match s {
            Stmt::Nothing => Term::Nothing,
            Stmt::Halt => Term::Halt,
            Stmt::Pause => Term::Wait(TICK.into()),
            Stmt::Emit(n) => Term::Emit(scope[n].clone()),
            Stmt::Wait(n) => Term::Wait(scope[n].clone()),
            Stmt::Present(c, p, q) => Term::Present(self.sig(c, scope), b(self.stmt(p, scope)?), b(self.stmt(q, scope)?)),
            Stmt::Seq(p, q) => Term::Seq(b(self.stmt(p, scope)?), b(self.stmt(q, scope)?)),
            Stmt::Par(p, q) => Term::Par(b(self.stmt(p, scope)?), b(self.stmt(q, scope)?)),
            Stmt::Abort(p, n) => Term::Abort(b(self.stmt(p, scope)?), scope[n].clone()),
            Stmt::Loop(p) => {
                let c0 = self.stmt(p, scope)?;
                let c1 = self.stmt(p, scope)?;
                Term::Loop { cur: b(c0.clone()), copies: Arc::new([c0, c1]), next: 1 }
            }
            Stmt::Local(names, p) => {
                let mut inner = scope.clone();
                let mut fresh = Vec::new();
                for n in names {
                    self.counter += 1;
                    let w = format!("{n}@{}", self.counter);
                    self.locals.push(w.clone());
                    inner.insert(n.clone(), w.clone());
                    fresh.push(w);
                }
                Term::Local(fresh, b(self.stmt(p, &inner)?))
            }
            // the caller pauses for one instant while the callee runs
            Stmt::Run(call) => Term::Par(b(Term::Wait(TICK.into())), b(self.callee(call, scope)?)),
        })
    }

    fn callee(&mut self, call: &RunCall, scope: &Scope) -> Result<Term, BehavError> {
        let m: &Module = match self.callees.get(&call.module) {
            Some(Callee::Source { module, .. }) => module,
            Some(Callee::Compiled { path, .. }) => {
                return Err(BehavError::CompiledCallee(call.module.clone(), path.display().to_string()))
            }
            None => return Err(BehavError::Unresolved(call.module.clone())),
        };
        let mut inner = Scope::new();
        for f in m.inputs.iter().chain(&m.outputs) {
            let a = call.actual(f);
            let w = scope.get(a).ok_or_else(|| BehavError::Unresolved(format!("{}: {a}", call.module)))?;
            inner.insert(f.clone(), w.clone());
        }
        inner.insert(TICK.into(), TICK.into());
        self.body(&m.body.clone(), &inner, &m.name.clone())
    }

    fn automaton(&mut self, a: &Automaton, scope: &Scope, module: &str) -> Result<Term, BehavError> {
        let idx: HashMap<&str, usize> = a.states.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect();
        let final_state = a
            .states
            .iter()
            .position(|s| s.is_final)
            .ok_or_else(|| BehavError::Invalid(format!("{module}: automaton has no final state")))?;
        let mut states = Vec::new();
        for s in &a.states {
            let body = match &s.run {
                Some(call) => Some(self.callee(call, scope)?),
                None => None,
            };
            states.push(StateDef { name: s.name.clone(), body });
        }
        let tr = |t: &frontend::Transition| -> Result<TransDef, BehavError> {
            let tgt = t.target.as_deref().unwrap_or("");
            let target = *idx
                .get(tgt)
                .ok_or_else(|| BehavError::Invalid(format!("{module}: unknown state `{tgt}`")))?;
            Ok(TransDef {
                trigger: t.trigger.as_ref().map(|e| self.sig(e, scope)),
                action: t.action.iter().map(|o| scope[o].clone()).collect(),
                target,
            })
        };
        let initial = a.initial().map(tr).collect::<Result<_, _>>()?;
        let mut outgoing = Vec::new();
        for s in &a.states {
            outgoing.push(a.outgoing(&s.name).map(tr).collect::<Result<_, _>>()?);
        }
        Ok(Term::Aut(Arc::new(AutDef { states, initial, outgoing, final_state }), AutPos::Fresh))
    }
}
