// SPDX-License-Identifier: Apache-2.0
//! Abstract syntax of LE modules.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub name: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub runs: Vec<RunDecl>,
    pub body: Body,
    /// 1-based line of the `module` keyword.
    pub line: usize,
}

/// `Run: "path" : Name;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecl {
    pub path: String,
    pub module: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Stmt(Stmt),
    Automaton(Automaton),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Nothing,
    Halt,
    Pause,
    Emit(String),
    Wait(String),
    Present(SigExpr, Box<Stmt>, Box<Stmt>),
    Seq(Box<Stmt>, Box<Stmt>),
    Par(Box<Stmt>, Box<Stmt>),
    Abort(Box<Stmt>, String),
    Loop(Box<Stmt>),
    Local(Vec<String>, Box<Stmt>),
    Run(RunCall),
}

impl Stmt {
    pub fn seq(a: Stmt, b: Stmt) -> Stmt {
        Stmt::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: Stmt, b: Stmt) -> Stmt {
        Stmt::Par(Box::new(a), Box::new(b))
    }

    pub fn present(c: SigExpr, p: Stmt, q: Stmt) -> Stmt {
        Stmt::Present(c, Box::new(p), Box::new(q))
    }

    pub fn abort(p: Stmt, s: impl Into<String>) -> Stmt {
        Stmt::Abort(Box::new(p), s.into())
    }

    pub fn looped(p: Stmt) -> Stmt {
        Stmt::Loop(Box::new(p))
    }

    pub fn local(names: Vec<String>, p: Stmt) -> Stmt {
        Stmt::Local(names, Box::new(p))
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => 1 + p.size() + q.size(),
            Stmt::Abort(p, _) | Stmt::Loop(p) | Stmt::Local(_, p) => 1 + p.size(),
            _ => 1,
        }
    }
}

/// `run M [new\formal ...]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCall {
    pub module: String,
    /// Pairs `(new, formal)`: callee signal `formal` is bound to caller signal `new`.
    pub renamings: Vec<(String, String)>,
}

impl RunCall {
    pub fn new(module: impl Into<String>) -> Self {
        RunCall { module: module.into(), renamings: Vec::new() }
    }

    /// Caller name bound to the callee signal `formal`.
    pub fn actual<'a>(&'a self, formal: &'a str) -> &'a str {
        self.renamings
            .iter()
            .find(|(_, f)| f == formal)
            .map(|(n, _)| n.as_str())
            .unwrap_or(formal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SigExpr {
    Name(String),
    And(Box<SigExpr>, Box<SigExpr>),
    Or(Box<SigExpr>, Box<SigExpr>),
    Not(Box<SigExpr>),
}

impl SigExpr {
    pub fn name(s: impl Into<String>) -> SigExpr {
        SigExpr::Name(s.into())
    }

    pub fn and(a: SigExpr, b: SigExpr) -> SigExpr {
        SigExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SigExpr, b: SigExpr) -> SigExpr {
        SigExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: SigExpr) -> SigExpr {
        SigExpr::Not(Box::new(a))
    }

    pub fn leaves(&self, out: &mut Vec<String>) {
        match self {
            SigExpr::Name(n) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            SigExpr::And(a, b) | SigExpr::Or(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
            SigExpr::Not(a) => a.leaves(out),
        }
    }

    /// Boolean evaluation over a leaf valuation.
    pub fn eval_bool(&self, v: &dyn Fn(&str) -> bool) -> bool {
        match self {
            SigExpr::Name(n) => v(n),
            SigExpr::And(a, b) => a.eval_bool(v) && b.eval_bool(v),
            SigExpr::Or(a, b) => a.eval_bool(v) || b.eval_bool(v),
            SigExpr::Not(a) => !a.eval_bool(v),
        }
    }

    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> SigExpr {
        match self {
            SigExpr::Name(n) => SigExpr::Name(f(n)),
            SigExpr::And(a, b) => SigExpr::and(a.rename(f), b.rename(f)),
            SigExpr::Or(a, b) => SigExpr::or(a.rename(f), b.rename(f)),
            SigExpr::Not(a) => SigExpr::not(a.rename(f)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub states: Vec<State>,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub name: String,
    pub is_final: bool,
    pub run: Option<RunCall>,
    /// Parsed for completeness; state-level actions carry no semantics.
    pub action: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub initial: bool,
    pub source: Option<String>,
    /// `None` is the always-true trigger.
    pub trigger: Option<SigExpr>,
    pub action: Vec<String>,
    pub target: Option<String>,
}

impl Automaton {
    pub fn state(&self, name: &str) -> Option<&State> {
        self.states.iter().find(|s| s.name == name)
    }

    pub fn final_state(&self) -> Option<&State> {
        self.states.iter().find(|s| s.is_final)
    }

    pub fn initial(&self) -> impl Iterator<Item = &Transition> {
        self.transitions.iter().filter(|t| t.initial)
    }

    pub fn outgoing<'a>(&'a self, state: &'a str) -> impl Iterator<Item = &'a Transition> + 'a {
        self.transitions
            .iter()
            .filter(move |t| !t.initial && t.source.as_deref() == Some(state))
    }
}

/// Signals a statement may emit, in order of first appearance. Run calls
/// contribute nothing here; callers consult the callee interface.
pub fn emitted_signals(s: &Stmt, out: &mut Vec<String>) {
    match s {
        Stmt::Emit(n) => {
            if !out.contains(n) {
                out.push(n.clone())
            }
        }
        Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => {
            emitted_signals(p, out);
            emitted_signals(q, out);
        }
        Stmt::Abort(p, _) | Stmt::Loop(p) | Stmt::Local(_, p) => emitted_signals(p, out),
        _ => {}
    }
}

/// Every run call inside a body.
pub fn run_calls(b: &Body) -> Vec<&RunCall> {
    fn walk<'a>(s: &'a Stmt, out: &mut Vec<&'a RunCall>) {
        match s {
            Stmt::Run(r) => out.push(r),
            Stmt::Present(_, p, q) | Stmt::Seq(p, q) | Stmt::Par(p, q) => {
                walk(p, out);
                walk(q, out);
            }
            Stmt::Abort(p, _) | Stmt::Loop(p) | Stmt::Local(_, p) => walk(p, out),
            _ => {}
        }
    }
    let mut out = Vec::new();
    match b {
        Body::Stmt(s) => walk(s, &mut out),
        Body::Automaton(a) => out.extend(a.states.iter().filter_map(|s| s.run.as_ref())),
    }
    out
}
