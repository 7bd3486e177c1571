// SPDX-License-Identifier: Apache-2.0
use crate::ast::*;
use crate::error::FrontendError;
use crate::lexer::{lex, Tok, Token};

/// Reserved words. `initial` and `final` are only keywords in automaton position.
pub const KEYWORDS: &[&str] = &[
    "module", "Input", "Output", "Run", "end", "present", "else", "loop", "wait", "emit",
    "abort", "when", "pause", "nothing", "halt", "local", "run", "automaton", "state",
    "transition", "and", "or", "not",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Signal scope stack for the module being parsed.
    scope: Vec<String>,
    module: String,
}

type PResult<T> = Result<T, FrontendError>;

/// Parses every module of a file.
pub fn parse_file(src: &str) -> PResult<Vec<Module>> {
    let mut p = Parser { toks: lex(src)?, pos: 0, scope: Vec::new(), module: String::new() };
    let mut out: Vec<Module> = Vec::new();
    while p.peek() != &Tok::Eof {
        let m = p.module()?;
        if out.iter().any(|o| o.name == m.name) {
            return Err(FrontendError::Duplicate { line: m.line, name: m.name });
        }
        out.push(m);
    }
    if out.is_empty() {
        return Err(p.err("expected `module`"));
    }
    Ok(out)
}

/// Parses a text holding exactly one module.
pub fn parse_module(src: &str) -> PResult<Module> {
    let mut ms = parse_file(src)?;
    if ms.len() != 1 {
        let line = ms[1].line;
        return Err(FrontendError::Syntax { line, col: 1, msg: "expected a single module".into() });
    }
    Ok(ms.remove(0))
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn line(&self) -> usize {
        self.toks[self.pos].line
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> FrontendError {
        let t = &self.toks[self.pos];
        FrontendError::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{kw}`")))
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err("expected identifier")),
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
    }

    /// Reference to a signal; must be in scope.
    fn signal_ref(&mut self) -> PResult<String> {
        let line = self.line();
        let s = self.ident()?;
        if !self.scope.contains(&s) {
            return Err(FrontendError::UnknownSignal { line, module: self.module.clone(), name: s });
        }
        Ok(s)
    }

    fn declare(&mut self, name: String, line: usize) -> PResult<()> {
        if self.scope.contains(&name) {
            return Err(FrontendError::Duplicate { line, name });
        }
        self.scope.push(name);
        Ok(())
    }

    /// `a, b c;` style list terminated by `;` (commas optional).
    fn signal_list(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.ident()?];
        loop {
            self.eat(&Tok::Comma);
            if self.eat(&Tok::Semi) {
                return Ok(out);
            }
            out.push(self.ident()?);
        }
    }

    fn module(&mut self) -> PResult<Module> {
        let line = self.line();
        self.expect_kw("module")?;
        let name = self.ident()?;
        self.expect(Tok::Colon, "`:` after module name")?;
        self.module = name.clone();
        self.scope.clear();
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        if self.is_kw("Input") {
            self.bump();
            self.expect(Tok::Colon, "`:` after Input")?;
            let l = self.line();
            inputs = self.signal_list()?;
            for s in &inputs {
                self.declare(s.clone(), l)?;
            }
        }
        if self.is_kw("Output") {
            self.bump();
            self.expect(Tok::Colon, "`:` after Output")?;
            let l = self.line();
            outputs = self.signal_list()?;
            for s in &outputs {
                self.declare(s.clone(), l)?;
            }
        }
        let mut runs = Vec::new();
        if self.is_kw("Run") {
            self.bump();
            self.expect(Tok::Colon, "`:` after Run")?;
            while let Tok::Str(path) = self.peek().clone() {
                self.bump();
                self.expect(Tok::Colon, "`:` in run declaration")?;
                let module = self.ident()?;
                self.expect(Tok::Semi, "`;` after run declaration")?;
                runs.push(RunDecl { path, module });
            }
            if runs.is_empty() {
                return Err(self.err("expected run declaration"));
            }
        }
        let body = if self.is_kw("automaton") {
            Body::Automaton(self.automaton()?)
        } else {
            Body::Stmt(self.instruction()?)
        };
        self.expect_kw("end")?;
        Ok(Module { name, inputs, outputs, runs, body, line })
    }

    fn instruction(&mut self) -> PResult<Stmt> {
        let mut lhs = self.sequence()?;
        while self.eat(&Tok::ParOp) {
            let rhs = self.sequence()?;
            lhs = Stmt::par(lhs, rhs);
        }
        Ok(lhs)
    }

    fn sequence(&mut self) -> PResult<Stmt> {
        let mut lhs = self.primary()?;
        while self.eat(&Tok::SeqOp) {
            let rhs = self.primary()?;
            lhs = Stmt::seq(lhs, rhs);
        }
        Ok(lhs)
    }

    fn braced(&mut self) -> PResult<Stmt> {
        self.expect(Tok::LBrace, "`{`")?;
        let s = self.instruction()?;
        self.expect(Tok::RBrace, "`}`")?;
        Ok(s)
    }

    fn primary(&mut self) -> PResult<Stmt> {
        if *self.peek() == Tok::LBrace {
            return self.braced();
        }
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.err("expected statement")),
        };
        match kw.as_str() {
            "nothing" => {
                self.bump();
                Ok(Stmt::Nothing)
            }
            "halt" => {
                self.bump();
                Ok(Stmt::Halt)
            }
            "pause" => {
                self.bump();
                Ok(Stmt::Pause)
            }
            "emit" => {
                self.bump();
                Ok(Stmt::Emit(self.signal_ref()?))
            }
            "wait" => {
                self.bump();
                Ok(Stmt::Wait(self.signal_ref()?))
            }
            "present" => {
                self.bump();
                let c = self.sig_expr()?;
                let p = self.primary()?;
                self.expect_kw("else")?;
                let q = self.primary()?;
                Ok(Stmt::present(c, p, q))
            }
            "loop" => {
                self.bump();
                Ok(Stmt::looped(self.braced()?))
            }
            "abort" => {
                self.bump();
                let p = self.braced()?;
                self.expect_kw("when")?;
                Ok(Stmt::abort(p, self.signal_ref()?))
            }
            "local" => {
                self.bump();
                let line = self.line();
                let mut names = vec![self.ident()?];
                loop {
                    self.eat(&Tok::Comma);
                    if !self.at_ident() {
                        break;
                    }
                    names.push(self.ident()?);
                }
                let depth = self.scope.len();
                for n in &names {
                    self.declare(n.clone(), line)?;
                }
                let body = self.braced()?;
                self.scope.truncate(depth);
                Ok(Stmt::local(names, body))
            }
            "run" => Ok(Stmt::Run(self.run_call()?)),
            _ => Err(self.err(format!("unexpected `{kw}`"))),
        }
    }

    fn run_call(&mut self) -> PResult<RunCall> {
        self.expect_kw("run")?;
        let module = self.ident()?;
        let mut renamings = Vec::new();
        if self.eat(&Tok::LBrack) {
            loop {
                let new = self.signal_ref()?;
                self.expect(Tok::Backslash, "`\\` in renaming")?;
                let formal = self.ident()?;
                renamings.push((new, formal));
                self.eat(&Tok::Comma);
                if self.eat(&Tok::RBrack) {
                    break;
                }
            }
        }
        Ok(RunCall { module, renamings })
    }

    fn sig_expr(&mut self) -> PResult<SigExpr> {
        let mut lhs = self.sig_and()?;
        while self.is_kw("or") {
            self.bump();
            lhs = SigExpr::or(lhs, self.sig_and()?);
        }
        Ok(lhs)
    }

    fn sig_and(&mut self) -> PResult<SigExpr> {
        let mut lhs = self.sig_unary()?;
        while self.is_kw("and") {
            self.bump();
            lhs = SigExpr::and(lhs, self.sig_unary()?);
        }
        Ok(lhs)
    }

    fn sig_unary(&mut self) -> PResult<SigExpr> {
        if self.is_kw("not") {
            self.bump();
            return Ok(SigExpr::not(self.sig_unary()?));
        }
        if self.eat(&Tok::LBrace) {
            let e = self.sig_expr()?;
            self.expect(Tok::RBrace, "`}` closing expression")?;
            return Ok(e);
        }
        Ok(SigExpr::Name(self.signal_ref()?))
    }

    fn action(&mut self) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        if self.eat(&Tok::Slash) {
            out.push(self.signal_ref()?);
            loop {
                self.eat(&Tok::Comma);
                if !self.at_ident() {
                    break;
                }
                out.push(self.signal_ref()?);
            }
        }
        Ok(out)
    }

    fn automaton(&mut self) -> PResult<Automaton> {
        self.expect_kw("automaton")?;
        let mut states: Vec<State> = Vec::new();
        while self.is_kw("state") {
            self.bump();
            let line = self.line();
            let name = self.ident()?;
            if states.iter().any(|s| s.name == name) {
                return Err(FrontendError::Duplicate { line, name });
            }
            let is_final = if self.is_kw("final") {
                self.bump();
                true
            } else {
                false
            };
            let run = if self.is_kw("run") { Some(self.run_call()?) } else { None };
            let action = self.action()?;
            self.expect(Tok::Semi, "`;` after state")?;
            states.push(State { name, is_final, run, action });
        }
        if states.is_empty() {
            return Err(self.err("automaton needs at least one state"));
        }
        self.expect_kw("transition")?;
        let mut transitions = Vec::new();
        while !self.is_kw("end") {
            transitions.push(self.transition(&states)?);
        }
        if transitions.is_empty() {
            return Err(self.err("expected transition"));
        }
        Ok(Automaton { states, transitions })
    }

    fn state_ref(&mut self, states: &[State]) -> PResult<String> {
        let line = self.line();
        let col = self.toks[self.pos].col;
        let n = self.ident()?;
        if !states.iter().any(|s| s.name == n) {
            return Err(FrontendError::Syntax { line, col, msg: format!("unknown state `{n}`") });
        }
        Ok(n)
    }

    fn transition(&mut self, states: &[State]) -> PResult<Transition> {
        let initial = if self.is_kw("initial") {
            self.bump();
            true
        } else {
            false
        };
        let source = if initial { None } else { Some(self.state_ref(states)?) };
        let trigger = match self.peek() {
            Tok::Slash | Tok::Arrow | Tok::Semi => None,
            _ => Some(self.sig_expr()?),
        };
        let action = self.action()?;
        let target = if self.eat(&Tok::Arrow) { Some(self.state_ref(states)?) } else { None };
        if target.is_none() {
            return Err(self.err("transition needs a target `-> State`"));
        }
        self.expect(Tok::Semi, "`;` after transition")?;
        Ok(Transition { initial, source, trigger, action, target })
    }
}
